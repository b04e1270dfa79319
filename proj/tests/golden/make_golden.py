#!/usr/bin/env python3
"""Regenerates the reference PPM rasters used by the render tests.

Independent of the C++ code on purpose: the palette and the P6 layout are
restated here so the golden files act as an oracle for the renderer rather
than a snapshot of it.
"""

from pathlib import Path

PALETTE = [
    (230, 25, 75),    # 1 red
    (60, 180, 75),    # 2 green
    (0, 130, 200),    # 3 blue
    (255, 225, 25),   # 4 yellow
    (145, 30, 180),   # 5 purple
    (70, 240, 240),   # 6 cyan
    (245, 130, 48),   # 7 orange
    (240, 50, 230),   # 8 magenta
]


def write_ppm(path: Path, width: int, height: int, pixels) -> None:
    """pixels: row-major list of (r, g, b) tuples."""
    assert len(pixels) == width * height
    body = bytearray()
    for rgb in pixels:
        body.extend(rgb)
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    path.write_bytes(header + bytes(body))


def palette_2x2(out_dir: Path) -> None:
    pixels = [PALETTE[label - 1] for label in (1, 2, 3, 4)]
    write_ppm(out_dir / "palette_2x2.ppm", 2, 2, pixels)


def facies_slice(out_dir: Path) -> None:
    """One 32x32 time slice of a four-quadrant facies map.

    Image rows run along the inline axis, columns along crossline. Quadrants:
    label 1 for inline < 16 & crossline < 16, 2 for inline < 16 & crossline
    >= 16, 3 and 4 for the lower half.
    """
    pixels = []
    for inline in range(32):
        for crossline in range(32):
            if inline < 16:
                label = 1 if crossline < 16 else 2
            else:
                label = 3 if crossline < 16 else 4
            pixels.append(PALETTE[label - 1])
    write_ppm(out_dir / "facies_slice.ppm", 32, 32, pixels)


def main() -> None:
    out_dir = Path(__file__).resolve().parent
    palette_2x2(out_dir)
    facies_slice(out_dir)
    print(f"wrote goldens to {out_dir}")


if __name__ == "__main__":
    main()
