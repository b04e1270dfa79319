#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "facies/attribute_table.hpp"
#include "facies/common.hpp"
#include "facies/facies_map.hpp"
#include "facies/volume.hpp"

namespace facies {

/// Fixed facies palette; label n takes entry (n-1) mod 8, label 0 (unlabeled)
/// renders black.
inline constexpr std::array<std::array<std::uint8_t, 3>, 8> facies_palette = {{
    {230, 25, 75},    // red
    {60, 180, 75},    // green
    {0, 130, 200},    // blue
    {255, 225, 25},   // yellow
    {145, 30, 180},   // purple
    {70, 240, 240},   // cyan
    {245, 130, 48},   // orange
    {240, 50, 230},   // magenta
}};

inline std::array<std::uint8_t, 3> facies_color(int label) {
    if (label <= 0) return {0, 0, 0};
    return facies_palette[static_cast<std::size_t>(label - 1) % facies_palette.size()];
}

/// 8-bit RGB image, row-major, 3 bytes per pixel.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;

    void set(int row, int col, std::array<std::uint8_t, 3> color) {
        std::size_t at = (static_cast<std::size_t>(row) * width + col) * 3;
        rgb[at] = color[0];
        rgb[at + 1] = color[1];
        rgb[at + 2] = color[2];
    }
};

inline Raster make_raster(int width, int height) {
    if (width < 1 || height < 1) throw Error("raster: width and height must be >= 1");
    Raster r;
    r.width = width;
    r.height = height;
    r.rgb.assign(static_cast<std::size_t>(width) * height * 3, 0);
    return r;
}

inline void save_ppm(const Raster& r, const std::filesystem::path& path) {
    if (r.rgb.size() != static_cast<std::size_t>(r.width) * r.height * 3)
        throw Error("raster: pixel buffer does not match dimensions");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write image " + path.string());
    out << "P6\n" << detail::format_int(r.width) << ' ' << detail::format_int(r.height)
        << "\n255\n";
    out.write(reinterpret_cast<const char*>(r.rgb.data()),
              static_cast<std::streamsize>(r.rgb.size()));
    if (!out) throw Error("write failed for " + path.string());
}

/// Facies slice as palette colors: slice rows become image rows.
inline Raster facies_slice_raster(const FaciesMap& map, SliceOrientation orientation, int index) {
    auto [rows, cols] = detail::slice_shape(map.header, orientation);
    Raster img = make_raster(cols, rows);
    detail::for_each_slice_cell(map.header, orientation, index,
                                [&](int r, int c, std::size_t voxel) {
                                    img.set(r, c, facies_color(map.labels[voxel]));
                                });
    return img;
}

/// Grayscale mapping shared by attribute rendering: linear over [lo, hi],
/// degenerate range maps to mid-gray.
inline std::uint8_t gray_level(double v, double lo, double hi) {
    double t = (lo == hi) ? 0.5 : (v - lo) / (hi - lo);
    t = std::clamp(t, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::llround(t * 255.0));
}

/// One attribute over one slice as linear grayscale between the slice's own
/// min and max; missing rows render black.
inline Raster attribute_slice_raster(const AttributeTable& table, int attribute,
                                     SliceOrientation orientation, int index) {
    if (attribute < 0 || attribute >= n_texture_attributes)
        throw Error("attribute raster: attribute index outside 0.." +
                    detail::format_int(n_texture_attributes - 1));
    auto [rows, cols] = detail::slice_shape(table.geometry, orientation);
    const std::vector<double>& col = table.columns[static_cast<std::size_t>(attribute)];

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    detail::for_each_slice_cell(table.geometry, orientation, index,
                                [&](int, int, std::size_t voxel) {
                                    if (table.missing[voxel]) return;
                                    lo = std::min(lo, col[voxel]);
                                    hi = std::max(hi, col[voxel]);
                                });

    Raster img = make_raster(cols, rows);
    detail::for_each_slice_cell(table.geometry, orientation, index,
                                [&](int r, int c, std::size_t voxel) {
                                    if (table.missing[voxel]) return;  // stays black
                                    std::uint8_t g = gray_level(col[voxel], lo, hi);
                                    img.set(r, c, {g, g, g});
                                });
    return img;
}

// ---------------------------------------------------------------------------
// SVG legends: a swatch list for facies maps, a gradient bar for attributes.

namespace detail {

inline std::string rgb_string(std::array<std::uint8_t, 3> c) {
    return "rgb(" + format_int(c[0]) + "," + format_int(c[1]) + "," + format_int(c[2]) + ")";
}

} // namespace detail

inline std::string facies_legend_svg(int n_classes) {
    if (n_classes < 1) throw Error("facies legend: need at least 1 class");
    const int row_h = 24, swatch = 16, pad = 8, width = 160;
    int height = pad * 2 + row_h * n_classes;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::format_int(width) +
           "\" height=\"" + detail::format_int(height) + "\">\n";
    for (int c = 1; c <= n_classes; ++c) {
        int y = pad + (c - 1) * row_h;
        svg += "  <rect x=\"" + detail::format_int(pad) + "\" y=\"" + detail::format_int(y) +
               "\" width=\"" + detail::format_int(swatch) + "\" height=\"" +
               detail::format_int(swatch) + "\" fill=\"" +
               detail::rgb_string(facies_color(c)) + "\"/>\n";
        svg += "  <text x=\"" + detail::format_int(pad * 2 + swatch) + "\" y=\"" +
               detail::format_int(y + swatch - 3) +
               "\" font-family=\"sans-serif\" font-size=\"13\">Facies " + detail::format_int(c) +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

inline std::string attribute_legend_svg(const std::string& name, double lo, double hi) {
    const int width = 220, height = 56, bar_w = 200, bar_h = 14, pad = 10;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::format_int(width) +
           "\" height=\"" + detail::format_int(height) + "\">\n";
    svg += "  <defs><linearGradient id=\"g\" x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\">"
           "<stop offset=\"0\" stop-color=\"rgb(0,0,0)\"/>"
           "<stop offset=\"1\" stop-color=\"rgb(255,255,255)\"/></linearGradient></defs>\n";
    svg += "  <text x=\"" + detail::format_int(pad) + "\" y=\"16\" font-family=\"sans-serif\" "
           "font-size=\"13\">" + name + "</text>\n";
    svg += "  <rect x=\"" + detail::format_int(pad) + "\" y=\"22\" width=\"" +
           detail::format_int(bar_w) + "\" height=\"" + detail::format_int(bar_h) +
           "\" fill=\"url(#g)\"/>\n";
    svg += "  <text x=\"" + detail::format_int(pad) + "\" y=\"50\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + detail::format_double(lo) + "</text>\n";
    svg += "  <text x=\"" + detail::format_int(pad + bar_w) + "\" y=\"50\" text-anchor=\"end\" "
           "font-family=\"sans-serif\" font-size=\"11\">" + detail::format_double(hi) +
           "</text>\n";
    svg += "</svg>\n";
    return svg;
}

inline void save_text(const std::string& content, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("write failed for " + path.string());
}

} // namespace facies
