#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "facies/attribute_table.hpp"
#include "facies/common.hpp"
#include "facies/detail/parallel.hpp"
#include "facies/volume.hpp"

namespace facies {

/// A window after gray-level binning. Cells are row-major levels in
/// [0, levels-1]; bounds records the amplitude range used for the binning.
struct QuantizedWindow {
    int rows = 0;
    int cols = 0;
    int levels = 64;
    std::vector<int> cells;
    double bound_min = 0.0;
    double bound_max = 0.0;

    int at(int r, int c) const { return cells[static_cast<std::size_t>(r) * cols + c]; }
};

/// Symmetric co-occurrence probability matrix. p is row-major levels×levels,
/// sums to 1 and carries mass only where a pair was counted.
struct GLCMatrix {
    int levels = 0;
    std::vector<double> p;

    double at(int i, int j) const { return p[static_cast<std::size_t>(i) * levels + j]; }

    void validate() const {
        if (levels < 2 || p.size() != static_cast<std::size_t>(levels) * levels)
            throw Error("co-occurrence matrix: bad dimensions");
        double sum = 0.0;
        for (int i = 0; i < levels; ++i) {
            for (int j = 0; j < levels; ++j) {
                double v = at(i, j);
                if (!(v >= 0.0)) throw Error("co-occurrence matrix: negative or NaN entry");
                if (v != at(j, i)) throw Error("co-occurrence matrix: not symmetric");
                sum += v;
            }
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw Error("co-occurrence matrix: entries sum to " + detail::format_double(sum) +
                        ", expected 1");
    }
};

/// Scalar binning rule shared by every quantization path: linear bins over
/// [lo, hi], top edge clamped into the last bin, degenerate range -> level 0.
inline int quantize_level(double v, double lo, double hi, int levels) {
    if (lo == hi) return 0;
    int level = static_cast<int>(std::floor((v - lo) / (hi - lo) * levels));
    if (level < 0) level = 0;
    if (level >= levels) level = levels - 1;
    return level;
}

/// Bins a real-valued window. When bounds are omitted the caller is expected
/// to pass the global volume min/max; this overload uses the window's own
/// extremes and exists for self-contained windows in tests and oracles.
inline QuantizedWindow quantize(const std::vector<double>& window, int rows, int cols, int levels,
                                double bound_min, double bound_max) {
    if (levels < 2) throw Error("quantize: levels must be >= 2");
    if (rows < 1 || cols < 1 || window.size() != static_cast<std::size_t>(rows) * cols)
        throw Error("quantize: window dimensions do not match cell count");
    if (!(bound_min <= bound_max) || !std::isfinite(bound_min) || !std::isfinite(bound_max))
        throw Error("quantize: bounds must be finite with min <= max");
    QuantizedWindow q;
    q.rows = rows;
    q.cols = cols;
    q.levels = levels;
    q.bound_min = bound_min;
    q.bound_max = bound_max;
    q.cells.resize(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) {
        if (!std::isfinite(window[i])) throw Error("quantize: non-finite window sample");
        q.cells[i] = quantize_level(window[i], bound_min, bound_max, levels);
    }
    return q;
}

inline QuantizedWindow quantize(const std::vector<double>& window, int rows, int cols,
                                int levels) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : window) {
        if (!std::isfinite(v)) throw Error("quantize: non-finite window sample");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (window.empty()) throw Error("quantize: empty window");
    return quantize(window, rows, cols, levels, lo, hi);
}

/// Dense co-occurrence matrix for one offset: counts each in-window ordered
/// pair and its transpose, then normalizes. Kept dense and simple — the
/// sliding-window path below uses a sparse accumulator but must agree with
/// this definition.
inline GLCMatrix cooccurrence(const QuantizedWindow& q, std::pair<int, int> offset) {
    auto [di, dj] = offset;
    if (di == 0 && dj == 0) throw Error("co-occurrence: offset must be nonzero");
    GLCMatrix m;
    m.levels = q.levels;
    m.p.assign(static_cast<std::size_t>(q.levels) * q.levels, 0.0);
    std::size_t pairs = 0;
    for (int r = 0; r < q.rows; ++r) {
        int r2 = r + di;
        if (r2 < 0 || r2 >= q.rows) continue;
        for (int c = 0; c < q.cols; ++c) {
            int c2 = c + dj;
            if (c2 < 0 || c2 >= q.cols) continue;
            int a = q.at(r, c);
            int b = q.at(r2, c2);
            m.p[static_cast<std::size_t>(a) * q.levels + b] += 1.0;
            m.p[static_cast<std::size_t>(b) * q.levels + a] += 1.0;
            ++pairs;
        }
    }
    if (pairs == 0)
        throw Error("co-occurrence: window " + detail::format_int(q.rows) + "x" +
                    detail::format_int(q.cols) + " admits no pairs at offset (" +
                    detail::format_int(di) + "," + detail::format_int(dj) + ")");
    double total = 2.0 * static_cast<double>(pairs);
    for (double& v : m.p) v /= total;
    return m;
}

inline double contrast(const GLCMatrix& m) {
    double sum = 0.0;
    for (int i = 0; i < m.levels; ++i)
        for (int j = 0; j < m.levels; ++j) {
            double d = i - j;
            sum += m.at(i, j) * d * d;
        }
    return sum;
}

inline double energy(const GLCMatrix& m) {
    double sum = 0.0;
    for (double v : m.p) sum += v * v;
    return std::sqrt(sum);
}

inline double homogeneity(const GLCMatrix& m) {
    double sum = 0.0;
    for (int i = 0; i < m.levels; ++i)
        for (int j = 0; j < m.levels; ++j) {
            double d = i - j;
            sum += m.at(i, j) / (1.0 + d * d);
        }
    return sum;
}

inline double dissimilarity(const GLCMatrix& m) {
    double sum = 0.0;
    for (int i = 0; i < m.levels; ++i)
        for (int j = 0; j < m.levels; ++j) sum += m.at(i, j) * std::abs(i - j);
    return sum;
}

inline TextureVector glcm_attributes(const GLCMatrix& m) {
    return {energy(m), homogeneity(m), contrast(m), dissimilarity(m)};
}

namespace detail {

/// Reusable sparse accumulator for one window/offset at a time. A window of
/// side s touches at most 2·s² distinct matrix cells, so the touched list
/// keeps both accumulation and reset proportional to the window, not to
/// levels².
struct GlcmScratch {
    int levels;
    std::vector<double> counts;
    std::vector<std::size_t> touched;

    explicit GlcmScratch(int levels_)
        : levels(levels_), counts(static_cast<std::size_t>(levels_) * levels_, 0.0) {
        touched.reserve(256);
    }
};

/// Attributes of one window under one offset via the sparse accumulator.
/// Returns the number of ordered base pairs (0 means the offset does not fit
/// the window). Pair scan order matches cooccurrence() exactly.
inline std::size_t offset_attributes(const QuantizedWindow& q, int di, int dj, GlcmScratch& s,
                                     TextureVector& out) {
    std::size_t pairs = 0;
    for (int r = 0; r < q.rows; ++r) {
        int r2 = r + di;
        if (r2 < 0 || r2 >= q.rows) continue;
        for (int c = 0; c < q.cols; ++c) {
            int c2 = c + dj;
            if (c2 < 0 || c2 >= q.cols) continue;
            int a = q.at(r, c);
            int b = q.at(r2, c2);
            std::size_t ab = static_cast<std::size_t>(a) * s.levels + b;
            std::size_t ba = static_cast<std::size_t>(b) * s.levels + a;
            if (s.counts[ab] == 0.0) s.touched.push_back(ab);
            s.counts[ab] += 1.0;
            if (s.counts[ba] == 0.0) s.touched.push_back(ba);
            s.counts[ba] += 1.0;
            ++pairs;
        }
    }
    if (pairs == 0) return 0;

    // Counts and level distances are integers, so the count-weighted sums are
    // exact in double; normalizing once at the end leaves a single rounding
    // per attribute instead of one per touched cell.
    double total = 2.0 * static_cast<double>(pairs);
    double sum_sq = 0.0, sum_homog = 0.0, sum_contrast = 0.0, sum_dissim = 0.0;
    for (std::size_t cell : s.touched) {
        double count = s.counts[cell];
        double d = static_cast<double>(static_cast<long long>(cell / s.levels) -
                                       static_cast<long long>(cell % s.levels));
        sum_sq += count * count;
        sum_homog += count / (1.0 + d * d);
        sum_contrast += count * d * d;
        sum_dissim += count * std::abs(d);
        s.counts[cell] = 0.0;
    }
    s.touched.clear();
    out = {std::sqrt(sum_sq) / total, sum_homog / total, sum_contrast / total,
           sum_dissim / total};
    return pairs;
}

} // namespace detail

/// Window attributes averaged over an offset list. This is the per-voxel
/// computation the sliding-window pass performs; exposed so single windows
/// can be checked against it directly.
inline TextureVector window_attributes(const QuantizedWindow& q,
                                       const std::vector<std::pair<int, int>>& offsets,
                                       detail::GlcmScratch& scratch) {
    if (offsets.empty()) throw Error("window attributes: offset list is empty");
    if (scratch.levels != q.levels) throw Error("window attributes: scratch level mismatch");
    TextureVector acc{0.0, 0.0, 0.0, 0.0};
    for (auto [di, dj] : offsets) {
        if (di == 0 && dj == 0) throw Error("window attributes: offset must be nonzero");
        TextureVector one;
        if (detail::offset_attributes(q, di, dj, scratch, one) == 0)
            throw Error("window attributes: window " + detail::format_int(q.rows) + "x" +
                        detail::format_int(q.cols) + " admits no pairs at offset (" +
                        detail::format_int(di) + "," + detail::format_int(dj) + ")");
        acc.energy += one.energy;
        acc.homogeneity += one.homogeneity;
        acc.contrast += one.contrast;
        acc.dissimilarity += one.dissimilarity;
    }
    double n = static_cast<double>(offsets.size());
    return {acc.energy / n, acc.homogeneity / n, acc.contrast / n, acc.dissimilarity / n};
}

inline TextureVector window_attributes(const QuantizedWindow& q,
                                       const std::vector<std::pair<int, int>>& offsets) {
    detail::GlcmScratch scratch(q.levels);
    return window_attributes(q, offsets, scratch);
}

inline std::vector<std::pair<int, int>> default_glcm_offsets() {
    return {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
}

/// Sliding-window texture attributes over every voxel. Windows are 2-D
/// squares of side 2·window_half+1 in the chosen plane (time slices by
/// default); rows whose window leaves the volume or covers a missing sample
/// are marked missing. Binning bounds are the global volume min/max so
/// values are comparable across voxels.
inline AttributeTable compute_attribute_table(const SeismicVolume& volume, int window_half,
                                              const std::vector<std::pair<int, int>>& offsets,
                                              int levels = 64,
                                              SliceOrientation plane = SliceOrientation::Time) {
    volume.header.validate();
    if (window_half < 1) throw Error("attribute table: window_half must be >= 1");
    if (levels < 2) throw Error("attribute table: levels must be >= 2");
    if (offsets.empty()) throw Error("attribute table: offset list is empty");
    const int side = 2 * window_half + 1;
    for (auto [di, dj] : offsets) {
        if (di == 0 && dj == 0) throw Error("attribute table: offset must be nonzero");
        if (std::abs(di) >= side || std::abs(dj) >= side)
            throw Error("attribute table: offset (" + detail::format_int(di) + "," +
                        detail::format_int(dj) + ") does not fit a " + detail::format_int(side) +
                        "x" + detail::format_int(side) + " window");
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (float s : volume.samples) {
        if (std::isnan(s)) continue;
        lo = std::min(lo, static_cast<double>(s));
        hi = std::max(hi, static_cast<double>(s));
    }
    if (!(lo <= hi)) throw Error("attribute table: volume has no observed samples");

    AttributeTable table;
    table.geometry = volume.header;
    table.resize_missing();

    Interval slice_axis = detail::slice_axis_range(volume.header, plane);
    auto [rows, cols] = detail::slice_shape(volume.header, plane);
    const int n_slices = slice_axis.count();

    detail::parallel_for(static_cast<std::size_t>(n_slices), [&](std::size_t si) {
        int slice_index = slice_axis.lo + static_cast<int>(si);

        // Quantize the slice once (-1 marks missing) and build a summed-area
        // table of missing flags so each window tests cleanliness in O(1).
        std::vector<int> q(static_cast<std::size_t>(rows) * cols);
        std::vector<std::size_t> voxel_of(q.size());
        std::vector<int> miss_sat((static_cast<std::size_t>(rows) + 1) * (cols + 1), 0);
        detail::for_each_slice_cell(volume.header, plane, slice_index,
                                    [&](int r, int c, std::size_t voxel) {
                                        std::size_t cell = static_cast<std::size_t>(r) * cols + c;
                                        float v = volume.samples[voxel];
                                        q[cell] = std::isnan(v)
                                                      ? -1
                                                      : quantize_level(v, lo, hi, levels);
                                        voxel_of[cell] = voxel;
                                    });
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                miss_sat[static_cast<std::size_t>(r + 1) * (cols + 1) + (c + 1)] =
                    miss_sat[static_cast<std::size_t>(r) * (cols + 1) + (c + 1)] +
                    miss_sat[static_cast<std::size_t>(r + 1) * (cols + 1) + c] -
                    miss_sat[static_cast<std::size_t>(r) * (cols + 1) + c] +
                    (q[static_cast<std::size_t>(r) * cols + c] < 0 ? 1 : 0);
        auto missing_in = [&](int r0, int c0, int r1, int c1) {
            return miss_sat[static_cast<std::size_t>(r1 + 1) * (cols + 1) + (c1 + 1)] -
                   miss_sat[static_cast<std::size_t>(r0) * (cols + 1) + (c1 + 1)] -
                   miss_sat[static_cast<std::size_t>(r1 + 1) * (cols + 1) + c0] +
                   miss_sat[static_cast<std::size_t>(r0) * (cols + 1) + c0];
        };

        detail::GlcmScratch scratch(levels);
        QuantizedWindow w;
        w.rows = side;
        w.cols = side;
        w.levels = levels;
        w.bound_min = lo;
        w.bound_max = hi;
        w.cells.resize(static_cast<std::size_t>(side) * side);

        for (int r = window_half; r < rows - window_half; ++r) {
            for (int c = window_half; c < cols - window_half; ++c) {
                if (missing_in(r - window_half, c - window_half, r + window_half,
                               c + window_half) > 0)
                    continue;
                for (int wr = 0; wr < side; ++wr) {
                    const int* src =
                        q.data() + static_cast<std::size_t>(r - window_half + wr) * cols +
                        (c - window_half);
                    std::copy(src, src + side,
                              w.cells.begin() + static_cast<std::size_t>(wr) * side);
                }
                table.set_row(voxel_of[static_cast<std::size_t>(r) * cols + c],
                              window_attributes(w, offsets, scratch));
            }
        }
    });

    return table;
}

} // namespace facies
