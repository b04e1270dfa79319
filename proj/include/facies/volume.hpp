#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "facies/common.hpp"

namespace facies {

/// Inclusive integer interval, e.g. an inline or crossline range.
struct Interval {
    int lo = 0;
    int hi = 0;

    int count() const { return hi - lo + 1; }
    bool contains(int v) const { return v >= lo && v <= hi; }
    bool empty() const { return hi < lo; }
};

inline bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
}

/// Survey geometry: axis ranges plus acquisition metadata. The sample
/// interval and line spacing are carried along but never consumed by any
/// computation.
struct VolumeHeader {
    Interval inline_range;
    Interval crossline_range;
    Interval z_range;          // two-way time, milliseconds
    double sample_interval_ms = 1.0;
    double line_spacing_m = 25.0;

    int n_inline() const { return inline_range.count(); }
    int n_crossline() const { return crossline_range.count(); }
    int n_samples() const { return z_range.count(); }
    std::size_t voxel_count() const {
        return static_cast<std::size_t>(n_inline()) * n_crossline() * n_samples();
    }

    void validate() const {
        if (inline_range.empty())
            throw Error("volume header: inline_range is empty [" +
                        detail::format_int(inline_range.lo) + "," +
                        detail::format_int(inline_range.hi) + "]");
        if (crossline_range.empty())
            throw Error("volume header: crossline_range is empty [" +
                        detail::format_int(crossline_range.lo) + "," +
                        detail::format_int(crossline_range.hi) + "]");
        if (z_range.empty())
            throw Error("volume header: z_range is empty [" +
                        detail::format_int(z_range.lo) + "," +
                        detail::format_int(z_range.hi) + "]");
        if (!(sample_interval_ms > 0.0))
            throw Error("volume header: sample_interval_ms must be > 0");
        if (!(line_spacing_m > 0.0))
            throw Error("volume header: line_spacing_m must be > 0");
    }

    /// Flat sample index; z fastest, then crossline, inline-major.
    std::size_t index(int inl, int crl, int z) const {
        std::size_t i = static_cast<std::size_t>(inl - inline_range.lo);
        std::size_t x = static_cast<std::size_t>(crl - crossline_range.lo);
        std::size_t s = static_cast<std::size_t>(z - z_range.lo);
        return (i * n_crossline() + x) * n_samples() + s;
    }

    /// Inverse of index(): flat voxel index back to survey coordinates.
    std::array<int, 3> coords(std::size_t voxel) const {
        int ns = n_samples();
        int nx = n_crossline();
        int z = static_cast<int>(voxel % ns);
        std::size_t rest = voxel / ns;
        int x = static_cast<int>(rest % nx);
        int i = static_cast<int>(rest / nx);
        return {inline_range.lo + i, crossline_range.lo + x, z_range.lo + z};
    }
};

inline bool operator==(const VolumeHeader& a, const VolumeHeader& b) {
    return a.inline_range == b.inline_range && a.crossline_range == b.crossline_range &&
           a.z_range == b.z_range && a.sample_interval_ms == b.sample_interval_ms &&
           a.line_spacing_m == b.line_spacing_m;
}

/// 3-D amplitude grid. Samples are f32 as on disk; missing samples are quiet
/// NaN. Immutable by convention after load, safe to share for reading.
struct SeismicVolume {
    VolumeHeader header;
    std::vector<float> samples;

    static constexpr float missing_value = std::numeric_limits<float>::quiet_NaN();

    float at(int inl, int crl, int z) const { return samples[header.index(inl, crl, z)]; }
    float& at(int inl, int crl, int z) { return samples[header.index(inl, crl, z)]; }

    std::size_t missing_count() const {
        std::size_t n = 0;
        for (float s : samples)
            if (std::isnan(s)) ++n;
        return n;
    }

    void validate() const {
        header.validate();
        if (samples.size() != header.voxel_count())
            throw Error("volume: sample count " + detail::format_int((long long)samples.size()) +
                        " does not match header dimensions " +
                        detail::format_int(header.voxel_count()));
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (std::isinf(samples[i])) {
                auto c = header.coords(i);
                throw Error("volume: non-finite sample at (inline " + detail::format_int(c[0]) +
                            ", crossline " + detail::format_int(c[1]) + ", z " +
                            detail::format_int(c[2]) + ")");
            }
        }
    }
};

enum class SliceOrientation { Inline, Crossline, Time };

inline const char* to_string(SliceOrientation o) {
    switch (o) {
        case SliceOrientation::Inline: return "inline";
        case SliceOrientation::Crossline: return "crossline";
        case SliceOrientation::Time: return "time";
    }
    return "?";
}

inline SliceOrientation slice_orientation_from_string(const std::string& s) {
    if (s == "inline") return SliceOrientation::Inline;
    if (s == "crossline") return SliceOrientation::Crossline;
    if (s == "time") return SliceOrientation::Time;
    throw ConfigError("unknown slice orientation \"" + s + "\" (expected inline|crossline|time)");
}

/// 2-D cross-section through a volume. Row/column axes by orientation:
///   inline slice    -> rows = crossline, cols = z
///   crossline slice -> rows = inline,    cols = z
///   time slice      -> rows = inline,    cols = crossline
struct SliceView {
    SliceOrientation orientation = SliceOrientation::Time;
    int index = 0;
    int rows = 0;
    int cols = 0;
    std::vector<float> values;  // row-major

    float at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

namespace detail {

inline Interval slice_axis_range(const VolumeHeader& h, SliceOrientation o) {
    switch (o) {
        case SliceOrientation::Inline: return h.inline_range;
        case SliceOrientation::Crossline: return h.crossline_range;
        case SliceOrientation::Time: return h.z_range;
    }
    return {};
}

/// Iterates the (row, col) cells of a slice, handing each cell its flat voxel
/// index. Shared by amplitude, attribute and facies slicing so they index
/// the grid identically.
template <typename Fn>
void for_each_slice_cell(const VolumeHeader& h, SliceOrientation o, int index, Fn&& fn) {
    Interval axis = slice_axis_range(h, o);
    if (!axis.contains(index))
        throw Error(std::string("slice index ") + format_int(index) + " outside " +
                    to_string(o) + " range [" + format_int(axis.lo) + "," +
                    format_int(axis.hi) + "]");
    switch (o) {
        case SliceOrientation::Inline:
            for (int r = 0; r < h.n_crossline(); ++r)
                for (int c = 0; c < h.n_samples(); ++c)
                    fn(r, c, h.index(index, h.crossline_range.lo + r, h.z_range.lo + c));
            break;
        case SliceOrientation::Crossline:
            for (int r = 0; r < h.n_inline(); ++r)
                for (int c = 0; c < h.n_samples(); ++c)
                    fn(r, c, h.index(h.inline_range.lo + r, index, h.z_range.lo + c));
            break;
        case SliceOrientation::Time:
            for (int r = 0; r < h.n_inline(); ++r)
                for (int c = 0; c < h.n_crossline(); ++c)
                    fn(r, c, h.index(h.inline_range.lo + r, h.crossline_range.lo + c, index));
            break;
    }
}

inline std::pair<int, int> slice_shape(const VolumeHeader& h, SliceOrientation o) {
    switch (o) {
        case SliceOrientation::Inline: return {h.n_crossline(), h.n_samples()};
        case SliceOrientation::Crossline: return {h.n_inline(), h.n_samples()};
        case SliceOrientation::Time: return {h.n_inline(), h.n_crossline()};
    }
    return {0, 0};
}

/// Axis coordinate scaled to [0,1]; a single-sample axis maps to 0.
inline double normalized_coord(int v, const Interval& range) {
    if (range.lo == range.hi) return 0.0;
    return static_cast<double>(v - range.lo) / (range.hi - range.lo);
}

} // namespace detail

inline SliceView extract_slice(const SeismicVolume& v, SliceOrientation o, int index) {
    auto [rows, cols] = detail::slice_shape(v.header, o);
    SliceView s{o, index, rows, cols, std::vector<float>(static_cast<std::size_t>(rows) * cols)};
    detail::for_each_slice_cell(v.header, o, index, [&](int r, int c, std::size_t voxel) {
        s.values[static_cast<std::size_t>(r) * cols + c] = v.samples[voxel];
    });
    return s;
}

// ---------------------------------------------------------------------------
// On-disk format: <stem>.json header sidecar + <stem>.f32 raw little-endian
// samples, z fastest. The payload is written byte-for-byte from the float
// array, so NaN patterns and all, round-trips are exact.

namespace detail {

inline std::filesystem::path volume_stem(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    if (ext == ".json" || ext == ".f32") {
        auto p = path;
        p.replace_extension();
        return p;
    }
    return path;
}

inline nlohmann::json interval_to_json(const Interval& i) {
    return nlohmann::json::array({i.lo, i.hi});
}

inline Interval interval_from_json(const nlohmann::json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw Error("volume header: field \"" + key + "\" must be an integer pair [lo,hi]");
    return Interval{j[0].get<int>(), j[1].get<int>()};
}

} // namespace detail

inline nlohmann::json header_to_json(const VolumeHeader& h) {
    nlohmann::json j;
    j["inline_range"] = detail::interval_to_json(h.inline_range);
    j["crossline_range"] = detail::interval_to_json(h.crossline_range);
    j["z_range"] = detail::interval_to_json(h.z_range);
    j["sample_interval_ms"] = h.sample_interval_ms;
    j["line_spacing_m"] = h.line_spacing_m;
    j["byte_order"] = "LE";
    j["sample_format"] = "f32";
    return j;
}

inline VolumeHeader header_from_json(const nlohmann::json& j) {
    static const char* known[] = {"inline_range",       "crossline_range", "z_range",
                                  "sample_interval_ms", "line_spacing_m",  "byte_order",
                                  "sample_format"};
    if (!j.is_object()) throw Error("volume header: not a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw Error("volume header: unknown field \"" + it.key() + "\"");
    }
    for (const char* k : {"inline_range", "crossline_range", "z_range"})
        if (!j.contains(k)) throw Error(std::string("volume header: missing field \"") + k + "\"");
    VolumeHeader h;
    h.inline_range = detail::interval_from_json(j["inline_range"], "inline_range");
    h.crossline_range = detail::interval_from_json(j["crossline_range"], "crossline_range");
    h.z_range = detail::interval_from_json(j["z_range"], "z_range");
    if (j.contains("sample_interval_ms")) {
        if (!j["sample_interval_ms"].is_number())
            throw Error("volume header: field \"sample_interval_ms\" must be a number");
        h.sample_interval_ms = j["sample_interval_ms"].get<double>();
    }
    if (j.contains("line_spacing_m")) {
        if (!j["line_spacing_m"].is_number())
            throw Error("volume header: field \"line_spacing_m\" must be a number");
        h.line_spacing_m = j["line_spacing_m"].get<double>();
    }
    if (j.contains("byte_order") && j["byte_order"] != "LE")
        throw Error("volume header: field \"byte_order\" must be \"LE\"");
    if (j.contains("sample_format") && j["sample_format"] != "f32")
        throw Error("volume header: field \"sample_format\" must be \"f32\"");
    h.validate();
    return h;
}

inline VolumeHeader load_volume_header(const std::filesystem::path& path) {
    auto stem = detail::volume_stem(path);
    auto header_path = stem;
    header_path += ".json";
    std::ifstream in(header_path);
    if (!in) throw Error("cannot open volume header " + header_path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed volume header " + header_path.string() + ": " + e.what());
    }
    try {
        return header_from_json(j);
    } catch (const Error& e) {
        throw Error(header_path.string() + ": " + e.what());
    }
}

inline SeismicVolume load_volume(const std::filesystem::path& path) {
    auto stem = detail::volume_stem(path);
    SeismicVolume v;
    v.header = load_volume_header(stem);

    auto data_path = stem;
    data_path += ".f32";
    std::ifstream in(data_path, std::ios::binary);
    if (!in) throw Error("cannot open volume samples " + data_path.string());
    in.seekg(0, std::ios::end);
    std::streamoff bytes = in.tellg();
    in.seekg(0, std::ios::beg);
    std::size_t expected = v.header.voxel_count();
    if (static_cast<std::size_t>(bytes) != expected * 4)
        throw Error("volume samples " + data_path.string() + ": file holds " +
                    detail::format_int(bytes / 4) + " f32 samples but header declares " +
                    detail::format_int(expected));

    std::vector<unsigned char> raw(static_cast<std::size_t>(bytes));
    if (!in.read(reinterpret_cast<char*>(raw.data()), bytes))
        throw Error("volume samples " + data_path.string() + ": short read");
    v.samples.resize(expected);
    for (std::size_t i = 0; i < expected; ++i) {
        std::uint32_t u = static_cast<std::uint32_t>(raw[4 * i]) |
                          (static_cast<std::uint32_t>(raw[4 * i + 1]) << 8) |
                          (static_cast<std::uint32_t>(raw[4 * i + 2]) << 16) |
                          (static_cast<std::uint32_t>(raw[4 * i + 3]) << 24);
        v.samples[i] = std::bit_cast<float>(u);
    }
    v.validate();
    return v;
}

inline void save_volume(const SeismicVolume& v, const std::filesystem::path& path) {
    v.validate();
    auto stem = detail::volume_stem(path);
    auto header_path = stem;
    header_path += ".json";
    {
        std::ofstream out(header_path);
        if (!out) throw Error("cannot write volume header " + header_path.string());
        out << header_to_json(v.header).dump(2) << '\n';
        if (!out) throw Error("write failed for " + header_path.string());
    }
    auto data_path = stem;
    data_path += ".f32";
    std::ofstream out(data_path, std::ios::binary);
    if (!out) throw Error("cannot write volume samples " + data_path.string());
    std::vector<unsigned char> raw(v.samples.size() * 4);
    for (std::size_t i = 0; i < v.samples.size(); ++i) {
        std::uint32_t u = std::bit_cast<std::uint32_t>(v.samples[i]);
        raw[4 * i] = static_cast<unsigned char>(u & 0xFF);
        raw[4 * i + 1] = static_cast<unsigned char>((u >> 8) & 0xFF);
        raw[4 * i + 2] = static_cast<unsigned char>((u >> 16) & 0xFF);
        raw[4 * i + 3] = static_cast<unsigned char>((u >> 24) & 0xFF);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw Error("write failed for " + data_path.string());
}

} // namespace facies
