#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "facies/common.hpp"
#include "facies/detail/rng.hpp"
#include "facies/facies_map.hpp"
#include "facies/volume.hpp"

namespace facies {

/// Texture families for synthetic regions. Each family stresses a different
/// co-occurrence signature: constant (all-diagonal mass), checkerboard
/// (off-diagonal mass at a fixed distance), white noise (spread mass),
/// linear gradient (near-diagonal mass, smooth).
enum class TextureKind { Constant, Checkerboard, WhiteNoise, LinearGradient };

struct TextureRecipe {
    TextureKind kind = TextureKind::Constant;
    // constant
    double value = 0.0;
    // checkerboard
    int period = 1;
    double low = 0.0;
    double high = 1.0;
    // white noise
    double mean = 0.0;
    double sigma = 1.0;
    // linear gradient: base + slopes against global normalized coordinates
    double base = 0.0;
    double slope_inline = 0.0;
    double slope_crossline = 0.0;
    double slope_z = 0.0;
};

/// Axis-aligned box of the survey grid plus the texture to fill it with.
/// Regions are labeled 1..R in declaration order.
struct SyntheticRegion {
    Interval inline_range;
    Interval crossline_range;
    Interval z_range;
    TextureRecipe texture;
};

struct SyntheticSpec {
    VolumeHeader geometry;
    std::vector<SyntheticRegion> regions;
};

namespace detail {

inline void validate_recipe(const TextureRecipe& r, std::size_t region_index) {
    auto where = [&] { return "synthetic region " + format_int((long long)region_index + 1); };
    switch (r.kind) {
        case TextureKind::Constant:
            if (!std::isfinite(r.value)) throw Error(where() + ": constant value not finite");
            break;
        case TextureKind::Checkerboard:
            if (r.period < 1) throw Error(where() + ": checkerboard period must be >= 1");
            if (!std::isfinite(r.low) || !std::isfinite(r.high))
                throw Error(where() + ": checkerboard values not finite");
            break;
        case TextureKind::WhiteNoise:
            if (!std::isfinite(r.mean) || !(r.sigma >= 0.0) || !std::isfinite(r.sigma))
                throw Error(where() + ": white_noise needs finite mean and sigma >= 0");
            break;
        case TextureKind::LinearGradient:
            if (!std::isfinite(r.base) || !std::isfinite(r.slope_inline) ||
                !std::isfinite(r.slope_crossline) || !std::isfinite(r.slope_z))
                throw Error(where() + ": linear_gradient coefficients not finite");
            break;
    }
}

} // namespace detail

/// Fills a volume region by region and returns the volume together with the
/// generating label map. Pure function of (spec, seed): white-noise draws
/// come from a per-region substream consumed in region scan order, so region
/// declaration order and box placement fully determine every sample.
inline std::pair<SeismicVolume, FaciesMap> generate_synthetic(const SyntheticSpec& spec,
                                                              std::uint64_t seed) {
    spec.geometry.validate();
    if (spec.regions.empty()) throw Error("synthetic spec: no regions");
    if (spec.regions.size() > 65535) throw Error("synthetic spec: too many regions");

    const VolumeHeader& h = spec.geometry;
    SeismicVolume vol;
    vol.header = h;
    vol.samples.assign(h.voxel_count(), 0.0f);
    FaciesMap map;
    map.header = h;
    map.n_classes = static_cast<int>(spec.regions.size());
    map.labels.assign(h.voxel_count(), 0);

    for (std::size_t ri = 0; ri < spec.regions.size(); ++ri) {
        const SyntheticRegion& reg = spec.regions[ri];
        auto where = [&] { return "synthetic region " + detail::format_int((long long)ri + 1); };
        for (auto [range, name] : {std::pair{&reg.inline_range, "inline_range"},
                                   std::pair{&reg.crossline_range, "crossline_range"},
                                   std::pair{&reg.z_range, "z_range"}}) {
            if (range->empty()) throw Error(where() + ": " + name + " is empty");
        }
        if (reg.inline_range.lo < h.inline_range.lo || reg.inline_range.hi > h.inline_range.hi ||
            reg.crossline_range.lo < h.crossline_range.lo ||
            reg.crossline_range.hi > h.crossline_range.hi || reg.z_range.lo < h.z_range.lo ||
            reg.z_range.hi > h.z_range.hi)
            throw Error(where() + ": box extends outside the volume geometry");
        detail::validate_recipe(reg.texture, ri);

        std::mt19937_64 rng(detail::substream_seed(seed, ri));
        const TextureRecipe& t = reg.texture;
        std::uint16_t label = static_cast<std::uint16_t>(ri + 1);
        for (int inl = reg.inline_range.lo; inl <= reg.inline_range.hi; ++inl) {
            for (int crl = reg.crossline_range.lo; crl <= reg.crossline_range.hi; ++crl) {
                for (int z = reg.z_range.lo; z <= reg.z_range.hi; ++z) {
                    std::size_t idx = h.index(inl, crl, z);
                    if (map.labels[idx] != 0)
                        throw Error(where() + ": overlaps region " +
                                    detail::format_int(map.labels[idx]) + " at (inline " +
                                    detail::format_int(inl) + ", crossline " +
                                    detail::format_int(crl) + ", z " + detail::format_int(z) +
                                    ")");
                    map.labels[idx] = label;
                    double v = 0.0;
                    switch (t.kind) {
                        case TextureKind::Constant:
                            v = t.value;
                            break;
                        case TextureKind::Checkerboard: {
                            int pi = (inl - reg.inline_range.lo) / t.period;
                            int px = (crl - reg.crossline_range.lo) / t.period;
                            v = ((pi + px) % 2 == 0) ? t.low : t.high;
                            break;
                        }
                        case TextureKind::WhiteNoise:
                            v = t.mean + t.sigma * detail::normal01(rng);
                            break;
                        case TextureKind::LinearGradient:
                            v = t.base +
                                t.slope_inline * detail::normalized_coord(inl, h.inline_range) +
                                t.slope_crossline *
                                    detail::normalized_coord(crl, h.crossline_range) +
                                t.slope_z * detail::normalized_coord(z, h.z_range);
                            break;
                    }
                    vol.samples[idx] = static_cast<float>(v);
                }
            }
        }
    }

    for (std::size_t i = 0; i < map.labels.size(); ++i) {
        if (map.labels[i] == 0) {
            auto c = h.coords(i);
            throw Error("synthetic spec: regions do not cover (inline " +
                        detail::format_int(c[0]) + ", crossline " + detail::format_int(c[1]) +
                        ", z " + detail::format_int(c[2]) + ")");
        }
    }
    return {std::move(vol), std::move(map)};
}

// ---------------------------------------------------------------------------
// JSON form of the spec, consumed by the `synth` command:
// { "geometry": {<volume header>},
//   "regions": [ {"inline_range":[lo,hi], "crossline_range":[..], "z_range":[..],
//                 "texture": {"type":"constant","value":3.0}}, ... ] }

namespace detail {

inline double require_number(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw Error(where + ": missing or non-numeric field \"" + key + "\"");
    return j[key].get<double>();
}

inline TextureRecipe texture_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw Error(where + ": texture must be an object with a \"type\" string");
    TextureRecipe t;
    std::string type = j["type"].get<std::string>();
    std::vector<std::string> allowed = {"type"};
    if (type == "constant") {
        t.kind = TextureKind::Constant;
        t.value = require_number(j, "value", where);
        allowed.push_back("value");
    } else if (type == "checkerboard") {
        t.kind = TextureKind::Checkerboard;
        double p = require_number(j, "period", where);
        if (p != std::floor(p)) throw Error(where + ": checkerboard period must be an integer");
        t.period = static_cast<int>(p);
        t.low = require_number(j, "low", where);
        t.high = require_number(j, "high", where);
        allowed.insert(allowed.end(), {"period", "low", "high"});
    } else if (type == "white_noise") {
        t.kind = TextureKind::WhiteNoise;
        t.mean = require_number(j, "mean", where);
        t.sigma = require_number(j, "sigma", where);
        allowed.insert(allowed.end(), {"mean", "sigma"});
    } else if (type == "linear_gradient") {
        t.kind = TextureKind::LinearGradient;
        t.base = require_number(j, "base", where);
        t.slope_inline = require_number(j, "slope_inline", where);
        t.slope_crossline = require_number(j, "slope_crossline", where);
        t.slope_z = require_number(j, "slope_z", where);
        allowed.insert(allowed.end(), {"base", "slope_inline", "slope_crossline", "slope_z"});
    } else {
        throw Error(where + ": unknown texture type \"" + type +
                    "\" (expected constant|checkerboard|white_noise|linear_gradient)");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed) ok = ok || it.key() == k;
        if (!ok) throw Error(where + ": unknown texture field \"" + it.key() + "\"");
    }
    return t;
}

inline nlohmann::json texture_to_json(const TextureRecipe& t) {
    nlohmann::json j;
    switch (t.kind) {
        case TextureKind::Constant:
            j["type"] = "constant";
            j["value"] = t.value;
            break;
        case TextureKind::Checkerboard:
            j["type"] = "checkerboard";
            j["period"] = t.period;
            j["low"] = t.low;
            j["high"] = t.high;
            break;
        case TextureKind::WhiteNoise:
            j["type"] = "white_noise";
            j["mean"] = t.mean;
            j["sigma"] = t.sigma;
            break;
        case TextureKind::LinearGradient:
            j["type"] = "linear_gradient";
            j["base"] = t.base;
            j["slope_inline"] = t.slope_inline;
            j["slope_crossline"] = t.slope_crossline;
            j["slope_z"] = t.slope_z;
            break;
    }
    return j;
}

} // namespace detail

inline SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error("synthetic spec: not a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "geometry" && it.key() != "regions")
            throw Error("synthetic spec: unknown field \"" + it.key() + "\"");
    if (!j.contains("geometry")) throw Error("synthetic spec: missing field \"geometry\"");
    if (!j.contains("regions") || !j["regions"].is_array())
        throw Error("synthetic spec: missing or non-array field \"regions\"");

    SyntheticSpec spec;
    spec.geometry = header_from_json(j["geometry"]);
    for (std::size_t i = 0; i < j["regions"].size(); ++i) {
        const auto& rj = j["regions"][i];
        std::string where = "synthetic region " + detail::format_int((long long)i + 1);
        if (!rj.is_object()) throw Error(where + ": not a JSON object");
        for (auto it = rj.begin(); it != rj.end(); ++it) {
            const std::string& k = it.key();
            if (k != "inline_range" && k != "crossline_range" && k != "z_range" && k != "texture")
                throw Error(where + ": unknown field \"" + k + "\"");
        }
        for (const char* k : {"inline_range", "crossline_range", "z_range", "texture"})
            if (!rj.contains(k)) throw Error(where + ": missing field \"" + k + "\"");
        SyntheticRegion reg;
        reg.inline_range = detail::interval_from_json(rj["inline_range"], "inline_range");
        reg.crossline_range = detail::interval_from_json(rj["crossline_range"], "crossline_range");
        reg.z_range = detail::interval_from_json(rj["z_range"], "z_range");
        reg.texture = detail::texture_from_json(rj["texture"], where);
        spec.regions.push_back(reg);
    }
    return spec;
}

inline nlohmann::json synthetic_spec_to_json(const SyntheticSpec& spec) {
    nlohmann::json j;
    j["geometry"] = header_to_json(spec.geometry);
    j["regions"] = nlohmann::json::array();
    for (const auto& reg : spec.regions) {
        nlohmann::json rj;
        rj["inline_range"] = detail::interval_to_json(reg.inline_range);
        rj["crossline_range"] = detail::interval_to_json(reg.crossline_range);
        rj["z_range"] = detail::interval_to_json(reg.z_range);
        rj["texture"] = detail::texture_to_json(reg.texture);
        j["regions"].push_back(rj);
    }
    return j;
}

} // namespace facies
