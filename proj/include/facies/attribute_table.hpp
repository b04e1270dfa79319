#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "facies/common.hpp"
#include "facies/volume.hpp"

namespace facies {

inline constexpr int n_texture_attributes = 4;
inline constexpr std::array<const char*, n_texture_attributes> texture_attribute_names = {
    "energy", "homogeneity", "contrast", "dissimilarity"};

/// The four texture attributes of a single window, in column order.
struct TextureVector {
    double energy = 0.0;
    double homogeneity = 0.0;
    double contrast = 0.0;
    double dissimilarity = 0.0;

    double operator[](int a) const {
        switch (a) {
            case 0: return energy;
            case 1: return homogeneity;
            case 2: return contrast;
            case 3: return dissimilarity;
        }
        throw Error("texture attribute index out of range");
    }
};

/// Per-voxel texture attributes over a survey grid. Stored column-major (one
/// vector per attribute) because interpolation and training consume whole
/// columns. A voxel is either fully observed (all four attributes) or fully
/// missing; missing entries hold NaN and are flagged in the mask.
struct AttributeTable {
    VolumeHeader geometry;
    std::array<std::vector<double>, n_texture_attributes> columns;
    std::vector<std::uint8_t> missing;

    std::size_t row_count() const { return missing.size(); }

    std::size_t missing_count() const {
        std::size_t n = 0;
        for (auto m : missing)
            if (m) ++n;
        return n;
    }

    void resize_missing() {
        std::size_t n = geometry.voxel_count();
        missing.assign(n, 1);
        for (auto& col : columns) col.assign(n, std::numeric_limits<double>::quiet_NaN());
    }

    void set_row(std::size_t voxel, const TextureVector& t) {
        columns[0][voxel] = t.energy;
        columns[1][voxel] = t.homogeneity;
        columns[2][voxel] = t.contrast;
        columns[3][voxel] = t.dissimilarity;
        missing[voxel] = 0;
    }

    TextureVector row(std::size_t voxel) const {
        return {columns[0][voxel], columns[1][voxel], columns[2][voxel], columns[3][voxel]};
    }

    void validate() const {
        geometry.validate();
        std::size_t n = geometry.voxel_count();
        if (missing.size() != n)
            throw Error("attribute table: mask size " +
                        detail::format_int((long long)missing.size()) +
                        " does not match geometry " + detail::format_int(n));
        for (int a = 0; a < n_texture_attributes; ++a)
            if (columns[a].size() != n)
                throw Error(std::string("attribute table: column \"") +
                            texture_attribute_names[a] + "\" size mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            for (int a = 0; a < n_texture_attributes; ++a) {
                bool finite = std::isfinite(columns[a][i]);
                if (!missing[i] && !finite) {
                    auto c = geometry.coords(i);
                    throw Error(std::string("attribute table: observed row at (inline ") +
                                detail::format_int(c[0]) + ", crossline " +
                                detail::format_int(c[1]) + ", z " + detail::format_int(c[2]) +
                                ") has non-finite " + texture_attribute_names[a]);
                }
            }
        }
    }
};

// ---------------------------------------------------------------------------
// CSV form: one row per voxel in index order, columns
// inline,crossline,z,energy,homogeneity,contrast,dissimilarity,missing.
// Missing rows carry empty attribute fields and missing=1. Geometry travels
// in a JSON sidecar (same stem, .json), so the grid reconstructs exactly.

inline void save_attribute_csv(const AttributeTable& t, const std::filesystem::path& csv_path) {
    t.validate();
    std::ofstream out(csv_path);
    if (!out) throw Error("cannot write attribute table " + csv_path.string());
    out << "inline,crossline,z,energy,homogeneity,contrast,dissimilarity,missing\n";
    std::size_t n = t.row_count();
    std::string line;
    for (std::size_t i = 0; i < n; ++i) {
        auto c = t.geometry.coords(i);
        line.clear();
        line += detail::format_int(c[0]);
        line += ',';
        line += detail::format_int(c[1]);
        line += ',';
        line += detail::format_int(c[2]);
        if (t.missing[i]) {
            line += ",,,,,1\n";
        } else {
            for (int a = 0; a < n_texture_attributes; ++a) {
                line += ',';
                line += detail::format_double(t.columns[a][i]);
            }
            line += ",0\n";
        }
        out << line;
    }
    if (!out) throw Error("write failed for " + csv_path.string());

    auto sidecar = csv_path;
    sidecar.replace_extension(".json");
    nlohmann::json j;
    j["geometry"] = header_to_json(t.geometry);
    std::ofstream side(sidecar);
    if (!side) throw Error("cannot write attribute sidecar " + sidecar.string());
    side << j.dump(2) << '\n';
    if (!side) throw Error("write failed for " + sidecar.string());
}

inline AttributeTable load_attribute_csv(const std::filesystem::path& csv_path) {
    auto sidecar = csv_path;
    sidecar.replace_extension(".json");
    std::ifstream side(sidecar);
    if (!side) throw Error("cannot open attribute sidecar " + sidecar.string());
    nlohmann::json j;
    try {
        side >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed attribute sidecar " + sidecar.string() + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("geometry"))
        throw Error("attribute sidecar " + sidecar.string() + ": expected field \"geometry\"");

    AttributeTable t;
    t.geometry = header_from_json(j["geometry"]);
    t.resize_missing();

    std::ifstream in(csv_path);
    if (!in) throw Error("cannot open attribute table " + csv_path.string());
    std::string line;
    const std::string expected_header =
        "inline,crossline,z,energy,homogeneity,contrast,dissimilarity,missing";
    if (!std::getline(in, line) || line != expected_header)
        throw Error("attribute table " + csv_path.string() + ": expected header \"" +
                    expected_header + "\"");

    std::size_t line_no = 1;
    std::vector<std::string_view> fields;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fail = [&](const std::string& what) -> Error {
            return Error("attribute table " + csv_path.string() + " line " +
                         detail::format_int((long long)line_no) + ": " + what);
        };
        fields.clear();
        std::string_view sv(line);
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = sv.find(',', pos);
            if (comma == std::string_view::npos) {
                fields.push_back(sv.substr(pos));
                break;
            }
            fields.push_back(sv.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (fields.size() != 8) throw fail("expected 8 fields");

        long long coord[3];
        for (int f = 0; f < 3; ++f)
            if (!detail::parse_int(fields[f], coord[f])) throw fail("bad integer coordinate");
        int inl = static_cast<int>(coord[0]);
        int crl = static_cast<int>(coord[1]);
        int z = static_cast<int>(coord[2]);
        if (!t.geometry.inline_range.contains(inl) || !t.geometry.crossline_range.contains(crl) ||
            !t.geometry.z_range.contains(z))
            throw fail("coordinates outside geometry");
        std::size_t voxel = t.geometry.index(inl, crl, z);

        long long missing_flag;
        if (!detail::parse_int(fields[7], missing_flag) ||
            (missing_flag != 0 && missing_flag != 1))
            throw fail("missing flag must be 0 or 1");
        if (missing_flag == 1) {
            for (int a = 0; a < n_texture_attributes; ++a)
                if (!fields[3 + a].empty())
                    throw fail("missing row must have empty attribute fields");
            t.missing[voxel] = 1;
        } else {
            TextureVector v;
            double vals[4];
            for (int a = 0; a < n_texture_attributes; ++a)
                if (!detail::parse_double(fields[3 + a], vals[a]))
                    throw fail(std::string("bad numeric field \"") + texture_attribute_names[a] +
                               "\"");
            v.energy = vals[0];
            v.homogeneity = vals[1];
            v.contrast = vals[2];
            v.dissimilarity = vals[3];
            t.set_row(voxel, v);
        }
    }
    t.validate();
    return t;
}

} // namespace facies
