#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "facies/common.hpp"
#include "facies/volume.hpp"

namespace facies {

/// Facies labels on the survey grid. Labels are 1..n_classes for classified
/// voxels and 0 where no label was assigned (window never computed, or the
/// attribute row stayed missing after interpolation).
struct FaciesMap {
    VolumeHeader header;
    std::vector<std::uint16_t> labels;  // same layout as SeismicVolume::samples
    int n_classes = 0;

    std::uint16_t at(int inl, int crl, int z) const { return labels[header.index(inl, crl, z)]; }

    std::size_t labeled_count() const {
        std::size_t n = 0;
        for (auto l : labels)
            if (l != 0) ++n;
        return n;
    }

    void validate() const {
        header.validate();
        if (labels.size() != header.voxel_count())
            throw Error("facies map: label count " + detail::format_int((long long)labels.size()) +
                        " does not match header dimensions " +
                        detail::format_int(header.voxel_count()));
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] > n_classes) {
                auto c = header.coords(i);
                throw Error("facies map: label " + detail::format_int(labels[i]) + " at (inline " +
                            detail::format_int(c[0]) + ", crossline " + detail::format_int(c[1]) +
                            ", z " + detail::format_int(c[2]) + ") exceeds n_classes " +
                            detail::format_int(n_classes));
            }
        }
    }
};

/// Labels as a float volume (0 for unlabeled) so facies grids can reuse the
/// header + f32 pair format and be loaded by any tool that reads volumes.
inline SeismicVolume facies_to_volume(const FaciesMap& m) {
    SeismicVolume v;
    v.header = m.header;
    v.samples.resize(m.labels.size());
    for (std::size_t i = 0; i < m.labels.size(); ++i)
        v.samples[i] = static_cast<float>(m.labels[i]);
    return v;
}

// ---------------------------------------------------------------------------
// CSV form: one row per labeled voxel, columns inline,crossline,z,label.
// Unlabeled voxels are omitted; the survey geometry travels in a JSON sidecar
// next to the CSV so the full grid can be reconstructed.

inline void save_facies_csv(const FaciesMap& m, const std::filesystem::path& csv_path) {
    m.validate();
    std::ofstream out(csv_path);
    if (!out) throw Error("cannot write facies table " + csv_path.string());
    out << "inline,crossline,z,label\n";
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
        if (m.labels[i] == 0) continue;
        auto c = m.header.coords(i);
        out << detail::format_int(c[0]) << ',' << detail::format_int(c[1]) << ','
            << detail::format_int(c[2]) << ',' << detail::format_int(m.labels[i]) << '\n';
    }
    if (!out) throw Error("write failed for " + csv_path.string());

    auto sidecar = csv_path;
    sidecar.replace_extension(".json");
    nlohmann::json j;
    j["geometry"] = header_to_json(m.header);
    j["n_classes"] = m.n_classes;
    std::ofstream side(sidecar);
    if (!side) throw Error("cannot write facies sidecar " + sidecar.string());
    side << j.dump(2) << '\n';
    if (!side) throw Error("write failed for " + sidecar.string());
}

inline FaciesMap load_facies_csv(const std::filesystem::path& csv_path) {
    auto sidecar = csv_path;
    sidecar.replace_extension(".json");
    std::ifstream side(sidecar);
    if (!side) throw Error("cannot open facies sidecar " + sidecar.string());
    nlohmann::json j;
    try {
        side >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed facies sidecar " + sidecar.string() + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("geometry") || !j.contains("n_classes"))
        throw Error("facies sidecar " + sidecar.string() +
                    ": expected fields \"geometry\" and \"n_classes\"");

    FaciesMap m;
    m.header = header_from_json(j["geometry"]);
    if (!j["n_classes"].is_number_integer() || j["n_classes"].get<int>() < 0)
        throw Error("facies sidecar " + sidecar.string() +
                    ": \"n_classes\" must be a non-negative integer");
    m.n_classes = j["n_classes"].get<int>();
    m.labels.assign(m.header.voxel_count(), 0);

    std::ifstream in(csv_path);
    if (!in) throw Error("cannot open facies table " + csv_path.string());
    std::string line;
    if (!std::getline(in, line) || line != "inline,crossline,z,label")
        throw Error("facies table " + csv_path.string() +
                    ": expected header \"inline,crossline,z,label\"");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        long long fields[4];
        std::size_t pos = 0;
        for (int f = 0; f < 4; ++f) {
            std::size_t comma = (f < 3) ? line.find(',', pos) : line.size();
            if (comma == std::string::npos)
                throw Error("facies table " + csv_path.string() + " line " +
                            detail::format_int((long long)line_no) + ": expected 4 fields");
            if (!detail::parse_int(std::string_view(line).substr(pos, comma - pos), fields[f]))
                throw Error("facies table " + csv_path.string() + " line " +
                            detail::format_int((long long)line_no) + ": bad integer field");
            pos = comma + 1;
        }
        int inl = static_cast<int>(fields[0]);
        int crl = static_cast<int>(fields[1]);
        int z = static_cast<int>(fields[2]);
        if (!m.header.inline_range.contains(inl) || !m.header.crossline_range.contains(crl) ||
            !m.header.z_range.contains(z))
            throw Error("facies table " + csv_path.string() + " line " +
                        detail::format_int((long long)line_no) + ": coordinates outside geometry");
        if (fields[3] < 1 || fields[3] > m.n_classes)
            throw Error("facies table " + csv_path.string() + " line " +
                        detail::format_int((long long)line_no) + ": label outside 1.." +
                        detail::format_int(m.n_classes));
        m.labels[m.header.index(inl, crl, z)] = static_cast<std::uint16_t>(fields[3]);
    }
    return m;
}

} // namespace facies
