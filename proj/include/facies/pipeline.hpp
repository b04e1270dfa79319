#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "facies/attribute_table.hpp"
#include "facies/classify.hpp"
#include "facies/common.hpp"
#include "facies/facies_map.hpp"
#include "facies/glcm.hpp"
#include "facies/gtm.hpp"
#include "facies/rbf.hpp"
#include "facies/render.hpp"
#include "facies/synthetic.hpp"
#include "facies/volume.hpp"

namespace facies {

struct GlcmSettings {
    int levels = 64;
    int window_half = 4;
    std::vector<std::pair<int, int>> offsets = default_glcm_offsets();
    SliceOrientation plane = SliceOrientation::Time;
};

struct RbfSettings {
    double kernel_width = 0.0;  // 0 selects the median-distance default
    double regularization = 1e-8;
    double train_fraction = 0.8;
    std::size_t max_centers = 2000;
    std::uint64_t seed = 1;
};

struct GtmSettings {
    int grid_rows = 30;
    int grid_cols = 30;
    int basis_rows = 15;
    int basis_cols = 15;
    double sigma_scale = 1.0;  // sigma = scale × basis center spacing
    double ll_tolerance = 1e-5;
    int max_iterations = 200;
    double map_regularization = 1e-3;
    double beta_max = 1e8;
    std::size_t subsample_cap = 50000;
    std::uint64_t seed = 2;
};

struct ClassifySettings {
    int n_clusters = 4;
    std::uint64_t seed = 3;
    std::filesystem::path ground_truth;  // optional facies CSV for scoring
};

struct RenderSettings {
    SliceOrientation orientation = SliceOrientation::Time;
    std::optional<int> index;  // default: middle slice of the axis
};

struct SynthSettings {
    std::optional<SyntheticSpec> spec;
    std::uint64_t seed = 42;
};

struct PipelineConfig {
    std::filesystem::path input_volume;
    std::filesystem::path output_dir = "out";
    GlcmSettings glcm;
    RbfSettings rbf;
    GtmSettings gtm;
    ClassifySettings classify;
    RenderSettings render;
    SynthSettings synth;
};

// ---------------------------------------------------------------------------
// Strict config parsing: every object is checked for unknown keys, every
// value for type and range, and all failures surface as ConfigError with the
// dotted key path.

namespace detail {

class StrictObject {
public:
    StrictObject(const nlohmann::json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw ConfigError("config: " + where_ + " must be an object");
    }

    const nlohmann::json* find(const char* key) {
        used_.push_back(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    template <typename T>
    T get(const char* key, T fallback) {
        const nlohmann::json* v = find(key);
        if (!v) return fallback;
        return convert<T>(*v, key);
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            bool known = false;
            for (const auto& k : used_) known = known || it.key() == k;
            if (!known)
                throw ConfigError("config: unknown key \"" + join(it.key()) + "\"");
        }
    }

    std::string join(const std::string& key) const {
        return where_.empty() ? key : where_ + "." + key;
    }

    template <typename T>
    T convert(const nlohmann::json& v, const char* key) const {
        try {
            if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) throw ConfigError("");
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!v.is_boolean()) throw ConfigError("");
            } else if constexpr (std::is_integral_v<T>) {
                if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError("");
            } else {
                if (!v.is_number()) throw ConfigError("");
            }
            return v.get<T>();
        } catch (...) {
            throw ConfigError("config: key \"" + join(key) + "\" has the wrong type");
        }
    }

private:
    const nlohmann::json& j_;
    std::string where_;
    std::vector<std::string> used_;
};

inline void config_check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError("config: " + message);
}

inline SliceOrientation orientation_from_config(const std::string& s, const std::string& key) {
    try {
        return slice_orientation_from_string(s);
    } catch (const Error& e) {
        throw ConfigError("config: key \"" + key + "\": " + e.what());
    }
}

} // namespace detail

inline PipelineConfig pipeline_config_from_json(const nlohmann::json& j) {
    PipelineConfig c;
    detail::StrictObject root(j, "");
    c.input_volume = root.get<std::string>("input_volume", "");
    c.output_dir = root.get<std::string>("output_dir", c.output_dir.string());
    detail::config_check(!c.output_dir.empty(), "output_dir must not be empty");

    if (const nlohmann::json* g = root.find("glcm")) {
        detail::StrictObject o(*g, "glcm");
        c.glcm.levels = o.get<int>("levels", c.glcm.levels);
        c.glcm.window_half = o.get<int>("window_half", c.glcm.window_half);
        if (const nlohmann::json* offs = o.find("offsets")) {
            detail::config_check(offs->is_array() && !offs->empty(),
                                 "glcm.offsets must be a nonempty array of [di,dj] pairs");
            c.glcm.offsets.clear();
            for (const auto& p : *offs) {
                detail::config_check(p.is_array() && p.size() == 2 &&
                                         p[0].is_number_integer() && p[1].is_number_integer(),
                                     "glcm.offsets entries must be [di,dj] integer pairs");
                c.glcm.offsets.emplace_back(p[0].get<int>(), p[1].get<int>());
            }
        }
        c.glcm.plane = detail::orientation_from_config(
            o.get<std::string>("plane", to_string(c.glcm.plane)), "glcm.plane");
        o.finish();
        detail::config_check(c.glcm.levels >= 2, "glcm.levels must be >= 2");
        detail::config_check(c.glcm.window_half >= 1, "glcm.window_half must be >= 1");
        for (auto [di, dj] : c.glcm.offsets)
            detail::config_check(di != 0 || dj != 0, "glcm.offsets must not contain (0,0)");
    }

    if (const nlohmann::json* r = root.find("rbf")) {
        detail::StrictObject o(*r, "rbf");
        c.rbf.kernel_width = o.get<double>("kernel_width", c.rbf.kernel_width);
        c.rbf.regularization = o.get<double>("regularization", c.rbf.regularization);
        c.rbf.train_fraction = o.get<double>("train_fraction", c.rbf.train_fraction);
        c.rbf.max_centers = o.get<std::size_t>("max_centers", c.rbf.max_centers);
        c.rbf.seed = o.get<std::uint64_t>("seed", c.rbf.seed);
        o.finish();
        detail::config_check(c.rbf.kernel_width >= 0.0, "rbf.kernel_width must be >= 0");
        detail::config_check(c.rbf.regularization >= 0.0, "rbf.regularization must be >= 0");
        detail::config_check(c.rbf.train_fraction > 0.0 && c.rbf.train_fraction < 1.0,
                             "rbf.train_fraction must lie in (0,1)");
        detail::config_check(c.rbf.max_centers >= 1, "rbf.max_centers must be >= 1");
    }

    if (const nlohmann::json* g = root.find("gtm")) {
        detail::StrictObject o(*g, "gtm");
        c.gtm.grid_rows = o.get<int>("grid_rows", c.gtm.grid_rows);
        c.gtm.grid_cols = o.get<int>("grid_cols", c.gtm.grid_cols);
        c.gtm.basis_rows = o.get<int>("basis_rows", c.gtm.basis_rows);
        c.gtm.basis_cols = o.get<int>("basis_cols", c.gtm.basis_cols);
        c.gtm.sigma_scale = o.get<double>("sigma_scale", c.gtm.sigma_scale);
        c.gtm.ll_tolerance = o.get<double>("ll_tolerance", c.gtm.ll_tolerance);
        c.gtm.max_iterations = o.get<int>("max_iterations", c.gtm.max_iterations);
        c.gtm.map_regularization = o.get<double>("map_regularization", c.gtm.map_regularization);
        c.gtm.beta_max = o.get<double>("beta_max", c.gtm.beta_max);
        c.gtm.subsample_cap = o.get<std::size_t>("subsample_cap", c.gtm.subsample_cap);
        c.gtm.seed = o.get<std::uint64_t>("seed", c.gtm.seed);
        o.finish();
        detail::config_check(c.gtm.grid_rows >= 2 && c.gtm.grid_cols >= 2,
                             "gtm.grid_rows and gtm.grid_cols must be >= 2");
        detail::config_check(c.gtm.basis_rows >= 2 && c.gtm.basis_cols >= 2,
                             "gtm.basis_rows and gtm.basis_cols must be >= 2");
        detail::config_check(c.gtm.sigma_scale > 0.0, "gtm.sigma_scale must be > 0");
        detail::config_check(c.gtm.ll_tolerance > 0.0, "gtm.ll_tolerance must be > 0");
        detail::config_check(c.gtm.max_iterations >= 1, "gtm.max_iterations must be >= 1");
        detail::config_check(c.gtm.map_regularization >= 0.0,
                             "gtm.map_regularization must be >= 0");
        detail::config_check(c.gtm.beta_max > 0.0, "gtm.beta_max must be > 0");
        detail::config_check(c.gtm.subsample_cap >= 10, "gtm.subsample_cap must be >= 10");
    }

    if (const nlohmann::json* cl = root.find("classify")) {
        detail::StrictObject o(*cl, "classify");
        c.classify.n_clusters = o.get<int>("n_clusters", c.classify.n_clusters);
        c.classify.seed = o.get<std::uint64_t>("seed", c.classify.seed);
        c.classify.ground_truth = o.get<std::string>("ground_truth", "");
        o.finish();
        detail::config_check(c.classify.n_clusters >= 1, "classify.n_clusters must be >= 1");
    }

    if (const nlohmann::json* r = root.find("render")) {
        detail::StrictObject o(*r, "render");
        c.render.orientation = detail::orientation_from_config(
            o.get<std::string>("orientation", to_string(c.render.orientation)),
            "render.orientation");
        if (const nlohmann::json* idx = o.find("index")) {
            detail::config_check(idx->is_number_integer(),
                                 "render.index must be an integer slice index");
            c.render.index = idx->get<int>();
        }
        o.finish();
    }

    if (const nlohmann::json* s = root.find("synth")) {
        detail::StrictObject o(*s, "synth");
        c.synth.seed = o.get<std::uint64_t>("seed", c.synth.seed);
        if (const nlohmann::json* spec = o.find("spec")) {
            try {
                c.synth.spec = synthetic_spec_from_json(*spec);
            } catch (const Error& e) {
                throw ConfigError(std::string("config: synth.spec: ") + e.what());
            }
        }
        o.finish();
    }

    root.finish();
    return c;
}

/// Loads the config file and applies `--override key.path=value` pairs on the
/// raw JSON before the strict parse. Values parse as JSON when they can
/// (numbers, booleans, arrays) and fall back to plain strings.
inline PipelineConfig load_pipeline_config(const std::filesystem::path& path,
                                           const std::vector<std::string>& overrides = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: malformed JSON in " + path.string() + ": " + e.what());
    }

    for (const std::string& ov : overrides) {
        std::size_t eq = ov.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("config: override \"" + ov + "\" is not of the form key=value");
        std::string key = ov.substr(0, eq);
        std::string value = ov.substr(eq + 1);
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(value);
        } catch (const nlohmann::json::exception&) {
            parsed = value;
        }
        nlohmann::json* cursor = &j;
        std::size_t pos = 0;
        while (true) {
            std::size_t dot = key.find('.', pos);
            std::string part = key.substr(pos, dot == std::string::npos ? dot : dot - pos);
            if (part.empty())
                throw ConfigError("config: override key \"" + key + "\" has an empty segment");
            if (dot == std::string::npos) {
                (*cursor)[part] = parsed;
                break;
            }
            if (!cursor->contains(part)) (*cursor)[part] = nlohmann::json::object();
            cursor = &(*cursor)[part];
            if (!cursor->is_object())
                throw ConfigError("config: override key \"" + key +
                                  "\" descends into a non-object value");
            pos = dot + 1;
        }
    }
    return pipeline_config_from_json(j);
}

// ---------------------------------------------------------------------------
// Stage commands. Artifacts live under output_dir with fixed names so each
// stage knows exactly what it reads and writes:
//   synth        -> synthetic.json/.f32, ground_truth.csv/.json
//   attributes   -> attributes.csv/.json, attribute_<name>.ppm + legend SVGs
//   interpolate  -> attributes_filled.csv/.json, rbf_report.csv
//   train        -> model.json, ll_trace.csv
//   classify     -> facies.csv/.json, facies_labels.json/.f32
//   render       -> facies.ppm + facies_legend.svg (or attribute images when
//                   no facies map exists yet)

namespace detail {

inline std::filesystem::path artifact(const PipelineConfig& c, const char* name) {
    return c.output_dir / name;
}

inline void ensure_output_dir(const PipelineConfig& c) {
    std::error_code ec;
    std::filesystem::create_directories(c.output_dir, ec);
    if (ec) throw Error("cannot create output directory " + c.output_dir.string());
}

inline void require_input_volume(const PipelineConfig& c) {
    if (c.input_volume.empty())
        throw ConfigError("config: input_volume is required for this command");
}

inline int render_index_or_middle(const RenderSettings& r, const VolumeHeader& h) {
    if (r.index) return *r.index;
    Interval axis = slice_axis_range(h, r.orientation);
    return axis.lo + (axis.count() - 1) / 2;
}

/// Rows of the observed voxels as a data matrix, plus each row's voxel index.
inline Eigen::MatrixXd observed_matrix(const AttributeTable& t,
                                       std::vector<std::size_t>& row_voxels) {
    row_voxels.clear();
    for (std::size_t i = 0; i < t.row_count(); ++i)
        if (!t.missing[i]) row_voxels.push_back(i);
    Eigen::MatrixXd data(static_cast<Eigen::Index>(row_voxels.size()), n_texture_attributes);
    for (std::size_t r = 0; r < row_voxels.size(); ++r)
        for (int a = 0; a < n_texture_attributes; ++a)
            data(static_cast<Eigen::Index>(r), a) = t.columns[a][row_voxels[r]];
    return data;
}

struct Standardization {
    Eigen::RowVectorXd mean;
    Eigen::RowVectorXd std;
};

inline Standardization standardize_columns(Eigen::MatrixXd& data) {
    Standardization s;
    s.mean = data.colwise().mean();
    data.rowwise() -= s.mean;
    s.std.resize(data.cols());
    for (Eigen::Index c = 0; c < data.cols(); ++c) {
        double var = data.col(c).squaredNorm() / static_cast<double>(data.rows());
        if (!(var > 0.0))
            throw Error(std::string("attribute \"") + texture_attribute_names[c] +
                        "\" has zero variance; the model cannot standardize it");
        s.std(c) = std::sqrt(var);
        data.col(c) /= s.std(c);
    }
    return s;
}

inline void apply_standardization(Eigen::MatrixXd& data, const Standardization& s) {
    data.rowwise() -= s.mean;
    for (Eigen::Index c = 0; c < data.cols(); ++c) data.col(c) /= s.std(c);
}

/// Every stride-th row, covering the whole index range with at most cap rows.
inline Eigen::MatrixXd systematic_subsample(const Eigen::MatrixXd& data, std::size_t cap) {
    std::size_t n = static_cast<std::size_t>(data.rows());
    if (n <= cap) return data;
    std::size_t stride = (n + cap - 1) / cap;
    std::size_t count = (n + stride - 1) / stride;
    Eigen::MatrixXd out(static_cast<Eigen::Index>(count), data.cols());
    for (std::size_t i = 0; i < count; ++i)
        out.row(static_cast<Eigen::Index>(i)) = data.row(static_cast<Eigen::Index>(i * stride));
    return out;
}

inline void render_attribute_images(const PipelineConfig& c, const AttributeTable& table) {
    int index = render_index_or_middle(c.render, table.geometry);
    for (int a = 0; a < n_texture_attributes; ++a) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for_each_slice_cell(table.geometry, c.render.orientation, index,
                            [&](int, int, std::size_t voxel) {
                                if (table.missing[voxel]) return;
                                lo = std::min(lo, table.columns[a][voxel]);
                                hi = std::max(hi, table.columns[a][voxel]);
                            });
        if (!(lo <= hi)) lo = hi = 0.0;
        Raster img = attribute_slice_raster(table, a, c.render.orientation, index);
        std::string stem = std::string("attribute_") + texture_attribute_names[a];
        save_ppm(img, artifact(c, (stem + ".ppm").c_str()));
        save_text(attribute_legend_svg(texture_attribute_names[a], lo, hi),
                  artifact(c, (stem + "_legend.svg").c_str()));
    }
}

} // namespace detail

inline void run_synth(const PipelineConfig& c) {
    if (!c.synth.spec)
        throw ConfigError("config: synth.spec is required for the synth command");
    detail::ensure_output_dir(c);
    auto [volume, truth] = generate_synthetic(*c.synth.spec, c.synth.seed);
    save_volume(volume, detail::artifact(c, "synthetic"));
    save_facies_csv(truth, detail::artifact(c, "ground_truth.csv"));
}

inline void run_attributes(const PipelineConfig& c) {
    detail::require_input_volume(c);
    detail::ensure_output_dir(c);
    SeismicVolume volume = load_volume(c.input_volume);
    AttributeTable table = compute_attribute_table(volume, c.glcm.window_half, c.glcm.offsets,
                                                   c.glcm.levels, c.glcm.plane);
    save_attribute_csv(table, detail::artifact(c, "attributes.csv"));
    detail::render_attribute_images(c, table);
}

inline InterpolationReport run_interpolate(const PipelineConfig& c) {
    detail::ensure_output_dir(c);
    AttributeTable table = load_attribute_csv(detail::artifact(c, "attributes.csv"));
    FillConfig fill;
    fill.kernel_width = c.rbf.kernel_width;
    fill.regularization = c.rbf.regularization;
    fill.train_fraction = c.rbf.train_fraction;
    fill.max_centers = c.rbf.max_centers;
    fill.seed = c.rbf.seed;
    auto [filled, report] = fill_missing(table, fill);
    save_attribute_csv(filled, detail::artifact(c, "attributes_filled.csv"));
    save_report_csv(report, detail::artifact(c, "rbf_report.csv"));
    return report;
}

inline void run_train(const PipelineConfig& c) {
    detail::ensure_output_dir(c);
    AttributeTable table = load_attribute_csv(detail::artifact(c, "attributes_filled.csv"));
    std::vector<std::size_t> row_voxels;
    Eigen::MatrixXd data = detail::observed_matrix(table, row_voxels);
    if (data.rows() <= n_texture_attributes)
        throw Error("train: attribute table has too few observed rows");
    detail::Standardization stats = detail::standardize_columns(data);
    Eigen::MatrixXd training = detail::systematic_subsample(data, c.gtm.subsample_cap);

    LatentGrid grid = make_latent_grid(c.gtm.grid_rows, c.gtm.grid_cols);
    BasisSet basis = make_basis_set(
        c.gtm.basis_rows, c.gtm.basis_cols,
        default_basis_sigma(c.gtm.basis_rows, c.gtm.basis_cols, c.gtm.sigma_scale));
    TrainConfig train_config;
    train_config.max_iterations = c.gtm.max_iterations;
    train_config.ll_tolerance = c.gtm.ll_tolerance;
    train_config.map_regularization = c.gtm.map_regularization;
    train_config.beta_max = c.gtm.beta_max;
    train_config.seed = c.gtm.seed;
    TrainResult result = train_gtm(training, grid, basis, train_config);

    nlohmann::json j;
    j["gtm"] = model_to_json(result.model, train_config);
    j["feature_mean"] = std::vector<double>(stats.mean.data(), stats.mean.data() + stats.mean.size());
    j["feature_std"] = std::vector<double>(stats.std.data(), stats.std.data() + stats.std.size());
    j["geometry"] = header_to_json(table.geometry);
    std::ofstream out(detail::artifact(c, "model.json"));
    if (!out) throw Error("cannot write model file");
    out << j.dump(2) << '\n';
    if (!out) throw Error("write failed for model file");

    save_ll_trace_csv(result.ll_trace, detail::artifact(c, "ll_trace.csv"));
}

struct ClassifyOutcome {
    FaciesMap map;
    std::optional<double> ari;
};

inline ClassifyOutcome run_classify(const PipelineConfig& c, std::ostream& log) {
    detail::ensure_output_dir(c);
    std::filesystem::path model_path = detail::artifact(c, "model.json");
    std::ifstream in(model_path);
    if (!in) throw Error("cannot open model file " + model_path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed model file " + model_path.string() + ": " + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k != "gtm" && k != "feature_mean" && k != "feature_std" && k != "geometry")
            throw Error("model file: unknown field \"" + k + "\"");
    }
    for (const char* k : {"gtm", "feature_mean", "feature_std", "geometry"})
        if (!j.contains(k)) throw Error(std::string("model file: missing field \"") + k + "\"");

    auto [model, train_config] = model_from_json(j["gtm"]);
    VolumeHeader model_geometry = header_from_json(j["geometry"]);
    detail::Standardization stats;
    auto mean = j["feature_mean"].get<std::vector<double>>();
    auto sd = j["feature_std"].get<std::vector<double>>();
    if (mean.size() != n_texture_attributes || sd.size() != n_texture_attributes)
        throw Error("model file: feature_mean/feature_std must have 4 entries");
    stats.mean = Eigen::Map<Eigen::RowVectorXd>(mean.data(), n_texture_attributes);
    stats.std = Eigen::Map<Eigen::RowVectorXd>(sd.data(), n_texture_attributes);

    AttributeTable table = load_attribute_csv(detail::artifact(c, "attributes_filled.csv"));
    if (!(table.geometry == model_geometry))
        throw Error("classify: attribute table geometry does not match the model's geometry");

    std::vector<std::size_t> row_voxels;
    Eigen::MatrixXd data = detail::observed_matrix(table, row_voxels);
    if (data.rows() < c.classify.n_clusters)
        throw Error("classify: fewer observed rows than clusters");
    detail::apply_standardization(data, stats);

    ProjectionResult projection = project_data(model, data);
    ClusterResult clusters =
        cluster_latent(projection.means, c.classify.n_clusters, c.classify.seed);

    ClassifyOutcome outcome;
    outcome.map = assemble_map(clusters.labels, table.missing, table.geometry,
                               c.classify.n_clusters);
    save_facies_csv(outcome.map, detail::artifact(c, "facies.csv"));
    save_volume(facies_to_volume(outcome.map), detail::artifact(c, "facies_labels"));

    if (!c.classify.ground_truth.empty()) {
        FaciesMap truth = load_facies_csv(c.classify.ground_truth);
        if (!(truth.header == outcome.map.header))
            throw Error("classify: ground-truth geometry does not match the classified map");
        std::vector<int> predicted, actual;
        for (std::size_t i = 0; i < outcome.map.labels.size(); ++i) {
            if (outcome.map.labels[i] == 0 || truth.labels[i] == 0) continue;
            predicted.push_back(outcome.map.labels[i]);
            actual.push_back(truth.labels[i]);
        }
        if (predicted.size() < 2)
            throw Error("classify: ground truth overlaps fewer than 2 labeled voxels");
        outcome.ari = adjusted_rand_index(predicted, actual);
        log << "ARI " << detail::format_double(*outcome.ari) << '\n';
    }
    return outcome;
}

inline void run_render(const PipelineConfig& c) {
    detail::ensure_output_dir(c);
    std::filesystem::path facies_path = detail::artifact(c, "facies.csv");
    if (std::filesystem::exists(facies_path)) {
        FaciesMap map = load_facies_csv(facies_path);
        int index = detail::render_index_or_middle(c.render, map.header);
        save_ppm(facies_slice_raster(map, c.render.orientation, index),
                 detail::artifact(c, "facies.ppm"));
        save_text(facies_legend_svg(map.n_classes), detail::artifact(c, "facies_legend.svg"));
        return;
    }
    for (const char* name : {"attributes_filled.csv", "attributes.csv"}) {
        std::filesystem::path table_path = detail::artifact(c, name);
        if (std::filesystem::exists(table_path)) {
            detail::render_attribute_images(c, load_attribute_csv(table_path));
            return;
        }
    }
    throw Error("render: no facies map or attribute table found in " + c.output_dir.string());
}

/// The five-stage workflow in order. The first failing stage aborts with its
/// name attached; config problems keep their ConfigError type.
inline ClassifyOutcome run_pipeline(const PipelineConfig& c, std::ostream& log) {
    ClassifyOutcome outcome;
    const char* stage = "attributes";
    try {
        run_attributes(c);
        stage = "interpolate";
        run_interpolate(c);
        stage = "train";
        run_train(c);
        stage = "classify";
        outcome = run_classify(c, log);
        stage = "render";
        run_render(c);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw Error(std::string(stage) + " stage: " + e.what());
    }
    return outcome;
}

} // namespace facies
