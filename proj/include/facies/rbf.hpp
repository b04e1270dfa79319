#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "facies/attribute_table.hpp"
#include "facies/common.hpp"
#include "facies/detail/parallel.hpp"
#include "facies/detail/rng.hpp"

namespace facies {

/// Gaussian radial-basis interpolant: f(q) = Σ_a w_a · exp(−‖q−s_a‖²/(2·width²)).
/// Centers are stored flat row-major (n × dim).
struct RBFModel {
    int dim = 0;
    std::vector<double> centers;
    std::vector<double> weights;
    double kernel_width = 0.0;
    double regularization = 0.0;
    std::string target_name;

    std::size_t center_count() const { return weights.size(); }
};

struct AttributeReportRow {
    std::string attribute;
    double training_rmse = 0.0;
    double testing_rmse = 0.0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
};

struct InterpolationReport {
    std::vector<AttributeReportRow> rows;
};

namespace detail {

inline double squared_distance(const double* a, const double* b, int dim) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
        double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

} // namespace detail

/// Median pairwise distance over at most `cap` points, the default kernel
/// width. Points beyond the cap are ignored; callers pass a deterministically
/// shuffled list so the truncation is an unbiased subsample.
inline double median_pairwise_distance(const std::vector<double>& points, int dim,
                                       std::size_t cap = 1000) {
    if (dim < 1 || points.size() % dim != 0)
        throw Error("median distance: point array does not match dimension");
    std::size_t n = std::min(points.size() / dim, cap);
    if (n < 2) throw Error("median distance: need at least 2 points");
    std::vector<double> dists;
    dists.reserve(n * (n - 1) / 2);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            dists.push_back(std::sqrt(
                detail::squared_distance(&points[a * dim], &points[b * dim], dim)));
    std::size_t mid = dists.size() / 2;
    std::nth_element(dists.begin(), dists.begin() + mid, dists.end());
    return dists[mid];
}

/// Solves (K + λI)w = y for the interpolation weights. With λ = 0 the model
/// reproduces the targets at the centers; duplicated centers make K singular
/// and are rejected up front.
inline RBFModel rbf_fit(const std::vector<double>& inputs, int dim,
                        const std::vector<double>& targets, double kernel_width,
                        double regularization, std::string target_name = "") {
    if (dim < 1) throw Error("rbf fit: dimension must be >= 1");
    if (inputs.size() % dim != 0)
        throw Error("rbf fit: input array of " + detail::format_int((long long)inputs.size()) +
                    " values does not split into " + detail::format_int(dim) + "-vectors");
    std::size_t n = inputs.size() / dim;
    if (n == 0) throw Error("rbf fit: no training points");
    if (targets.size() != n)
        throw Error("rbf fit: " + detail::format_int((long long)targets.size()) +
                    " targets for " + detail::format_int((long long)n) + " points");
    if (!(kernel_width > 0.0)) throw Error("rbf fit: kernel width must be > 0");
    if (!(regularization >= 0.0)) throw Error("rbf fit: regularization must be >= 0");
    for (double v : inputs)
        if (!std::isfinite(v)) throw Error("rbf fit: non-finite input coordinate");
    for (double v : targets)
        if (!std::isfinite(v)) throw Error("rbf fit: non-finite target");

    if (regularization == 0.0) {
        // K is exactly rank-deficient under duplicated centers; catch that
        // case by value rather than waiting for the residual check.
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(&inputs[a * dim], &inputs[a * dim] + dim,
                                                &inputs[b * dim], &inputs[b * dim] + dim);
        });
        for (std::size_t i = 1; i < n; ++i)
            if (std::equal(&inputs[order[i - 1] * dim], &inputs[order[i - 1] * dim] + dim,
                           &inputs[order[i] * dim]))
                throw Error("rbf fit: duplicate centers make the kernel system singular at "
                            "regularization 0");
    }

    Eigen::MatrixXd K(n, n);
    double inv_two_w2 = 1.0 / (2.0 * kernel_width * kernel_width);
    for (std::size_t a = 0; a < n; ++a) {
        K(a, a) = 1.0 + regularization;
        for (std::size_t b = a + 1; b < n; ++b) {
            double k = std::exp(-detail::squared_distance(&inputs[a * dim], &inputs[b * dim],
                                                          dim) *
                                inv_two_w2);
            K(a, b) = k;
            K(b, a) = k;
        }
    }
    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(targets.data(), n);

    Eigen::LDLT<Eigen::MatrixXd> ldlt(K);
    Eigen::VectorXd w = ldlt.solve(y);
    // One step of iterative refinement tightens the residual on
    // ill-conditioned kernels without changing well-conditioned solutions.
    Eigen::VectorXd r = K * w - y;
    w -= ldlt.solve(r);
    r = K * w - y;

    double rel = r.norm() / std::max(y.norm(), 1e-300);
    if (!(rel <= 1e-6))
        throw Error("rbf fit: kernel system is numerically singular (relative residual " +
                    detail::format_double(rel) + ")");

    RBFModel m;
    m.dim = dim;
    m.centers = inputs;
    m.weights.assign(w.data(), w.data() + n);
    m.kernel_width = kernel_width;
    m.regularization = regularization;
    m.target_name = std::move(target_name);
    return m;
}

inline double rbf_predict(const RBFModel& m, const double* query) {
    double inv_two_w2 = 1.0 / (2.0 * m.kernel_width * m.kernel_width);
    double sum = 0.0;
    for (std::size_t a = 0; a < m.center_count(); ++a)
        sum += m.weights[a] *
               std::exp(-detail::squared_distance(query, &m.centers[a * m.dim], m.dim) *
                        inv_two_w2);
    return sum;
}

inline double rbf_predict(const RBFModel& m, const std::vector<double>& query) {
    if (query.size() != static_cast<std::size_t>(m.dim))
        throw Error("rbf predict: query has " + detail::format_int((long long)query.size()) +
                    " coordinates, model expects " + detail::format_int(m.dim));
    for (double v : query)
        if (!std::isfinite(v)) throw Error("rbf predict: non-finite query coordinate");
    return rbf_predict(m, query.data());
}

/// Batch prediction, parallel over queries (flat row-major n × dim).
inline std::vector<double> rbf_predict_batch(const RBFModel& m,
                                             const std::vector<double>& queries) {
    if (queries.size() % m.dim != 0) throw Error("rbf predict: query array dimension mismatch");
    std::size_t n = queries.size() / m.dim;
    std::vector<double> out(n);
    detail::parallel_for(n, [&](std::size_t i) { out[i] = rbf_predict(m, &queries[i * m.dim]); });
    return out;
}

inline double rmse(const std::vector<double>& predicted, const std::vector<double>& actual) {
    if (predicted.size() != actual.size())
        throw Error("rmse: length mismatch (" + detail::format_int((long long)predicted.size()) +
                    " vs " + detail::format_int((long long)actual.size()) + ")");
    if (predicted.empty()) throw Error("rmse: empty lists");
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        double d = predicted[i] - actual[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(predicted.size()));
}

struct FillConfig {
    double kernel_width = 0.0;  // <= 0 selects the median-distance default per attribute
    double regularization = 1e-8;
    double train_fraction = 0.8;
    std::size_t max_centers = 2000;
    std::uint64_t seed = 0;
};

/// Fits one interpolant per attribute on the observed rows and predicts every
/// missing row. Observed rows pass through untouched. Train/test split,
/// center subsampling, and the width heuristic all draw from per-attribute
/// substreams of the seed, so the result is a pure function of (table, config).
inline std::pair<AttributeTable, InterpolationReport> fill_missing(const AttributeTable& table,
                                                                   const FillConfig& config) {
    table.validate();
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0))
        throw Error("fill missing: train fraction must lie in (0,1)");
    if (config.max_centers < 1) throw Error("fill missing: max_centers must be >= 1");
    if (!(config.regularization >= 0.0))
        throw Error("fill missing: regularization must be >= 0");

    const VolumeHeader& g = table.geometry;
    std::vector<std::size_t> observed, absent;
    for (std::size_t i = 0; i < table.row_count(); ++i)
        (table.missing[i] ? absent : observed).push_back(i);
    if (observed.empty()) throw Error("fill missing: every attribute column is fully missing");

    auto coords_of = [&](const std::vector<std::size_t>& voxels) {
        std::vector<double> out;
        out.reserve(voxels.size() * 3);
        for (std::size_t v : voxels) {
            auto c = g.coords(v);
            out.push_back(detail::normalized_coord(c[0], g.inline_range));
            out.push_back(detail::normalized_coord(c[1], g.crossline_range));
            out.push_back(detail::normalized_coord(c[2], g.z_range));
        }
        return out;
    };

    AttributeTable out = table;
    InterpolationReport report;
    std::vector<double> absent_coords = coords_of(absent);

    for (int a = 0; a < n_texture_attributes; ++a) {
        std::mt19937_64 rng(detail::substream_seed(config.seed, static_cast<std::uint64_t>(a)));
        std::vector<std::size_t> shuffled = observed;
        detail::shuffle(shuffled, rng);

        std::size_t n = shuffled.size();
        std::size_t n_train =
            (n == 1) ? 1
                     : std::clamp<std::size_t>(
                           static_cast<std::size_t>(std::floor(config.train_fraction *
                                                               static_cast<double>(n))),
                           1, n - 1);
        std::vector<std::size_t> train(shuffled.begin(), shuffled.begin() + n_train);
        std::vector<std::size_t> test(shuffled.begin() + n_train, shuffled.end());
        std::vector<std::size_t> centers(train.begin(),
                                         train.begin() + std::min(config.max_centers, n_train));

        auto targets_of = [&](const std::vector<std::size_t>& voxels) {
            std::vector<double> t;
            t.reserve(voxels.size());
            for (std::size_t v : voxels) t.push_back(table.columns[a][v]);
            return t;
        };

        std::vector<double> center_coords = coords_of(centers);
        double width = config.kernel_width;
        if (!(width > 0.0)) width = median_pairwise_distance(center_coords, 3);
        if (!(width > 0.0))
            throw Error(std::string("fill missing: degenerate geometry for \"") +
                        texture_attribute_names[a] + "\" (median point distance is 0)");

        RBFModel model = rbf_fit(center_coords, 3, targets_of(centers), width,
                                 config.regularization, texture_attribute_names[a]);

        AttributeReportRow row;
        row.attribute = texture_attribute_names[a];
        row.n_train = n_train;
        row.n_test = test.size();
        row.training_rmse = rmse(rbf_predict_batch(model, coords_of(train)), targets_of(train));
        row.testing_rmse =
            test.empty() ? 0.0
                         : rmse(rbf_predict_batch(model, coords_of(test)), targets_of(test));
        report.rows.push_back(row);

        std::vector<double> filled = rbf_predict_batch(model, absent_coords);
        for (std::size_t i = 0; i < absent.size(); ++i) out.columns[a][absent[i]] = filled[i];
    }

    for (std::size_t v : absent) out.missing[v] = 0;
    out.validate();
    return {std::move(out), std::move(report)};
}

// ---------------------------------------------------------------------------
// Report CSV: one row per attribute. The leading comment records what the
// interpolant's inputs were, since nothing else in the file pins that down.

inline void save_report_csv(const InterpolationReport& r, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write interpolation report " + path.string());
    out << "# interpolant inputs: normalized (inline, crossline, z) coordinates\n";
    out << "attribute,training_error,testing_error,n_train,n_test\n";
    for (const auto& row : r.rows) {
        out << row.attribute << ',' << detail::format_double(row.training_rmse) << ','
            << detail::format_double(row.testing_rmse) << ','
            << detail::format_int((long long)row.n_train) << ','
            << detail::format_int((long long)row.n_test) << '\n';
    }
    if (!out) throw Error("write failed for " + path.string());
}

} // namespace facies
