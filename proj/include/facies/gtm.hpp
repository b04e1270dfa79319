#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "facies/common.hpp"
#include "facies/detail/parallel.hpp"

namespace facies {

/// Row-major matrix; used for the N×K responsibility array so per-row passes
/// touch contiguous memory.
using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace detail {

/// Evenly spaced coordinates covering [-1,1]; a single-point axis sits at 0.
inline double grid_coord(int i, int count) {
    if (count < 2) return 0.0;
    return -1.0 + 2.0 * static_cast<double>(i) / (count - 1);
}

} // namespace detail

/// Regular grid of latent points spanning [-1,1]². Node k = (row-major r,c)
/// carries coordinates (x from c, y from r); corners land exactly on (±1,±1).
struct LatentGrid {
    int rows = 0;
    int cols = 0;
    Eigen::MatrixXd nodes;  // K×2

    int node_count() const { return rows * cols; }
};

inline LatentGrid make_latent_grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw Error("latent grid: rows and cols must be >= 1");
    LatentGrid g;
    g.rows = rows;
    g.cols = cols;
    g.nodes.resize(static_cast<Eigen::Index>(rows) * cols, 2);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            Eigen::Index k = static_cast<Eigen::Index>(r) * cols + c;
            g.nodes(k, 0) = detail::grid_coord(c, cols);
            g.nodes(k, 1) = detail::grid_coord(r, rows);
        }
    return g;
}

/// Gaussian basis centers on a regular sub-grid of [-1,1]², plus a width.
/// The design matrix adds a constant bias column on top of these.
struct BasisSet {
    int rows = 0;
    int cols = 0;
    double sigma = 0.0;
    Eigen::MatrixXd centers;  // M×2

    int center_count() const { return rows * cols; }
};

/// Default width: scale × the mean center spacing along the axes that have
/// more than one center.
inline double default_basis_sigma(int rows, int cols, double scale = 1.0) {
    double sum = 0.0;
    int axes = 0;
    for (int n : {rows, cols}) {
        if (n >= 2) {
            sum += 2.0 / (n - 1);
            ++axes;
        }
    }
    if (axes == 0) throw Error("basis set: cannot derive a width for a single center; set sigma");
    return scale * sum / axes;
}

inline BasisSet make_basis_set(int rows, int cols, double sigma) {
    if (rows < 1 || cols < 1) throw Error("basis set: rows and cols must be >= 1");
    if (!(sigma > 0.0)) throw Error("basis set: sigma must be > 0");
    BasisSet b;
    b.rows = rows;
    b.cols = cols;
    b.sigma = sigma;
    b.centers.resize(static_cast<Eigen::Index>(rows) * cols, 2);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            Eigen::Index m = static_cast<Eigen::Index>(r) * cols + c;
            b.centers(m, 0) = detail::grid_coord(c, cols);
            b.centers(m, 1) = detail::grid_coord(r, rows);
        }
    return b;
}

/// K×(M+1) basis evaluation: phi(k,m) = exp(-‖x_k - c_m‖²/(2σ²)), last
/// column all ones (bias).
inline Eigen::MatrixXd build_design(const LatentGrid& grid, const BasisSet& basis) {
    const Eigen::Index K = grid.node_count();
    const Eigen::Index M = basis.center_count();
    Eigen::MatrixXd phi(K, M + 1);
    double inv_two_s2 = 1.0 / (2.0 * basis.sigma * basis.sigma);
    for (Eigen::Index k = 0; k < K; ++k) {
        for (Eigen::Index m = 0; m < M; ++m) {
            double dx = grid.nodes(k, 0) - basis.centers(m, 0);
            double dy = grid.nodes(k, 1) - basis.centers(m, 1);
            phi(k, m) = std::exp(-(dx * dx + dy * dy) * inv_two_s2);
        }
        phi(k, M) = 1.0;
    }
    return phi;
}

/// The trained mapping: y(x_k) = row k of phi·W, with isotropic noise
/// precision beta around each mapped center.
struct GTMModel {
    LatentGrid grid;
    BasisSet basis;
    Eigen::MatrixXd phi;  // K×(M+1)
    Eigen::MatrixXd W;    // (M+1)×D
    double beta = 0.0;

    int data_dim() const { return static_cast<int>(W.cols()); }
    Eigen::MatrixXd mapped_centers() const { return phi * W; }

    void validate() const {
        if (!(beta > 0.0)) throw Error("gtm model: beta must be > 0");
        if (phi.rows() != grid.node_count() || phi.cols() != basis.center_count() + 1)
            throw Error("gtm model: design matrix dimensions do not match grid/basis");
        if (W.rows() != phi.cols()) throw Error("gtm model: weight rows do not match design");
        if (!W.allFinite()) throw Error("gtm model: weights not finite");
    }
};

/// E-step output: posterior node responsibilities per data row, plus the
/// data log-likelihood under the current model.
struct Responsibilities {
    RowMatrixXd r;  // N×K
    double log_likelihood = 0.0;
};

struct TrainConfig {
    int max_iterations = 200;
    double ll_tolerance = 1e-5;
    double map_regularization = 1e-3;
    double beta_max = 1e8;
    std::uint64_t seed = 0;

    void validate() const {
        if (max_iterations < 1) throw Error("train config: max_iterations must be >= 1");
        if (!(ll_tolerance > 0.0)) throw Error("train config: ll_tolerance must be > 0");
        if (!(map_regularization >= 0.0))
            throw Error("train config: map_regularization must be >= 0");
        if (!(beta_max > 0.0)) throw Error("train config: beta_max must be > 0");
    }
};

/// Centered principal axes of a data matrix: eigenvalues descending,
/// directions as columns with a fixed sign convention (largest-magnitude
/// component of each direction is positive) so results are reproducible.
struct PcaBasis {
    Eigen::RowVectorXd mean;
    Eigen::VectorXd eigenvalues;  // D, descending
    Eigen::MatrixXd directions;   // D×D, column i pairs with eigenvalue i
};

inline PcaBasis principal_axes(const Eigen::MatrixXd& data) {
    const Eigen::Index N = data.rows();
    const Eigen::Index D = data.cols();
    if (N < 2) throw Error("principal axes: need at least 2 data rows");
    if (!data.allFinite()) throw Error("principal axes: data not finite");
    PcaBasis b;
    b.mean = data.colwise().mean();
    Eigen::MatrixXd centered = data.rowwise() - b.mean;
    Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(N);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw Error("principal axes: eigendecomposition failed");
    b.eigenvalues = solver.eigenvalues().reverse();
    b.directions = solver.eigenvectors().rowwise().reverse();
    for (Eigen::Index j = 0; j < D; ++j) {
        Eigen::Index imax = 0;
        for (Eigen::Index i = 1; i < D; ++i)
            if (std::abs(b.directions(i, j)) > std::abs(b.directions(imax, j))) imax = i;
        if (b.directions(imax, j) < 0.0) b.directions.col(j) = -b.directions.col(j);
    }
    return b;
}

struct PcaInit {
    Eigen::MatrixXd W;
    double beta = 0.0;
};

/// Weight initialization from principal axes: map standardized grid
/// coordinates through the top-2 directions scaled by the square roots of
/// their eigenvalues, put the data mean on the bias row, and start beta at
/// 1/max(third eigenvalue, half the mean squared nearest-neighbor distance
/// of the mapped centers).
inline PcaInit pca_init(const Eigen::MatrixXd& data, const LatentGrid& grid,
                        const Eigen::MatrixXd& phi) {
    const Eigen::Index N = data.rows();
    const Eigen::Index D = data.cols();
    const Eigen::Index K = grid.node_count();
    const Eigen::Index M1 = phi.cols();
    if (N <= D) throw Error("pca init: need more data rows than dimensions");
    if (phi.rows() != K) throw Error("pca init: design matrix rows do not match grid");

    PcaBasis axes = principal_axes(data);
    if (!(axes.eigenvalues(0) > 0.0) || !(axes.eigenvalues(1) > 0.0))
        throw Error("pca init: data covariance is rank-deficient (fewer than 2 spread "
                    "directions)");

    // Standardize grid coordinates to zero mean / unit variance per latent
    // axis, then scale by sqrt(eigenvalue) so the initial map matches the
    // data spread along each principal direction.
    Eigen::MatrixXd z = grid.nodes;
    for (int j = 0; j < 2; ++j) {
        double mean = z.col(j).mean();
        z.col(j).array() -= mean;
        double var = z.col(j).squaredNorm() / static_cast<double>(K);
        if (var > 0.0) z.col(j) /= std::sqrt(var);
    }
    Eigen::MatrixXd scaled(K, 2);
    scaled.col(0) = z.col(0) * std::sqrt(axes.eigenvalues(0));
    scaled.col(1) = z.col(1) * std::sqrt(axes.eigenvalues(1));
    Eigen::MatrixXd targets = scaled * axes.directions.leftCols(2).transpose();  // K×D

    Eigen::MatrixXd phi_nb = phi.leftCols(M1 - 1);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(phi_nb);
    if (qr.rank() < M1 - 1)
        throw Error("pca init: basis design matrix is rank-deficient; adjust sigma or basis "
                    "size");
    PcaInit init;
    init.W.resize(M1, D);
    init.W.topRows(M1 - 1) = qr.solve(targets);
    init.W.bottomRows(1) = axes.mean;

    Eigen::MatrixXd y = phi * init.W;
    double mean_nearest = 0.0;
    for (Eigen::Index a = 0; a < K; ++a) {
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index b = 0; b < K; ++b) {
            if (a == b) continue;
            best = std::min(best, (y.row(a) - y.row(b)).squaredNorm());
        }
        mean_nearest += best;
    }
    mean_nearest /= static_cast<double>(K);

    double spacing_term = mean_nearest / 2.0;
    double noise_term = D > 2 ? axes.eigenvalues(2) : 0.0;
    double beta_inv = std::max(spacing_term, noise_term);
    if (!(beta_inv > 0.0))
        throw Error("pca init: degenerate data (all mapped centers coincide and no residual "
                    "variance)");
    init.beta = 1.0 / beta_inv;
    return init;
}

/// Responsibilities r(n,k) ∝ exp(-β/2·‖y_k − t_n‖²), normalized over k with a
/// max shift so underflow cannot zero a whole row; the log-likelihood keeps
/// the (β/2π)^{D/2} factor and the 1/K prior that cancel in the ratio.
inline Responsibilities e_step(const GTMModel& model, const Eigen::MatrixXd& data) {
    const Eigen::Index N = data.rows();
    const Eigen::Index K = model.phi.rows();
    const Eigen::Index D = data.cols();
    if (D != model.W.cols())
        throw Error("e step: data has " + detail::format_int((long long)D) +
                    " columns, model maps to " + detail::format_int((long long)model.W.cols()));
    if (N == 0) throw Error("e step: no data rows");

    const Eigen::MatrixXd y = model.mapped_centers();
    const Eigen::VectorXd y2 = y.rowwise().squaredNorm();
    const Eigen::VectorXd t2 = data.rowwise().squaredNorm();

    Responsibilities out;
    out.r.noalias() = data * y.transpose();  // holds the cross terms, reused in place
    const double half_beta = model.beta / 2.0;
    const double log_norm = 0.5 * static_cast<double>(D) *
                                std::log(model.beta / (2.0 * std::numbers::pi)) -
                            std::log(static_cast<double>(K));

    std::vector<double> row_ll(static_cast<std::size_t>(N));
    double* rdata = out.r.data();
    detail::parallel_for(static_cast<std::size_t>(N), [&](std::size_t n) {
        double* row = rdata + n * static_cast<std::size_t>(K);
        const double tn2 = t2(static_cast<Eigen::Index>(n));
        double max_a = -std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < K; ++k) {
            double a = -half_beta * (tn2 + y2(k) - 2.0 * row[k]);
            row[k] = a;
            max_a = std::max(max_a, a);
        }
        double sum = 0.0;
        for (Eigen::Index k = 0; k < K; ++k) {
            double e = std::exp(row[k] - max_a);
            row[k] = e;
            sum += e;
        }
        for (Eigen::Index k = 0; k < K; ++k) row[k] /= sum;
        row_ll[n] = max_a + std::log(sum) + log_norm;
    });

    double ll = 0.0;
    for (double v : row_ll) ll += v;
    out.log_likelihood = ll;
    return out;
}

struct MStepResult {
    Eigen::MatrixXd W;
    double beta = 0.0;
};

/// Weight update from the expected complete-data objective: solve
/// (phiᵀG phi + (map_regularization/beta_old)·I) W = phiᵀ Rᵀ T, then refresh
/// beta from the responsibility-weighted squared distances under the new map.
inline MStepResult m_step(const Responsibilities& resp, const Eigen::MatrixXd& data,
                          const Eigen::MatrixXd& phi, double map_regularization, double beta_old,
                          double beta_max = 1e8) {
    const Eigen::Index N = resp.r.rows();
    const Eigen::Index K = resp.r.cols();
    const Eigen::Index D = data.cols();
    if (data.rows() != N) throw Error("m step: responsibility rows do not match data rows");
    if (phi.rows() != K) throw Error("m step: design matrix rows do not match responsibilities");
    if (!(map_regularization >= 0.0)) throw Error("m step: map_regularization must be >= 0");
    if (!(beta_old > 0.0)) throw Error("m step: beta_old must be > 0");

    Eigen::VectorXd g = resp.r.colwise().sum();          // K node weights
    Eigen::MatrixXd rt = resp.r.transpose() * data;      // K×D
    Eigen::MatrixXd a = phi.transpose() * g.asDiagonal() * phi;
    double lambda = map_regularization / beta_old;
    a.diagonal().array() += lambda;
    Eigen::MatrixXd b = phi.transpose() * rt;

    Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    Eigen::MatrixXd w = ldlt.solve(b);
    Eigen::MatrixXd residual = a * w - b;
    w -= ldlt.solve(residual);
    residual = a * w - b;
    double rel = residual.norm() / std::max(b.norm(), 1e-300);
    if (!(rel <= 1e-6))
        throw Error("m step: normal equations are numerically singular (relative residual " +
                    detail::format_double(rel) + "); raise map_regularization");

    Eigen::MatrixXd y = phi * w;
    double weighted_sq = y.rowwise().squaredNorm().dot(g) + data.rowwise().squaredNorm().sum() -
                         2.0 * rt.cwiseProduct(y).sum();
    double denom = static_cast<double>(N) * static_cast<double>(D);

    MStepResult out;
    out.W = std::move(w);
    // A perfect fit drives the update to infinite precision; cap it there.
    out.beta = weighted_sq > 0.0 ? std::min(denom / weighted_sq, beta_max) : beta_max;
    return out;
}

struct TrainResult {
    GTMModel model;
    std::vector<double> ll_trace;  // log-likelihood entering each EM cycle
};

/// PCA-initialized EM. Each cycle records the log-likelihood of the model it
/// starts from, runs one E/M pair, and stops once the relative change drops
/// below ll_tolerance (or at max_iterations).
inline TrainResult train_gtm(const Eigen::MatrixXd& data, const LatentGrid& grid,
                             const BasisSet& basis, const TrainConfig& config) {
    config.validate();
    TrainResult result;
    result.model.grid = grid;
    result.model.basis = basis;
    result.model.phi = build_design(grid, basis);
    PcaInit init = pca_init(data, grid, result.model.phi);
    result.model.W = std::move(init.W);
    result.model.beta = init.beta;

    for (int it = 0; it < config.max_iterations; ++it) {
        Responsibilities resp = e_step(result.model, data);
        result.ll_trace.push_back(resp.log_likelihood);
        MStepResult ms = m_step(resp, data, result.model.phi, config.map_regularization,
                                result.model.beta, config.beta_max);
        result.model.W = std::move(ms.W);
        result.model.beta = ms.beta;
        if (it >= 1) {
            double prev = result.ll_trace[it - 1];
            double cur = result.ll_trace[it];
            if (std::abs(cur - prev) < config.ll_tolerance * std::abs(prev)) break;
        }
    }
    return result;
}

/// Posterior-mean latent position per data row; clamped onto [-1,1]² against
/// last-bit rounding spill.
inline Eigen::MatrixXd project_mean(const Responsibilities& resp, const LatentGrid& grid) {
    if (resp.r.cols() != grid.node_count())
        throw Error("project mean: responsibility columns do not match grid nodes");
    Eigen::MatrixXd means = resp.r * grid.nodes;
    for (Eigen::Index i = 0; i < means.size(); ++i)
        means.data()[i] = std::clamp(means.data()[i], -1.0, 1.0);
    return means;
}

/// Most responsible node per data row; ties go to the lowest node index.
inline Eigen::MatrixXd project_mode(const Responsibilities& resp, const LatentGrid& grid) {
    if (resp.r.cols() != grid.node_count())
        throw Error("project mode: responsibility columns do not match grid nodes");
    Eigen::MatrixXd modes(resp.r.rows(), 2);
    for (Eigen::Index n = 0; n < resp.r.rows(); ++n) {
        Eigen::Index best = 0;
        for (Eigen::Index k = 1; k < resp.r.cols(); ++k)
            if (resp.r(n, k) > resp.r(n, best)) best = k;
        modes.row(n) = grid.nodes.row(best);
    }
    return modes;
}

struct ProjectionResult {
    Eigen::MatrixXd means;  // N×2
    double log_likelihood = 0.0;
};

/// Posterior means for arbitrarily many rows without materializing the full
/// N×K responsibility matrix: E-step per chunk, project, discard.
inline ProjectionResult project_data(const GTMModel& model, const Eigen::MatrixXd& data,
                                     std::size_t chunk_rows = 8192) {
    if (chunk_rows < 1) throw Error("project data: chunk_rows must be >= 1");
    ProjectionResult out;
    out.means.resize(data.rows(), 2);
    for (Eigen::Index start = 0; start < data.rows();
         start += static_cast<Eigen::Index>(chunk_rows)) {
        Eigen::Index n = std::min<Eigen::Index>(chunk_rows, data.rows() - start);
        Responsibilities resp = e_step(model, data.middleRows(start, n));
        out.means.middleRows(start, n) = project_mean(resp, model.grid);
        out.log_likelihood += resp.log_likelihood;
    }
    return out;
}

/// Mean distance from each data row to its responsibility-weighted mapped
/// center — how well the curved map reconstructs the data.
inline double gtm_reconstruction_error(const GTMModel& model, const Eigen::MatrixXd& data,
                                       std::size_t chunk_rows = 8192) {
    const Eigen::MatrixXd y = model.mapped_centers();
    double total = 0.0;
    for (Eigen::Index start = 0; start < data.rows();
         start += static_cast<Eigen::Index>(chunk_rows)) {
        Eigen::Index n = std::min<Eigen::Index>(chunk_rows, data.rows() - start);
        Responsibilities resp = e_step(model, data.middleRows(start, n));
        Eigen::MatrixXd recon = resp.r * y;
        total += (data.middleRows(start, n) - recon).rowwise().norm().sum();
    }
    return total / static_cast<double>(data.rows());
}

/// Centered projection onto the top-2 principal directions — the linear
/// counterpart the curved map is compared against.
inline Eigen::MatrixXd linear_baseline(const Eigen::MatrixXd& data) {
    const Eigen::Index D = data.cols();
    if (D < 2) throw Error("linear baseline: need at least 2 data dimensions");
    PcaBasis axes = principal_axes(data);
    if (!(axes.eigenvalues(0) > 0.0)) throw Error("linear baseline: zero-variance data");
    Eigen::MatrixXd centered = data.rowwise() - axes.mean;
    return centered * axes.directions.leftCols(2);
}

/// Mean distance from each data row to the top-2 principal plane.
inline double pca_plane_error(const Eigen::MatrixXd& data) {
    PcaBasis axes = principal_axes(data);
    if (!(axes.eigenvalues(0) > 0.0)) throw Error("pca plane: zero-variance data");
    Eigen::MatrixXd centered = data.rowwise() - axes.mean;
    Eigen::MatrixXd u = axes.directions.leftCols(2);
    Eigen::MatrixXd residual = centered - (centered * u) * u.transpose();
    return residual.rowwise().norm().mean();
}

// ---------------------------------------------------------------------------
// Serialization: the model JSON holds everything needed to rebuild the map
// bit-exactly (dims + sigma regenerate phi; W and beta round-trip through
// shortest-representation doubles). The training config rides along so a
// model file records how it was produced.

inline nlohmann::json model_to_json(const GTMModel& m, const TrainConfig& config) {
    m.validate();
    nlohmann::json j;
    j["grid"] = {{"rows", m.grid.rows}, {"cols", m.grid.cols}};
    j["basis"] = {{"rows", m.basis.rows}, {"cols", m.basis.cols}, {"sigma", m.basis.sigma}};
    j["beta"] = m.beta;
    nlohmann::json w = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.W.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.W.cols(); ++c) row.push_back(m.W(r, c));
        w.push_back(std::move(row));
    }
    j["weights"] = std::move(w);
    j["config"] = {{"max_iterations", config.max_iterations},
                   {"ll_tolerance", config.ll_tolerance},
                   {"map_regularization", config.map_regularization},
                   {"beta_max", config.beta_max},
                   {"seed", config.seed}};
    return j;
}

inline std::pair<GTMModel, TrainConfig> model_from_json(const nlohmann::json& j) {
    auto require = [&](const nlohmann::json& o, const char* key,
                       const char* where) -> const nlohmann::json& {
        if (!o.is_object() || !o.contains(key))
            throw Error(std::string("gtm model: missing field \"") + key + "\" in " + where);
        return o[key];
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k != "grid" && k != "basis" && k != "beta" && k != "weights" && k != "config")
            throw Error("gtm model: unknown field \"" + k + "\"");
    }

    GTMModel m;
    const auto& gj = require(j, "grid", "model");
    m.grid = make_latent_grid(require(gj, "rows", "grid").get<int>(),
                              require(gj, "cols", "grid").get<int>());
    const auto& bj = require(j, "basis", "model");
    m.basis = make_basis_set(require(bj, "rows", "basis").get<int>(),
                             require(bj, "cols", "basis").get<int>(),
                             require(bj, "sigma", "basis").get<double>());
    m.phi = build_design(m.grid, m.basis);
    m.beta = require(j, "beta", "model").get<double>();

    const auto& wj = require(j, "weights", "model");
    if (!wj.is_array() || wj.empty()) throw Error("gtm model: \"weights\" must be a 2-D array");
    Eigen::Index rows = static_cast<Eigen::Index>(wj.size());
    Eigen::Index cols = static_cast<Eigen::Index>(wj[0].size());
    if (rows != m.phi.cols())
        throw Error("gtm model: weight rows " + detail::format_int((long long)rows) +
                    " do not match basis size " + detail::format_int((long long)m.phi.cols()));
    m.W.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (!wj[r].is_array() || static_cast<Eigen::Index>(wj[r].size()) != cols)
            throw Error("gtm model: ragged weight matrix");
        for (Eigen::Index c = 0; c < cols; ++c) m.W(r, c) = wj[r][c].get<double>();
    }

    TrainConfig config;
    const auto& cj = require(j, "config", "model");
    config.max_iterations = require(cj, "max_iterations", "config").get<int>();
    config.ll_tolerance = require(cj, "ll_tolerance", "config").get<double>();
    config.map_regularization = require(cj, "map_regularization", "config").get<double>();
    config.beta_max = require(cj, "beta_max", "config").get<double>();
    config.seed = require(cj, "seed", "config").get<std::uint64_t>();
    config.validate();
    m.validate();
    return {std::move(m), config};
}

inline void save_ll_trace_csv(const std::vector<double>& trace,
                              const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write log-likelihood trace " + path.string());
    out << "iteration,log_likelihood\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << detail::format_int((long long)i + 1) << ',' << detail::format_double(trace[i])
            << '\n';
    if (!out) throw Error("write failed for " + path.string());
}

} // namespace facies
