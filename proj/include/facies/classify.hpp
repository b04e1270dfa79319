#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "facies/common.hpp"
#include "facies/detail/parallel.hpp"
#include "facies/detail/rng.hpp"
#include "facies/facies_map.hpp"

namespace facies {

/// k-means result in latent space. Centroids are stored in label order
/// (cluster 1 first); the inertia trace records the objective after each
/// assignment pass and never increases.
struct ClusterModel {
    Eigen::MatrixXd centroids;  // C×2
    std::uint64_t seed = 0;
    double inertia = 0.0;
    std::vector<double> inertia_trace;
};

struct ClusterResult {
    ClusterModel model;
    std::vector<int> labels;  // one per row, in 1..C
};

/// Seeded k-means on latent projections: one random first center, remaining
/// centers by farthest-point choice, then Lloyd passes until the assignment
/// stops changing (at most 100). Labels come out renumbered 1..C by
/// decreasing cluster size so repeated runs are comparable.
inline ClusterResult cluster_latent(const Eigen::MatrixXd& projections, int n_clusters,
                                    std::uint64_t seed) {
    const Eigen::Index N = projections.rows();
    if (n_clusters < 1) throw Error("cluster: need at least 1 cluster");
    if (N < n_clusters)
        throw Error("cluster: " + detail::format_int((long long)N) + " points for " +
                    detail::format_int(n_clusters) + " clusters");
    if (!projections.allFinite()) throw Error("cluster: projections not finite");
    const int C = n_clusters;

    std::mt19937_64 rng(seed);
    Eigen::MatrixXd centroids(C, projections.cols());
    centroids.row(0) =
        projections.row(static_cast<Eigen::Index>(detail::uniform_index(rng, (std::uint64_t)N)));
    std::vector<double> nearest_sq(static_cast<std::size_t>(N),
                                   std::numeric_limits<double>::infinity());
    for (int c = 1; c < C; ++c) {
        Eigen::Index farthest = 0;
        double best = -1.0;
        for (Eigen::Index n = 0; n < N; ++n) {
            double d = (projections.row(n) - centroids.row(c - 1)).squaredNorm();
            nearest_sq[n] = std::min(nearest_sq[n], d);
            if (nearest_sq[n] > best) {
                best = nearest_sq[n];
                farthest = n;
            }
        }
        if (best <= 0.0)
            throw Error("cluster: fewer than " + detail::format_int(C) +
                        " distinct points; clusters would coincide");
        centroids.row(c) = projections.row(farthest);
    }

    std::vector<int> assign(static_cast<std::size_t>(N), -1);
    std::vector<double> point_sq(static_cast<std::size_t>(N), 0.0);
    ClusterModel model;
    model.seed = seed;

    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        detail::parallel_for(static_cast<std::size_t>(N), [&](std::size_t n) {
            int best_c = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int c = 0; c < C; ++c) {
                double d = (projections.row(static_cast<Eigen::Index>(n)) - centroids.row(c))
                               .squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best_c = c;
                }
            }
            point_sq[n] = best_d;
            if (assign[n] != best_c) {
                assign[n] = best_c;
                changed = true;
            }
        });

        // Re-seed any emptied cluster with the worst-fitted point so the
        // model never carries a dead centroid.
        std::vector<std::size_t> counts(static_cast<std::size_t>(C), 0);
        for (int a : assign) ++counts[static_cast<std::size_t>(a)];
        for (int c = 0; c < C; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            std::size_t worst = 0;
            for (std::size_t n = 1; n < assign.size(); ++n)
                if (point_sq[n] > point_sq[worst]) worst = n;
            --counts[static_cast<std::size_t>(assign[worst])];
            assign[worst] = c;
            ++counts[static_cast<std::size_t>(c)];
            point_sq[worst] = 0.0;
            centroids.row(c) = projections.row(static_cast<Eigen::Index>(worst));
            changed = true;
        }

        double inertia = 0.0;
        for (double d : point_sq) inertia += d;
        model.inertia_trace.push_back(inertia);
        model.inertia = inertia;
        if (!changed && iter > 0) break;

        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(C, projections.cols());
        for (Eigen::Index n = 0; n < N; ++n)
            sums.row(assign[static_cast<std::size_t>(n)]) += projections.row(n);
        for (int c = 0; c < C; ++c)
            centroids.row(c) = sums.row(c) / static_cast<double>(counts[(std::size_t)c]);
    }

    // Renumber 1..C by decreasing size (stable on ties) and reorder centroids
    // to match.
    std::vector<std::size_t> counts(static_cast<std::size_t>(C), 0);
    for (int a : assign) ++counts[static_cast<std::size_t>(a)];
    std::vector<int> order(static_cast<std::size_t>(C));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return counts[static_cast<std::size_t>(a)] > counts[static_cast<std::size_t>(b)];
    });
    std::vector<int> new_label(static_cast<std::size_t>(C));
    Eigen::MatrixXd reordered(C, projections.cols());
    for (int rank = 0; rank < C; ++rank) {
        new_label[static_cast<std::size_t>(order[(std::size_t)rank])] = rank + 1;
        reordered.row(rank) = centroids.row(order[(std::size_t)rank]);
    }
    model.centroids = std::move(reordered);

    ClusterResult result;
    result.model = std::move(model);
    result.labels.resize(assign.size());
    for (std::size_t n = 0; n < assign.size(); ++n)
        result.labels[n] = new_label[static_cast<std::size_t>(assign[n])];
    return result;
}

/// Places per-row labels back onto the survey grid; masked voxels stay
/// unlabeled (0). Labels arrive in voxel index order of the unmasked voxels.
inline FaciesMap assemble_map(const std::vector<int>& labels,
                              const std::vector<std::uint8_t>& mask, const VolumeHeader& geometry,
                              int n_classes) {
    geometry.validate();
    if (mask.size() != geometry.voxel_count())
        throw Error("assemble map: mask size does not match geometry");
    std::size_t unmasked = 0;
    for (auto m : mask)
        if (!m) ++unmasked;
    if (labels.size() != unmasked)
        throw Error("assemble map: " + detail::format_int((long long)labels.size()) +
                    " labels for " + detail::format_int((long long)unmasked) +
                    " unmasked voxels");

    FaciesMap map;
    map.header = geometry;
    map.n_classes = n_classes;
    map.labels.assign(mask.size(), 0);
    std::size_t next = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) continue;
        int label = labels[next++];
        if (label < 1 || label > n_classes)
            throw Error("assemble map: label " + detail::format_int(label) + " outside 1.." +
                        detail::format_int(n_classes));
        map.labels[i] = static_cast<std::uint16_t>(label);
    }
    return map;
}

/// Adjusted Rand index between two labelings, from the pair-counting
/// contingency table. 1 means identical partitions up to renaming; the
/// degenerate case where the expected index equals the maximum (e.g. both
/// partitions are single blocks) is defined as 1.
inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw Error("adjusted rand index: length mismatch (" +
                    detail::format_int((long long)a.size()) + " vs " +
                    detail::format_int((long long)b.size()) + ")");
    if (a.size() < 2) throw Error("adjusted rand index: need at least 2 elements");

    std::map<std::pair<int, int>, double> cells;
    std::map<int, double> row_sums, col_sums;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cells[{a[i], b[i]}] += 1.0;
        row_sums[a[i]] += 1.0;
        col_sums[b[i]] += 1.0;
    }
    auto choose2 = [](double n) { return n * (n - 1.0) / 2.0; };
    double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (const auto& [key, n] : cells) sum_cells += choose2(n);
    for (const auto& [key, n] : row_sums) sum_rows += choose2(n);
    for (const auto& [key, n] : col_sums) sum_cols += choose2(n);

    double total_pairs = choose2(static_cast<double>(a.size()));
    double expected = sum_rows * sum_cols / total_pairs;
    double maximum = (sum_rows + sum_cols) / 2.0;
    if (maximum == expected) return 1.0;
    return (sum_cells - expected) / (maximum - expected);
}

} // namespace facies
