#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "gom/dataset.hpp"
#include "gom/operators.hpp"
#include "gom/similarity.hpp"

namespace gom {

/// Graph index -> exact operator value for the sampled graphs.
struct TrainingSet {
    std::map<std::size_t, double> entries;

    std::size_t size() const noexcept { return entries.size(); }
    bool contains(std::size_t i) const { return entries.count(i) != 0; }
};

struct ModelConfig {
    double p = 0.1;   ///< sampling ratio in (0, 1]
    std::size_t k = 3;
    std::uint64_t seed = 0;
    double damping = kDefaultDamping;
    std::size_t workers = 1;

    void validate() const;
};

/// Picks ceil(p * N) graph indices without replacement. Without clusters the
/// pick is a prefix of a seeded permutation, so a larger p yields a superset.
/// With clusters, k members of every cluster are taken first (prefixes of
/// per-cluster permutations) and the rest come from the global permutation.
/// Throws ConfigError when ceil(p * N) < k (or < k * clusters) and
/// InfeasibleQuotaError when a cluster has fewer than k members.
std::vector<std::size_t> sample_indices(std::size_t n, double p, std::size_t k, std::uint64_t seed,
                                        const std::vector<std::size_t>* cluster_of = nullptr);

/// sample_indices() followed by exact evaluation of the operator on each
/// sampled graph (over cfg.workers threads).
TrainingSet sample_training(const GraphDataset& dataset, OperatorKind op, const ModelConfig& cfg,
                            const std::vector<std::size_t>* cluster_of = nullptr);

/// Similarity-weighted kNN estimate for graph x: the k training graphs with
/// the largest R[x, i] (ties to the lower index) weighted by R[x, i]. Falls
/// back to the plain mean of the selected values when all weights are 0.
double knn_predict(const SimilarityMatrix& R, const TrainingSet& training, std::size_t k, std::size_t x);

struct Estimate {
    double value = 0.0;
    bool exact = false;
};

/// Exact values for sampled graphs, knn_predict() for all others.
std::vector<Estimate> approximate_all(const SimilarityMatrix& R, const TrainingSet& training, std::size_t k);

/// Samples, evaluates and predicts in one go.
std::vector<Estimate> approximate_all(const GraphDataset& dataset, OperatorKind op, const SimilarityMatrix& R,
                                      const ModelConfig& cfg, bool use_clusters);

/// Model CSV: header "graph_name,value,source", one row per graph.
std::string model_to_csv(const GraphDataset& dataset, std::span<const Estimate> estimates);

}  // namespace gom
