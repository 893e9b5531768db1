#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gom/dataset.hpp"
#include "gom/partitioner.hpp"

namespace gom {

/// Normalized cell masses of a graph's level-degree distribution.
struct Histogram {
    std::vector<double> mass;
};

/// Routes every vertex's level-degree vector to its leaf and divides the
/// leaf counts by the vertex count.
Histogram project(const Graph& g, const DegreePartitioner& partitioner);
Histogram project(const DegreeVectors& vectors, const DegreePartitioner& partitioner);

/// Bhattacharyya coefficient sum_i sqrt(q_i r_i), clamped to [0, 1].
/// Throws ConfigError on a length mismatch.
double bhattacharyya(std::span<const double> q, std::span<const double> r);

double degree_similarity(const Graph& a, const Graph& b, const DegreePartitioner& partitioner);

/// min(|V_a|, |V_b|) / max(|V_a|, |V_b|). Throws ConfigError for an empty graph.
double vertex_count_similarity(const Graph& a, const Graph& b);

/// Which similarity measure to build and how.
struct MeasureConfig {
    enum class Kind { degree_levels, vertex_count, composite };

    Kind kind = Kind::degree_levels;
    /// Partition settings; `partition.max_level` selects the degree level.
    PartitionerConfig partition;
    std::vector<MeasureConfig> children;
    std::vector<double> weights;

    static MeasureConfig degree_levels(std::size_t max_level);
    static MeasureConfig vertex_count();
    /// Validates that weights are nonnegative, match the children and sum to 1.
    static MeasureConfig composite(std::vector<MeasureConfig> children, std::vector<double> weights);

    /// Parses "levelN", "size", or '+'-joined terms such as "level0+size"
    /// (equal weights unless `weights` is given).
    static MeasureConfig parse(const std::string& spec, std::vector<double> weights = {});

    /// Short label used in reports, e.g. "level1" or "level0+size".
    std::string name() const;

    /// Applies sample ratio, leaf capacity and seed to every degree term.
    void set_partition_options(double sample_ratio, std::size_t leaf_capacity, std::uint64_t seed);
};

/// A similarity measure prepared for one dataset: per-graph summaries are
/// computed once, after which any pair can be scored cheaply.
class PreparedMeasure {
public:
    virtual ~PreparedMeasure() = default;
    virtual std::size_t size() const = 0;
    /// s(G_i, G_j) in [0, 1]; symmetric in its arguments.
    virtual double operator()(std::size_t i, std::size_t j) const = 0;
    /// Non-null only for composite measures.
    virtual const std::vector<std::unique_ptr<PreparedMeasure>>* children() const { return nullptr; }
    virtual const std::vector<double>* weights() const { return nullptr; }
};

/// Builds per-graph summaries (degree vectors, partitioner, histograms) over
/// `workers` threads.
std::unique_ptr<PreparedMeasure> prepare_measure(const GraphDataset& dataset, const MeasureConfig& cfg,
                                                 std::size_t workers = 1);

/// N x N symmetric matrix with unit diagonal and entries in [0, 1]. Dense
/// matrices store every entry; block matrices store intra-cluster entries
/// only and read 0 across clusters. A dense matrix is represented as a
/// single block spanning every graph.
class SimilarityMatrix {
public:
    enum class Structure : std::uint8_t { dense = 0, block = 1 };

    SimilarityMatrix() = default;

    /// Identity-initialized dense matrix.
    static SimilarityMatrix dense(std::size_t n);
    /// Identity-initialized block matrix for a cluster assignment whose
    /// labels are dense in [0, cluster count).
    static SimilarityMatrix block(std::vector<std::size_t> cluster_of);

    std::size_t size() const noexcept { return cluster_of_.size(); }
    Structure structure() const noexcept { return structure_; }
    std::size_t cluster_count() const noexcept { return members_.size(); }
    std::size_t cluster_of(std::size_t i) const { return cluster_of_[i]; }
    const std::vector<std::size_t>& assignment() const noexcept { return cluster_of_; }
    /// Ascending member indices of cluster c.
    const std::vector<std::size_t>& members(std::size_t c) const { return members_[c]; }

    double at(std::size_t i, std::size_t j) const;
    bool stored(std::size_t i, std::size_t j) const { return cluster_of_[i] == cluster_of_[j]; }

    /// Writes R[i,j] and R[j,i]. Throws ConfigError when (i, j) is not stored.
    void set(std::size_t i, std::size_t j, double value);

    /// Row-major entries of cluster c's block.
    const std::vector<double>& block_values(std::size_t c) const { return blocks_[c]; }
    std::vector<double>& block_values(std::size_t c) { return blocks_[c]; }

    /// Similarity-measure evaluations spent building the matrix.
    std::uint64_t evaluations() const noexcept { return evaluations_; }
    void set_evaluations(std::uint64_t count) noexcept { evaluations_ = count; }

    bool same_layout(const SimilarityMatrix& other) const {
        return structure_ == other.structure_ && cluster_of_ == other.cluster_of_;
    }

    friend bool operator==(const SimilarityMatrix& a, const SimilarityMatrix& b) {
        return a.same_layout(b) && a.blocks_ == b.blocks_;
    }

private:
    void index_members();

    Structure structure_ = Structure::dense;
    std::vector<std::size_t> cluster_of_;
    std::vector<std::size_t> local_;
    std::vector<std::vector<std::size_t>> members_;
    std::vector<std::vector<double>> blocks_;
    std::uint64_t evaluations_ = 0;
};

/// Entrywise weighted sum. Weights must be nonnegative and sum to 1; sizes
/// must match. Inputs sharing one layout keep it, otherwise the result is dense.
SimilarityMatrix compose(std::span<const SimilarityMatrix> matrices, std::span<const double> weights);

/// Dense matrix with N(N-1)/2 measure evaluations; the diagonal is 1.
SimilarityMatrix all_pairs_matrix(const PreparedMeasure& measure, std::size_t workers = 1);
SimilarityMatrix all_pairs_matrix(const GraphDataset& dataset, const MeasureConfig& cfg,
                                  std::size_t workers = 1);

/// Result of medoid clustering.
struct ClusterAssignment {
    std::vector<std::size_t> medoids;     ///< medoids[c] is the graph index of cluster c's medoid
    std::vector<std::size_t> cluster_of;  ///< cluster label per graph
    std::uint64_t evaluations = 0;        ///< distance evaluations spent
};

/// k-means++ seeding under d = 1 - s, then a single nearest-medoid pass
/// (ties to the lowest medoid index; medoids keep their own cluster). Cluster
/// labels follow ascending medoid index.
/// Throws ConfigError unless 1 <= c <= N.
ClusterAssignment cluster_dataset(const PreparedMeasure& measure, std::size_t c, std::uint64_t seed);

/// Block matrix: all intra-cluster pairs scored, zeros across clusters.
/// evaluations() covers seeding distances plus intra-cluster pairs.
SimilarityMatrix clustered_matrix(const PreparedMeasure& measure, std::size_t c, std::uint64_t seed,
                                  std::size_t workers = 1);
SimilarityMatrix clustered_matrix(const GraphDataset& dataset, const MeasureConfig& cfg, std::size_t c,
                                  std::uint64_t seed, std::size_t workers = 1);

/// ceil(sqrt(n)), the default cluster count.
std::size_t default_cluster_count(std::size_t n);

}  // namespace gom
