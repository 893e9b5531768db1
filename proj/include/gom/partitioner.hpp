#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gom/graph.hpp"

namespace gom {

struct GraphDataset;

/// Settings for the k-d tree that defines histogram cells over per-vertex
/// level-degree vectors.
struct PartitionerConfig {
    std::size_t max_level = 0;       ///< vector dimension is max_level + 1
    double sample_ratio = 0.1;       ///< fraction of all dataset vertices used to build the tree
    std::size_t leaf_capacity = 32;  ///< split until a leaf holds at most this many sampled points
    std::uint64_t seed = 0;
};

/// Axis-cycling median-split k-d tree. Leaves are the m histogram cells;
/// every point in the space routes to exactly one leaf.
class DegreePartitioner {
public:
    /// Builds the tree over `points` (row-major, `dimensions` per row).
    /// Throws ConfigError for an empty point set or zero leaf capacity.
    DegreePartitioner(std::size_t dimensions, std::vector<std::uint32_t> points, std::size_t leaf_capacity);

    std::size_t dimensions() const noexcept { return dimensions_; }
    std::size_t leaf_count() const noexcept { return leaf_count_; }
    std::size_t sample_size() const noexcept { return sample_size_; }

    /// Leaf index in [0, leaf_count) for a level-degree vector.
    std::size_t leaf_of(std::span<const std::uint32_t> point) const;

private:
    struct Node {
        std::uint32_t axis = 0;
        std::uint32_t split = 0;  // coordinate <= split goes left
        std::int32_t left = -1;   // -1 marks a leaf
        std::int32_t right = -1;
        std::uint32_t leaf = 0;
    };

    std::int32_t build(std::vector<std::uint32_t>& points, std::vector<std::size_t>& rows,
                       std::size_t begin, std::size_t end, std::size_t axis, std::size_t capacity);

    std::size_t dimensions_;
    std::size_t leaf_count_ = 0;
    std::size_t sample_size_ = 0;
    std::vector<Node> nodes_;
};

/// Samples ceil(sample_ratio * total vertices) vertices uniformly without
/// replacement across the whole dataset (deterministic in cfg.seed) and
/// builds the tree over their level-degree vectors. `vectors[i]` must hold
/// degree_vectors(dataset[i], cfg.max_level).
DegreePartitioner build_partitioner(std::span<const DegreeVectors> vectors, const PartitionerConfig& cfg);

/// Convenience overload computing the degree vectors itself.
DegreePartitioner build_partitioner(const GraphDataset& dataset, const PartitionerConfig& cfg);

}  // namespace gom
