#include "gom/partitioner.hpp"

#include <algorithm>

#include "gom/dataset.hpp"
#include "gom/errors.hpp"
#include "gom/random.hpp"
#include "gom/sizing.hpp"

namespace gom {

DegreePartitioner::DegreePartitioner(std::size_t dimensions, std::vector<std::uint32_t> points,
                                     std::size_t leaf_capacity)
    : dimensions_(dimensions) {
    if (dimensions == 0) throw ConfigError("partitioner needs at least one dimension");
    if (leaf_capacity == 0) throw ConfigError("leaf capacity must be at least 1");
    if (points.empty() || points.size() % dimensions != 0) {
        throw ConfigError("partitioner needs a non-empty sample of level-degree vectors");
    }
    sample_size_ = points.size() / dimensions;
    std::vector<std::size_t> rows(sample_size_);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    build(points, rows, 0, rows.size(), 0, leaf_capacity);
}

std::int32_t DegreePartitioner::build(std::vector<std::uint32_t>& points, std::vector<std::size_t>& rows,
                                      std::size_t begin, std::size_t end, std::size_t axis,
                                      std::size_t capacity) {
    const auto index = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    const auto make_leaf = [&] {
        nodes_[static_cast<std::size_t>(index)].leaf = static_cast<std::uint32_t>(leaf_count_++);
        return index;
    };
    const std::size_t count = end - begin;
    if (count <= capacity) return make_leaf();

    const auto first = rows.begin() + static_cast<std::ptrdiff_t>(begin);
    const auto last = rows.begin() + static_cast<std::ptrdiff_t>(end);
    for (std::size_t attempt = 0; attempt < dimensions_; ++attempt, axis = (axis + 1) % dimensions_) {
        auto coord = [&](std::size_t row) { return points[row * dimensions_ + axis]; };
        const auto mid = first + static_cast<std::ptrdiff_t>((count - 1) / 2);
        std::nth_element(first, mid, last, [&](std::size_t a, std::size_t b) { return coord(a) < coord(b); });
        std::uint32_t split = coord(*mid);
        auto boundary = std::partition(first, last, [&](std::size_t r) { return coord(r) <= split; });
        if (boundary == last) {
            // Everything from the median up shares the maximum value; split
            // just below it instead.
            std::uint32_t below = 0;
            bool found = false;
            for (auto it = first; it != last; ++it) {
                if (coord(*it) < split && (!found || coord(*it) > below)) {
                    below = coord(*it);
                    found = true;
                }
            }
            if (!found) continue;  // constant along this axis
            split = below;
            boundary = std::partition(first, last, [&](std::size_t r) { return coord(r) <= split; });
        }

        const std::size_t middle = static_cast<std::size_t>(boundary - rows.begin());
        const std::size_t next_axis = (axis + 1) % dimensions_;
        const auto left = build(points, rows, begin, middle, next_axis, capacity);
        const auto right = build(points, rows, middle, end, next_axis, capacity);
        auto& node = nodes_[static_cast<std::size_t>(index)];
        node.axis = static_cast<std::uint32_t>(axis);
        node.split = split;
        node.left = left;
        node.right = right;
        return index;
    }
    // All sampled points in this cell are identical; no split separates them.
    return make_leaf();
}

std::size_t DegreePartitioner::leaf_of(std::span<const std::uint32_t> point) const {
    std::size_t i = 0;
    while (nodes_[i].left >= 0) {
        const auto& node = nodes_[i];
        i = static_cast<std::size_t>(point[node.axis] <= node.split ? node.left : node.right);
    }
    return nodes_[i].leaf;
}

DegreePartitioner build_partitioner(std::span<const DegreeVectors> vectors, const PartitionerConfig& cfg) {
    if (!(cfg.sample_ratio > 0.0 && cfg.sample_ratio <= 1.0)) {
        throw ConfigError("partition sample ratio must lie in (0, 1]");
    }
    const std::size_t dims = cfg.max_level + 1;
    std::size_t total = 0;
    for (const auto& dv : vectors) {
        if (dv.dimensions != dims) throw ConfigError("degree vectors do not match max_level");
        total += dv.size();
    }
    const std::size_t wanted = std::min(total, ceil_fraction(cfg.sample_ratio, total));
    if (wanted == 0) throw ConfigError("partitioner sample is empty");

    // Selection sampling: exactly `wanted` of `total` vertices, each subset
    // equally likely, visited in dataset order.
    Rng rng(derive_seed(cfg.seed, 0x6b64));
    std::vector<std::uint32_t> points;
    points.reserve(wanted * dims);
    std::size_t seen = 0;
    std::size_t chosen = 0;
    for (const auto& dv : vectors) {
        for (std::size_t v = 0; v < dv.size() && chosen < wanted; ++v, ++seen) {
            const double take = static_cast<double>(wanted - chosen) / static_cast<double>(total - seen);
            if (uniform01(rng) < take) {
                const auto row = dv[v];
                points.insert(points.end(), row.begin(), row.end());
                ++chosen;
            }
        }
    }
    return DegreePartitioner(dims, std::move(points), cfg.leaf_capacity);
}

DegreePartitioner build_partitioner(const GraphDataset& dataset, const PartitionerConfig& cfg) {
    std::vector<DegreeVectors> vectors(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) vectors[i] = degree_vectors(dataset[i], cfg.max_level);
    return build_partitioner(vectors, cfg);
}

}  // namespace gom
