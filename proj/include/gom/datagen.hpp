#pragma once

#include <cstdint>
#include <string>

#include "gom/dataset.hpp"

namespace gom {

/// Barabási–Albert growth parameters. Each new vertex draws its initial
/// outdegree uniformly from [outdegree_min, outdegree_max].
struct BAParams {
    std::size_t vertex_count = 4000;
    std::size_t outdegree_min = 1;
    std::size_t outdegree_max = 32;
    std::uint64_t seed = 0;

    /// Throws ConfigError unless 1 <= min <= max < vertex_count.
    void validate() const;
};

/// Preferential-attachment graph: vertex 0 starts alone, vertex 1 joins it,
/// and every later vertex t links to min(m_t, t) distinct earlier vertices
/// picked with probability proportional to their current degree.
Graph generate_ba(const BAParams& params, std::string id = {});

/// n_graphs BA graphs named "<prefix>_00000"... with per-graph seeds derived
/// from `seed` (params.seed is ignored).
GraphDataset generate_dataset(std::size_t n_graphs, const BAParams& params, std::uint64_t seed,
                              std::size_t workers = 1, const std::string& name = "ba");

}  // namespace gom
