#include "gom/datagen.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "gom/errors.hpp"
#include "gom/parallel.hpp"
#include "gom/random.hpp"

namespace gom {

void BAParams::validate() const {
    if (outdegree_min < 1 || outdegree_min > outdegree_max || outdegree_max >= vertex_count) {
        throw ConfigError("BA parameters need 1 <= outdegree_min <= outdegree_max < vertex_count (got " +
                          std::to_string(outdegree_min) + ", " + std::to_string(outdegree_max) + ", " +
                          std::to_string(vertex_count) + ")");
    }
}

Graph generate_ba(const BAParams& params, std::string id) {
    params.validate();
    Rng rng(derive_seed(params.seed, 0x6261));
    const std::size_t n = params.vertex_count;
    std::vector<Edge> edges;
    // Each edge contributes both endpoints, so a uniform pick from this list
    // is a degree-proportional pick.
    std::vector<VertexId> endpoints;
    endpoints.reserve(n * params.outdegree_max * 2);
    std::vector<VertexId> targets;
    std::vector<std::uint32_t> chosen_mark(n, 0);

    const std::size_t span = params.outdegree_max - params.outdegree_min + 1;
    for (std::size_t t = 1; t < n; ++t) {
        const std::size_t m = params.outdegree_min + static_cast<std::size_t>(uniform_below(rng, span));
        const auto v = static_cast<VertexId>(t);
        targets.clear();
        if (m >= t) {
            for (VertexId u = 0; u < t; ++u) targets.push_back(u);
        } else {
            const auto mark = static_cast<std::uint32_t>(t);
            while (targets.size() < m) {
                const VertexId u = endpoints[uniform_below(rng, endpoints.size())];
                if (chosen_mark[u] == mark) continue;
                chosen_mark[u] = mark;
                targets.push_back(u);
            }
        }
        for (VertexId u : targets) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    return Graph(std::move(id), n, edges);
}

GraphDataset generate_dataset(std::size_t n_graphs, const BAParams& params, std::uint64_t seed,
                              std::size_t workers, const std::string& name) {
    if (n_graphs < 1) throw ConfigError("dataset needs at least one graph");
    params.validate();
    GraphDataset dataset;
    dataset.name = name;
    dataset.graphs.resize(n_graphs);
    parallel_for(n_graphs, workers, [&](std::size_t i) {
        BAParams local = params;
        local.seed = derive_seed(seed, i);
        char digits[24];
        std::snprintf(digits, sizeof digits, "%05zu", i);
        dataset.graphs[i] = generate_ba(local, name + "_" + digits);
    });
    return dataset;
}

}  // namespace gom
