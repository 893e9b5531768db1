#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gom {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Simple undirected graph stored as sorted adjacency lists (CSR layout).
/// Immutable after construction; vertex ids are dense in [0, vertex_count).
class Graph {
public:
    Graph() = default;

    /// Builds a graph from an edge list. Self-loops and duplicate edges
    /// (in either orientation) are dropped. Throws ConfigError for an
    /// endpoint outside [0, vertex_count).
    Graph(std::string id, std::size_t vertex_count, std::span<const Edge> edges);

    const std::string& id() const noexcept { return id_; }
    std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

    /// Sorted neighbor ids of u. Unchecked.
    std::span<const VertexId> neighbors(VertexId u) const noexcept {
        return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
    }

    /// Every edge once as (min, max), in lexicographic order.
    std::vector<Edge> edges() const;

    /// Self-loops and duplicates removed while constructing.
    std::size_t dropped_self_loops() const noexcept { return dropped_self_loops_; }
    std::size_t dropped_duplicates() const noexcept { return dropped_duplicates_; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_;
    }

private:
    friend Graph parse_edge_list(std::string_view text, std::string id);

    std::string id_;
    std::vector<std::size_t> offsets_;
    std::vector<VertexId> neighbors_;
    std::size_t dropped_self_loops_ = 0;
    std::size_t dropped_duplicates_ = 0;
};

/// Parses whitespace-separated "u v" pairs, one edge per line. Blank lines
/// and lines starting with '#' are skipped. Self-loops are dropped before
/// labels are assigned, then labels are remapped to 0..n-1 in order of first
/// appearance. Throws ParseError on a malformed
/// line or when no edge is present.
Graph parse_edge_list(std::string_view text, std::string id = {});

/// Writes `g` in edge-list form. For any graph produced by parse_edge_list
/// the output re-parses to an identical graph: lines are ordered so that
/// vertices first appear in id order.
std::string to_edge_list(const Graph& g);

/// Number of edges incident to u. Throws ConfigError when u is out of range.
std::size_t degree(const Graph& g, VertexId u);

/// Degree of the supernode made of u and every vertex within `level` hops:
/// the number of edges joining a vertex at distance exactly `level` to one at
/// distance `level + 1`. Level 0 is the plain degree; 0 once the ball covers
/// u's whole component.
std::size_t leveled_degree(const Graph& g, VertexId u, std::size_t level);

/// Row v holds leveled_degree(g, v, l) for l = 0..max_level, row-major with
/// stride max_level + 1.
struct DegreeVectors {
    std::size_t dimensions = 0;
    std::vector<std::uint32_t> values;

    std::size_t size() const noexcept { return dimensions == 0 ? 0 : values.size() / dimensions; }
    std::span<const std::uint32_t> operator[](std::size_t v) const noexcept {
        return {values.data() + v * dimensions, dimensions};
    }
};

DegreeVectors degree_vectors(const Graph& g, std::size_t max_level);

}  // namespace gom
