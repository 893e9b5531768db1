#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "gom/graph.hpp"

namespace gom {

/// The graph-level operators that can be modeled.
enum class OperatorKind { sr, ec, bc, ebc, cc, pr };

inline constexpr std::array<OperatorKind, 6> kAllOperators = {
    OperatorKind::sr, OperatorKind::ec, OperatorKind::bc,
    OperatorKind::ebc, OperatorKind::cc, OperatorKind::pr};

std::string_view to_string(OperatorKind kind);

/// Inverse of to_string. Throws ConfigError for unknown names.
OperatorKind parse_operator(std::string_view name);

using VertexScores = std::vector<double>;

/// Per-edge scores aligned with Graph::edges() (each edge as (min, max)).
struct EdgeScores {
    std::vector<Edge> edges;
    std::vector<double> values;

    /// Score of edge {u, v}. Throws ConfigError if the edge does not exist.
    double at(VertexId u, VertexId v) const;
};

struct PowerIterationOptions {
    double tolerance = 1e-9;
    std::size_t max_iterations = 1000;
};

inline constexpr double kDefaultDamping = 0.85;

/// Unnormalized shortest-path betweenness (Brandes), each unordered
/// pair {s, t} counted once.
VertexScores betweenness(const Graph& g);

/// Edge variant of betweenness() with the same pair convention.
EdgeScores edge_betweenness(const Graph& g);

/// 1 / (sum of distances to reachable vertices); 0 for isolated vertices.
VertexScores closeness(const Graph& g);

/// Principal eigenvector of the adjacency matrix scaled to a maximum of 1.
/// Throws ConfigError for an edgeless graph and ConvergenceError if the
/// iteration does not settle.
VertexScores eigenvector_centrality(const Graph& g, const PowerIterationOptions& opts = {});

/// PageRank with each undirected edge taken as two arcs. Isolated vertices
/// spread their mass uniformly. Sums to 1.
VertexScores pagerank(const Graph& g, double damping = kDefaultDamping,
                      const PowerIterationOptions& opts = {});

/// Largest adjacency eigenvalue (Rayleigh quotient of the converged power
/// iterate). 0 for edgeless graphs.
double spectral_radius(const Graph& g, const PowerIterationOptions& opts = {});

/// Freeman centralization: sum over elements of (max - score), divided by
/// vertex_count - 1. Throws ConfigError when vertex_count < 2.
double centralize(std::span<const double> scores, std::size_t vertex_count);

/// Graph-level value of an operator: sr directly, every other kind through
/// centralize() of its per-vertex (per-edge for ebc) scores.
double evaluate_operator(const Graph& g, OperatorKind kind, double damping = kDefaultDamping);

}  // namespace gom
