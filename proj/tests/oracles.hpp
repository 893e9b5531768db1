#pragma once

// Brute-force references used only by tests. None of them share code with
// the library implementations they check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "gom/graph.hpp"

namespace gom::oracle {

inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

/// Floyd-Warshall hop distances.
inline std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

inline bool adjacent(const Graph& g, VertexId a, VertexId b) {
    const auto adj = g.neighbors(a);
    return std::find(adj.begin(), adj.end(), b) != adj.end();
}

/// Every simple path from s to t with exactly `length` edges.
inline void enumerate_paths(const Graph& g, VertexId at, VertexId t, int remaining, std::vector<VertexId>& path,
                            std::vector<bool>& on_path, std::vector<std::vector<VertexId>>& out) {
    if (at == t) {
        if (remaining == 0) out.push_back(path);
        return;
    }
    if (remaining == 0) return;
    for (VertexId w = 0; w < g.vertex_count(); ++w) {
        if (on_path[w] || !adjacent(g, at, w)) continue;
        on_path[w] = true;
        path.push_back(w);
        enumerate_paths(g, w, t, remaining - 1, path, on_path, out);
        path.pop_back();
        on_path[w] = false;
    }
}

struct PathCounts {
    std::vector<double> vertex;
    std::map<Edge, double> edge;
};

/// Betweenness by explicit enumeration of all shortest paths per unordered pair.
inline PathCounts shortest_path_betweenness(const Graph& g) {
    const std::size_t n = g.vertex_count();
    const auto d = all_pairs_distances(g);
    PathCounts out;
    out.vertex.assign(n, 0.0);
    for (const auto& e : g.edges()) out.edge[e] = 0.0;
    for (VertexId s = 0; s < n; ++s) {
        for (VertexId t = s + 1; t < n; ++t) {
            if (d[s][t] >= kInf) continue;
            std::vector<std::vector<VertexId>> paths;
            std::vector<VertexId> path{s};
            std::vector<bool> on_path(n, false);
            on_path[s] = true;
            enumerate_paths(g, s, t, d[s][t], path, on_path, paths);
            const double total = static_cast<double>(paths.size());
            for (const auto& p : paths) {
                for (std::size_t i = 1; i + 1 < p.size(); ++i) out.vertex[p[i]] += 1.0 / total;
                for (std::size_t i = 0; i + 1 < p.size(); ++i) {
                    out.edge[{std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1])}] += 1.0 / total;
                }
            }
        }
    }
    return out;
}

inline std::vector<double> closeness(const Graph& g) {
    const auto d = all_pairs_distances(g);
    std::vector<double> out(g.vertex_count(), 0.0);
    for (std::size_t v = 0; v < d.size(); ++v) {
        long total = 0;
        for (std::size_t u = 0; u < d.size(); ++u)
            if (u != v && d[v][u] < kInf) total += d[v][u];
        out[v] = total == 0 ? 0.0 : 1.0 / static_cast<double>(total);
    }
    return out;
}

/// Edges joining distance `level` to distance `level + 1` from u.
inline std::size_t leveled_degree(const Graph& g, VertexId u, std::size_t level) {
    const auto d = all_pairs_distances(g);
    std::size_t count = 0;
    for (const auto& [a, b] : g.edges()) {
        const int da = d[u][a];
        const int db = d[u][b];
        if ((da == static_cast<int>(level) && db == static_cast<int>(level) + 1) ||
            (db == static_cast<int>(level) && da == static_cast<int>(level) + 1)) {
            ++count;
        }
    }
    return count;
}

inline Eigen::MatrixXd adjacency(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
    return a;
}

struct Eigenpair {
    double value;
    std::vector<double> vector;  // nonnegative, max entry 1
};

/// Largest adjacency eigenvalue and its eigenvector from a dense solver.
inline Eigenpair principal_eigenpair(const Graph& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency(g));
    const auto n = solver.eigenvalues().size();
    Eigenpair out{solver.eigenvalues()(n - 1), {}};
    Eigen::VectorXd v = solver.eigenvectors().col(n - 1);
    if (v.sum() < 0) v = -v;
    v /= v.maxCoeff();
    out.vector.assign(v.data(), v.data() + n);
    return out;
}

/// PageRank by solving (I - d M) x = (1 - d)/n 1 with M the column-stochastic
/// transition matrix; dangling columns are uniform.
inline std::vector<double> pagerank_linear(const Graph& g, double damping) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index u = 0; u < n; ++u) {
        const auto adj = g.neighbors(static_cast<VertexId>(u));
        if (adj.empty()) {
            m.col(u).setConstant(1.0 / static_cast<double>(n));
        } else {
            for (VertexId v : adj) m(v, u) = 1.0 / static_cast<double>(adj.size());
        }
    }
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - damping * m;
    Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n, (1.0 - damping) / static_cast<double>(n));
    Eigen::VectorXd x = system.fullPivLu().solve(rhs);
    return {x.data(), x.data() + n};
}

}  // namespace gom::oracle
