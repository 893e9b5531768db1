#include "gom/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gom/errors.hpp"

namespace gom {

std::string_view to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::sr: return "sr";
        case OperatorKind::ec: return "ec";
        case OperatorKind::bc: return "bc";
        case OperatorKind::ebc: return "ebc";
        case OperatorKind::cc: return "cc";
        case OperatorKind::pr: return "pr";
    }
    return "?";
}

OperatorKind parse_operator(std::string_view name) {
    for (auto kind : kAllOperators) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("unknown operator '" + std::string(name) + "' (expected sr, ec, bc, ebc, cc or pr)");
}

double EdgeScores::at(VertexId u, VertexId v) const {
    const Edge key{std::min(u, v), std::max(u, v)};
    const auto it = std::lower_bound(edges.begin(), edges.end(), key);
    if (it == edges.end() || *it != key) {
        throw ConfigError("no edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    return values[static_cast<std::size_t>(it - edges.begin())];
}

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// Single-source stage of Brandes' algorithm, reused across sources.
struct BrandesState {
    std::vector<std::uint32_t> dist;
    std::vector<double> sigma;
    std::vector<double> delta;
    std::vector<VertexId> order;

    explicit BrandesState(std::size_t n) : dist(n), sigma(n), delta(n) { order.reserve(n); }

    void search(const Graph& g, VertexId s) {
        std::fill(dist.begin(), dist.end(), kUnreached);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const VertexId v = order[head];
            for (VertexId w : g.neighbors(v)) {
                if (dist[w] == kUnreached) {
                    dist[w] = dist[v] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
            }
        }
    }
};

// Edge id for every adjacency slot, in Graph::edges() numbering.
std::vector<std::size_t> adjacency_edge_ids(const Graph& g, const std::vector<Edge>& edges) {
    std::vector<std::size_t> ids;
    ids.reserve(edges.size() * 2);
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        for (VertexId v : g.neighbors(u)) {
            const Edge key{std::min(u, v), std::max(u, v)};
            ids.push_back(static_cast<std::size_t>(
                std::lower_bound(edges.begin(), edges.end(), key) - edges.begin()));
        }
    }
    return ids;
}

}  // namespace

VertexScores betweenness(const Graph& g) {
    const std::size_t n = g.vertex_count();
    VertexScores scores(n, 0.0);
    BrandesState st(n);
    for (VertexId s = 0; s < n; ++s) {
        st.search(g, s);
        for (auto it = st.order.rbegin(); it != st.order.rend(); ++it) {
            const VertexId w = *it;
            for (VertexId v : g.neighbors(w)) {
                if (st.dist[v] + 1 == st.dist[w]) {
                    st.delta[v] += st.sigma[v] / st.sigma[w] * (1.0 + st.delta[w]);
                }
            }
            if (w != s) scores[w] += st.delta[w];
        }
    }
    for (auto& x : scores) x /= 2.0;
    return scores;
}

EdgeScores edge_betweenness(const Graph& g) {
    const std::size_t n = g.vertex_count();
    EdgeScores out;
    out.edges = g.edges();
    out.values.assign(out.edges.size(), 0.0);
    const auto slot_ids = adjacency_edge_ids(g, out.edges);
    std::vector<std::size_t> slot_base(n + 1, 0);
    for (VertexId u = 0; u < n; ++u) slot_base[u + 1] = slot_base[u] + g.neighbors(u).size();

    BrandesState st(n);
    for (VertexId s = 0; s < n; ++s) {
        st.search(g, s);
        for (auto it = st.order.rbegin(); it != st.order.rend(); ++it) {
            const VertexId w = *it;
            const auto adj = g.neighbors(w);
            for (std::size_t k = 0; k < adj.size(); ++k) {
                const VertexId v = adj[k];
                if (st.dist[v] + 1 == st.dist[w]) {
                    const double c = st.sigma[v] / st.sigma[w] * (1.0 + st.delta[w]);
                    out.values[slot_ids[slot_base[w] + k]] += c;
                    st.delta[v] += c;
                }
            }
        }
    }
    for (auto& x : out.values) x /= 2.0;
    return out;
}

VertexScores closeness(const Graph& g) {
    const std::size_t n = g.vertex_count();
    VertexScores scores(n, 0.0);
    std::vector<std::uint32_t> dist(n);
    std::vector<VertexId> queue;
    queue.reserve(n);
    for (VertexId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), kUnreached);
        queue.clear();
        dist[s] = 0;
        queue.push_back(s);
        std::uint64_t total = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const VertexId v = queue[head];
            total += dist[v];
            for (VertexId w : g.neighbors(v)) {
                if (dist[w] == kUnreached) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        scores[s] = total == 0 ? 0.0 : 1.0 / static_cast<double>(total);
    }
    return scores;
}

namespace {

// Power iteration on A + I (same eigenvectors as A, but the shift removes the
// +/- lambda tie of bipartite graphs). Iterates are max-normalized.
VertexScores principal_eigenvector(const Graph& g, const PowerIterationOptions& opts) {
    const std::size_t n = g.vertex_count();
    VertexScores x(n, 1.0);
    VertexScores next(n);
    for (std::size_t iter = 1; iter <= opts.max_iterations; ++iter) {
        for (VertexId v = 0; v < n; ++v) {
            double acc = x[v];
            for (VertexId w : g.neighbors(v)) acc += x[w];
            next[v] = acc;
        }
        const double peak = *std::max_element(next.begin(), next.end());
        double diff = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            next[v] /= peak;
            diff = std::max(diff, std::abs(next[v] - x[v]));
        }
        x.swap(next);
        if (diff < opts.tolerance) return x;
    }
    throw ConvergenceError("power iteration did not converge", opts.max_iterations);
}

}  // namespace

VertexScores eigenvector_centrality(const Graph& g, const PowerIterationOptions& opts) {
    if (g.edge_count() == 0) throw ConfigError("eigenvector centrality needs at least one edge");
    return principal_eigenvector(g, opts);
}

double spectral_radius(const Graph& g, const PowerIterationOptions& opts) {
    if (g.edge_count() == 0) return 0.0;
    const auto x = principal_eigenvector(g, opts);
    double num = 0.0;
    double den = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        double ax = 0.0;
        for (VertexId w : g.neighbors(v)) ax += x[w];
        num += x[v] * ax;
        den += x[v] * x[v];
    }
    return num / den;
}

VertexScores pagerank(const Graph& g, double damping, const PowerIterationOptions& opts) {
    if (!(damping > 0.0 && damping < 1.0)) throw ConfigError("damping must lie in (0, 1)");
    const std::size_t n = g.vertex_count();
    if (n == 0) return {};
    const double inv_n = 1.0 / static_cast<double>(n);
    VertexScores x(n, inv_n);
    VertexScores share(n);
    VertexScores next(n);
    for (std::size_t iter = 1; iter <= opts.max_iterations; ++iter) {
        double dangling = 0.0;
        for (VertexId v = 0; v < n; ++v) {
            const auto deg = g.neighbors(v).size();
            if (deg == 0) {
                dangling += x[v];
                share[v] = 0.0;
            } else {
                share[v] = x[v] / static_cast<double>(deg);
            }
        }
        const double base = (1.0 - damping) * inv_n + damping * dangling * inv_n;
        double diff = 0.0;
        for (VertexId v = 0; v < n; ++v) {
            double acc = 0.0;
            for (VertexId w : g.neighbors(v)) acc += share[w];
            next[v] = base + damping * acc;
            diff = std::max(diff, std::abs(next[v] - x[v]));
        }
        x.swap(next);
        if (diff < opts.tolerance) {
            const double total = std::accumulate(x.begin(), x.end(), 0.0);
            for (auto& v : x) v /= total;
            return x;
        }
    }
    throw ConvergenceError("pagerank did not converge", opts.max_iterations);
}

double centralize(std::span<const double> scores, std::size_t vertex_count) {
    if (vertex_count < 2) {
        throw ConfigError("centralization needs at least 2 vertices, got " + std::to_string(vertex_count));
    }
    if (scores.empty()) return 0.0;
    const double peak = *std::max_element(scores.begin(), scores.end());
    double gap = 0.0;
    for (double s : scores) gap += peak - s;
    return gap / static_cast<double>(vertex_count - 1);
}

double evaluate_operator(const Graph& g, OperatorKind kind, double damping) {
    const std::size_t n = g.vertex_count();
    switch (kind) {
        case OperatorKind::sr: return spectral_radius(g);
        case OperatorKind::ec: return centralize(eigenvector_centrality(g), n);
        case OperatorKind::bc: return centralize(betweenness(g), n);
        case OperatorKind::ebc: return centralize(edge_betweenness(g).values, n);
        case OperatorKind::cc: return centralize(closeness(g), n);
        case OperatorKind::pr: return centralize(pagerank(g, damping), n);
    }
    throw ConfigError("unknown operator");
}

}  // namespace gom
