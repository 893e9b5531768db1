#include "gom/graph.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "gom/errors.hpp"

namespace gom {

Graph::Graph(std::string id, std::size_t vertex_count, std::span<const Edge> edges)
    : id_(std::move(id)) {
    std::vector<Edge> normalized;
    normalized.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u >= vertex_count || v >= vertex_count) {
            throw ConfigError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                              ") references a vertex outside [0, " + std::to_string(vertex_count) +
                              ")");
        }
        if (u == v) {
            ++dropped_self_loops_;
            continue;
        }
        normalized.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(normalized.begin(), normalized.end());
    const auto last = std::unique(normalized.begin(), normalized.end());
    dropped_duplicates_ = static_cast<std::size_t>(normalized.end() - last);
    normalized.erase(last, normalized.end());

    offsets_.assign(vertex_count + 1, 0);
    for (auto [u, v] : normalized) {
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    for (std::size_t i = 0; i < vertex_count; ++i) offsets_[i + 1] += offsets_[i];

    neighbors_.resize(normalized.size() * 2);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (auto [u, v] : normalized) {
        neighbors_[cursor[u]++] = v;
        neighbors_[cursor[v]++] = u;
    }
    for (std::size_t u = 0; u < vertex_count; ++u) {
        std::sort(neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]),
                  neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]));
    }
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u) {
        for (VertexId v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Splits a line into whitespace-separated tokens.
std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j])) ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

std::int64_t parse_label(std::string_view token, std::size_t line_no) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line_no, "'" + std::string(token) + "' is not an integer vertex id");
    }
    return value;
}

}  // namespace

Graph parse_edge_list(std::string_view text, std::string id) {
    std::unordered_map<std::int64_t, VertexId> remap;
    std::vector<Edge> edges;
    auto intern = [&](std::int64_t label) {
        auto [it, inserted] = remap.try_emplace(label, static_cast<VertexId>(remap.size()));
        return it->second;
    };

    std::size_t self_loops = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        const auto tokens = tokenize(line);
        if (tokens.empty() || tokens.front().front() == '#') continue;
        if (tokens.size() != 2) {
            throw ParseError(line_no, "expected 2 vertex ids, found " + std::to_string(tokens.size()));
        }
        const auto a = parse_label(tokens[0], line_no);
        const auto b = parse_label(tokens[1], line_no);
        if (a == b) {
            ++self_loops;
            continue;
        }
        const VertexId u = intern(a);
        const VertexId v = intern(b);
        edges.emplace_back(u, v);
    }
    if (edges.empty()) throw ParseError(0, "edge list contains no edges");
    Graph g(std::move(id), remap.size(), edges);
    g.dropped_self_loops_ = self_loops;
    return g;
}

std::string to_edge_list(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<Edge> ordered;
    ordered.reserve(g.edge_count());
    std::vector<bool> introduced(n, false);
    auto emit = [&](VertexId a, VertexId b) {
        ordered.emplace_back(a, b);
        introduced[a] = true;
        introduced[b] = true;
    };

    // Introduce vertices in id order: through an edge to an already-seen
    // vertex, or paired with its successor when both are new.
    for (VertexId v = 0; v < n; ++v) {
        if (introduced[v]) continue;
        const auto adj = g.neighbors(v);
        if (!adj.empty() && adj.front() < v) {
            emit(adj.front(), v);
        } else if (std::binary_search(adj.begin(), adj.end(), v + 1)) {
            emit(v, v + 1);
        } else if (!adj.empty()) {
            emit(v, adj.front());
        }
    }

    std::vector<Edge> rest;
    {
        auto first = ordered;
        for (auto& e : first) e = {std::min(e.first, e.second), std::max(e.first, e.second)};
        std::sort(first.begin(), first.end());
        for (const auto& e : g.edges()) {
            if (!std::binary_search(first.begin(), first.end(), e)) rest.push_back(e);
        }
    }

    std::string out;
    out.reserve((ordered.size() + rest.size()) * 12);
    auto append = [&](const Edge& e) {
        out += std::to_string(e.first);
        out += ' ';
        out += std::to_string(e.second);
        out += '\n';
    };
    for (const auto& e : ordered) append(e);
    for (const auto& e : rest) append(e);
    return out;
}

namespace {

void check_vertex(const Graph& g, VertexId u) {
    if (u >= g.vertex_count()) {
        throw ConfigError("vertex " + std::to_string(u) + " out of range for graph with " +
                          std::to_string(g.vertex_count()) + " vertices");
    }
}

// Breadth-first search from a source up to depth max_level + 1 that counts,
// for each level l <= max_level, the edges joining distance l to distance l+1.
class FrontierCounter {
public:
    explicit FrontierCounter(std::size_t vertex_count)
        : dist_(vertex_count, 0), stamp_(vertex_count, 0) {}

    void run(const Graph& g, VertexId source, std::size_t max_level, std::span<std::uint32_t> counts) {
        std::fill(counts.begin(), counts.end(), 0u);
        ++epoch_;
        queue_.clear();
        queue_.push_back(source);
        stamp_[source] = epoch_;
        dist_[source] = 0;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const VertexId v = queue_[head];
            const std::uint32_t d = dist_[v];
            for (VertexId w : g.neighbors(v)) {
                if (stamp_[w] != epoch_) {
                    stamp_[w] = epoch_;
                    dist_[w] = d + 1;
                    ++counts[d];
                    if (d + 1 <= max_level) queue_.push_back(w);
                } else if (dist_[w] == d + 1) {
                    ++counts[d];
                }
            }
        }
    }

private:
    std::vector<std::uint32_t> dist_;
    std::vector<std::uint32_t> stamp_;
    std::vector<VertexId> queue_;
    std::uint32_t epoch_ = 0;
};

}  // namespace

std::size_t degree(const Graph& g, VertexId u) {
    check_vertex(g, u);
    return g.neighbors(u).size();
}

std::size_t leveled_degree(const Graph& g, VertexId u, std::size_t level) {
    check_vertex(g, u);
    if (level == 0) return g.neighbors(u).size();
    FrontierCounter counter(g.vertex_count());
    std::vector<std::uint32_t> counts(level + 1);
    counter.run(g, u, level, counts);
    return counts[level];
}

DegreeVectors degree_vectors(const Graph& g, std::size_t max_level) {
    DegreeVectors out;
    out.dimensions = max_level + 1;
    out.values.resize(g.vertex_count() * out.dimensions);
    if (max_level == 0) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            out.values[v] = static_cast<std::uint32_t>(g.neighbors(v).size());
        }
        return out;
    }
    FrontierCounter counter(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        counter.run(g, v, max_level,
                    std::span<std::uint32_t>(out.values.data() + v * out.dimensions, out.dimensions));
    }
    return out;
}

}  // namespace gom
