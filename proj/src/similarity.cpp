#include "gom/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gom/errors.hpp"
#include "gom/parallel.hpp"
#include "gom/random.hpp"

namespace gom {

Histogram project(const DegreeVectors& vectors, const DegreePartitioner& partitioner) {
    if (vectors.dimensions != partitioner.dimensions()) {
        throw ConfigError("degree vectors and partitioner differ in dimension");
    }
    Histogram h;
    h.mass.assign(partitioner.leaf_count(), 0.0);
    const std::size_t n = vectors.size();
    if (n == 0) return h;
    for (std::size_t v = 0; v < n; ++v) h.mass[partitioner.leaf_of(vectors[v])] += 1.0;
    for (auto& m : h.mass) m /= static_cast<double>(n);
    return h;
}

Histogram project(const Graph& g, const DegreePartitioner& partitioner) {
    return project(degree_vectors(g, partitioner.dimensions() - 1), partitioner);
}

double bhattacharyya(std::span<const double> q, std::span<const double> r) {
    if (q.size() != r.size()) {
        throw ConfigError("histogram lengths differ (" + std::to_string(q.size()) + " vs " +
                          std::to_string(r.size()) + ")");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) sum += std::sqrt(q[i] * r[i]);
    return std::clamp(sum, 0.0, 1.0);
}

double degree_similarity(const Graph& a, const Graph& b, const DegreePartitioner& partitioner) {
    return bhattacharyya(project(a, partitioner).mass, project(b, partitioner).mass);
}

double vertex_count_similarity(const Graph& a, const Graph& b) {
    const auto na = a.vertex_count();
    const auto nb = b.vertex_count();
    if (na == 0 || nb == 0) throw ConfigError("vertex-count similarity of an empty graph");
    return static_cast<double>(std::min(na, nb)) / static_cast<double>(std::max(na, nb));
}

// ---------------------------------------------------------------------------
// MeasureConfig

MeasureConfig MeasureConfig::degree_levels(std::size_t max_level) {
    MeasureConfig cfg;
    cfg.kind = Kind::degree_levels;
    cfg.partition.max_level = max_level;
    return cfg;
}

MeasureConfig MeasureConfig::vertex_count() {
    MeasureConfig cfg;
    cfg.kind = Kind::vertex_count;
    return cfg;
}

namespace {

void check_weights(std::span<const double> weights, std::size_t expected) {
    if (weights.size() != expected) {
        throw ConfigError("expected " + std::to_string(expected) + " weights, got " +
                          std::to_string(weights.size()));
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError("weights must sum to 1");
}

}  // namespace

MeasureConfig MeasureConfig::composite(std::vector<MeasureConfig> children, std::vector<double> weights) {
    if (children.empty()) throw ConfigError("composite measure needs at least one child");
    check_weights(weights, children.size());
    MeasureConfig cfg;
    cfg.kind = Kind::composite;
    cfg.children = std::move(children);
    cfg.weights = std::move(weights);
    return cfg;
}

MeasureConfig MeasureConfig::parse(const std::string& spec, std::vector<double> weights) {
    std::vector<MeasureConfig> terms;
    std::stringstream ss(spec);
    std::string term;
    while (std::getline(ss, term, '+')) {
        if (term == "size") {
            terms.push_back(vertex_count());
        } else if (term.rfind("level", 0) == 0 && term.size() > 5 &&
                   std::all_of(term.begin() + 5, term.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            terms.push_back(degree_levels(std::stoul(term.substr(5))));
        } else {
            throw ConfigError("unknown measure term '" + term + "' (expected levelN or size)");
        }
    }
    if (terms.empty()) throw ConfigError("empty measure name");
    if (terms.size() == 1 && weights.empty()) return terms.front();
    if (weights.empty()) weights.assign(terms.size(), 1.0 / static_cast<double>(terms.size()));
    return composite(std::move(terms), std::move(weights));
}

std::string MeasureConfig::name() const {
    switch (kind) {
        case Kind::degree_levels: return "level" + std::to_string(partition.max_level);
        case Kind::vertex_count: return "size";
        case Kind::composite: break;
    }
    std::string out;
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out += '+';
        out += children[i].name();
    }
    if (std::any_of(weights.begin(), weights.end(), [&](double w) { return w != weights.front(); })) {
        out += '[';
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (i) out += '/';
            std::ostringstream w;
            w << weights[i];
            out += w.str();
        }
        out += ']';
    }
    return out;
}

void MeasureConfig::set_partition_options(double sample_ratio, std::size_t leaf_capacity, std::uint64_t seed) {
    partition.sample_ratio = sample_ratio;
    partition.leaf_capacity = leaf_capacity;
    partition.seed = seed;
    for (auto& child : children) child.set_partition_options(sample_ratio, leaf_capacity, seed);
}

// ---------------------------------------------------------------------------
// Prepared measures

namespace {

class DegreeMeasure final : public PreparedMeasure {
public:
    DegreeMeasure(const GraphDataset& dataset, const PartitionerConfig& cfg, std::size_t workers) {
        std::vector<DegreeVectors> vectors(dataset.size());
        parallel_for(dataset.size(), workers,
                     [&](std::size_t i) { vectors[i] = degree_vectors(dataset[i], cfg.max_level); });
        const DegreePartitioner partitioner = build_partitioner(vectors, cfg);
        cells_.resize(dataset.size());
        parallel_for(dataset.size(), workers, [&](std::size_t i) {
            const auto h = project(vectors[i], partitioner);
            for (std::size_t leaf = 0; leaf < h.mass.size(); ++leaf) {
                if (h.mass[leaf] > 0.0) cells_[i].emplace_back(static_cast<std::uint32_t>(leaf), h.mass[leaf]);
            }
        });
    }

    std::size_t size() const override { return cells_.size(); }

    // Merge over the sparse supports; equals bhattacharyya() on the dense
    // histograms since zero cells contribute exactly 0.
    double operator()(std::size_t i, std::size_t j) const override {
        const auto& a = cells_[i];
        const auto& b = cells_[j];
        double sum = 0.0;
        std::size_t x = 0;
        std::size_t y = 0;
        while (x < a.size() && y < b.size()) {
            if (a[x].first < b[y].first) {
                ++x;
            } else if (b[y].first < a[x].first) {
                ++y;
            } else {
                sum += std::sqrt(a[x].second * b[y].second);
                ++x;
                ++y;
            }
        }
        return std::clamp(sum, 0.0, 1.0);
    }

private:
    std::vector<std::vector<std::pair<std::uint32_t, double>>> cells_;
};

class VertexCountMeasure final : public PreparedMeasure {
public:
    explicit VertexCountMeasure(const GraphDataset& dataset) {
        counts_.reserve(dataset.size());
        for (const auto& g : dataset.graphs) {
            if (g.vertex_count() == 0) throw ConfigError("graph " + g.id() + " has no vertices");
            counts_.push_back(g.vertex_count());
        }
    }

    std::size_t size() const override { return counts_.size(); }

    double operator()(std::size_t i, std::size_t j) const override {
        return static_cast<double>(std::min(counts_[i], counts_[j])) /
               static_cast<double>(std::max(counts_[i], counts_[j]));
    }

private:
    std::vector<std::size_t> counts_;
};

class CompositeMeasure final : public PreparedMeasure {
public:
    CompositeMeasure(std::vector<std::unique_ptr<PreparedMeasure>> children, std::vector<double> weights)
        : children_(std::move(children)), weights_(std::move(weights)) {}

    std::size_t size() const override { return children_.front()->size(); }

    double operator()(std::size_t i, std::size_t j) const override {
        double sum = 0.0;
        for (std::size_t c = 0; c < children_.size(); ++c) sum += weights_[c] * (*children_[c])(i, j);
        return std::clamp(sum, 0.0, 1.0);
    }

    const std::vector<std::unique_ptr<PreparedMeasure>>* children() const override { return &children_; }
    const std::vector<double>* weights() const override { return &weights_; }

private:
    std::vector<std::unique_ptr<PreparedMeasure>> children_;
    std::vector<double> weights_;
};

}  // namespace

std::unique_ptr<PreparedMeasure> prepare_measure(const GraphDataset& dataset, const MeasureConfig& cfg,
                                                 std::size_t workers) {
    if (dataset.size() == 0) throw ConfigError("dataset is empty");
    switch (cfg.kind) {
        case MeasureConfig::Kind::degree_levels:
            return std::make_unique<DegreeMeasure>(dataset, cfg.partition, workers);
        case MeasureConfig::Kind::vertex_count:
            return std::make_unique<VertexCountMeasure>(dataset);
        case MeasureConfig::Kind::composite: {
            check_weights(cfg.weights, cfg.children.size());
            std::vector<std::unique_ptr<PreparedMeasure>> children;
            for (const auto& child : cfg.children) children.push_back(prepare_measure(dataset, child, workers));
            return std::make_unique<CompositeMeasure>(std::move(children), cfg.weights);
        }
    }
    throw ConfigError("unknown measure kind");
}

// ---------------------------------------------------------------------------
// SimilarityMatrix

SimilarityMatrix SimilarityMatrix::dense(std::size_t n) {
    SimilarityMatrix m;
    m.structure_ = Structure::dense;
    m.cluster_of_.assign(n, 0);
    m.index_members();
    return m;
}

SimilarityMatrix SimilarityMatrix::block(std::vector<std::size_t> cluster_of) {
    SimilarityMatrix m;
    m.structure_ = Structure::block;
    m.cluster_of_ = std::move(cluster_of);
    m.index_members();
    return m;
}

void SimilarityMatrix::index_members() {
    std::size_t clusters = 0;
    for (auto c : cluster_of_) clusters = std::max(clusters, c + 1);
    members_.assign(clusters, {});
    local_.assign(cluster_of_.size(), 0);
    for (std::size_t i = 0; i < cluster_of_.size(); ++i) {
        local_[i] = members_[cluster_of_[i]].size();
        members_[cluster_of_[i]].push_back(i);
    }
    for (std::size_t c = 0; c < clusters; ++c) {
        if (members_[c].empty()) throw ConfigError("cluster " + std::to_string(c) + " has no members");
    }
    blocks_.assign(clusters, {});
    for (std::size_t c = 0; c < clusters; ++c) {
        const std::size_t s = members_[c].size();
        blocks_[c].assign(s * s, 0.0);
        for (std::size_t a = 0; a < s; ++a) blocks_[c][a * s + a] = 1.0;
    }
}

double SimilarityMatrix::at(std::size_t i, std::size_t j) const {
    const auto c = cluster_of_[i];
    if (c != cluster_of_[j]) return 0.0;
    return blocks_[c][local_[i] * members_[c].size() + local_[j]];
}

void SimilarityMatrix::set(std::size_t i, std::size_t j, double value) {
    if (!stored(i, j)) {
        throw ConfigError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") lies across clusters and is fixed at 0");
    }
    const auto c = cluster_of_[i];
    const auto s = members_[c].size();
    blocks_[c][local_[i] * s + local_[j]] = value;
    blocks_[c][local_[j] * s + local_[i]] = value;
}

SimilarityMatrix compose(std::span<const SimilarityMatrix> matrices, std::span<const double> weights) {
    if (matrices.empty()) throw ConfigError("compose needs at least one matrix");
    check_weights(weights, matrices.size());
    const std::size_t n = matrices.front().size();
    bool shared = true;
    std::uint64_t evaluations = 0;
    for (const auto& m : matrices) {
        if (m.size() != n) throw ConfigError("cannot compose matrices of different sizes");
        shared = shared && m.same_layout(matrices.front());
        evaluations = std::max(evaluations, m.evaluations());
    }

    SimilarityMatrix out;
    if (shared) {
        out = matrices.front();
        for (std::size_t c = 0; c < out.cluster_count(); ++c) {
            auto& block = out.block_values(c);
            const std::size_t s = out.members(c).size();
            for (std::size_t e = 0; e < block.size(); ++e) {
                double sum = 0.0;
                for (std::size_t k = 0; k < matrices.size(); ++k) sum += weights[k] * matrices[k].block_values(c)[e];
                block[e] = e % (s + 1) == 0 ? 1.0 : std::clamp(sum, 0.0, 1.0);
            }
        }
    } else {
        out = SimilarityMatrix::dense(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double sum = 0.0;
                for (std::size_t k = 0; k < matrices.size(); ++k) sum += weights[k] * matrices[k].at(i, j);
                out.set(i, j, std::clamp(sum, 0.0, 1.0));
            }
        }
    }
    out.set_evaluations(evaluations);
    return out;
}

namespace {

std::uint64_t intra_pairs(const SimilarityMatrix& layout) {
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < layout.cluster_count(); ++c) {
        const std::uint64_t s = layout.members(c).size();
        total += s * (s - 1) / 2;
    }
    return total;
}

// Fills every stored off-diagonal entry of `matrix`. Composite measures are
// combined at matrix level: each child fills its own copy of the layout.
void fill(SimilarityMatrix& matrix, const PreparedMeasure& measure, std::size_t workers) {
    if (const auto* children = measure.children()) {
        std::vector<SimilarityMatrix> parts;
        parts.reserve(children->size());
        for (const auto& child : *children) {
            SimilarityMatrix part = matrix;
            fill(part, *child, workers);
            parts.push_back(std::move(part));
        }
        matrix = compose(parts, *measure.weights());
        return;
    }

    std::vector<std::pair<std::size_t, std::size_t>> rows;  // (cluster, local row)
    for (std::size_t c = 0; c < matrix.cluster_count(); ++c) {
        for (std::size_t a = 0; a + 1 < matrix.members(c).size(); ++a) rows.emplace_back(c, a);
    }
    parallel_for(rows.size(), workers, [&](std::size_t task) {
        const auto [c, a] = rows[task];
        const auto& members = matrix.members(c);
        auto& block = matrix.block_values(c);
        const std::size_t s = members.size();
        for (std::size_t b = a + 1; b < s; ++b) {
            const double value = measure(members[a], members[b]);
            block[a * s + b] = value;
            block[b * s + a] = value;
        }
    });
}

}  // namespace

SimilarityMatrix all_pairs_matrix(const PreparedMeasure& measure, std::size_t workers) {
    auto matrix = SimilarityMatrix::dense(measure.size());
    fill(matrix, measure, workers);
    matrix.set_evaluations(intra_pairs(matrix));
    return matrix;
}

SimilarityMatrix all_pairs_matrix(const GraphDataset& dataset, const MeasureConfig& cfg, std::size_t workers) {
    return all_pairs_matrix(*prepare_measure(dataset, cfg, workers), workers);
}

ClusterAssignment cluster_dataset(const PreparedMeasure& measure, std::size_t c, std::uint64_t seed) {
    const std::size_t n = measure.size();
    if (c < 1 || c > n) {
        throw ConfigError("cluster count " + std::to_string(c) + " must lie in [1, " + std::to_string(n) + "]");
    }
    ClusterAssignment out;
    out.cluster_of.assign(n, 0);
    if (c == 1) {
        Rng rng(derive_seed(seed, 0x6d6564));
        out.medoids.push_back(static_cast<std::size_t>(uniform_below(rng, n)));
        return out;
    }

    Rng rng(derive_seed(seed, 0x6d6564));
    std::vector<bool> is_medoid(n, false);
    std::vector<std::vector<double>> distance;  // distance[t][x] = 1 - s(medoid t, x)
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());

    auto add_medoid = [&](std::size_t m) {
        is_medoid[m] = true;
        out.medoids.push_back(m);
        auto& row = distance.emplace_back(n, 0.0);
        for (std::size_t x = 0; x < n; ++x) {
            if (is_medoid[x]) continue;
            row[x] = 1.0 - measure(m, x);
            ++out.evaluations;
            nearest[x] = std::min(nearest[x], row[x]);
        }
    };

    add_medoid(static_cast<std::size_t>(uniform_below(rng, n)));
    while (out.medoids.size() < c) {
        double total = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            if (!is_medoid[x]) total += nearest[x] * nearest[x];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = uniform01(rng) * total;
            double acc = 0.0;
            for (std::size_t x = 0; x < n; ++x) {
                if (is_medoid[x] || nearest[x] <= 0.0) continue;
                acc += nearest[x] * nearest[x];
                pick = x;
                if (acc > target) break;
            }
        } else {
            // Every remaining graph coincides with a medoid; pick uniformly.
            std::size_t remaining = 0;
            for (std::size_t x = 0; x < n; ++x) remaining += is_medoid[x] ? 0 : 1;
            auto skip = uniform_below(rng, remaining);
            for (std::size_t x = 0; x < n; ++x) {
                if (is_medoid[x]) continue;
                if (skip-- == 0) {
                    pick = x;
                    break;
                }
            }
        }
        add_medoid(pick);
    }

    // Label clusters by ascending medoid index so that ties in the pass
    // below go to the lowest medoid index.
    std::vector<std::size_t> order(c);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return out.medoids[a] < out.medoids[b]; });
    std::vector<std::size_t> medoids(c);
    std::vector<std::vector<double>> sorted_distance(c);
    for (std::size_t t = 0; t < c; ++t) {
        medoids[t] = out.medoids[order[t]];
        sorted_distance[t] = std::move(distance[order[t]]);
    }
    out.medoids = std::move(medoids);
    distance = std::move(sorted_distance);

    for (std::size_t t = 0; t < c; ++t) out.cluster_of[out.medoids[t]] = t;
    for (std::size_t x = 0; x < n; ++x) {
        if (is_medoid[x]) continue;
        std::size_t best = 0;
        for (std::size_t t = 1; t < c; ++t) {
            if (distance[t][x] < distance[best][x]) best = t;
        }
        out.cluster_of[x] = best;
    }
    return out;
}

SimilarityMatrix clustered_matrix(const PreparedMeasure& measure, std::size_t c, std::uint64_t seed,
                                  std::size_t workers) {
    const auto clusters = cluster_dataset(measure, c, seed);
    auto matrix = SimilarityMatrix::block(clusters.cluster_of);
    fill(matrix, measure, workers);
    matrix.set_evaluations(clusters.evaluations + intra_pairs(matrix));
    return matrix;
}

SimilarityMatrix clustered_matrix(const GraphDataset& dataset, const MeasureConfig& cfg, std::size_t c,
                                  std::uint64_t seed, std::size_t workers) {
    return clustered_matrix(*prepare_measure(dataset, cfg, workers), c, seed, workers);
}

std::size_t default_cluster_count(std::size_t n) {
    auto c = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (c * c < n) ++c;
    while (c > 1 && (c - 1) * (c - 1) >= n) --c;
    return std::max<std::size_t>(1, c);
}

}  // namespace gom
