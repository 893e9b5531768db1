#include "gom/modeling.hpp"

#include <algorithm>
#include <cmath>

#include "gom/errors.hpp"
#include "gom/format.hpp"
#include "gom/parallel.hpp"
#include "gom/random.hpp"
#include "gom/sizing.hpp"

namespace gom {

void ModelConfig::validate() const {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("sampling ratio p must lie in (0, 1]");
    if (k < 1) throw ConfigError("k must be at least 1");
    if (!(damping > 0.0 && damping < 1.0)) throw ConfigError("damping must lie in (0, 1)");
}

std::vector<std::size_t> sample_indices(std::size_t n, double p, std::size_t k, std::uint64_t seed,
                                        const std::vector<std::size_t>* cluster_of) {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("sampling ratio p must lie in (0, 1]");
    if (k < 1) throw ConfigError("k must be at least 1");
    const std::size_t wanted = std::min(n, ceil_fraction(p, n));
    if (wanted < k) {
        throw ConfigError("sample of " + std::to_string(wanted) + " graphs is smaller than k = " + std::to_string(k));
    }

    Rng rng(derive_seed(seed, 0x73616d));
    const auto order = random_permutation(n, rng);
    std::vector<bool> taken(n, false);
    std::vector<std::size_t> picked;
    picked.reserve(wanted);

    if (cluster_of != nullptr) {
        if (cluster_of->size() != n) throw ConfigError("cluster assignment does not match the dataset");
        std::size_t clusters = 0;
        for (auto c : *cluster_of) clusters = std::max(clusters, c + 1);
        std::vector<std::vector<std::size_t>> members(clusters);
        for (std::size_t i = 0; i < n; ++i) members[(*cluster_of)[i]].push_back(i);
        for (std::size_t c = 0; c < clusters; ++c) {
            if (members[c].size() < k) throw InfeasibleQuotaError(c, members[c].size(), k);
        }
        if (wanted < k * clusters) {
            throw ConfigError("sample of " + std::to_string(wanted) + " graphs cannot hold " + std::to_string(k) +
                              " from each of " + std::to_string(clusters) + " clusters");
        }
        for (std::size_t c = 0; c < clusters; ++c) {
            Rng cluster_rng(derive_seed(seed, 0x1000 + c));
            const auto local = random_permutation(members[c].size(), cluster_rng);
            for (std::size_t q = 0; q < k; ++q) {
                const auto i = members[c][local[q]];
                taken[i] = true;
                picked.push_back(i);
            }
        }
    }
    for (std::size_t pos = 0; pos < n && picked.size() < wanted; ++pos) {
        if (!taken[order[pos]]) {
            taken[order[pos]] = true;
            picked.push_back(order[pos]);
        }
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

TrainingSet sample_training(const GraphDataset& dataset, OperatorKind op, const ModelConfig& cfg,
                            const std::vector<std::size_t>* cluster_of) {
    cfg.validate();
    const auto picked = sample_indices(dataset.size(), cfg.p, cfg.k, cfg.seed, cluster_of);
    std::vector<double> values(picked.size());
    parallel_for(picked.size(), cfg.workers,
                 [&](std::size_t t) { values[t] = evaluate_operator(dataset[picked[t]], op, cfg.damping); });
    TrainingSet training;
    for (std::size_t t = 0; t < picked.size(); ++t) training.entries.emplace(picked[t], values[t]);
    return training;
}

double knn_predict(const SimilarityMatrix& R, const TrainingSet& training, std::size_t k, std::size_t x) {
    if (training.entries.empty()) throw ConfigError("training set is empty");
    if (k < 1) throw ConfigError("k must be at least 1");
    if (x >= R.size()) throw ConfigError("graph index " + std::to_string(x) + " outside the similarity matrix");

    struct Candidate {
        double weight;
        std::size_t index;
        double value;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(training.entries.size());
    for (const auto& [i, value] : training.entries) {
        if (i >= R.size()) throw ConfigError("training index " + std::to_string(i) + " outside the similarity matrix");
        candidates.push_back({R.at(x, i), i, value});
    }
    const std::size_t take = std::min(k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take), candidates.end(),
                      [](const Candidate& a, const Candidate& b) {
                          return a.weight != b.weight ? a.weight > b.weight : a.index < b.index;
                      });

    // Extended precision so that short sums such as 0.8*1 + 0.2*2 round
    // to the nearest double of the true quotient.
    long double weighted = 0.0L;
    long double total = 0.0L;
    long double plain = 0.0L;
    for (std::size_t t = 0; t < take; ++t) {
        weighted += static_cast<long double>(candidates[t].weight) * candidates[t].value;
        total += candidates[t].weight;
        plain += candidates[t].value;
    }
    if (total > 0.0) {
        const double estimate = static_cast<double>(weighted / total);
        // Rounding may step a hair outside the neighbor range; keep the
        // estimate a convex combination.
        double lo = candidates[0].value;
        double hi = lo;
        for (std::size_t t = 1; t < take; ++t) {
            lo = std::min(lo, candidates[t].value);
            hi = std::max(hi, candidates[t].value);
        }
        return std::clamp(estimate, lo, hi);
    }
    return static_cast<double>(plain / static_cast<long double>(take));
}

std::vector<Estimate> approximate_all(const SimilarityMatrix& R, const TrainingSet& training, std::size_t k) {
    std::vector<Estimate> out(R.size());
    for (std::size_t x = 0; x < R.size(); ++x) {
        const auto it = training.entries.find(x);
        if (it != training.entries.end()) {
            out[x] = {it->second, true};
        } else {
            out[x] = {knn_predict(R, training, k, x), false};
        }
    }
    return out;
}

std::vector<Estimate> approximate_all(const GraphDataset& dataset, OperatorKind op, const SimilarityMatrix& R,
                                      const ModelConfig& cfg, bool use_clusters) {
    if (R.size() != dataset.size()) {
        throw ConfigError("similarity matrix has " + std::to_string(R.size()) + " rows but the dataset has " +
                          std::to_string(dataset.size()) + " graphs");
    }
    const auto training = sample_training(dataset, op, cfg, use_clusters ? &R.assignment() : nullptr);
    return approximate_all(R, training, cfg.k);
}

std::string model_to_csv(const GraphDataset& dataset, std::span<const Estimate> estimates) {
    std::string out = "graph_name,value,source\n";
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        out += dataset[i].id();
        out += ',' + format_real(estimates[i].value) + ',';
        out += estimates[i].exact ? "exact\n" : "predicted\n";
    }
    return out;
}

}  // namespace gom
