// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gom/datagen.hpp"
#include "gom/errors.hpp"
#include "gom/evaluation.hpp"
#include "gom/format.hpp"
#include "gom/graph.hpp"
#include "gom/modeling.hpp"
#include "gom/operators.hpp"
#include "gom/similarity.hpp"
#include "oracles.hpp"
#include "test_graphs.hpp"

namespace fs = std::filesystem;
using namespace gom;
using namespace gom::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failure notes; a criterion passes when none were recorded.
struct Check {
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void note(const std::string& text) { notes.push_back(text); }
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

GraphDataset desk_ba(std::size_t n_graphs, std::uint64_t seed) {
    BAParams params;
    params.vertex_count = 500;
    params.outdegree_min = 1;
    params.outdegree_max = 32;
    return generate_dataset(n_graphs, params, seed);
}

// Desk-scale dataset shared by criteria 4 and 5.
const GraphDataset& ba200() {
    static const GraphDataset d = desk_ba(200, 1);
    return d;
}

constexpr std::uint64_t kRunSeed = 7;

// ---------------------------------------------------------------------------

void criterion_operator_oracles(Check& check) {
    const auto start = Clock::now();
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> density(0.2, 0.8);
    std::size_t ec_vector_compared = 0;
    std::size_t ec_degenerate = 0;
    double worst_paths = 0.0;
    double worst_spectral = 0.0;

    for (int trial = 0; trial < 100; ++trial) {
        Graph g = random_graph(2 + rng() % 7, density(rng), rng);
        while (g.edge_count() == 0) g = random_graph(2 + rng() % 7, density(rng), rng);
        const std::size_t n = g.vertex_count();
        const auto paths = oracle::shortest_path_betweenness(g);
        const auto cc_ref = oracle::closeness(g);

        const auto bc = betweenness(g);
        const auto cc = closeness(g);
        for (std::size_t v = 0; v < n; ++v) {
            worst_paths = std::max(worst_paths, std::abs(bc[v] - paths.vertex[v]));
            worst_paths = std::max(worst_paths, std::abs(cc[v] - cc_ref[v]));
        }
        const auto ebc = edge_betweenness(g);
        for (std::size_t e = 0; e < ebc.edges.size(); ++e) {
            worst_paths = std::max(worst_paths, std::abs(ebc.values[e] - paths.edge.at(ebc.edges[e])));
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(oracle::adjacency(g));
        const auto& lambda = solver.eigenvalues();
        const auto top = lambda.size() - 1;
        worst_spectral = std::max(worst_spectral, std::abs(spectral_radius(g) - lambda(top)));

        const auto ec = eigenvector_centrality(g);
        if (lambda(top) - lambda(top - 1) > 1e-6) {
            const auto ref = oracle::principal_eigenpair(g);
            for (std::size_t v = 0; v < n; ++v) worst_spectral = std::max(worst_spectral, std::abs(ec[v] - ref.vector[v]));
            ++ec_vector_compared;
        } else {
            // Repeated top eigenvalue (e.g. two identical components): any
            // vector of the eigenspace is correct, so check A x = lambda x.
            Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(ec.data(), static_cast<Eigen::Index>(n));
            const Eigen::VectorXd residual = oracle::adjacency(g) * x - lambda(top) * x;
            worst_spectral = std::max(worst_spectral, residual.cwiseAbs().maxCoeff());
            worst_spectral = std::max(worst_spectral, std::abs(x.maxCoeff() - 1.0));
            ++ec_degenerate;
        }
    }
    const double elapsed = seconds_since(start);
    check.require(worst_paths <= 1e-9, "bc/ebc/cc deviation " + fmt(worst_paths) + " > 1e-9");
    check.require(worst_spectral <= 1e-6, "sr/ec deviation " + fmt(worst_spectral) + " > 1e-6");
    check.require(elapsed < 60.0, "runtime " + fmt(elapsed) + " s >= 60 s");
    check.note("max |bc,ebc,cc - oracle| = " + fmt(worst_paths) + ", max |sr,ec - eigensolver| = " +
               fmt(worst_spectral) + ", ec vectors compared " + std::to_string(ec_vector_compared) +
               " + eigenspace checks " + std::to_string(ec_degenerate) + ", " + fmt(elapsed, 3) + " s");
}

void criterion_matrix_invariants(Check& check) {
    const auto d = desk_ba(50, 3);
    for (const auto* name : {"level0", "level1", "level2", "size", "level0+size"}) {
        const auto cfg = MeasureConfig::parse(name);
        const auto measure = prepare_measure(d, cfg);
        const auto m = all_pairs_matrix(*measure);
        bool symmetric = true, unit_diagonal = true, in_range = true;
        double worst_self = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            unit_diagonal &= m.at(i, i) == 1.0;
            worst_self = std::max(worst_self, std::abs((*measure)(i, i) - 1.0));
            for (std::size_t j = 0; j < d.size(); ++j) {
                symmetric &= m.at(i, j) == m.at(j, i);
                in_range &= m.at(i, j) >= 0.0 && m.at(i, j) <= 1.0;
            }
        }
        const std::string label = std::string(name) + ": ";
        check.require(symmetric, label + "not symmetric");
        check.require(unit_diagonal, label + "diagonal not exactly 1");
        check.require(in_range, label + "entry outside [0,1]");
        check.require(worst_self <= 1e-9, label + "s(G,G) off by " + fmt(worst_self));
        check.require(m.evaluations() == 50u * 49u / 2u, label + "dense evaluation count");
    }
    const auto composite = MeasureConfig::parse("level0+size");
    check.require(composite.weights == std::vector<double>{0.5, 0.5}, "composite weights not 0.5/0.5");
    check.note("50 graphs; level0, level1, level2, size, level0+size (0.5/0.5)");
}

void criterion_leveled_degree(Check& check) {
    const auto g = supernode_example();
    const std::vector<std::size_t> expected{4, 1, 3};
    for (std::size_t level = 0; level < 3; ++level) {
        const auto got = leveled_degree(g, 0, level);
        check.require(got == expected[level],
                      "level " + std::to_string(level) + ": got " + std::to_string(got));
    }
    const auto vectors = degree_vectors(g, 2);
    const auto u0 = vectors[0];
    check.require(std::vector<std::uint32_t>(u0.begin(), u0.end()) == std::vector<std::uint32_t>{4, 1, 3},
                  "degree_vectors(u0) differs from (4, 1, 3)");
    check.note("u0 -> (" + std::to_string(leveled_degree(g, 0, 0)) + ", " + std::to_string(leveled_degree(g, 0, 1)) +
               ", " + std::to_string(leveled_degree(g, 0, 2)) + ")");
}

ExperimentConfig desk_config(double p) {
    ExperimentConfig cfg;
    cfg.measure = MeasureConfig::degree_levels(0);
    cfg.model.p = p;
    cfg.model.k = 3;
    cfg.model.seed = kRunSeed;
    cfg.eval_fraction = 0.2;
    cfg.seed = kRunSeed;
    return cfg;
}

const SimilarityMatrix& ba200_matrix() {
    static const SimilarityMatrix m = all_pairs_matrix(ba200(), MeasureConfig::degree_levels(0));
    return m;
}

void criterion_desk_accuracy(Check& check) {
    const auto start = Clock::now();
    const auto& d = ba200();
    const OperatorKind ops[] = {OperatorKind::ec, OperatorKind::cc, OperatorKind::sr};
    const double limits[] = {5.0, 10.0, 10.0};
    const auto reports = run_experiment(d, ops, desk_config(0.1));
    std::string summary;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto name = std::string(to_string(ops[i]));
        check.require(reports[i].mdape <= limits[i],
                      name + " MdAPE " + fmt(reports[i].mdape) + "% > " + fmt(limits[i]) + "%");
        summary += (i ? ", " : "") + name + " " + fmt(reports[i].mdape) + "%";
    }
    const double elapsed = seconds_since(start);
    check.require(elapsed < 600.0, "runtime " + fmt(elapsed) + " s >= 600 s");
    check.note("MdAPE at p=0.1: " + summary + " (" + fmt(elapsed, 3) + " s incl. generation)");
}

void criterion_sampling_trend(Check& check) {
    const auto& d = ba200();
    const auto& R = ba200_matrix();
    std::string summary;
    for (const auto op : {OperatorKind::ec, OperatorKind::cc}) {
        const OperatorKind one[] = {op};
        const double low = run_experiment(d, one, desk_config(0.05), &R).at(0).mdape;
        const double high = run_experiment(d, one, desk_config(0.2), &R).at(0).mdape;
        const auto name = std::string(to_string(op));
        check.require(high <= low + 1.0, name + " MdAPE(p=0.2) " + fmt(high) + "% > MdAPE(p=0.05) " + fmt(low) + "% + 1");
        summary += (summary.empty() ? "" : ", ") + name + " " + fmt(low) + "% -> " + fmt(high) + "%";
    }
    check.note("MdAPE p=0.05 -> p=0.2: " + summary);
}

// The clustered sample needs k members from every cluster, and the spec'd
// clustering (k-means++ seeding, one assignment pass) can leave a cluster
// with fewer than k graphs; that is reported as an infeasible quota. The
// check therefore sweeps a fixed set of seeds, requires the evaluation bound
// on all of them and the accuracy bound on every seed whose quota is
// feasible, and fails if none is.
void criterion_clustering_tradeoff(Check& check) {
    const auto d = desk_ba(1024, 2);
    const std::size_t n = d.size();
    const double dense_pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    const auto measure = prepare_measure(d, MeasureConfig::degree_levels(0));
    const auto dense = all_pairs_matrix(*measure);
    const OperatorKind ec[] = {OperatorKind::ec};

    double worst_fraction = 0.0;
    double worst_delta = -1e300;
    std::size_t feasible = 0;
    std::vector<std::string> infeasible;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto clustered = clustered_matrix(*measure, 32, seed);
        const double fraction = static_cast<double>(clustered.evaluations()) / dense_pairs;
        worst_fraction = std::max(worst_fraction, fraction);
        check.require(fraction <= 0.25, "seed " + std::to_string(seed) + ": evaluations " + fmt(100 * fraction) + "% > 25%");

        auto cfg = desk_config(0.1);
        cfg.seed = seed;
        cfg.model.seed = seed;
        const double dense_mdape = run_experiment(d, ec, cfg, &dense).at(0).mdape;
        try {
            cfg.clustered = true;
            const double clustered_mdape = run_experiment(d, ec, cfg, &clustered).at(0).mdape;
            const double delta = clustered_mdape - dense_mdape;
            worst_delta = std::max(worst_delta, delta);
            ++feasible;
            check.require(delta <= 3.0, "seed " + std::to_string(seed) + ": ec MdAPE " + fmt(dense_mdape) + "% -> " +
                                            fmt(clustered_mdape) + "% (> 3 points)");
        } catch (const InfeasibleQuotaError& e) {
            infeasible.push_back(std::to_string(seed));
        }
    }
    check.require(feasible > 0, "no seed produced a feasible per-cluster quota");
    std::string skipped;
    for (const auto& s : infeasible) skipped += (skipped.empty() ? "" : ",") + s;
    check.note("N=1024, c=32, seeds 0-9: max evaluations " + fmt(100 * worst_fraction) +
               "% of dense, max ec MdAPE increase " + fmt(worst_delta) + " points over " + std::to_string(feasible) +
               " feasible seeds; infeasible quota (cluster < k) for seeds {" + skipped + "}");
}

SimilarityMatrix query_matrix(const std::vector<double>& weights) {
    auto m = SimilarityMatrix::dense(weights.size() + 1);
    for (std::size_t i = 0; i < weights.size(); ++i) m.set(0, i + 1, weights[i]);
    return m;
}

TrainingSet training_of(const std::vector<double>& values) {
    TrainingSet t;
    for (std::size_t i = 0; i < values.size(); ++i) t.entries.emplace(i + 1, values[i]);
    return t;
}

void criterion_estimator(Check& check) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t equal_fail = 0, hull_fail = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 1 + rng() % 16;
        const std::size_t k = 1 + rng() % 6;
        std::vector<double> w(n), values(n);
        for (auto& x : w) x = u(rng) < 0.1 ? 0.0 : u(rng);
        for (auto& x : values) x = (u(rng) - 0.5) * std::pow(10.0, static_cast<int>(rng() % 10) - 3);
        const double v = values[0];
        if (knn_predict(query_matrix(w), training_of(std::vector<double>(n, v)), k, 0) != v) ++equal_fail;

        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return w[a] > w[b]; });
        double lo = values[order[0]], hi = lo;
        for (std::size_t t = 1; t < std::min(n, k); ++t) {
            lo = std::min(lo, values[order[t]]);
            hi = std::max(hi, values[order[t]]);
        }
        const double est = knn_predict(query_matrix(w), training_of(values), k, 0);
        if (est < lo || est > hi) ++hull_fail;
    }
    const double hand = knn_predict(query_matrix({0.8, 0.2}), training_of({1.0, 2.0}), 2, 0);
    check.require(equal_fail == 0, std::to_string(equal_fail) + " equal-value cases did not return v");
    check.require(hull_fail == 0, std::to_string(hull_fail) + " estimates outside the neighbor hull");
    check.require(hand == 1.2, "hand example returned " + format_real(hand));
    check.note("10000 random cases; hand example = " + format_real(hand));
}

void criterion_metrics(Check& check) {
    const double md = mdape(std::vector<double>{100, 200}, std::vector<double>{110, 190}).percent;
    const double nr = nrmse(std::vector<double>{0, 4}, std::vector<double>{0, 0});
    const std::vector<double> a{3.5, 1.25, 8.0, 0.5};
    const double md0 = mdape(a, a).percent;
    const double nr0 = nrmse(a, a);
    check.require(md == 7.5, "mdape = " + format_real(md));
    check.require(std::abs(nr - 0.70711) <= 1e-5, "nrmse = " + format_real(nr));
    check.require(md0 == 0.0 && nr0 == 0.0, "perfect predictions give nonzero error");
    check.note("mdape = " + format_real(md) + ", nrmse = " + fmt(nr, 6));
}

std::string slurp(const fs::path& p) { return read_file(p); }

void criterion_determinism(Check& check) {
    const fs::path root = fs::temp_directory_path() / "gom_acceptance_determinism";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string gom = GOM_BINARY;
    const auto sh = [&](const std::string& args) {
        const std::string cmd = "\"" + gom + "\" " + args + " > \"" + (root / "log.txt").string() + "\" 2>&1";
        return std::system(cmd.c_str());
    };
    const std::string data = (root / "data").string();
    check.require(sh("gen --n 60 --v 300 --m 1:32 --seed 5 --out \"" + data + "\"") == 0, "gen failed");
    const std::string flags = "run --dataset \"" + data +
                              "\" --measure level1+size --ops sr,ec,bc,ebc,cc,pr --p 0.1 --k 3 --seed 11 --out ";
    for (const auto* workers : {"1", "4"}) {
        const int rc = sh(std::string("--workers ") + workers + " " + flags + "\"" + (root / workers).string() + "\"");
        check.require(rc == 0, std::string("run with ") + workers + " worker(s) failed: " + slurp(root / "log.txt"));
    }
    if (!check.failures.empty()) return;
    std::size_t compared = 0;
    for (const auto* op : {"sr", "ec", "bc", "ebc", "cc", "pr"}) {
        const std::string f = std::string("model_") + op + ".csv";
        check.require(slurp(root / "1" / f) == slurp(root / "4" / f), f + " differs");
        ++compared;
    }
    check.require(slurp(root / "1" / "matrix.bin") == slurp(root / "4" / "matrix.bin"), "matrix.bin differs");
    ++compared;
    check.note(std::to_string(compared) + " artifacts byte-identical at --workers 1 and 4");
    fs::remove_all(root);
}

}  // namespace

int main() {
    const struct {
        int id;
        const char* title;
        std::function<void(Check&)> run;
    } criteria[] = {
        {1, "operator oracle equivalence", criterion_operator_oracles},
        {2, "similarity-matrix invariants", criterion_matrix_invariants},
        {3, "leveled-degree ground truth", criterion_leveled_degree},
        {4, "desk-scale BA accuracy", criterion_desk_accuracy},
        {5, "sampling-ratio trend", criterion_sampling_trend},
        {6, "clustering tradeoff", criterion_clustering_tradeoff},
        {7, "estimator properties", criterion_estimator},
        {8, "metric oracles", criterion_metrics},
        {9, "determinism across worker counts", criterion_determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Check check;
        try {
            c.run(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        const bool ok = check.failures.empty();
        failed += ok ? 0 : 1;
        std::printf("%s criterion %d: %s", ok ? "PASS" : "FAIL", c.id, c.title);
        for (const auto& n : check.notes) std::printf(" | %s", n.c_str());
        for (const auto& f : check.failures) std::printf(" | %s", f.c_str());
        std::printf("\n");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
