#include "gom/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "gom/errors.hpp"
#include "gom/format.hpp"
#include "gom/parallel.hpp"
#include "gom/random.hpp"
#include "gom/sizing.hpp"

namespace gom {

namespace {

void check_pair(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) throw ConfigError("actual and predicted lengths differ");
    if (actual.empty()) throw ConfigError("no values to score");
}

double median(std::vector<double> values) {
    const std::size_t n = values.size();
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (n % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(values.begin(), mid);
    return (lower + upper) / 2.0;
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

MdapeResult mdape(std::span<const double> actual, std::span<const double> predicted) {
    check_pair(actual, predicted);
    MdapeResult out;
    std::vector<double> errors;
    errors.reserve(actual.size());
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0) {
            ++out.excluded;
            continue;
        }
        errors.push_back(100.0 * std::abs(actual[i] - predicted[i]) / std::abs(actual[i]));
    }
    if (errors.empty()) throw ConfigError("every actual value is 0; MdAPE is undefined");
    out.percent = median(std::move(errors));
    return out;
}

double nrmse(std::span<const double> actual, std::span<const double> predicted) {
    check_pair(actual, predicted);
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = actual[i] - predicted[i];
        sum += d * d;
    }
    const double peak = *std::max_element(actual.begin(), actual.end());
    if (peak == 0.0) throw ConfigError("nRMSE normalizer max(actual) is 0");
    return std::sqrt(sum / static_cast<double>(actual.size())) / peak;
}

double evaluation_count_speedup(std::uint64_t evaluations, std::size_t n) {
    if (n < 2) throw ConfigError("evaluation-count speedup needs at least 2 graphs");
    if (evaluations == 0) throw ConfigError("evaluation count is 0");
    const double dense = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return dense / static_cast<double>(evaluations);
}

std::vector<std::size_t> evaluation_split(std::size_t n, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("evaluation fraction must lie in (0, 1]");
    Rng rng(derive_seed(seed, 0x6576616c));
    auto order = random_permutation(n, rng);
    order.resize(std::max<std::size_t>(1, std::min(n, ceil_fraction(fraction, n))));
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<EvaluationReport> run_experiment(const GraphDataset& dataset, std::span<const OperatorKind> ops,
                                             const ExperimentConfig& cfg, const SimilarityMatrix* prebuilt,
                                             double prebuilt_seconds) {
    cfg.model.validate();
    if (ops.empty()) throw ConfigError("no operators to model");
    const std::size_t n = dataset.size();
    const std::size_t workers = cfg.model.workers;

    SimilarityMatrix built;
    const SimilarityMatrix* R = prebuilt;
    double matrix_seconds = prebuilt_seconds;
    if (R == nullptr) {
        Stopwatch watch;
        const auto measure = prepare_measure(dataset, cfg.measure, workers);
        if (cfg.clustered) {
            const std::size_t c = cfg.clusters == 0 ? default_cluster_count(n) : cfg.clusters;
            built = clustered_matrix(*measure, c, cfg.seed, workers);
        } else {
            built = all_pairs_matrix(*measure, workers);
        }
        matrix_seconds = watch.seconds();
        R = &built;
    }
    if (R->size() != n) {
        throw ConfigError("similarity matrix has " + std::to_string(R->size()) + " rows but the dataset has " +
                          std::to_string(n) + " graphs");
    }
    const bool use_clusters = R->structure() == SimilarityMatrix::Structure::block;
    const auto split = evaluation_split(n, cfg.eval_fraction, cfg.seed);

    std::vector<EvaluationReport> reports;
    for (const auto op : ops) {
        EvaluationReport report;
        report.dataset = dataset.name;
        report.op = op;
        report.measure = cfg.measure.name();
        report.p = cfg.model.p;
        report.k = cfg.model.k;
        report.clustered = use_clusters;
        report.evaluations = R->evaluations();
        report.timings.matrix = matrix_seconds;

        Stopwatch sampling;
        const auto training = sample_training(dataset, op, cfg.model, use_clusters ? &R->assignment() : nullptr);
        report.timings.sampling = sampling.seconds();

        Stopwatch prediction;
        report.estimates = approximate_all(*R, training, cfg.model.k);
        report.timings.prediction = prediction.seconds();

        std::vector<double> actual(split.size());
        Stopwatch exhaustive;
        parallel_for(split.size(), workers,
                     [&](std::size_t t) { actual[t] = evaluate_operator(dataset[split[t]], op, cfg.model.damping); });
        report.timings.exhaustive =
            exhaustive.seconds() * static_cast<double>(n) / static_cast<double>(split.size());

        std::vector<double> predicted(split.size());
        for (std::size_t t = 0; t < split.size(); ++t) {
            const auto& e = report.estimates[split[t]];
            predicted[t] = e.value;
            report.residuals.push_back({split[t], actual[t], e.value, e.exact});
        }
        const auto md = mdape(actual, predicted);
        report.mdape = md.percent;
        report.mdape_excluded = md.excluded;
        report.nrmse = nrmse(actual, predicted);

        constexpr double kFloor = 1e-12;
        const double own = report.timings.sampling + report.timings.prediction;
        report.speedup = report.timings.exhaustive / std::max(kFloor, matrix_seconds + own);
        report.amortized_speedup =
            report.timings.exhaustive / std::max(kFloor, matrix_seconds / static_cast<double>(ops.size()) + own);
        reports.push_back(std::move(report));
    }
    return reports;
}

std::string report_csv_header() {
    return "dataset,operator,measure,p,k,clustered,mdape,nrmse,speedup,amortized_speedup,evaluations_performed,"
           "mdape_excluded,matrix_seconds,sampling_seconds,prediction_seconds,exhaustive_seconds\n";
}

std::string report_csv_row(const EvaluationReport& r) {
    char timing[256];
    std::snprintf(timing, sizeof timing, "%.6g,%.6g,%llu,%zu,%.6g,%.6g,%.6g,%.6g\n", r.speedup,
                  r.amortized_speedup, static_cast<unsigned long long>(r.evaluations), r.mdape_excluded,
                  r.timings.matrix, r.timings.sampling, r.timings.prediction, r.timings.exhaustive);
    return r.dataset + ',' + std::string(to_string(r.op)) + ',' + r.measure + ',' + format_real(r.p) + ',' +
           std::to_string(r.k) + ',' + (r.clustered ? "true" : "false") + ',' + format_real(r.mdape) + ',' +
           format_real(r.nrmse) + ',' + timing;
}

}  // namespace gom
