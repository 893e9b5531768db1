#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gom/dataset.hpp"
#include "gom/modeling.hpp"
#include "gom/operators.hpp"
#include "gom/similarity.hpp"

namespace gom {

struct MdapeResult {
    double percent = 0.0;
    std::size_t excluded = 0;  ///< pairs skipped because the actual value is 0
};

/// Median over i of 100 |g_i - h_i| / |g_i|, skipping g_i = 0. Throws
/// ConfigError on length mismatch, empty input, or when every pair is skipped.
MdapeResult mdape(std::span<const double> actual, std::span<const double> predicted);

/// sqrt(mean squared error) / max(actual). Throws ConfigError on length
/// mismatch, empty input, or a zero normalizer.
double nrmse(std::span<const double> actual, std::span<const double> predicted);

/// Dense-equivalent pair count n(n-1)/2 divided by the evaluations actually
/// performed. Throws ConfigError for n < 2 or zero evaluations.
double evaluation_count_speedup(std::uint64_t evaluations, std::size_t n);

struct Residual {
    std::size_t graph = 0;
    double actual = 0.0;
    double predicted = 0.0;
    bool exact = false;
};

/// Wall-clock seconds; not reproducible across runs.
struct Timings {
    double matrix = 0.0;
    double sampling = 0.0;    ///< sample selection + exact operator runs
    double prediction = 0.0;
    double exhaustive = 0.0;  ///< operator over all N graphs (extrapolated from the evaluation subset)
};

struct EvaluationReport {
    std::string dataset;
    OperatorKind op = OperatorKind::sr;
    std::string measure;
    double p = 0.0;
    std::size_t k = 0;
    bool clustered = false;
    double mdape = 0.0;
    std::size_t mdape_excluded = 0;
    double nrmse = 0.0;
    std::vector<Residual> residuals;
    Timings timings;
    std::uint64_t evaluations = 0;
    double speedup = 0.0;
    double amortized_speedup = 0.0;
    std::vector<Estimate> estimates;  ///< per-graph model output
};

struct ExperimentConfig {
    MeasureConfig measure;
    ModelConfig model;
    bool clustered = false;
    std::size_t clusters = 0;  ///< 0 selects ceil(sqrt(N))
    double eval_fraction = 0.2;
    std::uint64_t seed = 0;    ///< drives the evaluation split and clustering
};

/// Indices of the randomized evaluation subset: ceil(fraction * N) graphs,
/// sorted ascending.
std::vector<std::size_t> evaluation_split(std::size_t n, double fraction, std::uint64_t seed);

/// Builds the similarity matrix once (or uses `prebuilt`), then for each
/// operator samples, predicts, runs the operator exactly on the evaluation
/// subset and reports the errors. Speedup divides the extrapolated
/// exhaustive time by matrix + sampling + prediction time; the amortized
/// figure charges each operator 1/|ops| of the matrix time.
std::vector<EvaluationReport> run_experiment(const GraphDataset& dataset, std::span<const OperatorKind> ops,
                                             const ExperimentConfig& cfg,
                                             const SimilarityMatrix* prebuilt = nullptr,
                                             double prebuilt_seconds = 0.0);

/// CSV header and rows for a list of reports. Timing-derived columns are
/// wall-clock measurements.
std::string report_csv_header();
std::string report_csv_row(const EvaluationReport& report);

}  // namespace gom
