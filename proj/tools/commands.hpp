#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gom::cli {

/// Exit statuses by failure category.
enum ExitCode : int {
    kOk = 0,
    kUnexpected = 1,
    kConfig = 2,
    kIo = 3,
    kNumeric = 4,
    kInfeasibleQuota = 5,
};

struct GenOptions {
    std::size_t n_graphs = 200;
    std::size_t vertex_count = 500;
    std::size_t outdegree_min = 1;
    std::size_t outdegree_max = 32;
    std::uint64_t seed = 0;
    std::string name = "ba";
    std::filesystem::path out;
    std::size_t workers = 1;
};

struct MeasureOptions {
    std::string measure = "level0";
    std::vector<double> weights;  ///< empty: equal weights for composites
    double sample_ratio = 0.1;
    std::size_t leaf_capacity = 32;
};

struct ClusterOptions {
    bool enabled = false;
    std::string clusters = "auto";  ///< "auto" = ceil(sqrt(N)), or an integer
};

struct MatrixOptions {
    std::filesystem::path dataset;
    MeasureOptions measure;
    ClusterOptions clustering;
    std::uint64_t seed = 0;
    std::filesystem::path out;            ///< matrix file
    std::optional<std::filesystem::path> csv;
    std::size_t workers = 1;
};

struct RunOptions {
    std::filesystem::path dataset;
    MeasureOptions measure;
    ClusterOptions clustering;
    std::vector<std::string> ops = {"sr", "ec", "bc", "ebc", "cc", "pr"};
    double p = 0.1;
    std::size_t k = 3;
    double damping = 0.85;
    double eval_fraction = 0.2;
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> matrix;  ///< reuse a persisted matrix
    std::filesystem::path out;                    ///< output directory
    std::size_t workers = 1;
};

/// Writes a BA dataset directory (edge lists + manifest).
void cmd_gen(const GenOptions& opts, std::ostream& log);

/// Builds and persists a similarity matrix.
void cmd_matrix(const MatrixOptions& opts, std::ostream& log);

/// Full pipeline: matrix (built or loaded), per-operator model CSVs and the
/// evaluation report. Echoes the resolved configuration.
void cmd_run(const RunOptions& opts, std::ostream& log);

/// Parses argv, dispatches to a command and maps failures to ExitCode.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Output directory used when --out is not given: $GOM_OUTPUT_DIR or "gom-out".
std::filesystem::path default_output_dir();

}  // namespace gom::cli
