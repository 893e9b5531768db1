#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "gom/datagen.hpp"
#include "gom/dataset.hpp"
#include "gom/errors.hpp"
#include "gom/evaluation.hpp"
#include "gom/format.hpp"
#include "gom/matrix_io.hpp"
#include "gom/modeling.hpp"
#include "gom/similarity.hpp"

namespace gom::cli {

namespace {

std::string join(const std::vector<std::string>& items, char sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string join(const std::vector<double>& items, char sep) {
    std::vector<std::string> text;
    for (double v : items) text.push_back(format_real(v));
    return join(text, sep);
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

MeasureConfig resolve_measure(const MeasureOptions& opts, std::uint64_t seed) {
    auto cfg = MeasureConfig::parse(opts.measure, opts.weights);
    cfg.set_partition_options(opts.sample_ratio, opts.leaf_capacity, seed);
    return cfg;
}

std::size_t resolve_clusters(const ClusterOptions& opts, std::size_t n) {
    if (opts.clusters == "auto") return default_cluster_count(n);
    std::size_t c = 0;
    const auto* first = opts.clusters.data();
    const auto* last = first + opts.clusters.size();
    const auto [ptr, ec] = std::from_chars(first, last, c);
    if (ec != std::errc{} || ptr != last || c == 0) {
        throw ConfigError("--clusters must be 'auto' or a positive integer, got '" + opts.clusters + "'");
    }
    return c;
}

// Flags reproducing the measure/clustering part of a run.
std::string measure_flags(const MeasureOptions& m, const ClusterOptions& c, std::size_t clusters) {
    std::string out = " --measure " + m.measure;
    if (!m.weights.empty()) out += " --weights " + join(m.weights, ',');
    out += " --sample-ratio " + format_real(m.sample_ratio) + " --leaf-capacity " + std::to_string(m.leaf_capacity);
    if (c.enabled) out += " --clustered --clusters " + std::to_string(clusters);
    return out;
}

SimilarityMatrix build_matrix(const GraphDataset& dataset, const MeasureConfig& measure, bool clustered,
                              std::size_t clusters, std::uint64_t seed, std::size_t workers) {
    const auto prepared = prepare_measure(dataset, measure, workers);
    return clustered ? clustered_matrix(*prepared, clusters, seed, workers) : all_pairs_matrix(*prepared, workers);
}

}  // namespace

std::filesystem::path default_output_dir() {
    if (const char* env = std::getenv("GOM_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
    return "gom-out";
}

void cmd_gen(const GenOptions& opts, std::ostream& log) {
    BAParams params;
    params.vertex_count = opts.vertex_count;
    params.outdegree_min = opts.outdegree_min;
    params.outdegree_max = opts.outdegree_max;
    const auto dataset = generate_dataset(opts.n_graphs, params, opts.seed, opts.workers, opts.name);
    save_dataset(dataset, opts.out);
    log << "wrote " << dataset.size() << " graphs to " << opts.out.string() << "\n"
        << "replay: gom gen --n " << opts.n_graphs << " --v " << opts.vertex_count << " --m "
        << opts.outdegree_min << ':' << opts.outdegree_max << " --seed " << opts.seed << " --name " << opts.name
        << " --out " << opts.out.string() << "\n";
}

void cmd_matrix(const MatrixOptions& opts, std::ostream& log) {
    const auto dataset = load_dataset(opts.dataset);
    const auto measure = resolve_measure(opts.measure, opts.seed);
    const std::size_t clusters = opts.clustering.enabled ? resolve_clusters(opts.clustering, dataset.size()) : 1;

    log << "command = matrix\n"
        << "dataset = " << opts.dataset.string() << " (" << dataset.size() << " graphs)\n"
        << "measure = " << measure.name() << "\n"
        << "clustered = " << (opts.clustering.enabled ? "true" : "false") << "\n";
    if (opts.clustering.enabled) log << "clusters = " << clusters << "\n";
    log << "seed = " << opts.seed << "\n";

    const auto start = std::chrono::steady_clock::now();
    const auto matrix = build_matrix(dataset, measure, opts.clustering.enabled, clusters, opts.seed, opts.workers);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (opts.out.has_parent_path()) ensure_directory(opts.out.parent_path());
    save_matrix(matrix, opts.out);
    if (opts.csv) write_file(*opts.csv, matrix_to_csv(matrix));
    log << "evaluations = " << matrix.evaluations() << "\n"
        << "build_seconds = " << seconds << " (wall-clock)\n"
        << "wrote " << opts.out.string() << "\n"
        << "replay: gom matrix --dataset " << opts.dataset.string()
        << measure_flags(opts.measure, opts.clustering, clusters) << " --seed " << opts.seed << " --out "
        << opts.out.string() << "\n";
}

void cmd_run(const RunOptions& opts, std::ostream& log) {
    const auto dataset = load_dataset(opts.dataset);
    const std::size_t n = dataset.size();

    ExperimentConfig cfg;
    cfg.measure = resolve_measure(opts.measure, opts.seed);
    cfg.model.p = opts.p;
    cfg.model.k = opts.k;
    cfg.model.seed = opts.seed;
    cfg.model.damping = opts.damping;
    cfg.model.workers = opts.workers;
    cfg.model.validate();
    cfg.eval_fraction = opts.eval_fraction;
    cfg.seed = opts.seed;

    std::vector<OperatorKind> ops;
    for (const auto& name : opts.ops) ops.push_back(parse_operator(name));
    if (ops.empty()) throw ConfigError("--ops lists no operators");

    std::optional<SimilarityMatrix> loaded;
    double load_seconds = 0.0;
    if (opts.matrix) {
        const auto start = std::chrono::steady_clock::now();
        loaded = load_matrix(*opts.matrix);
        load_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (loaded->size() != n) {
            throw ConfigError("matrix " + opts.matrix->string() + " has " + std::to_string(loaded->size()) +
                              " rows but dataset has " + std::to_string(n) + " graphs");
        }
    }
    const bool clustered = loaded ? loaded->structure() == SimilarityMatrix::Structure::block
                                  : opts.clustering.enabled;
    const std::size_t clusters = loaded ? loaded->cluster_count()
                                        : (clustered ? resolve_clusters(opts.clustering, n) : 1);
    cfg.clustered = clustered;
    cfg.clusters = clusters;

    const std::filesystem::path out = opts.out.empty() ? default_output_dir() : opts.out;
    std::ostringstream echo;
    echo << "command = run\n"
         << "dataset = " << opts.dataset.string() << "\n"
         << "graphs = " << n << "\n"
         << "measure = " << cfg.measure.name() << "\n"
         << "weights = " << (opts.measure.weights.empty() ? "equal" : join(opts.measure.weights, ',')) << "\n"
         << "sample_ratio = " << format_real(opts.measure.sample_ratio) << "\n"
         << "leaf_capacity = " << opts.measure.leaf_capacity << "\n"
         << "matrix = " << (opts.matrix ? opts.matrix->string() : "built") << "\n"
         << "clustered = " << (clustered ? "true" : "false") << "\n";
    if (clustered) echo << "clusters = " << clusters << "\n";
    echo << "ops = " << join(opts.ops, ',') << "\n"
         << "p = " << format_real(opts.p) << "\n"
         << "k = " << opts.k << "\n"
         << "damping = " << format_real(opts.damping) << "\n"
         << "eval_fraction = " << format_real(opts.eval_fraction) << "\n"
         << "seed = " << opts.seed << "\n"
         << "workers = " << opts.workers << "\n"
         << "out = " << out.string() << "\n"
         << "replay: gom run --dataset " << opts.dataset.string();
    if (opts.matrix) {
        echo << " --matrix " << opts.matrix->string() << " --measure " << opts.measure.measure;
        if (!opts.measure.weights.empty()) echo << " --weights " << join(opts.measure.weights, ',');
    } else {
        echo << measure_flags(opts.measure, {clustered, std::to_string(clusters)}, clusters);
    }
    echo << " --ops " << join(opts.ops, ',') << " --p " << format_real(opts.p) << " --k " << opts.k << " --damping "
         << format_real(opts.damping) << " --eval-fraction " << format_real(opts.eval_fraction) << " --seed " << opts.seed
         << " --workers " << opts.workers << " --out " << out.string() << "\n";
    log << echo.str();

    SimilarityMatrix built;
    const SimilarityMatrix* R = nullptr;
    double matrix_seconds = load_seconds;
    if (loaded) {
        R = &*loaded;
    } else {
        const auto start = std::chrono::steady_clock::now();
        built = build_matrix(dataset, cfg.measure, clustered, clusters, opts.seed, opts.workers);
        matrix_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        R = &built;
    }

    const auto reports = run_experiment(dataset, ops, cfg, R, matrix_seconds);

    ensure_directory(out);
    write_file(out / "config.txt", echo.str());
    save_matrix(*R, out / "matrix.bin");
    std::string report_csv =
        "# speedup, amortized_speedup and *_seconds are wall-clock measurements and vary between runs\n" +
        report_csv_header();
    for (const auto& r : reports) {
        write_file(out / ("model_" + std::string(to_string(r.op)) + ".csv"), model_to_csv(dataset, r.estimates));
        report_csv += report_csv_row(r);
        log << to_string(r.op) << ": mdape=" << format_real(r.mdape) << "% nrmse=" << format_real(r.nrmse)
            << " speedup=" << r.speedup << " amortized=" << r.amortized_speedup << "\n";
    }
    write_file(out / "report.csv", report_csv);
    log << "wrote " << out.string() << "\n";
}

namespace {

void add_measure_flags(CLI::App* cmd, MeasureOptions& m, ClusterOptions& c) {
    cmd->add_option("--measure", m.measure, "levelN, size, or a '+'-joined composite such as level0+size")
        ->capture_default_str();
    cmd->add_option("--weights", m.weights, "composite weights (comma separated, sum to 1)")->delimiter(',');
    cmd->add_option("--sample-ratio", m.sample_ratio, "fraction of vertices used to build the k-d tree")
        ->capture_default_str();
    cmd->add_option("--leaf-capacity", m.leaf_capacity, "k-d tree leaf capacity")->capture_default_str();
    cmd->add_flag("--clustered", c.enabled, "cluster the dataset and build a block matrix");
    cmd->add_option("--clusters", c.clusters, "cluster count, or 'auto' for ceil(sqrt(N))")->capture_default_str();
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Graph operator modeling: similarity matrices, kNN approximation and evaluation"};
    app.require_subcommand(1);
    std::size_t workers = 1;
    app.add_option("--workers", workers, "worker threads (outputs do not depend on it)")
        ->check(CLI::PositiveNumber);

    GenOptions gen;
    std::string degree_range = "1:32";
    auto* gen_cmd = app.add_subcommand("gen", "generate a Barabasi-Albert dataset");
    gen_cmd->add_option("--n", gen.n_graphs, "number of graphs")->capture_default_str();
    gen_cmd->add_option("--v", gen.vertex_count, "vertices per graph")->capture_default_str();
    gen_cmd->add_option("--m", degree_range, "initial outdegree range min:max")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
    gen_cmd->add_option("--name", gen.name, "graph id prefix")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "dataset directory")->required();
    gen_cmd->add_option("--workers", workers);

    MatrixOptions mat;
    auto* mat_cmd = app.add_subcommand("matrix", "build and persist a similarity matrix");
    mat_cmd->add_option("--dataset", mat.dataset)->required();
    add_measure_flags(mat_cmd, mat.measure, mat.clustering);
    mat_cmd->add_option("--seed", mat.seed)->capture_default_str();
    mat_cmd->add_option("--out", mat.out, "matrix file (default: <output dir>/matrix.bin)");
    std::string csv_path;
    mat_cmd->add_option("--csv", csv_path, "also export i,j,score CSV");
    mat_cmd->add_option("--workers", workers);

    RunOptions run;
    std::string ops = "sr,ec,bc,ebc,cc,pr";
    std::string matrix_path;
    auto* run_cmd = app.add_subcommand("run", "model operators over a dataset and report accuracy/speedup");
    run_cmd->add_option("--dataset", run.dataset)->required();
    add_measure_flags(run_cmd, run.measure, run.clustering);
    run_cmd->add_option("--ops", ops, "comma-separated operators (sr, ec, bc, ebc, cc, pr)")->capture_default_str();
    run_cmd->add_option("--p", run.p, "sampling ratio")->capture_default_str();
    run_cmd->add_option("--k", run.k, "neighbors")->capture_default_str();
    run_cmd->add_option("--damping", run.damping, "PageRank damping")->capture_default_str();
    run_cmd->add_option("--eval-fraction", run.eval_fraction, "evaluation split fraction")->capture_default_str();
    run_cmd->add_option("--seed", run.seed)->capture_default_str();
    run_cmd->add_option("--matrix", matrix_path, "reuse a matrix written by 'matrix'");
    run_cmd->add_option("--out", run.out, "output directory (default: $GOM_OUTPUT_DIR or gom-out)");
    run_cmd->add_option("--workers", workers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (gen_cmd->parsed()) {
            const auto colon = degree_range.find(':');
            try {
                if (colon == std::string::npos) {
                    gen.outdegree_min = gen.outdegree_max = std::stoul(degree_range);
                } else {
                    gen.outdegree_min = std::stoul(degree_range.substr(0, colon));
                    gen.outdegree_max = std::stoul(degree_range.substr(colon + 1));
                }
            } catch (const std::logic_error&) {
                throw ConfigError("--m expects min:max, got '" + degree_range + "'");
            }
            gen.workers = workers;
            cmd_gen(gen, out);
        } else if (mat_cmd->parsed()) {
            if (mat.out.empty()) mat.out = default_output_dir() / "matrix.bin";
            if (!csv_path.empty()) mat.csv = csv_path;
            mat.workers = workers;
            cmd_matrix(mat, out);
        } else if (run_cmd->parsed()) {
            run.ops.clear();
            std::stringstream ss(ops);
            for (std::string op; std::getline(ss, op, ',');) {
                if (!op.empty()) run.ops.push_back(op);
            }
            if (!matrix_path.empty()) run.matrix = matrix_path;
            run.workers = workers;
            cmd_run(run, out);
        }
        return kOk;
    } catch (const InfeasibleQuotaError& e) {
        err << "error [infeasible-quota]: " << e.what() << "\n";
        return kInfeasibleQuota;
    } catch (const ConvergenceError& e) {
        err << "error [numeric]: " << e.what() << "\n";
        return kNumeric;
    } catch (const IoError& e) {
        err << "error [io]: " << e.what() << "\n";
        return kIo;
    } catch (const ConfigError& e) {
        err << "error [config]: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUnexpected;
    }
}

}  // namespace gom::cli
