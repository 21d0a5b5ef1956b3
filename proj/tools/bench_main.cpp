// bench: sweep sparse formats over workloads and report cost-model metrics.
//
//   bench run --config sweep.json [--threads N] [--output reports.csv]
//   bench run --xl
//   bench gen random --n 512 --density 0.1 --seed 7 --out m.mtx
//   bench gen band --n 512 --k 16 --out m.mtx
//   bench summarize reports.csv [more.json ...] [--csv summary.csv]
//   bench dump --matrix m.mtx --p 8 --format CSR --tile 0 0
//   bench stats --matrix m.mtx --p 16
//
// Exit status: 0 success, 1 any error, 2 SpMV verification failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "sparsefmt/bench.hpp"
#include "sparsefmt/errors.hpp"

namespace sf = sparsefmt;

namespace {

// Band sweep at the full 8000 x 8000 size.
sf::ExperimentConfig xl_config() {
    sf::ExperimentConfig c;
    for (std::size_t k : {1, 2, 4, 8, 16, 32, 64}) {
        sf::WorkloadSpec w;
        w.kind = sf::WorkloadKind::Band;
        w.n = 8000;
        w.k = k;
        c.workloads.push_back(w);
    }
    c.output_path = "reports_xl.csv";
    return c;
}

sf::FormatId format_arg(const std::string& s) { return sf::parse_format(s); }

int run(const std::string& config_path, bool xl, std::size_t threads, const std::string& output,
        const std::string& output_format, bool per_partition, bool verify) {
    sf::ExperimentConfig config = xl ? xl_config() : sf::load_config(config_path);
    if (threads > 0) config.threads = threads;
    if (!output_format.empty()) {
        config.output_format = output_format == "json" ? sf::OutputFormat::Json : sf::OutputFormat::Csv;
    }
    if (!output.empty()) config.output_path = output;
    if (per_partition) config.per_partition = true;
    if (verify) config.verify_spmv = true;

    const auto reports = sf::run_experiment(config);
    const auto path = sf::resolve_output_path(config.output_path);
    sf::emit_report(reports, config.output_format, path, config.per_partition);
    std::cerr << "wrote " << reports.size() << " reports to " << path.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse format characterization bench"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "Run an experiment sweep");
    std::string config_path;
    bool xl = false;
    std::size_t threads = 0;
    std::string output;
    std::string output_format;
    bool per_partition = false;
    bool verify = false;
    auto* config_opt = run_cmd->add_option("--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
    auto* xl_opt = run_cmd->add_flag("--xl", xl, "Built-in n=8000 band sweep");
    config_opt->excludes(xl_opt);
    run_cmd->add_option("--threads", threads, "Worker threads (overrides config)");
    run_cmd->add_option("--output", output, "Report path (overrides config)");
    run_cmd->add_option("--format", output_format, "csv or json (overrides config)")
        ->check(CLI::IsMember({"csv", "json"}));
    run_cmd->add_flag("--per-partition", per_partition, "Include per-partition metrics in JSON");
    run_cmd->add_flag("--verify", verify, "Check partitioned SpMV against the dense reference");

    auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic matrix as Matrix Market");
    gen_cmd->require_subcommand(1);
    std::size_t n = 0;
    double density = 0.0;
    std::uint64_t seed = 0;
    std::size_t k = 1;
    std::string out_path;
    auto* gen_random = gen_cmd->add_subcommand("random", "Uniform random matrix");
    gen_random->add_option("--n", n)->required();
    gen_random->add_option("--density", density)->required();
    gen_random->add_option("--seed", seed);
    gen_random->add_option("--out", out_path)->required();
    auto* gen_band = gen_cmd->add_subcommand("band", "Band matrix of width k");
    gen_band->add_option("--n", n)->required();
    gen_band->add_option("--k", k)->required();
    gen_band->add_option("--out", out_path)->required();

    auto* sum_cmd = app.add_subcommand("summarize", "Normalized 0-1 summary of report files");
    std::vector<std::string> report_paths;
    std::string summary_csv;
    sum_cmd->add_option("reports", report_paths, "Report files (.csv or .json)")->required()->check(CLI::ExistingFile);
    sum_cmd->add_option("--csv", summary_csv, "Also write the summary as CSV");

    auto* dump_cmd = app.add_subcommand("dump", "Print the encoded layout of one tile");
    std::string matrix_path;
    std::size_t p = 16;
    std::string format_name;
    std::vector<std::size_t> tile_pos;
    dump_cmd->add_option("--matrix", matrix_path)->required()->check(CLI::ExistingFile);
    dump_cmd->add_option("--p", p);
    dump_cmd->add_option("--format", format_name)->required();
    dump_cmd->add_option("--tile", tile_pos, "Grid row and column (default: first non-zero tile)")->expected(2);

    auto* stats_cmd = app.add_subcommand("stats", "Partition density statistics");
    stats_cmd->add_option("--matrix", matrix_path)->required()->check(CLI::ExistingFile);
    stats_cmd->add_option("--p", p);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            if (config_path.empty() && !xl) throw sf::ConfigError("run: --config or --xl is required");
            return run(config_path, xl, threads, output, output_format, per_partition, verify);
        }
        if (*gen_cmd) {
            const auto m = *gen_random ? sf::gen_random(n, density, seed) : sf::gen_band(n, k);
            sf::write_matrix_market(sf::resolve_output_path(out_path), m);
            return 0;
        }
        if (*sum_cmd) {
            std::vector<sf::RunReport> reports;
            for (const auto& path : report_paths) {
                auto r = sf::read_reports(path);
                reports.insert(reports.end(), r.begin(), r.end());
            }
            const auto table = sf::normalize_summary(reports);
            std::cout << sf::summary_to_text(table);
            if (!summary_csv.empty()) {
                std::ofstream out(sf::resolve_output_path(summary_csv));
                if (!out) throw sf::IoError("cannot write '" + summary_csv + "'");
                out << sf::summary_to_csv(table);
            }
            return 0;
        }
        if (*dump_cmd) {
            const auto grid = sf::partition(sf::read_matrix_market(matrix_path), p);
            const sf::Partition* tile = nullptr;
            for (const auto& t : grid.tiles) {
                if (tile_pos.empty() || (t.grid_row == tile_pos[0] && t.grid_col == tile_pos[1])) {
                    tile = &t;
                    break;
                }
            }
            if (!tile) throw sf::Error("dump: requested tile is all-zero or outside the grid");
            std::cout << sf::dump(sf::encode(*tile, format_arg(format_name)));
            return 0;
        }
        if (*stats_cmd) {
            const auto grid = sf::partition(sf::read_matrix_market(matrix_path), p);
            const auto s = sf::density_stats(grid);
            std::printf("grid %zux%zu, non-zero partitions %zu\n", grid.shape.tile_rows, grid.shape.tile_cols,
                        grid.tiles.size());
            std::printf("avg_partition_density %.6g\navg_row_density %.6g\navg_nonzero_row_fraction %.6g\n",
                        s.avg_partition_density, s.avg_row_density, s.avg_nonzero_row_fraction);
            return 0;
        }
    } catch (const sf::VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
