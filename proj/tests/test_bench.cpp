#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sparsefmt/bench.hpp"
#include "sparsefmt/errors.hpp"

using namespace sparsefmt;

namespace {

WorkloadSpec band(std::size_t n, std::size_t k) {
    WorkloadSpec w;
    w.kind = WorkloadKind::Band;
    w.n = n;
    w.k = k;
    return w;
}

WorkloadSpec random_workload(std::size_t n, double density, std::uint64_t seed) {
    WorkloadSpec w;
    w.kind = WorkloadKind::Random;
    w.n = n;
    w.density = density;
    w.seed = seed;
    return w;
}

RunReport fake_report(const std::string& group, FormatId f, double avg_sigma) {
    RunReport r;
    r.matrix_id = group + "_m";
    r.workload_group = group;
    r.format = f;
    r.p = 16;
    r.totals.avg_sigma = avg_sigma;
    r.totals.total_latency_cycles = 100;
    r.totals.memory_latency_cycles = 50;
    r.totals.balance_ratio = 1.0;
    r.totals.throughput_bytes_per_sec = 1e9;
    r.totals.bandwidth_utilization = 0.5;
    return r;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("run_experiment cartesian product and order") {
    ExperimentConfig c;
    c.workloads = {band(64, 4)};
    const auto reports = run_experiment(c);
    REQUIRE(reports.size() == 24);
    CHECK(reports[0].p == 8);
    CHECK(reports[0].format == FormatId::Dense);
    CHECK(reports[7].format == FormatId::Dia);
    CHECK(reports[8].p == 16);
    CHECK(reports[23].p == 32);
    for (const auto& r : reports) {
        CHECK(r.matrix_id == "band_n64_k4");
        CHECK(r.workload_group == "band");
        const auto has = [&](const std::string& key) {
            return std::any_of(r.provenance.begin(), r.provenance.end(), [&](const auto& kv) { return kv.first == key; });
        };
        CHECK(has("k"));
        CHECK(has("cost"));
        CHECK(has("t_dot"));
    }
}

TEST_CASE("diagonal workload, DIA at p=32") {
    ExperimentConfig c;
    c.workloads = {band(64, 1)};
    c.formats = {FormatId::Dia};
    c.partition_sizes = {32};
    const auto reports = run_experiment(c);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].totals.bandwidth_utilization == 32.0 / 33.0);
    for (const auto& m : reports[0].per_partition) CHECK(m.bytes_total == 33 * 4);
}

TEST_CASE("SpMV verification") {
    ExperimentConfig c;
    c.workloads = {random_workload(60, 0.1, 5)};
    c.verify_spmv = true;
    CHECK_NOTHROW(run_experiment(c));

    SUBCASE("a corrupted decoder is caught") {
        RunHooks hooks;
        hooks.decoder = [](const EncodedPartition& e) {
            auto rows = decode_rows(e);
            if (!rows.empty()) {
                for (auto& v : rows.front().values) {
                    if (v != 0.0) {
                        v *= 1.001;
                        break;
                    }
                }
            }
            return rows;
        };
        try {
            run_experiment(c, hooks);
            FAIL("expected VerificationError");
        } catch (const VerificationError& e) {
            CHECK(e.max_rel_error() > kSpmvTolerance);
            CHECK(std::string(e.what()).find("random_n60") != std::string::npos);
        }
    }
}

TEST_CASE("max_relative_error") {
    const auto m = build_matrix(2, 2, {{0, 0, 1.0}, {0, 1, -1.0}, {1, 1, 2.0}});
    const std::vector<double> x{1.0, 1.0};
    const std::vector<double> ref{0.0, 2.0};
    std::size_t row = 9;
    // row 0 cancels to zero: the magnitude sum 2 is the scale
    CHECK(max_relative_error(m, x, std::vector<double>{1e-3, 2.0}, ref, &row) == doctest::Approx(5e-4));
    CHECK(row == 0);
    CHECK(max_relative_error(m, x, ref, ref) == 0.0);
}

TEST_CASE("normalize_summary") {
    SUBCASE("single format scores all ones") {
        const auto t = normalize_summary({fake_report("g", FormatId::Csr, 2.0)});
        REQUIRE(t.rows.size() == 1);
        for (double s : t.rows[0].score) CHECK(s == 1.0);
    }
    SUBCASE("two formats span the sigma axis") {
        const auto t = normalize_summary({fake_report("g", FormatId::Csr, 1.0), fake_report("g", FormatId::Csc, 3.0)});
        REQUIRE(t.rows.size() == 2);
        const auto& csr = t.rows[0].format == FormatId::Csr ? t.rows[0] : t.rows[1];
        const auto& csc = t.rows[0].format == FormatId::Csr ? t.rows[1] : t.rows[0];
        CHECK(csr.score[static_cast<int>(SummaryMetric::AvgSigma)] == 1.0);
        CHECK(csc.score[static_cast<int>(SummaryMetric::AvgSigma)] == 0.0);
    }
    SUBCASE("groups are scaled independently") {
        const auto t = normalize_summary({fake_report("a", FormatId::Csr, 1.0), fake_report("b", FormatId::Csc, 3.0)});
        REQUIRE(t.rows.size() == 2);
        for (const auto& row : t.rows) CHECK(row.score[0] == 1.0);
    }
    SUBCASE("empty input") { CHECK_THROWS_AS(normalize_summary({}), EmptyInputError); }
}

TEST_CASE("band suite ranking") {
    ExperimentConfig c;
    for (std::size_t k : {2, 4, 16, 32, 64}) c.workloads.push_back(band(512, k));
    const auto table = normalize_summary(run_experiment(c));
    REQUIRE(table.rows.size() == 8);
    for (const auto& row : table.rows) {
        for (double s : row.score) {
            CHECK(s >= 0.0);
            CHECK(s <= 1.0);
        }
    }
    auto rank = [&](FormatId f, SummaryMetric m) {
        const auto idx = static_cast<std::size_t>(m);
        double mine = 0.0;
        for (const auto& row : table.rows) {
            if (row.format == f) mine = row.score[idx];
        }
        std::size_t better = 0;
        for (const auto& row : table.rows) better += row.score[idx] > mine;
        return better;  // 0 = best
    };
    CHECK(rank(FormatId::Dia, SummaryMetric::BandwidthUtilization) < 4);
    CHECK(rank(FormatId::Ell, SummaryMetric::AvgSigma) < 4);
    CHECK(rank(FormatId::Ell, SummaryMetric::TotalLatency) < 4);
}

TEST_CASE("report emission") {
    ExperimentConfig c;
    c.workloads = {random_workload(96, 0.05, 3)};
    const auto reports = run_experiment(c);
    REQUIRE(reports.size() == 24);

    SUBCASE("CSV shape") {
        const auto csv = reports_to_csv(reports);
        CHECK(count_lines(csv) == 25);
        CHECK(csv.substr(0, kCsvHeader.size()) == kCsvHeader);
        CHECK(csv[kCsvHeader.size()] == '\n');
        const auto back = reports_from_csv(csv);
        REQUIRE(back.size() == 24);
        CHECK(reports_to_csv(back) == csv);
    }
    SUBCASE("JSON round trip with per-partition metrics") {
        const auto text = reports_to_json(reports, true);
        const auto back = reports_from_json(text);
        REQUIRE(back.size() == reports.size());
        for (std::size_t i = 0; i < back.size(); ++i) {
            CHECK(back[i].matrix_id == reports[i].matrix_id);
            CHECK(back[i].format == reports[i].format);
            CHECK(back[i].p == reports[i].p);
            CHECK(back[i].per_partition == reports[i].per_partition);
            CHECK(back[i].totals == reports[i].totals);
            CHECK(back[i].provenance == reports[i].provenance);
            // aggregates are recomputable from the emitted rows
            const auto again = aggregate(back[i].per_partition, c.cost);
            CHECK(again.total_latency_cycles == back[i].totals.total_latency_cycles);
            CHECK(again.avg_sigma == doctest::Approx(back[i].totals.avg_sigma).epsilon(1e-14));
            CHECK(again.balance_ratio == doctest::Approx(back[i].totals.balance_ratio).epsilon(1e-14));
        }
        CHECK(reports_to_json(back, true) == text);
    }
    SUBCASE("files and errors") {
        const auto dir = std::filesystem::temp_directory_path() / "sparsefmt_bench_test";
        std::filesystem::create_directories(dir);
        emit_report(reports, OutputFormat::Csv, dir / "r.csv");
        emit_report(reports, OutputFormat::Json, dir / "r.json");
        CHECK(read_reports(dir / "r.csv").size() == 24);
        CHECK(read_reports(dir / "r.json").size() == 24);
        CHECK_THROWS_AS(emit_report(reports, OutputFormat::Csv, dir), IoError);
        std::filesystem::remove_all(dir);
    }
}

TEST_CASE("determinism across runs and thread counts") {
    ExperimentConfig c;
    c.workloads = {random_workload(150, 0.08, 12), band(100, 8)};
    const auto first = reports_to_csv(run_experiment(c));
    CHECK(reports_to_csv(run_experiment(c)) == first);
    c.threads = 4;
    CHECK(reports_to_csv(run_experiment(c)) == first);
}

TEST_CASE("config parsing") {
    SUBCASE("full document") {
        const auto c = parse_config(R"({
            "workloads": [{"kind": "random", "n": 64, "density": 0.1, "seed": 3},
                          {"kind": "band", "n": 64, "k": 4},
                          {"kind": "file", "path": "m.mtx"}],
            "formats": ["CSR", "dok"],
            "partition_sizes": [8],
            "cost": {"scan_cycles": 2, "dot_cycles": 4},
            "params": {"value_width_bytes": 8},
            "output": {"format": "json", "path": "out.json"},
            "verify_spmv": true,
            "threads": 2
        })",
                                    "/data");
        REQUIRE(c.workloads.size() == 3);
        CHECK(c.workloads[0].seed == 3);
        CHECK(c.workloads[1].k == 4);
        CHECK(c.workloads[2].path == std::filesystem::path("/data/m.mtx"));
        CHECK(c.formats == std::vector<FormatId>{FormatId::Csr, FormatId::Coo});
        CHECK(c.partition_sizes == std::vector<std::size_t>{8});
        CHECK(c.cost.scan_cycles == 2);
        CHECK(c.cost.dot_cycles == Cycles{4});
        CHECK(c.params.value_width_bytes == 8);
        CHECK(c.output_format == OutputFormat::Json);
        CHECK(c.output_path == "out.json");
        CHECK(c.verify_spmv);
        CHECK(c.threads == 2);
    }
    SUBCASE("defaults") {
        const auto c = parse_config(R"({"workloads": [{"kind": "band", "n": 8, "k": 1}]})");
        CHECK(c.formats.size() == 8);
        CHECK(c.partition_sizes == std::vector<std::size_t>{8, 16, 32});
        CHECK(c.output_format == OutputFormat::Csv);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(parse_config("{"), ParseError);
        CHECK_THROWS_AS(parse_config(R"({"workloads": [], "colour": 1})"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"workloads": [{"kind": "cube", "n": 8}]})"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"workloads": [{"kind": "band", "n": 8}]})"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"workloads": [{"kind": "band", "n": 8, "k": 1}], "formats": ["SELL"]})"),
                        UnsupportedFormatError);
        ExperimentConfig empty;
        CHECK_THROWS_AS(empty.validate(), ConfigError);
        ExperimentConfig missing;
        WorkloadSpec f;
        f.kind = WorkloadKind::File;
        f.path = "/nonexistent/m.mtx";
        missing.workloads = {f};
        CHECK_THROWS_AS(missing.validate(), ConfigError);
        ExperimentConfig bad_block;
        bad_block.workloads = {band(8, 1)};
        bad_block.params.bcsr_block = 3;
        CHECK_THROWS_AS(bad_block.validate(), ConfigError);
    }
}

TEST_CASE("output directory override") {
    ::setenv("SPARSEFMT_OUTPUT_DIR", "/tmp/outdir", 1);
    CHECK(resolve_output_path("r.csv") == std::filesystem::path("/tmp/outdir/r.csv"));
    CHECK(resolve_output_path("/abs/r.csv") == std::filesystem::path("/abs/r.csv"));
    ::unsetenv("SPARSEFMT_OUTPUT_DIR");
    CHECK(resolve_output_path("r.csv") == std::filesystem::path("r.csv"));
}
