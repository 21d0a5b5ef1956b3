#include "sparsefmt/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sparsefmt/errors.hpp"
#include "parallel.hpp"

namespace sparsefmt {

using nlohmann::json;

namespace {

std::string fmt15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> known, std::string_view where) {
    for (const auto& [key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown key '" + key + "' in " + std::string(where));
        }
    }
}

WorkloadSpec parse_workload(const json& j, const std::filesystem::path& base_dir) {
    reject_unknown_keys(j, {"kind", "n", "density", "k", "seed", "path"}, "workload");
    WorkloadSpec w;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "random") {
        w.kind = WorkloadKind::Random;
        w.n = j.at("n").get<std::size_t>();
        w.density = j.at("density").get<double>();
        w.seed = get_or<std::uint64_t>(j, "seed", 0);
    } else if (kind == "band") {
        w.kind = WorkloadKind::Band;
        w.n = j.at("n").get<std::size_t>();
        w.k = j.at("k").get<std::size_t>();
    } else if (kind == "file") {
        w.kind = WorkloadKind::File;
        w.path = j.at("path").get<std::string>();
        if (w.path.is_relative() && !base_dir.empty()) w.path = base_dir / w.path;
    } else {
        throw ConfigError("unknown workload kind '" + kind + "'");
    }
    return w;
}

json cost_to_json(const CostConfig& c) {
    json j;
    if (c.dot_cycles) j["dot_cycles"] = *c.dot_cycles;
    j["offset_access_cycles"] = c.offset_access_cycles;
    j["sequential_element_cycles"] = c.sequential_element_cycles;
    j["scan_cycles"] = c.scan_cycles;
    j["assign_cycles"] = c.assign_cycles;
    j["parallel_row_fetch_cycles"] = c.parallel_row_fetch_cycles;
    j["bus_bytes_per_cycle"] = c.bus_bytes_per_cycle;
    j["clock_hz"] = c.clock_hz;
    return j;
}

CostConfig cost_from_json(const json& j) {
    reject_unknown_keys(j,
                        {"dot_cycles", "offset_access_cycles", "sequential_element_cycles", "scan_cycles",
                         "assign_cycles", "parallel_row_fetch_cycles", "bus_bytes_per_cycle", "clock_hz"},
                        "cost");
    CostConfig c;
    if (j.contains("dot_cycles")) c.dot_cycles = j.at("dot_cycles").get<Cycles>();
    c.offset_access_cycles = get_or(j, "offset_access_cycles", c.offset_access_cycles);
    c.sequential_element_cycles = get_or(j, "sequential_element_cycles", c.sequential_element_cycles);
    c.scan_cycles = get_or(j, "scan_cycles", c.scan_cycles);
    c.assign_cycles = get_or(j, "assign_cycles", c.assign_cycles);
    c.parallel_row_fetch_cycles = get_or(j, "parallel_row_fetch_cycles", c.parallel_row_fetch_cycles);
    c.bus_bytes_per_cycle = get_or(j, "bus_bytes_per_cycle", c.bus_bytes_per_cycle);
    c.clock_hz = get_or(j, "clock_hz", c.clock_hz);
    return c;
}

FormatParams params_from_json(const json& j) {
    reject_unknown_keys(j, {"value_width_bytes", "index_width_bytes", "bcsr_block", "ell_min_width"}, "params");
    FormatParams f;
    f.value_width_bytes = get_or(j, "value_width_bytes", f.value_width_bytes);
    f.index_width_bytes = get_or(j, "index_width_bytes", f.index_width_bytes);
    f.bcsr_block = get_or(j, "bcsr_block", f.bcsr_block);
    f.ell_min_width = get_or(j, "ell_min_width", f.ell_min_width);
    return f;
}

json metrics_to_json(const PartitionMetrics& m) {
    return json{{"grid_row", m.grid_row},         {"grid_col", m.grid_col},
                {"mem_cycles", m.mem_cycles},     {"compute_cycles", m.compute_cycles},
                {"t_decomp_cycles", m.t_decomp_cycles}, {"sigma", m.sigma},
                {"bytes_total", m.bytes_total},   {"bytes_useful", m.bytes_useful},
                {"nnz", m.nnz},                   {"nnz_rows", m.nnz_rows},
                {"emitted_rows", m.emitted_rows}};
}

PartitionMetrics metrics_from_json(const json& j) {
    PartitionMetrics m;
    m.grid_row = j.at("grid_row").get<Index>();
    m.grid_col = j.at("grid_col").get<Index>();
    m.mem_cycles = j.at("mem_cycles").get<Cycles>();
    m.compute_cycles = j.at("compute_cycles").get<Cycles>();
    m.t_decomp_cycles = j.at("t_decomp_cycles").get<Cycles>();
    m.sigma = j.at("sigma").get<double>();
    m.bytes_total = j.at("bytes_total").get<std::size_t>();
    m.bytes_useful = j.at("bytes_useful").get<std::size_t>();
    m.nnz = j.at("nnz").get<std::size_t>();
    m.nnz_rows = j.at("nnz_rows").get<std::size_t>();
    m.emitted_rows = j.at("emitted_rows").get<std::size_t>();
    return m;
}

// Reports read back from CSV carry no per-partition rows; their counts live in
// the provenance entries written by reports_from_csv.
std::size_t count_or_provenance(const RunReport& r, std::string_view key, std::size_t PartitionMetrics::*field) {
    if (r.per_partition.empty()) {
        for (const auto& [k, v] : r.provenance) {
            if (k == key) return std::stoull(v);
        }
        return 0;
    }
    if (!field) return r.per_partition.size();
    std::size_t s = 0;
    for (const auto& m : r.per_partition) s += m.*field;
    return s;
}

// CSV rows carry totals only; these fields stand in for the per-partition
// sums when a report is read back from CSV.
struct CsvTotals {
    std::size_t partitions = 0;
    std::size_t bytes_total = 0;
    std::size_t bytes_useful = 0;
    std::size_t nnz = 0;
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (workloads.empty()) throw ConfigError("config: workloads is empty");
    if (formats.empty()) throw ConfigError("config: formats is empty");
    if (partition_sizes.empty()) throw ConfigError("config: partition_sizes is empty");
    for (const auto& w : workloads) {
        w.validate();
        if (w.kind == WorkloadKind::File && !std::filesystem::exists(w.path)) {
            throw ConfigError("config: workload file '" + w.path.string() + "' does not exist");
        }
    }
    for (auto p : partition_sizes) {
        if (p < 2) throw ConfigError("config: partition size must be >= 2, got " + std::to_string(p));
        for (auto f : formats) params.validate(p, f);
    }
    cost.validate();
    if (threads < 1) throw ConfigError("config: threads must be >= 1");
}

ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(0, std::string("config: ") + e.what());
    }
    try {
        reject_unknown_keys(j,
                            {"workloads", "formats", "partition_sizes", "cost", "params", "output", "verify_spmv",
                             "per_partition", "threads"},
                            "config");
        ExperimentConfig c;
        for (const auto& w : j.at("workloads")) c.workloads.push_back(parse_workload(w, base_dir));
        if (j.contains("formats")) {
            c.formats.clear();
            for (const auto& f : j.at("formats")) c.formats.push_back(parse_format(f.get<std::string>()));
        }
        if (j.contains("partition_sizes")) c.partition_sizes = j.at("partition_sizes").get<std::vector<std::size_t>>();
        if (j.contains("cost")) c.cost = cost_from_json(j.at("cost"));
        if (j.contains("params")) c.params = params_from_json(j.at("params"));
        if (j.contains("output")) {
            const auto& o = j.at("output");
            reject_unknown_keys(o, {"format", "path"}, "output");
            const auto fmt = get_or<std::string>(o, "format", "csv");
            if (fmt == "csv") {
                c.output_format = OutputFormat::Csv;
            } else if (fmt == "json") {
                c.output_format = OutputFormat::Json;
            } else {
                throw ConfigError("output.format must be csv or json, got '" + fmt + "'");
            }
            c.output_path = get_or<std::string>(o, "path", c.output_format == OutputFormat::Json ? "reports.json"
                                                                                                 : "reports.csv");
        }
        c.verify_spmv = get_or(j, "verify_spmv", c.verify_spmv);
        c.per_partition = get_or(j, "per_partition", c.per_partition);
        c.threads = get_or(j, "threads", c.threads);
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

DenseVector verification_vector(std::size_t n) {
    DenseVector x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = 0.5 + static_cast<double>((j * 7919) % 1000) / 1000.0;
    return x;
}

double max_relative_error(const SparseMatrix& matrix, std::span<const double> x, std::span<const double> y,
                          std::span<const double> reference, std::size_t* worst_row) {
    if (y.size() != reference.size() || y.size() != matrix.n_rows()) throw ShapeError("max_relative_error: sizes");
    std::vector<double> scale(matrix.n_rows(), 0.0);
    for (const auto& t : matrix.entries()) scale[t.row] += std::abs(t.value * x[t.col]);

    double worst = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double diff = std::abs(y[i] - reference[i]);
        if (diff == 0.0) continue;
        const double denom = std::max(std::abs(reference[i]), scale[i]);
        const double err = denom > 0.0 ? diff / denom : diff;
        if (err > worst || std::isnan(err)) {
            worst = err;
            at = i;
        }
    }
    if (worst_row) *worst_row = at;
    return worst;
}

RunReport evaluate(const SparseMatrix& matrix, const std::string& matrix_id, std::size_t p, FormatId format,
                   const FormatParams& params, const CostConfig& cost, std::size_t threads) {
    return evaluate(partition(matrix, p), matrix_id, format, params, cost, threads);
}

RunReport evaluate(const PartitionGrid& grid, const std::string& matrix_id, FormatId format,
                   const FormatParams& params, const CostConfig& cost, std::size_t threads) {
    params.validate(grid.p, format);
    cost.validate();
    RunReport report;
    report.matrix_id = matrix_id;
    report.format = format;
    report.p = grid.p;
    report.per_partition.resize(grid.tiles.size());
    detail::parallel_for(grid.tiles.size(), threads, [&](std::size_t i) {
        report.per_partition[i] = evaluate_partition(encode(grid.tiles[i], format, params), cost);
    });
    if (!report.per_partition.empty()) report.totals = aggregate(report.per_partition, cost);
    return report;
}

std::vector<RunReport> run_experiment(const ExperimentConfig& config, const RunHooks& hooks) {
    config.validate();
    std::vector<RunReport> reports;
    for (const auto& workload : config.workloads) {
        SparseMatrix matrix;
        try {
            matrix = load_workload(workload);
        } catch (const Error& e) {
            throw Error(workload.label() + ": " + e.what());
        }
        DenseVector x;
        DenseVector reference;
        if (config.verify_spmv) {
            x = verification_vector(matrix.n_cols());
            reference = spmv_dense(matrix, x);
        }

        for (auto p : config.partition_sizes) {
            const auto grid = partition(matrix, p);
            for (auto format : config.formats) {
                auto report = evaluate(grid, workload.label(), format, config.params, config.cost, config.threads);
                report.workload_group = workload.group();

                auto& prov = report.provenance;
                prov.emplace_back("kind", workload.group());
                prov.emplace_back("n_rows", std::to_string(matrix.n_rows()));
                prov.emplace_back("n_cols", std::to_string(matrix.n_cols()));
                switch (workload.kind) {
                    case WorkloadKind::Random:
                        prov.emplace_back("density", fmt15(workload.density));
                        prov.emplace_back("seed", std::to_string(workload.seed));
                        break;
                    case WorkloadKind::Band: prov.emplace_back("k", std::to_string(workload.k)); break;
                    case WorkloadKind::File: prov.emplace_back("path", workload.path.string()); break;
                }
                prov.emplace_back("value_width_bytes", std::to_string(config.params.value_width_bytes));
                prov.emplace_back("index_width_bytes", std::to_string(config.params.index_width_bytes));
                prov.emplace_back("bcsr_block", std::to_string(config.params.bcsr_block));
                prov.emplace_back("ell_min_width", std::to_string(config.params.ell_min_width));
                prov.emplace_back("cost", cost_to_json(config.cost).dump());
                prov.emplace_back("t_dot", std::to_string(config.cost.t_dot(p)));

                if (config.verify_spmv) {
                    SpmvOptions options;
                    options.threads = config.threads;
                    options.decoder = hooks.decoder;
                    const auto y = spmv_partitioned(grid, format, config.params, x, options);
                    std::size_t row = 0;
                    const double err = max_relative_error(matrix, x, y, reference, &row);
                    if (!(err <= kSpmvTolerance)) {
                        throw VerificationError(workload.label() + " " + std::string(to_string(format)) + " p=" +
                                                    std::to_string(p) + ": SpMV mismatch at row " +
                                                    std::to_string(row) + ", relative error " + fmt15(err),
                                                row, err);
                    }
                }
                reports.push_back(std::move(report));
            }
        }
    }
    return reports;
}

std::string_view to_string(SummaryMetric metric) noexcept {
    switch (metric) {
        case SummaryMetric::AvgSigma: return "avg_sigma";
        case SummaryMetric::TotalLatency: return "total_latency";
        case SummaryMetric::BalanceCloseness: return "balance_closeness";
        case SummaryMetric::Throughput: return "throughput";
        case SummaryMetric::BandwidthUtilization: return "bandwidth_utilization";
        case SummaryMetric::MemoryLatency: return "memory_latency";
    }
    return "?";
}

bool lower_is_better(SummaryMetric metric) noexcept {
    return metric != SummaryMetric::Throughput && metric != SummaryMetric::BandwidthUtilization;
}

SummaryTable normalize_summary(const std::vector<RunReport>& reports) {
    if (reports.empty()) throw EmptyInputError("normalize_summary: no reports");

    // group -> format -> accumulated row; std::map keeps output ordered.
    std::map<std::string, std::map<int, SummaryRow>> groups;
    for (const auto& r : reports) {
        auto& row = groups[r.workload_group][static_cast<int>(r.format)];
        row.group = r.workload_group;
        row.format = r.format;
        row.reports += 1;
        const auto& t = r.totals;
        row.raw[0] += t.avg_sigma;
        row.raw[1] += static_cast<double>(t.total_latency_cycles);
        row.raw[2] += std::abs(t.balance_ratio - 1.0);
        row.raw[3] += t.throughput_bytes_per_sec;
        row.raw[4] += t.bandwidth_utilization;
        row.raw[5] += static_cast<double>(t.memory_latency_cycles);
        row.mean_balance_ratio += t.balance_ratio;
    }

    SummaryTable table;
    for (auto& [group, by_format] : groups) {
        std::vector<SummaryRow> rows;
        for (auto& [_, row] : by_format) {
            const auto n = static_cast<double>(row.reports);
            for (auto& v : row.raw) v /= n;
            row.mean_balance_ratio /= n;
            rows.push_back(row);
        }
        for (std::size_t m = 0; m < kSummaryMetrics; ++m) {
            double lo = rows.front().raw[m];
            double hi = lo;
            for (const auto& row : rows) {
                lo = std::min(lo, row.raw[m]);
                hi = std::max(hi, row.raw[m]);
            }
            const bool lower = lower_is_better(static_cast<SummaryMetric>(m));
            for (auto& row : rows) {
                if (hi == lo) {
                    row.score[m] = 1.0;
                } else {
                    row.score[m] = lower ? (hi - row.raw[m]) / (hi - lo) : (row.raw[m] - lo) / (hi - lo);
                }
            }
        }
        table.rows.insert(table.rows.end(), rows.begin(), rows.end());
    }
    return table;
}

std::string summary_to_text(const SummaryTable& table) {
    std::ostringstream out;
    out << std::left << std::setw(12) << "group" << std::setw(7) << "format";
    for (std::size_t m = 0; m < kSummaryMetrics; ++m) {
        out << std::right << std::setw(22) << to_string(static_cast<SummaryMetric>(m));
    }
    out << '\n';
    for (const auto& row : table.rows) {
        out << std::left << std::setw(12) << row.group << std::setw(7) << to_string(row.format);
        for (std::size_t m = 0; m < kSummaryMetrics; ++m) {
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(3) << row.score[m] << " (" << std::setprecision(3)
                 << std::scientific << row.raw[m] << ")";
            out << std::right << std::setw(22) << cell.str();
        }
        out << '\n';
    }
    return out.str();
}

std::string summary_to_csv(const SummaryTable& table) {
    std::ostringstream out;
    out << "group,format,reports,mean_balance_ratio";
    for (std::size_t m = 0; m < kSummaryMetrics; ++m) out << ',' << to_string(static_cast<SummaryMetric>(m)) << "_raw";
    for (std::size_t m = 0; m < kSummaryMetrics; ++m) {
        out << ',' << to_string(static_cast<SummaryMetric>(m)) << "_score";
    }
    out << '\n';
    for (const auto& row : table.rows) {
        out << row.group << ',' << to_string(row.format) << ',' << row.reports << ',' << fmt15(row.mean_balance_ratio);
        for (double v : row.raw) out << ',' << fmt15(v);
        for (double v : row.score) out << ',' << fmt15(v);
        out << '\n';
    }
    return out.str();
}

std::string reports_to_csv(const std::vector<RunReport>& reports) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : reports) {
        const auto& t = r.totals;
        out << r.matrix_id << ',' << r.workload_group << ',' << to_string(r.format) << ',' << r.p << ','
            << count_or_provenance(r, "partitions", nullptr) << ',' << t.total_latency_cycles << ',' << t.memory_latency_cycles << ','
            << t.compute_latency_cycles << ',' << fmt15(t.balance_ratio) << ',' << fmt15(t.throughput_bytes_per_sec)
            << ',' << fmt15(t.bandwidth_utilization) << ',' << fmt15(t.avg_sigma) << ',' << count_or_provenance(r, "bytes_total", &PartitionMetrics::bytes_total) << ','
            << count_or_provenance(r, "bytes_useful", &PartitionMetrics::bytes_useful) << ',' << count_or_provenance(r, "nnz", &PartitionMetrics::nnz) << '\n';
    }
    return out.str();
}

std::vector<RunReport> reports_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw ParseError(1, "CSV header does not match report schema");
    std::vector<RunReport> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 15) throw ParseError(line_no, "expected 15 fields, found " + std::to_string(f.size()));
        try {
            RunReport r;
            r.matrix_id = f[0];
            r.workload_group = f[1];
            r.format = parse_format(f[2]);
            r.p = std::stoull(f[3]);
            const CsvTotals totals{std::stoull(f[4]), std::stoull(f[12]), std::stoull(f[13]), std::stoull(f[14])};
            r.totals.total_latency_cycles = std::stoull(f[5]);
            r.totals.memory_latency_cycles = std::stoull(f[6]);
            r.totals.compute_latency_cycles = std::stoull(f[7]);
            r.totals.balance_ratio = std::stod(f[8]);
            r.totals.throughput_bytes_per_sec = std::stod(f[9]);
            r.totals.bandwidth_utilization = std::stod(f[10]);
            r.totals.avg_sigma = std::stod(f[11]);
            r.provenance.emplace_back("partitions", std::to_string(totals.partitions));
            r.provenance.emplace_back("bytes_total", std::to_string(totals.bytes_total));
            r.provenance.emplace_back("bytes_useful", std::to_string(totals.bytes_useful));
            r.provenance.emplace_back("nnz", std::to_string(totals.nnz));
            out.push_back(std::move(r));
        } catch (const std::logic_error& e) {
            throw ParseError(line_no, std::string("bad CSV field: ") + e.what());
        }
    }
    return out;
}

std::string reports_to_json(const std::vector<RunReport>& reports, bool per_partition) {
    json arr = json::array();
    for (const auto& r : reports) {
        const auto& t = r.totals;
        json j{{"matrix_id", r.matrix_id},
               {"workload_group", r.workload_group},
               {"format", std::string(to_string(r.format))},
               {"p", r.p},
               {"partitions", r.per_partition.size()},
               {"total_latency_cycles", t.total_latency_cycles},
               {"memory_latency_cycles", t.memory_latency_cycles},
               {"compute_latency_cycles", t.compute_latency_cycles},
               {"balance_ratio", t.balance_ratio},
               {"throughput_bytes_per_sec", t.throughput_bytes_per_sec},
               {"bandwidth_utilization", t.bandwidth_utilization},
               {"avg_sigma", t.avg_sigma}};
        json prov = json::array();
        for (const auto& [k, v] : r.provenance) prov.push_back(json::array({k, v}));
        j["provenance"] = prov;
        if (per_partition) {
            json parts = json::array();
            for (const auto& m : r.per_partition) parts.push_back(metrics_to_json(m));
            j["per_partition"] = parts;
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::vector<RunReport> reports_from_json(std::string_view text) {
    try {
        const auto arr = json::parse(text);
        std::vector<RunReport> out;
        for (const auto& j : arr) {
            RunReport r;
            r.matrix_id = j.at("matrix_id").get<std::string>();
            r.workload_group = j.at("workload_group").get<std::string>();
            r.format = parse_format(j.at("format").get<std::string>());
            r.p = j.at("p").get<std::size_t>();
            auto& t = r.totals;
            t.total_latency_cycles = j.at("total_latency_cycles").get<Cycles>();
            t.memory_latency_cycles = j.at("memory_latency_cycles").get<Cycles>();
            t.compute_latency_cycles = j.at("compute_latency_cycles").get<Cycles>();
            t.balance_ratio = j.at("balance_ratio").get<double>();
            t.throughput_bytes_per_sec = j.at("throughput_bytes_per_sec").get<double>();
            t.bandwidth_utilization = j.at("bandwidth_utilization").get<double>();
            t.avg_sigma = j.at("avg_sigma").get<double>();
            for (const auto& kv : j.at("provenance")) {
                r.provenance.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
            }
            if (j.contains("per_partition")) {
                for (const auto& m : j.at("per_partition")) r.per_partition.push_back(metrics_from_json(m));
            }
            out.push_back(std::move(r));
        }
        return out;
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("report JSON: ") + e.what());
    }
}

std::vector<RunReport> read_reports(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open report '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return path.extension() == ".json" ? reports_from_json(buf.str()) : reports_from_csv(buf.str());
}

void emit_report(const std::vector<RunReport>& reports, OutputFormat format, const std::filesystem::path& path,
                 bool per_partition) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write report '" + path.string() + "'");
    out << (format == OutputFormat::Csv ? reports_to_csv(reports) : reports_to_json(reports, per_partition));
    if (!out) throw IoError("write failed for report '" + path.string() + "'");
}

std::filesystem::path resolve_output_path(const std::filesystem::path& path) {
    if (path.is_absolute()) return path;
    if (const char* dir = std::getenv("SPARSEFMT_OUTPUT_DIR"); dir && *dir) return std::filesystem::path(dir) / path;
    return path;
}

}  // namespace sparsefmt
