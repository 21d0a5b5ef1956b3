#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sparsefmt/cost_model.hpp"
#include "sparsefmt/formats.hpp"
#include "sparsefmt/spmv.hpp"
#include "sparsefmt/workloads.hpp"

namespace sparsefmt {

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    std::vector<WorkloadSpec> workloads;
    std::vector<FormatId> formats{kAllFormats.begin(), kAllFormats.end()};
    std::vector<std::size_t> partition_sizes{8, 16, 32};
    CostConfig cost;
    FormatParams params;
    OutputFormat output_format = OutputFormat::Csv;
    std::filesystem::path output_path = "reports.csv";
    bool verify_spmv = false;
    bool per_partition = false;
    std::size_t threads = 1;

    // Throws ConfigError (empty lists, bad sizes, missing files, ...).
    void validate() const;
};

// JSON document whose keys mirror the ExperimentConfig fields. Relative
// workload paths are resolved against `base_dir`.
ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// Fault-injection seam: replaces the decoder used by SpMV verification.
struct RunHooks {
    RowDecoder decoder;
};

// Relative tolerance of the SpMV check.
inline constexpr double kSpmvTolerance = 1e-9;

// Deterministic, strictly positive operand used for verification.
DenseVector verification_vector(std::size_t n);

// max_i |y_i - ref_i| / max(|ref_i|, sum_j |a_ij x_j|); 0 where both are 0.
// Reports the worst row through `worst_row` when non-null.
double max_relative_error(const SparseMatrix& matrix, std::span<const double> x, std::span<const double> y,
                          std::span<const double> reference, std::size_t* worst_row = nullptr);

// One report per (workload, p, format), in that nesting order.
// Throws VerificationError when verify_spmv is set and a codec disagrees with
// the dense reference.
std::vector<RunReport> run_experiment(const ExperimentConfig& config, const RunHooks& hooks = {});

// Cost-model metrics of one (matrix, format, p) triple. Tiles are evaluated
// on `threads` workers; metrics keep the grid's row-major tile order.
RunReport evaluate(const PartitionGrid& grid, const std::string& matrix_id, FormatId format,
                   const FormatParams& params, const CostConfig& cost, std::size_t threads = 1);
RunReport evaluate(const SparseMatrix& matrix, const std::string& matrix_id, std::size_t p, FormatId format,
                   const FormatParams& params, const CostConfig& cost, std::size_t threads = 1);

enum class SummaryMetric {
    AvgSigma,
    TotalLatency,
    BalanceCloseness,
    Throughput,
    BandwidthUtilization,
    MemoryLatency,
};

inline constexpr std::size_t kSummaryMetrics = 6;
std::string_view to_string(SummaryMetric metric) noexcept;
bool lower_is_better(SummaryMetric metric) noexcept;

struct SummaryRow {
    std::string group;
    FormatId format = FormatId::Dense;
    std::size_t reports = 0;
    // Means over the group's reports; BalanceCloseness is mean |ratio - 1|.
    std::array<double, kSummaryMetrics> raw{};
    // 1 = best, 0 = worst within the group.
    std::array<double, kSummaryMetrics> score{};
    double mean_balance_ratio = 0.0;
};

struct SummaryTable {
    std::vector<SummaryRow> rows;
};

// Groups by RunReport::workload_group, min-max scales each metric across the
// formats of a group. Throws EmptyInputError on an empty report list.
SummaryTable normalize_summary(const std::vector<RunReport>& reports);

std::string summary_to_text(const SummaryTable& table);
std::string summary_to_csv(const SummaryTable& table);

// Fixed column order; doubles printed with 15 significant digits.
inline constexpr std::string_view kCsvHeader =
    "workload,group,format,p,partitions,total_latency_cycles,memory_latency_cycles,compute_latency_cycles,"
    "balance_ratio,throughput_bytes_per_sec,bandwidth_utilization,avg_sigma,bytes_total,bytes_useful,nnz";

std::string reports_to_csv(const std::vector<RunReport>& reports);
std::string reports_to_json(const std::vector<RunReport>& reports, bool per_partition);
std::vector<RunReport> reports_from_csv(std::string_view text);
std::vector<RunReport> reports_from_json(std::string_view text);
// Dispatches on extension (.json, otherwise CSV).
std::vector<RunReport> read_reports(const std::filesystem::path& path);

// Writes the reports; throws IoError naming the path.
void emit_report(const std::vector<RunReport>& reports, OutputFormat format, const std::filesystem::path& path,
                 bool per_partition = false);

// Relative output paths resolve against $SPARSEFMT_OUTPUT_DIR when set.
std::filesystem::path resolve_output_path(const std::filesystem::path& path);

}  // namespace sparsefmt
