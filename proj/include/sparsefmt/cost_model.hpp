#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sparsefmt/formats.hpp"

namespace sparsefmt {

using Cycles = std::uint64_t;

// Latency constants of the streaming decompress -> dot-product pipeline.
// Everything except the clock is a modelling knob, not a measured figure.
struct CostConfig {
    std::optional<Cycles> dot_cycles;  // unset: ceil(log2 p) + 2
    Cycles offset_access_cycles = 2;   // one read of an offsets entry
    Cycles sequential_element_cycles = 1;
    Cycles scan_cycles = 1;            // one candidate inspected while searching
    Cycles assign_cycles = 1;
    Cycles parallel_row_fetch_cycles = 2;
    std::uint64_t bus_bytes_per_cycle = 8;  // per stream
    double clock_hz = 250e6;

    // Latency of one width-p dot product.
    Cycles t_dot(std::size_t p) const;
    // Throws ConfigError unless every constant is strictly positive.
    void validate() const;

    friend bool operator==(const CostConfig&, const CostConfig&) = default;
};

struct LatencyBreakdown {
    Cycles t_decomp = 0;
    Cycles compute = 0;
    std::size_t emitted_rows = 0;
};

// compute = t_decomp + emitted_rows * t_dot, with t_decomp per format:
//   DENSE  0
//   CSR    sum over non-zero rows of (offset access + nnz(row) * sequential)
//   BCSR   sum over non-zero block-rows of (offset access + blocks * sequential)
//   CSC    p * nnz * scan          (every column searched for every row)
//   LIL    (nnz_rows + 1) * row fetch
//   ELL    p * assign              (independent of density and width)
//   COO    nnz * assign
//   DIA    p * stored_diagonals * scan
LatencyBreakdown compute_latency(const EncodedPartition& enc, const CostConfig& cfg);

// Each array is its own stream; the slowest stream bounds the transfer.
Cycles memory_latency(const EncodedPartition& enc, const CostConfig& cfg);

struct PartitionMetrics {
    Index grid_row = 0;
    Index grid_col = 0;
    Cycles mem_cycles = 0;
    Cycles compute_cycles = 0;
    Cycles t_decomp_cycles = 0;
    double sigma = 0.0;
    std::size_t bytes_total = 0;
    std::size_t bytes_useful = 0;
    std::size_t nnz = 0;
    std::size_t nnz_rows = 0;
    std::size_t emitted_rows = 0;

    friend bool operator==(const PartitionMetrics&, const PartitionMetrics&) = default;
};

// Decompression overhead relative to streaming the dense tile:
// (t_decomp + emitted_rows * t_dot) / (p * t_dot).
double sigma(const PartitionMetrics& m, std::size_t p, const CostConfig& cfg);

PartitionMetrics evaluate_partition(const EncodedPartition& enc, const CostConfig& cfg);

struct Aggregates {
    Cycles total_latency_cycles = 0;
    Cycles memory_latency_cycles = 0;
    Cycles compute_latency_cycles = 0;
    double balance_ratio = 0.0;
    double throughput_bytes_per_sec = 0.0;
    double bandwidth_utilization = 0.0;
    double avg_sigma = 0.0;

    friend bool operator==(const Aggregates&, const Aggregates&) = default;
};

// Throws EmptyInputError on an empty list.
Aggregates aggregate(std::span<const PartitionMetrics> per_partition, const CostConfig& cfg);

struct RunReport {
    std::string matrix_id;
    std::string workload_group;
    FormatId format = FormatId::Dense;
    std::size_t p = 0;
    std::vector<PartitionMetrics> per_partition;
    Aggregates totals;
    // Ordered key/value run settings (seed, path, cost constants, ...).
    std::vector<std::pair<std::string, std::string>> provenance;
};

}  // namespace sparsefmt
