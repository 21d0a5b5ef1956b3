#include "sparsefmt/cost_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sparsefmt/errors.hpp"

namespace sparsefmt {

Cycles CostConfig::t_dot(std::size_t p) const {
    if (dot_cycles) return *dot_cycles;
    // ceil(log2 p) adder-tree levels plus multiply and write-back
    return static_cast<Cycles>(std::bit_width(p > 1 ? p - 1 : 0)) + 2;
}

void CostConfig::validate() const {
    if ((dot_cycles && *dot_cycles == 0) || offset_access_cycles == 0 || sequential_element_cycles == 0 ||
        scan_cycles == 0 || assign_cycles == 0 || parallel_row_fetch_cycles == 0 || bus_bytes_per_cycle == 0 ||
        !(clock_hz > 0.0)) {
        throw ConfigError("cost constants must be strictly positive");
    }
}

namespace {

std::vector<Cycles> integer_elements(const NamedArray& a) {
    std::vector<Cycles> out(a.data.size());
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        if (!(a.data[i] >= 0.0)) throw CorruptionError(a.name, "negative count");
        out[i] = static_cast<Cycles>(a.data[i]);
    }
    return out;
}

std::size_t stored_diagonals(const EncodedPartition& enc) {
    const auto& diags = enc.array("diags");
    std::size_t count = 0;
    for (std::size_t i = 0; i < diags.data.size(); ++i) count += diags.is_metadata(i) ? 1 : 0;
    return count;
}

}  // namespace

LatencyBreakdown compute_latency(const EncodedPartition& enc, const CostConfig& cfg) {
    const Cycles p = enc.p;
    const Cycles nnz = enc.nnz;
    Cycles t_decomp = 0;
    switch (enc.format) {
        case FormatId::Dense: break;
        case FormatId::Csr:
            for (Cycles n : integer_elements(enc.array("offsets"))) {
                if (n > 0) t_decomp += cfg.offset_access_cycles + n * cfg.sequential_element_cycles;
            }
            break;
        case FormatId::Bcsr:
            for (Cycles blocks : integer_elements(enc.array("offsets"))) {
                if (blocks > 0) t_decomp += cfg.offset_access_cycles + blocks * cfg.sequential_element_cycles;
            }
            break;
        case FormatId::Csc: t_decomp = p * nnz * cfg.scan_cycles; break;
        case FormatId::Lil: t_decomp = (enc.nnz_rows + 1) * cfg.parallel_row_fetch_cycles; break;
        case FormatId::Ell: t_decomp = p * cfg.assign_cycles; break;
        case FormatId::Coo: t_decomp = nnz * cfg.assign_cycles; break;
        case FormatId::Dia: t_decomp = p * stored_diagonals(enc) * cfg.scan_cycles; break;
    }
    LatencyBreakdown out;
    out.t_decomp = t_decomp;
    out.emitted_rows = emitted_row_count(enc);
    out.compute = t_decomp + out.emitted_rows * cfg.t_dot(enc.p);
    return out;
}

Cycles memory_latency(const EncodedPartition& enc, const CostConfig& cfg) {
    Cycles worst = 0;
    for (const auto& a : enc.arrays) {
        const Cycles bytes = a.bytes();
        worst = std::max(worst, (bytes + cfg.bus_bytes_per_cycle - 1) / cfg.bus_bytes_per_cycle);
    }
    return worst;
}

double sigma(const PartitionMetrics& m, std::size_t p, const CostConfig& cfg) {
    if (p < 2) throw ConfigError("sigma: p must be >= 2");
    const auto t_dot = static_cast<double>(cfg.t_dot(p));
    return (static_cast<double>(m.t_decomp_cycles) + static_cast<double>(m.emitted_rows) * t_dot) /
           (static_cast<double>(p) * t_dot);
}

PartitionMetrics evaluate_partition(const EncodedPartition& enc, const CostConfig& cfg) {
    const auto latency = compute_latency(enc, cfg);
    PartitionMetrics m;
    m.grid_row = enc.grid_row;
    m.grid_col = enc.grid_col;
    m.mem_cycles = memory_latency(enc, cfg);
    m.compute_cycles = latency.compute;
    m.t_decomp_cycles = latency.t_decomp;
    m.bytes_total = enc.total_bytes();
    m.bytes_useful = enc.useful_bytes();
    m.nnz = enc.nnz;
    m.nnz_rows = enc.nnz_rows;
    m.emitted_rows = latency.emitted_rows;
    m.sigma = sigma(m, enc.p, cfg);
    return m;
}

Aggregates aggregate(std::span<const PartitionMetrics> per_partition, const CostConfig& cfg) {
    if (per_partition.empty()) throw EmptyInputError("aggregate: no partitions");

    Aggregates a;
    double balance_sum = 0.0;
    double sigma_sum = 0.0;
    std::size_t bytes_total = 0;
    std::size_t bytes_useful = 0;
    for (const auto& m : per_partition) {
        a.total_latency_cycles += std::max(m.mem_cycles, m.compute_cycles);
        a.memory_latency_cycles += m.mem_cycles;
        a.compute_latency_cycles += m.compute_cycles;
        balance_sum += static_cast<double>(m.mem_cycles) / static_cast<double>(m.compute_cycles);
        sigma_sum += m.sigma;
        bytes_total += m.bytes_total;
        bytes_useful += m.bytes_useful;
    }
    const auto count = static_cast<double>(per_partition.size());
    a.balance_ratio = balance_sum / count;
    a.avg_sigma = sigma_sum / count;
    a.bandwidth_utilization =
        bytes_total ? static_cast<double>(bytes_useful) / static_cast<double>(bytes_total) : 0.0;
    a.throughput_bytes_per_sec =
        a.total_latency_cycles
            ? static_cast<double>(bytes_total) / (static_cast<double>(a.total_latency_cycles) / cfg.clock_hz)
            : 0.0;
    return a;
}

}  // namespace sparsefmt
