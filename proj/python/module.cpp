#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sparsefmt/bench.hpp"
#include "sparsefmt/errors.hpp"

namespace py = pybind11;
namespace sf = sparsefmt;

namespace {

sf::SparseMatrix matrix_from(std::size_t n_rows, std::size_t n_cols,
                             const std::vector<std::tuple<sf::Index, sf::Index, double>>& triplets) {
    std::vector<sf::Triplet> t;
    t.reserve(triplets.size());
    for (const auto& [r, c, v] : triplets) t.push_back({r, c, v});
    return sf::build_matrix(n_rows, n_cols, std::move(t));
}

std::vector<std::tuple<sf::Index, sf::Index, double>> triplets_of(const sf::SparseMatrix& m) {
    std::vector<std::tuple<sf::Index, sf::Index, double>> out;
    out.reserve(m.nnz());
    for (const auto& t : m.entries()) out.emplace_back(t.row, t.col, t.value);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sparse formats, partitioned SpMV and the streaming cost model";

    auto error = py::register_exception<sf::Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<sf::BoundsError>(m, "BoundsError", error.ptr());
    py::register_exception<sf::ConfigError>(m, "ConfigError", error.ptr());
    py::register_exception<sf::EmptyInputError>(m, "EmptyInputError", error.ptr());
    py::register_exception<sf::ShapeError>(m, "ShapeError", error.ptr());
    py::register_exception<sf::UnsupportedFormatError>(m, "UnsupportedFormatError", error.ptr());
    py::register_exception<sf::IoError>(m, "IoError", error.ptr());
    py::register_exception<sf::CorruptionError>(m, "CorruptionError", error.ptr());
    py::register_exception<sf::ParseError>(m, "ParseError", error.ptr());
    py::register_exception<sf::VerificationError>(m, "VerificationError", error.ptr());

    py::class_<sf::SparseMatrix>(m, "SparseMatrix")
        .def_property_readonly("n_rows", &sf::SparseMatrix::n_rows)
        .def_property_readonly("n_cols", &sf::SparseMatrix::n_cols)
        .def_property_readonly("nnz", &sf::SparseMatrix::nnz)
        .def("triplets", &triplets_of, "Entries as (row, col, value), row-major")
        .def("__eq__", [](const sf::SparseMatrix& a, const sf::SparseMatrix& b) { return a == b; })
        .def("__repr__", [](const sf::SparseMatrix& a) {
            return "<SparseMatrix " + std::to_string(a.n_rows()) + "x" + std::to_string(a.n_cols()) +
                   " nnz=" + std::to_string(a.nnz()) + ">";
        });
    m.def("build_matrix", &matrix_from, py::arg("n_rows"), py::arg("n_cols"), py::arg("triplets"));

    py::class_<sf::Partition>(m, "Partition")
        .def_readonly("grid_row", &sf::Partition::grid_row)
        .def_readonly("grid_col", &sf::Partition::grid_col)
        .def_readonly("p", &sf::Partition::p)
        .def_readonly("values", &sf::Partition::values)
        .def("nnz", &sf::Partition::nnz)
        .def("nnz_rows", &sf::Partition::nnz_rows)
        .def("__eq__", [](const sf::Partition& a, const sf::Partition& b) { return a == b; });

    py::class_<sf::PartitionGrid>(m, "PartitionGrid")
        .def_readonly("n_rows", &sf::PartitionGrid::n_rows)
        .def_readonly("n_cols", &sf::PartitionGrid::n_cols)
        .def_readonly("p", &sf::PartitionGrid::p)
        .def_property_readonly("shape",
                               [](const sf::PartitionGrid& g) { return py::make_tuple(g.shape.tile_rows, g.shape.tile_cols); })
        .def_readonly("tiles", &sf::PartitionGrid::tiles);
    m.def("partition", &sf::partition, py::arg("matrix"), py::arg("p"));
    m.def("reconstruct", &sf::reconstruct, py::arg("grid"));
    m.def("density_stats", [](const sf::PartitionGrid& g) {
        const auto s = sf::density_stats(g);
        return py::make_tuple(s.avg_partition_density, s.avg_row_density, s.avg_nonzero_row_fraction);
    });

    py::enum_<sf::FormatId>(m, "Format")
        .value("DENSE", sf::FormatId::Dense)
        .value("CSR", sf::FormatId::Csr)
        .value("CSC", sf::FormatId::Csc)
        .value("BCSR", sf::FormatId::Bcsr)
        .value("COO", sf::FormatId::Coo)
        .value("LIL", sf::FormatId::Lil)
        .value("ELL", sf::FormatId::Ell)
        .value("DIA", sf::FormatId::Dia);
    m.def("parse_format", &sf::parse_format);
    m.attr("ALL_FORMATS") = std::vector<sf::FormatId>(sf::kAllFormats.begin(), sf::kAllFormats.end());

    py::class_<sf::FormatParams>(m, "FormatParams")
        .def(py::init<>())
        .def_readwrite("value_width_bytes", &sf::FormatParams::value_width_bytes)
        .def_readwrite("index_width_bytes", &sf::FormatParams::index_width_bytes)
        .def_readwrite("bcsr_block", &sf::FormatParams::bcsr_block)
        .def_readwrite("ell_min_width", &sf::FormatParams::ell_min_width);

    py::class_<sf::NamedArray>(m, "NamedArray")
        .def_readonly("name", &sf::NamedArray::name)
        .def_readonly("data", &sf::NamedArray::data)
        .def("bytes", &sf::NamedArray::bytes);

    py::class_<sf::EncodedPartition>(m, "EncodedPartition")
        .def_readonly("format", &sf::EncodedPartition::format)
        .def_readonly("p", &sf::EncodedPartition::p)
        .def_readonly("nnz", &sf::EncodedPartition::nnz)
        .def_readonly("nnz_rows", &sf::EncodedPartition::nnz_rows)
        .def_readonly("ell_width", &sf::EncodedPartition::ell_width)
        .def_readonly("arrays", &sf::EncodedPartition::arrays)
        .def("array", py::overload_cast<std::string_view>(&sf::EncodedPartition::array, py::const_),
             py::return_value_policy::reference_internal)
        .def("total_bytes", &sf::EncodedPartition::total_bytes)
        .def("useful_bytes", &sf::EncodedPartition::useful_bytes);

    m.def("encode", &sf::encode, py::arg("tile"), py::arg("format"), py::arg("params") = sf::FormatParams{});
    m.def("decode", &sf::decode, py::arg("encoded"));
    m.def("decode_rows", [](const sf::EncodedPartition& e) {
        std::vector<std::pair<sf::Index, std::vector<double>>> out;
        for (auto& r : sf::decode_rows(e)) out.emplace_back(r.row, std::move(r.values));
        return out;
    });
    m.def("dump", &sf::dump);

    m.def("dot", [](const std::vector<double>& a, const std::vector<double>& b) { return sf::dot(a, b); });
    m.def("spmv_dense", [](const sf::SparseMatrix& a, const std::vector<double>& x) { return sf::spmv_dense(a, x); });
    m.def(
        "spmv_partitioned",
        [](const sf::PartitionGrid& g, sf::FormatId f, const std::vector<double>& x, const sf::FormatParams& params,
           std::size_t threads) {
            sf::SpmvOptions opts;
            opts.threads = threads;
            return sf::spmv_partitioned(g, f, params, x, opts);
        },
        py::arg("grid"), py::arg("format"), py::arg("x"), py::arg("params") = sf::FormatParams{},
        py::arg("threads") = 1);

    py::class_<sf::CostConfig>(m, "CostConfig")
        .def(py::init<>())
        .def_readwrite("dot_cycles", &sf::CostConfig::dot_cycles)
        .def_readwrite("offset_access_cycles", &sf::CostConfig::offset_access_cycles)
        .def_readwrite("sequential_element_cycles", &sf::CostConfig::sequential_element_cycles)
        .def_readwrite("scan_cycles", &sf::CostConfig::scan_cycles)
        .def_readwrite("assign_cycles", &sf::CostConfig::assign_cycles)
        .def_readwrite("parallel_row_fetch_cycles", &sf::CostConfig::parallel_row_fetch_cycles)
        .def_readwrite("bus_bytes_per_cycle", &sf::CostConfig::bus_bytes_per_cycle)
        .def_readwrite("clock_hz", &sf::CostConfig::clock_hz)
        .def("t_dot", &sf::CostConfig::t_dot);

    py::class_<sf::PartitionMetrics>(m, "PartitionMetrics")
        .def_readonly("grid_row", &sf::PartitionMetrics::grid_row)
        .def_readonly("grid_col", &sf::PartitionMetrics::grid_col)
        .def_readonly("mem_cycles", &sf::PartitionMetrics::mem_cycles)
        .def_readonly("compute_cycles", &sf::PartitionMetrics::compute_cycles)
        .def_readonly("t_decomp_cycles", &sf::PartitionMetrics::t_decomp_cycles)
        .def_readonly("sigma", &sf::PartitionMetrics::sigma)
        .def_readonly("bytes_total", &sf::PartitionMetrics::bytes_total)
        .def_readonly("bytes_useful", &sf::PartitionMetrics::bytes_useful)
        .def_readonly("nnz", &sf::PartitionMetrics::nnz)
        .def_readonly("emitted_rows", &sf::PartitionMetrics::emitted_rows);
    m.def("memory_latency", &sf::memory_latency, py::arg("encoded"), py::arg("cost") = sf::CostConfig{});
    m.def("evaluate_partition", &sf::evaluate_partition, py::arg("encoded"), py::arg("cost") = sf::CostConfig{});

    py::class_<sf::Aggregates>(m, "Aggregates")
        .def_readonly("total_latency_cycles", &sf::Aggregates::total_latency_cycles)
        .def_readonly("memory_latency_cycles", &sf::Aggregates::memory_latency_cycles)
        .def_readonly("compute_latency_cycles", &sf::Aggregates::compute_latency_cycles)
        .def_readonly("balance_ratio", &sf::Aggregates::balance_ratio)
        .def_readonly("throughput_bytes_per_sec", &sf::Aggregates::throughput_bytes_per_sec)
        .def_readonly("bandwidth_utilization", &sf::Aggregates::bandwidth_utilization)
        .def_readonly("avg_sigma", &sf::Aggregates::avg_sigma);
    m.def("aggregate", [](const std::vector<sf::PartitionMetrics>& v, const sf::CostConfig& c) { return sf::aggregate(v, c); },
          py::arg("metrics"), py::arg("cost") = sf::CostConfig{});

    py::class_<sf::RunReport>(m, "RunReport")
        .def_readonly("matrix_id", &sf::RunReport::matrix_id)
        .def_readonly("workload_group", &sf::RunReport::workload_group)
        .def_readonly("format", &sf::RunReport::format)
        .def_readonly("p", &sf::RunReport::p)
        .def_readonly("per_partition", &sf::RunReport::per_partition)
        .def_readonly("totals", &sf::RunReport::totals)
        .def_readonly("provenance", &sf::RunReport::provenance);

    m.def("gen_random", &sf::gen_random, py::arg("n"), py::arg("density"), py::arg("seed") = 0);
    m.def("gen_band", &sf::gen_band, py::arg("n"), py::arg("k"));
    m.def("read_matrix_market", py::overload_cast<const std::filesystem::path&>(&sf::read_matrix_market));
    m.def("write_matrix_market",
          py::overload_cast<const std::filesystem::path&, const sf::SparseMatrix&>(&sf::write_matrix_market));

    m.def(
        "evaluate",
        [](const sf::SparseMatrix& a, const std::string& id, std::size_t p, sf::FormatId f,
           const sf::FormatParams& params, const sf::CostConfig& cost, std::size_t threads) {
            return sf::evaluate(a, id, p, f, params, cost, threads);
        },
        py::arg("matrix"), py::arg("matrix_id"), py::arg("p"), py::arg("format"),
        py::arg("params") = sf::FormatParams{}, py::arg("cost") = sf::CostConfig{}, py::arg("threads") = 1);
    m.def(
        "run_experiment_json",
        [](const std::string& json_text, const std::filesystem::path& base_dir) {
            return sf::run_experiment(sf::parse_config(json_text, base_dir));
        },
        py::arg("config_json"), py::arg("base_dir") = std::filesystem::path{});
    m.def("reports_to_csv", &sf::reports_to_csv);
    m.def("reports_to_json", &sf::reports_to_json, py::arg("reports"), py::arg("per_partition") = false);
}
