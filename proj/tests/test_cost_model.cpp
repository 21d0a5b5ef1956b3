#include <doctest.h>

#include "sparsefmt/cost_model.hpp"
#include "sparsefmt/errors.hpp"
#include "sparsefmt/workloads.hpp"

using namespace sparsefmt;

namespace {

Partition full_tile(std::size_t p) {
    auto t = make_partition(p);
    for (auto& v : t.values) v = 1.0;
    return t;
}

Partition first_entries(std::size_t p, std::size_t count) {
    auto t = make_partition(p);
    for (std::size_t i = 0; i < count; ++i) t.values[i] = 1.0 + static_cast<double>(i);
    return t;
}

}  // namespace

TEST_CASE("dot latency") {
    const CostConfig cfg;
    CHECK(cfg.t_dot(8) == 5);
    CHECK(cfg.t_dot(16) == 6);
    CHECK(cfg.t_dot(32) == 7);
    CHECK(cfg.t_dot(12) == 6);
    CostConfig fixed;
    fixed.dot_cycles = 3;
    CHECK(fixed.t_dot(32) == 3);
}

TEST_CASE("config validation") {
    CostConfig c;
    CHECK_NOTHROW(c.validate());
    c.bus_bytes_per_cycle = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CostConfig d;
    d.clock_hz = 0.0;
    CHECK_THROWS_AS(d.validate(), ConfigError);
    CostConfig e;
    e.dot_cycles = 0;
    CHECK_THROWS_AS(e.validate(), ConfigError);
}

TEST_CASE("latency examples") {
    const CostConfig cfg;
    SUBCASE("DENSE p=8") {
        const auto e = encode(full_tile(8), FormatId::Dense);
        const auto l = compute_latency(e, cfg);
        CHECK(l.t_decomp == 0);
        CHECK(l.compute == 40);
        CHECK(memory_latency(e, cfg) == 32);
        CHECK(evaluate_partition(e, cfg).sigma == 1.0);
    }
    SUBCASE("CSR nnz=20 at p=16") {
        const auto e = encode(first_entries(16, 20), FormatId::Csr);
        CHECK(memory_latency(e, cfg) == 10);
        const auto l = compute_latency(e, cfg);
        // rows 0 and 1: (2 + 16) + (2 + 4)
        CHECK(l.t_decomp == 24);
        CHECK(l.emitted_rows == 2);
        CHECK(l.compute == 24 + 2 * 6);
    }
    SUBCASE("BCSR streams are bounded by the values array") {
        const auto e = encode(first_entries(16, 20), FormatId::Bcsr);
        // one block-row holding four 4x4 blocks: 64 values of 4 bytes
        CHECK(e.array("values").bytes() == 256);
        CHECK(memory_latency(e, cfg) == 32);
        CHECK(compute_latency(e, cfg).t_decomp == 2 + 4);
    }
    SUBCASE("CSC full tile at p=8") {
        const auto e = encode(full_tile(8), FormatId::Csc);
        const auto l = compute_latency(e, cfg);
        CHECK(l.t_decomp == 8 * 64);
        CHECK(l.compute == 512 + 8 * 5);
    }
    SUBCASE("CSC full tile at p=16: sigma about 22") {
        const auto m = evaluate_partition(encode(full_tile(16), FormatId::Csc), cfg);
        CHECK(m.t_decomp_cycles == 16 * 256);
        CHECK(m.sigma == doctest::Approx((4096.0 + 96.0) / 96.0));
    }
    SUBCASE("CSC p=16 tile at density 0.5") {
        const auto grid = partition(gen_random(16, 0.5, 42), 16);
        REQUIRE(grid.tiles.size() == 1);
        const auto& t = grid.tiles[0];
        REQUIRE(t.nnz() == 128);
        const auto m = evaluate_partition(encode(t, FormatId::Csc), cfg);
        CHECK(m.t_decomp_cycles == 2048);
        CHECK(m.compute_cycles == 2048 + t.nnz_rows() * 6);
        CHECK(m.sigma == doctest::Approx((2048.0 + 6.0 * static_cast<double>(t.nnz_rows())) / 96.0));
        CHECK(m.sigma > 21.0);
    }
    SUBCASE("ELL decompression ignores density and width") {
        for (std::size_t count : {1u, 20u, 120u, 256u}) {
            const auto e = encode(first_entries(16, count), FormatId::Ell);
            const auto l = compute_latency(e, cfg);
            CHECK(l.t_decomp == 16);
            CHECK(l.compute == 16 + 16 * 6);
        }
    }
    SUBCASE("COO, LIL and DIA") {
        const auto t = first_entries(8, 10);  // rows 0 (8 entries) and 1 (2 entries)
        CHECK(compute_latency(encode(t, FormatId::Coo), cfg).t_decomp == 10);
        CHECK(compute_latency(encode(t, FormatId::Lil), cfg).t_decomp == 3 * 2);
        // diagonals -1..7 are occupied: 9 of them
        CHECK(compute_latency(encode(t, FormatId::Dia), cfg).t_decomp == 8 * 9);
    }
    SUBCASE("bus width rounds up") {
        CostConfig narrow;
        narrow.bus_bytes_per_cycle = 3;
        const auto e = encode(first_entries(8, 1), FormatId::Coo);  // 12 bytes
        CHECK(memory_latency(e, narrow) == 4);
        narrow.bus_bytes_per_cycle = 5;
        CHECK(memory_latency(e, narrow) == 3);
    }
}

TEST_CASE("sigma formula") {
    const CostConfig cfg;
    PartitionMetrics m;
    m.t_decomp_cycles = 0;
    m.emitted_rows = 8;
    CHECK(sigma(m, 8, cfg) == 1.0);
    m.t_decomp_cycles = 40;
    CHECK(sigma(m, 8, cfg) == 2.0);
    m.emitted_rows = 0;
    m.t_decomp_cycles = 0;
    CHECK(sigma(m, 16, cfg) == 0.0);
}

TEST_CASE("aggregate") {
    const CostConfig cfg;
    std::vector<PartitionMetrics> parts(2);
    parts[0].mem_cycles = 10;
    parts[0].compute_cycles = 20;
    parts[0].sigma = 1.0;
    parts[0].bytes_total = 100;
    parts[0].bytes_useful = 50;
    parts[1].mem_cycles = 30;
    parts[1].compute_cycles = 20;
    parts[1].sigma = 3.0;
    parts[1].bytes_total = 300;
    parts[1].bytes_useful = 250;
    const auto a = aggregate(parts, cfg);
    CHECK(a.total_latency_cycles == 50);
    CHECK(a.memory_latency_cycles == 40);
    CHECK(a.compute_latency_cycles == 40);
    CHECK(a.balance_ratio == doctest::Approx(1.0));
    CHECK(a.avg_sigma == 2.0);
    CHECK(a.bandwidth_utilization == doctest::Approx(0.75));
    CHECK(a.throughput_bytes_per_sec == doctest::Approx(400.0 / (50.0 / 250e6)));

    parts[0].mem_cycles = 30;
    parts[0].compute_cycles = 20;
    CHECK(aggregate(parts, cfg).balance_ratio == doctest::Approx(1.5));
    CHECK_THROWS_AS(aggregate(std::vector<PartitionMetrics>{}, cfg), EmptyInputError);
}

TEST_CASE("evaluate_partition is consistent with its parts") {
    const CostConfig cfg;
    const auto grid = partition(gen_random(64, 0.2, 1), 16);
    for (auto f : kAllFormats) {
        for (const auto& t : grid.tiles) {
            const auto e = encode(t, f);
            const auto m = evaluate_partition(e, cfg);
            CHECK(m.mem_cycles == memory_latency(e, cfg));
            CHECK(m.compute_cycles == compute_latency(e, cfg).compute);
            CHECK(m.bytes_total == e.total_bytes());
            CHECK(m.bytes_useful == e.useful_bytes());
            CHECK(m.sigma == doctest::Approx(sigma(m, 16, cfg)));
            CHECK(m.emitted_rows == emitted_row_count(e));
        }
    }
}
