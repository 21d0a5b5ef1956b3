#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include "sparsefmt/errors.hpp"
#include "sparsefmt/workloads.hpp"

using namespace sparsefmt;

TEST_CASE("gen_random") {
    SUBCASE("exact non-zero count") {
        CHECK(gen_random(100, 0.25, 1).nnz() == 2500);
        CHECK(gen_random(512, 0.0001, 1).nnz() == 26);
        CHECK(gen_random(10, 1.0, 1).nnz() == 100);
    }
    SUBCASE("density rounding to zero cells is empty") {
        const auto m = gen_random(10, 0.001, 4);
        CHECK(m.nnz() == 0);
        CHECK(m.n_rows() == 10);
    }
    SUBCASE("deterministic per seed") {
        CHECK(gen_random(128, 0.05, 9) == gen_random(128, 0.05, 9));
        CHECK_FALSE(gen_random(128, 0.05, 9) == gen_random(128, 0.05, 10));
    }
    SUBCASE("values in (0, 1]") {
        const auto m = gen_random(64, 0.3, 2);
        for (const auto& t : m.entries()) {
            CHECK(t.value > 0.0);
            CHECK(t.value <= 1.0);
        }
    }
    SUBCASE("invalid arguments") {
        CHECK_THROWS_AS(gen_random(0, 0.1, 1), ConfigError);
        CHECK_THROWS_AS(gen_random(8, 0.0, 1), ConfigError);
        CHECK_THROWS_AS(gen_random(8, 1.5, 1), ConfigError);
        CHECK_THROWS_AS(gen_random(8, -0.1, 1), ConfigError);
    }
}

TEST_CASE("gen_band") {
    SUBCASE("small widths by enumeration") {
        CHECK(gen_band(8, 1).nnz() == 8);
        CHECK(gen_band(8, 2).nnz() == 22);
        CHECK(gen_band(8, 3).nnz() == 22);
        const auto m = gen_band(8, 4);
        std::set<std::pair<Index, Index>> expected;
        for (long i = 0; i < 8; ++i) {
            for (long j = 0; j < 8; ++j) {
                if (std::abs(i - j) <= 2) expected.insert({i, j});
            }
        }
        std::set<std::pair<Index, Index>> got;
        for (const auto& t : m.entries()) got.insert({t.row, t.col});
        CHECK(got == expected);
    }
    SUBCASE("closed form at n=8000") {
        const std::size_t n = 8000;
        for (std::size_t k : {16u, 64u}) {
            const std::size_t h = k / 2;
            CHECK(gen_band(n, k).nnz() == n * (2 * h + 1) - h * (h + 1));
        }
    }
    SUBCASE("value pattern") {
        const auto m = gen_band(40, 6);
        for (const auto& t : m.entries()) {
            CHECK(t.value == 1.0 + static_cast<double>((t.row * 31 + t.col * 17) % 97) / 1024.0);
        }
    }
    SUBCASE("invalid arguments") {
        CHECK_THROWS_AS(gen_band(0, 1), ConfigError);
        CHECK_THROWS_AS(gen_band(8, 0), ConfigError);
        CHECK_THROWS_AS(gen_band(8, 16), ConfigError);
        CHECK_NOTHROW(gen_band(8, 15));
    }
}

TEST_CASE("workload specs") {
    WorkloadSpec r;
    r.kind = WorkloadKind::Random;
    r.n = 512;
    r.density = 0.1;
    r.seed = 7;
    CHECK(r.label() == "random_n512_d0.1_s7");
    CHECK(r.group() == "random");
    CHECK(load_workload(r) == gen_random(512, 0.1, 7));

    WorkloadSpec b;
    b.kind = WorkloadKind::Band;
    b.n = 512;
    b.k = 4;
    CHECK(b.label() == "band_n512_k4");
    CHECK(b.group() == "band");

    WorkloadSpec f;
    f.kind = WorkloadKind::File;
    f.path = "/nonexistent/dwt_918.mtx";
    CHECK(f.label() == "file_dwt_918");
    CHECK(f.group() == "suitesparse");
    CHECK_NOTHROW(f.validate());
    CHECK_THROWS_AS(load_workload(f), IoError);
    f.path.clear();
    CHECK_THROWS_AS(f.validate(), ConfigError);
}

TEST_CASE("Matrix Market reader") {
    SUBCASE("general real") {
        std::istringstream in(
            "%%MatrixMarket matrix coordinate real general\n"
            "% comment\n"
            "\n"
            "3 4 3\n"
            "1 1 2.5\n"
            "3 4 -1\n"
            "2 2 1e-3\n");
        const auto m = read_matrix_market(in);
        CHECK(m.n_rows() == 3);
        CHECK(m.n_cols() == 4);
        REQUIRE(m.nnz() == 3);
        CHECK(m.entries()[0] == Triplet{0, 0, 2.5});
        CHECK(m.entries()[1] == Triplet{1, 1, 1e-3});
        CHECK(m.entries()[2] == Triplet{2, 3, -1.0});
    }
    SUBCASE("symmetric entries are mirrored, the diagonal is not") {
        std::istringstream in(
            "%%MatrixMarket matrix coordinate real symmetric\n"
            "3 3 3\n"
            "1 1 4\n"
            "2 1 1\n"
            "3 2 2\n");
        const auto m = read_matrix_market(in);
        CHECK(m.nnz() == 5);
        CHECK(m == build_matrix(3, 3, {{0, 0, 4}, {1, 0, 1}, {0, 1, 1}, {2, 1, 2}, {1, 2, 2}}));
    }
    SUBCASE("pattern and integer fields") {
        std::istringstream pat("%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 2\n2 1\n");
        CHECK(read_matrix_market(pat) == build_matrix(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}}));
        std::istringstream ints("%%MatrixMarket matrix coordinate integer general\n2 2 1\n2 2 -7\n");
        CHECK(read_matrix_market(ints) == build_matrix(2, 2, {{1, 1, -7.0}}));
    }
    SUBCASE("unsupported qualifiers are named") {
        auto expect_unsupported = [](const std::string& banner, const std::string& word) {
            std::istringstream in(banner + "\n2 2 0\n");
            try {
                read_matrix_market(in);
                FAIL("expected UnsupportedFormatError");
            } catch (const UnsupportedFormatError& e) {
                CHECK(std::string(e.what()).find(word) != std::string::npos);
            }
        };
        expect_unsupported("%%MatrixMarket matrix coordinate complex general", "complex");
        expect_unsupported("%%MatrixMarket matrix array real general", "array");
        expect_unsupported("%%MatrixMarket matrix coordinate real hermitian", "hermitian");
        expect_unsupported("%%MatrixMarket matrix coordinate real skew-symmetric", "skew-symmetric");
    }
    SUBCASE("parse errors carry the line number") {
        auto line_of = [](const std::string& text) -> std::size_t {
            std::istringstream in(text);
            try {
                read_matrix_market(in);
            } catch (const ParseError& e) {
                return e.line();
            }
            return 0;
        };
        CHECK(line_of("") == 1);
        CHECK(line_of("hello\n") == 1);
        CHECK(line_of("%%MatrixMarket matrix coordinate real general\n% c\nx y z\n") == 3);
        CHECK(line_of("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 x 2\n") == 4);
        CHECK(line_of("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n") == 3);
        CHECK(line_of("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n") > 0);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_matrix_market(std::filesystem::path("/nonexistent/x.mtx")), IoError);
    }
}

TEST_CASE("Matrix Market round trip") {
    const auto m = gen_random(50, 0.1, 21);
    std::stringstream buf;
    write_matrix_market(buf, m);
    CHECK(read_matrix_market(buf) == m);

    const auto path = std::filesystem::temp_directory_path() / "sparsefmt_roundtrip_test.mtx";
    const auto band = gen_band(33, 5);
    write_matrix_market(path, band);
    CHECK(read_matrix_market(path) == band);
    std::filesystem::remove(path);
}
