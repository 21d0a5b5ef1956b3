#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "sparsefmt/matrix.hpp"

namespace sparsefmt {

enum class WorkloadKind { Random, Band, File };

struct WorkloadSpec {
    WorkloadKind kind = WorkloadKind::Random;
    std::size_t n = 0;
    double density = 0.0;  // random
    std::size_t k = 1;     // band width
    std::uint64_t seed = 0;
    std::filesystem::path path;  // file

    // Throws ConfigError.
    void validate() const;
    // Stable label, e.g. "random_n512_d0.1_s7", "band_n512_k4", "file_dwt_918".
    std::string label() const;
    // "random", "band" or "suitesparse".
    std::string group() const;
};

// Exactly round(density * n^2) distinct cells, chosen by sequential
// selection sampling (Knuth's Algorithm S) over the row-major cell order.
// Randomness comes from std::mt19937_64 seeded with `seed`; each draw is
// mapped to a double as (bits >> 11) * 2^-53, so results are identical on
// every platform. Values are ((bits >> 11) + 1) * 2^-53, i.e. in (0, 1].
SparseMatrix gen_random(std::size_t n, double density, std::uint64_t seed);

// a(i, j) != 0 iff |i - j| <= floor(k / 2). Values are 1 plus an
// index-derived perturbation in [0, 0.1).
SparseMatrix gen_band(std::size_t n, std::size_t k);

SparseMatrix load_workload(const WorkloadSpec& spec);

// Coordinate Matrix Market, fields real/integer/pattern, symmetry
// general/symmetric. Throws UnsupportedFormatError or ParseError.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

// Writes "coordinate real general" with 17 significant digits.
void write_matrix_market(std::ostream& out, const SparseMatrix& matrix);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& matrix);

}  // namespace sparsefmt
