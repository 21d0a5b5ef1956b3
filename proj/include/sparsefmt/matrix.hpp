#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sparsefmt {

using Index = std::size_t;

struct Triplet {
    Index row = 0;
    Index col = 0;
    double value = 0.0;

    friend bool operator==(const Triplet&, const Triplet&) = default;
};

// Coordinate-list sparse matrix. Entries are unique, non-zero and sorted
// row-major; the only way to obtain one is build_matrix().
class SparseMatrix {
public:
    SparseMatrix() = default;

    Index n_rows() const noexcept { return n_rows_; }
    Index n_cols() const noexcept { return n_cols_; }
    std::size_t nnz() const noexcept { return entries_.size(); }
    std::span<const Triplet> entries() const noexcept { return entries_; }

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    friend SparseMatrix build_matrix(Index, Index, std::vector<Triplet>);

    Index n_rows_ = 0;
    Index n_cols_ = 0;
    std::vector<Triplet> entries_;
};

// Sums duplicate coordinates, drops exact zeros and sorts row-major.
// Throws BoundsError naming the first out-of-range triplet.
SparseMatrix build_matrix(Index n_rows, Index n_cols, std::vector<Triplet> triplets);

// Dense p x p tile, row-major, tagged with its position in the tile grid.
struct Partition {
    Index grid_row = 0;
    Index grid_col = 0;
    std::size_t p = 0;
    std::vector<double> values;

    double at(Index r, Index c) const { return values[r * p + c]; }
    double& at(Index r, Index c) { return values[r * p + c]; }

    std::size_t nnz() const;
    std::size_t nnz_rows() const;
    std::size_t row_nnz(Index r) const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

// Zero tile of size p at the given grid position.
Partition make_partition(std::size_t p, Index grid_row = 0, Index grid_col = 0);

struct GridShape {
    Index tile_rows = 0;
    Index tile_cols = 0;

    friend bool operator==(const GridShape&, const GridShape&) = default;
};

// Non-zero tiles of a matrix zero-padded to a multiple of p, in row-major
// grid order. All-zero tiles are implicit.
struct PartitionGrid {
    Index n_rows = 0;
    Index n_cols = 0;
    std::size_t p = 0;
    GridShape shape;
    std::vector<Partition> tiles;

    Index padded_rows() const noexcept { return shape.tile_rows * p; }
    Index padded_cols() const noexcept { return shape.tile_cols * p; }
};

// Throws ConfigError when p < 2.
PartitionGrid partition(const SparseMatrix& matrix, std::size_t p);

// Scatters the stored tiles back into a coordinate matrix of the source size.
SparseMatrix reconstruct(const PartitionGrid& grid);

struct DensityStats {
    double avg_partition_density = 0.0;
    double avg_row_density = 0.0;
    double avg_nonzero_row_fraction = 0.0;
};

// Averages over the stored (non-zero) tiles. Row density is taken over the
// non-zero rows of each tile. Throws EmptyInputError on an empty grid.
DensityStats density_stats(const PartitionGrid& grid);

}  // namespace sparsefmt
