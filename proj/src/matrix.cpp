#include "sparsefmt/matrix.hpp"

#include <algorithm>
#include <string>

#include "sparsefmt/errors.hpp"

namespace sparsefmt {

SparseMatrix build_matrix(Index n_rows, Index n_cols, std::vector<Triplet> triplets) {
    for (const auto& t : triplets) {
        if (t.row >= n_rows || t.col >= n_cols) {
            throw BoundsError("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                              ", " + std::to_string(t.value) + ") outside " +
                              std::to_string(n_rows) + "x" + std::to_string(n_cols));
        }
    }
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrix m;
    m.n_rows_ = n_rows;
    m.n_cols_ = n_cols;
    m.entries_.reserve(triplets.size());
    for (std::size_t i = 0; i < triplets.size();) {
        Triplet acc = triplets[i++];
        while (i < triplets.size() && triplets[i].row == acc.row && triplets[i].col == acc.col) {
            acc.value += triplets[i++].value;
        }
        if (acc.value != 0.0) m.entries_.push_back(acc);
    }
    return m;
}

std::size_t Partition::nnz() const {
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [](double v) { return v != 0.0; }));
}

std::size_t Partition::row_nnz(Index r) const {
    auto first = values.begin() + static_cast<std::ptrdiff_t>(r * p);
    return static_cast<std::size_t>(
        std::count_if(first, first + static_cast<std::ptrdiff_t>(p), [](double v) { return v != 0.0; }));
}

std::size_t Partition::nnz_rows() const {
    std::size_t rows = 0;
    for (Index r = 0; r < p; ++r) rows += row_nnz(r) > 0 ? 1 : 0;
    return rows;
}

Partition make_partition(std::size_t p, Index grid_row, Index grid_col) {
    return Partition{grid_row, grid_col, p, std::vector<double>(p * p, 0.0)};
}

PartitionGrid partition(const SparseMatrix& matrix, std::size_t p) {
    if (p < 2) throw ConfigError("partition size must be >= 2, got " + std::to_string(p));

    PartitionGrid grid;
    grid.n_rows = matrix.n_rows();
    grid.n_cols = matrix.n_cols();
    grid.p = p;
    grid.shape = {(matrix.n_rows() + p - 1) / p, (matrix.n_cols() + p - 1) / p};

    // Entries are row-major, so a stable sort on the tile key keeps them
    // row-major inside each tile.
    std::vector<Triplet> bucketed(matrix.entries().begin(), matrix.entries().end());
    const auto tile_key = [&](const Triplet& t) { return (t.row / p) * grid.shape.tile_cols + t.col / p; };
    std::stable_sort(bucketed.begin(), bucketed.end(),
                     [&](const Triplet& a, const Triplet& b) { return tile_key(a) < tile_key(b); });

    for (std::size_t i = 0; i < bucketed.size();) {
        const Index key = tile_key(bucketed[i]);
        Partition tile = make_partition(p, bucketed[i].row / p, bucketed[i].col / p);
        for (; i < bucketed.size() && tile_key(bucketed[i]) == key; ++i) {
            tile.at(bucketed[i].row % p, bucketed[i].col % p) = bucketed[i].value;
        }
        grid.tiles.push_back(std::move(tile));
    }
    return grid;
}

SparseMatrix reconstruct(const PartitionGrid& grid) {
    std::vector<Triplet> triplets;
    for (const auto& tile : grid.tiles) {
        for (Index r = 0; r < grid.p; ++r) {
            for (Index c = 0; c < grid.p; ++c) {
                const double v = tile.at(r, c);
                if (v == 0.0) continue;
                triplets.push_back({tile.grid_row * grid.p + r, tile.grid_col * grid.p + c, v});
            }
        }
    }
    return build_matrix(grid.n_rows, grid.n_cols, std::move(triplets));
}

DensityStats density_stats(const PartitionGrid& grid) {
    if (grid.tiles.empty()) throw EmptyInputError("density_stats: grid has no non-zero partitions");

    const double p = static_cast<double>(grid.p);
    DensityStats acc;
    for (const auto& tile : grid.tiles) {
        std::size_t nnz = 0;
        std::size_t rows = 0;
        for (Index r = 0; r < grid.p; ++r) {
            const std::size_t k = tile.row_nnz(r);
            nnz += k;
            rows += k > 0 ? 1 : 0;
        }
        acc.avg_partition_density += static_cast<double>(nnz) / (p * p);
        acc.avg_row_density += static_cast<double>(nnz) / (static_cast<double>(rows) * p);
        acc.avg_nonzero_row_fraction += static_cast<double>(rows) / p;
    }
    const double count = static_cast<double>(grid.tiles.size());
    acc.avg_partition_density /= count;
    acc.avg_row_density /= count;
    acc.avg_nonzero_row_fraction /= count;
    return acc;
}

}  // namespace sparsefmt
