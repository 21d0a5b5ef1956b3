#include "sparsefmt/spmv.hpp"

#include <algorithm>
#include <string>

#include "sparsefmt/errors.hpp"
#include "parallel.hpp"

namespace sparsefmt {

double dot(std::span<const double> row, std::span<const double> x) {
    if (row.size() != x.size()) {
        throw ShapeError("dot: row has " + std::to_string(row.size()) + " elements, x slice has " +
                         std::to_string(x.size()));
    }
    if (row.empty()) return 0.0;

    std::vector<double> level(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) level[i] = row[i] * x[i];
    while (level.size() > 1) {
        std::vector<double> next((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) next[i / 2] = level[i] + level[i + 1];
        if (level.size() % 2 == 1) next.back() = level.back();
        level = std::move(next);
    }
    return level.front();
}

DenseVector spmv_dense(const SparseMatrix& matrix, std::span<const double> x) {
    if (x.size() != matrix.n_cols()) {
        throw ShapeError("spmv_dense: x has " + std::to_string(x.size()) + " elements, matrix has " +
                         std::to_string(matrix.n_cols()) + " columns");
    }
    DenseVector y(matrix.n_rows(), 0.0);
    for (const auto& t : matrix.entries()) y[t.row] += t.value * x[t.col];
    return y;
}

DenseVector spmv_partitioned(const PartitionGrid& grid, FormatId format, const FormatParams& params,
                             std::span<const double> x, const SpmvOptions& options) {
    const std::size_t p = grid.p;
    DenseVector xp(grid.padded_cols(), 0.0);
    if (x.size() != grid.n_cols && x.size() != grid.padded_cols()) {
        throw ShapeError("spmv_partitioned: x has " + std::to_string(x.size()) + " elements, expected " +
                         std::to_string(grid.n_cols) + " or " + std::to_string(grid.padded_cols()));
    }
    std::copy(x.begin(), x.end(), xp.begin());

    // Tiles are row-major, so each grid row is one contiguous run.
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t i = 0; i < grid.tiles.size();) {
        std::size_t j = i;
        while (j < grid.tiles.size() && grid.tiles[j].grid_row == grid.tiles[i].grid_row) ++j;
        runs.emplace_back(i, j);
        i = j;
    }

    const RowDecoder& decoder = options.decoder;
    DenseVector yp(grid.padded_rows(), 0.0);
    detail::parallel_for(runs.size(), options.threads, [&](std::size_t run) {
        for (std::size_t t = runs[run].first; t < runs[run].second; ++t) {
            const auto& tile = grid.tiles[t];
            const auto enc = encode(tile, format, params);
            const auto rows = decoder ? decoder(enc) : decode_rows(enc);
            const std::span<const double> slice(xp.data() + tile.grid_col * p, p);
            for (const auto& row : rows) {
                if (row.row >= p) throw CorruptionError("rows", "emitted row index outside the partition");
                yp[tile.grid_row * p + row.row] += dot(row.values, slice);
            }
        }
    });
    yp.resize(grid.n_rows);
    return yp;
}

}  // namespace sparsefmt
