#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sparsefmt/formats.hpp"
#include "sparsefmt/matrix.hpp"

namespace sparsefmt {

using DenseVector = std::vector<double>;

// Width-p dot product reduced as a balanced adder tree: pairs (0,1), (2,3), ...
// are summed level by level, an odd tail passing through unchanged.
// Throws ShapeError on length mismatch.
double dot(std::span<const double> row, std::span<const double> x);

// y = A x straight from the coordinate list. Throws ShapeError.
DenseVector spmv_dense(const SparseMatrix& matrix, std::span<const double> x);

// Replacement for decode_rows(), used to inject faults in tests.
using RowDecoder = std::function<std::vector<DecodedRow>(const EncodedPartition&)>;

struct SpmvOptions {
    std::size_t threads = 1;
    RowDecoder decoder;  // empty: decode_rows
};

// Streams every stored tile through encode -> decode_rows -> dot and
// accumulates into y. `x` may have n_cols or padded-column length; the
// result has n_rows elements. Tiles of one grid row always accumulate in
// grid-column order, so the result does not depend on `threads`.
DenseVector spmv_partitioned(const PartitionGrid& grid, FormatId format, const FormatParams& params,
                             std::span<const double> x, const SpmvOptions& options = {});

}  // namespace sparsefmt
