#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparsefmt/matrix.hpp"

namespace sparsefmt {

enum class FormatId { Dense, Csr, Csc, Bcsr, Coo, Lil, Ell, Dia };

inline constexpr std::array<FormatId, 8> kAllFormats = {
    FormatId::Dense, FormatId::Csr, FormatId::Csc, FormatId::Bcsr,
    FormatId::Coo,   FormatId::Lil, FormatId::Ell, FormatId::Dia,
};

std::string_view to_string(FormatId format) noexcept;

// Case-insensitive. "DOK" resolves to COO. Throws UnsupportedFormatError.
FormatId parse_format(std::string_view name);

struct FormatParams {
    std::size_t value_width_bytes = 4;
    std::size_t index_width_bytes = 4;
    std::size_t bcsr_block = 4;
    std::size_t ell_min_width = 6;

    // Throws ConfigError. BCSR additionally needs bcsr_block | p.
    void validate(std::size_t p, FormatId format) const;

    friend bool operator==(const FormatParams&, const FormatParams&) = default;
};

enum class ArrayRole { Payload, Metadata, Mixed };

std::string_view to_string(ArrayRole role) noexcept;

// One transferred vector of an encoded tile. Every array is streamed
// independently. Metadata elements hold integers (indices, counts, diagonal
// numbers) stored exactly in double precision.
struct NamedArray {
    std::string name;
    ArrayRole role = ArrayRole::Payload;
    std::vector<double> data;
    // Per-element flags, only populated for Mixed arrays.
    std::vector<bool> metadata_mask;
    std::size_t value_width_bytes = 4;
    std::size_t index_width_bytes = 4;

    std::size_t element_count() const noexcept { return data.size(); }
    bool is_metadata(std::size_t i) const;
    std::size_t metadata_count() const;
    std::size_t payload_count() const { return data.size() - metadata_count(); }
    std::size_t bytes() const;
    std::size_t payload_bytes() const { return payload_count() * value_width_bytes; }
    // Width shared by every element, or nullopt for a mixed array whose
    // value and index widths differ.
    std::optional<std::size_t> element_width_bytes() const;
};

struct EncodedPartition {
    FormatId format = FormatId::Dense;
    std::size_t p = 0;
    FormatParams params;
    Index grid_row = 0;
    Index grid_col = 0;
    std::vector<NamedArray> arrays;
    std::size_t nnz = 0;
    std::size_t nnz_rows = 0;
    std::size_t ell_width = 0;

    // Throws CorruptionError if absent.
    const NamedArray& array(std::string_view name) const;
    NamedArray& array(std::string_view name);

    std::size_t total_bytes() const;
    std::size_t payload_bytes() const;
    std::size_t useful_bytes() const { return nnz * params.value_width_bytes; }
};

EncodedPartition encode(const Partition& tile, FormatId format, const FormatParams& params = {});

struct DecodedRow {
    Index row = 0;
    std::vector<double> values;

    friend bool operator==(const DecodedRow&, const DecodedRow&) = default;
};

// Rows in the order the format's decompression produces them, increasing
// row index. Which rows appear depends on the format: only non-zero rows for
// CSR/CSC/COO/LIL, whole block-rows for BCSR, rows touched by a stored
// diagonal for DIA, every row for DENSE and ELL.
// Throws CorruptionError naming the malformed array.
std::vector<DecodedRow> decode_rows(const EncodedPartition& enc);

Partition decode(const EncodedPartition& enc);

// Number of rows decode_rows() would emit, computed from metadata only.
std::size_t emitted_row_count(const EncodedPartition& enc);

struct ArrayBound {
    std::string name;
    std::size_t max_elements = 0;
};

struct WorstCaseLengths {
    std::vector<ArrayBound> arrays;
    // DIA: diagonals; LIL: lists (incl. terminator). 0 otherwise.
    std::size_t max_records = 0;
    std::size_t max_record_length = 0;

    std::size_t bound(std::string_view name) const;
};

// Maximum element counts of each array for an n x n tile, used for buffer
// sizing.
WorstCaseLengths worst_case_lengths(std::size_t n, FormatId format, const FormatParams& params = {});

// Text dump for fixture diffing. One header block then one line per array:
//   array <name> <role> <elements> <bytes> <hex>
// Indices are little-endian two's complement of index_width bytes; values
// are IEEE-754 binary32 (width 4) or binary64 (width 8).
std::string dump(const EncodedPartition& enc);

}  // namespace sparsefmt
