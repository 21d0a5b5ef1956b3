#include "sparsefmt/formats.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <sstream>

#include "sparsefmt/errors.hpp"

namespace sparsefmt {

namespace {

NamedArray make_array(std::string name, ArrayRole role, const FormatParams& params) {
    NamedArray a;
    a.name = std::move(name);
    a.role = role;
    a.value_width_bytes = params.value_width_bytes;
    a.index_width_bytes = params.index_width_bytes;
    return a;
}

void push_mixed(NamedArray& a, double v, bool metadata) {
    a.data.push_back(v);
    a.metadata_mask.push_back(metadata);
}

// Reads a metadata element as a non-negative integer below `limit`.
std::size_t as_index(const NamedArray& a, std::size_t i, std::size_t limit) {
    const double v = a.data[i];
    if (!(v >= 0.0) || v != std::floor(v) || v >= static_cast<double>(limit)) {
        std::ostringstream msg;
        msg << "element " << i << " = " << v << " is not an index below " << limit;
        throw CorruptionError(a.name, msg.str());
    }
    return static_cast<std::size_t>(v);
}

void expect_size(const NamedArray& a, std::size_t expected) {
    if (a.data.size() != expected) {
        throw CorruptionError(a.name, "holds " + std::to_string(a.data.size()) + " elements, expected " +
                                          std::to_string(expected));
    }
}

std::vector<std::size_t> read_counts(const NamedArray& a, std::size_t count, std::size_t max_each) {
    expect_size(a, count);
    std::vector<std::size_t> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = as_index(a, i, max_each + 1);
    return out;
}

std::size_t sum(const std::vector<std::size_t>& v) {
    std::size_t s = 0;
    for (auto x : v) s += x;
    return s;
}

// ---------------------------------------------------------------- encoders

void encode_dense(const Partition& t, EncodedPartition& e) {
    auto values = make_array("values", ArrayRole::Payload, e.params);
    values.data = t.values;
    e.arrays.push_back(std::move(values));
}

void encode_csr(const Partition& t, EncodedPartition& e) {
    const std::size_t p = t.p;
    auto offsets = make_array("offsets", ArrayRole::Metadata, e.params);
    auto indices = make_array("indices", ArrayRole::Metadata, e.params);
    auto values = make_array("values", ArrayRole::Payload, e.params);
    for (Index r = 0; r < p; ++r) {
        std::size_t count = 0;
        for (Index c = 0; c < p; ++c) {
            if (t.at(r, c) == 0.0) continue;
            indices.data.push_back(static_cast<double>(c));
            values.data.push_back(t.at(r, c));
            ++count;
        }
        offsets.data.push_back(static_cast<double>(count));
    }
    e.arrays = {std::move(offsets), std::move(indices), std::move(values)};
}

void encode_csc(const Partition& t, EncodedPartition& e) {
    const std::size_t p = t.p;
    auto offsets = make_array("offsets", ArrayRole::Metadata, e.params);
    auto indices = make_array("indices", ArrayRole::Metadata, e.params);
    auto values = make_array("values", ArrayRole::Payload, e.params);
    for (Index c = 0; c < p; ++c) {
        std::size_t count = 0;
        for (Index r = 0; r < p; ++r) {
            if (t.at(r, c) == 0.0) continue;
            indices.data.push_back(static_cast<double>(r));
            values.data.push_back(t.at(r, c));
            ++count;
        }
        offsets.data.push_back(static_cast<double>(count));
    }
    e.arrays = {std::move(offsets), std::move(indices), std::move(values)};
}

void encode_bcsr(const Partition& t, EncodedPartition& e) {
    const std::size_t p = t.p;
    const std::size_t b = e.params.bcsr_block;
    auto offsets = make_array("offsets", ArrayRole::Metadata, e.params);
    auto indices = make_array("indices", ArrayRole::Metadata, e.params);
    auto values = make_array("values", ArrayRole::Payload, e.params);
    for (Index br = 0; br < p / b; ++br) {
        std::size_t blocks = 0;
        for (Index bc = 0; bc < p / b; ++bc) {
            bool nonzero = false;
            for (Index r = 0; r < b && !nonzero; ++r) {
                for (Index c = 0; c < b && !nonzero; ++c) nonzero = t.at(br * b + r, bc * b + c) != 0.0;
            }
            if (!nonzero) continue;
            indices.data.push_back(static_cast<double>(bc * b));
            for (Index r = 0; r < b; ++r) {
                for (Index c = 0; c < b; ++c) values.data.push_back(t.at(br * b + r, bc * b + c));
            }
            ++blocks;
        }
        offsets.data.push_back(static_cast<double>(blocks));
    }
    e.arrays = {std::move(offsets), std::move(indices), std::move(values)};
}

void encode_coo(const Partition& t, EncodedPartition& e) {
    auto tuples = make_array("tuples", ArrayRole::Mixed, e.params);
    for (Index r = 0; r < t.p; ++r) {
        for (Index c = 0; c < t.p; ++c) {
            if (t.at(r, c) == 0.0) continue;
            push_mixed(tuples, static_cast<double>(r), true);
            push_mixed(tuples, static_cast<double>(c), true);
            push_mixed(tuples, t.at(r, c), false);
        }
    }
    e.arrays.push_back(std::move(tuples));
}

void encode_lil(const Partition& t, EncodedPartition& e) {
    const std::size_t p = t.p;
    auto indices = make_array("indices", ArrayRole::Metadata, e.params);
    auto values = make_array("values", ArrayRole::Payload, e.params);
    for (Index r = 0; r < p; ++r) {
        if (t.row_nnz(r) == 0) continue;
        indices.data.push_back(static_cast<double>(r));
        values.data.insert(values.data.end(), t.values.begin() + static_cast<std::ptrdiff_t>(r * p),
                           t.values.begin() + static_cast<std::ptrdiff_t>((r + 1) * p));
    }
    // End-of-rows record: sentinel row index p and a zero row.
    indices.data.push_back(static_cast<double>(p));
    values.data.insert(values.data.end(), p, 0.0);
    e.arrays = {std::move(indices), std::move(values)};
}

void encode_ell(const Partition& t, EncodedPartition& e) {
    const std::size_t p = t.p;
    std::size_t longest = 0;
    for (Index r = 0; r < p; ++r) longest = std::max(longest, t.row_nnz(r));
    const std::size_t width = std::max(std::min(e.params.ell_min_width, p), longest);
    e.ell_width = width;

    auto values = make_array("values", ArrayRole::Payload, e.params);
    auto indices = make_array("indices", ArrayRole::Metadata, e.params);
    values.data.assign(p * width, 0.0);
    indices.data.assign(p * width, 0.0);
    for (Index r = 0; r < p; ++r) {
        std::size_t slot = 0;
        for (Index c = 0; c < p; ++c) {
            if (t.at(r, c) == 0.0) continue;
            // column-major: slot-th stored element of every row is contiguous
            values.data[slot * p + r] = t.at(r, c);
            indices.data[slot * p + r] = static_cast<double>(c);
            ++slot;
        }
    }
    e.arrays = {std::move(values), std::move(indices)};
}

void encode_dia(const Partition& t, EncodedPartition& e) {
    const auto p = static_cast<std::ptrdiff_t>(t.p);
    auto diags = make_array("diags", ArrayRole::Mixed, e.params);
    for (std::ptrdiff_t d = -(p - 1); d <= p - 1; ++d) {
        const std::ptrdiff_t first = std::max<std::ptrdiff_t>(0, -d);
        const std::ptrdiff_t last = std::min(p, p - d);
        bool nonzero = false;
        for (auto r = first; r < last && !nonzero; ++r) {
            nonzero = t.at(static_cast<Index>(r), static_cast<Index>(r + d)) != 0.0;
        }
        if (!nonzero) continue;
        push_mixed(diags, static_cast<double>(d), true);
        for (auto r = first; r < last; ++r) {
            push_mixed(diags, t.at(static_cast<Index>(r), static_cast<Index>(r + d)), false);
        }
    }
    e.arrays.push_back(std::move(diags));
}

// ---------------------------------------------------------------- decoders

DecodedRow zero_row(Index row, std::size_t p) { return DecodedRow{row, std::vector<double>(p, 0.0)}; }

std::vector<DecodedRow> rows_dense(const EncodedPartition& e) {
    const std::size_t p = e.p;
    const auto& values = e.array("values");
    expect_size(values, p * p);
    std::vector<DecodedRow> out;
    out.reserve(p);
    for (Index r = 0; r < p; ++r) {
        out.push_back({r, std::vector<double>(values.data.begin() + static_cast<std::ptrdiff_t>(r * p),
                                              values.data.begin() + static_cast<std::ptrdiff_t>((r + 1) * p))});
    }
    return out;
}

std::vector<DecodedRow> rows_csr(const EncodedPartition& e) {
    const std::size_t p = e.p;
    const auto& offsets = e.array("offsets");
    const auto& indices = e.array("indices");
    const auto& values = e.array("values");
    const auto counts = read_counts(offsets, p, p);
    const std::size_t total = sum(counts);
    expect_size(indices, total);
    expect_size(values, total);

    std::vector<DecodedRow> out;
    std::size_t k = 0;
    for (Index r = 0; r < p; ++r) {
        if (counts[r] == 0) continue;
        auto row = zero_row(r, p);
        for (std::size_t i = 0; i < counts[r]; ++i, ++k) row.values[as_index(indices, k, p)] = values.data[k];
        out.push_back(std::move(row));
    }
    return out;
}

// Rows are rebuilt one at a time by scanning every stored column for
// entries that belong to the current row.
std::vector<DecodedRow> rows_csc(const EncodedPartition& e) {
    const std::size_t p = e.p;
    const auto& offsets = e.array("offsets");
    const auto& indices = e.array("indices");
    const auto& values = e.array("values");
    const auto counts = read_counts(offsets, p, p);
    const std::size_t total = sum(counts);
    expect_size(indices, total);
    expect_size(values, total);
    std::vector<std::size_t> row_of(total);
    for (std::size_t k = 0; k < total; ++k) row_of[k] = as_index(indices, k, p);

    std::vector<DecodedRow> out;
    for (Index r = 0; r < p; ++r) {
        auto row = zero_row(r, p);
        bool found = false;
        std::size_t k = 0;
        for (Index c = 0; c < p; ++c) {
            for (std::size_t i = 0; i < counts[c]; ++i, ++k) {
                if (row_of[k] != r) continue;
                row.values[c] = values.data[k];
                found = true;
            }
        }
        if (found) out.push_back(std::move(row));
    }
    return out;
}

std::vector<DecodedRow> rows_bcsr(const EncodedPartition& e) {
    const std::size_t p = e.p;
    const std::size_t b = e.params.bcsr_block;
    const auto& offsets = e.array("offsets");
    const auto& indices = e.array("indices");
    const auto& values = e.array("values");
    const auto counts = read_counts(offsets, p / b, p / b);
    const std::size_t blocks = sum(counts);
    expect_size(indices, blocks);
    expect_size(values, blocks * b * b);

    std::vector<DecodedRow> out;
    std::size_t k = 0;
    for (Index br = 0; br < p / b; ++br) {
        if (counts[br] == 0) continue;
        std::vector<DecodedRow> block_rows;
        for (Index r = 0; r < b; ++r) block_rows.push_back(zero_row(br * b + r, p));
        for (std::size_t i = 0; i < counts[br]; ++i, ++k) {
            const std::size_t first_col = as_index(indices, k, p);
            if (first_col % b != 0) {
                throw CorruptionError(indices.name, "block column " + std::to_string(first_col) +
                                                        " is not a multiple of the block size");
            }
            for (Index r = 0; r < b; ++r) {
                for (Index c = 0; c < b; ++c) block_rows[r].values[first_col + c] = values.data[(k * b + r) * b + c];
            }
        }
        for (auto& row : block_rows) out.push_back(std::move(row));
    }
    return out;
}

std::vector<DecodedRow> rows_coo(const EncodedPartition& e) {
    const std::size_t p = e.p;
    const auto& tuples = e.array("tuples");
    if (tuples.data.size() % 3 != 0) throw CorruptionError(tuples.name, "length is not a multiple of 3");

    std::vector<DecodedRow> out;
    for (std::size_t k = 0; k < tuples.data.size(); k += 3) {
        const Index r = as_index(tuples, k, p);
        const Index c = as_index(tuples, k + 1, p);
        if (out.empty() || out.back().row != r) {
            if (!out.empty() && out.back().row > r) {
                throw CorruptionError(tuples.name, "tuples are not in row-major order");
            }
            out.push_back(zero_row(r, p));
        }
        out.back().values[c] = tuples.data[k + 2];
    }
    return out;
}

std::vector<DecodedRow> rows_lil(const EncodedPartition& e) {
    const std::size_t p = e.p;
    const auto& indices = e.array("indices");
    const auto& values = e.array("values");
    if (indices.data.empty()) throw CorruptionError(indices.name, "missing end-of-rows record");
    expect_size(values, indices.data.size() * p);
    if (indices.data.back() != static_cast<double>(p)) {
        throw CorruptionError(indices.name, "last record is not the end-of-rows sentinel");
    }

    std::vector<DecodedRow> out;
    for (std::size_t k = 0; k + 1 < indices.data.size(); ++k) {
        const Index r = as_index(indices, k, p);
        if (!out.empty() && out.back().row >= r) throw CorruptionError(indices.name, "row indices not increasing");
        out.push_back({r, std::vector<double>(values.data.begin() + static_cast<std::ptrdiff_t>(k * p),
                                              values.data.begin() + static_cast<std::ptrdiff_t>((k + 1) * p))});
    }
    return out;
}

std::vector<DecodedRow> rows_ell(const EncodedPartition& e) {
    const std::size_t p = e.p;
    const auto& values = e.array("values");
    const auto& indices = e.array("indices");
    if (values.data.size() % p != 0) throw CorruptionError(values.name, "length is not a multiple of p");
    const std::size_t width = values.data.size() / p;
    expect_size(indices, p * width);
    if (e.ell_width != width) {
        throw CorruptionError(values.name, "width " + std::to_string(width) + " disagrees with ell_width " +
                                               std::to_string(e.ell_width));
    }

    std::vector<DecodedRow> out;
    out.reserve(p);
    for (Index r = 0; r < p; ++r) {
        auto row = zero_row(r, p);
        for (std::size_t slot = 0; slot < width; ++slot) {
            const double v = values.data[slot * p + r];
            const Index c = as_index(indices, slot * p + r, p);
            if (v != 0.0) row.values[c] = v;  // zero value marks padding
        }
        out.push_back(std::move(row));
    }
    return out;
}

struct Diagonal {
    std::ptrdiff_t number = 0;
    std::size_t offset = 0;  // position of the first value in `diags`
};

std::vector<Diagonal> read_diagonals(const NamedArray& diags, std::size_t p) {
    const auto sp = static_cast<std::ptrdiff_t>(p);
    std::vector<Diagonal> out;
    for (std::size_t k = 0; k < diags.data.size();) {
        const double h = diags.data[k];
        if (h != std::floor(h) || h <= -static_cast<double>(p) || h >= static_cast<double>(p)) {
            throw CorruptionError(diags.name, "bad diagonal number at element " + std::to_string(k));
        }
        const auto d = static_cast<std::ptrdiff_t>(h);
        if (!out.empty() && out.back().number >= d) throw CorruptionError(diags.name, "diagonals not increasing");
        const auto length = static_cast<std::size_t>(sp - (d < 0 ? -d : d));
        if (k + 1 + length > diags.data.size()) throw CorruptionError(diags.name, "truncated diagonal");
        out.push_back({d, k + 1});
        k += 1 + length;
    }
    return out;
}

// Each row is assembled by walking every stored diagonal and picking the
// element that lands on the current row, if any.
std::vector<DecodedRow> rows_dia(const EncodedPartition& e) {
    const std::size_t p = e.p;
    const auto sp = static_cast<std::ptrdiff_t>(p);
    const auto& diags = e.array("diags");
    const auto diagonals = read_diagonals(diags, p);

    std::vector<DecodedRow> out;
    for (std::ptrdiff_t r = 0; r < sp; ++r) {
        auto row = zero_row(static_cast<Index>(r), p);
        bool on_any = false;
        for (const auto& d : diagonals) {
            const std::ptrdiff_t c = r + d.number;
            if (c < 0 || c >= sp) continue;
            on_any = true;
            const std::ptrdiff_t first_row = std::max<std::ptrdiff_t>(0, -d.number);
            row.values[static_cast<Index>(c)] = diags.data[d.offset + static_cast<std::size_t>(r - first_row)];
        }
        if (on_any) out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

std::string_view to_string(FormatId format) noexcept {
    switch (format) {
        case FormatId::Dense: return "DENSE";
        case FormatId::Csr: return "CSR";
        case FormatId::Csc: return "CSC";
        case FormatId::Bcsr: return "BCSR";
        case FormatId::Coo: return "COO";
        case FormatId::Lil: return "LIL";
        case FormatId::Ell: return "ELL";
        case FormatId::Dia: return "DIA";
    }
    return "?";
}

FormatId parse_format(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    if (upper == "DOK") return FormatId::Coo;
    for (auto f : kAllFormats) {
        if (to_string(f) == upper) return f;
    }
    throw UnsupportedFormatError("unknown format '" + std::string(name) + "'");
}

std::string_view to_string(ArrayRole role) noexcept {
    switch (role) {
        case ArrayRole::Payload: return "payload";
        case ArrayRole::Metadata: return "metadata";
        case ArrayRole::Mixed: return "mixed";
    }
    return "?";
}

void FormatParams::validate(std::size_t p, FormatId format) const {
    if (value_width_bytes < 1 || index_width_bytes < 1) throw ConfigError("element widths must be >= 1 byte");
    if (index_width_bytes > 8) throw ConfigError("index width above 8 bytes is not supported");
    if (ell_min_width < 1) throw ConfigError("ELL minimum width must be >= 1");
    if (bcsr_block < 1) throw ConfigError("BCSR block size must be >= 1");
    if (format == FormatId::Bcsr && p % bcsr_block != 0) {
        throw ConfigError("BCSR block size " + std::to_string(bcsr_block) + " does not divide p = " +
                          std::to_string(p));
    }
}

bool NamedArray::is_metadata(std::size_t i) const {
    switch (role) {
        case ArrayRole::Payload: return false;
        case ArrayRole::Metadata: return true;
        case ArrayRole::Mixed: return metadata_mask[i];
    }
    return false;
}

std::size_t NamedArray::metadata_count() const {
    switch (role) {
        case ArrayRole::Payload: return 0;
        case ArrayRole::Metadata: return data.size();
        case ArrayRole::Mixed:
            return static_cast<std::size_t>(std::count(metadata_mask.begin(), metadata_mask.end(), true));
    }
    return 0;
}

std::size_t NamedArray::bytes() const {
    return metadata_count() * index_width_bytes + payload_count() * value_width_bytes;
}

std::optional<std::size_t> NamedArray::element_width_bytes() const {
    switch (role) {
        case ArrayRole::Payload: return value_width_bytes;
        case ArrayRole::Metadata: return index_width_bytes;
        case ArrayRole::Mixed:
            if (value_width_bytes == index_width_bytes) return value_width_bytes;
            return std::nullopt;
    }
    return std::nullopt;
}

const NamedArray& EncodedPartition::array(std::string_view name) const {
    for (const auto& a : arrays) {
        if (a.name == name) return a;
    }
    throw CorruptionError(std::string(name), "array missing from " + std::string(to_string(format)) + " encoding");
}

NamedArray& EncodedPartition::array(std::string_view name) {
    return const_cast<NamedArray&>(std::as_const(*this).array(name));
}

std::size_t EncodedPartition::total_bytes() const {
    std::size_t total = 0;
    for (const auto& a : arrays) total += a.bytes();
    return total;
}

std::size_t EncodedPartition::payload_bytes() const {
    std::size_t total = 0;
    for (const auto& a : arrays) total += a.payload_bytes();
    return total;
}

EncodedPartition encode(const Partition& tile, FormatId format, const FormatParams& params) {
    if (tile.values.size() != tile.p * tile.p) throw ShapeError("tile does not hold p*p values");
    params.validate(tile.p, format);

    EncodedPartition e;
    e.format = format;
    e.p = tile.p;
    e.params = params;
    e.grid_row = tile.grid_row;
    e.grid_col = tile.grid_col;
    e.nnz = tile.nnz();
    e.nnz_rows = tile.nnz_rows();
    switch (format) {
        case FormatId::Dense: encode_dense(tile, e); break;
        case FormatId::Csr: encode_csr(tile, e); break;
        case FormatId::Csc: encode_csc(tile, e); break;
        case FormatId::Bcsr: encode_bcsr(tile, e); break;
        case FormatId::Coo: encode_coo(tile, e); break;
        case FormatId::Lil: encode_lil(tile, e); break;
        case FormatId::Ell: encode_ell(tile, e); break;
        case FormatId::Dia: encode_dia(tile, e); break;
    }
    return e;
}

std::vector<DecodedRow> decode_rows(const EncodedPartition& enc) {
    if (enc.p < 1) throw CorruptionError("p", "partition size is zero");
    enc.params.validate(enc.p, enc.format);
    switch (enc.format) {
        case FormatId::Dense: return rows_dense(enc);
        case FormatId::Csr: return rows_csr(enc);
        case FormatId::Csc: return rows_csc(enc);
        case FormatId::Bcsr: return rows_bcsr(enc);
        case FormatId::Coo: return rows_coo(enc);
        case FormatId::Lil: return rows_lil(enc);
        case FormatId::Ell: return rows_ell(enc);
        case FormatId::Dia: return rows_dia(enc);
    }
    return {};
}

Partition decode(const EncodedPartition& enc) {
    Partition tile = make_partition(enc.p, enc.grid_row, enc.grid_col);
    for (const auto& row : decode_rows(enc)) {
        std::copy(row.values.begin(), row.values.end(),
                  tile.values.begin() + static_cast<std::ptrdiff_t>(row.row * enc.p));
    }
    return tile;
}

std::size_t emitted_row_count(const EncodedPartition& enc) {
    const std::size_t p = enc.p;
    switch (enc.format) {
        case FormatId::Dense:
        case FormatId::Ell: return p;
        case FormatId::Csr:
        case FormatId::Csc:
        case FormatId::Coo:
        case FormatId::Lil: return enc.nnz_rows;
        case FormatId::Bcsr: {
            const std::size_t b = enc.params.bcsr_block;
            const auto counts = read_counts(enc.array("offsets"), p / b, p / b);
            return b * static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(),
                                                              [](std::size_t n) { return n > 0; }));
        }
        case FormatId::Dia: {
            const auto sp = static_cast<std::ptrdiff_t>(p);
            std::vector<bool> touched(p, false);
            for (const auto& d : read_diagonals(enc.array("diags"), p)) {
                const std::ptrdiff_t first = std::max<std::ptrdiff_t>(0, -d.number);
                const std::ptrdiff_t last = std::min(sp, sp - d.number);
                for (auto r = first; r < last; ++r) touched[static_cast<std::size_t>(r)] = true;
            }
            return static_cast<std::size_t>(std::count(touched.begin(), touched.end(), true));
        }
    }
    return 0;
}

std::size_t WorstCaseLengths::bound(std::string_view name) const {
    for (const auto& a : arrays) {
        if (a.name == name) return a.max_elements;
    }
    throw Error("no worst-case bound for array '" + std::string(name) + "'");
}

WorstCaseLengths worst_case_lengths(std::size_t n, FormatId format, const FormatParams& params) {
    if (n < 1) throw ConfigError("worst_case_lengths: n must be >= 1");
    const std::size_t n2 = n * n;
    WorstCaseLengths w;
    switch (format) {
        case FormatId::Dense: w.arrays = {{"values", n2}}; break;
        case FormatId::Csr:
        case FormatId::Csc: w.arrays = {{"offsets", n}, {"indices", n2}, {"values", n2}}; break;
        case FormatId::Bcsr: {
            params.validate(n, format);
            const std::size_t nb = n / params.bcsr_block;
            w.arrays = {{"offsets", nb}, {"indices", nb * nb}, {"values", n2}};
            break;
        }
        case FormatId::Coo: w.arrays = {{"tuples", 3 * n2}}; break;
        case FormatId::Lil:
            // n row lists of n values plus the end-of-rows record
            w.arrays = {{"indices", n + 1}, {"values", (n + 1) * n}};
            w.max_records = n + 1;
            w.max_record_length = n;
            break;
        case FormatId::Ell: w.arrays = {{"values", n2}, {"indices", n2}}; break;
        case FormatId::Dia:
            w.max_records = 2 * n - 1;
            w.max_record_length = n + 1;
            w.arrays = {{"diags", w.max_records * w.max_record_length}};
            break;
    }
    return w;
}

namespace {

void append_hex(std::ostringstream& out, std::uint64_t bits, std::size_t width) {
    static constexpr char kDigits[] = "0123456789abcdef";
    for (std::size_t i = 0; i < width; ++i) {
        const auto byte = static_cast<unsigned>((bits >> (8 * i)) & 0xffu);
        out << kDigits[byte >> 4] << kDigits[byte & 0xfu];
    }
}

}  // namespace

std::string dump(const EncodedPartition& enc) {
    const auto& params = enc.params;
    if (params.value_width_bytes != 4 && params.value_width_bytes != 8) {
        throw ConfigError("dump supports value widths of 4 or 8 bytes");
    }
    std::ostringstream out;
    out << "format " << to_string(enc.format) << '\n'
        << "p " << enc.p << '\n'
        << "grid " << enc.grid_row << ' ' << enc.grid_col << '\n'
        << "value_width " << params.value_width_bytes << '\n'
        << "index_width " << params.index_width_bytes << '\n'
        << "nnz " << enc.nnz << '\n'
        << "nnz_rows " << enc.nnz_rows << '\n'
        << "ell_width " << enc.ell_width << '\n';
    for (const auto& a : enc.arrays) {
        out << "array " << a.name << ' ' << to_string(a.role) << ' ' << a.element_count() << ' ' << a.bytes() << ' ';
        for (std::size_t i = 0; i < a.data.size(); ++i) {
            if (a.is_metadata(i)) {
                const auto v = static_cast<std::int64_t>(a.data[i]);
                append_hex(out, static_cast<std::uint64_t>(v), params.index_width_bytes);
            } else if (params.value_width_bytes == 4) {
                append_hex(out, std::bit_cast<std::uint32_t>(static_cast<float>(a.data[i])), 4);
            } else {
                append_hex(out, std::bit_cast<std::uint64_t>(a.data[i]), 8);
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace sparsefmt
