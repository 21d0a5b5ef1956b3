#include "sparsefmt/workloads.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <vector>

#include "sparsefmt/errors.hpp"

namespace sparsefmt {

namespace {

constexpr double kTwoPow53 = 9007199254740992.0;

double unit_half_open(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) / kTwoPow53; }

double unit_open_closed(std::mt19937_64& rng) { return static_cast<double>((rng() >> 11) + 1) / kTwoPow53; }

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string compact(double v) {
    std::ostringstream out;
    out << std::setprecision(15) << v;
    return out.str();
}

}  // namespace

void WorkloadSpec::validate() const {
    switch (kind) {
        case WorkloadKind::Random:
            if (n < 1) throw ConfigError("random workload: n must be >= 1");
            if (!(density > 0.0 && density <= 1.0)) {
                throw ConfigError("random workload: density must be in (0, 1], got " + compact(density));
            }
            break;
        case WorkloadKind::Band:
            if (n < 1) throw ConfigError("band workload: n must be >= 1");
            if (k < 1 || k > 2 * n - 1) {
                throw ConfigError("band workload: k must be in [1, 2n-1], got " + std::to_string(k));
            }
            break;
        case WorkloadKind::File:
            if (path.empty()) throw ConfigError("file workload: path is empty");
            break;
    }
}

std::string WorkloadSpec::label() const {
    switch (kind) {
        case WorkloadKind::Random:
            return "random_n" + std::to_string(n) + "_d" + compact(density) + "_s" + std::to_string(seed);
        case WorkloadKind::Band: return "band_n" + std::to_string(n) + "_k" + std::to_string(k);
        case WorkloadKind::File: return "file_" + path.stem().string();
    }
    return "?";
}

std::string WorkloadSpec::group() const {
    switch (kind) {
        case WorkloadKind::Random: return "random";
        case WorkloadKind::Band: return "band";
        case WorkloadKind::File: return "suitesparse";
    }
    return "?";
}

SparseMatrix gen_random(std::size_t n, double density, std::uint64_t seed) {
    WorkloadSpec spec;
    spec.n = n;
    spec.density = density;
    spec.validate();
    const std::uint64_t cells = static_cast<std::uint64_t>(n) * n;
    std::uint64_t needed = static_cast<std::uint64_t>(std::llround(density * static_cast<double>(cells)));

    std::mt19937_64 rng(seed);
    std::vector<Triplet> triplets;
    triplets.reserve(needed);
    for (std::uint64_t cell = 0; cell < cells && needed > 0; ++cell) {
        const auto remaining = static_cast<double>(cells - cell);
        if (remaining * unit_half_open(rng) >= static_cast<double>(needed)) continue;
        triplets.push_back({cell / n, cell % n, unit_open_closed(rng)});
        --needed;
    }
    return build_matrix(n, n, std::move(triplets));
}

SparseMatrix gen_band(std::size_t n, std::size_t k) {
    WorkloadSpec spec;
    spec.kind = WorkloadKind::Band;
    spec.n = n;
    spec.k = k;
    spec.validate();

    const std::size_t half = k / 2;
    std::vector<Triplet> triplets;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        for (std::size_t j = lo; j <= hi; ++j) {
            triplets.push_back({i, j, 1.0 + static_cast<double>((i * 31 + j * 17) % 97) / 1024.0});
        }
    }
    return build_matrix(n, n, std::move(triplets));
}

SparseMatrix load_workload(const WorkloadSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case WorkloadKind::Random: return gen_random(spec.n, spec.density, spec.seed);
        case WorkloadKind::Band: return gen_band(spec.n, spec.k);
        case WorkloadKind::File: return read_matrix_market(spec.path);
    }
    return {};
}

SparseMatrix read_matrix_market(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError(1, "empty input, expected %%MatrixMarket banner");
    ++line_no;

    std::istringstream banner(line);
    std::string tag, object, layout, field, symmetry;
    banner >> tag >> object >> layout >> field >> symmetry;
    if (tag != "%%MatrixMarket") throw ParseError(line_no, "missing %%MatrixMarket banner");
    object = lower(object);
    layout = lower(layout);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix") throw UnsupportedFormatError("unsupported Matrix Market object '" + object + "'");
    if (layout != "coordinate") throw UnsupportedFormatError("unsupported Matrix Market layout '" + layout + "'");
    if (field != "real" && field != "integer" && field != "pattern") {
        throw UnsupportedFormatError("unsupported Matrix Market field '" + field + "'");
    }
    if (symmetry != "general" && symmetry != "symmetric") {
        throw UnsupportedFormatError("unsupported Matrix Market symmetry '" + symmetry + "'");
    }

    auto next_content_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '%') continue;
            return true;
        }
        return false;
    };

    if (!next_content_line()) throw ParseError(line_no, "missing size line");
    std::size_t rows = 0, cols = 0, declared = 0;
    {
        std::istringstream size_line(line);
        if (!(size_line >> rows >> cols >> declared)) throw ParseError(line_no, "malformed size line '" + line + "'");
    }

    const bool pattern = field == "pattern";
    const bool symmetric = symmetry == "symmetric";
    std::vector<Triplet> triplets;
    triplets.reserve(symmetric ? 2 * declared : declared);
    std::size_t read = 0;
    while (read < declared && next_content_line()) {
        std::istringstream entry(line);
        long long r = 0, c = 0;
        double v = 1.0;
        if (!(entry >> r >> c) || (!pattern && !(entry >> v))) {
            throw ParseError(line_no, "malformed entry '" + line + "'");
        }
        if (r < 1 || c < 1 || static_cast<std::size_t>(r) > rows || static_cast<std::size_t>(c) > cols) {
            throw ParseError(line_no, "entry (" + std::to_string(r) + ", " + std::to_string(c) + ") out of range");
        }
        const auto i = static_cast<Index>(r - 1);
        const auto j = static_cast<Index>(c - 1);
        triplets.push_back({i, j, v});
        if (symmetric && i != j) triplets.push_back({j, i, v});
        ++read;
    }
    if (read != declared) {
        throw ParseError(line_no, "expected " + std::to_string(declared) + " entries, found " + std::to_string(read));
    }
    return build_matrix(rows, cols, std::move(triplets));
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    try {
        return read_matrix_market(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.detail());
    }
}

void write_matrix_market(std::ostream& out, const SparseMatrix& matrix) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << matrix.n_rows() << ' ' << matrix.n_cols() << ' ' << matrix.nnz() << '\n';
    out << std::setprecision(17);
    for (const auto& t : matrix.entries()) out << t.row + 1 << ' ' << t.col + 1 << ' ' << t.value << '\n';
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& matrix) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    write_matrix_market(out, matrix);
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace sparsefmt
