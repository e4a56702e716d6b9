#include "votecode/allocation.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "votecode/rng.hpp"

namespace votecode {

namespace {

constexpr int kMaxNodes = 64;

void check_n(int n) {
    if (n < 1 || n > kMaxNodes)
        throw std::invalid_argument("allocation: n must be in [1, 64], got " + std::to_string(n));
}

void check_deterministic_params(int n, int b) {
    check_n(n);
    if (n % 2 == 0)
        throw std::invalid_argument("deterministic design requires odd n, got " + std::to_string(n));
    if (n < 3) throw std::invalid_argument("deterministic design requires n >= 3");
    if (b <= 0 || b >= n / 2)
        throw std::invalid_argument("deterministic design requires 0 < b < floor(n/2), got b=" +
                                    std::to_string(b) + " for n=" + std::to_string(n));
    const int s = deterministic_s(n, b);
    const int band = deterministic_band_rows(n, b);
    if (s + band > n)
        throw std::invalid_argument("deterministic design infeasible: s+L > n for n=" +
                                    std::to_string(n) + " b=" + std::to_string(b));
}

std::uint64_t full_mask(int n) { return n == 64 ? ~0ull : (1ull << n) - 1; }

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string code_kind_name(CodeKind kind) {
    switch (kind) {
        case CodeKind::deterministic: return "deterministic";
        case CodeKind::bernoulli: return "bernoulli";
        case CodeKind::identity: return "identity";
        case CodeKind::custom: return "custom";
    }
    return "custom";
}

CodeKind parse_code_kind(const std::string& name) {
    if (name == "deterministic") return CodeKind::deterministic;
    if (name == "bernoulli") return CodeKind::bernoulli;
    if (name == "identity") return CodeKind::identity;
    if (name == "custom") return CodeKind::custom;
    throw std::invalid_argument("unknown code kind: " + name);
}

int AllocationMatrix::row_weight(int i) const { return std::popcount(rows.at(static_cast<std::size_t>(i))); }

std::uint64_t AllocationMatrix::ones() const {
    std::uint64_t total = 0;
    for (std::uint64_t row : rows) total += static_cast<std::uint64_t>(std::popcount(row));
    return total;
}

bool AllocationMatrix::rows_all_odd() const {
    for (std::uint64_t row : rows)
        if (std::popcount(row) % 2 == 0) return false;
    return true;
}

bool AllocationMatrix::has_empty_row() const {
    for (std::uint64_t row : rows)
        if (row == 0) return true;
    return false;
}

Rational AllocationMatrix::redundancy() const {
    return Rational(static_cast<std::int64_t>(ones()), n);
}

std::uint64_t AllocationMatrix::hash() const {
    Fnv1a f;
    f.add_u64(static_cast<std::uint64_t>(n));
    for (std::uint64_t row : rows) f.add_u64(row);
    return f.h;
}

int deterministic_s(int n, int b) { return (n - 1) / 2 - b; }

int deterministic_band_rows(int n, int b) { return (n - (2 * b + 1)) / (2 * (b + 1)) + 1; }

AllocationMatrix build_deterministic(int n, int b) {
    check_deterministic_params(n, b);
    const int s = deterministic_s(n, b);
    const int band = deterministic_band_rows(n, b);
    const int width = 2 * b + 1;

    AllocationMatrix g;
    g.n = n;
    g.kind = CodeKind::deterministic;
    g.b = b;
    g.rows.resize(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < s; ++i) g.rows[static_cast<std::size_t>(i)] = 1ull << i;
    for (int l = 1; l <= band; ++l) {
        const int start = s + (l - 1) * (b + 1);  // 0-based first column of the band
        g.rows[static_cast<std::size_t>(s + l - 1)] = (full_mask(width)) << start;
    }
    for (int i = s + band; i < n; ++i) g.rows[static_cast<std::size_t>(i)] = full_mask(n);
    return g;
}

Rational theoretical_redundancy(int n, int b) {
    check_deterministic_params(n, b);
    // (n + 2b+1)/2 - (floor((n-2b-1)/(2(b+1))) + 1/2) * (n-2b-1)/n over 2n.
    const std::int64_t shift_count = (n - (2 * b + 1)) / (2 * (b + 1));
    const std::int64_t num =
        static_cast<std::int64_t>(n) * (n + 2 * b + 1) - (2 * shift_count + 1) * (n - 2 * b - 1);
    return Rational(num, 2 * static_cast<std::int64_t>(n));
}

BernoulliSample sample_bernoulli(int n, double p, std::uint64_t seed) {
    check_n(n);
    if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("bernoulli design requires 0 < p <= 1, got " + format_double(p));

    BernoulliSample out;
    out.matrix.n = n;
    out.matrix.kind = CodeKind::bernoulli;
    out.matrix.p = p;
    out.matrix.seed = seed;
    out.matrix.rows.resize(static_cast<std::size_t>(n), 0);
    out.expected_r = static_cast<double>(n) * p;

    Rng rng = derive_stream(seed, "bernoulli-matrix");
    for (int i = 0; i < n; ++i) {
        std::uint64_t row = 0;
        for (;;) {
            row = 0;
            for (int j = 0; j < n; ++j)
                if (rng.bernoulli(p)) row |= 1ull << j;
            if (row != 0) break;
            ++out.row_redraws;
        }
        out.matrix.rows[static_cast<std::size_t>(i)] = row;
    }
    return out;
}

AllocationMatrix identity_matrix(int n) {
    check_n(n);
    AllocationMatrix g;
    g.n = n;
    g.kind = CodeKind::identity;
    g.rows.resize(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) g.rows[static_cast<std::size_t>(i)] = 1ull << i;
    return g;
}

std::string matrix_to_text(const AllocationMatrix& g) {
    std::ostringstream out;
    out << "# kind=" << code_kind_name(g.kind) << " n=" << g.n;
    if (g.kind == CodeKind::deterministic) out << " b=" << g.b;
    if (g.kind == CodeKind::bernoulli) out << " p=" << format_double(g.p) << " seed=" << g.seed;
    out << " r=" << format_double(g.redundancy().value()) << "\n";
    for (std::uint64_t row : g.rows) {
        for (int j = 0; j < g.n; ++j) out << (((row >> j) & 1) ? '1' : '0');
        out << "\n";
    }
    return out.str();
}

AllocationMatrix matrix_from_text(std::istream& in) {
    AllocationMatrix g;
    g.kind = CodeKind::custom;
    std::string line;
    std::vector<std::uint64_t> rows;
    int width = -1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            // restore metadata from our own header, ignore other comments
            std::istringstream header(line.substr(1));
            std::string field;
            while (header >> field) {
                const auto eq = field.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = field.substr(0, eq);
                const std::string value = field.substr(eq + 1);
                try {
                    if (key == "kind") g.kind = parse_code_kind(value);
                    else if (key == "b") g.b = std::stoi(value);
                    else if (key == "p") g.p = std::stod(value);
                    else if (key == "seed") g.seed = std::stoull(value);
                } catch (const std::exception&) {
                    throw std::invalid_argument("matrix header: bad field '" + field + "'");
                }
            }
            continue;
        }
        if (width == -1) {
            width = static_cast<int>(line.size());
            if (width < 1 || width > kMaxNodes)
                throw std::invalid_argument("matrix rows must have 1..64 columns");
        } else if (static_cast<int>(line.size()) != width) {
            throw std::invalid_argument("matrix rows have inconsistent lengths");
        }
        std::uint64_t row = 0;
        for (int j = 0; j < width; ++j) {
            if (line[static_cast<std::size_t>(j)] == '1') row |= 1ull << j;
            else if (line[static_cast<std::size_t>(j)] != '0')
                throw std::invalid_argument("matrix rows must contain only '0'/'1'");
        }
        rows.push_back(row);
    }
    if (rows.empty()) throw std::invalid_argument("matrix file contains no rows");
    if (static_cast<int>(rows.size()) != width)
        throw std::invalid_argument("matrix must be square: " + std::to_string(rows.size()) +
                                    " rows of width " + std::to_string(width));
    g.n = width;
    g.rows = std::move(rows);
    return g;
}

AllocationMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    return matrix_from_text(in);
}

}  // namespace votecode
