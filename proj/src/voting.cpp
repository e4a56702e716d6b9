#include "votecode/voting.hpp"

#include <bit>
#include <stdexcept>

namespace votecode {

namespace {

void check_message(const SignVector& m, const AllocationMatrix& g) {
    if (m.size() != g.n)
        throw std::invalid_argument("message length " + std::to_string(m.size()) +
                                    " does not match matrix n=" + std::to_string(g.n));
    if (g.has_empty_row())
        throw std::invalid_argument("allocation matrix has an empty row (unsanitized sample?)");
}

}  // namespace

SignVector SignVector::from_bits(std::uint64_t mask, int n) {
    SignVector out;
    out.v.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) out.v[static_cast<std::size_t>(j)] = ((mask >> j) & 1) ? +1 : -1;
    return out;
}

SignVector SignVector::from_string(const std::string& s) {
    SignVector out;
    out.v.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '+': case '1': out.v.push_back(+1); break;
            case '-': case '0': out.v.push_back(-1); break;
            default: throw std::invalid_argument("sign vector characters must be one of +-10");
        }
    }
    if (out.v.empty()) throw std::invalid_argument("empty sign vector");
    return out;
}

std::uint64_t SignVector::to_bits() const {
    std::uint64_t mask = 0;
    for (int j = 0; j < size(); ++j)
        if (v[static_cast<std::size_t>(j)] > 0) mask |= 1ull << j;
    return mask;
}

int SignVector::weight() const {
    int w = 0;
    for (auto s : v) w += s > 0;
    return w;
}

SignVector SignVector::negated() const {
    SignVector out = *this;
    for (auto& s : out.v) s = static_cast<std::int8_t>(-s);
    return out;
}

std::string SignVector::to_string01() const {
    std::string s(static_cast<std::size_t>(size()), '0');
    for (int j = 0; j < size(); ++j)
        if (v[static_cast<std::size_t>(j)] > 0) s[static_cast<std::size_t>(j)] = '1';
    return s;
}

SignVector encode(const SignVector& m, const AllocationMatrix& g) {
    check_message(m, g);
    const std::uint64_t bits = m.to_bits();
    SignVector c;
    c.v.resize(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        const std::uint64_t row = g.rows[static_cast<std::size_t>(i)];
        c.v[static_cast<std::size_t>(i)] = encode_row_bit(bits, row, std::popcount(row)) ? +1 : -1;
    }
    return c;
}

SignVector encode(const SignVector& m, const AllocationMatrix& g, std::span<const double> values) {
    check_message(m, g);
    if (static_cast<int>(values.size()) != g.n)
        throw std::invalid_argument("partition value count does not match matrix n");
    const std::uint64_t bits = m.to_bits();
    SignVector c;
    c.v.resize(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        const std::uint64_t row = g.rows[static_cast<std::size_t>(i)];
        const int w = std::popcount(row);
        const int pos = std::popcount(bits & row);
        Sign vote;
        if (2 * pos > w) {
            vote = +1;
        } else if (2 * pos < w) {
            vote = -1;
        } else {
            double sum = 0;
            for (int j = 0; j < g.n; ++j)
                if ((row >> j) & 1) sum += values[static_cast<std::size_t>(j)];
            vote = sign_of(sum);
        }
        c.v[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(vote);
    }
    return c;
}

Sign decode(const SignVector& y) { return y.weight() > y.size() / 2 ? +1 : -1; }

std::uint64_t encode_bits(std::uint64_t m_bits, const AllocationMatrix& g) {
    std::uint64_t c = 0;
    for (int i = 0; i < g.n; ++i) {
        const std::uint64_t row = g.rows[static_cast<std::size_t>(i)];
        if (row == 0)
            throw std::invalid_argument("allocation matrix has an empty row (unsanitized sample?)");
        if (encode_row_bit(m_bits, row, std::popcount(row))) c |= 1ull << i;
    }
    return c;
}

std::map<int, int> s_v_count(const SignVector& m, const AllocationMatrix& g) {
    check_message(m, g);
    if (!g.rows_all_odd())
        throw std::invalid_argument("s_v counting requires odd row weights");
    const std::uint64_t bits = m.to_bits();
    std::map<int, int> counts;
    for (int i = 0; i < g.n; ++i) {
        const std::uint64_t row = g.rows[static_cast<std::size_t>(i)];
        const int v = (std::popcount(row) + 1) / 2;  // weight = 2v-1
        auto [it, inserted] = counts.try_emplace(v, 0);
        if (std::popcount(bits & row) >= v) ++it->second;
    }
    return counts;
}

}  // namespace votecode
