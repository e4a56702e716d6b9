#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "votecode/allocation.hpp"

namespace votecode {

using Sign = int;  // +1 or -1

// sign(0) = +1, applied consistently everywhere.
inline Sign sign_of(double x) { return x < 0.0 ? -1 : +1; }

// Length-n vector over {+1,-1} with a bijective {+1,-1} <-> {1,0} bit view
// (bit j-1 of the mask is element j).
struct SignVector {
    std::vector<std::int8_t> v;

    SignVector() = default;
    explicit SignVector(std::vector<std::int8_t> values) : v(std::move(values)) {}

    static SignVector from_bits(std::uint64_t mask, int n);
    // accepts "+-+" or "101" style strings
    static SignVector from_string(const std::string& s);

    int size() const { return static_cast<int>(v.size()); }
    Sign operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

    std::uint64_t to_bits() const;
    int weight() const;  // count of +1 entries
    SignVector negated() const;
    std::string to_string01() const;

    bool operator==(const SignVector&) const = default;
};

// Local encoders: worker i votes the strict majority of the message over its
// assigned partitions. Ties (possible only for even row weights, i.e. under
// Bernoulli designs) break to +1 in the pure sign domain; the overload taking
// the real-valued partition gradients breaks a tie with the sign of their sum.
SignVector encode(const SignVector& m, const AllocationMatrix& g);
SignVector encode(const SignVector& m, const AllocationMatrix& g, std::span<const double> values);

// Global decoder: +1 iff weight(y) > floor(n/2); a tie at exactly floor(n/2)
// (even n) decodes to -1.
Sign decode(const SignVector& y);

// Bit-domain versions used in combinatorial hot loops. encode_row_bit
// implements the same +1 tie rule as encode.
inline bool encode_row_bit(std::uint64_t m_bits, std::uint64_t row, int row_weight) {
    return 2 * std::popcount(m_bits & row) >= row_weight + (row_weight & 1);
}
std::uint64_t encode_bits(std::uint64_t m_bits, const AllocationMatrix& g);
inline bool decode_bits(std::uint64_t y_bits, int n) { return std::popcount(y_bits) > n / 2; }

// |S_v(m)| for each v with a weight-(2v-1) row present in g: the number of
// such rows whose overlap with the positive entries of m is at least v.
// Requires all row weights odd.
std::map<int, int> s_v_count(const SignVector& m, const AllocationMatrix& g);

}  // namespace votecode
