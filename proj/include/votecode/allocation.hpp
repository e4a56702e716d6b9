#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "votecode/rational.hpp"

namespace votecode {

enum class CodeKind { deterministic, bernoulli, identity, custom };

std::string code_kind_name(CodeKind kind);
CodeKind parse_code_kind(const std::string& name);

// n x n data-allocation matrix: bit j of rows[i] is set iff partition j+1
// is assigned to worker i+1. Immutable after construction; n is capped at
// 64 so a row fits one machine word.
struct AllocationMatrix {
    int n = 0;
    std::vector<std::uint64_t> rows;
    CodeKind kind = CodeKind::custom;
    int b = 0;            // deterministic designs
    double p = 0.0;       // bernoulli designs
    std::uint64_t seed = 0;

    int row_weight(int i) const;
    std::uint64_t ones() const;
    bool rows_all_odd() const;
    bool has_empty_row() const;
    Rational redundancy() const;  // ones()/n, exact
    std::uint64_t hash() const;
};

// Row-block sizes of the deterministic design: s identity rows on top,
// L shifted-band rows of weight 2b+1, all-ones rows below.
int deterministic_s(int n, int b);
int deterministic_band_rows(int n, int b);

// Deterministic design for odd n and 0 < b < floor(n/2): s x s identity on
// top, L band rows carrying 2b+1 consecutive ones shifted by b+1 per row,
// all-ones rows below. Every row weight is odd.
AllocationMatrix build_deterministic(int n, int b);

// Closed-form redundancy of the deterministic design, exact rational.
Rational theoretical_redundancy(int n, int b);

struct BernoulliSample {
    AllocationMatrix matrix;
    int row_redraws = 0;   // all-zero rows redrawn until nonempty
    double expected_r = 0; // n * p
};

// Independent Bern(p) entries from the seeded generator, row-major. A row
// that comes out all-zero is redrawn (and counted): a partition-less worker
// would contribute pure noise to the vote.
BernoulliSample sample_bernoulli(int n, double p, std::uint64_t seed);

AllocationMatrix identity_matrix(int n);

// Text format: optional '#' header lines, then one row per line of '0'/'1'
// characters, first character = partition 1. The header written by
// matrix_to_text carries kind metadata and is restored on load.
std::string matrix_to_text(const AllocationMatrix& g);
AllocationMatrix matrix_from_text(std::istream& in);
AllocationMatrix load_matrix_file(const std::string& path);

}  // namespace votecode
