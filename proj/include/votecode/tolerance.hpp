#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "votecode/allocation.hpp"

namespace votecode {

enum class VerifyMethod { lemma_weight, bruteforce };

std::string verify_method_name(VerifyMethod m);

struct ToleranceWitness {
    std::uint64_t message_bits = 0;  // binary message, bit j-1 = partition j
    int violating_count = 0;         // weight-condition count, or post-attack codeword weight
};

struct ToleranceReport {
    int n = 0;
    int b = 0;
    bool tolerant = false;
    std::optional<ToleranceWitness> witness;  // present iff not tolerant
    std::uint64_t messages_checked = 0;       // size of the method's message space
    VerifyMethod method = VerifyMethod::lemma_weight;

    std::string witness_string() const;  // "11000" style, empty when tolerant
};

// C(n, k) in exact integer arithmetic; intended for the n <= 31 range the
// verifiers enumerate.
std::uint64_t binomial(int n, int k);

// Next k-subset mask in ascending numeric order (Gosper's hack).
std::uint64_t next_combination(std::uint64_t v);

// The rank-th k-subset of [0,n) in ascending-mask order (combinadic unranking);
// used to hand disjoint rank ranges to worker threads.
std::uint64_t unrank_combination(std::uint64_t rank, int n, int k);

// Weight-condition check: tolerant iff every binary message of weight
// floor(n/2) lights at most floor(n/2) - b workers. Requires odd row weights;
// refuses n > 31 (C(31,15) is the practical enumeration ceiling). The message
// space is scanned in ascending-mask order and the first violating message is
// reported; parallel runs return the same witness.
ToleranceReport verify_lemma2(const AllocationMatrix& g, int b, int threads = 1);

// Independent oracle: enumerates all 2^n messages, encodes, applies the
// worst-case flip of up to b codeword coordinates toward the wrong side, and
// decodes. Tolerant iff the decoded sign always equals the message majority.
// Refuses n > 15.
ToleranceReport verify_bruteforce(const AllocationMatrix& g, int b, int threads = 1);

}  // namespace votecode
