#include "votecode/tolerance.hpp"

#include <atomic>
#include <bit>
#include <stdexcept>
#include <vector>

#include "votecode/parallel.hpp"
#include "votecode/voting.hpp"

namespace votecode {

namespace {

constexpr std::uint64_t kNoViolation = ~0ull;

struct RowTable {
    std::vector<std::uint64_t> masks;
    std::vector<int> thresholds;  // minimum overlap that makes the row vote +1
};

RowTable make_row_table(const AllocationMatrix& g, bool require_odd) {
    RowTable t;
    t.masks.reserve(g.rows.size());
    t.thresholds.reserve(g.rows.size());
    for (std::uint64_t row : g.rows) {
        const int w = std::popcount(row);
        if (w == 0) throw std::invalid_argument("tolerance: allocation matrix has an empty row");
        if (require_odd && w % 2 == 0)
            throw std::invalid_argument("tolerance: weight-condition check requires odd row weights");
        t.masks.push_back(row);
        t.thresholds.push_back(w / 2 + 1);
    }
    return t;
}

int positive_votes(std::uint64_t m, const RowTable& t) {
    int count = 0;
    for (std::size_t i = 0; i < t.masks.size(); ++i)
        count += std::popcount(m & t.masks[i]) >= t.thresholds[i];
    return count;
}

// Flips up to b bits of c toward the wrong side of the vote: sets clear bits
// when the majority is negative, clears set bits otherwise. Which bits get
// flipped does not matter for the decoder, only the weight does.
std::uint64_t worst_case_attack(std::uint64_t c, int n, int b, bool majority_positive) {
    std::uint64_t y = c;
    int budget = b;
    if (majority_positive) {
        while (budget > 0 && y != 0) {
            y &= y - 1;  // clear lowest set bit
            --budget;
        }
    } else {
        const std::uint64_t all = n == 64 ? ~0ull : (1ull << n) - 1;
        std::uint64_t zeros = all & ~y;
        while (budget > 0 && zeros != 0) {
            y |= zeros & (0 - zeros);  // set lowest clear bit
            zeros &= zeros - 1;
            --budget;
        }
    }
    return y;
}

}  // namespace

std::string verify_method_name(VerifyMethod m) {
    return m == VerifyMethod::lemma_weight ? "lemma2" : "bruteforce";
}

std::string ToleranceReport::witness_string() const {
    if (!witness) return {};
    std::string s(static_cast<std::size_t>(n), '0');
    for (int j = 0; j < n; ++j)
        if ((witness->message_bits >> j) & 1) s[static_cast<std::size_t>(j)] = '1';
    return s;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

std::uint64_t next_combination(std::uint64_t v) {
    const std::uint64_t low = v & (0 - v);
    const std::uint64_t carry = v + low;
    return carry | (((v ^ carry) / low) >> 2);
}

std::uint64_t unrank_combination(std::uint64_t rank, int n, int k) {
    std::uint64_t mask = 0;
    for (int i = k; i >= 1; --i) {
        int c = i - 1;
        while (c + 1 < n && binomial(c + 1, i) <= rank) ++c;
        mask |= 1ull << c;
        rank -= binomial(c, i);
    }
    return mask;
}

ToleranceReport verify_lemma2(const AllocationMatrix& g, int b, int threads) {
    if (g.n > 31)
        throw std::invalid_argument("verify_lemma2: n must be <= 31, got " + std::to_string(g.n));
    if (b < 0 || b >= (g.n + 1) / 2)
        throw std::invalid_argument("verify_lemma2: b must be in [0, ceil(n/2))");
    const RowTable table = make_row_table(g, /*require_odd=*/true);

    const int k = g.n / 2;
    const int allowed = g.n / 2 - b;
    const std::uint64_t total = binomial(g.n, k);

    ToleranceReport report;
    report.n = g.n;
    report.b = b;
    report.method = VerifyMethod::lemma_weight;
    report.messages_checked = total;

    std::atomic<std::uint64_t> best_rank{kNoViolation};

    parallel_for_chunks(static_cast<std::int64_t>(total), threads,
                        [&](int, std::int64_t begin, std::int64_t end) {
        std::uint64_t m = unrank_combination(static_cast<std::uint64_t>(begin), g.n, k);
        for (std::int64_t r = begin; r < end; ++r) {
            if (positive_votes(m, table) > allowed) {
                std::uint64_t prev = best_rank.load(std::memory_order_relaxed);
                const auto rank = static_cast<std::uint64_t>(r);
                while (rank < prev && !best_rank.compare_exchange_weak(prev, rank)) {}
                return;  // first hit in this chunk is its smallest rank
            }
            // occasional early exit once an earlier chunk already has a witness
            if ((r & 0xfff) == 0 && best_rank.load(std::memory_order_relaxed) < static_cast<std::uint64_t>(r))
                return;
            m = next_combination(m);
        }
    });

    const std::uint64_t rank = best_rank.load();
    if (rank == kNoViolation) {
        report.tolerant = true;
        return report;
    }
    const std::uint64_t witness_bits = unrank_combination(rank, g.n, k);
    report.tolerant = false;
    report.witness = ToleranceWitness{witness_bits, positive_votes(witness_bits, table)};
    return report;
}

ToleranceReport verify_bruteforce(const AllocationMatrix& g, int b, int threads) {
    if (g.n > 15)
        throw std::invalid_argument("verify_bruteforce: n must be <= 15, got " + std::to_string(g.n));
    if (b < 0 || b > g.n) throw std::invalid_argument("verify_bruteforce: b must be in [0, n]");
    const RowTable table = make_row_table(g, /*require_odd=*/false);

    const std::uint64_t total = 1ull << g.n;
    const int half = g.n / 2;

    ToleranceReport report;
    report.n = g.n;
    report.b = b;
    report.method = VerifyMethod::bruteforce;
    report.messages_checked = total;

    std::atomic<std::uint64_t> best_message{kNoViolation};

    parallel_for_chunks(static_cast<std::int64_t>(total), threads,
                        [&](int, std::int64_t begin, std::int64_t end) {
        for (std::int64_t mi = begin; mi < end; ++mi) {
            const auto m = static_cast<std::uint64_t>(mi);
            const bool majority = std::popcount(m) > half;
            std::uint64_t c = 0;
            for (std::size_t i = 0; i < table.masks.size(); ++i)
                if (std::popcount(m & table.masks[i]) >= table.thresholds[i]) c |= 1ull << i;
            const std::uint64_t y = worst_case_attack(c, g.n, b, majority);
            const bool decoded = std::popcount(y) > half;
            if (decoded != majority) {
                std::uint64_t prev = best_message.load(std::memory_order_relaxed);
                while (m < prev && !best_message.compare_exchange_weak(prev, m)) {}
                return;
            }
            if ((mi & 0xfff) == 0 && best_message.load(std::memory_order_relaxed) < m) return;
        }
    });

    const std::uint64_t m = best_message.load();
    if (m == kNoViolation) {
        report.tolerant = true;
        return report;
    }
    // recompute the attacked weight for the winning message
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < table.masks.size(); ++i)
        if (std::popcount(m & table.masks[i]) >= table.thresholds[i]) c |= 1ull << i;
    const bool majority = std::popcount(m) > half;
    const std::uint64_t y = worst_case_attack(c, g.n, b, majority);
    report.tolerant = false;
    report.witness = ToleranceWitness{m, std::popcount(y)};
    return report;
}

}  // namespace votecode
