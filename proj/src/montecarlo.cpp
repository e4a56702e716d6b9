#include "votecode/montecarlo.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "votecode/bounds.hpp"
#include "votecode/parallel.hpp"
#include "votecode/voting.hpp"

namespace votecode {

namespace {

void check_common(const McConfig& cfg) {
    if (cfg.n < 1 || cfg.n > 64) throw std::invalid_argument("montecarlo: n must be in [1,64]");
    if (cfg.trials < 1) throw std::invalid_argument("montecarlo: trials must be >= 1");
    if (cfg.byzantine_count < 0 || cfg.byzantine_count > cfg.n)
        throw std::invalid_argument("montecarlo: byzantine count must be in [0, n]");
    validate(cfg.oracle);
}

ErrorEstimate finish(std::int64_t failures, std::int64_t trials) {
    ErrorEstimate est;
    est.failures = failures;
    est.trials = trials;
    est.rate = static_cast<double>(failures) / static_cast<double>(trials);
    est.std_err = std::sqrt(est.rate * (1.0 - est.rate) / static_cast<double>(trials));
    return est;
}

bool needs_escalation(const ErrorEstimate& est, double bound) {
    if (bound >= 1.0) return false;
    return std::abs(est.rate - bound) < 2.0 * est.std_err && est.std_err > 0.0;
}

// Majority sign over the assigned partitions with the sign-of-sum tie rule
// (real gradient values are available here).
Sign local_vote(std::uint64_t row, int n, const double* values) {
    int pos = 0;
    int assigned = 0;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        if ((row >> j) & 1) {
            ++assigned;
            pos += values[j] >= 0.0;
            sum += values[j];
        }
    }
    if (2 * pos > assigned) return +1;
    if (2 * pos < assigned) return -1;
    return sign_of(sum);
}

}  // namespace

double McConfig::connection_factor() const {
    if (C > 0.0) return C;
    if (code.kind != CodeKind::bernoulli || n < 2) return 1.0;
    const double logn = std::log(static_cast<double>(n));
    return code.p * code.p * static_cast<double>(n) / (4.0 * logn);
}

LocalErrorResult estimate_local_error(const McConfig& cfg) {
    check_common(cfg);
    if (cfg.code.kind != CodeKind::bernoulli)
        throw std::invalid_argument("local error estimation is defined for Bernoulli codes");
    if (!(cfg.code.p > 0.0) || cfg.code.p > 1.0)
        throw std::invalid_argument("montecarlo: p must be in (0,1]");
    if (cfg.oracle.g == 0.0)
        throw std::invalid_argument("montecarlo: true gradient must be nonzero");

    const Sign truth = sign_of(cfg.oracle.g);
    const double bound = q_star(cfg.n, cfg.connection_factor(), snr(cfg.oracle));

    std::int64_t trials = cfg.trials;
    LocalErrorResult out;
    out.bound = bound;
    for (;;) {
        const int slots = resolve_threads(cfg.threads);
        std::vector<std::int64_t> failures(static_cast<std::size_t>(slots), 0);
        std::vector<std::int64_t> redraws(static_cast<std::size_t>(slots), 0);
        parallel_for_chunks(trials, cfg.threads, [&](int chunk, std::int64_t begin, std::int64_t end) {
            std::vector<double> values(static_cast<std::size_t>(cfg.n));
            std::int64_t fail = 0;
            std::int64_t redo = 0;
            for (std::int64_t t = begin; t < end; ++t) {
                Rng rng = derive_stream(cfg.seed, "mc-local", static_cast<std::uint64_t>(t));
                std::uint64_t row = 0;
                for (;;) {
                    row = 0;
                    for (int j = 0; j < cfg.n; ++j)
                        if (rng.bernoulli(cfg.code.p)) row |= 1ull << j;
                    if (row != 0) break;
                    ++redo;
                }
                for (int j = 0; j < cfg.n; ++j)
                    if ((row >> j) & 1)
                        values[static_cast<std::size_t>(j)] = sample_partition_gradient(cfg.oracle, rng);
                fail += local_vote(row, cfg.n, values.data()) != truth;
            }
            failures[static_cast<std::size_t>(chunk)] = fail;
            redraws[static_cast<std::size_t>(chunk)] = redo;
        });
        std::int64_t total_fail = 0;
        std::int64_t total_redraw = 0;
        for (int c = 0; c < slots; ++c) {
            total_fail += failures[static_cast<std::size_t>(c)];
            total_redraw += redraws[static_cast<std::size_t>(c)];
        }
        out.estimate = finish(total_fail, trials);
        out.row_redraws = total_redraw;
        if (!needs_escalation(out.estimate, bound) || trials * 10 > cfg.max_trials) break;
        trials *= 10;
    }
    return out;
}

GlobalErrorResult estimate_global_error(const McConfig& cfg) {
    check_common(cfg);
    if (cfg.oracle.g == 0.0)
        throw std::invalid_argument("montecarlo: true gradient must be nonzero");

    AllocationMatrix fixed;
    bool fresh_matrix_per_trial = false;
    switch (cfg.code.kind) {
        case CodeKind::bernoulli:
            if (!(cfg.code.p > 0.0) || cfg.code.p > 1.0)
                throw std::invalid_argument("montecarlo: p must be in (0,1]");
            fresh_matrix_per_trial = cfg.code.mode == MatrixMode::ensemble;
            if (!fresh_matrix_per_trial)
                fixed = sample_bernoulli(cfg.n, cfg.code.p, derive_seed(cfg.seed, "mc-matrix", 0)).matrix;
            break;
        case CodeKind::deterministic:
            fixed = build_deterministic(cfg.n, cfg.code.b);
            break;
        case CodeKind::identity:
            fixed = identity_matrix(cfg.n);
            break;
        case CodeKind::custom:
            throw std::invalid_argument("montecarlo: custom matrices not supported here");
    }

    const Sign truth = sign_of(cfg.oracle.g);
    Rng byz_rng = derive_stream(cfg.seed, "mc-byzantine");
    AttackSpec spec;
    spec.model = cfg.attack;
    spec.byzantine = select_byzantine_set(cfg.n, cfg.byzantine_count, byz_rng);

    const double bound = cfg.delta > 2.0 ? 1.0 / cfg.delta : 1.0;

    GlobalErrorResult out;
    out.bound = bound;
    out.byzantine_set = spec.byzantine;

    std::int64_t trials = cfg.trials;
    for (;;) {
        const int slots = resolve_threads(cfg.threads);
        std::vector<std::int64_t> failures(static_cast<std::size_t>(slots), 0);
        std::vector<std::int64_t> clean_failures(static_cast<std::size_t>(slots), 0);
        std::vector<std::int64_t> mismatches(static_cast<std::size_t>(slots), 0);
        parallel_for_chunks(trials, cfg.threads, [&](int chunk, std::int64_t begin, std::int64_t end) {
            std::vector<double> values(static_cast<std::size_t>(cfg.n));
            std::int64_t fail = 0;
            std::int64_t clean_fail = 0;
            std::int64_t differ = 0;
            for (std::int64_t t = begin; t < end; ++t) {
                const AllocationMatrix* g = &fixed;
                AllocationMatrix sampled;
                if (fresh_matrix_per_trial) {
                    sampled = sample_bernoulli(cfg.n, cfg.code.p,
                                               derive_seed(cfg.seed, "mc-matrix", static_cast<std::uint64_t>(t)))
                                  .matrix;
                    g = &sampled;
                }
                Rng rng = derive_stream(cfg.seed, "mc-grad", static_cast<std::uint64_t>(t));
                for (int j = 0; j < cfg.n; ++j)
                    values[static_cast<std::size_t>(j)] = sample_partition_gradient(cfg.oracle, rng);

                SignVector c;
                c.v.resize(static_cast<std::size_t>(cfg.n));
                for (int i = 0; i < cfg.n; ++i)
                    c.v[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(
                        local_vote(g->rows[static_cast<std::size_t>(i)], cfg.n, values.data()));

                const Sign clean = decode(c);
                const Sign attacked = decode(apply_attack(c, spec, truth));
                fail += attacked != truth;
                clean_fail += clean != truth;
                differ += attacked != clean;
            }
            failures[static_cast<std::size_t>(chunk)] = fail;
            clean_failures[static_cast<std::size_t>(chunk)] = clean_fail;
            mismatches[static_cast<std::size_t>(chunk)] = differ;
        });
        std::int64_t total_fail = 0;
        std::int64_t total_clean = 0;
        std::int64_t total_mismatch = 0;
        for (int c = 0; c < slots; ++c) {
            total_fail += failures[static_cast<std::size_t>(c)];
            total_clean += clean_failures[static_cast<std::size_t>(c)];
            total_mismatch += mismatches[static_cast<std::size_t>(c)];
        }
        out.estimate = finish(total_fail, trials);
        out.clean_failures = total_clean;
        out.attack_mismatches = total_mismatch;
        if (!needs_escalation(out.estimate, bound) || trials * 10 > cfg.max_trials) break;
        trials *= 10;
    }
    return out;
}

}  // namespace votecode
