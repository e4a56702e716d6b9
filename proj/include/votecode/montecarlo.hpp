#pragma once

#include <cstdint>
#include <vector>

#include "votecode/allocation.hpp"
#include "votecode/attacks.hpp"
#include "votecode/oracle.hpp"

namespace votecode {

// ensemble: fresh matrix per trial, estimating the code-ensemble average the
// random-code analysis describes. fixed: one realization sampled up front,
// estimating a deployed code's error.
enum class MatrixMode { ensemble, fixed };

struct McCodeSpec {
    CodeKind kind = CodeKind::bernoulli;
    double p = 0.0;                        // bernoulli
    int b = 0;                             // deterministic design parameter
    MatrixMode mode = MatrixMode::ensemble;
};

struct McConfig {
    int n = 0;
    McCodeSpec code;
    OracleConfig oracle;
    AttackModel attack = AttackModel::oracle_reverse;
    int byzantine_count = 0;
    std::int64_t trials = 10000;
    // Trials escalate x10 while the estimate sits within 2 std errors of the
    // relevant analytical bound, up to this ceiling (0 = no escalation).
    std::int64_t max_trials = 0;
    std::uint64_t seed = 0;
    int threads = 1;
    // Reporting/escalation context. C <= 0 derives the connection factor from
    // p via p = 2*sqrt(C log(n)/n); delta <= 2 disables the global bound.
    double C = 0.0;
    double delta = 0.0;

    double connection_factor() const;  // resolved C
    double alpha() const { return n > 0 ? static_cast<double>(byzantine_count) / n : 0.0; }
};

struct ErrorEstimate {
    double rate = 0.0;
    double std_err = 0.0;
    std::int64_t trials = 0;
    std::int64_t failures = 0;
};

struct LocalErrorResult {
    ErrorEstimate estimate;
    std::int64_t row_redraws = 0;
    double bound = 1.0;  // q_star at the resolved connection factor
};

struct GlobalErrorResult {
    ErrorEstimate estimate;
    std::int64_t clean_failures = 0;     // attack-free decoder errors, same trials
    std::int64_t attack_mismatches = 0;  // trials where attacked and clean decisions differ
    double bound = 1.0;                  // 1/delta when delta > 2
    std::vector<int> byzantine_set;
};

// P(worker vote != sign(g)) for a single Bernoulli-coded worker: the worker's
// partition row and the partition gradients are redrawn every trial.
LocalErrorResult estimate_local_error(const McConfig& cfg);

// P(decoded sign != sign(g)) under the configured attack. Bernoulli codes
// resample the matrix per trial in ensemble mode; deterministic and identity
// codes keep one fixed matrix.
GlobalErrorResult estimate_global_error(const McConfig& cfg);

}  // namespace votecode
