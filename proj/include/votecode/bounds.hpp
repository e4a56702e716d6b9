#pragma once

namespace votecode {

// Closed-form error bounds for the random-code analysis. Natural logarithms
// throughout. Everything that is a probability is clamped to [0,1]: the raw
// expressions exceed 1 for small n or S, and a vacuous bound must read 1.
struct BoundInputs {
    int n = 2;          // node count
    double C = 1.0;     // connection factor, p = 2*sqrt(C*log(n)/n)
    double S = 0.0;     // per-partition mini-batch SNR
    double alpha = 0.0; // Byzantine fraction b/n
    double delta = 0.0; // certification target, > 2
};

void validate(const BoundInputs& in);

// Connection probability threshold 2*sqrt(C*log(n)/n), clamped to 1.
double p_star(int n, double C);

// Local estimation error bound for an intact node:
// 2 * max{ 2/n^(2C), exp(-sqrt(C n log n) * S^2 / (2(S^2+4))) }, clamped.
double q_star(int n, double C, double S);

// Local error of a node holding n_i partitions: exp(-n_i S^2 / (2(S^2+4))),
// clamped; n_i = 0 gives 1 (no information).
double conditional_local_error(double n_i, double S);

// One-sided binomial tail bound exp(-2 eps^2 n).
double hoeffding_tail(double n, double eps);

// Single-draw sign error bound: (2/9)/S^2 for S > 2/sqrt(3), else 1/2 - S/(2 sqrt 3).
double sign_error_bound(double S);

struct Certificate {
    bool certified = false;  // 1 - alpha strictly exceeds the honest-portion threshold
    bool vacuous = false;    // u_star_min <= 1/2: the asymptotic condition cannot be met
    double u_star_min = 0.0; // 1 - q_star
    double rhs = 0.0;        // honest-portion threshold evaluated at u_star_min
    double bound = 0.0;      // guaranteed global error bound 1/delta when certified
};

// Evaluates the sufficient condition on the Byzantine-free portion; when it
// holds, the per-coordinate global sign-error is below 1/delta.
Certificate certify_global_error(const BoundInputs& in);

}  // namespace votecode
