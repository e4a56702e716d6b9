#include "votecode/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace votecode {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

void validate(const BoundInputs& in) {
    if (in.n < 2) throw std::invalid_argument("bounds: n must be >= 2");
    if (!(in.C > 0.0)) throw std::invalid_argument("bounds: C must be > 0");
    if (in.S < 0.0) throw std::invalid_argument("bounds: S must be >= 0");
    if (in.alpha < 0.0 || in.alpha >= 1.0) throw std::invalid_argument("bounds: alpha must be in [0,1)");
    if (!(in.delta > 2.0)) throw std::invalid_argument("bounds: delta must be > 2");
}

double p_star(int n, double C) {
    if (n < 2) throw std::invalid_argument("p_star: n must be >= 2");
    if (!(C > 0.0)) throw std::invalid_argument("p_star: C must be > 0");
    return std::min(1.0, 2.0 * std::sqrt(C * std::log(static_cast<double>(n)) / n));
}

double q_star(int n, double C, double S) {
    if (n < 2) throw std::invalid_argument("q_star: n must be >= 2");
    if (!(C > 0.0)) throw std::invalid_argument("q_star: C must be > 0");
    if (S < 0.0) throw std::invalid_argument("q_star: S must be >= 0");
    const double nd = static_cast<double>(n);
    const double poly_arm = 2.0 / std::pow(nd, 2.0 * C);
    const double exp_arm = std::exp(-std::sqrt(C * nd * std::log(nd)) * S * S / (2.0 * (S * S + 4.0)));
    return clamp01(2.0 * std::max(poly_arm, exp_arm));
}

double conditional_local_error(double n_i, double S) {
    if (n_i < 0.0) throw std::invalid_argument("conditional_local_error: n_i must be >= 0");
    if (S < 0.0) throw std::invalid_argument("conditional_local_error: S must be >= 0");
    return clamp01(std::exp(-n_i * S * S / (2.0 * (S * S + 4.0))));
}

double hoeffding_tail(double n, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("hoeffding_tail: eps must be > 0");
    if (n < 0.0) throw std::invalid_argument("hoeffding_tail: n must be >= 0");
    return clamp01(std::exp(-2.0 * eps * eps * n));
}

double sign_error_bound(double S) {
    if (S < 0.0) throw std::invalid_argument("sign_error_bound: S must be >= 0");
    const double threshold = 2.0 / std::sqrt(3.0);
    if (S > threshold) return (2.0 / 9.0) / (S * S);
    return 0.5 - S / (2.0 * std::sqrt(3.0));
}

Certificate certify_global_error(const BoundInputs& in) {
    validate(in);
    Certificate cert;
    cert.u_star_min = 1.0 - q_star(in.n, in.C, in.S);
    cert.bound = 1.0 / in.delta;
    cert.vacuous = cert.u_star_min <= 0.5;
    if (cert.u_star_min <= 0.0) {
        cert.rhs = std::numeric_limits<double>::infinity();
        cert.certified = false;
        return cert;
    }
    const double log_ratio = std::log(in.delta) / static_cast<double>(in.n);
    const double root = std::sqrt(log_ratio) + std::sqrt(log_ratio + 4.0 * cert.u_star_min);
    cert.rhs = root * root / (8.0 * cert.u_star_min * cert.u_star_min);
    cert.certified = (1.0 - in.alpha) > cert.rhs;
    return cert;
}

}  // namespace votecode
