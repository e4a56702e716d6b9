#pragma once

#include <cstdint>
#include <string>

#include "votecode/rng.hpp"

namespace votecode {

enum class NoiseFamily { gaussian, laplace };

std::string noise_family_name(NoiseFamily f);
NoiseFamily parse_noise_family(const std::string& name);

// Per-partition stochastic gradient source: mean of `batch` iid draws around
// the true value g, each with standard deviation sigma. Both families are
// symmetric and unimodal about g.
struct OracleConfig {
    double g = 0.0;
    double sigma = 0.0;
    int batch = 1;
    NoiseFamily noise = NoiseFamily::gaussian;
};

void validate(const OracleConfig& cfg);

// |g| * sqrt(batch) / sigma; infinity for a noiseless oracle.
double snr(const OracleConfig& cfg);

double sample_partition_gradient(const OracleConfig& cfg, Rng& rng);

// Empirical fraction of draws whose sign disagrees with sign(g).
// Deterministic for a fixed seed at any thread count.
double sign_error_rate(const OracleConfig& cfg, std::int64_t trials, std::uint64_t seed,
                       int threads = 1);

// Standard normal CDF; the exact Gaussian sign-error rate is Phi(-S).
double normal_cdf(double x);

}  // namespace votecode
