#include "votecode/oracle.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "votecode/parallel.hpp"
#include "votecode/voting.hpp"

namespace votecode {

std::string noise_family_name(NoiseFamily f) {
    return f == NoiseFamily::gaussian ? "gaussian" : "laplace";
}

NoiseFamily parse_noise_family(const std::string& name) {
    if (name == "gaussian" || name == "normal") return NoiseFamily::gaussian;
    if (name == "laplace") return NoiseFamily::laplace;
    throw std::invalid_argument("unknown noise family: " + name);
}

void validate(const OracleConfig& cfg) {
    if (cfg.sigma < 0.0) throw std::invalid_argument("oracle: sigma must be >= 0");
    if (cfg.batch < 1) throw std::invalid_argument("oracle: batch must be >= 1");
}

double snr(const OracleConfig& cfg) {
    validate(cfg);
    if (cfg.sigma == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(cfg.g) * std::sqrt(static_cast<double>(cfg.batch)) / cfg.sigma;
}

double sample_partition_gradient(const OracleConfig& cfg, Rng& rng) {
    if (cfg.sigma == 0.0) return cfg.g;
    double sum = 0.0;
    for (int i = 0; i < cfg.batch; ++i) {
        const double unit = cfg.noise == NoiseFamily::gaussian ? rng.normal() : rng.laplace_unit();
        sum += cfg.sigma * unit;
    }
    return cfg.g + sum / static_cast<double>(cfg.batch);
}

double sign_error_rate(const OracleConfig& cfg, std::int64_t trials, std::uint64_t seed,
                       int threads) {
    validate(cfg);
    if (cfg.g == 0.0) throw std::invalid_argument("sign_error_rate: true gradient must be nonzero");
    if (trials < 1) throw std::invalid_argument("sign_error_rate: trials must be >= 1");

    const Sign truth = sign_of(cfg.g);
    std::vector<std::int64_t> errors(static_cast<std::size_t>(resolve_threads(threads)), 0);
    parallel_for_chunks(trials, threads, [&](int chunk, std::int64_t begin, std::int64_t end) {
        std::int64_t local = 0;
        for (std::int64_t t = begin; t < end; ++t) {
            Rng rng = derive_stream(seed, "oracle-sign", static_cast<std::uint64_t>(t));
            local += sign_of(sample_partition_gradient(cfg, rng)) != truth;
        }
        errors[static_cast<std::size_t>(chunk)] = local;
    });
    std::int64_t total = 0;
    for (std::int64_t e : errors) total += e;
    return static_cast<double>(total) / static_cast<double>(trials);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace votecode
