#include "votecode/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "votecode/parallel.hpp"
#include "votecode/voting.hpp"

namespace votecode {

namespace {

constexpr double kDivergenceThreshold = 1e6;

double softplus(double u) {
    // log(1 + exp(u)) without overflow
    if (u > 35.0) return u;
    if (u < -35.0) return std::exp(u);
    return std::log1p(std::exp(u));
}

double logistic_sigmoid(double u) {
    if (u >= 0.0) {
        const double e = std::exp(-u);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(u);
    return e / (1.0 + e);
}

struct LogisticData {
    std::vector<double> features;  // samples x dim, row-major
    std::vector<int> labels;       // +1/-1
    int samples = 0;
    int dim = 0;
    int per_partition = 0;

    const double* row(int i) const { return features.data() + static_cast<std::size_t>(i) * dim; }
};

LogisticData make_logistic_data(const TrainConfig& cfg) {
    LogisticData data;
    data.dim = cfg.dim;
    data.per_partition = cfg.samples / cfg.n;
    if (data.per_partition < 1)
        throw std::invalid_argument("trainer: need at least one sample per partition");
    data.samples = data.per_partition * cfg.n;
    data.features.resize(static_cast<std::size_t>(data.samples) * cfg.dim);
    data.labels.resize(static_cast<std::size_t>(data.samples));

    Rng rng = derive_stream(cfg.seed, "train-data");
    std::vector<double> planted(static_cast<std::size_t>(cfg.dim));
    for (auto& v : planted) v = rng.normal();
    for (int i = 0; i < data.samples; ++i) {
        double z = 0.0;
        for (int k = 0; k < cfg.dim; ++k) {
            const double x = rng.normal();
            data.features[static_cast<std::size_t>(i) * cfg.dim + k] = x;
            z += x * planted[static_cast<std::size_t>(k)];
        }
        int label = sign_of(z);
        if (cfg.label_noise > 0.0 && rng.bernoulli(cfg.label_noise)) label = -label;
        data.labels[static_cast<std::size_t>(i)] = label;
    }
    return data;
}

// full-dataset logistic loss and gradient at w
void logistic_loss_grad(const LogisticData& data, const std::vector<double>& w, double& loss,
                        std::vector<double>& grad) {
    loss = 0.0;
    std::fill(grad.begin(), grad.end(), 0.0);
    for (int i = 0; i < data.samples; ++i) {
        const double* x = data.row(i);
        const double y = data.labels[static_cast<std::size_t>(i)];
        double z = 0.0;
        for (int k = 0; k < data.dim; ++k) z += x[k] * w[static_cast<std::size_t>(k)];
        loss += softplus(-y * z);
        const double s = -y * logistic_sigmoid(-y * z);
        for (int k = 0; k < data.dim; ++k) grad[static_cast<std::size_t>(k)] += s * x[k];
    }
    const double inv = 1.0 / static_cast<double>(data.samples);
    loss *= inv;
    for (auto& gk : grad) gk *= inv;
}

void check_config(const TrainConfig& cfg) {
    if (cfg.dim < 1) throw std::invalid_argument("trainer: dim must be >= 1");
    if (cfg.n < 1 || cfg.n > 64) throw std::invalid_argument("trainer: n must be in [1,64]");
    if (cfg.steps < 1) throw std::invalid_argument("trainer: steps must be >= 1");
    if (!(cfg.gamma > 0.0) && cfg.schedule == LrSchedule::fixed)
        throw std::invalid_argument("trainer: gamma must be > 0");
    if (cfg.momentum < 0.0 || cfg.momentum >= 1.0)
        throw std::invalid_argument("trainer: momentum must be in [0,1)");
    if (!(cfg.batch_reduction > 0.0) || cfg.batch_reduction > 1.0)
        throw std::invalid_argument("trainer: batch_reduction must be in (0,1]");
    if (cfg.batch < 1) throw std::invalid_argument("trainer: batch must be >= 1");
    if (cfg.sigma < 0.0) throw std::invalid_argument("trainer: sigma must be >= 0");
    if (cfg.byzantine_count < 0 || cfg.byzantine_count > cfg.n)
        throw std::invalid_argument("trainer: byzantine count must be in [0,n]");
    if (cfg.task == TaskKind::logistic && cfg.samples < cfg.n)
        throw std::invalid_argument("trainer: logistic task needs samples >= n");
}

}  // namespace

std::string task_kind_name(TaskKind t) { return t == TaskKind::quadratic ? "quadratic" : "logistic"; }

TaskKind parse_task_kind(const std::string& name) {
    if (name == "quadratic") return TaskKind::quadratic;
    if (name == "logistic") return TaskKind::logistic;
    throw std::invalid_argument("unknown task: " + name);
}

double theory_learning_rate(double f0, double f_star, double l1_lipschitz, int steps) {
    if (!(l1_lipschitz > 0.0) || steps < 1 || f0 < f_star)
        throw std::invalid_argument("theory learning rate needs f0 >= f*, ||L||_1 > 0, steps >= 1");
    return std::sqrt((f0 - f_star) / (l1_lipschitz * static_cast<double>(steps)));
}

TrainTrace train(const TrainConfig& cfg) {
    check_config(cfg);

    AllocationMatrix g;
    switch (cfg.code.kind) {
        case CodeKind::deterministic: g = build_deterministic(cfg.n, cfg.code.b); break;
        case CodeKind::bernoulli:
            g = sample_bernoulli(cfg.n, cfg.code.p, derive_seed(cfg.seed, "train-matrix")).matrix;
            break;
        case CodeKind::identity: g = identity_matrix(cfg.n); break;
        case CodeKind::custom: throw std::invalid_argument("trainer: custom matrices not supported");
    }

    AttackSpec spec;
    spec.model = cfg.byzantine_count > 0 ? cfg.attack : AttackModel::none;
    if (cfg.byzantine_count > 0) {
        Rng byz_rng = derive_stream(cfg.seed, "train-byzantine");
        spec.byzantine = select_byzantine_set(cfg.n, cfg.byzantine_count, byz_rng);
    }
    spec.direction.assign(1, static_cast<std::int8_t>(cfg.direction));

    const int batch_eff = static_cast<int>(
        std::ceil(cfg.batch_reduction * static_cast<double>(cfg.batch)));

    LogisticData data;
    std::vector<double> w_star;
    if (cfg.task == TaskKind::logistic) {
        data = make_logistic_data(cfg);
    } else {
        w_star.assign(static_cast<std::size_t>(cfg.dim), cfg.w_star);
    }

    std::vector<double> w(static_cast<std::size_t>(cfg.dim), 0.0);

    TrainTrace trace;
    trace.byzantine_set = spec.byzantine;
    trace.code_kind = g.kind;
    trace.matrix_hash = g.hash();
    trace.realized_r = g.redundancy();
    trace.grad_samples_per_step = static_cast<std::int64_t>(g.ones()) * batch_eff;

    const auto loss_grad = [&](const std::vector<double>& at, double& loss, std::vector<double>& grad) {
        if (cfg.task == TaskKind::logistic) {
            logistic_loss_grad(data, at, loss, grad);
        } else {
            loss = 0.0;
            for (int k = 0; k < cfg.dim; ++k) {
                const double diff = at[static_cast<std::size_t>(k)] - w_star[static_cast<std::size_t>(k)];
                grad[static_cast<std::size_t>(k)] = diff;
                loss += 0.5 * diff * diff;
            }
        }
    };

    std::vector<double> true_grad(static_cast<std::size_t>(cfg.dim), 0.0);
    double loss0 = 0.0;
    loss_grad(w, loss0, true_grad);
    trace.f0 = loss0;

    if (cfg.task == TaskKind::quadratic) {
        trace.l1_lipschitz = static_cast<double>(cfg.dim);  // unit curvature per coordinate
    } else {
        // standard bound: coordinate curvature of the logistic loss is at most
        // (1/4N) sum_i x_{i,k}^2
        double total = 0.0;
        for (double x : data.features) total += x * x;
        trace.l1_lipschitz = total / (4.0 * static_cast<double>(data.samples));
    }
    trace.gamma_used = cfg.schedule == LrSchedule::theory
                           ? theory_learning_rate(trace.f0, 0.0, trace.l1_lipschitz, cfg.steps)
                           : cfg.gamma;

    // persistent per-partition streams: draws advance identically no matter
    // how partitions are scheduled onto threads
    std::vector<Rng> part_rng;
    part_rng.reserve(static_cast<std::size_t>(cfg.n));
    for (int j = 0; j < cfg.n; ++j)
        part_rng.push_back(derive_stream(cfg.seed, "train-partition", static_cast<std::uint64_t>(j)));

    // Signum buffers, one per (partition, coordinate); the vote is the sign of
    // the momentum-averaged partition gradient
    std::vector<std::vector<double>> buffer(
        static_cast<std::size_t>(cfg.n), std::vector<double>(static_cast<std::size_t>(cfg.dim), 0.0));
    std::vector<std::vector<double>> part_grad = buffer;

    std::vector<std::int8_t> mu(static_cast<std::size_t>(cfg.dim), 0);
    const double gamma = trace.gamma_used;
    const Sign dir_sign = cfg.direction;

    trace.loss.reserve(static_cast<std::size_t>(cfg.steps));
    trace.l1_grad.reserve(static_cast<std::size_t>(cfg.steps));
    trace.mu_digest.reserve(static_cast<std::size_t>(cfg.steps));

    double loss = 0.0;
    for (int t = 0; t < cfg.steps; ++t) {
        loss_grad(w, loss, true_grad);
        double l1 = 0.0;
        for (double gk : true_grad) l1 += std::abs(gk);
        trace.loss.push_back(loss);
        trace.l1_grad.push_back(l1);
        trace.steps_run = t + 1;
        if (!std::isfinite(loss) || loss > kDivergenceThreshold) {
            trace.diverged = true;
            trace.mu_digest.push_back(0);
            break;
        }

        // per-partition mini-batch gradients and momentum update
        parallel_for_chunks(cfg.n, cfg.threads, [&](int, std::int64_t begin, std::int64_t end) {
            for (std::int64_t j = begin; j < end; ++j) {
                auto& rng = part_rng[static_cast<std::size_t>(j)];
                auto& gj = part_grad[static_cast<std::size_t>(j)];
                if (cfg.task == TaskKind::quadratic) {
                    for (int k = 0; k < cfg.dim; ++k) {
                        double noise = 0.0;
                        if (cfg.sigma > 0.0) {
                            double sum = 0.0;
                            for (int s = 0; s < batch_eff; ++s)
                                sum += cfg.noise == NoiseFamily::gaussian ? rng.normal()
                                                                          : rng.laplace_unit();
                            noise = cfg.sigma * sum / static_cast<double>(batch_eff);
                        }
                        gj[static_cast<std::size_t>(k)] = true_grad[static_cast<std::size_t>(k)] + noise;
                    }
                } else {
                    std::fill(gj.begin(), gj.end(), 0.0);
                    const int base = static_cast<int>(j) * data.per_partition;
                    for (int s = 0; s < batch_eff; ++s) {
                        const int i = base + static_cast<int>(rng.below(
                                                 static_cast<std::uint64_t>(data.per_partition)));
                        const double* x = data.row(i);
                        const double y = data.labels[static_cast<std::size_t>(i)];
                        double z = 0.0;
                        for (int k = 0; k < cfg.dim; ++k) z += x[k] * w[static_cast<std::size_t>(k)];
                        const double s_i = -y * logistic_sigmoid(-y * z);
                        for (int k = 0; k < cfg.dim; ++k) gj[static_cast<std::size_t>(k)] += s_i * x[k];
                    }
                    const double inv = 1.0 / static_cast<double>(batch_eff);
                    for (auto& v : gj) v *= inv;
                }
                auto& buf = buffer[static_cast<std::size_t>(j)];
                if (cfg.momentum > 0.0) {
                    for (int k = 0; k < cfg.dim; ++k)
                        buf[static_cast<std::size_t>(k)] =
                            cfg.momentum * buf[static_cast<std::size_t>(k)] +
                            (1.0 - cfg.momentum) * gj[static_cast<std::size_t>(k)];
                } else {
                    buf = gj;
                }
            }
        });

        // per-coordinate vote -> encode -> attack -> decode
        parallel_for_chunks(cfg.dim, cfg.threads, [&](int, std::int64_t begin, std::int64_t end) {
            for (std::int64_t k = begin; k < end; ++k) {
                int votes = 0;
                for (int i = 0; i < cfg.n; ++i) {
                    const std::uint64_t row = g.rows[static_cast<std::size_t>(i)];
                    int pos = 0;
                    int assigned = 0;
                    double sum = 0.0;
                    for (int j = 0; j < cfg.n; ++j) {
                        if ((row >> j) & 1) {
                            const double v = buffer[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                            ++assigned;
                            pos += v >= 0.0;
                            sum += v;
                        }
                    }
                    Sign vote;
                    if (2 * pos > assigned) vote = +1;
                    else if (2 * pos < assigned) vote = -1;
                    else vote = sign_of(sum);

                    if (spec.model != AttackModel::none &&
                        std::binary_search(spec.byzantine.begin(), spec.byzantine.end(), i)) {
                        switch (spec.model) {
                            case AttackModel::reverse: vote = -vote; break;
                            case AttackModel::directional: vote = dir_sign; break;
                            case AttackModel::oracle_reverse:
                                vote = -sign_of(true_grad[static_cast<std::size_t>(k)]);
                                break;
                            case AttackModel::none: break;
                        }
                    }
                    votes += vote > 0;
                }
                mu[static_cast<std::size_t>(k)] = votes > cfg.n / 2 ? +1 : -1;
            }
        });

        Fnv1a digest;
        for (int k = 0; k < cfg.dim; ++k) {
            digest.add_byte(mu[static_cast<std::size_t>(k)] > 0 ? 1 : 0);
            w[static_cast<std::size_t>(k)] -= gamma * mu[static_cast<std::size_t>(k)];
        }
        trace.mu_digest.push_back(digest.h);
    }

    loss_grad(w, trace.final_loss, true_grad);
    trace.w_final = w;

    double sum_l1 = 0.0;
    for (double v : trace.l1_grad) sum_l1 += v;
    trace.avg_l1_grad = trace.l1_grad.empty() ? 0.0 : sum_l1 / static_cast<double>(trace.l1_grad.size());

    Fnv1a run_digest;
    for (std::uint64_t d : trace.mu_digest) run_digest.add_u64(d);
    for (double v : trace.w_final) run_digest.add_double(v);
    trace.digest = run_digest.h;
    return trace;
}

double convergence_metric(const TrainTrace& trace) { return trace.avg_l1_grad; }

}  // namespace votecode
