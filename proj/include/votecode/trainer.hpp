#pragma once

#include <cstdint>
#include <vector>

#include "votecode/allocation.hpp"
#include "votecode/attacks.hpp"
#include "votecode/montecarlo.hpp"
#include "votecode/oracle.hpp"

namespace votecode {

enum class TaskKind { quadratic, logistic };
enum class LrSchedule { fixed, theory };

std::string task_kind_name(TaskKind t);
TaskKind parse_task_kind(const std::string& name);

// Desk-scale coded sign-descent training. Each step: every partition draws a
// mini-batch gradient, workers majority-vote the signs of their assigned
// partitions per coordinate, the attack corrupts worker outputs, the master
// majority-decodes and applies w <- w - gamma * decoded_sign.
struct TrainConfig {
    TaskKind task = TaskKind::quadratic;
    int dim = 1;

    // quadratic bowl 0.5*||w - w*||^2 with per-sample oracle noise
    double w_star = 1.0;
    double sigma = 0.0;
    NoiseFamily noise = NoiseFamily::gaussian;

    // synthetic logistic regression: standard-normal features, labels from a
    // planted vector with flip noise, data split into n equal partitions
    int samples = 0;
    double label_noise = 0.0;

    int n = 1;
    McCodeSpec code{CodeKind::identity, 0.0, 0, MatrixMode::fixed};

    AttackModel attack = AttackModel::none;
    int byzantine_count = 0;
    Sign direction = +1;  // directional attack, applied on every coordinate

    int steps = 1;
    double gamma = 0.001;
    LrSchedule schedule = LrSchedule::fixed;
    double momentum = 0.0;          // Signum factor; buffers live per partition
    int batch = 1;
    double batch_reduction = 1.0;   // rho: each partition batch shrinks to ceil(rho*batch)

    std::uint64_t seed = 0;
    int threads = 1;
};

struct TrainTrace {
    // per recorded step t (evaluated at w_t before the update)
    std::vector<double> loss;
    std::vector<double> l1_grad;
    std::vector<std::uint64_t> mu_digest;

    int steps_run = 0;
    bool diverged = false;
    double final_loss = 0.0;      // at w_T after the last update
    std::vector<double> w_final;
    double avg_l1_grad = 0.0;     // (1/T) sum_t ||g(w_t)||_1

    // run manifest data
    std::vector<int> byzantine_set;
    CodeKind code_kind = CodeKind::identity;
    std::uint64_t matrix_hash = 0;
    Rational realized_r{0, 1};
    double gamma_used = 0.0;
    double f0 = 0.0;               // loss at w_0
    double l1_lipschitz = 0.0;     // exact for quadratic, upper bound for logistic
    std::int64_t grad_samples_per_step = 0;
    std::uint64_t digest = 0;      // hash of all step digests and the final iterate
};

TrainTrace train(const TrainConfig& cfg);

// (1/T) sum_t ||g(w_t)||_1 over the recorded steps.
double convergence_metric(const TrainTrace& trace);

// Learning rate sqrt((f(w0) - f*)/(||L||_1 T)).
double theory_learning_rate(double f0, double f_star, double l1_lipschitz, int steps);

}  // namespace votecode
