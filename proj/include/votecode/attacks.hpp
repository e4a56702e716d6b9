#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "votecode/rng.hpp"
#include "votecode/voting.hpp"

namespace votecode {

enum class AttackModel {
    none,
    reverse,         // Byzantine worker flips its own vote
    directional,     // Byzantine worker sends a fixed direction sign
    oracle_reverse,  // Byzantine worker sends the negation of the true gradient sign
};

std::string attack_model_name(AttackModel model);
AttackModel parse_attack_model(const std::string& name);

struct AttackSpec {
    std::vector<int> byzantine;          // 0-based worker indices, strictly increasing
    AttackModel model = AttackModel::none;
    std::vector<std::int8_t> direction;  // directional only: per-coordinate sign, empty = all +1

    int b() const { return static_cast<int>(byzantine.size()); }
    Sign direction_sign(int coord) const {
        if (direction.empty()) return +1;
        return direction[static_cast<std::size_t>(coord) % direction.size()];
    }
};

// Corrupts the Byzantine coordinates of a codeword; everything else passes
// through unchanged, so the result differs from c in at most b positions.
// true_sign is required for oracle_reverse; coord selects the direction sign
// for per-coordinate application inside the trainer.
SignVector apply_attack(const SignVector& c, const AttackSpec& spec,
                        std::optional<Sign> true_sign = std::nullopt, int coord = 0);

// Uniform without replacement; sorted ascending so runs are reproducible
// from the recorded set.
std::vector<int> select_byzantine_set(int n, int b, Rng& rng);

}  // namespace votecode
