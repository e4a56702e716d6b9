#include "votecode/attacks.hpp"

#include <algorithm>
#include <stdexcept>

namespace votecode {

std::string attack_model_name(AttackModel model) {
    switch (model) {
        case AttackModel::none: return "none";
        case AttackModel::reverse: return "reverse";
        case AttackModel::directional: return "directional";
        case AttackModel::oracle_reverse: return "oracle-reverse";
    }
    return "none";
}

AttackModel parse_attack_model(const std::string& name) {
    if (name == "none") return AttackModel::none;
    if (name == "reverse") return AttackModel::reverse;
    if (name == "directional") return AttackModel::directional;
    if (name == "oracle-reverse" || name == "oracle_reverse") return AttackModel::oracle_reverse;
    throw std::invalid_argument("unknown attack model: " + name);
}

SignVector apply_attack(const SignVector& c, const AttackSpec& spec,
                        std::optional<Sign> true_sign, int coord) {
    if (spec.model == AttackModel::oracle_reverse && !true_sign.has_value())
        throw std::invalid_argument("oracle-reverse attack needs the true gradient sign");
    SignVector y = c;
    for (int worker : spec.byzantine) {
        if (worker < 0 || worker >= c.size())
            throw std::invalid_argument("byzantine worker index out of range: " + std::to_string(worker));
        auto& bit = y.v[static_cast<std::size_t>(worker)];
        switch (spec.model) {
            case AttackModel::none:
                break;
            case AttackModel::reverse:
                bit = static_cast<std::int8_t>(-bit);
                break;
            case AttackModel::directional:
                bit = static_cast<std::int8_t>(spec.direction_sign(coord));
                break;
            case AttackModel::oracle_reverse:
                bit = static_cast<std::int8_t>(-*true_sign);
                break;
        }
    }
    return y;
}

std::vector<int> select_byzantine_set(int n, int b, Rng& rng) {
    if (b < 0 || b > n)
        throw std::invalid_argument("byzantine count must be in [0, n]");
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(b));
    for (int k = 0; k < b; ++k) {
        const auto idx = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - k)));
        chosen.push_back(pool[idx]);
        pool[idx] = pool[static_cast<std::size_t>(n - k - 1)];
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

}  // namespace votecode
