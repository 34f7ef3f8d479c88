#pragma once

#include <nlohmann/json.hpp>

#include "fpqc/channels.hpp"
#include "fpqc/gaussian.hpp"
#include "fpqc/majorana.hpp"
#include "fpqc/metrics.hpp"

namespace fpqc {

// JSON wire formats:
//   monomial: {"modes": M, "bits": "0x..", "phase": "+1"|"-1"|"+i"|"-i"}
//   state:    {"modes": M, "lambda": [...], "frame": row-major 2M x 2M array}
//   channel:  {"kind": "attenuation", "modes": M, "xi": [...]}
//             {"kind": "random_unitary", "modes": M,
//              "kraus": [{"bits": "0x..", "phase": "..", "weight": w}, ...]}
// Densities are never serialized.

void to_json(nlohmann::json& j, const MajoranaMonomial& m);
MajoranaMonomial monomial_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const FermionicGaussianState& state);
FermionicGaussianState state_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const AttenuationChannel& channel);
void to_json(nlohmann::json& j, const RandomUnitaryChannel& channel);
AttenuationChannel attenuation_from_json(const nlohmann::json& j);
RandomUnitaryChannel random_unitary_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const PqcVerdict& verdict);

}  // namespace fpqc
