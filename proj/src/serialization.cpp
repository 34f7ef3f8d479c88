#include "fpqc/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fpqc {

namespace {

std::string bits_to_hex(std::uint64_t bits) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(bits));
  return buf;
}

std::uint64_t hex_to_bits(const std::string& s) {
  std::size_t used = 0;
  const std::uint64_t value = std::stoull(s, &used, 16);
  if (used != s.size()) throw std::invalid_argument("malformed bit string '" + s + "'");
  return value;
}

}  // namespace

void to_json(nlohmann::json& j, const MajoranaMonomial& m) {
  j = {{"modes", m.modes()}, {"bits", bits_to_hex(m.bits())}, {"phase", m.phase().str()}};
}

MajoranaMonomial monomial_from_json(const nlohmann::json& j) {
  return MajoranaMonomial(j.at("modes").get<int>(),
                          hex_to_bits(j.at("bits").get<std::string>()),
                          Phase::parse(j.at("phase").get<std::string>()));
}

void to_json(nlohmann::json& j, const FermionicGaussianState& state) {
  std::vector<double> frame;
  frame.reserve(state.frame().size());
  for (std::int64_t r = 0; r < state.frame().rows(); ++r)
    for (std::int64_t c = 0; c < state.frame().cols(); ++c)
      frame.push_back(state.frame()(r, c));
  j = {{"modes", state.modes()}, {"lambda", state.spectrum()}, {"frame", frame}};
}

FermionicGaussianState state_from_json(const nlohmann::json& j) {
  const int modes = j.at("modes").get<int>();
  std::vector<double> lambda = j.at("lambda").get<std::vector<double>>();
  const std::vector<double> flat = j.at("frame").get<std::vector<double>>();
  const std::int64_t n = 2 * modes;
  if (static_cast<std::int64_t>(flat.size()) != n * n)
    throw std::invalid_argument("frame must hold 4M^2 row-major entries");
  RealMatrix frame(n, n);
  for (std::int64_t r = 0; r < n; ++r)
    for (std::int64_t c = 0; c < n; ++c) frame(r, c) = flat[r * n + c];
  return FermionicGaussianState(std::move(lambda), std::move(frame));
}

void to_json(nlohmann::json& j, const AttenuationChannel& channel) {
  j = {{"kind", "attenuation"}, {"modes", channel.modes()}, {"xi", channel.xi()}};
}

void to_json(nlohmann::json& j, const RandomUnitaryChannel& channel) {
  nlohmann::json kraus = nlohmann::json::array();
  for (const KrausTerm& term : channel.kraus())
    kraus.push_back({{"bits", bits_to_hex(term.unitary.bits())},
                     {"phase", term.unitary.phase().str()},
                     {"weight", term.weight}});
  j = {{"kind", "random_unitary"}, {"modes", channel.modes()}, {"kraus", kraus}};
}

AttenuationChannel attenuation_from_json(const nlohmann::json& j) {
  if (j.at("kind").get<std::string>() != "attenuation")
    throw std::invalid_argument("expected an attenuation channel record");
  return AttenuationChannel(j.at("modes").get<int>(),
                            j.at("xi").get<std::vector<double>>());
}

RandomUnitaryChannel random_unitary_from_json(const nlohmann::json& j) {
  if (j.at("kind").get<std::string>() != "random_unitary")
    throw std::invalid_argument("expected a random-unitary channel record");
  const int modes = j.at("modes").get<int>();
  std::vector<KrausTerm> kraus;
  for (const nlohmann::json& term : j.at("kraus"))
    kraus.push_back({term.at("weight").get<double>(),
                     MajoranaMonomial(modes,
                                      hex_to_bits(term.at("bits").get<std::string>()),
                                      Phase::parse(term.at("phase").get<std::string>()))});
  return RandomUnitaryChannel(modes, std::move(kraus));
}

void to_json(nlohmann::json& j, const PqcVerdict& verdict) {
  j = {{"p", std::isinf(verdict.p) ? -1.0 : verdict.p},
       {"epsilon", verdict.epsilon},
       {"dimension", verdict.dimension},
       {"threshold", verdict.threshold},
       {"measured", verdict.measured},
       {"passes", verdict.passes}};
}

}  // namespace fpqc
