// Copyright 2026 The Kane Gates Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KANE_PARAMS_HPP_
#define KANE_PARAMS_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>

#include "json.hpp"
#include "kane/linalg.hpp"

namespace kane {

/// Boltzmann constant in meV/K.
constexpr double kBoltzmann = 0.08617333262;

/// Physical constants of the two-donor model. Energies in meV, times in ps.
struct ModelParams {
  double B = 2.0;              ///< static field (T)
  double muB = 0.116 / 2.0;    ///< electron Zeeman coefficient (meV/T)
  double gn_mun = 0.071e-3 / 2.0;  ///< nuclear Zeeman coefficient (meV/T)
  double A0 = 0.121e-3;        ///< unperturbed hyperfine energy (meV)
  double Bac = 2.5e-3;         ///< transverse drive amplitude (T)
  double temperature = 0.1;    ///< K
  double hbar = 0.6582119;     ///< meV ps

  double electron_zeeman() const { return muB * B; }
  double nuclear_zeeman() const { return gn_mun * B; }
  /// eps = muB B + gn_mun B.
  double eps() const { return muB * B + gn_mun * B; }

  void validate() const {
    auto positive = [](double v, const char *name) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(std::string("model parameter ") + name + " must be positive");
      }
    };
    positive(B, "B_tesla");
    positive(muB, "muB_meV_per_T");
    positive(gn_mun, "gn_mun_meV_per_T");
    positive(A0, "A0_meV");
    positive(Bac, "Bac_tesla");
    positive(temperature, "temperature_K");
    positive(hbar, "hbar_meV_ps");
  }
};

inline nlohmann::json to_json(const ModelParams &p) {
  return nlohmann::json{{"B_tesla", p.B},          {"muB_meV_per_T", p.muB},
                        {"gn_mun_meV_per_T", p.gn_mun}, {"A0_meV", p.A0},
                        {"Bac_tesla", p.Bac},      {"temperature_K", p.temperature},
                        {"hbar_meV_ps", p.hbar}};
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline ModelParams params_from_json(const nlohmann::json &j) {
  if (!j.is_object()) throw ValidationError("model parameters must be a JSON object");
  static const std::set<std::string> known = {"B_tesla",   "muB_meV_per_T", "gn_mun_meV_per_T",
                                              "A0_meV",    "Bac_tesla",     "temperature_K",
                                              "hbar_meV_ps"};
  for (const auto &item : j.items()) {
    if (!known.count(item.key())) throw ValidationError("unknown parameter key: " + item.key());
    if (!item.value().is_number()) throw ValidationError("parameter " + item.key() + " must be a number");
  }
  ModelParams p;
  auto get = [&](const char *key, double &field) {
    if (j.contains(key)) field = j.at(key).get<double>();
  };
  get("B_tesla", p.B);
  get("muB_meV_per_T", p.muB);
  get("gn_mun_meV_per_T", p.gn_mun);
  get("A0_meV", p.A0);
  get("Bac_tesla", p.Bac);
  get("temperature_K", p.temperature);
  get("hbar_meV_ps", p.hbar);
  p.validate();
  return p;
}

inline ModelParams load_params(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open parameter file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError("malformed parameter file " + path + ": " + e.what());
  }
  return params_from_json(j);
}

/// Stable 64-bit FNV-1a digest of the canonical parameter JSON, as hex.
inline std::string params_hash(const ModelParams &p) {
  const nlohmann::json j = to_json(p);
  std::string canonical;
  for (const auto &item : j.items()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", item.value().get<double>());
    canonical += item.key() + "=" + buf + ";";
  }
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

/// Unit conversions used at the I/O boundary (internal units: meV, ps, K).
namespace units {
constexpr double ps_to_ns(double t) { return t * 1e-3; }
constexpr double ps_to_us(double t) { return t * 1e-6; }
constexpr double mK_to_K(double T) { return T * 1e-3; }
}  // namespace units

}  // namespace kane

#endif  // KANE_PARAMS_HPP_
