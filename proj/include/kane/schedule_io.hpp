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

#ifndef KANE_SCHEDULE_IO_HPP_
#define KANE_SCHEDULE_IO_HPP_

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "kane/design.hpp"

namespace kane {

/// Angle expressions: a plain number, or [sign][k][*]pi[/d] with integers k, d.
inline double parse_angle(const std::string &text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ValidationError("empty angle expression");
  const auto pos = s.find("pi");
  auto fail = [&]() -> double { throw ValidationError("malformed angle expression '" + text + "'"); };
  auto parse_int = [&](const std::string &t) -> long {
    if (t.empty()) return 1;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail();
    return std::stol(t);
  };
  if (pos == std::string::npos) {
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) fail();
    return v;
  }
  std::string head = s.substr(0, pos), tail = s.substr(pos + 2);
  double sign = 1;
  if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
    sign = head[0] == '-' ? -1 : 1;
    head.erase(0, 1);
  }
  if (!head.empty() && head.back() == '*') head.pop_back();
  const long k = parse_int(head);
  long d = 1;
  if (!tail.empty()) {
    if (tail[0] != '/') fail();
    d = parse_int(tail.substr(1));
    if (tail.size() == 1 || d == 0) fail();
  }
  return sign * double(k) * kPi / double(d);
}

namespace detail {

inline void reject_unknown(const nlohmann::json &j, const std::set<std::string> &known, const std::string &what) {
  for (const auto &item : j.items()) {
    if (!known.count(item.key())) throw ValidationError(what + ": unknown key '" + item.key() + "'");
  }
}

inline double number(const nlohmann::json &j, const std::string &key) {
  if (!j.at(key).is_number()) throw ValidationError("schedule key '" + key + "' must be a number");
  return j.at(key).get<double>();
}

/// Reads one of <base>_ps, <base>_ns, <base>_us, converted to ps.
inline std::optional<double> time_ps(const nlohmann::json &j, const std::string &base) {
  static const std::pair<const char *, double> units[] = {{"_ps", 1.0}, {"_ns", 1e3}, {"_us", 1e6}};
  std::optional<double> out;
  for (const auto &[suffix, scale] : units) {
    const std::string key = base + suffix;
    if (!j.contains(key)) continue;
    if (out) throw ValidationError("schedule: '" + base + "' given in more than one unit");
    out = number(j, key) * scale;
  }
  return out;
}

inline double require_time_ps(const nlohmann::json &j, const std::string &base) {
  const auto t = time_ps(j, base);
  if (!t) throw ValidationError("schedule: missing '" + base + "_ps|_ns|_us'");
  return *t;
}

inline std::set<std::string> with_units(std::set<std::string> keys, std::initializer_list<const char *> bases) {
  for (const char *b : bases)
    for (const char *u : {"_ps", "_ns", "_us"}) keys.insert(std::string(b) + u);
  return keys;
}

inline double angle(const nlohmann::json &v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_angle(v.get<std::string>());
  throw ValidationError("schedule: angle must be a number or a pi expression");
}

inline int site_of(const nlohmann::json &j) {
  const int site = j.contains("site") ? j.at("site").get<int>() : 1;
  if (site != 1 && site != 2) throw ValidationError("schedule: site must be 1 or 2");
  return site;
}

}  // namespace detail

/// Builds a schedule from its JSON record.
///
///   {"type":"z", "a":0.598, "tZ_us":0.05, "site":1}
///   {"type":"x", "A_over_A0":0.5, "theta":"pi/4" | "tX_ps":..., "tXprime_ns":50, "site":1}
///   {"type":"cz", "Jc_over_eps":0.1003, "tau_prime":0.1085, "ta_ns":5.391, "th_us":33.1 | "theta":"pi"}
///   {"type":"idle", "duration_ns":10, "A1_over_A0":1, "A2_over_A0":1}
inline PulseSchedule schedule_from_json(const ModelParams &p, const nlohmann::json &j) {
  using namespace detail;
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ValidationError("schedule must be an object with a string 'type'");
  }
  const std::string type = j.at("type");
  if (type == "z") {
    reject_unknown(j, with_units({"type", "a", "site"}, {"tZ"}), "z schedule");
    return z_schedule(p, ZPulse{number(j, "a"), require_time_ps(j, "tZ")}, site_of(j));
  }
  if (type == "x") {
    reject_unknown(j, with_units({"type", "A_over_A0", "theta", "omega_ac_rad_per_ps", "Bac_tesla", "site"},
                                 {"tX", "tXprime"}),
                   "x schedule");
    const double A = number(j, "A_over_A0") * p.A0;
    ModelParams q = p;
    if (j.contains("Bac_tesla")) q.Bac = number(j, "Bac_tesla");
    const auto tX = time_ps(j, "tX");
    if (tX.has_value() == j.contains("theta")) throw ValidationError("x schedule: give exactly one of theta, tX");
    XDesign d = design_x_rotation(q, tX ? 0.0 : angle(j.at("theta")), A,
                                  time_ps(j, "tXprime").value_or(kDefaultRampTime));
    if (tX) d.pulse.tX = *tX;
    if (j.contains("omega_ac_rad_per_ps")) d.pulse.omega_ac = number(j, "omega_ac_rad_per_ps");
    return x_schedule(p, d.pulse, site_of(j));
  }
  if (type == "cz") {
    reject_unknown(j, with_units({"type", "Jc_over_eps", "tau_prime", "theta", "m4"}, {"ta", "th"}),
                   "cz schedule");
    const double Jc = number(j, "Jc_over_eps") * p.eps(), tp = number(j, "tau_prime");
    CZPulse c;
    if (j.contains("theta")) {
      if (time_ps(j, "ta") || time_ps(j, "th")) throw ValidationError("cz schedule: theta excludes ta/th");
      c = cz_design_from_pulse(p, angle(j.at("theta")), Jc, tp, 0, 0, j.value("m4", 1)).pulse;
    } else {
      if (j.contains("m4")) throw ValidationError("cz schedule: m4 requires theta");
      c = CZPulse{Jc, tp, require_time_ps(j, "ta"), require_time_ps(j, "th")};
    }
    return cz_schedule(p, c);
  }
  if (type == "idle") {
    reject_unknown(j, with_units({"type", "A1_over_A0", "A2_over_A0"}, {"duration"}), "idle schedule");
    return idle_schedule(p, require_time_ps(j, "duration"), j.value("A1_over_A0", 1.0) * p.A0,
                         j.value("A2_over_A0", 1.0) * p.A0);
  }
  throw ValidationError("unknown schedule type '" + type + "' (expected z, x, cz, idle)");
}

inline PulseSchedule load_schedule(const ModelParams &p, const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open schedule file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError("malformed schedule file " + path + ": " + e.what());
  }
  return schedule_from_json(p, j);
}

/// Inverse of schedule_from_json, with all times in ps.
inline nlohmann::json schedule_to_json(const ModelParams &p, const PulseSchedule &s) {
  if (const auto *c = std::get_if<CZPulse>(&s.exchange)) {
    return {{"type", "cz"}, {"Jc_over_eps", c->Jc / p.eps()}, {"tau_prime", c->tau_prime},
            {"ta_ps", c->ta},  {"th_ps", c->th}};
  }
  for (int site = 1; site <= 2; ++site) {
    const auto &traj = s.hyperfine[site - 1];
    if (const auto *z = std::get_if<ZPulse>(&traj)) {
      return {{"type", "z"}, {"a", z->a}, {"tZ_ps", z->tZ}, {"site", site}};
    }
    if (const auto *x = std::get_if<XPulse>(&traj)) {
      return {{"type", "x"},         {"A_over_A0", x->A / p.A0}, {"tX_ps", x->tX},
              {"tXprime_ps", x->tXprime}, {"omega_ac_rad_per_ps", x->omega_ac}, {"Bac_tesla", x->Bac},
              {"site", site}};
    }
  }
  return {{"type", "idle"},
          {"duration_ps", s.duration},
          {"A1_over_A0", std::get<ConstantHyperfine>(s.hyperfine[0]).A / p.A0},
          {"A2_over_A0", std::get<ConstantHyperfine>(s.hyperfine[1]).A / p.A0}};
}

/// n evenly spaced points on [lo, hi], endpoints included.
inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2 || !(hi > lo)) throw ValidationError("grid needs at least two points and hi > lo");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = (i + 1 == n) ? hi : lo + (hi - lo) * i / (n - 1);
  return v;
}

struct ProfileSample {
  double t = 0.0, A1 = 0.0, A2 = 0.0, J = 0.0;
  bool drive_on = false;
};

/// Control values at n evenly spaced times over the schedule.
inline std::vector<ProfileSample> profile_samples(const ModelParams &p, const PulseSchedule &s, int n) {
  std::vector<ProfileSample> out;
  for (double t : linspace(0.0, s.duration, n)) out.push_back({t, s.A(p, 1, t), s.A(p, 2, t), s.J(t), s.drive_on(t)});
  return out;
}

}  // namespace kane

#endif  // KANE_SCHEDULE_IO_HPP_
