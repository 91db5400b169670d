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

#ifndef KANE_CLI_HPP_
#define KANE_CLI_HPP_

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "kane/analysis.hpp"
#include "kane/schedule_io.hpp"

namespace kane::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kValidationFailure = 2, kSolverFailure = 3 };
enum class Format { csv, json };

inline Format parse_format(const std::string &s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ValidationError("unknown format '" + s + "' (expected csv or json)");
}

/// Rows of scalar cells under named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

/// A command result: a table (CSV by default) or a record (JSON by default).
struct Output {
  std::string command;
  std::variant<Table, Json> body;
  int exit_code = kOk;  ///< nonzero when a table carries failed rows
};

// ---------------------------------------------------------------------------
// Rendering.

/// 17 significant digits, scientific notation: lossless for doubles.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

inline std::string scalar_text(const Json &v, bool quote_strings) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return quote_strings ? "null" : "";
  if (v.is_string()) return quote_strings ? v.dump() : v.get<std::string>();
  throw ValidationError("non-scalar cell");
}

inline void write_json(std::ostream &out, const Json &v, int indent = 0) {
  const std::string pad(indent + 2, ' '), close(indent, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    size_t i = 0;
    for (const auto &item : v.items()) {
      out << pad << Json(item.key()).dump() << ": ";
      write_json(out, item.value(), indent + 2);
      out << (++i < v.size() ? ",\n" : "\n");
    }
    out << close << "}";
  } else if (v.is_array()) {
    bool flat = true;
    for (const auto &x : v) flat = flat && !x.is_structured();
    if (flat) {
      out << "[";
      for (size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i], true);
      out << "]";
      return;
    }
    out << "[\n";
    for (size_t i = 0; i < v.size(); ++i) {
      out << pad;
      write_json(out, v[i], indent + 2);
      out << (i + 1 < v.size() ? ",\n" : "\n");
    }
    out << close << "]";
  } else {
    out << scalar_text(v, true);
  }
}

namespace detail {
inline void flatten(const Json &v, const std::string &prefix, std::vector<std::pair<std::string, Json>> &out) {
  if (v.is_object()) {
    for (const auto &item : v.items()) flatten(item.value(), prefix.empty() ? item.key() : prefix + "." + item.key(), out);
  } else if (v.is_array()) {
    for (size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, v);
  }
}

inline std::string csv_cell(const Json &v) {
  std::string s = scalar_text(v, false);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}
}  // namespace detail

inline void render(std::ostream &out, const Output &o, std::optional<Format> format, const std::string &hash) {
  if (const auto *t = std::get_if<Table>(&o.body)) {
    if (format.value_or(Format::csv) == Format::csv) {
      for (size_t i = 0; i < t->columns.size(); ++i) out << (i ? "," : "") << t->columns[i];
      out << "\n";
      for (const auto &row : t->rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << detail::csv_cell(row[i]);
        out << "\n";
      }
      out << "# params_hash=" << hash << "\n";
    } else {
      Json rows = Json::array();
      for (const auto &row : t->rows) {
        Json r = Json::object();
        for (size_t i = 0; i < row.size(); ++i) r[t->columns[i]] = row[i];
        rows.push_back(r);
      }
      write_json(out, Json{{"command", o.command}, {"rows", rows}, {"params_hash", hash}});
      out << "\n";
    }
    return;
  }
  Json rec = std::get<Json>(o.body);
  rec["params_hash"] = hash;
  if (format.value_or(Format::json) == Format::json) {
    write_json(out, rec);
    out << "\n";
    return;
  }
  std::vector<std::pair<std::string, Json>> flat;
  detail::flatten(rec, "", flat);
  for (size_t i = 0; i < flat.size(); ++i) out << (i ? "," : "") << flat[i].first;
  out << "\n";
  for (size_t i = 0; i < flat.size(); ++i) out << (i ? "," : "") << detail::csv_cell(flat[i].second);
  out << "\n";
}

inline Json amplitudes_json(const Amplitudes &a) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    re.push_back(a(i).real());
    im.push_back(a(i).imag());
  }
  return Json{{"re", re}, {"im", im}};
}

// ---------------------------------------------------------------------------
// Parameters.

/// --params, else $KANE_PARAMS, else the built-in defaults.
inline ModelParams resolve_params(const std::string &params_path) {
  if (!params_path.empty()) return load_params(params_path);
  if (const char *env = std::getenv("KANE_PARAMS"); env && *env) return load_params(env);
  return ModelParams{};
}

// ---------------------------------------------------------------------------
// Commands.

struct LevelsOptions {
  double A_over_A0 = 1.0;
  double j_max_over_eps = 0.6;
  int points = 600;
};

inline Output cmd_levels(const ModelParams &p, const LevelsOptions &o) {
  if (o.points < 2) throw ValidationError("levels: need at least 2 points");
  if (!(o.j_max_over_eps > 0)) throw ValidationError("levels: J range must be positive");
  if (!(o.A_over_A0 >= 0)) throw ValidationError("levels: A/A0 must be non-negative");
  const auto rows = energy_level_scan(p, o.A_over_A0 * p.A0, linspace(0.0, o.j_max_over_eps * p.eps(), o.points));
  Table t;
  t.columns = {"J_meV", "E01_1", "E01_2", "E-1-1_1", "E-1-1_2", "E-11_1", "E-21_1", "crossing"};
  for (const auto &r : rows) {
    const auto &e = r.energies;
    t.rows.push_back({r.J, e.E01_1, e.E01_2, e.Em1m1_1, e.Em1m1_2, e.Em11_1, e.Em21_1, e.near_crossing});
  }
  return {"levels", t};
}

inline Json z_design_json(const ModelParams &p, const ZDesign &d) {
  return Json{{"theta_Z", d.theta_Z},
              {"m", d.m},
              {"n", d.n},
              {"a", d.pulse.a},
              {"tZ_ps", d.pulse.tZ},
              {"tZ_us", units::ps_to_us(d.pulse.tZ)},
              {"residual", d.residual},
              {"phase_residual_rad", z_phase_residual(p, d)},
              {"root_count", d.root_count}};
}

inline Output cmd_design_z(const ModelParams &p, const std::string &theta, int m, int n) {
  Json rec{{"command", "design-z"}};
  rec.update(z_design_json(p, solve_z_rotation(p, parse_angle(theta), m, n)));
  return {"design-z", rec};
}

inline Json cz_design_json(const ModelParams &p, const CZDesign &d) {
  return Json{{"theta_cz", d.theta_cz},
              {"m_plus", d.m_plus},
              {"m_minus", d.m_minus},
              {"m4", d.m4},
              {"Jc_meV", d.pulse.Jc},
              {"Jc_over_eps", d.pulse.Jc / p.eps()},
              {"tau_prime", d.pulse.tau_prime},
              {"ta_ps", d.pulse.ta},
              {"ta_ns", units::ps_to_ns(d.pulse.ta)},
              {"th_ps", d.pulse.th},
              {"th_us", units::ps_to_us(d.pulse.th)},
              {"residuals", {d.residuals[0], d.residuals[1]}},
              {"converged", d.converged},
              {"iterations", d.iterations},
              {"jacobian_condition", d.jacobian_condition},
              {"near_crossing", d.near_crossing}};
}

struct DesignCZOptions {
  std::string theta = "pi";
  double seed_jc_over_eps = 0.1;
  double seed_tau_prime = 0.1;
  int m_plus = 0, m_minus = 0, m4 = 1;
};

inline Output cmd_design_cz(const ModelParams &p, const DesignCZOptions &o) {
  const CZDesign d = solve_cz(p, parse_angle(o.theta), o.seed_jc_over_eps * p.eps(), o.seed_tau_prime, o.m_plus,
                              o.m_minus, o.m4);
  Json rec{{"command", "design-cz"}};
  rec.update(cz_design_json(p, d));
  return {"design-cz", rec};
}

inline Json fidelity_json(const FidelityReport &r) {
  return Json{{"A_over_A0", r.A_over_A0},
              {"theta_X", r.theta_X},
              {"initial_state", r.initial_state},
              {"fidelity", r.fidelity},
              {"tX_ps", r.tX},
              {"omega_ac_rad_per_ps", r.omega_ac},
              {"exact_state", amplitudes_json(r.exact_state.amplitudes)},
              {"approx_state", amplitudes_json(r.approx_state.amplitudes)}};
}

inline ExactRoute parse_route(const std::string &s) {
  if (s == "closed-form") return ExactRoute::closed_form;
  if (s == "numeric") return ExactRoute::numeric_exponential;
  throw ValidationError("unknown route '" + s + "' (expected closed-form or numeric)");
}

inline Output cmd_xrot_fidelity(const ModelParams &p, double ratio, const std::string &state,
                                const std::string &theta, const std::string &route = "closed-form") {
  const double th = parse_angle(theta);
  const auto r = x_rotation_fidelity(p, ratio, th, state, parse_route(route));
  const auto pert = perturbative_fidelity(p, ratio, th);
  Json rec{{"command", "xrot-fidelity"}};
  rec.update(fidelity_json(r));
  rec["perturbative_fidelity"] = pert.fidelity;
  rec["perturbative_phase_argument"] = pert.phase_argument;
  return {"xrot-fidelity", rec};
}

inline Output cmd_table1(const ModelParams &p, int m = -6, int n = -5) {
  Table t;
  t.columns = {"theta_Z", "theta_Z_rad", "m", "n", "a", "tZ_us", "residual"};
  for (const char *theta : {"pi/4", "pi/2"}) {
    const ZDesign d = solve_z_rotation(p, parse_angle(theta), m, n);
    t.rows.push_back({theta, d.theta_Z, d.m, d.n, d.pulse.a, units::ps_to_us(d.pulse.tZ), d.residual});
  }
  return {"table1", t};
}

inline Output cmd_table2(const ModelParams &p, const std::string &theta = "pi/4") {
  Table t;
  t.columns = {"A_over_A0", "F_0", "F_plus"};
  const double th = parse_angle(theta);
  for (double ratio : {0.75, 0.5, 0.25}) {
    t.rows.push_back({ratio, x_rotation_fidelity(p, ratio, th, "0").fidelity,
                      x_rotation_fidelity(p, ratio, th, "plus").fidelity});
  }
  return {"table2", t};
}

/// Seeds (Jc/eps) of the three controlled-Z branches.
inline const std::vector<double> &table3_seeds() {
  static const std::vector<double> seeds = {0.1, 0.2, 0.01};
  return seeds;
}

inline Output cmd_table3(const ModelParams &p, double seed_tau_prime = 0.1) {
  Table t;
  t.columns = {"seed_Jc_over_eps", "status", "Jc_over_eps", "tau_prime", "ta_ns", "th_us",
               "residual_plus", "residual_minus", "iterations"};
  Output o{"table3", Table{}};
  for (double seed : table3_seeds()) {
    try {
      const CZDesign d = solve_cz(p, kPi, seed * p.eps(), seed_tau_prime);
      t.rows.push_back({seed, "converged", d.pulse.Jc / p.eps(), d.pulse.tau_prime, units::ps_to_ns(d.pulse.ta),
                        units::ps_to_us(d.pulse.th), d.residuals[0], d.residuals[1], d.iterations});
    } catch (const SolverError &e) {
      o.exit_code = kSolverFailure;
      t.rows.push_back({seed, e.kind, e.last_iterate[0], e.last_iterate[1], nullptr, nullptr, e.last_residual[0],
                        e.last_residual[1], e.iterations});
    }
  }
  o.body = t;
  return o;
}

/// Two-site initial state: two characters from {0, 1, +, -} over |u_k(A0)>,
/// "bare:<index>", or a JSON file {"re": [16], "im": [16]}.
inline StateVector initial_state(const ModelParams &p, const std::string &spec) {
  if (spec.rfind("bare:", 0) == 0) {
    const int i = std::stoi(spec.substr(5));
    if (i < 0 || i >= 16) throw ValidationError("bare basis index must lie in [0, 16)");
    Amplitudes a = Amplitudes::Zero(16);
    a(i) = 1;
    return StateVector(a);
  }
  if (spec.size() == 2 && spec.find_first_not_of("01+-") == std::string::npos) {
    const auto e = single_site_eigs(p, p.A0);
    auto site = [&](char c) -> Amplitudes {
      const double h = 1.0 / std::sqrt(2.0);
      if (c == '0') return e.vectors[0];
      if (c == '1') return e.vectors[1];
      if (c == '+') return h * (e.vectors[0] + e.vectors[1]);
      return h * (e.vectors[0] - e.vectors[1]);
    };
    return StateVector(kron(site(spec[0]), site(spec[1])));
  }
  std::ifstream in(spec);
  if (!in) throw ValidationError("initial state '" + spec + "' is neither a label nor a readable file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError("malformed state file " + spec + ": " + e.what());
  }
  kane::detail::reject_unknown(j, {"re", "im"}, "state file");
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.value("im", std::vector<double>(re.size(), 0.0));
  if (re.size() != 16 || im.size() != 16) throw ValidationError("state file must hold 16 amplitudes");
  Amplitudes a(16);
  for (int i = 0; i < 16; ++i) a(i) = cplx(re[i], im[i]);
  return StateVector(a);
}

struct SimulateOptions {
  std::string schedule_path;
  std::string init = "00";
  std::string dt = "auto";
  std::string trajectory_path;
};

inline Output cmd_simulate(const ModelParams &p, const SimulateOptions &o) {
  const PulseSchedule s = load_schedule(p, o.schedule_path);
  const StateVector psi0 = initial_state(p, o.init);
  EvolveOptions opt;
  if (o.dt != "auto") {
    char *end = nullptr;
    const double dt = std::strtod(o.dt.c_str(), &end);
    if (end != o.dt.c_str() + o.dt.size() || !(dt > 0)) throw ValidationError("--dt must be 'auto' or a positive number");
    opt.dt = dt;
  }
  std::ofstream traj;
  if (!o.trajectory_path.empty()) {
    traj.open(o.trajectory_path);
    if (!traj) throw ValidationError("cannot open trajectory file " + o.trajectory_path);
    traj << "t_ps";
    for (int i = 0; i < 16; ++i) traj << ",re" << i << ",im" << i;
    traj << "\n";
    opt.observer = [&traj](double t, const Amplitudes &a) {
      traj << format_double(t);
      for (Eigen::Index i = 0; i < a.size(); ++i)
        traj << "," << format_double(a(i).real()) << "," << format_double(a(i).imag());
      traj << "\n";
    };
  }
  const PropagationResult r = evolve(p, s, psi0, 0.0, s.duration, opt);
  const auto e = single_site_eigs(p, p.A0);
  Json pops = Json::object();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      pops[std::to_string(a) + std::to_string(b)] = std::norm(kron(e.vectors[a], e.vectors[b]).dot(r.final_state.amplitudes));
  Json rec{{"command", "simulate"},
           {"schedule", Json(schedule_to_json(p, s))},
           {"init", o.init},
           {"duration_ps", s.duration},
           {"step_count", r.step_count},
           {"refinements", r.refinements},
           {"certification_delta", r.certification_delta},
           {"max_unitarity_defect", r.max_unitarity_defect},
           {"norm", r.final_state.norm()},
           {"computational_populations", pops},
           {"final_state", amplitudes_json(r.final_state.amplitudes)}};
  return {"simulate", rec};
}

inline Output cmd_thermal(const ModelParams &p, std::optional<double> temp_mK, double A_over_A0 = 1.0) {
  const double T = temp_mK ? units::mK_to_K(*temp_mK) : p.temperature;
  const ThermalReport r = thermal_state(p, A_over_A0 * p.A0, T);
  Json pops = Json::array();
  for (double x : r.populations) pops.push_back(x);
  Json rec{{"command", "thermal"}, {"temperature_K", r.temperature}, {"A_meV", r.A}, {"populations", pops},
           {"ratio_up_down", r.ratio_up_down}};
  return {"thermal", rec};
}

inline Output cmd_profile_dump(const ModelParams &p, const std::string &schedule_path, int points = 1001) {
  const PulseSchedule s = load_schedule(p, schedule_path);
  Table t;
  t.columns = {"t_ps", "A1_meV", "A2_meV", "J_meV", "drive_on"};
  for (const auto &x : profile_samples(p, s, points)) t.rows.push_back({x.t, x.A1, x.A2, x.J, x.drive_on});
  return {"profile dump", t};
}

// ---------------------------------------------------------------------------
// Execution with error mapping.

inline Json error_json(const std::string &kind, const std::string &message) {
  return Json{{"error", {{"kind", kind}, {"message", message}}}};
}

/// Runs a command and writes its output (or a JSON error record); returns the exit code.
inline int execute(const std::function<Output()> &command, const ModelParams &p, std::ostream &out,
                   std::optional<Format> format) {
  Json err;
  int code = kOk;
  try {
    const Output o = command();
    render(out, o, format, params_hash(p));
    return o.exit_code;
  } catch (const SolverError &e) {
    err = error_json("solver_" + e.kind, e.what());
    err["error"]["last_iterate"] = {e.last_iterate[0], e.last_iterate[1]};
    err["error"]["last_residual"] = {e.last_residual[0], e.last_residual[1]};
    err["error"]["iterations"] = e.iterations;
    code = kSolverFailure;
  } catch (const NoSolutionError &e) {
    err = error_json("no_solution", e.what());
    code = kSolverFailure;
  } catch (const NumericalError &e) {
    err = error_json("numerical", e.what());
    code = kSolverFailure;
  } catch (const ValidationError &e) {
    err = error_json("validation", e.what());
    code = kValidationFailure;
  } catch (const nlohmann::json::exception &e) {
    err = error_json("validation", e.what());
    code = kValidationFailure;
  }
  err["params_hash"] = params_hash(p);
  write_json(out, err);
  out << "\n";
  return code;
}

}  // namespace kane::cli

#endif  // KANE_CLI_HPP_
