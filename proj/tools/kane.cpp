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

// Command-line front end: design, simulation and analysis tables.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "kane/cli.hpp"

using namespace kane;
using namespace kane::cli;

int main(int argc, char **argv) {
  CLI::App app{"Pulse-level simulator and gate calibration for the two-donor Kane model"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string params_path, out_path, format_name;
  app.add_option("--params", params_path, "Model parameter JSON (falls back to $KANE_PARAMS)");
  app.add_option("--out", out_path, "Write output to this file instead of stdout");
  app.add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::function<Output(const ModelParams &)> command;

  LevelsOptions lv;
  auto *levels = app.add_subcommand("levels", "Two-qubit block energies over a J scan");
  levels->add_option("--A-over-A0", lv.A_over_A0, "Hyperfine energy in units of A0");
  levels->add_option("--j-max-over-eps", lv.j_max_over_eps, "Upper end of the J grid in units of eps");
  levels->add_option("--points", lv.points, "Number of grid points");
  levels->callback([&] { command = [&](const ModelParams &p) { return cmd_levels(p, lv); }; });

  std::string z_theta = "pi/4";
  int z_m = -6, z_n = -5;
  auto *dz = app.add_subcommand("design-z", "Solve the Z-rotation pulse depth a and duration t_Z");
  dz->add_option("--theta", z_theta, "Rotation angle, e.g. pi/4");
  dz->add_option("--m", z_m, "Integer m of the ratio condition");
  dz->add_option("--n", z_n, "Integer n of the ratio condition");
  dz->callback([&] { command = [&](const ModelParams &p) { return cmd_design_z(p, z_theta, z_m, z_n); }; });

  DesignCZOptions cz;
  auto *dcz = app.add_subcommand("design-cz", "Solve the controlled-Z exchange pulse");
  dcz->add_option("--theta", cz.theta, "Controlled-Z angle, e.g. pi");
  dcz->add_option("--seed-jc-over-eps", cz.seed_jc_over_eps, "Newton seed for Jc/eps");
  dcz->add_option("--seed-tau-prime", cz.seed_tau_prime, "Newton seed for tau'");
  dcz->add_option("--m-plus", cz.m_plus);
  dcz->add_option("--m-minus", cz.m_minus);
  dcz->add_option("--m4", cz.m4);
  dcz->callback([&] { command = [&](const ModelParams &p) { return cmd_design_cz(p, cz); }; });

  double x_ratio = 0.5;
  std::string x_state = "0", x_theta = "pi/4", x_route = "closed-form";
  auto *xf = app.add_subcommand("xrot-fidelity", "Fidelity of the block-diagonal X rotation");
  xf->add_option("--ratio", x_ratio, "A/A0 during the drive");
  xf->add_option("--state", x_state, "Initial state: 0, 1 or plus")->check(CLI::IsMember({"0", "1", "plus"}));
  xf->add_option("--theta", x_theta, "Rotation angle");
  xf->add_option("--route", x_route, "closed-form or numeric")->check(CLI::IsMember({"closed-form", "numeric"}));
  xf->callback([&] {
    command = [&](const ModelParams &p) { return cmd_xrot_fidelity(p, x_ratio, x_state, x_theta, x_route); };
  });

  auto *t1 = app.add_subcommand("table1", "Z-rotation designs for theta = pi/4, pi/2");
  t1->callback([&] { command = [&](const ModelParams &p) { return cmd_table1(p); }; });
  auto *t2 = app.add_subcommand("table2", "X-rotation fidelity grid");
  t2->callback([&] { command = [&](const ModelParams &p) { return cmd_table2(p); }; });
  double t3_tau = 0.1;
  auto *t3 = app.add_subcommand("table3", "Controlled-Z designs for the three branches");
  t3->add_option("--seed-tau-prime", t3_tau, "Newton seed for tau'");
  t3->callback([&] { command = [&](const ModelParams &p) { return cmd_table3(p, t3_tau); }; });

  SimulateOptions sim;
  auto *sm = app.add_subcommand("simulate", "Propagate a two-qubit state through a schedule");
  sm->add_option("--schedule", sim.schedule_path, "Schedule JSON")->required();
  sm->add_option("--init", sim.init, "00/01/+0/..., bare:<i>, or a state JSON file");
  sm->add_option("--dt", sim.dt, "auto or a step in ps");
  sm->add_option("--emit-trajectory", sim.trajectory_path, "CSV of amplitudes after every step");
  sm->callback([&] { command = [&](const ModelParams &p) { return cmd_simulate(p, sim); }; });

  std::optional<double> temp_mK;
  double th_ratio = 1.0;
  auto *th = app.add_subcommand("thermal", "Single-site Gibbs populations and polarization ratio");
  th->add_option("--temp-mK", temp_mK, "Temperature in mK (default: the parameter set's)");
  th->add_option("--A-over-A0", th_ratio, "Hyperfine energy in units of A0");
  th->callback([&] { command = [&](const ModelParams &p) { return cmd_thermal(p, temp_mK, th_ratio); }; });

  std::string prof_schedule;
  int prof_points = 1001;
  auto *prof = app.add_subcommand("profile", "Control profiles");
  prof->require_subcommand(1);
  auto *dump = prof->add_subcommand("dump", "Sample A1, A2, J and the drive flag");
  dump->add_option("--schedule", prof_schedule, "Schedule JSON")->required();
  dump->add_option("--points", prof_points, "Number of samples");
  dump->callback([&] {
    command = [&](const ModelParams &p) { return cmd_profile_dump(p, prof_schedule, prof_points); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kValidationFailure;
  }

  std::ofstream file;
  std::ostream *out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot open output file " << out_path << "\n";
      return kValidationFailure;
    }
    out = &file;
  }

  ModelParams p;
  std::optional<Format> format;
  try {
    p = resolve_params(params_path);
    if (!format_name.empty()) format = parse_format(format_name);
  } catch (const Error &e) {
    write_json(*out, error_json("validation", e.what()));
    *out << "\n";
    return kValidationFailure;
  }
  return execute([&] { return command(p); }, p, *out, format);
}
