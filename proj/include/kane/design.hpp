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

#ifndef KANE_DESIGN_HPP_
#define KANE_DESIGN_HPP_

#include <cmath>
#include <string>

#include "kane/profiles.hpp"
#include "kane/solvers.hpp"

namespace kane {

// ---------------------------------------------------------------------------
// Z rotation.

/// Denominator of the Z-design ratio: eps - 2 gn_mun B - 2 A0 - sqrt(eps^2 + 4 A0^2) (< 0).
inline double z_design_denominator(const ModelParams &p) {
  const double eps = p.eps(), A0 = p.A0;
  const double r0_minus_eps = 4 * A0 * A0 / (std::sqrt(eps * eps + 4 * A0 * A0) + eps);
  return -(2 * p.nuclear_zeeman() + 2 * A0 + r0_minus_eps);
}

/// Left side of the Z-design condition:
///   (eps - 2 gn_mun B + int_0^1 [-2A - sqrt(eps^2 + 4A^2)]) / denominator,
/// with the eps terms cancelled analytically.
inline double z_design_ratio(const ModelParams &p, double a) {
  const double num = -(2 * p.nuclear_zeeman() + 2 * p.A0 * 2 * f_A_integral(a) + z_sqrt_remainder(p, a).value);
  return num / z_design_denominator(p);
}

struct ZDesign {
  double theta_Z = 0.0;
  int m = -6, n = -5;
  ZPulse pulse;
  double residual = 0.0;  ///< ratio - (theta_Z + 2 n pi) / (2 m pi)
  int root_count = 0;     ///< sign changes found by the bracketing scan
};

/// Solves the Z-design condition for a by bracketing scan + bisection; t_Z = 2 m pi hbar / denominator.
///
/// The default (m, n) = (-6, -5) is the shortest pair with a root at the default
/// parameters; (-5, -6) has none because the ratio stays within (0.69, 1].
inline ZDesign solve_z_rotation(const ModelParams &p, double theta_Z, int m = -6, int n = -5) {
  if (m == 0) throw ValidationError("design-z: m must be nonzero");
  const double rhs = (theta_Z + 2 * n * kPi) / (2 * m * kPi);
  auto f = [&](double a) { return z_design_ratio(p, a) - rhs; };
  const auto brackets = sign_change_brackets(f, 0.001, 0.999, 1e-3);
  if (brackets.empty()) {
    throw NoSolutionError("design-z: no root of the ratio condition in a in (0, 1) for (m, n) = (" +
                          std::to_string(m) + ", " + std::to_string(n) + ")");
  }
  const double tZ = 2 * m * kPi * p.hbar / z_design_denominator(p);
  if (!(tZ > 0)) throw NoSolutionError("design-z: m yields a non-positive t_Z");
  ZDesign d;
  d.theta_Z = theta_Z;
  d.m = m;
  d.n = n;
  d.root_count = int(brackets.size());
  d.pulse.a = bisection(f, brackets.front()[0], brackets.front()[1], 1e-12);
  d.pulse.tZ = tZ;
  d.residual = f(d.pulse.a);
  return d;
}

/// (delta_0 - delta_1) - (theta_Z + 2 n pi) from the phase integrals of the designed pulse.
inline double z_phase_residual(const ModelParams &p, const ZDesign &d) {
  const ZPhases ph = z_phase_integrals(p, d.pulse);
  return (ph.delta0 - ph.delta1) - (d.theta_Z + 2 * d.n * kPi);
}

// ---------------------------------------------------------------------------
// X rotation.

/// omega_ac with hbar omega_ac = E1(A) - E0(A).
inline double larmor_frequency(const ModelParams &p, double A) {
  if (A < 0) throw ValidationError("larmor_frequency: A must be non-negative");
  return transition_energy_10(p, A) / p.hbar;
}

inline double nu_theta(const ModelParams &p, double A) {
  return static_cast<double>(rotating_couplings<ldouble>(p, site_closed_form<ldouble>(p, A)).nu_theta);
}

inline double mu_theta(const ModelParams &p, double A) {
  return static_cast<double>(rotating_couplings<ldouble>(p, site_closed_form<ldouble>(p, A)).mu_theta);
}

struct XDesign {
  double theta_X = 0.0;
  XPulse pulse;
  double nu_theta = 0.0;        ///< meV/T
  double z_compensation = 0.0;  ///< omega_ac t_X, the frame phase to undo with Z rotations (rad)
};

constexpr double kDefaultRampTime = 50000.0;  // ps

inline XDesign design_x_rotation(const ModelParams &p, double theta_X, double A,
                                 double tXprime = kDefaultRampTime) {
  if (!(p.Bac > 0)) throw ValidationError("design-x: Bac must be positive");
  if (!(A > 0 && A < p.A0)) throw ValidationError("design-x: need 0 < A < A0");
  if (theta_X < 0) throw ValidationError("design-x: theta_X must be non-negative");
  XDesign d;
  d.theta_X = theta_X;
  d.nu_theta = nu_theta(p, A);
  d.pulse.A = A;
  d.pulse.tXprime = tXprime;
  d.pulse.tX = theta_X * p.hbar / (d.nu_theta * p.Bac);
  d.pulse.omega_ac = larmor_frequency(p, A);
  d.pulse.Bac = p.Bac;
  d.z_compensation = d.pulse.omega_ac * d.pulse.tX;
  return d;
}

// ---------------------------------------------------------------------------
// Controlled Z.

/// Both sides of the ramp-phase conditions at (Jc, tau').
struct CZConditions {
  double r_plus = 0.0;       ///< (alpha_+ - alpha_1) / (alpha_4 - alpha_1)
  double r_minus = 0.0;      ///< (alpha_- - alpha_1) / (alpha_4 - alpha_1)
  double denominator = 0.0;  ///< -2 eps + 4 gn_mun B + 2 A0 + 2 int [J - E1^(0,1)] (meV)
};

/// Numerators and denominator of the ramp conditions, with the large eps and
/// E1^(0,1)(0) terms cancelled analytically.
inline CZConditions cz_conditions(const ModelParams &p, double Jc, double tau_prime) {
  const auto I = cz_ramp_integrals(p, Jc, tau_prime);
  const double eps = p.eps(), A0 = p.A0, gB = p.nuclear_zeeman();
  const double r0me = 4 * A0 * A0 / (std::sqrt(eps * eps + 4 * A0 * A0) + eps);
  const double JF = Jc * I.F_J;
  const double den = 4 * gB + 4 * A0 + 2 * r0me + 2 * JF - 2 * I.dE01;
  const double num_plus = r0me + 2 * gB + 2 * A0 + 2 * JF - 2 * I.dE01;
  const double num_minus = 2 * r0me + 2 * gB + 2 * A0 + 2 * JF - 2 * I.sqrt_rem - 2 * I.dE01;
  return {num_plus / den, num_minus / den, den};
}

/// Plateau time giving beta_+ - beta_- = theta_cz.
inline double cz_hold_time(const ModelParams &p, double theta_cz, double Jc) {
  const double split = plus_minus_splitting(p, p.A0, Jc);
  if (!(split > 0)) throw ValidationError("cz: Jc must be positive");
  return theta_cz * p.hbar / split;
}

struct CZDesign {
  double theta_cz = 0.0;
  int m_plus = 0, m_minus = 0, m4 = 1;
  CZPulse pulse;
  std::array<double, 2> residuals{};  ///< ratio conditions minus their targets
  bool converged = false;
  int iterations = 0;
  double jacobian_condition = 0.0;
  bool near_crossing = false;
};

/// Builds a design from given (Jc, tau'): t_a from the alpha_4 - alpha_1 condition,
/// t_h from theta_cz; the ratio conditions are only evaluated, not solved.
inline CZDesign cz_design_from_pulse(const ModelParams &p, double theta_cz, double Jc, double tau_prime,
                                     int m_plus = 0, int m_minus = 0, int m4 = 1) {
  if (m4 == 0) throw ValidationError("cz: m4 must be nonzero");
  const auto c = cz_conditions(p, Jc, tau_prime);
  CZDesign d;
  d.theta_cz = theta_cz;
  d.m_plus = m_plus;
  d.m_minus = m_minus;
  d.m4 = m4;
  d.pulse.Jc = Jc;
  d.pulse.tau_prime = tau_prime;
  d.pulse.ta = 2 * m4 * kPi * p.hbar / c.denominator;
  d.pulse.th = cz_hold_time(p, theta_cz, Jc);
  if (!(d.pulse.ta > 0)) throw NoSolutionError("cz: m4 yields a non-positive t_a");
  d.residuals = {c.r_plus - (1.0 + 2 * m_plus) / (2.0 * m4), c.r_minus - (1.0 + 2 * m_minus) / (2.0 * m4)};
  d.near_crossing = near_level_crossing(p, Jc);
  return d;
}

/// Smallest Jc / eps accepted as a genuine gate; Jc -> 0 satisfies the ratio
/// conditions trivially.
constexpr double kTrivialJcOverEps = 1e-3;

/// Newton-Raphson on the two ramp-phase ratio conditions in (Jc/eps, tau').
inline CZDesign solve_cz(const ModelParams &p, double theta_cz, double seed_Jc, double seed_tau_prime,
                         int m_plus = 0, int m_minus = 0, int m4 = 1, const NewtonOptions &opt = {}) {
  if (m4 == 0) throw ValidationError("cz: m4 must be nonzero");
  const double eps = p.eps();
  if (!(seed_Jc > 0 && seed_Jc < 0.5 * eps && seed_tau_prime > 0 && seed_tau_prime < 0.5)) {
    throw ValidationError("cz: seeds must lie in (0, eps/2) x (0, 1/2)");
  }
  const double tp = (1.0 + 2 * m_plus) / (2.0 * m4), tm = (1.0 + 2 * m_minus) / (2.0 * m4);
  auto F = [&](const std::array<double, 2> &x) -> std::array<double, 2> {
    const auto c = cz_conditions(p, x[0] * eps, x[1]);
    return {c.r_plus - tp, c.r_minus - tm};
  };
  auto in_domain = [](const std::array<double, 2> &x) {
    return x[0] > 0 && x[0] < 0.5 && x[1] > 0 && x[1] < 0.5;
  };
  NewtonResult r;
  try {
    r = newton_raphson(F, {seed_Jc / eps, seed_tau_prime}, in_domain, opt);
  } catch (const SolverError &e) {
    // A breakdown next to Jc = 0 is the trivial root, not a generic failure.
    if (e.last_iterate[0] >= kTrivialJcOverEps) throw;
    throw SolverError("trivial_root", "cz: iterate approached the trivial root Jc -> 0 (" + e.kind + ")",
                      e.last_iterate, e.last_residual, e.iterations);
  }
  if (r.x[0] < kTrivialJcOverEps) {
    throw SolverError("trivial_root", "cz: iterate approached the trivial root Jc -> 0", r.x, r.residual,
                      r.iterations);
  }
  CZDesign d = cz_design_from_pulse(p, theta_cz, r.x[0] * eps, r.x[1], m_plus, m_minus, m4);
  d.converged = true;
  d.iterations = r.iterations;
  d.jacobian_condition = r.jacobian_condition;
  return d;
}

}  // namespace kane

#endif  // KANE_DESIGN_HPP_
