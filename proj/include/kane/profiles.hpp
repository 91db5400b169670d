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

#ifndef KANE_PROFILES_HPP_
#define KANE_PROFILES_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "kane/quadrature.hpp"
#include "kane/spectra.hpp"

namespace kane {

// Branch seams (tau = 1/4 for f_A, tau = tau' for f_J) take the later branch;
// both branches agree there, so only pointwise reproducibility depends on it.

/// Hyperfine ramp shape on [0, 1/2]: 1 - 8 a tau^2, then 1 - a + 8 a (tau - 1/2)^2.
inline double f_A(double tau, double a) {
  if (!(a > 0 && a < 1)) throw ValidationError("f_A: a must lie in (0, 1)");
  if (!(tau >= 0 && tau <= 0.5)) throw ValidationError("f_A: tau must lie in [0, 1/2]");
  if (tau < 0.25) return 1 - 8 * a * tau * tau;
  return 1 - a + 8 * a * (tau - 0.5) * (tau - 0.5);
}

inline double f_A_derivative(double tau, double a) {
  if (tau < 0.25) return -16 * a * tau;
  return 16 * a * (tau - 0.5);
}

/// Closed-form integral of f_A over [0, 1/2]: 1/2 - a/4.
inline double f_A_integral(double a) { return 0.5 - 0.25 * a; }

/// Exchange ramp shape on [0, 1/2]: 2 tau^2 / tau', then 1 - (1 - 2 tau)^2 / (1 - 2 tau').
inline double f_J(double tau, double tau_prime) {
  if (!(tau_prime > 0 && tau_prime < 0.5)) throw ValidationError("f_J: tau' must lie in (0, 1/2)");
  if (!(tau >= 0 && tau <= 0.5)) throw ValidationError("f_J: tau must lie in [0, 1/2]");
  if (tau < tau_prime) return 2 * tau * tau / tau_prime;
  return 1 - (1 - 2 * tau) * (1 - 2 * tau) / (1 - 2 * tau_prime);
}

/// Closed-form integral of f_J over [0, 1/2].
inline double f_J_integral(double tau_prime) {
  const double u = 1 - 2 * tau_prime;
  return 2 * tau_prime * tau_prime / 3 + 0.5 * u - u * u / 6;
}

struct ZPulse {
  double a = 0.5;   ///< depth, A_min = A0 (1 - a)
  double tZ = 0.0;  ///< ps

  void validate() const {
    if (!(a > 0 && a < 1)) throw ValidationError("Z pulse: a must lie in (0, 1)");
    if (!(tZ > 0)) throw ValidationError("Z pulse: tZ must be positive");
  }
  double duration() const { return tZ; }
};

struct XPulse {
  double A = 0.0;         ///< plateau hyperfine energy (meV)
  double tXprime = 0.0;   ///< total ramp time, t'_X/2 down and t'_X/2 up (ps)
  double tX = 0.0;        ///< drive duration (ps)
  double omega_ac = 0.0;  ///< rad/ps
  double Bac = 0.0;       ///< T

  double ramp_parameter(double A0) const { return 1 - A / A0; }
  void validate(double A0) const {
    if (!(A > 0 && A < A0)) throw ValidationError("X pulse: need 0 < A < A0");
    if (!(tXprime > 0)) throw ValidationError("X pulse: t'_X must be positive");
    if (!(tX >= 0)) throw ValidationError("X pulse: t_X must be non-negative");
    if (!(Bac >= 0)) throw ValidationError("X pulse: Bac must be non-negative");
  }
  double duration() const { return tXprime + tX; }
  double drive_on() const { return 0.5 * tXprime; }
  double drive_off() const { return 0.5 * tXprime + tX; }
};

struct CZPulse {
  double Jc = 0.0;          ///< plateau exchange (meV)
  double tau_prime = 0.25;  ///< ramp smoothness parameter
  double ta = 0.0;          ///< total ramp time (ps)
  double th = 0.0;          ///< plateau time (ps)

  void validate() const {
    if (!(Jc >= 0)) throw ValidationError("CZ pulse: Jc must be non-negative");
    if (!(tau_prime > 0 && tau_prime < 0.5)) throw ValidationError("CZ pulse: tau' must lie in (0, 1/2)");
    if (!(ta > 0)) throw ValidationError("CZ pulse: ta must be positive");
    if (!(th >= 0)) throw ValidationError("CZ pulse: th must be non-negative");
  }
  double tC() const { return ta + th; }
  double duration() const { return tC(); }
};

namespace detail {
inline void check_time(double t, double duration) {
  if (!(t >= 0 && t <= duration)) throw ValidationError("time outside the pulse window");
}
}  // namespace detail

/// Z shape: A0 f_A(t/tZ) on the first half, mirrored on the second.
inline double A_profile(const ZPulse &z, double A0, double t) {
  detail::check_time(t, z.tZ);
  const double tau = t / z.tZ;
  return A0 * f_A(tau <= 0.5 ? tau : 1 - tau, z.a);
}

/// X shape: ramp down over t'_X/2, plateau A for t_X, ramp up over t'_X/2.
inline double A_profile(const XPulse &x, double A0, double t) {
  detail::check_time(t, x.duration());
  const double tau = t / x.tXprime;
  const double tau_sp = 1 + x.tX / x.tXprime;
  const double a = x.ramp_parameter(A0);
  if (tau <= 0.5) return A0 * f_A(tau, a);
  if (tau < tau_sp - 0.5) return x.A;
  return A0 * f_A(std::clamp(tau_sp - tau, 0.0, 0.5), a);
}

inline double J_profile(const CZPulse &c, double t) {
  detail::check_time(t, c.tC());
  const double tau = t / c.ta;
  const double tau_c = c.tC() / c.ta;
  if (tau <= 0.5) return c.Jc * f_J(tau, c.tau_prime);
  if (tau < tau_c - 0.5) return c.Jc;
  return c.Jc * f_J(std::clamp(tau_c - tau, 0.0, 0.5), c.tau_prime);
}

/// Times at which the piecewise definition changes.
inline std::vector<double> breakpoints(const ZPulse &z) {
  return {0, 0.25 * z.tZ, 0.5 * z.tZ, 0.75 * z.tZ, z.tZ};
}
inline std::vector<double> breakpoints(const XPulse &x) {
  const double q = 0.25 * x.tXprime;
  return {0, q, 2 * q, 2 * q + x.tX, 3 * q + x.tX, 4 * q + x.tX};
}
inline std::vector<double> breakpoints(const CZPulse &c) {
  const double r = c.tau_prime * c.ta, h = 0.5 * c.ta;
  return {0, r, h, h + c.th, c.tC() - r, c.tC()};
}

// ---------------------------------------------------------------------------
// Schedules.

struct ConstantHyperfine {
  double A = 0.0;
};
using HyperfineTrajectory = std::variant<ConstantHyperfine, ZPulse, XPulse>;

struct NoExchange {};
using ExchangeTrajectory = std::variant<NoExchange, CZPulse>;

/// Global transverse drive, switched instantaneously.
struct DriveWindow {
  double t_on = 0.0, t_off = 0.0;
  double omega_ac = 0.0;
  double Bac = 0.0;
};

struct PulseSchedule {
  std::array<HyperfineTrajectory, 2> hyperfine{ConstantHyperfine{}, ConstantHyperfine{}};
  ExchangeTrajectory exchange = NoExchange{};
  std::optional<DriveWindow> drive;
  double duration = 0.0;  ///< ps

  double A(const ModelParams &p, int site, double t) const {
    check(t);
    const auto &traj = hyperfine.at(site - 1);
    if (const auto *c = std::get_if<ConstantHyperfine>(&traj)) return c->A;
    if (const auto *z = std::get_if<ZPulse>(&traj)) return t <= z->tZ ? A_profile(*z, p.A0, t) : p.A0;
    const auto &x = std::get<XPulse>(traj);
    return t <= x.duration() ? A_profile(x, p.A0, t) : p.A0;
  }

  double J(double t) const {
    check(t);
    if (const auto *c = std::get_if<CZPulse>(&exchange)) return t <= c->tC() ? J_profile(*c, t) : 0.0;
    return 0.0;
  }

  /// Drive state on [t, t + 0): on for t_on <= t < t_off.
  bool drive_on(double t) const { return drive && t >= drive->t_on && t < drive->t_off; }

  std::vector<double> breakpoints() const {
    std::vector<double> pts = {0.0, duration};
    auto add = [&](const std::vector<double> &v) {
      for (double x : v)
        if (x > 0 && x < duration) pts.push_back(x);
    };
    for (const auto &traj : hyperfine) {
      if (const auto *z = std::get_if<ZPulse>(&traj)) add(kane::breakpoints(*z));
      if (const auto *x = std::get_if<XPulse>(&traj)) add(kane::breakpoints(*x));
    }
    if (const auto *c = std::get_if<CZPulse>(&exchange)) add(kane::breakpoints(*c));
    if (drive) add({drive->t_on, drive->t_off});
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

  void validate(const ModelParams &p) const {
    if (!(duration > 0)) throw ValidationError("schedule duration must be positive");
    for (const auto &traj : hyperfine) {
      if (const auto *c = std::get_if<ConstantHyperfine>(&traj)) {
        if (c->A < 0) throw ValidationError("hyperfine energy must be non-negative");
      }
      if (const auto *z = std::get_if<ZPulse>(&traj)) z->validate();
      if (const auto *x = std::get_if<XPulse>(&traj)) x->validate(p.A0);
    }
    if (const auto *c = std::get_if<CZPulse>(&exchange)) c->validate();
    if (drive && !(drive->t_on >= 0 && drive->t_off >= drive->t_on && drive->Bac >= 0)) {
      throw ValidationError("invalid drive window");
    }
  }

 private:
  void check(double t) const {
    if (!(t >= 0 && t <= duration * (1 + 1e-15))) {
      throw ValidationError("time " + std::to_string(t) + " ps outside schedule horizon");
    }
  }
};

/// Constant hyperfine energies, no exchange, no drive.
inline PulseSchedule idle_schedule(const ModelParams &p, double duration, double A1, double A2) {
  PulseSchedule s;
  s.hyperfine = {ConstantHyperfine{A1}, ConstantHyperfine{A2}};
  s.duration = duration;
  s.validate(p);
  return s;
}

/// Z pulse on one site, the other site idle at A0.
inline PulseSchedule z_schedule(const ModelParams &p, const ZPulse &z, int site) {
  z.validate();
  PulseSchedule s;
  s.hyperfine = {ConstantHyperfine{p.A0}, ConstantHyperfine{p.A0}};
  s.hyperfine.at(site - 1) = z;
  s.duration = z.tZ;
  s.validate(p);
  return s;
}

/// X pulse on one site: ramp, globally applied drive during the plateau, ramp back.
inline PulseSchedule x_schedule(const ModelParams &p, const XPulse &x, int site) {
  x.validate(p.A0);
  PulseSchedule s;
  s.hyperfine = {ConstantHyperfine{p.A0}, ConstantHyperfine{p.A0}};
  s.hyperfine.at(site - 1) = x;
  s.drive = DriveWindow{x.drive_on(), x.drive_off(), x.omega_ac, x.Bac};
  s.duration = x.duration();
  s.validate(p);
  return s;
}

inline PulseSchedule cz_schedule(const ModelParams &p, const CZPulse &c) {
  c.validate();
  PulseSchedule s;
  s.hyperfine = {ConstantHyperfine{p.A0}, ConstantHyperfine{p.A0}};
  s.exchange = c;
  s.duration = c.tC();
  s.validate(p);
  return s;
}

// ---------------------------------------------------------------------------
// Adiabatic phase integrals.

struct ZPhases {
  double delta0 = 0.0;  ///< phase of |u_0> (rad)
  double delta1 = 0.0;  ///< phase of |u_1> (rad)
};

/// Integral over s in [0,1] of sqrt(eps^2 + 4A(s)^2) - eps for the Z shape,
/// written as 4A^2 / (sqrt(eps^2 + 4A^2) + eps) so the quadrature only sees the
/// small remainder.
inline QuadratureResult z_sqrt_remainder(const ModelParams &p, double a) {
  const double eps = p.eps(), A0 = p.A0;
  auto g = [&](double tau) {
    const double A = A0 * f_A(tau, a);
    return 4 * A * A / (std::sqrt(eps * eps + 4 * A * A) + eps);
  };
  QuadratureResult half = integrate(g, {0.0, 0.25, 0.5});
  return {2 * half.value, 2 * half.error};
}

/// delta_0 = tZ/hbar int [-A - sqrt(eps^2 + 4A^2)], delta_1 = tZ/hbar [gn_mun B - muB B + int A].
inline ZPhases z_phase_integrals(const ModelParams &p, const ZPulse &z) {
  z.validate();
  const double intA = p.A0 * 2 * f_A_integral(z.a);
  const double rem = z_sqrt_remainder(p, z.a).value;
  const double k = z.tZ / p.hbar;
  return {k * (-intA - p.eps() - rem), k * (p.nuclear_zeeman() - p.electron_zeeman() + intA)};
}

/// Phases indexed as k = 1, +, -, 4.
enum CZIndex { kV1 = 0, kVPlus = 1, kVMinus = 2, kV4 = 3 };

struct CZPhases {
  std::array<double, 4> alpha{};  ///< ramp phases (rad)
  std::array<double, 4> beta{};   ///< plateau phases (rad)
  bool near_crossing = false;
};

/// Ramp integrals over tau in [0, 1/2] at A = A0, in remainder form.
struct CZRampIntegrals {
  double F_J = 0.0;        ///< int f_J
  double dE01 = 0.0;       ///< int [E1^(0,1)(J) - E1^(0,1)(0)]
  double sqrt_rem = 0.0;   ///< int [sqrt((eps-2J)^2 + 4A0^2) - (eps - 2J)]
  double error = 0.0;      ///< quadrature error estimate
};

inline CZRampIntegrals cz_ramp_integrals(const ModelParams &p, double Jc, double tau_prime) {
  if (!(tau_prime > 0 && tau_prime < 0.5)) throw ValidationError("tau' must lie in (0, 1/2)");
  const double A0 = p.A0, eps = p.eps();
  const double E0 = block01_lowest_pair(p, A0, 0.0)[0];
  CZRampIntegrals r;
  r.F_J = f_J_integral(tau_prime);
  auto dE = [&](double tau) {
    return block01_lowest_pair(p, A0, Jc * f_J(tau, tau_prime), false)[0] - E0;
  };
  auto sq = [&](double tau) {
    const double d = eps - 2 * Jc * f_J(tau, tau_prime);
    return 4 * A0 * A0 / (std::sqrt(d * d + 4 * A0 * A0) + d);
  };
  const std::vector<double> pts = {0.0, tau_prime, 0.5};
  // The closed form carries ~1e-15 meV of roundoff: 1e-12 relative, 1e-14 meV absolute.
  const auto q1 = integrate(dE, pts, 1e-12, 12, 1e-14);
  const auto q2 = integrate(sq, pts);
  r.dE01 = q1.value;
  r.sqrt_rem = q2.value;
  r.error = q1.error + q2.error;
  // Spot-validate the closed form on the plateau value.
  block01_lowest_pair(p, A0, Jc, true);
  return r;
}

inline CZPhases cz_phase_integrals(const ModelParams &p, const CZPulse &c) {
  c.validate();
  const auto I = cz_ramp_integrals(p, c.Jc, c.tau_prime);
  const double eps = p.eps(), gB = p.nuclear_zeeman(), A0 = p.A0;
  const double r0 = std::sqrt(eps * eps + 4 * A0 * A0);
  const double E0 = block01_lowest_pair(p, A0, 0.0)[0];
  const double JF = c.Jc * I.F_J;
  // int_0^{1/2} E_k(J(tau)) dtau
  const std::array<double, 4> ramp = {
      0.5 * E0 + I.dE01,
      JF + 0.5 * (-eps + 2 * gB - r0),
      -JF + 0.5 * (-eps + 2 * gB) - (0.5 * eps - 2 * JF + I.sqrt_rem),
      JF + 0.5 * (-2 * eps + 4 * gB + 2 * A0)};
  const BlockEigenvalues plateau = block_eigenvalues(p, A0, c.Jc);
  const std::array<double, 4> Ec = {plateau.E01_1, plateau.Em11_1, plateau.Em1m1_1, plateau.Em21_1};
  CZPhases out;
  for (int k = 0; k < 4; ++k) {
    out.alpha[k] = 2 * c.ta / p.hbar * ramp[k];
    out.beta[k] = c.th / p.hbar * Ec[k];
  }
  out.near_crossing = plateau.near_crossing;
  return out;
}

}  // namespace kane

#endif  // KANE_PROFILES_HPP_
