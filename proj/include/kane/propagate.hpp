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

#ifndef KANE_PROPAGATE_HPP_
#define KANE_PROPAGATE_HPP_

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "kane/profiles.hpp"

namespace kane {

/// exp(-i H t / hbar) for Hermitian H.
inline Operator matrix_exponential_hermitian(const Operator &H, double t,
                                             double hbar = ModelParams{}.hbar) {
  if (H.rows() != H.cols()) throw ValidationError("exponential: matrix must be square");
  if (hermiticity_defect(H) > 1e-12 * std::max(1.0, max_abs(H))) {
    throw ValidationError("exponential: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (H + H.adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("exponential: eigensolver failed");
  Amplitudes phases(H.rows());
  for (Eigen::Index k = 0; k < H.rows(); ++k) phases(k) = std::exp(-kI * (es.eigenvalues()(k) * t / hbar));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// 2 S_z eigenvalue of each single-site basis state (|up,0>, |up,1>, |down,0>, |down,1>).
inline int site_two_sz(int index) {
  static const int m[4] = {2, 0, 0, -2};
  return m[index];
}

/// Diagonal of D_z(t) = exp(-i omega t S_z) for dim 4 (one site) or 16 (both sites).
inline Amplitudes frame_phases(Eigen::Index dim, double t, double omega_ac) {
  Amplitudes d(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const int two_sz = dim == 4 ? site_two_sz(int(i)) : site_two_sz(int(i / 4)) + site_two_sz(int(i % 4));
    d(i) = std::exp(-kI * (omega_ac * t * 0.5 * two_sz));
  }
  return d;
}

inline Operator rotating_frame_operator(Eigen::Index dim, double t, double omega_ac) {
  return frame_phases(dim, t, omega_ac).asDiagonal();
}

/// D_z(t; omega_ac) psi.
inline StateVector rotating_frame_transform(const StateVector &psi, double t, double omega_ac) {
  return StateVector(frame_phases(psi.dim(), t, omega_ac).cwiseProduct(psi.amplitudes));
}

/// Full two-donor Hamiltonian of the schedule at time t (lab frame).
inline Operator full_hamiltonian(const ModelParams &p, const PulseSchedule &s, double t) {
  Operator H = two_qubit_static_hamiltonian(p, s.A(p, 1, t), s.A(p, 2, t), s.J(t));
  if (s.drive_on(t)) {
    ModelParams q = p;
    q.Bac = s.drive->Bac;
    H += ac_drive_hamiltonian(q, t, s.drive->omega_ac, 1) + ac_drive_hamiltonian(q, t, s.drive->omega_ac, 2);
  }
  return H;
}

struct PropagationResult {
  StateVector final_state;
  Operator propagator;
  long step_count = 0;
  double max_unitarity_defect = 0.0;
  double certification_delta = 0.0;  ///< final-amplitude change under dt halving
  int refinements = 0;
};

struct EvolveOptions {
  std::optional<double> dt;       ///< ps; empty = automatic steps
  int ramp_steps = 2000;          ///< steps per time-dependent segment in automatic mode
  double certify_tol = 1e-8;
  double dt_min = 1e-4;           ///< ps
  bool certify = true;
  /// Called with (t, state) after every step of the certified run.
  std::function<void(double, const Amplitudes &)> observer;
};

namespace detail {

struct Segment {
  double a = 0.0, b = 0.0;
  bool constant = false;
  bool drive = false;
  bool separable = false;  ///< J = 0 throughout
};

inline bool same_values(const ModelParams &p, const PulseSchedule &s, double a, double b) {
  const double A1 = s.A(p, 1, a), A2 = s.A(p, 2, a), J = s.J(a);
  for (int k = 1; k <= 5; ++k) {
    const double t = a + (b - a) * k / 5.0;
    if (s.A(p, 1, t) != A1 || s.A(p, 2, t) != A2 || s.J(t) != J) return false;
  }
  return true;
}

/// Generator in the propagation frame at time t: lab H when the drive is off,
/// the co-rotating (time-independent drive) form when on.
struct FrameGenerator {
  const ModelParams &p;
  const PulseSchedule &s;
  bool drive;

  Operator site(int which, double t) const {
    Operator h = single_site_hamiltonian(p, s.A(p, which, t));
    if (drive) {
      ModelParams q = p;
      q.Bac = s.drive->Bac;
      h += p.hbar * s.drive->omega_ac * single_site_sz() + rotating_drive_single_site(q);
    }
    return h;
  }
  Operator full(double t) const {
    return on_site(site(1, t), 1) + on_site(site(2, t), 2) + s.J(t) * exchange_coupling();
  }
  /// exp of the step-averaged generator over [ta, ta + h].  The controls are
  /// piecewise quadratic and enter linearly, so two Gauss points give the
  /// average exactly; what remains is the commutator (second Magnus) term.
  Operator exponential(double ta, double h, bool separable) const {
    const double d = h / (2 * std::sqrt(3.0));
    const double t1 = ta + 0.5 * h - d, t2 = ta + 0.5 * h + d;
    if (separable) {
      return kron(matrix_exponential_hermitian(0.5 * (site(1, t1) + site(1, t2)), h, p.hbar),
                  matrix_exponential_hermitian(0.5 * (site(2, t1) + site(2, t2)), h, p.hbar));
    }
    return matrix_exponential_hermitian(0.5 * (full(t1) + full(t2)), h, p.hbar);
  }
};

inline std::vector<Segment> segments(const ModelParams &p, const PulseSchedule &s, double t0, double t1) {
  std::vector<double> pts = {t0, t1};
  for (double x : s.breakpoints())
    if (x > t0 && x < t1) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  std::vector<Segment> segs;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    Segment g;
    g.a = pts[i];
    g.b = pts[i + 1];
    if (!(g.b > g.a)) continue;
    const double mid = 0.5 * (g.a + g.b);
    g.constant = same_values(p, s, g.a, g.b);
    g.drive = s.drive_on(mid);
    g.separable = s.J(g.a) == 0.0 && s.J(mid) == 0.0 && s.J(g.b) == 0.0;
    segs.push_back(g);
  }
  return segs;
}

/// Lab-frame propagator of one segment with n averaged-generator steps (n ignored when constant).
inline Operator segment_propagator(const ModelParams &p, const PulseSchedule &s, const Segment &g, long n,
                                   long &steps, double &defect,
                                   const std::function<void(double, const Operator &)> &on_step) {
  FrameGenerator gen{p, s, g.drive};
  const double omega = g.drive ? s.drive->omega_ac : 0.0;
  Operator U = Operator::Identity(16, 16);
  const long count = g.constant ? 1 : n;
  const double h = (g.b - g.a) / double(count);
  for (long k = 0; k < count; ++k) {
    const double ta = g.a + h * k;
    U = gen.exponential(ta, h, g.separable) * U;
    ++steps;
    if (on_step) {
      const double tb = (k + 1 == count) ? g.b : ta + h;
      Operator lab = U;
      if (g.drive) lab = rotating_frame_operator(16, tb, omega).adjoint() * U * rotating_frame_operator(16, g.a, omega);
      on_step(tb, lab);
    }
  }
  if (g.drive) {
    U = rotating_frame_operator(16, g.b, omega).adjoint() * U * rotating_frame_operator(16, g.a, omega);
  }
  defect = std::max(defect, unitarity_defect(U));
  return U;
}

inline long base_steps(const Segment &g, const EvolveOptions &opt) {
  if (g.constant) return 1;
  if (opt.dt) return std::max(1L, long(std::ceil((g.b - g.a) / *opt.dt - 1e-9)));
  return opt.ramp_steps;
}

}  // namespace detail

/// Time-ordered propagation of psi0 from t0 to t1 under the schedule.
///
/// Time-dependent segments use exact exponentials of the step-averaged Hamiltonian;
/// segments on which the Hamiltonian is constant (in the drive frame while the
/// drive is on) take a single exact step.  The result is certified by
/// repeating the time-dependent segments with half the step and comparing final
/// amplitudes.
inline PropagationResult evolve(const ModelParams &p, const PulseSchedule &s, const StateVector &psi0,
                                double t0, double t1, const EvolveOptions &opt = {}) {
  if (psi0.dim() != 16) throw ValidationError("evolve: two-site state required");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw ValidationError("evolve: initial state not normalized");
  if (!(t0 >= 0 && t1 >= t0 && t1 <= s.duration * (1 + 1e-15))) {
    throw ValidationError("evolve: interval outside schedule horizon");
  }
  if (opt.dt && !(*opt.dt > 0)) throw ValidationError("evolve: dt must be positive");
  const auto segs = detail::segments(p, s, t0, t1);

  PropagationResult out;
  std::vector<Operator> coarse(segs.size());
  std::vector<long> n(segs.size());
  long steps = 0;
  double defect = 0.0;
  for (size_t i = 0; i < segs.size(); ++i) {
    n[i] = detail::base_steps(segs[i], opt);
    coarse[i] = detail::segment_propagator(p, s, segs[i], n[i], steps, defect, {});
  }
  auto total = [&](const std::vector<Operator> &u) {
    Operator U = Operator::Identity(16, 16);
    for (const auto &x : u) U = x * U;
    return U;
  };
  Operator U = total(coarse);

  bool has_ramps = false;
  for (const auto &g : segs) has_ramps = has_ramps || !g.constant;
  if (opt.certify && has_ramps) {
    for (;;) {
      std::vector<Operator> fine(segs.size());
      bool too_fine = false;
      for (size_t i = 0; i < segs.size(); ++i) {
        if (segs[i].constant) {
          fine[i] = coarse[i];
          continue;
        }
        n[i] *= 2;
        too_fine = too_fine || (segs[i].b - segs[i].a) / double(n[i]) < opt.dt_min;
        fine[i] = detail::segment_propagator(p, s, segs[i], n[i], steps, defect, {});
      }
      const Operator Uf = total(fine);
      out.certification_delta = (Uf * psi0.amplitudes - U * psi0.amplitudes).cwiseAbs().maxCoeff();
      U = Uf;
      coarse = std::move(fine);
      if (out.certification_delta < opt.certify_tol) break;
      ++out.refinements;
      if (too_fine) {
        throw NumericalError("evolve: step-halving certification failed at dt_min (delta = " +
                             std::to_string(out.certification_delta) + ")");
      }
    }
  }

  if (opt.observer) {
    // Replay the certified step counts to report intermediate states.
    Operator before = Operator::Identity(16, 16);
    long dummy_steps = 0;
    double dummy_defect = 0.0;
    opt.observer(t0, psi0.amplitudes);
    for (size_t i = 0; i < segs.size(); ++i) {
      auto cb = [&](double t, const Operator &Useg) { opt.observer(t, Useg * before * psi0.amplitudes); };
      before = detail::segment_propagator(p, s, segs[i], n[i], dummy_steps, dummy_defect, cb) * before;
    }
  }

  out.propagator = U;
  out.final_state = StateVector(U * psi0.amplitudes);
  out.step_count = steps;
  out.max_unitarity_defect = std::max(defect, unitarity_defect(U));
  return out;
}

struct AdiabaticityReport {
  double grid_max = 0.0;           ///< max over tau of |<u2|dH/dtau|u0>| / (E2 - E0)
  double closed_form_bound = 0.0;  ///< eps A0 a / (eps^2 + 4 A0^2)
  double exact_max = 0.0;          ///< 4 a A0 eps / (eps^2 + 4 A(1/4)^2), attained at tau = 1/4
};

inline AdiabaticityReport adiabaticity_criterion(const ModelParams &p, const ZPulse &z, int grid = 100000) {
  z.validate();
  const double eps = p.eps(), A0 = p.A0;
  AdiabaticityReport r;
  const Operator V = hyperfine_coupling();
  for (int i = 0; i <= grid; ++i) {
    const double tau = 0.5 * i / grid;  // the profile is symmetric about tau = 1/2
    const double A = A0 * f_A(tau, z.a);
    const auto e = single_site_eigs(p, A);
    const double dA = A0 * f_A_derivative(tau, z.a);
    const double me = std::abs(e.vectors[2].dot(dA * V * e.vectors[0]));
    r.grid_max = std::max(r.grid_max, me / (e.energies[2] - e.energies[0]));
  }
  r.closed_form_bound = eps * A0 * z.a / (eps * eps + 4 * A0 * A0);
  const double Aq = A0 * (1 - 0.5 * z.a);
  r.exact_max = 4 * z.a * A0 * eps / (eps * eps + 4 * Aq * Aq);
  return r;
}

}  // namespace kane

#endif  // KANE_PROPAGATE_HPP_
