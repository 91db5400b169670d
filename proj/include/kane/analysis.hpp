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

#ifndef KANE_ANALYSIS_HPP_
#define KANE_ANALYSIS_HPP_

#include <array>
#include <cmath>
#include <string>

#include "kane/design.hpp"
#include "kane/propagate.hpp"

namespace kane {

// ---------------------------------------------------------------------------
// X rotation.

namespace detail {

/// Rejects states with weight outside span{|u_0(A)>, |u_1(A)>}.
inline void require_computational(const ModelParams &p, double A, const StateVector &phi) {
  if (phi.dim() != 4) throw ValidationError("x rotation: single-site state required");
  const auto e = single_site_eigs(p, A);
  const Amplitudes in_span =
      e.vectors[0] * e.vectors[0].dot(phi.amplitudes) + e.vectors[1] * e.vectors[1].dot(phi.amplitudes);
  if ((phi.amplitudes - in_span).norm() > 1e-10) {
    throw ValidationError("x rotation: state has weight outside the computational span");
  }
}

/// exp(i phi sigma) for a Pauli-like involution sigma.
inline Operator pauli_rotation(const Operator &sigma, double phi) {
  return std::cos(phi) * Operator::Identity(sigma.rows(), sigma.cols()) + kI * std::sin(phi) * sigma;
}

}  // namespace detail

/// exp(-i t_X E_0/hbar) exp(i theta_X sigma_X) phi, sigma_X = |u0><u1| + |u1><u0| (rotating frame).
inline StateVector approximate_x_rotation(const ModelParams &p, const XDesign &d, const StateVector &phi) {
  const double A = d.pulse.A;
  detail::require_computational(p, A, phi);
  const auto e = single_site_eigs(p, A);
  const Operator sx = e.vectors[0] * e.vectors[1].adjoint() + e.vectors[1] * e.vectors[0].adjoint();
  const Operator P = e.vectors[0] * e.vectors[0].adjoint() + e.vectors[1] * e.vectors[1].adjoint();
  // On the computational span exp(i theta sigma_X) = cos(theta) P + i sin(theta) sigma_X.
  const Operator R = std::cos(d.theta_X) * P + kI * std::sin(d.theta_X) * sx;
  const cplx global = std::exp(-kI * (d.pulse.tX * e.energies[0] / p.hbar));
  return StateVector(global * (R * phi.amplitudes));
}

/// Lab-frame variant: D_z^dagger(t_X) applied to the rotating-frame result.
inline StateVector approximate_x_rotation_lab(const ModelParams &p, const XDesign &d, const StateVector &phi) {
  const StateVector rot = approximate_x_rotation(p, d, phi);
  return StateVector(frame_phases(4, d.pulse.tX, d.pulse.omega_ac).conjugate().cwiseProduct(rot.amplitudes));
}

/// exp(-i H t/hbar) in the |u_k(A)> basis from the closed-form H_rot eigensystem.
inline Operator rotating_propagator_u(const RotFrameEigensystem &es, double t, double hbar) {
  Operator U = Operator::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    const Amplitudes w = es.vectors[k] / es.vectors[k].norm();
    U += std::exp(-kI * (es.omegas[k] * t / hbar)) * w * w.adjoint();
  }
  return U;
}

enum class ExactRoute { closed_form, numeric_exponential };

struct FidelityReport {
  double A_over_A0 = 0.0;
  double theta_X = 0.0;
  std::string initial_state;
  StateVector exact_state;   ///< exp(-i H_rot t_X/hbar) phi, bare basis
  StateVector approx_state;  ///< exp(-i H_d t_X/hbar) phi, bare basis
  double fidelity = 0.0;
  double tX = 0.0;
  double omega_ac = 0.0;
};

/// "0" -> |u_0(A)>, "plus" -> (|u_0(A)> + |u_1(A)>)/sqrt 2.
inline StateVector computational_state(const ModelParams &p, double A, const std::string &label) {
  const auto e = single_site_eigs(p, A);
  if (label == "0") return StateVector(e.vectors[0]);
  if (label == "1") return StateVector(e.vectors[1]);
  if (label == "plus") return StateVector((e.vectors[0] + e.vectors[1]) / std::sqrt(2.0));
  throw ValidationError("unknown state label '" + label + "' (expected 0, 1 or plus)");
}

/// |<phi| exp(i H_rot t_X/hbar) exp(-i H_d t_X/hbar) |phi>| under the Larmor condition at A.
inline FidelityReport x_rotation_fidelity(const ModelParams &p, double A_over_A0, double theta_X,
                                          const StateVector &phi, ExactRoute route = ExactRoute::closed_form,
                                          std::string label = "custom") {
  if (!(A_over_A0 > 0 && A_over_A0 < 1)) throw ValidationError("x rotation: need 0 < A/A0 < 1");
  const double A = A_over_A0 * p.A0;
  const XDesign d = design_x_rotation(p, theta_X, A);
  detail::require_computational(p, A, phi);
  const Operator Ub = single_site_eigs(p, A).basis_matrix();
  const Amplitudes phi_u = Ub.adjoint() * phi.amplitudes;
  const RotatingHamiltonianU hu = rotating_hamiltonian_u(p, A, d.pulse.omega_ac);

  Operator U_exact;
  if (route == ExactRoute::closed_form) {
    U_exact = rotating_propagator_u(rot_frame_eigs(p, A, d.pulse.omega_ac), d.pulse.tX, p.hbar);
  } else {
    U_exact = matrix_exponential_hermitian(to_operator(hu.full()), d.pulse.tX, p.hbar);
  }
  const Operator U_d = matrix_exponential_hermitian(to_operator(hu.block_diagonal), d.pulse.tX, p.hbar);

  FidelityReport r;
  r.A_over_A0 = A_over_A0;
  r.theta_X = theta_X;
  r.initial_state = std::move(label);
  r.exact_state = StateVector(Ub * (U_exact * phi_u));
  r.approx_state = StateVector(Ub * (U_d * phi_u));
  r.fidelity = std::min(1.0, std::abs(r.approx_state.amplitudes.dot(r.exact_state.amplitudes)));
  r.tX = d.pulse.tX;
  r.omega_ac = d.pulse.omega_ac;
  return r;
}

inline FidelityReport x_rotation_fidelity(const ModelParams &p, double A_over_A0, double theta_X,
                                          const std::string &label, ExactRoute route = ExactRoute::closed_form) {
  return x_rotation_fidelity(p, A_over_A0, theta_X, computational_state(p, A_over_A0 * p.A0, label), route,
                             label);
}

struct PerturbativeFidelity {
  double fidelity = 0.0;
  double phase_argument = 0.0;  ///< t_X (Delta1 - Delta0) / hbar
  double delta0 = 0.0, delta1 = 0.0;  ///< meV
};

/// Leading-order F = sqrt(1/2 + cos(t_X (Delta1 - Delta0)/hbar)/2).
///
/// Delta_k is the shift of the k-th computational H_d level when H_mix is
/// included; levels are paired by maximal eigenvector overlap.
inline PerturbativeFidelity perturbative_fidelity(const ModelParams &p, double A_over_A0, double theta_X) {
  if (!(A_over_A0 > 0 && A_over_A0 < 1)) throw ValidationError("x rotation: need 0 < A/A0 < 1");
  const double A = A_over_A0 * p.A0;
  const XDesign d = design_x_rotation(p, theta_X, A);
  const auto hu = rotating_hamiltonian_u(p, A, d.pulse.omega_ac);
  const auto ex = rot_frame_eigs(p, A, d.pulse.omega_ac);
  Eigen::SelfAdjointEigenSolver<Operator> hd(to_operator(hu.block_diagonal));

  // The two H_d eigenvectors living in span{u0, u1}, in ascending energy.
  std::array<double, 2> shift{};
  int found = 0;
  for (int k = 0; k < 4 && found < 2; ++k) {
    const Amplitudes v = hd.eigenvectors().col(k);
    if (std::norm(v(0)) + std::norm(v(1)) < 0.5) continue;
    int best = 0;
    double best_overlap = -1;
    for (int j = 0; j < 4; ++j) {
      const double o = overlap_modulus(v, ex.vectors[j] / ex.vectors[j].norm());
      if (o > best_overlap) {
        best_overlap = o;
        best = j;
      }
    }
    shift[found++] = ex.omegas[best] - hd.eigenvalues()(k);
  }
  if (found != 2) throw NumericalError("perturbative fidelity: computational H_d levels not found");
  PerturbativeFidelity r;
  r.delta0 = shift[0];
  r.delta1 = shift[1];
  r.phase_argument = d.pulse.tX * (r.delta1 - r.delta0) / p.hbar;
  r.fidelity = std::sqrt(0.5 + 0.5 * std::cos(r.phase_argument));
  return r;
}

// ---------------------------------------------------------------------------
// Thermal state.

/// Printed closed form of n_up / n_down for one site:
/// (e^{-b D30} + cos^2 e^{-b D20} + sin^2) / (sin^2 e^{-b D20} + e^{-b D10} + cos^2).
inline double polarization_ratio(const ModelParams &p, double A, double T) {
  if (!(T > 0)) throw ValidationError("temperature must be positive");
  const auto e = single_site_eigs(p, A);
  const double beta = 1.0 / (kBoltzmann * T);
  const double c2 = e.cos_theta * e.cos_theta, s2 = e.sin_theta * e.sin_theta;
  auto w = [&](int k) { return std::exp(-beta * (e.energies[k] - e.energies[0])); };
  return (w(3) + c2 * w(2) + s2) / (s2 * w(2) + w(1) + c2);
}

struct ThermalReport {
  double temperature = 0.0;  ///< K
  double A = 0.0;            ///< meV
  std::array<double, 4> populations{};  ///< over |u_0> .. |u_3>
  double ratio_up_down = 0.0;
};

/// Gibbs populations exp(-E_k/kT)/Z of one site.
inline ThermalReport thermal_state(const ModelParams &p, double A, double T) {
  if (!(T > 0)) throw ValidationError("temperature must be positive");
  const auto e = single_site_eigs(p, A);
  const double beta = 1.0 / (kBoltzmann * T);
  ThermalReport r;
  r.temperature = T;
  r.A = A;
  double z = 0.0;
  for (int k = 0; k < 4; ++k) z += r.populations[k] = std::exp(-beta * (e.energies[k] - e.energies[0]));
  for (double &x : r.populations) x /= z;
  r.ratio_up_down = polarization_ratio(p, A, T);
  return r;
}

// ---------------------------------------------------------------------------
// Logical two-qubit algebra over {|0_L>, |1_L>}^(x2), ordered 00, 01, 10, 11.

struct LogicalGate {
  Operator matrix;
  std::string label;
};

namespace logical {

inline Operator I2() { return Operator::Identity(2, 2); }
inline Operator X() { return pauli(Axis::x); }
inline Operator Y() { return pauli(Axis::y); }
inline Operator Z() { return pauli(Axis::z); }

/// exp(-i phi sigma_a (x) sigma_a).
inline Operator two_body_rotation(Axis a, double phi) {
  return detail::pauli_rotation(kron(pauli(a), pauli(a)), -phi);
}

/// exp(-i theta/2 Z(x)Z) (1 (x) exp(i theta/2 Z)).
inline Operator controlled_z(double theta) {
  return two_body_rotation(Axis::z, 0.5 * theta) * kron(I2(), detail::pauli_rotation(Z(), 0.5 * theta));
}

/// Columns v_1, v_+, v_-, v_4 in the logical product basis.
inline Operator eigenbasis() {
  const double h = 1.0 / std::sqrt(2.0);
  Operator T = Operator::Zero(4, 4);
  T(0, kV1) = 1;
  T(1, kVPlus) = h;
  T(2, kVPlus) = h;
  T(1, kVMinus) = h;
  T(2, kVMinus) = -h;
  T(3, kV4) = 1;
  return T;
}

/// Sum_k e^{-i phase_k} |v_k><v_k| with v_1 = |00>, v_+- = (|01> +- |10>)/sqrt 2, v_4 = |11>.
inline Operator from_eigenphases(const std::array<double, 4> &phase) {
  const Operator T = eigenbasis();
  Amplitudes d(4);
  for (int k = 0; k < 4; ++k) d(k) = std::exp(-kI * phase[k]);
  return T * d.asDiagonal() * T.adjoint();
}

}  // namespace logical

/// U_H = -i e^{i pi Z/4} e^{i pi X/4} e^{i pi Z/4}.
inline LogicalGate hadamard_from_rotations() {
  using namespace logical;
  const Operator zq = detail::pauli_rotation(Z(), kPi / 4);
  return {-kI * zq * detail::pauli_rotation(X(), kPi / 4) * zq, "U_H"};
}

inline Operator hadamard_standard() {
  Operator h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

struct CZComposition {
  LogicalGate W;
  LogicalGate composed;  ///< W (1 (x) Z) W (1 (x) Z) (1 (x) e^{i theta Z/2}), theta = 4 delta_C
  LogicalGate direct;    ///< e^{-i theta/2 Z(x)Z} (1 (x) e^{i theta Z/2})
};

/// W = e^{-i delta_C (ZZ + YY)} e^{-i delta_C' XX} and the controlled-Z built from it.
/// delta_s and c enter only through V, which W has already removed.
inline CZComposition logical_cz_composition(double delta_C, double delta_C_prime, double /*delta_s*/ = 0.0,
                                            double /*c*/ = 0.0) {
  using namespace logical;
  const double theta = 4 * delta_C;
  const Operator W = two_body_rotation(Axis::z, delta_C) * two_body_rotation(Axis::y, delta_C) *
                     two_body_rotation(Axis::x, delta_C_prime);
  const Operator z2 = kron(I2(), Z());
  const Operator tail = kron(I2(), detail::pauli_rotation(Z(), 0.5 * theta));
  CZComposition out;
  out.W = {W, "W"};
  out.composed = {W * z2 * W * z2 * tail, "U_cz composed"};
  out.direct = {controlled_z(theta), "U_cz direct"};
  return out;
}

struct USTDecomposition {
  LogicalGate V;
  double delta_C = 0.0, delta_C_prime = 0.0, delta_s = 0.0, c = 0.0;
  LogicalGate U_st;           ///< Sum_k e^{-i beta_k} |v_k><v_k|
  LogicalGate reconstructed;  ///< V e^{-i delta_C (XX + YY)} e^{-i delta_C' ZZ}
};

inline USTDecomposition u_st_from_phases(const std::array<double, 4> &beta) {
  using namespace logical;
  USTDecomposition r;
  r.c = (beta[kV1] + beta[kVPlus] + beta[kVMinus] + beta[kV4]) / 4;
  r.delta_s = (beta[kV1] - beta[kV4]) / 4;
  r.delta_C = (beta[kVPlus] - beta[kVMinus]) / 4;
  r.delta_C_prime = (beta[kV1] - beta[kVPlus] - beta[kVMinus] + beta[kV4]) / 4;
  const Operator zsum = kron(Z(), I2()) + kron(I2(), Z());
  Amplitudes vd(4);
  for (int i = 0; i < 4; ++i) vd(i) = std::exp(-kI * (r.c + r.delta_s * zsum(i, i).real()));
  r.V = {vd.asDiagonal(), "V"};
  r.U_st = {from_eigenphases(beta), "U_st"};
  // XX and YY commute, so the flip factor splits into two rotations.
  r.reconstructed = {r.V.matrix * two_body_rotation(Axis::x, r.delta_C) * two_body_rotation(Axis::y, r.delta_C) *
                         two_body_rotation(Axis::z, r.delta_C_prime),
                     "V exp(-i dC (XX+YY)) exp(-i dC' ZZ)"};
  return r;
}

/// beta_k recovered from (c, delta_s, delta_C, delta_C').
inline std::array<double, 4> phases_from_decomposition(double c, double delta_s, double delta_C,
                                                       double delta_C_prime) {
  std::array<double, 4> b{};
  b[kV1] = c + 2 * delta_s + delta_C_prime;
  b[kV4] = c - 2 * delta_s + delta_C_prime;
  b[kVPlus] = c + 2 * delta_C - delta_C_prime;
  b[kVMinus] = c - 2 * delta_C - delta_C_prime;
  return b;
}

inline USTDecomposition u_st_decomposition(const ModelParams &p, const CZPulse &pulse) {
  return u_st_from_phases(cz_phase_integrals(p, pulse).beta);
}

// ---------------------------------------------------------------------------
// End-to-end controlled-Z.

enum class SpinFlipMode { idealized, physical };

/// Hadamard whose X factor is either exact or the computational block of the
/// full rotating-frame evolution at A = A0/2, theta_X = pi/4 (E_0 phase removed).
inline Operator logical_hadamard(const ModelParams &p, SpinFlipMode mode) {
  if (mode == SpinFlipMode::idealized) return hadamard_from_rotations().matrix;
  const double A = 0.5 * p.A0;
  const XDesign d = design_x_rotation(p, kPi / 4, A);
  const Operator U = rotating_propagator_u(rot_frame_eigs(p, A, d.pulse.omega_ac), d.pulse.tX, p.hbar);
  const cplx undo = std::exp(kI * (d.pulse.tX * single_site_eigs(p, A).energies[0] / p.hbar));
  const Operator xflip = undo * U.topLeftCorner(2, 2);
  const Operator zq = detail::pauli_rotation(logical::Z(), kPi / 4);
  return -kI * zq * xflip * zq;
}

inline double wrap_phase(double x) {
  x = std::remainder(x, 2 * kPi);
  return x;
}

struct CZCheckReport {
  std::array<double, 4> numeric_phase{};   ///< -arg <v_k|U_C|v_k>
  std::array<double, 4> phase_error{};     ///< wrapped numeric - (alpha_k + beta_k)
  double max_phase_error = 0.0;
  double leakage = 0.0;                    ///< max population leaving the computational space
  std::array<double, 3> alpha_residuals{};  ///< wrapped a+ - a1 - pi, a- - a1 - pi, a4 - a1
  double distance_to_cz = 0.0;             ///< assembled logical gate vs U_cz(theta), up to phase
  double theta_cz = 0.0;
  bool converged_design = false;
  bool near_crossing = false;
  double max_unitarity_defect = 0.0;
  Operator logical_U_C;                    ///< <v_k|U_C|v_l> mapped to the logical product basis
};

/// Computational eigenvectors at J = 0, A = A0: |u0 u0>, (|u0 u1> +- |u1 u0>)/sqrt 2, |u1 u1>.
inline std::array<Amplitudes, 4> computational_two_site_states(const ModelParams &p) {
  const auto e = single_site_eigs(p, p.A0);
  const Amplitudes &u0 = e.vectors[0], &u1 = e.vectors[1];
  const double h = 1.0 / std::sqrt(2.0);
  std::array<Amplitudes, 4> v;
  v[kV1] = kron(u0, u0);
  v[kVPlus] = h * (kron(u0, u1) + kron(u1, u0));
  v[kVMinus] = h * (kron(u0, u1) - kron(u1, u0));
  v[kV4] = kron(u1, u1);
  return v;
}

/// Propagates the CZ pulse, compares the diagonal phases with alpha + beta and
/// assembles W (U_H(x)U_H) V^dagger U_ad^dagger U_C (U_H(x)U_H) into the logical gate.
inline CZCheckReport end_to_end_cz_check(const ModelParams &p, const CZDesign &design,
                                         SpinFlipMode mode = SpinFlipMode::idealized,
                                         const EvolveOptions &opt = {}) {
  CZCheckReport r;
  r.theta_cz = design.theta_cz;
  r.converged_design = design.converged;
  const CZPhases ph = cz_phase_integrals(p, design.pulse);
  r.near_crossing = ph.near_crossing;

  const PulseSchedule s = cz_schedule(p, design.pulse);
  const auto v = computational_two_site_states(p);
  const PropagationResult pr = evolve(p, s, StateVector(v[kV1]), 0.0, s.duration, opt);
  r.max_unitarity_defect = pr.max_unitarity_defect;

  Operator M(4, 4);
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) M(k, l) = v[k].dot(pr.propagator * v[l]);
  for (int l = 0; l < 4; ++l) r.leakage = std::max(r.leakage, 1.0 - M.col(l).squaredNorm());
  for (int k = 0; k < 4; ++k) {
    r.numeric_phase[k] = -std::arg(M(k, k));
    r.phase_error[k] = wrap_phase(r.numeric_phase[k] - (ph.alpha[k] + ph.beta[k]));
    r.max_phase_error = std::max(r.max_phase_error, std::abs(r.phase_error[k]));
  }
  r.alpha_residuals = {wrap_phase(ph.alpha[kVPlus] - ph.alpha[kV1] - kPi),
                       wrap_phase(ph.alpha[kVMinus] - ph.alpha[kV1] - kPi),
                       wrap_phase(ph.alpha[kV4] - ph.alpha[kV1])};

  const Operator T = logical::eigenbasis();
  r.logical_U_C = T * M * T.adjoint();
  const Operator U_ad = logical::from_eigenphases(ph.alpha);
  const USTDecomposition st = u_st_from_phases(ph.beta);
  const Operator H1 = logical_hadamard(p, mode);
  const Operator HH = kron(H1, H1);
  const Operator W = HH * st.V.matrix.adjoint() * U_ad.adjoint() * r.logical_U_C * HH;
  const Operator z2 = kron(logical::I2(), logical::Z());
  const Operator tail = kron(logical::I2(), detail::pauli_rotation(logical::Z(), 0.5 * design.theta_cz));
  r.distance_to_cz = distance_up_to_phase(W * z2 * W * z2 * tail, logical::controlled_z(design.theta_cz));
  return r;
}

}  // namespace kane

#endif  // KANE_ANALYSIS_HPP_
