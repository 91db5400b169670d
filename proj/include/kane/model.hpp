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

#ifndef KANE_MODEL_HPP_
#define KANE_MODEL_HPP_

#include <cmath>

#include "kane/linalg.hpp"
#include "kane/params.hpp"

namespace kane {

// Basis convention.
//   Sites ordered 1 (x) 2; within a site, electron (x) nucleus; within a spin,
//   up / |0> first.  Single-site index = 2 * electron + nucleus, so
//   0 = |up,0>, 1 = |up,1>, 2 = |down,0>, 3 = |down,1>.  Two-site index =
//   4 * (site-1 index) + (site-2 index).  sigma_z|0> = +|0>.
namespace basis {
constexpr int kUp0 = 0;
constexpr int kUp1 = 1;
constexpr int kDown0 = 2;
constexpr int kDown1 = 3;

inline Amplitudes single(int index) {
  Amplitudes v = Amplitudes::Zero(4);
  v(index) = 1.0;
  return v;
}

inline Amplitudes pair(int site1, int site2) { return kron(single(site1), single(site2)); }
}  // namespace basis

enum class Axis { x, y, z };

inline Operator pauli(Axis axis) {
  Operator m = Operator::Zero(2, 2);
  switch (axis) {
    case Axis::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Axis::y:
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case Axis::z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

inline Operator identity(Eigen::Index n) { return Operator::Identity(n, n); }

/// sigma acting on the electron of a single site (4x4).
inline Operator electron_op(Axis axis) { return kron(pauli(axis), identity(2)); }
/// sigma acting on the nucleus of a single site (4x4).
inline Operator nuclear_op(Axis axis) { return kron(identity(2), pauli(axis)); }

/// Embeds a single-site operator into the two-site space.
inline Operator on_site(const Operator &op, int site) {
  if (site == 1) return kron(op, identity(4));
  if (site == 2) return kron(identity(4), op);
  throw ValidationError("site must be 1 or 2");
}

/// S_z = (sigma_z^e + sigma_z^n) / 2 of one site.
inline Operator single_site_sz() {
  return 0.5 * (electron_op(Axis::z) + nuclear_op(Axis::z));
}

inline Operator total_sz() { return on_site(single_site_sz(), 1) + on_site(single_site_sz(), 2); }

/// Site exchange P|a b> = |b a>.
inline Operator parity() {
  Operator p = Operator::Zero(16, 16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) p(4 * b + a, 4 * a + b) = 1.0;
  return p;
}

/// sigma^e . sigma^n on one site.
inline Operator hyperfine_coupling() {
  Operator h = Operator::Zero(4, 4);
  for (Axis ax : {Axis::x, Axis::y, Axis::z}) h += electron_op(ax) * nuclear_op(ax);
  return h;
}

/// sigma^{1e} . sigma^{2e}.
inline Operator exchange_coupling() {
  Operator h = Operator::Zero(16, 16);
  for (Axis ax : {Axis::x, Axis::y, Axis::z})
    h += on_site(electron_op(ax), 1) * on_site(electron_op(ax), 2);
  return h;
}

/// H^i = -gn_mun B sigma_z^n + muB B sigma_z^e + A sigma^e . sigma^n.
inline Operator single_site_hamiltonian(const ModelParams &p, double A) {
  if (A < 0) throw ValidationError("hyperfine energy must be non-negative");
  return -p.nuclear_zeeman() * nuclear_op(Axis::z) + p.electron_zeeman() * electron_op(Axis::z) +
         A * hyperfine_coupling();
}

/// H_C = H^1(A1) + H^2(A2) + J sigma^{1e} . sigma^{2e}.
inline Operator two_qubit_static_hamiltonian(const ModelParams &p, double A1, double A2, double J) {
  if (J < 0) throw ValidationError("exchange energy must be non-negative");
  return on_site(single_site_hamiltonian(p, A1), 1) + on_site(single_site_hamiltonian(p, A2), 2) +
         J * exchange_coupling();
}

/// Bac m(t) . (-gn_mun sigma^n + muB sigma^e) with m = (cos wt, -sin wt, 0), one site.
inline Operator ac_drive_single_site(const ModelParams &p, double t, double omega_ac) {
  const double c = std::cos(omega_ac * t), s = std::sin(omega_ac * t);
  Operator ox = p.muB * electron_op(Axis::x) - p.gn_mun * nuclear_op(Axis::x);
  Operator oy = p.muB * electron_op(Axis::y) - p.gn_mun * nuclear_op(Axis::y);
  return p.Bac * (c * ox - s * oy);
}

inline Operator ac_drive_hamiltonian(const ModelParams &p, double t, double omega_ac, int site) {
  return on_site(ac_drive_single_site(p, t, omega_ac), site);
}

/// Drive term in the frame co-rotating at omega_ac: muB Bac sigma_x^e - gn_mun Bac sigma_x^n.
inline Operator rotating_drive_single_site(const ModelParams &p) {
  return p.Bac * (p.muB * electron_op(Axis::x) - p.gn_mun * nuclear_op(Axis::x));
}

}  // namespace kane

#endif  // KANE_MODEL_HPP_
