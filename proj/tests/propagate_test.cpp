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

#include <random>

#include "gtest/gtest.h"
#include "kane/design.hpp"
#include "kane/propagate.hpp"

namespace kane {
namespace {

Operator random_hermitian(std::mt19937 &rng, int n, double scale) {
  std::normal_distribution<double> g;
  Operator m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scale * cplx(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

StateVector product(const Amplitudes &a, const Amplitudes &b) { return StateVector(kron(a, b)); }

TEST(ExponentialTest, IdentityDiagonalAndGroupProperty) {
  ModelParams p;
  std::mt19937 rng(5);
  const Operator H = random_hermitian(rng, 16, 0.1);
  EXPECT_LT(max_abs(matrix_exponential_hermitian(H, 0.0, p.hbar) - Operator::Identity(16, 16)), 1e-14);

  Operator D = Operator::Zero(4, 4);
  D.diagonal() << 0.1, -0.2, 0.3, 0.05;
  const Operator UD = matrix_exponential_hermitian(D, 7.0, p.hbar);
  for (int k = 0; k < 4; ++k) EXPECT_LT(std::abs(UD(k, k) - std::exp(-kI * (D(k, k) * 7.0 / p.hbar))), 1e-14);
  EXPECT_LT(max_abs(UD - Operator(UD.diagonal().asDiagonal())), 1e-15);

  for (int trial = 0; trial < 10; ++trial) {
    const Operator h = random_hermitian(rng, 16, 0.1);
    const double t1 = 3.3, t2 = 11.9;
    const Operator U1 = matrix_exponential_hermitian(h, t1, p.hbar), U2 = matrix_exponential_hermitian(h, t2, p.hbar);
    EXPECT_LT(max_abs(U1 * U2 - matrix_exponential_hermitian(h, t1 + t2, p.hbar)), 1e-11);
    EXPECT_LT(unitarity_defect(U1), 1e-12);
  }
  Operator bad = H;
  bad(0, 1) += 1.0;
  EXPECT_THROW(matrix_exponential_hermitian(bad, 1.0, p.hbar), ValidationError);
}

TEST(FrameTest, RoundTripAndIdentityAtZero) {
  for (double t : {0.0, 1.0, 1e4}) {
    const Operator D = rotating_frame_operator(16, t, 0.37);
    EXPECT_LT(max_abs(D.adjoint() * D - Operator::Identity(16, 16)), 1e-14);
  }
  EXPECT_EQ(max_abs(rotating_frame_operator(4, 0.0, 0.37) - Operator::Identity(4, 4)), 0.0);
  Amplitudes v = Amplitudes::Random(4);
  const StateVector psi(v / v.norm());
  const StateVector back = rotating_frame_transform(psi, 0.0, 0.37);
  EXPECT_EQ((back.amplitudes - psi.amplitudes).norm(), 0.0);
}

TEST(FrameTest, RotatingHamiltonianIsTimeIndependent) {
  ModelParams p;
  const double A = 0.5 * p.A0, w = transition_energy_10(p, A) / p.hbar;
  const Operator H0 = single_site_hamiltonian(p, A);
  const Operator expected = rotating_frame_hamiltonian(p, A, w);
  // H_rot = D H D^dagger + i hbar (dD/dt) D^dagger, with D = exp(-i w t S_z).
  for (double t : {0.0, 13.7, 1234.5, 98765.4}) {
    const Operator D = rotating_frame_operator(4, t, w);
    const Operator Hrot = D * (H0 + ac_drive_single_site(p, t, w)) * D.adjoint() + p.hbar * w * single_site_sz();
    EXPECT_LT(max_abs(Hrot - expected), 1e-12);
  }
  const Operator U = single_site_eigs(p, A).basis_matrix();
  EXPECT_LT(max_abs(U.adjoint() * expected * U - to_operator(rotating_hamiltonian_u(p, A, w).full())), 1e-12);
}

TEST(FullHamiltonianTest, FactorizationDriveAndSpotValue) {
  ModelParams p;
  const ZPulse z{0.598, 50000.0};
  const auto s = z_schedule(p, z, 1);
  const double t = 0.3 * z.tZ;
  const Operator H = full_hamiltonian(p, s, t);
  // Hand assembly from Kronecker products.
  const double A1 = p.A0 * (1 - z.a + 8 * z.a * (0.3 - 0.5) * (0.3 - 0.5));
  auto site_h = [&](double A) {
    Operator h = Operator::Zero(4, 4);
    const Operator sx = pauli(Axis::x), sy = pauli(Axis::y), sz = pauli(Axis::z), i2 = Operator::Identity(2, 2);
    h += -p.gn_mun * p.B * kron(i2, sz) + p.muB * p.B * kron(sz, i2);
    h += A * (kron(sx, sx) + kron(sy, sy) + kron(sz, sz));
    return h;
  };
  const Operator i4 = Operator::Identity(4, 4);
  EXPECT_LT(max_abs(H - (kron(site_h(A1), i4) + kron(i4, site_h(p.A0)))), 1e-15);
  EXPECT_LT(hermiticity_defect(H), 1e-16);

  const auto x = x_schedule(p, XPulse{0.5 * p.A0, 1000.0, 3000.0, 0.01, 2.5e-3}, 1);
  const double td = 1700.0;
  const Operator Hx = full_hamiltonian(p, x, td);
  const Operator static_part = two_qubit_static_hamiltonian(p, 0.5 * p.A0, p.A0, 0.0);
  EXPECT_LT(max_abs(Hx - static_part - ac_drive_hamiltonian(p, td, 0.01, 1) - ac_drive_hamiltonian(p, td, 0.01, 2)),
            1e-16);
  EXPECT_THROW(full_hamiltonian(p, x, 1e6), ValidationError);
}

TEST(EvolveTest, ConstantScheduleMatchesExponential) {
  ModelParams p;
  const auto s = idle_schedule(p, 12345.0, p.A0, 0.3 * p.A0);
  const auto e = single_site_eigs(p, p.A0);
  const StateVector psi = product((e.vectors[0] + e.vectors[1]) / std::sqrt(2.0), e.vectors[0]);
  const auto r = evolve(p, s, psi, 0.0, s.duration);
  const Operator U = matrix_exponential_hermitian(two_qubit_static_hamiltonian(p, p.A0, 0.3 * p.A0, 0.0), s.duration,
                                                  p.hbar);
  EXPECT_LT((r.final_state.amplitudes - U * psi.amplitudes).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(r.final_state.norm(), 1.0, 1e-12);
  EXPECT_LT(r.max_unitarity_defect, 1e-10);
  EXPECT_EQ(r.step_count, 1);
}

TEST(EvolveTest, RejectsBadInput) {
  ModelParams p;
  const auto s = idle_schedule(p, 100.0, p.A0, p.A0);
  const StateVector psi(basis::pair(0, 0));
  EXPECT_THROW(evolve(p, s, StateVector(Amplitudes(basis::single(0))), 0, 10), ValidationError);
  EXPECT_THROW(evolve(p, s, StateVector(Amplitudes(2.0 * basis::pair(0, 0))), 0, 10), ValidationError);
  EXPECT_THROW(evolve(p, s, psi, 0, 200.0), ValidationError);
  EvolveOptions o;
  o.dt = -1.0;
  EXPECT_THROW(evolve(p, s, psi, 0, 10, o), ValidationError);
}

TEST(EvolveTest, CertificationFailureIsReported) {
  ModelParams p;
  const auto s = z_schedule(p, ZPulse{0.6, 5000.0}, 1);
  const auto e = single_site_eigs(p, p.A0);
  EvolveOptions o;
  o.dt = 2000.0;
  o.dt_min = 600.0;
  o.certify_tol = 1e-300;
  EXPECT_THROW(evolve(p, s, product(e.vectors[0], e.vectors[0]), 0, s.duration, o), NumericalError);
}

TEST(EvolveTest, ZPulseAccumulatesDesignedPhase) {
  ModelParams p;
  for (double theta : {kPi / 4, kPi / 2}) {
    const ZDesign d = solve_z_rotation(p, theta);
    const auto s = z_schedule(p, d.pulse, 1);
    const auto e = single_site_eigs(p, p.A0);
    const StateVector psi = product((e.vectors[0] + e.vectors[1]) / std::sqrt(2.0), e.vectors[0]);
    const auto r = evolve(p, s, psi, 0.0, s.duration);
    const cplx c0 = kron(e.vectors[0], e.vectors[0]).dot(r.final_state.amplitudes);
    const cplx c1 = kron(e.vectors[1], e.vectors[0]).dot(r.final_state.amplitudes);
    const double rel = std::arg(c1 / c0);
    EXPECT_LT(std::abs(std::remainder(rel - theta, 2 * kPi)), 1e-3) << "theta=" << theta;
    EXPECT_NEAR(std::norm(c0) + std::norm(c1), 1.0, 1e-4);
    EXPECT_LT(r.max_unitarity_defect, 1e-10);
    EXPECT_LT(r.certification_delta, 1e-8);
    EXPECT_NEAR(r.final_state.norm(), 1.0, 1e-10);
  }
}

TEST(EvolveTest, GroundStateFollowsZPulse) {
  ModelParams p;
  const ZDesign d = solve_z_rotation(p, kPi / 4);
  const auto s = z_schedule(p, d.pulse, 1);
  const auto e0 = single_site_eigs(p, p.A0);
  double worst = 1.0;
  long calls = 0;
  EvolveOptions o;
  o.observer = [&](double t, const Amplitudes &a) {
    const auto e = single_site_eigs(p, s.A(p, 1, t));
    worst = std::min(worst, std::norm(kron(e.vectors[0], e0.vectors[0]).dot(a)));
    ++calls;
  };
  evolve(p, s, product(e0.vectors[0], e0.vectors[0]), 0.0, s.duration, o);
  EXPECT_GT(calls, 1000);
  EXPECT_GT(worst, 1 - 1e-4);
}

TEST(EvolveTest, TrajectoryEndsAtFinalState) {
  ModelParams p;
  const auto s = x_schedule(p, design_x_rotation(p, kPi / 4, 0.5 * p.A0, 2000.0).pulse, 1);
  const auto e = single_site_eigs(p, p.A0);
  Amplitudes last;
  double last_t = -1;
  EvolveOptions o;
  o.observer = [&](double t, const Amplitudes &a) {
    EXPECT_GE(t, last_t);
    last_t = t;
    last = a;
  };
  const auto r = evolve(p, s, product(e.vectors[0], e.vectors[0]), 0.0, s.duration, o);
  EXPECT_EQ(last_t, s.duration);
  EXPECT_LT((last - r.final_state.amplitudes).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(r.max_unitarity_defect, 1e-10);
}

TEST(EvolveTest, DriveFrameMatchesFineLabFrameSteps) {
  // A short resonant drive: the co-rotating exact step agrees with brute-force
  // lab-frame stepping at a small time step.
  ModelParams p;
  p.Bac = 0.05;
  const double A = 0.5 * p.A0;
  XPulse x{A, 200.0, 300.0, transition_energy_10(p, A) / p.hbar, p.Bac};
  const auto s = x_schedule(p, x, 1);
  const auto e = single_site_eigs(p, p.A0);
  const StateVector psi = product(e.vectors[0], e.vectors[1]);
  const auto r = evolve(p, s, psi, 0.0, s.duration);
  Amplitudes v = psi.amplitudes;
  const int n = 20000;
  const double h = s.duration / n;
  for (int k = 0; k < n; ++k) {
    const double tm = (k + 0.5) * h;
    v = matrix_exponential_hermitian(full_hamiltonian(p, s, tm), h, p.hbar) * v;
  }
  EXPECT_LT((v - r.final_state.amplitudes).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(AdiabaticityTest, BoundsAndLimits) {
  ModelParams p;
  const auto tiny = adiabaticity_criterion(p, ZPulse{1e-12, 1000.0}, 1000);
  EXPECT_LT(tiny.grid_max, 1e-14);
  EXPECT_LT(tiny.closed_form_bound, 1e-14);
  const auto r = adiabaticity_criterion(p, ZPulse{0.6, 50000.0});
  EXPECT_NEAR(r.closed_form_bound, 6e-4, 1.5e-4);
  EXPECT_LT(r.closed_form_bound, 2 * p.A0 / p.eps());
  // The maximum sits at tau = 1/4 and is about four times the quoted bound.
  EXPECT_NEAR(r.grid_max, r.exact_max, 1e-9 * r.exact_max);
  EXPECT_NEAR(r.exact_max / r.closed_form_bound, 4.0, 0.01);
  EXPECT_LT(r.grid_max, 1.0);
}

}  // namespace
}  // namespace kane
