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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

#include "gtest/gtest.h"
#include "kane/jacobi.hpp"
#include "kane/model.hpp"

namespace kane {
namespace {

std::vector<double> sorted_values(const Operator &h) {
  const Eigen::VectorXd v = jacobi_eigenvalues(h);
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

Operator random_hermitian(std::mt19937 &rng, int n) {
  std::normal_distribution<double> g;
  Operator m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

TEST(ParamsTest, DefaultsAndEps) {
  ModelParams p;
  EXPECT_DOUBLE_EQ(p.electron_zeeman(), 0.116);
  EXPECT_DOUBLE_EQ(p.nuclear_zeeman(), 0.071e-3);
  EXPECT_DOUBLE_EQ(p.eps(), 0.116 + 0.071e-3);
  EXPECT_NO_THROW(p.validate());
  p.B = -1;
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST(ParamsTest, JsonRoundTripAndUnknownKeys) {
  ModelParams p;
  p.A0 = 0.2e-3;
  const ModelParams q = params_from_json(to_json(p));
  EXPECT_EQ(q.A0, p.A0);
  EXPECT_EQ(params_hash(p), params_hash(q));
  EXPECT_NE(params_hash(p), params_hash(ModelParams{}));
  EXPECT_EQ(params_hash(p).size(), 16u);

  auto j = to_json(p);
  j["bogus"] = 1;
  EXPECT_THROW(params_from_json(j), ValidationError);
}

TEST(ParamsTest, ShippedDefaultsFileMatchesBuiltIns) {
  const ModelParams p = load_params(KANE_SOURCE_DIR "/data/default_params.json");
  EXPECT_EQ(params_hash(p), params_hash(ModelParams{}));
}

TEST(LinalgTest, StateVectorDimension) {
  EXPECT_NO_THROW(StateVector(Amplitudes::Zero(4)));
  EXPECT_NO_THROW(StateVector(Amplitudes::Zero(16)));
  EXPECT_THROW(StateVector(Amplitudes::Zero(5)), ValidationError);
}

TEST(LinalgTest, NormalizePhase) {
  Amplitudes v(3);
  v << 0.0, cplx(0, 2), cplx(1, 1);
  const Amplitudes w = normalize_phase(v);
  EXPECT_DOUBLE_EQ(w(1).real(), 2.0);
  EXPECT_EQ(w(1).imag(), 0.0);
  EXPECT_NEAR(overlap_modulus(v, w), v.squaredNorm(), 1e-14);
}

TEST(JacobiTest, MatchesEigenOnRandomHermitian) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator h = random_hermitian(rng, 16);
    const auto r = jacobi_eigensystem(h);
    Eigen::SelfAdjointEigenSolver<Operator> es(h);
    const auto jv = sorted_values(h);
    for (int k = 0; k < 16; ++k) EXPECT_NEAR(jv[k], es.eigenvalues()(k), 1e-12);
    EXPECT_LT(max_abs(h * r.vectors - r.vectors * r.values.cast<cplx>().asDiagonal()), 1e-12);
  }
}

TEST(ModelTest, SingleSiteAtZeroHyperfineIsDiagonal) {
  ModelParams p;
  const Operator h = single_site_hamiltonian(p, 0.0);
  EXPECT_LT(max_abs(h - Operator(h.diagonal().asDiagonal())), 1e-16);
  using namespace basis;
  const double ez = p.electron_zeeman(), nz = p.nuclear_zeeman();
  EXPECT_DOUBLE_EQ(h(kUp0, kUp0).real(), ez - nz);
  EXPECT_DOUBLE_EQ(h(kUp1, kUp1).real(), ez + nz);
  EXPECT_DOUBLE_EQ(h(kDown0, kDown0).real(), -ez - nz);
  EXPECT_DOUBLE_EQ(h(kDown1, kDown1).real(), -ez + nz);
}

TEST(ModelTest, NegativeHyperfineRejected) {
  EXPECT_THROW(single_site_hamiltonian(ModelParams{}, -1e-6), ValidationError);
  EXPECT_THROW(two_qubit_static_hamiltonian(ModelParams{}, 1e-4, 1e-4, -1.0), ValidationError);
}

TEST(ModelTest, HamiltoniansAreHermitian) {
  ModelParams p;
  for (double A : {0.0, 0.5 * p.A0, p.A0}) {
    EXPECT_LT(hermiticity_defect(single_site_hamiltonian(p, A)), 1e-14);
    EXPECT_LT(hermiticity_defect(two_qubit_static_hamiltonian(p, A, 0.3 * p.A0, 0.1 * p.eps())), 1e-14);
  }
  for (double t : {0.0, 1.7, 123.4}) {
    EXPECT_LT(hermiticity_defect(ac_drive_hamiltonian(p, t, 0.01, 1)), 1e-14);
    EXPECT_LT(std::abs(ac_drive_hamiltonian(p, t, 0.01, 2).trace()), 1e-16);
  }
}

TEST(ModelTest, CommutationRelations) {
  ModelParams p;
  const double A = p.A0, J = 0.1 * p.eps();
  EXPECT_LT(max_abs(commutator(single_site_hamiltonian(p, A), single_site_sz())), 1e-16);
  const Operator hc = two_qubit_static_hamiltonian(p, A, A, J);
  EXPECT_LT(max_abs(commutator(hc, total_sz())), 1e-15);
  EXPECT_EQ(max_abs(commutator(hc, parity())), 0.0);
  const Operator asym = two_qubit_static_hamiltonian(p, A, 0.5 * A, J);
  EXPECT_LT(max_abs(commutator(asym, total_sz())), 1e-15);
  EXPECT_GT(max_abs(commutator(asym, parity())), 1e-6);
}

TEST(ModelTest, ParitySquaresToIdentity) {
  EXPECT_EQ(max_abs(parity() * parity() - identity(16)), 0.0);
}

TEST(ModelTest, LowestWeightStateEigenvalue) {
  ModelParams p;
  const double A = p.A0, J = 0.1 * p.eps();
  const Amplitudes v = basis::pair(basis::kDown1, basis::kDown1);
  const Amplitudes hv = two_qubit_static_hamiltonian(p, A, A, J) * v;
  const double expected = J - 2 * p.eps() + 4 * p.gn_mun * p.B + 2 * A;
  EXPECT_LT((hv - expected * v).norm(), 1e-15);
}

TEST(ModelTest, StaticSpectrumMatchesKroneckerSum) {
  ModelParams p;
  // J = 0: the two-site spectrum is the sum of single-site spectra.
  const auto e1 = sorted_values(single_site_hamiltonian(p, p.A0));
  const auto e2 = sorted_values(single_site_hamiltonian(p, 0.4 * p.A0));
  std::vector<double> sums;
  for (double a : e1)
    for (double b : e2) sums.push_back(a + b);
  std::sort(sums.begin(), sums.end());
  const auto e = sorted_values(two_qubit_static_hamiltonian(p, p.A0, 0.4 * p.A0, 0.0));
  for (int k = 0; k < 16; ++k) EXPECT_NEAR(e[k], sums[k], 1e-13);
}

TEST(ModelTest, DriveAtTimeZeroAndHalfPeriod) {
  ModelParams p;
  const double w = 0.02;
  const Operator h0 = ac_drive_single_site(p, 0.0, w);
  const Operator expected = p.Bac * (-p.gn_mun * nuclear_op(Axis::x) + p.muB * electron_op(Axis::x));
  EXPECT_LT(max_abs(h0 - expected), 1e-18);
  EXPECT_LT(max_abs(ac_drive_single_site(p, kPi / w, w) + h0), 1e-15 * max_abs(h0) + 1e-20);
  const double n0 = h0.norm();
  for (double t = 0; t < 1000; t += 37.3) EXPECT_NEAR(ac_drive_single_site(p, t, w).norm(), n0, 1e-15);
}

}  // namespace
}  // namespace kane
