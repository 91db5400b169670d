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

#ifndef KANE_JACOBI_HPP_
#define KANE_JACOBI_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "kane/linalg.hpp"

namespace kane {

struct JacobiResult {
  Eigen::VectorXd values;  ///< ascending
  Operator vectors;        ///< columns, first nonzero entry real positive
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Deliberately self-contained (no LAPACK / Eigen solvers) so it can serve as an
/// independent reference for the closed-form eigensystems and for the Eigen-based
/// production exponential.
inline JacobiResult jacobi_eigensystem(const Operator &h, int max_sweeps = 100) {
  const Eigen::Index n = h.rows();
  if (h.cols() != n) throw ValidationError("jacobi: matrix must be square");
  if (hermiticity_defect(h) > 1e-12 * std::max(1.0, max_abs(h))) {
    throw ValidationError("jacobi: matrix is not Hermitian");
  }
  Operator a = 0.5 * (h + h.adjoint());
  Operator v = Operator::Identity(n, n);
  const double scale = std::max(a.norm(), 1e-300);

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-18 * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g <= 1e-300) continue;
        const cplx e = a(p, q) / g;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // A <- A R with R_pp = R_qq = c, R_pq = s e, R_qp = -s conj(e).
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(e) * akq;
          a(k, q) = s * e * akp + c * akq;
        }
        // A <- R^dagger A
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * std::conj(e) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * std::conj(e) * vkq;
          v(k, q) = s * e * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == max_sweeps) throw NumericalError("jacobi: no convergence");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });
  JacobiResult r;
  r.values.resize(n);
  r.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    r.values(k) = a(order[k], order[k]).real();
    r.vectors.col(k) = normalize_phase(v.col(order[k]));
  }
  r.sweeps = sweep;
  return r;
}

inline Eigen::VectorXd jacobi_eigenvalues(const Operator &h) { return jacobi_eigensystem(h).values; }

}  // namespace kane

#endif  // KANE_JACOBI_HPP_
