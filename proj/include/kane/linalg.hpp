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

#ifndef KANE_LINALG_HPP_
#define KANE_LINALG_HPP_

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace kane {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Amplitudes = Eigen::VectorXcd;

constexpr double kPi = 3.14159265358979323846;
constexpr cplx kI{0.0, 1.0};

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid input (out of domain, malformed config, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// Iterative or numerical procedure that did not produce a certified result.
struct NumericalError : Error {
  using Error::Error;
};

enum class BasisTag { single_site, two_site };

/// State over the 4-dim single-site or 16-dim two-site spin space.
struct StateVector {
  Amplitudes amplitudes;
  BasisTag basis = BasisTag::single_site;

  StateVector() = default;
  explicit StateVector(Amplitudes amps) : amplitudes(std::move(amps)) {
    if (amplitudes.size() == 4) {
      basis = BasisTag::single_site;
    } else if (amplitudes.size() == 16) {
      basis = BasisTag::two_site;
    } else {
      throw ValidationError("state dimension must be 4 or 16, got " +
                            std::to_string(amplitudes.size()));
    }
  }

  Eigen::Index dim() const { return amplitudes.size(); }
  double norm() const { return amplitudes.norm(); }
};

inline Operator kron(const Operator &a, const Operator &b) {
  Operator r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return r;
}

inline Amplitudes kron(const Amplitudes &a, const Amplitudes &b) {
  Amplitudes r(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    r.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return r;
}

inline Operator commutator(const Operator &a, const Operator &b) { return a * b - b * a; }

/// Largest entry modulus, the ||.||_max norm.
inline double max_abs(const Operator &m) { return m.cwiseAbs().maxCoeff(); }

inline double hermiticity_defect(const Operator &h) { return max_abs(h - h.adjoint()); }

inline double unitarity_defect(const Operator &u) {
  return max_abs(u.adjoint() * u - Operator::Identity(u.rows(), u.cols()));
}

/// Max-norm distance between two operators after removing the best global phase.
inline double distance_up_to_phase(const Operator &a, const Operator &b) {
  cplx overlap = (b.adjoint() * a).trace();
  cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1.0);
  return max_abs(a - phase * b);
}

/// |<a|b>|, insensitive to the phase convention of either vector.
inline double overlap_modulus(const Amplitudes &a, const Amplitudes &b) {
  return std::abs(a.dot(b));
}

/// Rescales v so its first entry with modulus above tol is real and positive.
inline Amplitudes normalize_phase(Amplitudes v, double tol = 1e-12) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > tol) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      break;
    }
  }
  return v;
}

}  // namespace kane

#endif  // KANE_LINALG_HPP_
