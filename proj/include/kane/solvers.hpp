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

#ifndef KANE_SOLVERS_HPP_
#define KANE_SOLVERS_HPP_

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "kane/linalg.hpp"

namespace kane {

/// No root exists where one was required.
struct NoSolutionError : NumericalError {
  using NumericalError::NumericalError;
};

/// Iterative solver failure carrying the last iterate.
struct SolverError : NumericalError {
  std::string kind;  ///< "max_iterations", "singular_jacobian", "left_domain", "line_search", "trivial_root"
  std::array<double, 2> last_iterate{};
  std::array<double, 2> last_residual{};
  int iterations = 0;

  SolverError(std::string kind_, const std::string &what, std::array<double, 2> x, std::array<double, 2> f,
              int it)
      : NumericalError(what), kind(std::move(kind_)), last_iterate(x), last_residual(f), iterations(it) {}
};

/// Bisection on [lo, hi]; requires a sign change, stops when the bracket is below tol.
template <class F>
double bisection(F &&f, double lo, double hi, double tol = 1e-12, int max_iter = 200) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) throw NoSolutionError("bisection: no sign change on the bracket");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > tol) throw NumericalError("bisection: maximum iterations reached");
  return 0.5 * (lo + hi);
}

/// Brackets [x_i, x_{i+1}] of a uniform scan over [lo, hi] where f changes sign.
template <class F>
std::vector<std::array<double, 2>> sign_change_brackets(F &&f, double lo, double hi, double step) {
  std::vector<std::array<double, 2>> out;
  const int n = int(std::floor((hi - lo) / step + 1e-9));
  double xa = lo, fa = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double xb = (i == n) ? hi : lo + step * i;
    const double fb = f(xb);
    if (fa == 0 || (fa > 0) != (fb > 0)) out.push_back({xa, xb});
    xa = xb;
    fa = fb;
  }
  return out;
}

struct NewtonOptions {
  double tol = 1e-10;       ///< max-norm residual target
  int max_iter = 100;
  double fd_rel_step = 1e-7;
  int max_halvings = 40;
  double max_condition = 1e14;
};

struct NewtonResult {
  std::array<double, 2> x{};
  std::array<double, 2> residual{};
  int iterations = 0;
  double jacobian_condition = 0.0;  ///< 2-norm condition number at the last Jacobian
};

/// Damped Newton-Raphson for F: R^2 -> R^2 with a forward-difference Jacobian.
///
/// A step is halved while it leaves the domain or increases the residual norm.
inline NewtonResult newton_raphson(const std::function<std::array<double, 2>(const std::array<double, 2> &)> &F,
                                   std::array<double, 2> x,
                                   const std::function<bool(const std::array<double, 2> &)> &in_domain,
                                   const NewtonOptions &opt = {}) {
  using V2 = Eigen::Vector2d;
  auto vec = [](const std::array<double, 2> &a) { return V2(a[0], a[1]); };
  if (!in_domain(x)) throw SolverError("left_domain", "newton: seed outside domain", x, {0, 0}, 0);
  std::array<double, 2> f = F(x);
  NewtonResult res;
  for (int it = 0;; ++it) {
    res.x = x;
    res.residual = f;
    res.iterations = it;
    if (vec(f).lpNorm<Eigen::Infinity>() < opt.tol) return res;
    if (it >= opt.max_iter) throw SolverError("max_iterations", "newton: maximum iterations reached", x, f, it);

    Eigen::Matrix2d Jm;
    for (int j = 0; j < 2; ++j) {
      std::array<double, 2> xh = x;
      double h = opt.fd_rel_step * std::max(std::abs(x[j]), 1e-8);
      xh[j] += h;
      if (!in_domain(xh)) {  // near the boundary: difference backwards
        h = -h;
        xh[j] = x[j] + h;
      }
      const auto fh = F(xh);
      Jm(0, j) = (fh[0] - f[0]) / h;
      Jm(1, j) = (fh[1] - f[1]) / h;
    }
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(Jm);
    const double smax = svd.singularValues()(0), smin = svd.singularValues()(1);
    res.jacobian_condition = smin > 0 ? smax / smin : INFINITY;
    if (!(smin > 0) || res.jacobian_condition > opt.max_condition) {
      throw SolverError("singular_jacobian", "newton: singular Jacobian", x, f, it);
    }
    const V2 step = -Jm.fullPivLu().solve(vec(f));
    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k <= opt.max_halvings; ++k, lambda *= 0.5) {
      const std::array<double, 2> xn = {x[0] + lambda * step(0), x[1] + lambda * step(1)};
      if (!in_domain(xn)) continue;
      const auto fn = F(xn);
      if (vec(fn).norm() < vec(f).norm()) {
        x = xn;
        f = fn;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      const bool outside = !in_domain({x[0] + step(0), x[1] + step(1)});
      throw SolverError(outside ? "left_domain" : "line_search",
                        outside ? "newton: iterate leaves the domain" : "newton: no residual decrease along step",
                        x, f, it);
    }
  }
}

}  // namespace kane

#endif  // KANE_SOLVERS_HPP_
