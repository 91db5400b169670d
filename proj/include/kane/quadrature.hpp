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

#ifndef KANE_QUADRATURE_HPP_
#define KANE_QUADRATURE_HPP_

#include <algorithm>
#include <cmath>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <vector>

#include "kane/linalg.hpp"

namespace kane {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  ///< summed Kronrod error estimates
};

/// Adaptive Gauss-Kronrod (G15/K31) integration of f over [points.front(), points.back()].
///
/// Panels are pinned at every listed point so that kinks of piecewise-defined
/// integrands never fall inside a panel. A positive abs_tol relaxes the
/// relative target on panels whose integral is tiny, where roundoff in f
/// would otherwise drive the recursion to full depth.
template <class F>
QuadratureResult integrate(F &&f, std::vector<double> points, double rel_tol = 1e-14,
                           unsigned max_depth = 12, double abs_tol = 0.0) {
  if (points.size() < 2) throw ValidationError("integrate: need at least two points");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  QuadratureResult out;
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    double err = 0.0, tol = rel_tol;
    if (abs_tol > 0) {
      const double rough = std::abs(GK::integrate(f, points[i], points[i + 1], 0, 0.0));
      if (rough > 0) tol = std::max(rel_tol, abs_tol / rough);
    }
    out.value += GK::integrate(f, points[i], points[i + 1], max_depth, tol, &err);
    out.error += err;
  }
  return out;
}

}  // namespace kane

#endif  // KANE_QUADRATURE_HPP_
