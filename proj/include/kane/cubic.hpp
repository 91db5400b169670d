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

#ifndef KANE_CUBIC_HPP_
#define KANE_CUBIC_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace kane {

/// All real roots of z^3 + a2 z^2 + a1 z + a0, sorted descending.
///
/// Trigonometric form when three roots are real, hyperbolic (Cardano) form
/// otherwise; every root receives Newton polishing.
template <class T>
std::vector<T> real_cubic_roots(T a2, T a1, T a0) {
  using std::abs, std::acos, std::acosh, std::asinh, std::cbrt, std::cos, std::cosh, std::sinh,
      std::sqrt;
  const T pi = T(3.14159265358979323846264338327950288L);
  const T shift = a2 / 3;
  const T P = a1 - a2 * a2 / 3;
  const T Q = T(2) * a2 * a2 * a2 / 27 - a2 * a1 / 3 + a0;
  std::vector<T> x;
  const T disc = 4 * P * P * P + 27 * Q * Q;
  if (P < 0 && disc <= 0) {
    const T m = 2 * sqrt(-P / 3);
    const T arg = std::clamp(T(3) * Q / (2 * P) * sqrt(T(-3) / P), T(-1), T(1));
    const T phi = acos(arg) / 3;
    for (int k = 0; k < 3; ++k) x.push_back(m * cos(phi - 2 * pi * k / 3));
  } else if (P < 0) {
    const T arg = T(-3) * abs(Q) / (2 * P) * sqrt(T(-3) / P);
    x.push_back(-2 * (Q > 0 ? 1 : -1) * sqrt(-P / 3) * cosh(acosh(std::max(arg, T(1))) / 3));
  } else if (P > 0) {
    x.push_back(-2 * sqrt(P / 3) * sinh(asinh(T(3) * Q / (2 * P) * sqrt(T(3) / P)) / 3));
  } else {
    x.push_back(cbrt(-Q));
  }
  std::vector<T> roots;
  for (T xi : x) {
    T z = xi - shift;
    for (int it = 0; it < 3; ++it) {
      const T f = ((z + a2) * z + a1) * z + a0;
      const T df = (3 * z + 2 * a2) * z + a1;
      if (df == 0) break;
      const T step = f / df;
      if (!std::isfinite(step)) break;
      const T znew = z - step;
      const T fnew = ((znew + a2) * znew + a1) * znew + a0;
      if (abs(fnew) > abs(f)) break;
      z = znew;
    }
    roots.push_back(z);
  }
  std::sort(roots.begin(), roots.end(), [](T a, T b) { return a > b; });
  return roots;
}

/// Real roots of the resolvent z^3 - c1 z^2 - 4 c3 z + 4 c3 c1 - c2^2 = 0, descending.
template <class T>
std::vector<T> resolvent_roots(T c1, T c2, T c3) {
  return real_cubic_roots<T>(-c1, -4 * c3, 4 * c3 * c1 - c2 * c2);
}

/// The largest real root of the resolvent; this is the root that pairs the two
/// lowest roots of the associated quartic in quartic_roots_from_resolvent.
template <class T>
T real_cubic_root(T c1, T c2, T c3) {
  return resolvent_roots<T>(c1, c2, c3).front();
}

template <class T>
T resolvent_value(T c1, T c2, T c3, T z) {
  return ((z - c1) * z - 4 * c3) * z + 4 * c3 * c1 - c2 * c2;
}

/// Roots of the depressed quartic x^4 + p x^2 + q x + r built from a resolvent
/// root eta (y = eta - p):
///   -sqrt(y)/2 -+ sqrt(-eta - p + 2q/sqrt(y))/2,  sqrt(y)/2 -+ sqrt(-eta - p - 2q/sqrt(y))/2.
/// Returns nothing when eta does not give real radicals.
template <class T>
std::optional<std::array<T, 4>> quartic_roots_from_resolvent(T p, T q, T eta) {
  using std::abs, std::sqrt;
  const T y = eta - p;
  if (!(y > 0)) return std::nullopt;
  const T sy = sqrt(y);
  const T scale = abs(eta) + abs(p) + abs(2 * q / sy);
  T lo = -eta - p + 2 * q / sy;
  T hi = -eta - p - 2 * q / sy;
  // Degenerate pairs can leave radicands a few ulps below zero.
  const T slack = 64 * std::numeric_limits<T>::epsilon() * scale;
  if (lo < -slack || hi < -slack) return std::nullopt;
  lo = std::max(lo, T(0));
  hi = std::max(hi, T(0));
  return std::array<T, 4>{-sy / 2 - sqrt(lo) / 2, -sy / 2 + sqrt(lo) / 2, sy / 2 - sqrt(hi) / 2,
                          sy / 2 + sqrt(hi) / 2};
}

}  // namespace kane

#endif  // KANE_CUBIC_HPP_
