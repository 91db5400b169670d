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

#ifndef KANE_SPECTRA_HPP_
#define KANE_SPECTRA_HPP_

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "kane/cubic.hpp"
#include "kane/jacobi.hpp"
#include "kane/model.hpp"

namespace kane {

using ldouble = long double;

/// theta with cos = (eps + r)/N, sin = 2A/N, r = sqrt(eps^2 + 4A^2), N^2 = 2r(eps + r).
inline double mixing_angle(double A, double eps) {
  if (!(eps > 0) || A < 0) throw ValidationError("mixing_angle: need eps > 0 and A >= 0");
  return std::atan2(2.0 * A, eps + std::sqrt(eps * eps + 4.0 * A * A));
}

/// Single-site closed forms, templated so the rotating-frame algebra can run in
/// extended precision.
template <class T>
struct SiteClosedForm {
  std::array<T, 4> E;
  T cos_theta, sin_theta;
};

template <class T>
SiteClosedForm<T> site_closed_form(const ModelParams &p, double A_in) {
  const T A = A_in, eps = T(p.muB) * T(p.B) + T(p.gn_mun) * T(p.B);
  const T ez = T(p.muB) * T(p.B), nz = T(p.gn_mun) * T(p.B);
  const T r = std::sqrt(eps * eps + 4 * A * A);
  const T N = std::sqrt(2 * r * (eps + r));
  SiteClosedForm<T> s;
  s.E = {-A - r, -ez + nz + A, -A + r, ez - nz + A};
  s.cos_theta = (eps + r) / N;
  s.sin_theta = 2 * A / N;
  return s;
}

struct SingleSiteEigensystem {
  double A = 0.0;
  double theta = 0.0;
  double cos_theta = 1.0, sin_theta = 0.0;
  std::array<double, 4> energies{};
  std::array<Amplitudes, 4> vectors;  ///< |u_0> .. |u_3> in the bare basis
  std::array<int, 4> sz{0, -1, 0, 1};

  /// Unitary whose columns are |u_k>.
  Operator basis_matrix() const {
    Operator u(4, 4);
    for (int k = 0; k < 4; ++k) u.col(k) = vectors[k];
    return u;
  }
};

/// u0 = -sin|up,1> + cos|down,0>, u1 = |down,1>, u2 = cos|up,1> + sin|down,0>, u3 = |up,0>.
inline SingleSiteEigensystem single_site_eigs(const ModelParams &p, double A) {
  if (A < 0) throw ValidationError("single_site_eigs: A must be non-negative");
  const auto cf = site_closed_form<ldouble>(p, A);
  SingleSiteEigensystem e;
  e.A = A;
  e.theta = mixing_angle(A, p.eps());
  e.cos_theta = static_cast<double>(cf.cos_theta);
  e.sin_theta = static_cast<double>(cf.sin_theta);
  for (int k = 0; k < 4; ++k) e.energies[k] = static_cast<double>(cf.E[k]);
  using namespace basis;
  const double c = e.cos_theta, s = e.sin_theta;
  e.vectors[0] = -s * single(kUp1) + c * single(kDown0);
  e.vectors[1] = single(kDown1);
  e.vectors[2] = c * single(kUp1) + s * single(kDown0);
  e.vectors[3] = single(kUp0);
  return e;
}

/// E1 - E0, written without cancellation: 2A + 2 gn_mun B + 4A^2 / (eps + r).
inline double transition_energy_10(const ModelParams &p, double A) {
  const double eps = p.eps();
  const double r = std::sqrt(eps * eps + 4 * A * A);
  return 2 * A + 2 * p.nuclear_zeeman() + 4 * A * A / (eps + r);
}

// ---------------------------------------------------------------------------
// Two-site symmetry blocks.

struct BlockLabel {
  int s = 0;  ///< total S_z
  int p = 1;  ///< site-exchange parity
  bool operator==(const BlockLabel &o) const { return s == o.s && p == o.p; }
};

struct SymmetryBlock {
  BlockLabel label;
  std::vector<int> indices;  ///< columns of symmetry_adapted_basis()
  Operator matrix;
};

namespace detail {
inline int site_sz(int index) {
  static const int sz[4] = {1, 0, 0, -1};
  return sz[index];
}
inline const std::vector<BlockLabel> &block_order() {
  static const std::vector<BlockLabel> order = {{2, 1},  {1, 1},   {1, -1}, {0, 1},
                                                {0, -1}, {-1, 1}, {-1, -1}, {-2, 1}};
  return order;
}
struct AdaptedBasis {
  Operator S;
  std::vector<BlockLabel> labels;
};
inline AdaptedBasis build_adapted_basis() {
  AdaptedBasis ab;
  ab.S = Operator::Zero(16, 16);
  int col = 0;
  const double h = 1.0 / std::sqrt(2.0);
  for (const BlockLabel &lab : block_order()) {
    for (int a = 0; a < 4; ++a) {
      for (int b = a; b < 4; ++b) {
        if (site_sz(a) + site_sz(b) != lab.s) continue;
        if (a == b) {
          if (lab.p != 1) continue;
          ab.S(4 * a + a, col) = 1.0;
        } else {
          ab.S(4 * a + b, col) = h;
          ab.S(4 * b + a, col) = lab.p * h;
        }
        ab.labels.push_back(lab);
        ++col;
      }
    }
  }
  return ab;
}
inline const AdaptedBasis &adapted_basis() {
  static const AdaptedBasis ab = build_adapted_basis();
  return ab;
}
}  // namespace detail

/// Orthogonal matrix whose columns are (S_z^tot, P) eigenvectors, grouped by block.
inline const Operator &symmetry_adapted_basis() { return detail::adapted_basis().S; }

inline std::vector<int> block_indices(BlockLabel label) {
  std::vector<int> idx;
  const auto &labels = detail::adapted_basis().labels;
  for (int i = 0; i < 16; ++i)
    if (labels[i] == label) idx.push_back(i);
  return idx;
}

inline Operator extract_block(const Operator &h_adapted, const std::vector<int> &idx) {
  const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
  Operator m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = h_adapted(idx[i], idx[j]);
  return m;
}

/// Block decomposition of H_C for A1 = A2 = A.
inline std::vector<SymmetryBlock> symmetry_blocks(const ModelParams &p, double A, double J) {
  const Operator &S = symmetry_adapted_basis();
  const Operator ha = S.adjoint() * two_qubit_static_hamiltonian(p, A, A, J) * S;
  std::vector<SymmetryBlock> blocks;
  for (const BlockLabel &lab : detail::block_order()) {
    SymmetryBlock b;
    b.label = lab;
    b.indices = block_indices(lab);
    b.matrix = extract_block(ha, b.indices);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

inline Operator block_matrix(const ModelParams &p, double A, double J, BlockLabel label) {
  const Operator &S = symmetry_adapted_basis();
  const auto idx = block_indices(label);
  Operator cols(16, static_cast<Eigen::Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) cols.col(k) = S.col(idx[k]);
  return cols.adjoint() * two_qubit_static_hamiltonian(p, A, A, J) * cols;
}

// ---------------------------------------------------------------------------
// Closed-form block eigenvalues.

struct BlockEigenvalues {
  double A = 0.0, J = 0.0;
  double E01_1 = 0.0, E01_2 = 0.0;     ///< two lowest of the (0,1) block
  double Em1m1_1 = 0.0, Em1m1_2 = 0.0;  ///< (-1,-1) block
  double Em11_1 = 0.0;                 ///< lowest of the (-1,1) block
  double Em21_1 = 0.0;                 ///< (-2,1) block
  bool near_crossing = false;          ///< J within 2% of eps/2

  std::array<double, 6> values() const { return {E01_1, E01_2, Em1m1_1, Em1m1_2, Em11_1, Em21_1}; }
};

/// c1, c2, c3 of the (0,1)-block quartic in x = E + A.
template <class T>
std::array<T, 3> block01_coefficients(T A, T J, T eps) {
  const T e2 = eps * eps;
  const T c1 = -6 * J * J + 4 * J * A - 22 * A * A - 4 * e2;
  const T c2 = 8 * J * J * J - 8 * A * J * J + 8 * (A * A - e2) * J + 8 * e2 * A + 24 * A * A * A;
  const T c3 = -3 * J * J * J * J + 4 * A * J * J * J + (14 * A * A + 12 * e2) * J * J +
               (-60 * A * A * A + 8 * e2 * A) * J + 12 * e2 * A * A + 45 * A * A * A * A;
  return {c1, c2, c3};
}

namespace detail {
inline bool matches_spectrum(double value, const Eigen::VectorXd &spectrum, int position,
                             double scale) {
  return std::abs(spectrum(position) - value) <= 1e-10 * std::max(std::abs(value), scale);
}
}  // namespace detail

/// Two lowest eigenvalues of the (0,1) block from the resolvent cubic.
///
/// The largest real resolvent root pairs the two lowest quartic roots; with
/// validate set, the pair is checked against a Jacobi diagonalization of the
/// block and the remaining real roots are tried if it does not match.
inline std::array<double, 2> block01_lowest_pair(const ModelParams &p, double A, double J,
                                                 bool validate = true) {
  const ldouble eps = ldouble(p.muB) * p.B + ldouble(p.gn_mun) * p.B;
  const auto c = block01_coefficients<ldouble>(A, J, eps);
  const auto etas = resolvent_roots<ldouble>(c[0], c[1], c[2]);
  Eigen::VectorXd spectrum;
  double scale = 0.0;
  if (validate) {
    const Operator blk = block_matrix(p, A, J, {0, 1});
    spectrum = jacobi_eigenvalues(blk);
    scale = max_abs(blk);
  }
  for (ldouble eta : etas) {
    const auto roots = quartic_roots_from_resolvent<ldouble>(c[0], c[1], eta);
    if (!roots) continue;
    const std::array<double, 2> pair = {static_cast<double>((*roots)[0] - ldouble(A)),
                                        static_cast<double>((*roots)[1] - ldouble(A))};
    if (!validate) return pair;
    if (detail::matches_spectrum(pair[0], spectrum, 0, scale) &&
        detail::matches_spectrum(pair[1], spectrum, 1, scale)) {
      return pair;
    }
  }
  throw NumericalError("block (0,1): no resolvent root reproduces the block spectrum at A=" +
                       std::to_string(A) + " meV, J=" + std::to_string(J) + " meV");
}

inline bool near_level_crossing(const ModelParams &p, double J) {
  return std::abs(J - 0.5 * p.eps()) <= 0.02 * 0.5 * p.eps();
}

inline BlockEigenvalues block_eigenvalues(const ModelParams &p, double A, double J,
                                          bool validate = true) {
  if (A < 0 || J < 0) throw ValidationError("block_eigenvalues: A and J must be non-negative");
  BlockEigenvalues b;
  b.A = A;
  b.J = J;
  b.near_crossing = near_level_crossing(p, J);
  const auto pair = block01_lowest_pair(p, A, J, validate);
  b.E01_1 = pair[0];
  b.E01_2 = pair[1];
  const ldouble eps = ldouble(p.muB) * p.B + ldouble(p.gn_mun) * p.B;
  const ldouble gB = ldouble(p.gn_mun) * p.B;
  const ldouble a = A, j = J;
  const ldouble rm = std::sqrt((eps - 2 * j) * (eps - 2 * j) + 4 * a * a);
  const ldouble r0 = std::sqrt(eps * eps + 4 * a * a);
  b.Em1m1_1 = static_cast<double>(-j - eps + 2 * gB - rm);
  b.Em1m1_2 = static_cast<double>(-j - eps + 2 * gB + rm);
  b.Em11_1 = static_cast<double>(j - eps + 2 * gB - r0);
  b.Em21_1 = static_cast<double>(j - 2 * eps + 4 * gB + 2 * a);
  if (validate) {
    auto check = [&](BlockLabel lab, double value, int position, const char *name) {
      const Operator blk = block_matrix(p, A, J, lab);
      if (!detail::matches_spectrum(value, jacobi_eigenvalues(blk), position, max_abs(blk))) {
        throw NumericalError(std::string("closed-form ") + name + " not in block spectrum");
      }
    };
    check({-1, -1}, b.Em1m1_1, 0, "E1^(-1,-1)");
    check({-1, -1}, b.Em1m1_2, 1, "E2^(-1,-1)");
    check({-1, 1}, b.Em11_1, 0, "E1^(-1,1)");
    check({-2, 1}, b.Em21_1, 0, "E1^(-2,1)");
  }
  return b;
}

/// E1^(-1,1) - E1^(-1,-1) = 2J + sqrt((eps-2J)^2 + 4A^2) - sqrt(eps^2 + 4A^2).
inline double plus_minus_splitting(const ModelParams &p, double A, double J) {
  const ldouble eps = ldouble(p.muB) * p.B + ldouble(p.gn_mun) * p.B;
  const ldouble a = A, j = J;
  return static_cast<double>(2 * j + std::sqrt((eps - 2 * j) * (eps - 2 * j) + 4 * a * a) -
                             std::sqrt(eps * eps + 4 * a * a));
}

struct LevelRow {
  double J = 0.0;
  BlockEigenvalues energies;
};

inline std::vector<LevelRow> energy_level_scan(const ModelParams &p, double A,
                                               std::vector<double> J_grid) {
  if (J_grid.empty()) throw ValidationError("energy_level_scan: empty J grid");
  std::sort(J_grid.begin(), J_grid.end());
  std::vector<LevelRow> rows;
  rows.reserve(J_grid.size());
  for (double J : J_grid) rows.push_back({J, block_eigenvalues(p, A, J)});
  return rows;
}

// ---------------------------------------------------------------------------
// Rotating frame.

/// Transverse matrix elements (per tesla) between the |u_k(A)> states.
template <class T>
struct RotatingCouplings {
  T mu_theta, mu_mtheta, nu_theta, nu_mtheta;
};

template <class T>
RotatingCouplings<T> rotating_couplings(const ModelParams &p, const SiteClosedForm<T> &s) {
  const T mB = p.muB, g = p.gn_mun;
  return {mB * s.cos_theta - g * s.sin_theta, mB * s.cos_theta + g * s.sin_theta,
          mB * s.sin_theta + g * s.cos_theta, -mB * s.sin_theta + g * s.cos_theta};
}

using Matrix4L = Eigen::Matrix<ldouble, 4, 4>;
using Vector4L = Eigen::Matrix<ldouble, 4, 1>;

struct RotatingHamiltonianU {
  Matrix4L block_diagonal;  ///< H_d
  Matrix4L mixing;          ///< H_mix
  Matrix4L full() const { return block_diagonal + mixing; }
};

/// H_rot in the |u_k(A)> basis, split into the block-diagonal part H_d
/// (u0-u1 and u2-u3 couplings) and the off-diagonal part H_mix.
inline RotatingHamiltonianU rotating_hamiltonian_u(const ModelParams &p, double A, double omega_ac) {
  const auto s = site_closed_form<ldouble>(p, A);
  const auto c = rotating_couplings<ldouble>(p, s);
  const ldouble hw = ldouble(p.hbar) * omega_ac, b = p.Bac;
  RotatingHamiltonianU h;
  h.block_diagonal.setZero();
  h.mixing.setZero();
  h.block_diagonal(0, 0) = s.E[0];
  h.block_diagonal(1, 1) = s.E[1] - hw;
  h.block_diagonal(2, 2) = s.E[2];
  h.block_diagonal(3, 3) = s.E[3] + hw;
  h.block_diagonal(0, 1) = h.block_diagonal(1, 0) = -c.nu_theta * b;
  h.block_diagonal(2, 3) = h.block_diagonal(3, 2) = -c.nu_mtheta * b;
  h.mixing(0, 3) = h.mixing(3, 0) = c.mu_mtheta * b;
  h.mixing(1, 2) = h.mixing(2, 1) = c.mu_theta * b;
  return h;
}

inline Operator to_operator(const Matrix4L &m) { return m.cast<double>().cast<cplx>(); }

/// H(A) + hbar omega S_z + muB Bac sigma_x^e - gn_mun Bac sigma_x^n in the bare basis.
inline Operator rotating_frame_hamiltonian(const ModelParams &p, double A, double omega_ac) {
  return single_site_hamiltonian(p, A) + p.hbar * omega_ac * single_site_sz() +
         rotating_drive_single_site(p);
}

struct RotFrameEigensystem {
  double A = 0.0, omega_ac = 0.0, Bac = 0.0;
  std::array<double, 4> omegas{};       ///< hbar Omega_k (meV), ascending
  std::array<Amplitudes, 4> vectors;    ///< |w_k> in the |u_k(A)> basis
  Operator u_basis;                     ///< columns |u_k(A)> in the bare basis
  bool ill_conditioned = false;         ///< a coupling denominator underflowed
  int cofactor_vectors = 0;             ///< vectors taken from the cofactor form
  double max_residual = 0.0;            ///< max_k ||H_rot w_k - hbar Omega_k w_k|| (meV)

  Amplitudes vector_bare(int k) const { return u_basis * vectors[k]; }
};

/// d1, d2, d3 of the rotating-frame quartic x^4 + d1 x^2 + d2 x + d3.
inline std::array<ldouble, 3> rotating_quartic_coefficients(const ModelParams &p, double A,
                                                            double omega_ac) {
  const auto s = site_closed_form<ldouble>(p, A);
  const auto c = rotating_couplings<ldouble>(p, s);
  const ldouble hw = ldouble(p.hbar) * omega_ac, b = p.Bac, a = A;
  const ldouble mB = p.muB, g = p.gn_mun;
  const ldouble e0 = s.E[0], e1 = s.E[1] - hw, e2 = s.E[2], e3 = s.E[3] + hw;
  const ldouble b2 = b * b;
  const ldouble d1 = e0 * e2 - (e0 + e2) * (e0 + e2) + e1 * e3 - 2 * mB * mB * b2 - 2 * g * g * b2;
  const ldouble d2 = (e0 + e2) * (e0 * e2 - e1 * e3) + 8 * g * mB * b2 * a;
  const ldouble d3 = e0 * e2 * e1 * e3 + (mB * mB - g * g) * (mB * mB - g * g) * b2 * b2 -
                     e1 * (e0 * c.nu_mtheta * c.nu_mtheta + e2 * c.mu_mtheta * c.mu_mtheta) * b2 -
                     e3 * (e0 * c.mu_theta * c.mu_theta + e2 * c.nu_theta * c.nu_theta) * b2;
  return {d1, d2, d3};
}

namespace detail {
inline ldouble det3(const Matrix4L &m, int skip_row, int skip_col) {
  int r[3], c[3];
  for (int i = 0, k = 0; i < 4; ++i)
    if (i != skip_row) r[k++] = i;
  for (int i = 0, k = 0; i < 4; ++i)
    if (i != skip_col) c[k++] = i;
  auto e = [&](int i, int j) { return m(r[i], c[j]); };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
         e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

/// Null vector of a rank-3 symmetric matrix: the largest row of its adjugate.
inline Vector4L adjugate_null_vector(const Matrix4L &m) {
  Vector4L best = Vector4L::Zero();
  ldouble best_norm = -1;
  for (int i = 0; i < 4; ++i) {
    Vector4L row;
    for (int j = 0; j < 4; ++j) row(j) = (((i + j) % 2) ? -1 : 1) * det3(m, j, i);
    const ldouble n = row.norm();
    if (n > best_norm) {
      best_norm = n;
      best = row;
    }
  }
  return best;
}
}  // namespace detail

/// Closed-form eigensystem of H_rot at hyperfine energy A and drive frequency omega_ac.
///
/// Eigenvector components follow from elimination: rows 0 and 1 of
/// (H_rot - hbar Omega) a = 0 give a1, a2 from (a0, a3), and row 3 fixes the
/// ratio a0 : a3, so only nu_theta Bac and mu_theta Bac appear as divisors.
/// A cofactor-row null vector is computed alongside and the smaller residual wins.
inline RotFrameEigensystem rot_frame_eigs(const ModelParams &p, double A, double omega_ac) {
  if (!(A > 0)) throw ValidationError("rot_frame_eigs: A must be positive");
  const auto s = site_closed_form<ldouble>(p, A);
  const auto cpl = rotating_couplings<ldouble>(p, s);
  const ldouble b = p.Bac;
  const RotatingHamiltonianU hu = rotating_hamiltonian_u(p, A, omega_ac);
  const Matrix4L H = hu.full();

  RotFrameEigensystem out;
  out.A = A;
  out.omega_ac = omega_ac;
  out.Bac = p.Bac;
  out.u_basis = single_site_eigs(p, A).basis_matrix();

  const ldouble tiny = 1e-30L;
  const ldouble nb = cpl.nu_theta * b, mb = cpl.mu_theta * b, mmb = cpl.mu_mtheta * b,
                nmb = cpl.nu_mtheta * b;
  out.ill_conditioned = std::abs(nb) < tiny || std::abs(mb) < tiny || std::abs(mmb) < tiny;

  // Eigenvalues from the resolvent, validated against the 4x4 oracle.
  const auto d = rotating_quartic_coefficients(p, A, omega_ac);
  const Eigen::VectorXd spectrum = jacobi_eigenvalues(to_operator(H));
  const double scale = max_abs(to_operator(H));
  bool found = false;
  std::array<ldouble, 4> omegas{};
  for (ldouble eta : resolvent_roots<ldouble>(d[0], d[1], d[2])) {
    const auto roots = quartic_roots_from_resolvent<ldouble>(d[0], d[1], eta);
    if (!roots) continue;
    bool ok = true;
    for (int k = 0; k < 4; ++k)
      ok = ok && detail::matches_spectrum(static_cast<double>((*roots)[k]), spectrum, k, scale);
    if (ok) {
      omegas = *roots;
      found = true;
      break;
    }
  }
  if (!found) throw NumericalError("rotating frame: no resolvent root reproduces the spectrum");

  for (int k = 0; k < 4; ++k) {
    const ldouble w = omegas[k];
    const Matrix4L M = H - w * Matrix4L::Identity();
    auto residual = [&](const Vector4L &v) { return (M * v).norm(); };
    Vector4L a = Vector4L::Zero();
    ldouble best = std::numeric_limits<ldouble>::infinity();
    if (!out.ill_conditioned) {
      const ldouble e0 = M(0, 0), e1 = M(1, 1), e3 = M(3, 3);
      const ldouble K0 = mmb - nmb * nb / mb + nmb * e0 * e1 / (nb * mb);
      const ldouble K3 = e3 + nmb * mmb * e1 / (nb * mb);
      Vector4L v;
      v(0) = K3;
      v(3) = -K0;
      v(1) = (e0 * v(0) + mmb * v(3)) / nb;
      v(2) = (nb * v(0) - e1 * v(1)) / mb;
      const ldouble n = v.norm();
      if (n > 0 && std::isfinite(n)) {
        a = v / n;
        best = residual(a);
      }
    }
    // The elimination amplifies eigenvalue roundoff by ~gap^2 / (nu mu Bac^2) on
    // the near-degenerate pair; the cofactor form does not, so keep the better.
    Vector4L adj = detail::adjugate_null_vector(M);
    if (adj.norm() > 0) {
      adj /= adj.norm();
      const ldouble r = residual(adj);
      if (r < best) {
        a = adj;
        best = r;
        out.cofactor_vectors += 1;
      }
    }
    if (!std::isfinite(best)) {
      // Degenerate eigenvalue (Bac = 0 at resonance): the matrix is diagonal
      // within the degenerate pair, so a unit vector is exact.
      int pick = -1;
      for (int i = 0; i < 4; ++i) {
        bool taken = false;
        for (int j = 0; j < k; ++j) taken = taken || std::abs(out.vectors[j](i)) > 0.5;
        if (taken) continue;
        if (pick < 0 || std::abs(M(i, i)) < std::abs(M(pick, pick))) pick = i;
      }
      a.setZero();
      a(pick) = 1;
      best = residual(a);
    }
    out.omegas[k] = static_cast<double>(w);
    out.max_residual = std::max(out.max_residual, static_cast<double>(best));
    out.vectors[k] = normalize_phase(a.cast<double>().cast<cplx>());
  }
  return out;
}

}  // namespace kane

#endif  // KANE_SPECTRA_HPP_
