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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "kane/schedule_io.hpp"

namespace kane {
namespace {

TEST(ShapeTest, FAEndpointsAndSeam) {
  for (double a : {0.1, 0.598, 0.9}) {
    EXPECT_EQ(f_A(0.0, a), 1.0);
    EXPECT_DOUBLE_EQ(f_A(0.5, a), 1 - a);
    EXPECT_DOUBLE_EQ(f_A(0.25, a), 1 - a / 2);
    EXPECT_NEAR(f_A(std::nextafter(0.25, 0.0), a), 1 - a / 2, 1e-15);
    for (double tau = 0; tau <= 0.5; tau += 1e-3) {
      EXPECT_LE(f_A(tau, a), 1.0);
      EXPECT_GE(f_A(tau, a), 1 - a - 1e-15);
    }
  }
  EXPECT_THROW(f_A(0.6, 0.5), ValidationError);
  EXPECT_THROW(f_A(0.1, 1.0), ValidationError);
}

TEST(ShapeTest, FJEndpointsAndSeam) {
  for (double tp : {0.01, 0.1085, 0.2203, 0.45}) {
    EXPECT_EQ(f_J(0.0, tp), 0.0);
    EXPECT_DOUBLE_EQ(f_J(0.5, tp), 1.0);
    EXPECT_NEAR(f_J(tp, tp), 2 * tp, 1e-15);
    EXPECT_NEAR(f_J(std::nextafter(tp, 0.0), tp), 2 * tp, 1e-15);
  }
  EXPECT_THROW(f_J(0.1, 0.5), ValidationError);
  EXPECT_THROW(f_J(-0.1, 0.2), ValidationError);
}

TEST(QuadratureTest, PiecewiseQuadraticExact) {
  for (double a : {0.2, 0.598, 0.95}) {
    const auto q = integrate([&](double t) { return f_A(t, a); }, {0.0, 0.25, 0.5});
    EXPECT_NEAR(q.value, f_A_integral(a), 1e-13);
  }
  for (double tp : {0.05, 0.1085, 0.3}) {
    const auto q = integrate([&](double t) { return f_J(t, tp); }, {0.0, tp, 0.5});
    EXPECT_NEAR(q.value, f_J_integral(tp), 1e-13);
  }
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const double c0 = u(rng), c1 = u(rng), c2 = u(rng), k = 0.5 * (u(rng) + 1);
    auto f = [&](double x) { return x < k ? c0 + c1 * x + c2 * x * x : c0 + c1 * k + c2 * k * k + (x - k); };
    auto F = [&](double x) { return c0 * x + c1 * x * x / 2 + c2 * x * x * x / 3; };
    const double exact = F(k) + (c0 + c1 * k + c2 * k * k) * (1 - k) + 0.5 * (1 - k) * (1 - k);
    EXPECT_NEAR(integrate(f, {0.0, k, 1.0}).value, exact, 1e-13);
  }
  EXPECT_THROW(integrate([](double x) { return x; }, {0.0}), ValidationError);
}

TEST(ProfileTest, ZShape) {
  ModelParams p;
  const ZPulse z{0.598, 50000.0};
  EXPECT_DOUBLE_EQ(A_profile(z, p.A0, 0.0), p.A0);
  EXPECT_DOUBLE_EQ(A_profile(z, p.A0, z.tZ), p.A0);
  EXPECT_DOUBLE_EQ(A_profile(z, p.A0, z.tZ / 2), p.A0 * (1 - z.a));
  double lo = 1e300;
  for (int i = 0; i <= 100000; ++i) {
    const double t = z.tZ * i / 100000;
    const double A = A_profile(z, p.A0, t);
    lo = std::min(lo, A);
    EXPECT_NEAR(A, A_profile(z, p.A0, z.tZ - t), 1e-12 * p.A0);
  }
  EXPECT_NEAR(lo / p.A0, 0.402, 1e-12);
  EXPECT_THROW(A_profile(z, p.A0, z.tZ * 1.01), ValidationError);
}

TEST(ProfileTest, XShapePlateau) {
  ModelParams p;
  XPulse x{0.5 * p.A0, 1000.0, 3000.0, 0.01, 2.5e-3};
  EXPECT_DOUBLE_EQ(x.ramp_parameter(p.A0), 0.5);
  for (double t = x.drive_on(); t <= x.drive_off(); t += 10) EXPECT_EQ(A_profile(x, p.A0, t), x.A);
  EXPECT_DOUBLE_EQ(A_profile(x, p.A0, 0.0), p.A0);
  EXPECT_NEAR(A_profile(x, p.A0, x.duration()), p.A0, 1e-15);
}

TEST(ProfileTest, JShape) {
  const CZPulse c{0.0116, 0.1085, 5391.0, 20000.0};
  EXPECT_EQ(J_profile(c, 0.0), 0.0);
  EXPECT_NEAR(J_profile(c, c.tC()), 0.0, 1e-18);
  EXPECT_EQ(J_profile(c, c.tC() / 2), c.Jc);
  // Monotone up over the first ramp, flat, monotone down.
  const int n = 20000;
  double prev = J_profile(c, 0.0);
  for (int i = 1; i <= n; ++i) {
    const double t = c.tC() * i / n;
    const double J = J_profile(c, t);
    if (t <= c.ta / 2) EXPECT_GE(J, prev);
    if (t > c.ta / 2 && t <= c.ta / 2 + c.th) EXPECT_EQ(J, c.Jc);
    if (t > c.ta / 2 + c.th) EXPECT_LE(J, prev);
    prev = J;
  }
}

TEST(ScheduleTest, ContinuityOnDenseGrid) {
  ModelParams p;
  const auto check = [&](const PulseSchedule &s) {
    const int n = 200000;
    double prevA1 = s.A(p, 1, 0), prevA2 = s.A(p, 2, 0), prevJ = s.J(0);
    double maxjumpA = 0, maxjumpJ = 0;
    for (int i = 1; i <= n; ++i) {
      const double t = s.duration * i / n;
      maxjumpA = std::max({maxjumpA, std::abs(s.A(p, 1, t) - prevA1), std::abs(s.A(p, 2, t) - prevA2)});
      maxjumpJ = std::max(maxjumpJ, std::abs(s.J(t) - prevJ));
      prevA1 = s.A(p, 1, t);
      prevA2 = s.A(p, 2, t);
      prevJ = s.J(t);
    }
    // Largest step-to-step change is bounded by the slope times the grid spacing.
    EXPECT_LT(maxjumpA, 1e-4 * p.A0);
    if (std::holds_alternative<CZPulse>(s.exchange)) EXPECT_LT(maxjumpJ, 1e-3 * std::get<CZPulse>(s.exchange).Jc);
    // Seams: left and right limits coincide.
    for (double b : s.breakpoints()) {
      if (b <= 0 || b >= s.duration) continue;
      const double l = std::nextafter(b, 0.0), r = std::nextafter(b, 2 * b);
      for (int site : {1, 2}) EXPECT_NEAR(s.A(p, site, l), s.A(p, site, r), 1e-12 * p.A0);
      EXPECT_NEAR(s.J(l), s.J(r), 1e-14);
    }
  };
  check(z_schedule(p, ZPulse{0.598, 50000.0}, 1));
  check(x_schedule(p, XPulse{0.5 * p.A0, 1000.0, 3000.0, 0.01, 2.5e-3}, 2));
  check(cz_schedule(p, CZPulse{0.1 * p.eps(), 0.1085, 5391.0, 1000.0}));
}

TEST(ScheduleTest, DriveWindowAndHorizon) {
  ModelParams p;
  const auto s = x_schedule(p, XPulse{0.5 * p.A0, 1000.0, 3000.0, 0.01, 2.5e-3}, 1);
  EXPECT_FALSE(s.drive_on(0.0));
  EXPECT_TRUE(s.drive_on(500.0));
  EXPECT_TRUE(s.drive_on(3499.0));
  EXPECT_FALSE(s.drive_on(3500.0));
  EXPECT_EQ(s.A(p, 2, 1000.0), p.A0);
  EXPECT_THROW(s.A(p, 1, 5000.0), ValidationError);
  EXPECT_THROW(s.J(-1.0), ValidationError);
  EXPECT_THROW(idle_schedule(p, 0.0, p.A0, p.A0), ValidationError);
}

TEST(ZPhaseTest, ShallowPulseApproachesSpectatorValue) {
  ModelParams p;
  const double tZ = 50000.0;
  const auto ph = z_phase_integrals(p, ZPulse{1e-9, tZ});
  const double spectator = tZ / p.hbar * (-p.A0 - std::sqrt(p.eps() * p.eps() + 4 * p.A0 * p.A0));
  EXPECT_NEAR(ph.delta0, spectator, 1e-9 * std::abs(spectator));
}

TEST(ZPhaseTest, DeltaOneLinearIntegralTwoWays) {
  ModelParams p;
  const ZPulse z{0.598, 64577.0};
  const auto ph = z_phase_integrals(p, z);
  const double quad =
      integrate([&](double t) { return A_profile(z, p.A0, t); }, breakpoints(z)).value / z.tZ;
  const double closed = p.A0 * 2 * f_A_integral(z.a);
  EXPECT_NEAR(quad, closed, 1e-12 * p.A0);
  const double k = z.tZ / p.hbar;
  EXPECT_NEAR(ph.delta1, k * (p.nuclear_zeeman() - p.electron_zeeman() + quad), 1e-12 * std::abs(ph.delta1));
}

TEST(ZPhaseTest, DeltaZeroAgainstRiemannSum) {
  ModelParams p;
  const ZPulse z{0.598, 64577.0};
  const auto ph = z_phase_integrals(p, z);
  const int n = 1000000;
  long double sum = 0;
  for (int i = 0; i < n; ++i) {
    const double t = z.tZ * (i + 0.5) / n;
    const double A = A_profile(z, p.A0, t);
    sum += -A - std::sqrt(p.eps() * p.eps() + 4 * A * A);
  }
  const double riemann = double(sum / n) * z.tZ / p.hbar;
  EXPECT_NEAR(ph.delta0, riemann, 1e-10 * std::abs(riemann));
}

TEST(CZPhaseTest, ZeroExchangeHasNoSplitting) {
  ModelParams p;
  const auto ph = cz_phase_integrals(p, CZPulse{0.0, 0.1, 5000.0, 10000.0});
  EXPECT_EQ(ph.beta[kVPlus] - ph.beta[kVMinus], 0.0);
}

TEST(CZPhaseTest, BetaAreScaledPlateauEnergies) {
  ModelParams p;
  const CZPulse c{0.1003 * p.eps(), 0.1085, 5381.0, 3.2e7};
  const auto ph = cz_phase_integrals(p, c);
  const auto b = block_eigenvalues(p, p.A0, c.Jc);
  EXPECT_EQ(ph.beta[kV1], c.th / p.hbar * b.E01_1);
  EXPECT_EQ(ph.beta[kVPlus], c.th / p.hbar * b.Em11_1);
  EXPECT_EQ(ph.beta[kVMinus], c.th / p.hbar * b.Em1m1_1);
  EXPECT_EQ(ph.beta[kV4], c.th / p.hbar * b.Em21_1);
  EXPECT_FALSE(ph.near_crossing);
}

TEST(CZPhaseTest, AlphaAgainstRiemannSum) {
  ModelParams p;
  const CZPulse c{0.1003 * p.eps(), 0.1085, 5381.0, 1000.0};
  const auto ph = cz_phase_integrals(p, c);
  // Midpoint rule on each smooth piece of [0, 1/2].
  std::array<long double, 4> sum{};
  const int n = 500000;
  for (const auto &[lo, hi] : {std::pair{0.0, c.tau_prime}, std::pair{c.tau_prime, 0.5}}) {
    const double h = (hi - lo) / n;
    for (int i = 0; i < n; ++i) {
      const double J = c.Jc * f_J(lo + (i + 0.5) * h, c.tau_prime);
      const auto e = block_eigenvalues(p, p.A0, J, false);
      sum[kV1] += h * e.E01_1;
      sum[kVPlus] += h * e.Em11_1;
      sum[kVMinus] += h * e.Em1m1_1;
      sum[kV4] += h * e.Em21_1;
    }
  }
  for (int k = 0; k < 4; ++k) {
    const double riemann = double(2 * c.ta / p.hbar * sum[k]);
    EXPECT_NEAR(ph.alpha[k], riemann, 1e-9 * std::abs(riemann)) << "k=" << k;
  }
}

TEST(ScheduleIoTest, ParseAngle) {
  EXPECT_DOUBLE_EQ(parse_angle("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_angle("pi/4"), kPi / 4);
  EXPECT_DOUBLE_EQ(parse_angle("-3*pi/2"), -3 * kPi / 2);
  EXPECT_DOUBLE_EQ(parse_angle("2pi"), 2 * kPi);
  EXPECT_DOUBLE_EQ(parse_angle(" 0.25 "), 0.25);
  for (const char *bad : {"", "pi/", "pi/0", "xpi", "1.5pi", "pi4", "abc"})
    EXPECT_THROW(parse_angle(bad), ValidationError) << bad;
}

TEST(ScheduleIoTest, JsonRoundTrip) {
  ModelParams p;
  const auto z = schedule_from_json(p, nlohmann::json::parse(R"({"type":"z","a":0.598,"tZ_us":0.05,"site":2})"));
  EXPECT_EQ(std::get<ZPulse>(z.hyperfine[1]).tZ, 50000.0);
  const auto x = schedule_from_json(
      p, nlohmann::json::parse(R"({"type":"x","A_over_A0":0.5,"theta":"pi/4","tXprime_ns":50})"));
  ASSERT_TRUE(x.drive.has_value());
  EXPECT_EQ(std::get<XPulse>(x.hyperfine[0]).tXprime, 50000.0);
  const auto c = schedule_from_json(
      p, nlohmann::json::parse(R"({"type":"cz","Jc_over_eps":0.1,"tau_prime":0.1,"ta_ns":5.4,"th_ns":100})"));
  EXPECT_EQ(c.duration, 105400.0);
  const auto i = schedule_from_json(p, nlohmann::json::parse(R"({"type":"idle","duration_ps":10})"));
  for (const auto &s : {z, x, c, i}) {
    const auto back = schedule_from_json(p, schedule_to_json(p, s));
    EXPECT_EQ(back.duration, s.duration);
    EXPECT_EQ(back.breakpoints(), s.breakpoints());
    for (double t : back.breakpoints()) {
      EXPECT_DOUBLE_EQ(back.A(p, 1, t), s.A(p, 1, t));
      EXPECT_DOUBLE_EQ(back.A(p, 2, t), s.A(p, 2, t));
      EXPECT_DOUBLE_EQ(back.J(t), s.J(t));
    }
  }
}

TEST(ScheduleIoTest, RejectsMalformedRecords) {
  ModelParams p;
  for (const char *bad : {R"({"type":"z","a":0.5,"tZ_us":0.05,"extra":1})",
                          R"({"type":"z","a":0.5,"tZ_us":0.05,"tZ_ns":50})",
                          R"({"type":"z","a":1.5,"tZ_us":0.05})",
                          R"({"type":"z","a":0.5})",
                          R"({"type":"x","A_over_A0":0.5})",
                          R"({"type":"cz","Jc_over_eps":0.1,"tau_prime":0.1,"theta":"pi","ta_ns":5})",
                          R"({"type":"warp"})",
                          R"([1,2])"}) {
    EXPECT_THROW(schedule_from_json(p, nlohmann::json::parse(bad)), ValidationError) << bad;
  }
}

TEST(ScheduleIoTest, ProfileSamples) {
  ModelParams p;
  const auto s = z_schedule(p, ZPulse{0.598, 50000.0}, 1);
  const auto v = profile_samples(p, s, 11);
  ASSERT_EQ(v.size(), 11u);
  EXPECT_EQ(v.front().t, 0.0);
  EXPECT_EQ(v.back().t, s.duration);
  EXPECT_DOUBLE_EQ(v[5].A1, 0.402 * p.A0);
  EXPECT_EQ(v[5].A2, p.A0);
  EXPECT_THROW(linspace(0, 1, 1), ValidationError);
}

}  // namespace
}  // namespace kane
