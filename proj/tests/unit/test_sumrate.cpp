#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <asyncnoma/csv.hpp>
#include <asyncnoma/errors.hpp>
#include <asyncnoma/sumrate.hpp>

#include "oracles.hpp"

using namespace anoma;

namespace {

int oracle_id(Method m) { return m == Method::PNoma ? 0 : (m == Method::APNoma ? 1 : 2); }

double half_log2(double x) { return 0.5 * std::log2(1.0 + x); }

}  // namespace

TEST(Optimize2User, PNomaGivesEverythingToTheStrongUser) {
  const auto r = optimize_2user(Method::PNoma, 0.1, 1.0, 1.0, 10.0);
  EXPECT_EQ(r.optimal_split, (std::vector<double>{10.0, 0.0}));
  EXPECT_FALSE(r.fairness_flag);
  EXPECT_NEAR(r.max_sum_rate, half_log2(100.0), 1e-12);
  const auto flipped = optimize_2user(Method::PNoma, 1.0, 0.1, 1.0, 10.0);
  EXPECT_EQ(flipped.optimal_split, (std::vector<double>{0.0, 10.0}));
}

TEST(Optimize2User, TNomaClosedForm) {
  const auto r = optimize_2user(Method::TNoma, 0.1, 1.0, 0.0, 45.0);
  EXPECT_NEAR(r.optimal_split[0], 22.95, 1e-12);
  EXPECT_NEAR(r.optimal_split[1], 22.05, 1e-12);
  EXPECT_TRUE(r.fairness_flag);
  EXPECT_EQ(r.g, 0.0);
  for (const double P : {0.3, 7.0, 300.0}) {
    const auto e = optimize_2user(Method::TNoma, 0.4, 0.4, 0.0, P);
    EXPECT_DOUBLE_EQ(e.optimal_split[0], P / 2.0);
    EXPECT_DOUBLE_EQ(e.optimal_split[1], P / 2.0);
  }
}

TEST(Optimize2User, EqualChannelsPNomaFlagsTheTimeSharingFamily) {
  const auto r = optimize_2user(Method::PNoma, 1.0, 1.0, 1.0, 10.0);
  EXPECT_TRUE(r.any_split_optimal);
  EXPECT_NEAR(r.max_sum_rate, half_log2(10.0), 1e-12);
  EXPECT_NEAR(r.optimal_split[0] + r.optimal_split[1], 10.0, 1e-12);
}

TEST(Optimize2User, ParameterErrors) {
  EXPECT_THROW(optimize_2user(Method::APNoma, 0.1, 1.0, 0.0, 10.0), ParameterError);
  EXPECT_THROW(optimize_2user(Method::APNoma, 0.1, 1.0, 1.5, 10.0), ParameterError);
  EXPECT_THROW(optimize_2user(Method::TNoma, 0.0, 1.0, 0.0, 10.0), ParameterError);
  EXPECT_THROW(optimize_2user(Method::TNoma, 0.1, 1.0, 0.0, -1.0), ParameterError);
  EXPECT_NO_THROW(optimize_2user(Method::APNoma, 0.1, 1.0, 1.0, 10.0));
}

TEST(Optimize2User, APNomaWithUnitCoefficientIsPNoma) {
  for (const double P : {0.5, 5.0, 50.0}) {
    const auto a = optimize_2user(Method::APNoma, 0.1, 1.0, 1.0, P);
    const auto p = optimize_2user(Method::PNoma, 0.1, 1.0, 1.0, P);
    EXPECT_NEAR(a.max_sum_rate, p.max_sum_rate, 1e-12);
    EXPECT_NEAR(a.optimal_split[0], p.optimal_split[0], 1e-9);
  }
}

// 50 random tuples against a 1e5-point exhaustive search.
TEST(Optimize2User, MatchesBruteForceSearch) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> sig(0.05, 2.0), gg(0.02, 0.98), pw(0.1, 100.0);
  const int n = 100001;
  for (int trial = 0; trial < 50; ++trial) {
    const double s1 = sig(rng), s2 = sig(rng), g = gg(rng), P = pw(rng);
    for (const Method m : {Method::PNoma, Method::APNoma, Method::TNoma}) {
      const auto r = optimize_2user(m, s1, s2, g, P);
      const auto best = oracle::grid_search(oracle_id(m), s1, s2, g, P, n);
      EXPECT_NEAR(r.max_sum_rate, best.rate, 1e-6) << trial;
      EXPECT_GE(r.max_sum_rate, best.rate - 1e-9) << trial;
      EXPECT_NEAR(r.optimal_split[0], best.p1, P / (n - 1) + 1e-12) << trial << " " << to_string(m);
      EXPECT_NEAR(r.optimal_split[0] + r.optimal_split[1], P, 1e-9 * P);
      EXPECT_GE(r.optimal_split[1], 0.0);
    }
  }
}

TEST(Optimize2User, InteriorAPNomaRootSolvesTheStationarityEquation) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> gg(0.05, 0.95), pw(5.0, 200.0);
  int interior = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const double s1 = 0.1, s2 = 1.0, g = gg(rng), P = pw(rng);
    const auto r = optimize_2user(Method::APNoma, s1, s2, g, P);
    const double x = r.optimal_split[0];
    if (x <= 0.0 || x >= P) continue;
    ++interior;
    const double qw = g * (g - 1.0) * x * x + 2.0 * (g - 1.0) * s2 * x + P * (s2 - g * s1) + s2 * (s2 - s1);
    EXPECT_NEAR(qw, 0.0, 1e-6);
  }
  EXPECT_GT(interior, 20);
}

TEST(Fairness, ThresholdExamples) {
  EXPECT_FALSE(fairness_threshold(Method::PNoma, 0.1, 1.0, 1.0, 10.0));
  EXPECT_TRUE(fairness_threshold(Method::APNoma, 0.1, 1.0, 0.5, 45.0));
  EXPECT_FALSE(fairness_threshold(Method::TNoma, 0.1, 1.0, 0.0, 0.5));
  EXPECT_TRUE(fairness_threshold(Method::TNoma, 0.1, 1.0, 0.0, 0.95));
}

TEST(Fairness, AgreesWithTheOptimizer) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> sig(0.05, 2.0), gg(0.05, 0.95), pw(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double s1 = sig(rng), s2 = sig(rng), g = gg(rng), P = pw(rng);
    for (const Method m : {Method::PNoma, Method::APNoma, Method::TNoma}) {
      const auto r = optimize_2user(m, s1, s2, g, P);
      EXPECT_EQ(r.fairness_flag, fairness_threshold(m, s1, s2, g, P)) << trial << " " << to_string(m);
    }
  }
}

TEST(Sweep, OrderingAndMonotonicity) {
  std::vector<double> grid;
  for (int i = 0; i <= 60; ++i) grid.push_back(std::pow(10.0, -1.0 + i / 20.0));
  const OverallPulse pulse(make_pulse(PulseKind::Rect));
  const double g = interference_coefficient(pulse, 0.0, 0.5);
  for (const auto& [s1, s2] : {std::pair{0.1, 1.0}, std::pair{1.0, 1.0}}) {
    const auto p = sweep_sumrate(Method::PNoma, s1, s2, 1.0, grid);
    const auto a = sweep_sumrate(Method::APNoma, s1, s2, g, grid);
    const auto t = sweep_sumrate(Method::TNoma, s1, s2, 0.0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      EXPECT_LE(p[i].max_sum_rate, a[i].max_sum_rate + 1e-12);
      EXPECT_LE(a[i].max_sum_rate, t[i].max_sum_rate + 1e-12);
      if (i > 0) EXPECT_GE(a[i].max_sum_rate, a[i - 1].max_sum_rate);
      const double P = grid[i];
      if (s1 == s2) {
        EXPECT_LT(p[i].max_sum_rate, a[i].max_sum_rate);
        EXPECT_LT(a[i].max_sum_rate, t[i].max_sum_rate);
      } else if (P > std::abs(s2 - s1) / (1.0 - g) && P > std::abs(s2 - s1)) {
        EXPECT_LT(p[i].max_sum_rate, a[i].max_sum_rate);
        EXPECT_LT(a[i].max_sum_rate, t[i].max_sum_rate);
      } else if (P <= std::abs(s2 - s1)) {
        const double solo = half_log2(P / std::min(s1, s2));
        EXPECT_NEAR(p[i].max_sum_rate, solo, 1e-12);
        EXPECT_NEAR(a[i].max_sum_rate, solo, 1e-12);
        EXPECT_NEAR(t[i].max_sum_rate, solo, 1e-12);
      }
    }
  }
  const std::vector<double> bad{1.0, 1.0};
  EXPECT_THROW(sweep_sumrate(Method::TNoma, 0.1, 1.0, 0.0, bad), ParameterError);
}

TEST(Sweep, OrderingHoldsForRandomTuples) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> sig(0.05, 2.0), gg(0.01, 0.99), pw(0.1, 100.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double s1 = sig(rng), s2 = sig(rng), g = gg(rng), P = pw(rng);
    const double p = optimize_2user(Method::PNoma, s1, s2, 1.0, P).max_sum_rate;
    const double a = optimize_2user(Method::APNoma, s1, s2, g, P).max_sum_rate;
    const double t = optimize_2user(Method::TNoma, s1, s2, 0.0, P).max_sum_rate;
    EXPECT_LE(p, a + 1e-12);
    EXPECT_LE(a, t + 1e-12);
  }
}

TEST(OptimizeGrid, TwoUsersAgreeWithClosedForms) {
  const OverallPulse pulse(make_pulse(PulseKind::Rect));
  const std::vector<double> sig{1.0, 0.1};
  const auto users = make_users(sig);
  const std::vector<double> half{0.0, 0.5};
  const auto t = optimize_grid(Method::TNoma, users, pulse, half, 45.0, 10001);
  const auto tc = optimize_2user(Method::TNoma, 1.0, 0.1, 0.0, 45.0);
  EXPECT_NEAR(t.optimal_split[0], tc.optimal_split[0], 45.0 / 1e4);
  EXPECT_NEAR(t.optimal_split[1], tc.optimal_split[1], 45.0 / 1e4);
  EXPECT_NEAR(t.max_sum_rate, tc.max_sum_rate, 1e-6);

  const auto a = optimize_grid(Method::APNoma, users, pulse, half, 45.0, 10001);
  EXPECT_DOUBLE_EQ(a.g, 0.5);
  const auto ac = optimize_2user(Method::APNoma, 1.0, 0.1, 0.5, 45.0);
  EXPECT_NEAR(a.optimal_split[1], ac.optimal_split[1], 45.0 / 1e4);
  EXPECT_NEAR(a.max_sum_rate, ac.max_sum_rate, 1e-6);

  const std::vector<double> sync{0.0, 0.0};
  const auto s = optimize_grid(Method::APNoma, users, pulse, sync, 10.0, 1001);
  const auto p = optimize_grid(Method::PNoma, users, pulse, sync, 10.0, 1001);
  EXPECT_EQ(s.optimal_split, p.optimal_split);
  EXPECT_DOUBLE_EQ(s.max_sum_rate, p.max_sum_rate);
}

TEST(OptimizeGrid, ThreeUsersDominateEverySample) {
  const OverallPulse pulse(make_pulse(PulseKind::Rect));
  const std::vector<double> sig{0.1, 0.5, 1.0};
  const auto users = make_users(sig);
  const std::vector<double> d{0.0, 0.3, 0.7};
  const auto best = optimize_grid(Method::TNoma, users, pulse, d, 10.0, 101);
  EXPECT_TRUE(best.fairness_flag);
  for (const auto& p : simplex_grid(3, 10.0, 101)) {
    double s = 0.0;
    for (std::size_t k = 0; k < 3; ++k) s += half_log2(p[k] / sig[k]);
    EXPECT_LE(s, best.max_sum_rate + 1e-12);
  }
  EXPECT_THROW(optimize_grid(Method::TNoma, std::span(users).first(1), pulse, d, 10.0, 11), ParameterError);
}

TEST(SumRateCsv, Columns) {
  const std::vector<double> grid{1.0, 10.0};
  const CsvTable t = read_csv(to_csv(sweep_sumrate(Method::TNoma, 0.1, 1.0, 0.0, grid)));
  EXPECT_EQ(t.header,
            (std::vector<std::string>{"P_linear", "P_dB", "method", "P1_opt", "P2_opt", "sum_rate", "fairness_flag"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1][1], "10");
  EXPECT_EQ(t.rows[1][2], "tnoma");
  EXPECT_EQ(t.rows[0][6], "1");
}
