#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <asyncnoma/csv.hpp>
#include <asyncnoma/errors.hpp>
#include <asyncnoma/regions.hpp>

using namespace anoma;

namespace {

double half_log2(double x) { return 0.5 * std::log2(1.0 + x); }

Scenario scenario(std::vector<double> sigmas, std::vector<double> delays, double P = 10.0,
                  Pulse pulse = make_pulse(PulseKind::Rect)) {
  Scenario s;
  s.users = make_users(sigmas);
  s.delays = std::move(delays);
  s.total_power = P;
  s.pulse = std::move(pulse);
  return s;
}

Eigen::VectorXd vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

TEST(Users, SortedStrongestFirstWithOriginalIndex) {
  const std::vector<double> s{1.0, 0.1, 0.5};
  const auto u = make_users(s);
  EXPECT_EQ(u[0].index, 1u);
  EXPECT_EQ(u[1].index, 2u);
  EXPECT_EQ(u[2].index, 0u);
  const std::vector<double> bad{1.0, 0.0};
  EXPECT_THROW(make_users(bad), ParameterError);
}

TEST(Allocation, BudgetChecks) {
  EXPECT_THROW(PowerAllocation::per_user_powers({6.0, 5.0}, 10.0), BudgetError);
  EXPECT_THROW(PowerAllocation::per_user_powers({-1.0, 5.0}, 10.0), BudgetError);
  EXPECT_NO_THROW(PowerAllocation::per_user_powers({5.0, 5.0}, 10.0));
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(2, 2);
  m(0, 0) = -0.5;
  EXPECT_THROW(PowerAllocation::per_subchannel_powers(m, 10.0), BudgetError);
}

TEST(Assignment, PermutationsAndDelays) {
  const auto all = all_assignments(3);
  ASSERT_EQ(all.size(), 6u);
  EXPECT_EQ(all.front().label(), "1-2-3");
  EXPECT_EQ(all.back().label(), "3-2-1");
  const std::vector<double> slots{0.0, 0.3, 0.7};
  EXPECT_EQ(all[1].user_delays(slots), (std::vector<double>{0.0, 0.7, 0.3}));
  Assignment bad{{0, 0, 1}};
  EXPECT_THROW(bad.user_delays(slots), ParameterError);
}

TEST(Assignment, ZeroPowerUsersCollapseTheProfile) {
  const std::vector<double> d{0.0, 0.3, 0.7};
  const auto p = active_delay_profile(d, std::vector<double>{0.0, 5.0, 5.0}, 10.0);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_DOUBLE_EQ(p[0], 0.0);
  EXPECT_NEAR(p[1], 0.4, 1e-15);
  EXPECT_EQ(active_delay_profile(d, std::vector<double>{5.0, 1e-12, 5.0}, 10.0), (std::vector<double>{0.0, 0.7}));
}

TEST(PNoma, Examples) {
  const auto u = make_users(std::vector<double>{0.1, 1.0});
  const auto r = pnoma_rates(u, PowerAllocation::per_user_powers({10.0, 0.0}, 10.0));
  EXPECT_NEAR(r[0], half_log2(100.0), 1e-12);
  EXPECT_NEAR(r[0], 3.3291, 1e-4);
  EXPECT_EQ(r[1], 0.0);
  const auto z = pnoma_rates(u, PowerAllocation::per_user_powers({0.0, 0.0}, 10.0));
  EXPECT_EQ(z, (std::vector<double>{0.0, 0.0}));
}

TEST(PNoma, EqualChannelsGiveAConstantSum) {
  const auto u = make_users(std::vector<double>{1.0, 1.0});
  for (int i = 0; i <= 10; ++i) {
    const auto r = pnoma_rates(u, PowerAllocation::per_user_powers({1.0 * i, 10.0 - i}, 10.0));
    EXPECT_NEAR(r[0] + r[1], half_log2(10.0), 1e-12);
    EXPECT_NEAR(r[0] + r[1], 1.7297, 1e-4);
  }
}

TEST(APNoma, LimitsAndHalfSymbolExample) {
  const auto u = make_users(std::vector<double>{0.1, 1.0});
  const OverallPulse g(make_pulse(PulseKind::Rect));
  const auto id = Assignment::identity(2);
  const auto a = PowerAllocation::per_user_powers({5.0, 5.0}, 10.0);
  const std::vector<double> sync{0.0, 0.0};
  EXPECT_EQ(apnoma_rates(u, a, g, sync, id), pnoma_rates(u, a));
  const auto r = apnoma_rates(u, a, g, std::vector<double>{0.0, 0.5}, id);
  EXPECT_NEAR(r[1], half_log2(5.0 / (0.5 * 5.0 + 1.0)), 1e-12);
  // The printed 0.6399 sits 1.5e-4 below the exact 0.64005.
  EXPECT_NEAR(r[1], 0.6399, 5e-4);
  EXPECT_NEAR(r[0], half_log2(50.0), 1e-12);
  const auto free = detail::apnoma_rates_with(u, std::vector<double>{5.0, 5.0}, Eigen::MatrixXd::Zero(2, 2));
  EXPECT_EQ(free, tnoma_rates(u, a));
}

TEST(TNoma, Examples) {
  const auto u = make_users(std::vector<double>{0.1, 1.0});
  const auto r = tnoma_rates(u, PowerAllocation::per_user_powers({5.0, 5.0}, 10.0));
  // The printed 2.8361 sits 1.1e-4 below the exact 2.83621.
  EXPECT_NEAR(r[0], 2.8361, 5e-4);
  EXPECT_NEAR(r[1], 1.2925, 1e-4);
  EXPECT_EQ(tnoma_rates(u, PowerAllocation::per_user_powers({0.0, 5.0}, 10.0))[0], 0.0);
  const auto e = make_users(std::vector<double>{1.0, 1.0});
  const auto q = tnoma_rates(e, PowerAllocation::per_user_powers({5.0, 5.0}, 10.0));
  EXPECT_DOUBLE_EQ(q[0], half_log2(5.0));
  EXPECT_GT(q[0] + q[1], half_log2(10.0));
}

TEST(TNoma, EigenPathMatchesClosedForm) {
  Scenario s = scenario({0.1, 1.0}, {0.0, 0.5});
  const TnomaChannel ch(s);
  for (const auto& p : std::vector<std::vector<double>>{{5.0, 5.0}, {2.0, 8.0}, {10.0, 0.0}}) {
    const auto eig = ch.rates(ch.equal_split(p));
    const auto closed = tnoma_rates(s.users, PowerAllocation::per_user_powers(p, 10.0));
    for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(eig[k], closed[k], 1e-9);
  }
  s.block_length = 1;
  s.delays = {0.0, 0.5};
  const auto one = tnoma_rates_via_eigen(s, TnomaChannel(s).equal_split(std::vector<double>{4.0, 6.0}));
  EXPECT_NEAR(one[1], half_log2(6.0), 1e-12);
}

TEST(TNoma, PerturbedSplitIsStrictlyWorse) {
  const Scenario s = scenario({0.1, 1.0}, {0.0, 0.5});
  const TnomaChannel ch(s);
  const std::vector<double> p{5.0, 5.0};
  const Eigen::MatrixXd eq = ch.equal_split(p);
  const Eigen::MatrixXd& lambda = ch.subchannel_gains();
  Eigen::MatrixXd q = eq;
  // +-10% of the effective power p_ri = P_ri lambda_ri on two sub-channels.
  q(0, 2) *= 1.1;
  q(0, 9) = (eq(0, 9) * lambda(0, 9) - 0.1 * eq(0, 2) * lambda(0, 2)) / lambda(0, 9);
  EXPECT_NEAR(q.cwiseProduct(lambda).sum(), eq.cwiseProduct(lambda).sum(), 1e-9);
  const auto base = ch.rates(eq);
  const auto moved = ch.rates(q);
  EXPECT_LT(moved[0], base[0]);
  EXPECT_EQ(moved[1], base[1]);
}

TEST(TNoma, BudgetAndRankErrors) {
  const Scenario s = scenario({0.1, 1.0}, {0.0, 0.5});
  const TnomaChannel ch(s);
  EXPECT_THROW(ch.rates(ch.equal_split(std::vector<double>{6.0, 5.0})), BudgetError);
  EXPECT_THROW(ch.rates(Eigen::MatrixXd::Zero(1, 16)), ShapeError);
  // Nearly coincident delays make the two users' rows of R indistinguishable.
  const Scenario twin = scenario({0.1, 1.0}, {0.0, 1e-9});
  EXPECT_THROW(TnomaChannel{twin}, PrecodingError);
}

TEST(Simplex, FullBudgetFace) {
  const auto g = simplex_grid(3, 10.0, 11);
  EXPECT_EQ(g.size(), 66u);
  for (const auto& p : g) EXPECT_NEAR(p[0] + p[1] + p[2], 10.0, 1e-12);
  EXPECT_EQ(g.front(), (std::vector<double>{10.0, 0.0, 0.0}));
  EXPECT_EQ(g.back(), (std::vector<double>{0.0, 0.0, 10.0}));
}

TEST(Region, TNomaAxisIntercepts) {
  const auto r = region(scenario({0.1, 1.0}, {0.0, 0.5}), Method::TNoma, 201);
  ASSERT_TRUE(r.hull);
  double best1 = 0.0, best2 = 0.0;
  for (const auto& v : r.hull->vertices()) {
    if (std::abs(v[1]) < 1e-15) best1 = std::max(best1, v[0]);
    if (std::abs(v[0]) < 1e-15) best2 = std::max(best2, v[1]);
  }
  EXPECT_NEAR(best1, 3.3291, 1e-4);
  EXPECT_NEAR(best2, 1.7297, 1e-4);
  EXPECT_TRUE(r.contains(Eigen::Vector2d(0.0, 0.0)));
  EXPECT_FALSE(r.contains(Eigen::Vector2d(3.34, 0.0)));
}

TEST(Region, EqualChannelsPNomaIsTheTimeSharingLine) {
  const auto r = region(scenario({1.0, 1.0}, {0.0, 0.5}), Method::PNoma, 201);
  const double c = half_log2(10.0);
  for (const auto& v : r.hull->vertices()) EXPECT_LE(v[0] + v[1], c + 1e-12);
  for (double t = 0.0; t <= 1.0; t += 0.1) {
    EXPECT_TRUE(r.contains(Eigen::Vector2d(t * c, (1 - t) * c)));
    EXPECT_FALSE(r.contains(Eigen::Vector2d(t * c + 1e-6, (1 - t) * c + 1e-6)));
  }
}

TEST(Region, ContainmentChain) {
  const std::vector<Scenario> cases{
      scenario({0.1, 1.0}, {0.0, 0.5}), scenario({1.0, 1.0}, {0.0, 0.5}),
      scenario({0.2, 0.5}, {0.0, 0.3}, 3.0, make_pulse(PulseKind::RootRaisedCosine, 1.0, 0.5, 4)),
      scenario({0.1, 0.5, 1.0}, {0.0, 0.3, 0.7})};
  for (const auto& s : cases) {
    const int res = s.users.size() == 2 ? 101 : 31;
    const auto p = region(s, Method::PNoma, res);
    const auto a = region(s, Method::APNoma, res);
    const auto t = region(s, Method::TNoma, res);
    EXPECT_TRUE(region_contains(a, p));
    EXPECT_TRUE(region_contains(t, a));
  }
}

TEST(Region, TwoUserAssignmentsCoincide) {
  const auto r = region(scenario({0.1, 1.0}, {0.0, 0.3}), Method::APNoma, 101);
  ASSERT_EQ(r.points.size(), 202u);
  for (std::size_t i = 0; i < 101; ++i) {
    EXPECT_EQ(r.points[i].assignment->label(), "1-2");
    EXPECT_EQ(r.points[i + 101].assignment->label(), "2-1");
    EXPECT_EQ(r.points[i].rates, r.points[i + 101].rates);
  }
}

TEST(Region, ThreeUserProfilesCollapseWhenAUserIsSilent) {
  const auto r = region(scenario({0.1, 0.5, 1.0}, {0.0, 0.3, 0.7}), Method::APNoma, 11);
  auto has = [&](std::vector<double> want) {
    return std::any_of(r.delay_profiles.begin(), r.delay_profiles.end(), [&](std::vector<double> p) {
      std::sort(p.begin(), p.end());
      if (p.size() != want.size()) return false;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (std::abs(p[i] - want[i]) > 1e-12) return false;
      }
      return true;
    });
  };
  EXPECT_TRUE(has({0.0, 0.4}));
  EXPECT_TRUE(has({0.0, 0.7}));
  EXPECT_TRUE(has({0.0, 0.3}));
  EXPECT_TRUE(has({0.0, 0.3, 0.7}));
}

TEST(Region, TNomaIgnoresPulseAndDelays) {
  const auto a = region(scenario({0.1, 1.0}, {0.0, 0.3}), Method::TNoma, 101);
  const auto b = region(scenario({0.1, 1.0}, {0.0, 0.45}, 10.0, make_pulse(PulseKind::RootRaisedCosine, 1.0, 0.5, 4)),
                        Method::TNoma, 101);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(a.points[i].rates[k], b.points[i].rates[k], 1e-9);
  }
  EXPECT_TRUE(region_contains(a, b));
  EXPECT_TRUE(region_contains(b, a));
}

TEST(Region, LargerBudgetDominatesVertexWise) {
  for (const Method m : {Method::PNoma, Method::APNoma, Method::TNoma}) {
    const auto small = region(scenario({0.1, 1.0}, {0.0, 0.5}, 5.0), m, 51);
    const auto large = region(scenario({0.1, 1.0}, {0.0, 0.5}, 10.0), m, 51);
    ASSERT_EQ(small.points.size(), large.points.size());
    for (std::size_t i = 0; i < small.points.size(); ++i) {
      for (std::size_t k = 0; k < 2; ++k) EXPECT_GE(large.points[i].rates[k], small.points[i].rates[k]);
    }
    EXPECT_TRUE(region_contains(large, small));
  }
}

TEST(Region, RatesAreNonNegativeAndHullCoversEveryPoint) {
  const auto r = region(scenario({0.1, 0.5, 1.0}, {0.0, 0.3, 0.7}), Method::APNoma, 21);
  for (const auto& pt : r.points) {
    for (const double x : pt.rates) EXPECT_GE(x, 0.0);
    EXPECT_TRUE(r.contains(vec(pt.rates)));
  }
}

TEST(Region, ErrorsAndPointClouds) {
  EXPECT_THROW(region(scenario({0.1, 1.0}, {0.0, 0.5}), Method::PNoma, 10), ParameterError);
  Scenario bad = scenario({0.1, 1.0}, {0.0, 0.5});
  bad.delays = {0.0};
  EXPECT_THROW(region(bad, Method::PNoma, 11), ParameterError);
  const auto cloud = region(scenario({0.1, 0.2, 0.5, 1.0}, {0.0, 0.2, 0.4, 0.6}), Method::TNoma, 11);
  EXPECT_FALSE(cloud.hull);
  EXPECT_EQ(cloud.points.size(), 286u);
  EXPECT_THROW(cloud.contains(Eigen::Vector4d::Zero()), DimensionError);
  const std::vector<Eigen::VectorXd> four{Eigen::Vector4d::Zero()};
  EXPECT_THROW(region_hull(four), DimensionError);
}

TEST(Region, CsvRowsAndHullFlags) {
  const auto r = region(scenario({0.1, 1.0}, {0.0, 0.5}), Method::APNoma, 11);
  const CsvTable t = read_csv(to_csv(r));
  EXPECT_EQ(t.header, (std::vector<std::string>{"method", "assignment", "P1", "P2", "R1", "R2", "is_hull_vertex"}));
  ASSERT_EQ(t.rows.size(), r.points.size());
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(t.rows[i][0], "apnoma");
    EXPECT_EQ(t.rows[i][1], r.points[i].assignment->label());
    EXPECT_EQ(t.rows[i][6] == "1", r.is_hull_vertex(r.points[i]));
    flagged += t.rows[i][6] == "1";
  }
  EXPECT_GT(flagged, 0u);
}
