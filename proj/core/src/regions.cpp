#include "asyncnoma/regions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "asyncnoma/corr.hpp"
#include "asyncnoma/csv.hpp"
#include "asyncnoma/errors.hpp"

namespace anoma {
namespace {

constexpr double kBudgetSlack = 1e-12;
constexpr double kZeroPower = 1e-9;

double half_log2(double snr) { return 0.5 * std::log2(1.0 + snr); }

void check_users(std::span<const UserChannel> users) {
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (!(users[i].sigma > 0.0) || !std::isfinite(users[i].sigma)) throw ParameterError("sigma must be positive");
    if (i > 0 && users[i].sigma < users[i - 1].sigma) {
      throw ParameterError("users must be sorted strongest first");
    }
  }
}

const std::vector<double>& per_user_of(std::span<const UserChannel> users, const PowerAllocation& a) {
  if (a.mode != AllocationMode::PerUser) throw ParameterError("per-user allocation expected");
  if (a.per_user.size() != users.size()) throw ShapeError("one power per user expected");
  return a.per_user;
}

Eigen::VectorXd as_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Every coordinate projection of x (entries zeroed by a subset mask).
void push_projections(const Eigen::VectorXd& x, std::vector<Eigen::VectorXd>& out) {
  const auto k = static_cast<unsigned>(x.size());
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Eigen::VectorXd y = x;
    for (unsigned i = 0; i < k; ++i) {
      if (mask & (1u << i)) y[i] = 0.0;
    }
    out.push_back(std::move(y));
  }
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::PNoma: return "pnoma";
    case Method::APNoma: return "apnoma";
    case Method::TNoma: return "tnoma";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  if (name == "pnoma") return Method::PNoma;
  if (name == "apnoma") return Method::APNoma;
  if (name == "tnoma") return Method::TNoma;
  throw ParameterError("unknown method '" + std::string(name) + "' (expected pnoma, apnoma or tnoma)");
}

std::vector<UserChannel> make_users(std::span<const double> sigmas) {
  std::vector<UserChannel> users;
  users.reserve(sigmas.size());
  for (std::size_t i = 0; i < sigmas.size(); ++i) users.push_back({sigmas[i], i});
  std::stable_sort(users.begin(), users.end(),
                   [](const UserChannel& a, const UserChannel& b) { return a.sigma < b.sigma; });
  check_users(users);
  return users;
}

void Scenario::validate() const {
  if (users.empty()) throw ParameterError("scenario needs at least one user");
  check_users(users);
  if (!(total_power > 0.0) || !std::isfinite(total_power)) throw ParameterError("total power must be positive");
  if (delays.size() != users.size()) throw ParameterError("delay count must equal user count");
  if (block_length < 1) throw ParameterError("block length must be positive");
  (void)DelayProfile(delays);
}

PowerAllocation PowerAllocation::per_user_powers(std::vector<double> powers, double budget) {
  if (!(budget > 0.0)) throw BudgetError("power budget must be positive");
  double sum = 0.0;
  for (const double p : powers) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw BudgetError("powers must be finite and non-negative");
    sum += p;
  }
  if (sum > budget * (1.0 + kBudgetSlack)) throw BudgetError("sum of powers exceeds the budget");
  PowerAllocation a;
  a.mode = AllocationMode::PerUser;
  a.budget = budget;
  a.per_user = std::move(powers);
  return a;
}

PowerAllocation PowerAllocation::per_subchannel_powers(Eigen::MatrixXd magnitudes, double budget) {
  if (!(budget > 0.0)) throw BudgetError("power budget must be positive");
  if (!magnitudes.allFinite() || (magnitudes.size() > 0 && magnitudes.minCoeff() < 0.0)) {
    throw BudgetError("sub-channel powers must be finite and non-negative");
  }
  PowerAllocation a;
  a.mode = AllocationMode::PerSubchannel;
  a.budget = budget;
  a.per_subchannel = std::move(magnitudes);
  return a;
}

Assignment Assignment::identity(std::size_t users) {
  Assignment a;
  a.slot_to_user.resize(users);
  std::iota(a.slot_to_user.begin(), a.slot_to_user.end(), std::size_t{0});
  return a;
}

std::vector<double> Assignment::user_delays(std::span<const double> slot_delays) const {
  if (slot_delays.size() != slot_to_user.size()) throw ShapeError("assignment size does not match delays");
  std::vector<double> out(slot_delays.size());
  std::vector<char> seen(slot_delays.size(), 0);
  for (std::size_t s = 0; s < slot_to_user.size(); ++s) {
    const std::size_t u = slot_to_user[s];
    if (u >= out.size() || seen[u]) throw ParameterError("assignment is not a permutation");
    seen[u] = 1;
    out[u] = slot_delays[s];
  }
  return out;
}

std::string Assignment::label() const {
  std::string s;
  for (std::size_t i = 0; i < slot_to_user.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(slot_to_user[i] + 1);
  }
  return s;
}

std::vector<Assignment> all_assignments(std::size_t users) {
  std::vector<Assignment> out;
  Assignment a = Assignment::identity(users);
  do {
    out.push_back(a);
  } while (std::next_permutation(a.slot_to_user.begin(), a.slot_to_user.end()));
  return out;
}

std::vector<double> active_delay_profile(std::span<const double> user_delays, std::span<const double> powers,
                                         double budget, double threshold) {
  if (user_delays.size() != powers.size()) throw ShapeError("one delay per user expected");
  std::vector<double> out;
  for (std::size_t k = 0; k < powers.size(); ++k) {
    if (powers[k] >= threshold * budget) out.push_back(user_delays[k]);
  }
  if (!out.empty()) {
    const double base = *std::min_element(out.begin(), out.end());
    for (double& d : out) d -= base;
  }
  return out;
}

namespace detail {

Eigen::MatrixXd interference_matrix(const OverallPulse& g, std::span<const double> user_delays,
                                    std::span<const double> powers, double budget) {
  const auto K = static_cast<Eigen::Index>(powers.size());
  const std::vector<double> profile = active_delay_profile(user_delays, powers, budget, kZeroPower);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(K, K);
  std::vector<Eigen::Index> active;
  for (Eigen::Index k = 0; k < K; ++k) {
    if (powers[static_cast<std::size_t>(k)] >= kZeroPower * budget) active.push_back(k);
  }
  for (std::size_t a = 0; a < active.size(); ++a) {
    for (std::size_t b = 0; b < active.size(); ++b) {
      G(active[a], active[b]) = interference_coefficient(g, profile[a], profile[b]);
    }
  }
  return G;
}

std::vector<double> apnoma_rates_with(std::span<const UserChannel> users, std::span<const double> powers,
                                      const Eigen::MatrixXd& interference) {
  std::vector<double> rates(users.size());
  for (std::size_t r = 0; r < users.size(); ++r) {
    double noise = users[r].sigma;
    for (std::size_t k = 0; k < r; ++k) {
      noise += interference(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) * powers[k];
    }
    rates[r] = half_log2(powers[r] / noise);
  }
  return rates;
}

}  // namespace detail

std::vector<double> pnoma_rates(std::span<const UserChannel> users, const PowerAllocation& allocation) {
  check_users(users);
  const auto& p = per_user_of(users, allocation);
  std::vector<double> rates(users.size());
  double above = 0.0;
  for (std::size_t r = 0; r < users.size(); ++r) {
    rates[r] = half_log2(p[r] / (above + users[r].sigma));
    above += p[r];
  }
  return rates;
}

std::vector<double> apnoma_rates(std::span<const UserChannel> users, const PowerAllocation& allocation,
                                 const OverallPulse& g, std::span<const double> slot_delays,
                                 const Assignment& assignment) {
  check_users(users);
  const auto& p = per_user_of(users, allocation);
  const std::vector<double> delays = assignment.user_delays(slot_delays);
  return detail::apnoma_rates_with(users, p, detail::interference_matrix(g, delays, p, allocation.budget));
}

std::vector<double> tnoma_rates(std::span<const UserChannel> users, const PowerAllocation& allocation) {
  check_users(users);
  const auto& p = per_user_of(users, allocation);
  std::vector<double> rates(users.size());
  for (std::size_t r = 0; r < users.size(); ++r) rates[r] = half_log2(p[r] / users[r].sigma);
  return rates;
}

TnomaChannel::TnomaChannel(const Scenario& scenario)
    : users_(scenario.users), budget_(scenario.total_power), block_length_(scenario.block_length) {
  scenario.validate();
  const OverallPulse g(scenario.pulse);
  const CorrBlockMatrix R = build_R(g, DelayProfile(scenario.delays), block_length_);
  eig_ = eigh(R.dense());
  const double top = eig_.values.maxCoeff();
  if (!(eig_.values.minCoeff() > 1e-10 * top)) throw PrecodingError("R is rank deficient; precoding is undefined");
  const auto K = static_cast<Eigen::Index>(users_.size());
  const auto N = static_cast<Eigen::Index>(block_length_);
  lambda_.resize(K, N);
  for (Eigen::Index k = 0; k < K; ++k) {
    for (Eigen::Index n = 0; n < N; ++n) lambda_(k, n) = eig_.values[k * N + n];
  }
}

std::vector<double> TnomaChannel::rates(const Eigen::MatrixXd& per_subchannel) const {
  if (per_subchannel.rows() != lambda_.rows() || per_subchannel.cols() != lambda_.cols()) {
    throw ShapeError("sub-channel allocation must be K x N");
  }
  if (!per_subchannel.allFinite() || per_subchannel.minCoeff() < 0.0) {
    throw BudgetError("sub-channel powers must be finite and non-negative");
  }
  const double N = static_cast<double>(block_length_);
  if (per_subchannel.cwiseProduct(lambda_).sum() > N * budget_ * (1.0 + kBudgetSlack)) {
    throw BudgetError("trace(RQ) exceeds N P");
  }
  std::vector<double> out(users_.size());
  for (Eigen::Index r = 0; r < lambda_.rows(); ++r) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < lambda_.cols(); ++i) {
      acc += std::log2(1.0 + per_subchannel(r, i) * lambda_(r, i) / users_[static_cast<std::size_t>(r)].sigma);
    }
    out[static_cast<std::size_t>(r)] = acc / (2.0 * N);
  }
  return out;
}

Eigen::MatrixXd TnomaChannel::equal_split(std::span<const double> per_user_power) const {
  if (per_user_power.size() != users_.size()) throw ShapeError("one power per user expected");
  Eigen::MatrixXd out(lambda_.rows(), lambda_.cols());
  for (Eigen::Index r = 0; r < lambda_.rows(); ++r) {
    for (Eigen::Index i = 0; i < lambda_.cols(); ++i) {
      out(r, i) = per_user_power[static_cast<std::size_t>(r)] / lambda_(r, i);
    }
  }
  return out;
}

std::vector<double> tnoma_rates_via_eigen(const Scenario& scenario, const Eigen::MatrixXd& per_subchannel) {
  return TnomaChannel(scenario).rates(per_subchannel);
}

bool RateRegion::contains(const Eigen::VectorXd& rates, double tolerance) const {
  if (!hull) throw DimensionError("region has no hull for this user count");
  return hull->contains(rates, tolerance);
}

bool RateRegion::is_hull_vertex(const RatePoint& point) const {
  if (!hull) return false;
  const Eigen::VectorXd x = as_vector(point.rates);
  for (const auto& v : hull->vertices()) {
    if (v == x) return true;
  }
  return false;
}

ConvexHull region_hull(const std::vector<Eigen::VectorXd>& rate_vectors) {
  if (rate_vectors.empty()) throw ParameterError("no rate points");
  const auto dim = rate_vectors.front().size();
  if (dim != 2 && dim != 3) throw DimensionError("rate-region hulls need two or three users");
  // Projections of interior points are interior to the hull of projected
  // vertices, so projecting the extreme points is enough.
  const ConvexHull raw = ConvexHull::build(rate_vectors);
  std::vector<Eigen::VectorXd> closed;
  closed.reserve(raw.vertices().size() << dim);
  for (const auto& v : raw.vertices()) push_projections(v, closed);
  return ConvexHull::build(closed);
}

std::vector<std::vector<double>> simplex_grid(std::size_t users, double budget, int resolution) {
  if (users < 1) throw ParameterError("need at least one user");
  if (resolution < 2) throw ParameterError("grid resolution must be at least 2");
  const int steps = resolution - 1;
  std::vector<std::vector<double>> out;
  std::vector<int> parts(users, 0);
  // Enumerate compositions of `steps` into `users` non-negative parts.
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k + 1 == users) {
      parts[k] = left;
      std::vector<double> p(users);
      for (std::size_t i = 0; i < users; ++i) p[i] = budget * parts[i] / steps;
      out.push_back(std::move(p));
      return;
    }
    for (int v = left; v >= 0; --v) {
      parts[k] = v;
      self(self, k + 1, left - v);
    }
  };
  rec(rec, 0, steps);
  return out;
}

RateRegion region(const Scenario& scenario, Method method, int grid_resolution) {
  scenario.validate();
  if (grid_resolution < 11) throw ParameterError("grid resolution must be at least 11");
  const std::size_t K = scenario.users.size();
  const double P = scenario.total_power;
  RateRegion out;
  out.method = method;
  out.users = K;
  const auto splits = simplex_grid(K, P, grid_resolution);

  if (method == Method::APNoma) {
    const OverallPulse g(scenario.pulse);
    std::set<std::vector<double>> profiles;
    for (const Assignment& psi : all_assignments(K)) {
      const std::vector<double> delays = psi.user_delays(scenario.delays);
      std::map<unsigned, Eigen::MatrixXd> cache;
      for (const auto& p : splits) {
        unsigned mask = 0;
        for (std::size_t k = 0; k < K; ++k) {
          if (p[k] >= kZeroPower * P) mask |= 1u << k;
        }
        auto it = cache.find(mask);
        if (it == cache.end()) {
          it = cache.emplace(mask, detail::interference_matrix(g, delays, p, P)).first;
          profiles.insert(active_delay_profile(delays, p, P, kZeroPower));
        }
        out.points.push_back({p, detail::apnoma_rates_with(scenario.users, p, it->second), psi});
      }
    }
    out.delay_profiles.assign(profiles.begin(), profiles.end());
  } else {
    for (const auto& p : splits) {
      const auto a = PowerAllocation::per_user_powers(p, P);
      auto r = method == Method::PNoma ? pnoma_rates(scenario.users, a) : tnoma_rates(scenario.users, a);
      out.points.push_back({p, std::move(r), std::nullopt});
    }
  }

  if (K == 2 || K == 3) {
    std::vector<Eigen::VectorXd> rv;
    rv.reserve(out.points.size());
    for (const auto& pt : out.points) rv.push_back(as_vector(pt.rates));
    out.hull = region_hull(rv);
  }
  return out;
}

bool region_contains(const RateRegion& outer, const RateRegion& inner, double tolerance) {
  if (!outer.hull || !inner.hull) throw DimensionError("containment needs hulls on both sides");
  for (const auto& v : inner.hull->vertices()) {
    if (!outer.hull->contains(v, tolerance)) return false;
  }
  return true;
}

std::string to_csv(const RateRegion& region) {
  CsvTable t;
  t.add_meta("method", std::string(to_string(region.method)));
  t.add_meta("users", std::to_string(region.users));
  t.header = {"method", "assignment"};
  for (std::size_t k = 0; k < region.users; ++k) t.header.push_back("P" + std::to_string(k + 1));
  for (std::size_t k = 0; k < region.users; ++k) t.header.push_back("R" + std::to_string(k + 1));
  t.header.push_back("is_hull_vertex");

  std::set<std::vector<double>> vertices;
  if (region.hull) {
    for (const auto& v : region.hull->vertices()) vertices.insert(std::vector<double>(v.data(), v.data() + v.size()));
  }
  for (const auto& pt : region.points) {
    std::vector<std::string> row{std::string(to_string(region.method)),
                                 pt.assignment ? pt.assignment->label() : std::string("-")};
    for (const double p : pt.powers) row.push_back(format_number(p));
    for (const double r : pt.rates) row.push_back(format_number(r));
    row.emplace_back(vertices.count(pt.rates) ? "1" : "0");
    t.rows.push_back(std::move(row));
  }
  return write_csv(t);
}

}  // namespace anoma
