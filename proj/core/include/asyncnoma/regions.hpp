#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "asyncnoma/eigen.hpp"
#include "asyncnoma/hull.hpp"
#include "asyncnoma/pulse.hpp"

namespace anoma {

enum class Method { PNoma, APNoma, TNoma };

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);

/// One receiver, described by its inverse channel quality sigma = noise / |h|^2.
struct UserChannel {
  double sigma;
  /// Position of the user in the caller's original ordering.
  std::size_t index;
};

/// Users sorted strongest first (ascending sigma), keeping original indices.
std::vector<UserChannel> make_users(std::span<const double> sigmas);

struct Scenario {
  std::vector<UserChannel> users;
  double total_power = 10.0;
  Pulse pulse = make_pulse(PulseKind::Rect);
  /// Delay of each timing slot; Assignment maps slots to users.
  std::vector<double> delays;
  std::size_t block_length = 16;

  /// Throws ParameterError when users are unsorted, sigma <= 0, P <= 0 or
  /// the delay count differs from the user count.
  void validate() const;
};

enum class AllocationMode { PerUser, PerSubchannel };

/// Per-user powers (P-NOMA, AP-NOMA, T-NOMA closed form) or a K x N matrix of
/// per-subchannel magnitudes P_kn for precoded T-NOMA.
struct PowerAllocation {
  AllocationMode mode = AllocationMode::PerUser;
  /// P, the per-symbol budget.
  double budget = 0.0;
  std::vector<double> per_user;
  Eigen::MatrixXd per_subchannel;

  /// Throws BudgetError on negative entries or sum(powers) > budget.
  static PowerAllocation per_user_powers(std::vector<double> powers, double budget);
  /// Non-negativity is checked here; the eigenvalue-weighted budget is
  /// checked where R is known.
  static PowerAllocation per_subchannel_powers(Eigen::MatrixXd magnitudes, double budget);
};

/// Permutation sending delay slot s to user slot_to_user[s] (users in sorted order).
struct Assignment {
  std::vector<std::size_t> slot_to_user;

  static Assignment identity(std::size_t users);
  /// Delay of each user under this assignment.
  std::vector<double> user_delays(std::span<const double> slot_delays) const;
  std::string label() const;
};

/// All K! assignments in lexicographic order.
std::vector<Assignment> all_assignments(std::size_t users);

/// Delays of the users that carry power (P_k >= threshold * budget), shifted
/// so the earliest is zero. Users without power drop out of the profile.
std::vector<double> active_delay_profile(std::span<const double> user_delays, std::span<const double> powers,
                                         double budget, double threshold = 1e-9);

/// Synchronous superposition with SIC; user r sees sum_{k<r} P_k as interference.
std::vector<double> pnoma_rates(std::span<const UserChannel> users, const PowerAllocation& allocation);

/// Asynchronous superposition: interference from stronger users is weighted by G_rk.
std::vector<double> apnoma_rates(std::span<const UserChannel> users, const PowerAllocation& allocation,
                                 const OverallPulse& g, std::span<const double> slot_delays,
                                 const Assignment& assignment);

/// Interference-free rates of the precoded scheme, 0.5 log2(1 + P_r / sigma_r).
std::vector<double> tnoma_rates(std::span<const UserChannel> users, const PowerAllocation& allocation);

/// Eigen-precoded channel of a scenario: R = U diag(lambda) U^T split into NK
/// parallel sub-channels. User k owns the eigenvalues k*N .. k*N + N - 1 of
/// the descending spectrum.
class TnomaChannel {
 public:
  explicit TnomaChannel(const Scenario& scenario);

  const EigenDecomposition& decomposition() const { return eig_; }
  /// K x N eigenvalues lambda_kn.
  const Eigen::MatrixXd& subchannel_gains() const { return lambda_; }

  /// R_r = 1/(2N) sum_i log2(1 + P_ri lambda_ri / sigma_r). Throws BudgetError
  /// when sum P_ki lambda_ki exceeds N P.
  std::vector<double> rates(const Eigen::MatrixXd& per_subchannel) const;
  /// Magnitudes P_ri = P_r / lambda_ri, the optimal equal split of each user's power.
  Eigen::MatrixXd equal_split(std::span<const double> per_user_power) const;

 private:
  std::vector<UserChannel> users_;
  double budget_;
  std::size_t block_length_;
  EigenDecomposition eig_;
  Eigen::MatrixXd lambda_;
};

std::vector<double> tnoma_rates_via_eigen(const Scenario& scenario, const Eigen::MatrixXd& per_subchannel);

struct RatePoint {
  std::vector<double> powers;
  std::vector<double> rates;
  std::optional<Assignment> assignment;
};

/// Achievable rate points of one method and their convex hull. The hull is
/// taken over the points together with their coordinate projections, so it
/// describes the down-closed region that time sharing and rate reduction reach.
struct RateRegion {
  Method method = Method::PNoma;
  std::size_t users = 0;
  std::vector<RatePoint> points;
  /// Present for two and three users.
  std::optional<ConvexHull> hull;
  /// Delay profiles the AP-NOMA sweep actually used (full and collapsed).
  std::vector<std::vector<double>> delay_profiles;

  bool contains(const Eigen::VectorXd& rates, double tolerance = 1e-9) const;
  bool is_hull_vertex(const RatePoint& point) const;
};

/// Hull of the rate vectors plus their coordinate projections.
ConvexHull region_hull(const std::vector<Eigen::VectorXd>& rate_vectors);

/// Power splits on the full-budget face of the simplex, `resolution` points per
/// axis. Splits below the budget are dominated: the leftover power can always go
/// to the weakest user, who interferes with nobody.
std::vector<std::vector<double>> simplex_grid(std::size_t users, double budget, int resolution);

/// Sweeps the simplex and, for AP-NOMA, unions all K! delay assignments.
RateRegion region(const Scenario& scenario, Method method, int grid_resolution);

/// Every hull vertex of `inner` lies in the hull of `outer`.
bool region_contains(const RateRegion& outer, const RateRegion& inner, double tolerance = 1e-9);

/// CSV: method, assignment, P1..PK, R1..RK, is_hull_vertex.
std::string to_csv(const RateRegion& region);

namespace detail {
/// G_rk for the powered users of an assignment; entries of users without
/// power are zero.
Eigen::MatrixXd interference_matrix(const OverallPulse& g, std::span<const double> user_delays,
                                    std::span<const double> powers, double budget);
std::vector<double> apnoma_rates_with(std::span<const UserChannel> users, std::span<const double> powers,
                                      const Eigen::MatrixXd& interference);
}  // namespace detail

}  // namespace anoma
