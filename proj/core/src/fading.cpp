#include "asyncnoma/fading.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <thread>

#include "asyncnoma/corr.hpp"
#include "asyncnoma/csv.hpp"
#include "asyncnoma/errors.hpp"

namespace anoma {
namespace {

constexpr std::size_t kChunk = 256;

struct Partial {
  std::vector<double> sum;
  std::vector<double> sumsq;
};

}  // namespace

void FadingConfig::validate() const {
  if (realizations < 1) throw ParameterError("need at least one realization");
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) throw ParameterError("noise variance must be positive");
  if (!(channel_variance > 0.0) || !std::isfinite(channel_variance)) {
    throw ParameterError("channel variance must be positive");
  }
}

std::vector<double> channel_gains(const FadingConfig& config, std::size_t realization, std::size_t users) {
  const auto r = static_cast<std::uint64_t>(realization);
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(r >> 32)};
  std::mt19937_64 rng(seq);
  std::exponential_distribution<double> power(1.0 / config.channel_variance);
  std::vector<double> out(users);
  for (auto& v : out) v = power(rng);
  return out;
}

ErgodicRegion ergodic_region(const Scenario& scenario, Method method, const FadingConfig& config,
                             int grid_resolution) {
  config.validate();
  const std::size_t K = scenario.delays.size();
  if (K < 1) throw ParameterError("scenario needs at least one user");
  if (!(scenario.total_power > 0.0)) throw ParameterError("total power must be positive");
  if (grid_resolution < 11) throw ParameterError("grid resolution must be at least 11");
  (void)DelayProfile(scenario.delays);
  const double P = scenario.total_power;

  const auto splits = simplex_grid(K, P, grid_resolution);
  const std::vector<Assignment> assignments =
      method == Method::APNoma ? all_assignments(K) : std::vector<Assignment>{Assignment::identity(K)};
  std::map<std::vector<std::size_t>, std::size_t> assignment_index;
  for (std::size_t a = 0; a < assignments.size(); ++a) assignment_index[assignments[a].slot_to_user] = a;

  // G for every rank-space assignment and powered-user mask, built once.
  std::vector<std::vector<Eigen::MatrixXd>> G;
  if (method == Method::APNoma) {
    const OverallPulse g(scenario.pulse);
    for (const auto& psi : assignments) {
      const auto delays = psi.user_delays(scenario.delays);
      std::vector<Eigen::MatrixXd> by_mask(1u << K);
      for (unsigned mask = 0; mask < (1u << K); ++mask) {
        std::vector<double> p(K);
        for (std::size_t k = 0; k < K; ++k) p[k] = (mask >> k) & 1u ? P : 0.0;
        by_mask[mask] = detail::interference_matrix(g, delays, p, P);
      }
      G.push_back(std::move(by_mask));
    }
  }

  const std::size_t A = assignments.size();
  const std::size_t S = splits.size();
  const std::size_t cells = A * S * K;

  auto run_chunk = [&](std::size_t chunk) {
    Partial part{std::vector<double>(cells, 0.0), std::vector<double>(cells, 0.0)};
    const std::size_t begin = chunk * kChunk;
    const std::size_t end = std::min(config.realizations, begin + kChunk);
    std::vector<UserChannel> users(K);
    std::vector<double> ranked(K);
    std::vector<std::size_t> rank_of(K);
    std::vector<std::size_t> psi_rank(K);
    for (std::size_t r = begin; r < end; ++r) {
      const auto gains = channel_gains(config, r, K);
      for (std::size_t k = 0; k < K; ++k) users[k] = {config.noise_variance / gains[k], k};
      std::stable_sort(users.begin(), users.end(),
                       [](const UserChannel& a, const UserChannel& b) { return a.sigma < b.sigma; });
      for (std::size_t k = 0; k < K; ++k) rank_of[users[k].index] = k;
      for (std::size_t s = 0; s < S; ++s) {
        for (std::size_t k = 0; k < K; ++k) ranked[k] = splits[s][users[k].index];
        unsigned mask = 0;
        for (std::size_t k = 0; k < K; ++k) {
          if (ranked[k] >= 1e-9 * P) mask |= 1u << k;
        }
        for (std::size_t a = 0; a < A; ++a) {
          std::vector<double> rates;
          if (method == Method::APNoma) {
            std::size_t ra = a;
            if (config.fixed_assignment) {
              for (std::size_t slot = 0; slot < K; ++slot) psi_rank[slot] = rank_of[assignments[a].slot_to_user[slot]];
              ra = assignment_index.at(psi_rank);
            }
            rates = detail::apnoma_rates_with(users, ranked, G[ra][mask]);
          } else {
            const auto alloc = PowerAllocation::per_user_powers(ranked, P);
            rates = method == Method::PNoma ? pnoma_rates(users, alloc) : tnoma_rates(users, alloc);
          }
          double* sum = &part.sum[(a * S + s) * K];
          double* sq = &part.sumsq[(a * S + s) * K];
          for (std::size_t k = 0; k < K; ++k) {
            sum[users[k].index] += rates[k];
            sq[users[k].index] += rates[k] * rates[k];
          }
        }
      }
    }
    return part;
  };

  unsigned workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
  const std::size_t chunks = (config.realizations + kChunk - 1) / kChunk;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));

  // Chunks run in waves; partial sums merge in chunk order so the result does
  // not depend on how many workers ran them.
  std::vector<double> sum(cells, 0.0), sumsq(cells, 0.0);
  const std::size_t wave = static_cast<std::size_t>(workers) * 4;
  for (std::size_t first = 0; first < chunks; first += wave) {
    const std::size_t count = std::min(wave, chunks - first);
    std::vector<Partial> parts(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < count; i = next++) parts[i] = run_chunk(first + i);
    };
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    for (const auto& p : parts) {
      for (std::size_t c = 0; c < cells; ++c) {
        sum[c] += p.sum[c];
        sumsq[c] += p.sumsq[c];
      }
    }
  }

  ErgodicRegion out;
  out.config = config;
  out.workers_used = workers;
  out.region.method = method;
  out.region.users = K;
  const auto n = static_cast<double>(config.realizations);
  for (std::size_t a = 0; a < A; ++a) {
    for (std::size_t s = 0; s < S; ++s) {
      RatePoint pt{splits[s], std::vector<double>(K), std::nullopt};
      if (method == Method::APNoma) pt.assignment = assignments[a];
      std::vector<double> se(K, 0.0);
      for (std::size_t k = 0; k < K; ++k) {
        const std::size_t c = (a * S + s) * K + k;
        pt.rates[k] = sum[c] / n;
        if (config.realizations > 1) {
          const double var = std::max(0.0, (sumsq[c] - sum[c] * sum[c] / n) / (n - 1.0));
          se[k] = std::sqrt(var / n);
        }
      }
      out.region.points.push_back(std::move(pt));
      out.standard_errors.push_back(std::move(se));
    }
  }
  if (K == 2 || K == 3) {
    std::vector<Eigen::VectorXd> rv;
    rv.reserve(out.region.points.size());
    for (const auto& pt : out.region.points) {
      rv.push_back(Eigen::Map<const Eigen::VectorXd>(pt.rates.data(), static_cast<Eigen::Index>(K)));
    }
    out.region.hull = region_hull(rv);
  }
  return out;
}

std::string to_csv(const ErgodicRegion& region) {
  CsvTable t = read_csv(to_csv(region.region));
  t.add_meta("seed", std::to_string(region.config.seed));
  t.add_meta("realizations", std::to_string(region.config.realizations));
  t.add_meta("workers", std::to_string(region.workers_used));
  t.add_meta("noise_variance", format_number(region.config.noise_variance));
  t.add_meta("assignment", region.config.fixed_assignment ? "fixed" : "by_rank");
  return write_csv(t);
}

}  // namespace anoma
