#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <asyncnoma/corr.hpp>
#include <asyncnoma/csv.hpp>
#include <asyncnoma/dof.hpp>
#include <asyncnoma/errors.hpp>
#include <asyncnoma/fading.hpp>
#include <asyncnoma/pulse.hpp>
#include <asyncnoma/regions.hpp>
#include <asyncnoma/sumrate.hpp>
#include <asyncnoma/superposition.hpp>

#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace anoma;

namespace {

struct PulseOptions {
  std::string kind = "rect";
  double T = 1.0;
  double beta = 0.5;
  int lobes = 4;

  void attach(CLI::App* cmd) {
    cmd->add_option("--pulse", kind, "Pulse shape: rect, sinc or rrc")->capture_default_str();
    cmd->add_option("--T", T, "Symbol interval")->capture_default_str();
    cmd->add_option("--beta", beta, "RRC rolloff")->capture_default_str();
    cmd->add_option("--lobes", lobes, "Side lobes kept on each side")->capture_default_str();
  }
  Pulse make() const { return make_pulse(pulse_kind_from_string(kind), T, beta, lobes); }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw cli::ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw cli::ConfigError("failed writing '" + path + "'");
}

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(method_from_string(item));
  }
  if (out.empty()) throw ParameterError("no methods given");
  return out;
}

std::string with_meta(const std::string& csv, const std::vector<std::pair<std::string, std::string>>& meta) {
  CsvTable t = read_csv(csv);
  for (const auto& [k, v] : meta) t.add_meta(k, v);
  return write_csv(t);
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_number(v[i]);
  return s;
}

cli::RunConfig config_with_seed(const std::string& path, std::optional<std::uint64_t> flag_seed) {
  cli::RunConfig c = cli::load_config(path);
  if (const auto env = cli::seed_from_env()) c.seed = *env;
  if (flag_seed) c.seed = *flag_seed;
  c.fading.seed = c.seed;
  return c;
}

// Cut "k=value": the 2D section of a 3-user hull at R_k = value.
std::string cut_csv(const RateRegion& region, int axis, double value) {
  CsvTable t;
  t.add_meta("method", std::string(to_string(region.method)));
  t.add_meta("cut", "R" + std::to_string(axis + 1) + "=" + format_number(value));
  for (int i = 0; i < 3; ++i) {
    if (i != axis) t.header.push_back("R" + std::to_string(i + 1));
  }
  const ConvexHull slice = region.hull->slice(axis, value);
  for (const auto& v : slice.vertices()) t.rows.push_back({format_number(v[0]), format_number(v[1])});
  return write_csv(t);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate regions, interference and power allocation for asynchronous NOMA"};
  app.require_subcommand(1);

  // iui
  auto* iui_cmd = app.add_subcommand("iui", "Inter-user interference over a delay grid");
  PulseOptions iui_pulse;
  iui_pulse.attach(iui_cmd);
  int iui_grid = 101;
  double iui_tau_max = -1.0;
  std::string iui_out;
  iui_cmd->add_option("--grid", iui_grid, "Number of delays in [0, tau-max]")->capture_default_str();
  iui_cmd->add_option("--tau-max", iui_tau_max, "Largest delay (default T/2)");
  iui_cmd->add_option("-o,--output", iui_out, "Output CSV (default stdout)");

  // region
  auto* region_cmd = app.add_subcommand("region", "Rate regions for a scenario file");
  std::string region_config, region_methods = "pnoma,apnoma,tnoma", region_dir = ".";
  std::optional<int> region_resolution;
  std::vector<std::string> region_cuts;
  region_cmd->add_option("-c,--config", region_config, "Scenario JSON")->required();
  region_cmd->add_option("--methods", region_methods, "Comma-separated methods")->capture_default_str();
  region_cmd->add_option("--output-dir", region_dir, "Directory for region_<method>.csv")->capture_default_str();
  region_cmd->add_option("--resolution", region_resolution, "Simplex points per axis");
  region_cmd->add_option("--cut", region_cuts, "3-user section k=value, e.g. 1=1 (repeatable)");

  // sumrate
  auto* sum_cmd = app.add_subcommand("sumrate", "Two-user maximum sum rate against total power");
  std::string sum_config, sum_methods = "pnoma,apnoma,tnoma", sum_out, sum_spacing = "db";
  double sigma1 = 0.1, sigma2 = 1.0, p_min = 0.1, p_max = 100.0, sum_tau = 0.5;
  int sum_points = 101;
  std::optional<double> sum_g;
  PulseOptions sum_pulse;
  sum_pulse.attach(sum_cmd);
  sum_cmd->add_option("-c,--config", sum_config, "Scenario JSON (sigma, delays, pulse, sumrate range)");
  sum_cmd->add_option("--sigma1", sigma1)->capture_default_str();
  sum_cmd->add_option("--sigma2", sigma2)->capture_default_str();
  sum_cmd->add_option("--p-min", p_min, "Smallest total power (linear)")->capture_default_str();
  sum_cmd->add_option("--p-max", p_max, "Largest total power (linear)")->capture_default_str();
  sum_cmd->add_option("--points", sum_points)->capture_default_str();
  sum_cmd->add_option("--spacing", sum_spacing, "Power grid spacing: db or linear")->capture_default_str();
  sum_cmd->add_option("--tau", sum_tau, "Delay of the second user when g is derived from the pulse")
      ->capture_default_str();
  sum_cmd->add_option("--g", sum_g, "Interference coefficient (overrides pulse and tau)");
  sum_cmd->add_option("--methods", sum_methods)->capture_default_str();
  sum_cmd->add_option("-o,--output", sum_out, "Output CSV (default stdout)");

  // dof
  auto* dof_cmd = app.add_subcommand("dof", "Gram matrix and Gram-Schmidt extension of truncated sincs");
  dof_cmd->alias("dof-example");
  double dof_shift = 0.5, dof_step = 0.01, dof_bandwidth = 0.5;
  std::size_t dof_n = 5;
  std::string dof_rule = "sampled", dof_out;
  dof_cmd->add_option("--shift", dof_shift, "Center of the extra sinc")->capture_default_str();
  dof_cmd->add_option("--N", dof_n, "Number of shifted sincs")->capture_default_str();
  dof_cmd->add_option("--bandwidth", dof_bandwidth, "W")->capture_default_str();
  dof_cmd->add_option("--rule", dof_rule, "Inner product: sampled or simpson")->capture_default_str();
  dof_cmd->add_option("--step", dof_step, "Quadrature step in units of T")->capture_default_str();
  dof_cmd->add_option("-o,--output", dof_out, "Output CSV (default stdout)");

  // constellation
  auto* con_cmd = app.add_subcommand("constellation", "4-PSK over 8-QAM superposition");
  double alpha = 0.8, con_power = 1.0;
  std::string con_out;
  con_cmd->add_option("--alpha", alpha, "Power share of the coarse layer")->capture_default_str();
  con_cmd->add_option("--power", con_power, "Total power")->capture_default_str();
  con_cmd->add_option("-o,--output", con_out, "Output CSV (default stdout)");

  // fading
  auto* fad_cmd = app.add_subcommand("fading", "Ergodic rate regions over Rayleigh fading");
  std::string fad_config, fad_methods = "pnoma,apnoma,tnoma", fad_dir = ".";
  std::optional<std::size_t> fad_real;
  std::optional<unsigned> fad_workers;
  std::optional<std::uint64_t> fad_seed;
  std::optional<int> fad_resolution;
  bool fad_fixed = false;
  fad_cmd->add_option("-c,--config", fad_config, "Scenario JSON with a fading block")->required();
  fad_cmd->add_option("--methods", fad_methods)->capture_default_str();
  fad_cmd->add_option("--output-dir", fad_dir)->capture_default_str();
  fad_cmd->add_option("--realizations", fad_real);
  fad_cmd->add_option("--workers", fad_workers);
  fad_cmd->add_option("--seed", fad_seed, "Overrides ASYNC_NOMA_SEED and the config seed");
  fad_cmd->add_option("--resolution", fad_resolution, "Simplex points per axis");
  fad_cmd->add_flag("--fixed-assignment", fad_fixed, "Tie delay slots to user ids");

  // corr
  auto* corr_cmd = app.add_subcommand("corr", "Correlation matrix R of a delay profile");
  PulseOptions corr_pulse;
  corr_pulse.attach(corr_cmd);
  std::vector<double> corr_delays{0.0, 0.5};
  std::size_t corr_n = 8;
  std::string corr_out;
  corr_cmd->add_option("--delays", corr_delays, "Per-user delays")->capture_default_str();
  corr_cmd->add_option("--N", corr_n, "Block length")->capture_default_str();
  corr_cmd->add_option("-o,--output", corr_out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (iui_cmd->parsed()) {
      const Pulse pulse = iui_pulse.make();
      if (iui_grid < 2) throw ParameterError("--grid needs at least 2 points");
      const double tau_max = iui_tau_max >= 0.0 ? iui_tau_max : pulse.symbol_interval() / 2.0;
      const OverallPulse g(pulse);
      CsvTable t;
      t.add_meta("pulse", to_json(pulse));
      t.header = {"tau", "iui"};
      for (int i = 0; i < iui_grid; ++i) {
        const double tau = tau_max * i / (iui_grid - 1);
        t.rows.push_back({format_number(tau), format_number(iui(g, tau))});
      }
      emit(write_csv(t), iui_out);
    } else if (region_cmd->parsed()) {
      const auto cfg = config_with_seed(region_config, std::nullopt);
      const Scenario sc = cfg.scenario();
      const int res = region_resolution.value_or(cfg.resolution());
      std::vector<std::pair<int, double>> cuts;
      for (const auto& c : region_cuts) {
        const auto eq = c.find('=');
        if (eq == std::string::npos) throw ParameterError("--cut expects k=value");
        const int axis = std::stoi(c.substr(0, eq)) - 1;
        if (axis < 0 || axis > 2 || sc.users.size() != 3) throw ParameterError("--cut needs three users and k in 1..3");
        cuts.emplace_back(axis, std::stod(c.substr(eq + 1)));
      }
      for (const Method m : parse_methods(region_methods)) {
        const RateRegion r = region(sc, m, res);
        const std::string name = std::string(to_string(m));
        emit(with_meta(to_csv(r), {{"total_power", format_number(sc.total_power)},
                                   {"pulse", to_json(sc.pulse)},
                                   {"delays", join(sc.delays)}}),
             (fs::path(region_dir) / ("region_" + name + ".csv")).string());
        for (const auto& [axis, value] : cuts) {
          emit(cut_csv(r, axis, value),
               (fs::path(region_dir) / ("region_" + name + "_cut_R" + std::to_string(axis + 1) + ".csv")).string());
        }
      }
    } else if (sum_cmd->parsed()) {
      Pulse pulse = sum_pulse.make();
      std::vector<double> delays{0.0, sum_tau};
      if (!sum_config.empty()) {
        const auto cfg = config_with_seed(sum_config, std::nullopt);
        if (cfg.sigma.size() != 2) throw ParameterError("sumrate needs a two-user config");
        sigma1 = cfg.sigma[0];
        sigma2 = cfg.sigma[1];
        pulse = cfg.pulse;
        delays = cfg.delays;
        p_min = cfg.p_min;
        p_max = cfg.p_max;
        sum_points = cfg.points;
      }
      if (!(p_min > 0.0 && p_max > p_min)) throw ParameterError("need 0 < p-min < p-max");
      if (sum_points < 2) throw ParameterError("--points needs at least 2");
      const double g = sum_g ? *sum_g : interference_coefficient(OverallPulse(pulse), delays[0], delays[1]);
      std::vector<double> grid(static_cast<std::size_t>(sum_points));
      for (int i = 0; i < sum_points; ++i) {
        const double f = static_cast<double>(i) / (sum_points - 1);
        if (sum_spacing == "db") {
          grid[i] = std::pow(10.0, std::log10(p_min) + f * (std::log10(p_max) - std::log10(p_min)));
        } else if (sum_spacing == "linear") {
          grid[i] = p_min + f * (p_max - p_min);
        } else {
          throw ParameterError("--spacing must be db or linear");
        }
      }
      std::vector<SumRateResult> curve;
      for (const Method m : parse_methods(sum_methods)) {
        const auto part = sweep_sumrate(m, sigma1, sigma2, g, grid);
        curve.insert(curve.end(), part.begin(), part.end());
      }
      emit(with_meta(to_csv(curve),
                     {{"sigma1", format_number(sigma1)}, {"sigma2", format_number(sigma2)}, {"g", format_number(g)}}),
           sum_out);
    } else if (dof_cmd->parsed()) {
      TruncatedBasisSet basis;
      basis.bandwidth = dof_bandwidth;
      basis.block_length = dof_n;
      basis.step = dof_step;
      if (dof_rule == "simpson") {
        basis.rule = InnerProductRule::Simpson;
      } else if (dof_rule != "sampled") {
        throw ParameterError("--rule must be sampled or simpson");
      }
      emit(to_csv(extend_basis(basis, dof_shift)), dof_out);
    } else if (con_cmd->parsed()) {
      const Superposition s = example_superposition(alpha, con_power);
      emit(with_meta(to_csv(s), {{"alpha", format_number(alpha)},
                                 {"min_distance", format_number(s.combined.minimum_distance())}}),
           con_out);
    } else if (fad_cmd->parsed()) {
      auto cfg = config_with_seed(fad_config, fad_seed);
      if (fad_real) cfg.fading.realizations = *fad_real;
      if (fad_workers) cfg.fading.workers = *fad_workers;
      if (fad_fixed) cfg.fading.fixed_assignment = true;
      const Scenario sc = cfg.scenario();
      const int res = fad_resolution.value_or(cfg.resolution());
      for (const Method m : parse_methods(fad_methods)) {
        const ErgodicRegion r = ergodic_region(sc, m, cfg.fading, res);
        emit(to_csv(r), (fs::path(fad_dir) / ("fading_" + std::string(to_string(m)) + ".csv")).string());
      }
    } else if (corr_cmd->parsed()) {
      const OverallPulse g(corr_pulse.make());
      const DelayProfile profile(corr_delays);
      const CorrBlockMatrix R = build_R(g, profile, corr_n);
      const SzegoLimits lim = szego_extremes(GeneratingMatrix(g, profile));
      emit(with_meta(to_csv(R), {{"szego_max", format_number(lim.lambda_max)},
                                 {"szego_min", format_number(lim.lambda_min)}}),
           corr_out);
    }
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: malformed number in " << e.what() << '\n';
    return 2;
  }
  return 0;
}
