#include "run_config.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace anoma::cli {

Scenario RunConfig::scenario() const {
  Scenario s;
  s.users = make_users(sigma);
  s.total_power = total_power;
  s.pulse = pulse;
  s.delays = delays;
  s.block_length = block_length;
  s.validate();
  return s;
}

int RunConfig::resolution() const {
  if (grid_resolution) return *grid_resolution;
  return delays.size() <= 2 ? 201 : 61;
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  try {
    const auto j = nlohmann::json::parse(text);
    c.total_power = j.value("total_power", c.total_power);
    c.sigma = j.at("sigma").get<std::vector<double>>();
    c.delays = j.at("delays").get<std::vector<double>>();
    if (j.contains("pulse")) c.pulse = pulse_from_json(j.at("pulse").dump());
    c.block_length = j.value("block_length", c.block_length);
    if (j.contains("grid_resolution")) c.grid_resolution = j.at("grid_resolution").get<int>();
    c.seed = j.value("seed", c.seed);
    if (j.contains("fading")) {
      const auto& f = j.at("fading");
      c.fading.realizations = f.value("realizations", c.fading.realizations);
      c.fading.noise_variance = f.value("noise_variance", c.fading.noise_variance);
      c.fading.channel_variance = f.value("channel_variance", c.fading.channel_variance);
      c.fading.workers = f.value("workers", c.fading.workers);
      c.fading.fixed_assignment = f.value("fixed_assignment", c.fading.fixed_assignment);
    }
    if (j.contains("sumrate")) {
      const auto& s = j.at("sumrate");
      c.p_min = s.value("p_min", c.p_min);
      c.p_max = s.value("p_max", c.p_max);
      c.points = s.value("points", c.points);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (c.sigma.size() != c.delays.size()) throw ConfigError("config needs one sigma per delay");
  c.fading.seed = c.seed;
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::optional<std::uint64_t> seed_from_env() {
  const char* v = std::getenv("ASYNC_NOMA_SEED");
  if (!v || !*v) return std::nullopt;
  std::uint64_t seed = 0;
  const char* end = v + std::strlen(v);
  const auto [ptr, ec] = std::from_chars(v, end, seed);
  if (ec != std::errc() || ptr != end) throw ConfigError("ASYNC_NOMA_SEED must be an unsigned integer");
  return seed;
}

}  // namespace anoma::cli
