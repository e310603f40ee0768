#include "charsum/config.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace charsum {

namespace {

using json = nlohmann::json;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("config: ") + what);
}

}  // namespace

void Config::validate() const {
  require(x >= 3, "x must be >= 3");
  require(x <= 4'000'000'000ULL, "x must be <= 4e9");
  require(std::isfinite(tau) && tau >= 1.0, "tau must be >= 1");
  for (double t : tau_grid) require(std::isfinite(t), "tau_grid entries must be finite");
  for (double b : beta) require(b >= 0.0 && b <= 1.0, "beta entries must lie in [0, 1]");
  require(std::isfinite(C) && std::isfinite(c), "C and c must be finite");
  require(z == 0.0 || (std::isfinite(z) && z >= 1.0 && z <= 1e8), "z must be 0 or in [1, 1e8]");
  require(grid >= 16 && grid <= (std::size_t{1} << 26), "grid must be in [16, 2^26]");
  require(max_slack > 0.0, "max_slack must be > 0");
  require(dmax == 0 || (dmax >= 2 && dmax <= 100), "dmax must be 0 or in [2, 100]");
  require(u_max >= 2.0 && u_max <= 1000.0, "u_max must be in [2, 1000]");
  require(h > 0.0 && h <= 1e-3, "h must be in (0, 1e-3]");
  const double inv = 1.0 / h;
  require(std::fabs(inv - std::round(inv)) < 1e-6, "1/h must be an integer");
  require(budget_x >= 3, "budget_x must be >= 3");
}

double Config::effective_z() const {
  if (z != 0.0) return z;
  return std::ceil(std::pow(static_cast<double>(x), 21.0 / 40.0));
}

unsigned Config::effective_threads() const {
  if (threads != 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::string to_json(const Config& cfg) {
  json j;  // std::map-backed: keys come out sorted
  j["x"] = cfg.x;
  j["tau"] = cfg.tau;
  j["tau_grid"] = cfg.tau_grid;
  j["beta"] = cfg.beta;
  j["C"] = cfg.C;
  j["c"] = cfg.c;
  j["z"] = cfg.z;
  j["grid"] = cfg.grid;
  j["max_slack"] = cfg.max_slack;
  j["dmax"] = cfg.dmax;
  j["u_max"] = cfg.u_max;
  j["h"] = cfg.h;
  j["threads"] = cfg.threads;
  j["seed"] = cfg.seed;
  j["budget_x"] = cfg.budget_x;
  return j.dump();
}

Config config_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  Config cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "x") cfg.x = value.get<std::uint64_t>();
    else if (key == "tau") cfg.tau = value.get<double>();
    else if (key == "tau_grid") cfg.tau_grid = value.get<std::vector<double>>();
    else if (key == "beta") cfg.beta = value.get<std::vector<double>>();
    else if (key == "C") cfg.C = value.get<double>();
    else if (key == "c") cfg.c = value.get<double>();
    else if (key == "z") cfg.z = value.get<double>();
    else if (key == "grid") cfg.grid = value.get<std::size_t>();
    else if (key == "max_slack") cfg.max_slack = value.get<double>();
    else if (key == "dmax") cfg.dmax = value.get<std::uint32_t>();
    else if (key == "u_max") cfg.u_max = value.get<double>();
    else if (key == "h") cfg.h = value.get<double>();
    else if (key == "threads") cfg.threads = value.get<unsigned>();
    else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
    else if (key == "budget_x") cfg.budget_x = value.get<std::uint64_t>();
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  return cfg;
}

}  // namespace charsum
