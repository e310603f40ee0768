#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace charsum {

/// Every knob of a scan or verification run. Serialized next to every
/// output, so two outputs with equal Config are directly comparable.
struct Config {
  std::uint64_t x = 10'000;
  double tau = 2.0;
  std::vector<double> tau_grid{0.5, 1.0, 1.5, 2.0, 2.5};
  std::vector<double> beta{0.25, 1.0 / 3.0, 0.5};
  double C = 2.0;  ///< odd family: y = e^{tau + C}
  double c = 2.0;  ///< even family: y = e^{sqrt(3) tau + c}
  /// Truncation of the non-friable sum in the C_x(tau) test; 0 selects x^{21/40}.
  double z = 0.0;
  std::size_t grid = std::size_t{1} << 16;
  double max_slack = 0.05;
  /// Largest conductor searched for the pretentious minimizer; 0 selects max(10, ceil(log y)).
  std::uint32_t dmax = 0;
  double u_max = 10.0;
  double h = 1e-4;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
  std::uint64_t seed = 20240601;
  /// Scans with x above this are refused.
  std::uint64_t budget_x = 1'000'000;

  /// Throws std::invalid_argument when a field is outside its module's preconditions.
  void validate() const;

  /// z actually used: the explicit value or ceil(x^{21/40}).
  double effective_z() const;
  unsigned effective_threads() const;

  friend bool operator==(const Config&, const Config&) = default;
};

/// Stable JSON (sorted keys).
std::string to_json(const Config& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
Config config_from_json(const std::string& text);

}  // namespace charsum
