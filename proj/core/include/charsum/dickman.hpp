#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "charsum/arith.hpp"

namespace charsum::dickman {

/// Dickman-de Bruijn rho on a uniform grid {0, h, ..., u_max}, together with
/// P(u) = e^{-gamma} int_0^u rho(t) dt on the same grid.
///
/// The grid step divides 1, so every integer is a node and the kinks of rho
/// (at 1, 2, ...) never fall inside an interpolation stencil: all cubic
/// interpolation uses four nodes from a single unit interval [I, I+1].
class DickmanTable {
 public:
  /// u_max >= 2, 0 < h <= 1e-3 and 1/h an integer. After stepping, rho(2)
  /// is compared with 1 - log 2; AccuracyError if the gap exceeds `tolerance`.
  static DickmanTable build(double u_max = 10.0, double h = 1e-4, double tolerance = 1e-9);

  /// Same solver without the step-size precondition or accuracy check;
  /// used for convergence studies. steps_per_unit >= 3.
  static DickmanTable from_steps(double u_max, std::uint32_t steps_per_unit);

  double u_max() const noexcept { return u_max_; }
  double h() const noexcept { return 1.0 / static_cast<double>(steps_per_unit_); }
  std::uint32_t steps_per_unit() const noexcept { return steps_per_unit_; }

  /// rho(t): 0 for t < 0, 1 on [0, 1]. Throws std::out_of_range past u_max.
  double rho(double t) const;

  struct PValue {
    double value = 0.0;
    bool clamped = false;  ///< u > u_max; value is P(u_max)
  };
  /// P(u) for u >= 0 (std::invalid_argument for u < 0).
  PValue P(double u) const;

  std::span<const double> rho_grid() const noexcept { return rho_; }
  std::span<const double> P_grid() const noexcept { return P_; }

  /// Binary layout, little-endian: "DCKM", u32 version, f64 u_max, f64 h,
  /// then the rho grid and the P grid as raw f64.
  void save(const std::filesystem::path& path) const;
  static DickmanTable load(const std::filesystem::path& path);

  static constexpr std::uint32_t kFileVersion = 1;

 private:
  DickmanTable() = default;
  void solve();
  double interp(const std::vector<double>& grid, double t) const;

  double u_max_ = 0.0;
  std::uint32_t steps_per_unit_ = 0;
  std::vector<double> rho_;
  std::vector<double> P_;
};

/// int_0^1 tanh(y)/y dy + int_1^inf (tanh(y) - 1)/y dy = 0.8187...
/// The tail is cut at T with 2 e^{-2T} < tolerance/100; the discarded piece
/// is bounded by e^{-2T}/T. tolerance >= 1e-8.
double b0_constant(double tolerance = 1e-8);
/// Bound on |int_T^inf (tanh y - 1)/y dy| from |tanh y - 1| <= 2 e^{-2y}.
double b0_tail_bound(double T) noexcept;

/// e^{-gamma} log 2.
double eta_constant() noexcept;

/// prod_{p <= y} (1 - 1/p)^{-1}.
double mertens_product(double y, const arith::PrimeSieve& sieve);

/// sum of 1/n over y-friable n <= y^u.
double friable_harmonic(double y, double u, const arith::SmoothnessSieve& sieve);

}  // namespace charsum::dickman
