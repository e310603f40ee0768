#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>

#include "charsum/arith.hpp"
#include "charsum/rational.hpp"

namespace charsum::polya {

using cplx = std::complex<double>;

/// e(x) = exp(2 pi i x), with x reduced to [0, 1) before the trig call.
cplx unit_phase(double x) noexcept;
/// e(num/den) with the reduction done in integers.
cplx unit_phase(std::int64_t num, std::int64_t den) noexcept;
/// Fractional part of n * alpha, with the rounding error of the product
/// recovered by an fma so that large n keep full phase accuracy.
double phase_of(std::uint64_t n, double alpha) noexcept;

/// sum_{n <= |d|} chi_d(n) e(n/|d|) by direct summation.
cplx gauss_sum(arith::FundamentalDiscriminant d);
/// sqrt(d) for d > 0, i sqrt(|d|) for d < 0.
cplx gauss_sum_closed_form(arith::FundamentalDiscriminant d) noexcept;

/// G(chi_d)/(2 pi i) * sum_{1 <= |n| <= z} chi_d(n) (1 - e(-n alpha)) / n,
/// summing n and -n together. Direct O(z) evaluation.
cplx polya_rhs(arith::FundamentalDiscriminant d, double alpha, double z);

/// Same quantity for rational alpha = a/b. The summand numerator is periodic
/// with period L = lcm(|d|, b), so each residue class is summed in closed form
/// with digamma differences; the cost is O(L) instead of O(z).
cplx polya_rhs(arith::FundamentalDiscriminant d, rational::Fraction alpha, double z);

/// Default truncation |d| * ceil(log |d|).
double default_truncation(std::uint64_t modulus) noexcept;

enum class Restriction : std::uint8_t { all, friable, non_friable };

/// `d` is a fundamental discriminant, or 1 for the trivial character.
struct ExpSumSpec {
  std::int64_t d = 1;
  double z = 1.0;
  double y = 2.0;
  Restriction restriction = Restriction::all;
  std::uint64_t coprime_to = 1;

  /// Throws std::invalid_argument unless z >= 1, y >= 2 and d is 1 or fundamental.
  void validate() const;
};

/// sum over n <= z with the restriction and gcd(n, coprime_to) = 1 of chi(n) e(n alpha)/n.
/// Throws std::invalid_argument if `sieve` is null or shorter than z.
cplx exp_sum(const ExpSumSpec& spec, double alpha, const arith::SmoothnessSieve* sieve);

inline constexpr std::size_t kDefaultGrid = std::size_t{1} << 16;

struct SyzResult {
  double grid_max = 0.0;  ///< max of |F| over the grid alpha = j/G
  double slack = 0.0;     ///< Lipschitz bound pi * terms / G
  double value = 0.0;     ///< grid_max + slack >= true maximum
  std::size_t grid = 0;
  std::size_t terms = 0;  ///< non-friable n <= z with chi(n) != 0
};

/// Certified upper bound for max_alpha |sum_{n <= z, P+(n) > y} chi_d(n) e(n alpha)/n|.
/// F is evaluated on all G grid points at once by one inverse DFT. Any alpha
/// lies within 1/(2G) of the grid and |F'| <= 2 pi * terms, hence the slack.
/// Throws AccuracyError when the slack exceeds max_slack.
SyzResult s_yz_max(std::int64_t d, double y, double z, const arith::SmoothnessSieve& sieve,
                   std::size_t grid = kDefaultGrid,
                   double max_slack = std::numeric_limits<double>::infinity());

struct MembershipParams {
  double C = 2.0;  ///< odd family: y = e^{tau + C}
  double c = 2.0;  ///< even family: y = e^{sqrt(3) tau + c}
  double z = 0.0;  ///< truncation of the non-friable sum
  std::size_t grid = kDefaultGrid;
  double max_slack = 0.05;
};

/// Friability bound used for chi_d at level tau (depends on the parity of d).
double friability_bound(bool odd, double tau, double C, double c) noexcept;

struct Membership {
  bool member = false;
  double m = 0.0;
  double y = 0.0;
  bool evaluated = false;  ///< false when m <= tau short-circuited the S_{y,z} test
  SyzResult syz{};
};

/// d is in C_x(tau) iff m(chi_d) > tau and S_{y,z}(chi_d) <= 1 (certified).
/// `m` is passed in so scans do not recompute it. Throws std::invalid_argument
/// when tau < 1; propagates AccuracyError.
Membership c_x_membership(arith::FundamentalDiscriminant d, double m, double tau, const MembershipParams& params,
                          const arith::SmoothnessSieve& sieve);

}  // namespace charsum::polya
