#pragma once

#include <cstdint>
#include <limits>

namespace charsum::rational {

/// Exact rational num/den with den > 0 (not necessarily reduced).
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// Reduces and normalizes the sign; throws std::invalid_argument on den == 0.
Fraction reduced(Fraction f);

struct RationalApprox {
  std::int64_t a = 0;
  std::int64_t b = 1;
  double target = 0.0;   ///< alpha, as a double (informational)
  std::int64_t B = 1;    ///< denominator bound
  double quality = 0.0;  ///< |alpha - a/b|
};

/// Among reduced a/b with 1 <= b <= B, minimizes |b alpha - a| (ties: smallest b).
/// The minimizer is a continued-fraction convergent, found with exact integer
/// arithmetic; it satisfies |alpha - a/b| <= 1/(bB).
RationalApprox best_approx(Fraction alpha, std::int64_t B);
/// Floating-point alpha is converted to its exact dyadic value first.
RationalApprox best_approx(double alpha, std::int64_t B);

/// b if b is prime, else 1.
std::int64_t b0_of(std::int64_t b);

struct Exponent {
  double u = 0.0;
  bool clamped = false;  ///< beta == k/l exactly: u is +infinity, reported as u_max
};

/// u with |beta - k/l| = 1/(l e^{scale tau u}). Throws std::invalid_argument
/// when |beta - k/l| > 1/l or tau <= 0 or l < 1.
Exponent exponent_u(double beta, std::int64_t k, std::int64_t l, double tau, double scale,
                    double u_max = std::numeric_limits<double>::infinity());
/// Exact-rational beta.
Exponent exponent_u(Fraction beta, std::int64_t k, std::int64_t l, double tau, double scale,
                    double u_max = std::numeric_limits<double>::infinity());

/// Floor applied to the tau^10 denominator bound at desk scale.
inline constexpr std::int64_t kDenominatorFloor = 32;

/// Nominal bound floor(tau^10), saturated to int64.
std::int64_t nominal_denominator_bound(double tau);
/// max(kDenominatorFloor, nominal_denominator_bound(tau)).
std::int64_t denominator_bound(double tau);

}  // namespace charsum::rational
