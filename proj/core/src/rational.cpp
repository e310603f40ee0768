#include "charsum/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace charsum::rational {

namespace {

__extension__ using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Best approximation of p/q (q > 0) by convergents and the last admissible
// semiconvergent; compares |b p - a q| exactly.
RationalApprox best_approx_exact(i128 p, i128 q, std::int64_t B, double target) {
  if (B < 1) throw std::invalid_argument("best_approx: B must be >= 1");
  const i128 p0 = p;
  const i128 q0 = q;
  i128 h2 = 0, h1 = 1, k2 = 1, k1 = 0;
  i128 best_a = 0, best_b = 0, best_err = -1;

  auto consider = [&](i128 a, i128 b) {
    const i128 err = abs128(b * p0 - a * q0);
    if (best_err < 0 || err < best_err || (err == best_err && b < best_b)) {
      best_err = err;
      best_a = a;
      best_b = b;
    }
  };

  while (true) {
    const i128 ai = floor_div(p, q);
    const i128 h = ai * h1 + h2;
    const i128 k = ai * k1 + k2;
    if (k > B) {
      // Largest semiconvergent (h2 + j h1)/(k2 + j k1) with denominator <= B.
      if (k1 > 0) {
        const i128 j = (static_cast<i128>(B) - k2) / k1;
        if (j >= 1) consider(h2 + j * h1, k2 + j * k1);
      }
      break;
    }
    consider(h, k);
    const i128 r = p - ai * q;
    if (r == 0) break;
    p = q;
    q = r;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }

  RationalApprox out;
  out.a = static_cast<std::int64_t>(best_a);
  out.b = static_cast<std::int64_t>(best_b);
  out.B = B;
  out.target = target;
  out.quality = static_cast<double>(best_err) / (static_cast<double>(q0) * static_cast<double>(best_b));
  return out;
}

}  // namespace

Fraction reduced(Fraction f) {
  if (f.den == 0) throw std::invalid_argument("fraction with zero denominator");
  if (f.den < 0) {
    f.num = -f.num;
    f.den = -f.den;
  }
  const std::int64_t g = std::gcd(f.num, f.den);
  if (g > 1) {
    f.num /= g;
    f.den /= g;
  }
  return f;
}

RationalApprox best_approx(Fraction alpha, std::int64_t B) {
  const Fraction r = reduced(alpha);
  return best_approx_exact(r.num, r.den, B, static_cast<double>(r.num) / static_cast<double>(r.den));
}

RationalApprox best_approx(double alpha, std::int64_t B) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("best_approx: alpha must be finite");
  if (B > (std::int64_t{1} << 62)) throw std::invalid_argument("best_approx: B above 2^62");
  // alpha = m 2^e exactly; keep the denominator at most 2^64.
  int e = 0;
  const double m = std::frexp(alpha, &e);
  i128 mant = static_cast<i128>(std::ldexp(m, 53));
  int den_exp = 53 - e;
  if (den_exp < 0) {
    mant <<= -den_exp;
    den_exp = 0;
  }
  if (den_exp > 64) {
    const int shift = den_exp - 64;
    mant = shift >= 120 ? 0 : (mant >> shift);
    den_exp = 64;
  }
  const i128 den = static_cast<i128>(1) << den_exp;
  return best_approx_exact(mant, den, B, alpha);
}

std::int64_t b0_of(std::int64_t b) {
  if (b < 1) throw std::invalid_argument("b0_of: b must be >= 1");
  if (b < 2) return 1;
  for (std::int64_t p = 2; p * p <= b; ++p)
    if (b % p == 0) return 1;
  return b;
}

namespace {

Exponent exponent_from_scaled_distance(double scaled, double tau, double scale, double u_max) {
  // scaled = l |beta - k/l|
  if (scaled == 0.0) return {u_max, true};
  return {-std::log(scaled) / (scale * tau), false};
}

void check_exponent_args(std::int64_t l, double tau, double scale) {
  if (l < 1) throw std::invalid_argument("exponent_u: l must be >= 1");
  if (!(tau > 0.0)) throw std::invalid_argument("exponent_u: tau must be > 0");
  if (!(scale > 0.0)) throw std::invalid_argument("exponent_u: scale must be > 0");
}

}  // namespace

Exponent exponent_u(double beta, std::int64_t k, std::int64_t l, double tau, double scale, double u_max) {
  check_exponent_args(l, tau, scale);
  const double scaled = std::fabs(std::fma(static_cast<double>(l), beta, -static_cast<double>(k)));
  if (scaled > 1.0) throw std::invalid_argument("exponent_u: |beta - k/l| exceeds 1/l");
  return exponent_from_scaled_distance(scaled, tau, scale, u_max);
}

Exponent exponent_u(Fraction beta, std::int64_t k, std::int64_t l, double tau, double scale, double u_max) {
  check_exponent_args(l, tau, scale);
  const Fraction b = reduced(beta);
  // l |N/q - k/l| = |N l - k q| / q
  const i128 num = abs128(static_cast<i128>(b.num) * l - static_cast<i128>(k) * b.den);
  if (num > b.den) throw std::invalid_argument("exponent_u: |beta - k/l| exceeds 1/l");
  return exponent_from_scaled_distance(static_cast<double>(num) / static_cast<double>(b.den), tau, scale, u_max);
}

std::int64_t nominal_denominator_bound(double tau) {
  const double v = std::pow(tau, 10.0);
  if (!(v < 4.0e18)) return std::int64_t{1} << 62;
  return static_cast<std::int64_t>(std::floor(v));
}

std::int64_t denominator_bound(double tau) {
  return std::max(kDenominatorFloor, nominal_denominator_bound(tau));
}

}  // namespace charsum::rational
