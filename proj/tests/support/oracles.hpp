#pragma once

// Slow, definitional reference implementations used only by tests.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b = mod(b, m);
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % m);
    b = static_cast<std::int64_t>((__int128)b * b % m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

/// Legendre symbol (a/p) for an odd prime p by Euler's criterion.
inline int legendre(std::int64_t a, std::int64_t p) {
  const std::int64_t r = powmod(a, (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

/// (d/2) for d = 0, 1 mod 4 from its definition.
inline int kronecker_two(std::int64_t d) {
  if (d % 2 == 0) return 0;
  const std::int64_t r = mod(d, 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

/// chi_d(n) for a discriminant d via prime factorization of n.
inline int chi(std::int64_t d, std::int64_t n) {
  if (n == 0) return std::llabs(d) == 1 ? 1 : 0;
  int sign = 1;
  if (n < 0) {
    n = -n;
    sign = d < 0 ? -1 : 1;
  }
  int v = sign;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      v *= (p == 2) ? kronecker_two(d) : legendre(d, p);
      n /= p;
    }
  }
  if (n > 1) v *= (n == 2) ? kronecker_two(d) : legendre(d, n);
  return v;
}

inline bool squarefree(std::int64_t n) {
  n = std::llabs(n);
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

/// Definition of a fundamental discriminant.
inline bool fundamental(std::int64_t d) {
  if (d == 0 || d == 1) return false;
  if (mod(d, 4) == 1) return squarefree(d);
  if (mod(d, 4) != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t r = mod(m, 4);
  return (r == 2 || r == 3) && squarefree(m);
}

inline std::uint32_t largest_prime_factor(std::uint32_t n) {
  if (n <= 1) return 1;
  std::uint32_t best = 1;
  for (std::uint32_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      best = p;
      n /= p;
    }
  return n > 1 ? n : best;
}

/// max |S(t)| over 1 <= t < q with the smallest maximizer, by scanning every t.
struct MaxSum {
  std::int64_t M;
  std::uint64_t N;
};
inline MaxSum max_sum(std::int64_t d) {
  const std::int64_t q = std::llabs(d);
  std::int64_t S = 0, M = -1;
  std::uint64_t N = 0;
  for (std::int64_t t = 1; t < q; ++t) {
    S += chi(d, t);
    if (std::llabs(S) > M) {
      M = std::llabs(S);
      N = static_cast<std::uint64_t>(t);
    }
  }
  return {M, N};
}

/// Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
