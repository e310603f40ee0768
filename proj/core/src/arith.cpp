#include "charsum/arith.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace charsum::arith {

PrimeSieve::PrimeSieve(std::uint32_t limit) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("PrimeSieve: limit must be >= 2, got " + std::to_string(limit));
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  cofactor_.assign(static_cast<std::size_t>(limit) + 1, 1);
  spf_[1] = 1;
  // Linear sieve: every composite is struck exactly once, by its spf.
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    const std::uint32_t si = spf_[i];
    for (std::uint32_t p : primes_) {
      if (p > si) break;
      const std::uint64_t m = static_cast<std::uint64_t>(p) * i;
      if (m > limit) break;
      spf_[m] = p;
      cofactor_[m] = i;
    }
  }
}

SmoothnessSieve::SmoothnessSieve(std::uint32_t limit) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("SmoothnessSieve: limit must be >= 2, got " + std::to_string(limit));
  lpf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  lpf_[1] = 1;
  for (std::uint32_t p = 2; p <= limit; ++p) {
    if (lpf_[p] != 0) continue;
    // Ascending p, so the last writer is the largest prime factor.
    for (std::uint64_t m = p; m <= limit; m += p) lpf_[m] = p;
  }
}

int jacobi(std::int64_t a, std::int64_t n_signed) noexcept {
  auto n = static_cast<std::uint64_t>(n_signed);
  std::int64_t r = a % n_signed;
  if (r < 0) r += n_signed;
  auto x = static_cast<std::uint64_t>(r);
  int result = 1;
  while (x != 0) {
    const int tz = std::countr_zero(x);
    x >>= tz;
    if ((tz & 1) && ((n & 7) == 3 || (n & 7) == 5)) result = -result;
    if ((x & 3) == 3 && (n & 3) == 3) result = -result;
    const std::uint64_t t = n % x;
    n = x;
    x = t;
  }
  return n == 1 ? result : 0;
}

int kronecker(std::int64_t d, std::int64_t n) noexcept {
  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (d < 0) result = -1;
  }
  const int v = std::countr_zero(static_cast<std::uint64_t>(n));
  if (v > 0) {
    if ((d & 1) == 0) return 0;
    const std::int64_t r = ((d % 8) + 8) % 8;
    if ((v & 1) && (r == 3 || r == 5)) result = -result;
    n >>= v;
  }
  if (n == 1) return result;
  return result * jacobi(d, n);
}

bool is_squarefree(std::uint64_t n) noexcept {
  if (n == 0) return false;
  if (n % 4 == 0) return false;
  for (std::uint64_t p = 3; p * p <= n; p += 2) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

bool is_fundamental(std::int64_t d) noexcept {
  if (d == 0 || d == 1 || d == -1) return false;
  const std::int64_t r = ((d % 4) + 4) % 4;
  const auto abs_d = static_cast<std::uint64_t>(d < 0 ? -d : d);
  if (r == 1) return is_squarefree(abs_d);
  if (r != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t mr = ((m % 4) + 4) % 4;
  return (mr == 2 || mr == 3) && is_squarefree(abs_d / 4);
}

FundamentalDiscriminant::FundamentalDiscriminant(std::int64_t d) : d_(d) {
  if (!is_fundamental(d)) throw std::invalid_argument("not a fundamental discriminant: " + std::to_string(d));
}

std::vector<FundamentalDiscriminant> enumerate_fundamental(std::uint64_t x) {
  std::vector<FundamentalDiscriminant> out;
  if (x < 3) return out;
  std::vector<std::uint8_t> squarefree(x + 1, 1);
  squarefree[0] = 0;
  for (std::uint64_t k = 2; k * k <= x; ++k)
    for (std::uint64_t m = k * k; m <= x; m += k * k) squarefree[m] = 0;

  out.reserve(static_cast<std::size_t>(0.62 * static_cast<double>(x)) + 8);
  for (std::uint64_t a = 3; a <= x; ++a) {
    const auto sa = static_cast<std::int64_t>(a);
    bool neg = false;
    bool pos = false;
    switch (a % 4) {
      case 1: pos = squarefree[a]; break;
      case 3: neg = squarefree[a]; break;
      case 0: {
        const std::uint64_t m = a / 4;
        if (squarefree[m]) {
          // -a = 4(-m): need -m = 2,3 (mod 4), i.e. m = 2,1 (mod 4).
          neg = (m % 4 == 1 || m % 4 == 2);
          pos = (m % 4 == 2 || m % 4 == 3);
        }
        break;
      }
      default: break;
    }
    if (neg) out.push_back(FundamentalDiscriminant(-sa, FundamentalDiscriminant::Unchecked{}));
    if (pos) out.push_back(FundamentalDiscriminant(sa, FundamentalDiscriminant::Unchecked{}));
  }
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("euler_phi: n must be >= 1");
  std::uint64_t phi = n;
  for (std::uint64_t p : prime_divisors(n)) phi = phi / p * (p - 1);
  return phi;
}

int moebius(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("moebius: n must be >= 1");
  if (!is_squarefree(n)) return 0;
  return (prime_divisors(n).size() % 2 == 0) ? 1 : -1;
}

int omega(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("omega: n must be >= 1");
  return static_cast<int>(prime_divisors(n).size());
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t p = 3; p * p <= n; p += 2)
    if (n % p == 0) return false;
  return true;
}

}  // namespace charsum::arith
