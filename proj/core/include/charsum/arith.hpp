#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace charsum::arith {

/// Primes up to `limit` together with a smallest-prime-factor table.
///
/// Built once by a linear sieve; immutable afterwards, so a single instance
/// may be shared by any number of reader threads.
class PrimeSieve {
 public:
  explicit PrimeSieve(std::uint32_t limit);

  std::uint32_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  /// Smallest prime factor of n, for 2 <= n <= limit(). spf(1) == 1.
  std::uint32_t spf(std::uint32_t n) const noexcept { return spf_[n]; }
  /// n / spf(n); cached so hot loops avoid the division.
  std::uint32_t cofactor(std::uint32_t n) const noexcept { return cofactor_[n]; }
  bool is_prime(std::uint32_t n) const noexcept { return n >= 2 && spf_[n] == n; }

  std::span<const std::uint32_t> spf_table() const noexcept { return spf_; }
  std::span<const std::uint32_t> cofactor_table() const noexcept { return cofactor_; }

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> primes_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> cofactor_;
};

/// Largest-prime-factor table deciding y-friability of every n <= limit.
class SmoothnessSieve {
 public:
  explicit SmoothnessSieve(std::uint32_t limit);

  std::uint32_t limit() const noexcept { return limit_; }
  /// Largest prime factor P+(n); lpf(1) == 1.
  std::uint32_t lpf(std::uint32_t n) const noexcept { return lpf_[n]; }
  /// n is y-friable iff lpf(n) <= y.
  bool is_friable(std::uint32_t n, double y) const noexcept { return static_cast<double>(lpf_[n]) <= y; }

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> lpf_;
};

/// Kronecker symbol (d/n), i.e. chi_d(n) when d is a fundamental discriminant.
/// Total: (d/0) = 1 for d = +-1 and 0 otherwise; (d/-1) = -1 iff d < 0.
int kronecker(std::int64_t d, std::int64_t n) noexcept;

/// Jacobi symbol (a/n) for odd positive n.
int jacobi(std::int64_t a, std::int64_t n) noexcept;

bool is_squarefree(std::uint64_t n) noexcept;

/// d = 1 (mod 4) squarefree, or d = 4m with m = 2,3 (mod 4) squarefree.
/// d = 1 and d = 0 are rejected.
bool is_fundamental(std::int64_t d) noexcept;

/// A validated fundamental discriminant.
class FundamentalDiscriminant {
 public:
  /// Throws std::invalid_argument when `d` is not fundamental.
  explicit FundamentalDiscriminant(std::int64_t d);

  std::int64_t value() const noexcept { return d_; }
  /// |d|, the conductor of chi_d.
  std::uint64_t modulus() const noexcept { return static_cast<std::uint64_t>(d_ < 0 ? -d_ : d_); }
  bool odd() const noexcept { return d_ < 0; }
  bool even() const noexcept { return d_ > 0; }
  /// chi_d(-1)
  int parity_sign() const noexcept { return d_ < 0 ? -1 : 1; }

  friend bool operator==(FundamentalDiscriminant, FundamentalDiscriminant) = default;

 private:
  struct Unchecked {};
  FundamentalDiscriminant(std::int64_t d, Unchecked) noexcept : d_(d) {}
  friend std::vector<FundamentalDiscriminant> enumerate_fundamental(std::uint64_t x);

  std::int64_t d_;
};

/// All fundamental discriminants with 1 < |d| <= x, ordered by |d| with the
/// negative one first at equal |d|. Squarefreeness comes from a sieve of
/// squares, so the whole enumeration is linear in x.
std::vector<FundamentalDiscriminant> enumerate_fundamental(std::uint64_t x);

std::uint64_t euler_phi(std::uint64_t n);
int moebius(std::uint64_t n);
/// Number of distinct prime factors.
int omega(std::uint64_t n);
bool is_prime(std::uint64_t n) noexcept;

/// Distinct prime factors of n in increasing order (trial division).
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

}  // namespace charsum::arith
