#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "charsum/arith.hpp"

namespace charsum::sums {

/// chi_d(0..limit); values[0] == 0 so that at(n) is a plain index.
struct CharacterValues {
  arith::FundamentalDiscriminant d;
  std::vector<std::int8_t> values;

  std::uint32_t limit() const noexcept { return static_cast<std::uint32_t>(values.size() - 1); }
  int at(std::uint32_t n) const noexcept { return values[n]; }
};

/// Writes chi_d(n) into out[n] for 0 <= n < out.size(), using
/// chi(n) = chi(spf(n)) chi(n / spf(n)); only primes go through kronecker().
/// Throws std::invalid_argument if the sieve does not cover out.size() - 1.
void fill_char_values(std::int64_t d, const arith::PrimeSieve& sieve, std::span<std::int8_t> out);

CharacterValues char_values(arith::FundamentalDiscriminant d, std::uint32_t limit, const arith::PrimeSieve& sieve);

struct MaxPartialSum {
  std::int64_t M = 0;   ///< max_{1 <= t < |d|} |S(t)|
  std::uint64_t N = 0;  ///< smallest maximizing t
};

/// Half-range scan. |S(|d|-1-t)| = |S(t)|, so a maximum is always reached at
/// some t <= (|d|-1)/2 and the smallest maximizer lies there too.
MaxPartialSum max_partial_sum(arith::FundamentalDiscriminant d, const arith::PrimeSieve& sieve);
/// Same, with a private sieve sized for d.
MaxPartialSum max_partial_sum(arith::FundamentalDiscriminant d);
/// Scan over a caller-provided buffer holding chi_d(0..(|d|-1)/2).
MaxPartialSum max_partial_sum_of(std::span<const std::int8_t> half_period);

/// M pi / (e^gamma sqrt(q)).
double normalized_m(std::int64_t M, std::uint64_t modulus) noexcept;
double normalized_m(arith::FundamentalDiscriminant d);

enum class Parity : std::uint8_t { odd, even };

struct CharSumProfile {
  arith::FundamentalDiscriminant d;
  std::int64_t M;
  std::uint64_t N;
  double m;
  Parity parity;
};

CharSumProfile profile(arith::FundamentalDiscriminant d, const arith::PrimeSieve& sieve);

/// Prefix sums of chi_d over half a period; S(t) for any t >= 0 follows from
/// S(|d|-1-t) = -chi_d(-1) S(t) and full-period cancellation.
class PeriodicPartialSums {
 public:
  PeriodicPartialSums(arith::FundamentalDiscriminant d, const arith::PrimeSieve& sieve);
  /// From chi_d(0..(|d|-1)/2) already in hand.
  PeriodicPartialSums(arith::FundamentalDiscriminant d, std::span<const std::int8_t> half_period);

  std::int64_t at(std::uint64_t t) const noexcept;
  arith::FundamentalDiscriminant discriminant() const noexcept { return d_; }

 private:
  arith::FundamentalDiscriminant d_;
  std::vector<std::int32_t> prefix_;  // S(0..(|d|-1)/2)
};

/// Exact S(t) = sum_{n <= t} chi_d(n) by direct kronecker calls, using
/// periodicity for t >= |d|.
std::int64_t partial_sum(arith::FundamentalDiscriminant d, std::uint64_t t);

/// floor(beta |d|) with beta |d| snapped to the nearest integer when it lies
/// within 1e-9 of it, so that beta = k/|d| given in floating point recovers k.
std::uint64_t cutoff_for(double beta, std::uint64_t modulus);

/// S(floor(beta |d|)) for beta in [0, 1].
std::int64_t partial_sum_at(arith::FundamentalDiscriminant d, double beta);

}  // namespace charsum::sums
