#include "charsum/character_sums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "charsum/constants.hpp"

namespace charsum::sums {

void fill_char_values(std::int64_t d, const arith::PrimeSieve& sieve, std::span<std::int8_t> out) {
  if (out.empty()) return;
  const std::size_t limit = out.size() - 1;
  if (limit > sieve.limit() && limit >= 2)
    throw std::invalid_argument("fill_char_values: sieve limit " + std::to_string(sieve.limit()) +
                                " below requested " + std::to_string(limit));
  out[0] = 0;
  if (limit >= 1) out[1] = 1;
  const auto spf = sieve.spf_table();
  const auto cof = sieve.cofactor_table();
  for (std::size_t n = 2; n <= limit; ++n) {
    const std::uint32_t p = spf[n];
    if (p == n) {
      out[n] = static_cast<std::int8_t>(arith::kronecker(d, static_cast<std::int64_t>(n)));
    } else {
      out[n] = static_cast<std::int8_t>(out[p] * out[cof[n]]);
    }
  }
}

CharacterValues char_values(arith::FundamentalDiscriminant d, std::uint32_t limit, const arith::PrimeSieve& sieve) {
  CharacterValues cv{d, std::vector<std::int8_t>(static_cast<std::size_t>(limit) + 1)};
  fill_char_values(d.value(), sieve, cv.values);
  return cv;
}

MaxPartialSum max_partial_sum_of(std::span<const std::int8_t> half_period) {
  MaxPartialSum best;
  std::int64_t s = 0;
  for (std::size_t t = 1; t < half_period.size(); ++t) {
    s += half_period[t];
    const std::int64_t a = s < 0 ? -s : s;
    if (a > best.M) {
      best.M = a;
      best.N = t;
    }
  }
  return best;
}

MaxPartialSum max_partial_sum(arith::FundamentalDiscriminant d, const arith::PrimeSieve& sieve) {
  const std::uint64_t q = d.modulus();
  const std::uint64_t half = (q - 1) / 2;
  std::vector<std::int8_t> buf(half + 1);
  fill_char_values(d.value(), sieve, buf);
  return max_partial_sum_of(buf);
}

MaxPartialSum max_partial_sum(arith::FundamentalDiscriminant d) {
  const arith::PrimeSieve sieve(static_cast<std::uint32_t>(std::max<std::uint64_t>(2, d.modulus() / 2)));
  return max_partial_sum(d, sieve);
}

double normalized_m(std::int64_t M, std::uint64_t modulus) noexcept {
  return static_cast<double>(M) * constants::pi / (constants::exp_gamma * std::sqrt(static_cast<double>(modulus)));
}

double normalized_m(arith::FundamentalDiscriminant d) {
  return normalized_m(max_partial_sum(d).M, d.modulus());
}

CharSumProfile profile(arith::FundamentalDiscriminant d, const arith::PrimeSieve& sieve) {
  const auto mp = max_partial_sum(d, sieve);
  return {d, mp.M, mp.N, normalized_m(mp.M, d.modulus()), d.odd() ? Parity::odd : Parity::even};
}

PeriodicPartialSums::PeriodicPartialSums(arith::FundamentalDiscriminant d, std::span<const std::int8_t> half_period)
    : d_(d) {
  const std::uint64_t half = (d.modulus() - 1) / 2;
  if (half_period.size() < half + 1) throw std::invalid_argument("PeriodicPartialSums: need chi_d(0..(|d|-1)/2)");
  prefix_.resize(half + 1);
  std::int32_t s = 0;
  for (std::uint64_t n = 1; n <= half; ++n) {
    s += half_period[n];
    prefix_[n] = s;
  }
}

PeriodicPartialSums::PeriodicPartialSums(arith::FundamentalDiscriminant d, const arith::PrimeSieve& sieve) : d_(d) {
  std::vector<std::int8_t> buf((d.modulus() - 1) / 2 + 1);
  fill_char_values(d.value(), sieve, buf);
  *this = PeriodicPartialSums(d, buf);
}

std::int64_t PeriodicPartialSums::at(std::uint64_t t) const noexcept {
  const std::uint64_t q = d_.modulus();
  t %= q;
  if (t == q - 1) return 0;
  const std::uint64_t half = prefix_.size() - 1;
  if (t <= half) return prefix_[t];
  const std::int64_t mirrored = prefix_[q - 1 - t];
  return d_.odd() ? mirrored : -mirrored;
}

std::int64_t partial_sum(arith::FundamentalDiscriminant d, std::uint64_t t) {
  const std::uint64_t q = d.modulus();
  t %= q;
  std::int64_t s = 0;
  for (std::uint64_t n = 1; n <= t; ++n) s += arith::kronecker(d.value(), static_cast<std::int64_t>(n));
  return s;
}

std::uint64_t cutoff_for(double beta, std::uint64_t modulus) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
  const double x = beta * static_cast<double>(modulus);
  const double r = std::round(x);
  if (std::fabs(x - r) <= 1e-9) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::floor(x));
}

std::int64_t partial_sum_at(arith::FundamentalDiscriminant d, double beta) {
  return partial_sum(d, cutoff_for(beta, d.modulus()));
}

}  // namespace charsum::sums
