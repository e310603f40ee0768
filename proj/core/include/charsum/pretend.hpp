#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "charsum/arith.hpp"

namespace charsum::pretend {

using cplx = std::complex<double>;

/// A primitive Dirichlet character stored exactly: chi(n) = e(index[n mod D] / order),
/// with index -1 marking non-units.
struct PrimitiveCharacter {
  std::uint32_t conductor = 1;
  std::uint32_t order = 1;
  std::vector<std::int32_t> index;
  int parity = 1;  ///< chi(-1)

  bool is_unit(std::uint64_t n) const noexcept { return index[n % conductor] >= 0; }
  cplx value(std::uint64_t n) const noexcept;
  /// Re chi(n); exact 0/+-1 for real characters.
  double real_value(std::uint64_t n) const noexcept;
  bool is_real() const noexcept { return order <= 2; }
};

/// Every primitive character of conductor <= D_max, the trivial character
/// (conductor 1) first, then by conductor. Within one conductor the order
/// follows the generator exponents of the unit groups mod each prime power,
/// combined through the Chinese remainder theorem.
/// Throws std::invalid_argument unless 2 <= D_max <= 100.
std::vector<PrimitiveCharacter> primitive_characters(std::uint32_t D_max);

/// Count of primitive characters mod D from the multiplicative formula
/// (p: p-2; p^e, e >= 2: p^{e-2}(p-1)^2; 2: 0; 4: 1; 2^e: 2^{e-2}).
std::uint64_t primitive_count(std::uint64_t D);

using PrimeValues = std::function<cplx(std::uint32_t)>;

/// D(f, g; y)^2 = sum_{p <= y} (1 - Re f(p) conj(g(p)))/p.
/// Throws std::invalid_argument if |f(p)| or |g(p)| exceeds 1, or the sieve is short.
double distance_sq(const PrimeValues& f, const PrimeValues& g, double y, const arith::PrimeSieve& sieve);

/// D(chi_d, psi; y)^2 for a real quadratic chi_d (d == 1: trivial character).
double distance_sq(std::int64_t d, const PrimitiveCharacter& psi, double y, const arith::PrimeSieve& sieve);

struct PretenseResult {
  PrimitiveCharacter xi;
  std::size_t position = 0;  ///< index of xi in the searched list
  std::uint32_t conductor = 1;
  double distance_sq = 0.0;
};

/// max(10, ceil(log y)), capped at 100.
std::uint32_t default_dmax(double y) noexcept;

/// argmin over `characters` of D(chi_d, psi; y)^2; ties (within 1e-12) keep
/// the earlier entry, i.e. the smaller conductor.
PretenseResult nearest_primitive(std::int64_t d, double y, const std::vector<PrimitiveCharacter>& characters,
                                 const arith::PrimeSieve& sieve);
PretenseResult nearest_primitive(std::int64_t d, double y, std::uint32_t D_max, const arith::PrimeSieve& sieve);

/// L_k(1, chi; y) = prod_{p <= y, p not dividing k} (1 - chi(p)/p)^{-1} with
/// chi = chi_d * chi_twist (twist == 1 leaves chi_d alone).
double truncated_L(std::int64_t d, double y, std::uint64_t k, const arith::PrimeSieve& sieve,
                   std::int64_t twist = 1);

struct PretenseReport {
  // |sum_{n <= z, n y-friable} f(n)/n| against (log y) exp(-D(f,1;y)^2/2)
  double friable_sum = 0.0;
  double distance_sq_to_one = 0.0;
  double friable_bound = 0.0;
  double friable_ratio = 0.0;
  // sum_{n <= z, (n,a)=1} f(n)/n against prod_{p | a}(1 - f(p)/p) sum_{n <= z} f(n)/n
  double coprime_sum = 0.0;
  double product_form = 0.0;
  double coprime_gap = 0.0;
  double coprime_error_bound = 0.0;  ///< (a/phi(a)) sum_{p | a} log p / p
  bool coprime_within = false;        ///< gap <= 10 * error bound
};

/// Both inequalities for f = chi_d (d == 1: f = 1). Sieves must reach z.
PretenseReport pretense_bound_check(std::int64_t d, double y, double z, std::uint64_t a,
                                    const arith::PrimeSieve& primes, const arith::SmoothnessSieve& smooth);

}  // namespace charsum::pretend
