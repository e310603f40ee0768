#include "charsum/pretend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "charsum/constants.hpp"

namespace charsum::pretend {

namespace {

// Characters of (Z/p^e)^* as exponent tables over phi(p^e).
struct Component {
  std::uint64_t modulus = 1;
  std::uint64_t phi = 1;
  std::vector<std::vector<std::int64_t>> chars;
};

std::uint64_t mul_order(std::uint64_t g, std::uint64_t m) {
  std::uint64_t x = g % m, k = 1;
  while (x != 1) {
    x = x * g % m;
    ++k;
  }
  return k;
}

Component odd_prime_power(std::uint64_t p, int e) {
  Component c;
  c.modulus = 1;
  for (int i = 0; i < e; ++i) c.modulus *= p;
  c.phi = c.modulus / p * (p - 1);
  std::uint64_t g = 2;
  while (std::gcd(g, p) != 1 || mul_order(g, c.modulus) != c.phi) ++g;
  std::vector<std::int64_t> dlog(c.modulus, -1);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k < c.phi; ++k) {
    dlog[x] = static_cast<std::int64_t>(k);
    x = x * g % c.modulus;
  }
  for (std::uint64_t j = 0; j < c.phi; ++j) {
    std::vector<std::int64_t> idx(c.modulus, -1);
    for (std::uint64_t r = 0; r < c.modulus; ++r)
      if (dlog[r] >= 0) idx[r] = static_cast<std::int64_t>((j * static_cast<std::uint64_t>(dlog[r])) % c.phi);
    c.chars.push_back(std::move(idx));
  }
  return c;
}

Component two_power(int e) {
  Component c;
  c.modulus = std::uint64_t{1} << e;
  c.phi = c.modulus / 2;
  if (e == 1) {
    c.chars.push_back({-1, 0});
    return c;
  }
  if (e == 2) {
    // (Z/4)^* = {1, 3} generated by 3 = -1.
    c.chars.push_back({-1, 0, -1, 0});
    c.chars.push_back({-1, 0, -1, 1});
    return c;
  }
  // n = (-1)^s 5^k, s in {0,1}, 0 <= k < 2^{e-2}.
  const std::uint64_t half = c.modulus / 4;
  std::vector<std::int64_t> s_of(c.modulus, -1), k_of(c.modulus, -1);
  std::uint64_t five = 1;
  for (std::uint64_t k = 0; k < half; ++k) {
    s_of[five] = 0;
    k_of[five] = static_cast<std::int64_t>(k);
    const std::uint64_t neg = c.modulus - five;
    s_of[neg] = 1;
    k_of[neg] = static_cast<std::int64_t>(k);
    five = five * 5 % c.modulus;
  }
  for (std::uint64_t a = 0; a < 2; ++a) {
    for (std::uint64_t b = 0; b < half; ++b) {
      std::vector<std::int64_t> idx(c.modulus, -1);
      for (std::uint64_t r = 1; r < c.modulus; r += 2) {
        const auto s = static_cast<std::uint64_t>(s_of[r]);
        const auto k = static_cast<std::uint64_t>(k_of[r]);
        idx[r] = static_cast<std::int64_t>((a * s * half + b * k * 2) % c.phi);
      }
      c.chars.push_back(std::move(idx));
    }
  }
  return c;
}

std::vector<Component> components_of(std::uint64_t D) {
  std::vector<Component> comps;
  for (std::uint64_t p : arith::prime_divisors(D)) {
    int e = 0;
    for (std::uint64_t m = D; m % p == 0; m /= p) ++e;
    comps.push_back(p == 2 ? two_power(e) : odd_prime_power(p, e));
  }
  return comps;
}

// Odometer over component choices; the last component varies fastest.
bool advance(std::vector<std::size_t>& pick, const std::vector<Component>& comps) {
  for (std::size_t i = comps.size(); i-- > 0;) {
    if (++pick[i] < comps[i].chars.size()) return true;
    pick[i] = 0;
  }
  return false;
}

// Not induced from D/p for any prime p | D.
bool is_primitive(const std::vector<std::int64_t>& idx, std::uint64_t D) {
  for (std::uint64_t p : arith::prime_divisors(D)) {
    const std::uint64_t sub = D / p;
    bool induced = true;
    for (std::uint64_t n = 1; n < D && induced; n += sub) {
      if (idx[n] > 0) induced = false;
    }
    if (induced) return false;
  }
  return true;
}

PrimitiveCharacter finish(std::uint64_t D, std::uint64_t Phi, std::vector<std::int64_t> idx) {
  std::uint64_t g = Phi;
  for (std::int64_t v : idx)
    if (v > 0) g = std::gcd(g, static_cast<std::uint64_t>(v));
  PrimitiveCharacter chi;
  chi.conductor = static_cast<std::uint32_t>(D);
  chi.order = static_cast<std::uint32_t>(Phi / g);
  chi.index.resize(D);
  for (std::uint64_t n = 0; n < D; ++n)
    chi.index[n] = idx[n] < 0 ? -1 : static_cast<std::int32_t>(static_cast<std::uint64_t>(idx[n]) / g);
  chi.parity = (D == 1 || chi.index[D - 1] == 0) ? 1 : -1;
  return chi;
}

void check_unimodular(cplx v, std::uint32_t p) {
  if (std::abs(v) > 1.0 + 1e-12)
    throw std::invalid_argument("distance_sq: value at p = " + std::to_string(p) + " exceeds 1 in modulus");
}

void check_sieve(double y, const arith::PrimeSieve& sieve) {
  if (y >= 2.0 && static_cast<double>(sieve.limit()) < std::floor(y))
    throw std::invalid_argument("prime sieve limit " + std::to_string(sieve.limit()) + " below y");
}

int chi_value(std::int64_t d, std::uint64_t n) {
  return d == 1 ? 1 : arith::kronecker(d, static_cast<std::int64_t>(n));
}

}  // namespace

cplx PrimitiveCharacter::value(std::uint64_t n) const noexcept {
  const std::int32_t k = index[n % conductor];
  if (k < 0) return {0.0, 0.0};
  const double a = 2.0 * constants::pi * static_cast<double>(k) / static_cast<double>(order);
  return {std::cos(a), std::sin(a)};
}

double PrimitiveCharacter::real_value(std::uint64_t n) const noexcept {
  const std::int32_t k = index[n % conductor];
  if (k < 0) return 0.0;
  if (k == 0) return 1.0;
  if (2 * static_cast<std::uint32_t>(k) == order) return -1.0;
  return std::cos(2.0 * constants::pi * static_cast<double>(k) / static_cast<double>(order));
}

std::uint64_t primitive_count(std::uint64_t D) {
  std::uint64_t count = 1;
  for (std::uint64_t p : arith::prime_divisors(D)) {
    int e = 0;
    std::uint64_t pe = 1;
    for (std::uint64_t m = D; m % p == 0; m /= p) {
      ++e;
      pe *= p;
    }
    std::uint64_t c;
    if (p == 2) {
      c = e == 1 ? 0 : (e == 2 ? 1 : pe / 4);
    } else {
      c = e == 1 ? p - 2 : pe / (p * p) * (p - 1) * (p - 1);
    }
    count *= c;
  }
  return count;
}

std::vector<PrimitiveCharacter> primitive_characters(std::uint32_t D_max) {
  if (D_max < 2 || D_max > 100)
    throw std::invalid_argument("primitive_characters: D_max must lie in [2, 100], got " + std::to_string(D_max));
  std::vector<PrimitiveCharacter> out;
  out.push_back(PrimitiveCharacter{1, 1, {0}, 1});
  for (std::uint64_t D = 2; D <= D_max; ++D) {
    const auto comps = components_of(D);
    std::uint64_t Phi = 1;
    for (const auto& c : comps) Phi *= c.phi;
    std::vector<std::size_t> pick(comps.size(), 0);
    while (true) {
      std::vector<std::int64_t> idx(D, 0);
      for (std::uint64_t n = 0; n < D; ++n) {
        std::uint64_t acc = 0;
        bool unit = true;
        for (std::size_t i = 0; i < comps.size() && unit; ++i) {
          const std::int64_t v = comps[i].chars[pick[i]][n % comps[i].modulus];
          if (v < 0) unit = false;
          else acc = (acc + static_cast<std::uint64_t>(v) * (Phi / comps[i].phi)) % Phi;
        }
        idx[n] = unit ? static_cast<std::int64_t>(acc) : -1;
      }
      if (is_primitive(idx, D)) out.push_back(finish(D, Phi, std::move(idx)));
      if (!advance(pick, comps)) break;
    }
  }
  return out;
}

double distance_sq(const PrimeValues& f, const PrimeValues& g, double y, const arith::PrimeSieve& sieve) {
  check_sieve(y, sieve);
  double s = 0.0;
  for (std::uint32_t p : sieve.primes()) {
    if (static_cast<double>(p) > y) break;
    const cplx fp = f(p), gp = g(p);
    check_unimodular(fp, p);
    check_unimodular(gp, p);
    s += (1.0 - (fp * std::conj(gp)).real()) / static_cast<double>(p);
  }
  return s;
}

double distance_sq(std::int64_t d, const PrimitiveCharacter& psi, double y, const arith::PrimeSieve& sieve) {
  check_sieve(y, sieve);
  double s = 0.0;
  for (std::uint32_t p : sieve.primes()) {
    if (static_cast<double>(p) > y) break;
    s += (1.0 - chi_value(d, p) * psi.real_value(p)) / static_cast<double>(p);
  }
  return s;
}

std::uint32_t default_dmax(double y) noexcept {
  const double l = y > 1.0 ? std::ceil(std::log(y)) : 0.0;
  return static_cast<std::uint32_t>(std::clamp(l, 10.0, 100.0));
}

PretenseResult nearest_primitive(std::int64_t d, double y, const std::vector<PrimitiveCharacter>& characters,
                                 const arith::PrimeSieve& sieve) {
  if (characters.empty()) throw std::invalid_argument("nearest_primitive: empty character list");
  PretenseResult best;
  best.distance_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < characters.size(); ++i) {
    const double ds = distance_sq(d, characters[i], y, sieve);
    if (ds < best.distance_sq - 1e-12) {
      best.distance_sq = ds;
      best.position = i;
    }
  }
  best.xi = characters[best.position];
  best.conductor = best.xi.conductor;
  return best;
}

PretenseResult nearest_primitive(std::int64_t d, double y, std::uint32_t D_max, const arith::PrimeSieve& sieve) {
  if (D_max < 3) throw std::invalid_argument("nearest_primitive: D_max must be >= 3");
  return nearest_primitive(d, y, primitive_characters(D_max), sieve);
}

double truncated_L(std::int64_t d, double y, std::uint64_t k, const arith::PrimeSieve& sieve, std::int64_t twist) {
  if (y < 2.0) return 1.0;
  check_sieve(y, sieve);
  if (k == 0) throw std::invalid_argument("truncated_L: k must be >= 1");
  double prod = 1.0;
  for (std::uint32_t p : sieve.primes()) {
    if (static_cast<double>(p) > y) break;
    if (k % p == 0) continue;
    const int c = chi_value(d, p) * chi_value(twist, p);
    if (c == 0) continue;
    prod /= 1.0 - static_cast<double>(c) / static_cast<double>(p);
  }
  return prod;
}

PretenseReport pretense_bound_check(std::int64_t d, double y, double z, std::uint64_t a,
                                    const arith::PrimeSieve& primes, const arith::SmoothnessSieve& smooth) {
  if (!(y >= 2.0) || !(z >= 1.0) || a == 0) throw std::invalid_argument("pretense_bound_check: need y >= 2, z >= 1, a >= 1");
  const auto zmax = static_cast<std::uint64_t>(std::floor(z));
  if (smooth.limit() < zmax) throw std::invalid_argument("pretense_bound_check: smoothness sieve shorter than z");
  check_sieve(y, primes);

  PretenseReport r;
  double friable = 0.0, all = 0.0, coprime = 0.0;
  for (std::uint64_t n = 1; n <= zmax; ++n) {
    const int f = chi_value(d, n);
    if (f == 0) continue;
    const double term = static_cast<double>(f) / static_cast<double>(n);
    all += term;
    if (std::gcd(n, a) == 1) coprime += term;
    if (smooth.is_friable(static_cast<std::uint32_t>(n), y)) friable += term;
  }

  r.friable_sum = std::fabs(friable);
  for (std::uint32_t p : primes.primes()) {
    if (static_cast<double>(p) > y) break;
    r.distance_sq_to_one += (1.0 - chi_value(d, p)) / static_cast<double>(p);
  }
  r.friable_bound = std::log(y) * std::exp(-r.distance_sq_to_one / 2.0);
  r.friable_ratio = r.friable_sum / r.friable_bound;

  double prod = 1.0, err = 0.0;
  for (std::uint64_t p : arith::prime_divisors(a)) {
    const double pd = static_cast<double>(p);
    prod *= 1.0 - chi_value(d, p) / pd;
    err += std::log(pd) / pd;
  }
  err *= static_cast<double>(a) / static_cast<double>(arith::euler_phi(a));
  r.coprime_sum = coprime;
  r.product_form = prod * all;
  r.coprime_gap = std::fabs(r.coprime_sum - r.product_form);
  r.coprime_error_bound = err;
  r.coprime_within = r.coprime_gap <= 10.0 * err;
  return r;
}

}  // namespace charsum::pretend
