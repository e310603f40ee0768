#include "charsum/polya.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>

#include "charsum/constants.hpp"
#include "charsum/errors.hpp"

namespace charsum::polya {

namespace {

constexpr double kTwoPi = 2.0 * constants::pi;

// chi_d(0..q-1); d == 1 gives the trivial character (period 1).
std::vector<std::int8_t> period_table(std::int64_t d) {
  const std::uint64_t q = d == 1 ? 1 : static_cast<std::uint64_t>(d < 0 ? -d : d);
  std::vector<std::int8_t> t(q);
  for (std::uint64_t n = 0; n < q; ++n)
    t[n] = static_cast<std::int8_t>(d == 1 ? 1 : arith::kronecker(d, static_cast<std::int64_t>(n)));
  return t;
}

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer make_buffer(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer(p);
}

// One backward (e^{+2 pi i nj/G}) plan per grid size. Planning is not
// thread-safe in FFTW; executing an existing plan on fresh buffers is.
fftw_plan backward_plan(std::size_t grid) {
  static std::mutex mu;
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard lock(mu);
  auto it = plans.find(grid);
  if (it != plans.end()) return it->second;
  auto in = make_buffer(grid);
  auto out = make_buffer(grid);
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(grid), in.get(), out.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
  if (plan == nullptr) throw std::runtime_error("FFTW planning failed for grid " + std::to_string(grid));
  plans.emplace(grid, plan);
  return plan;
}

}  // namespace

cplx unit_phase(double x) noexcept {
  const double f = x - std::floor(x);
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

cplx unit_phase(std::int64_t num, std::int64_t den) noexcept {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  const double f = static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

double phase_of(std::uint64_t n, double alpha) noexcept {
  const double nd = static_cast<double>(n);
  const double p = nd * alpha;
  const double err = std::fma(nd, alpha, -p);
  double f = (p - std::floor(p)) + err;
  f -= std::floor(f);
  return f;
}

cplx gauss_sum(arith::FundamentalDiscriminant d) {
  const auto q = static_cast<std::int64_t>(d.modulus());
  cplx s{0.0, 0.0};
  for (std::int64_t n = 1; n <= q; ++n) {
    const int c = arith::kronecker(d.value(), n);
    if (c != 0) s += static_cast<double>(c) * unit_phase(n, q);
  }
  return s;
}

cplx gauss_sum_closed_form(arith::FundamentalDiscriminant d) noexcept {
  const double r = std::sqrt(static_cast<double>(d.modulus()));
  return d.even() ? cplx{r, 0.0} : cplx{0.0, r};
}

double default_truncation(std::uint64_t modulus) noexcept {
  const double q = static_cast<double>(modulus);
  return q * std::max(1.0, std::ceil(std::log(q)));
}

cplx polya_rhs(arith::FundamentalDiscriminant d, double alpha, double z) {
  if (!(z >= 1.0)) throw std::invalid_argument("polya_rhs: z must be >= 1");
  const auto table = period_table(d.value());
  const std::uint64_t q = table.size();
  const double kappa = d.parity_sign();
  const auto zmax = static_cast<std::uint64_t>(std::floor(z));
  cplx acc{0.0, 0.0};
  for (std::uint64_t n = 1; n <= zmax; ++n) {
    const int c = table[n % q];
    if (c == 0) continue;
    const cplx e = unit_phase(phase_of(n, alpha));
    // chi(n)(1 - e(-n a))/n + chi(-n)(1 - e(n a))/(-n)
    const cplx num = (1.0 - std::conj(e)) - kappa * (1.0 - e);
    acc += (static_cast<double>(c) / static_cast<double>(n)) * num;
  }
  return gauss_sum_closed_form(d) / cplx{0.0, kTwoPi} * acc;
}

cplx polya_rhs(arith::FundamentalDiscriminant d, rational::Fraction alpha, double z) {
  if (!(z >= 1.0)) throw std::invalid_argument("polya_rhs: z must be >= 1");
  const auto a = rational::reduced(alpha);
  const auto q = static_cast<std::int64_t>(d.modulus());
  const std::int64_t period = std::lcm(q, a.den);
  if (period > 50'000'000) throw std::invalid_argument("polya_rhs: period lcm(|d|, b) too large for the rational route");
  const auto zmax = static_cast<std::int64_t>(std::floor(z));
  const double kappa = d.parity_sign();
  const double L = static_cast<double>(period);

  cplx acc{0.0, 0.0};
  for (std::int64_t r = 1; r <= std::min(period, zmax); ++r) {
    const int c = arith::kronecker(d.value(), r);
    if (c == 0) continue;
    const cplx e = unit_phase(r * (a.num % a.den), a.den);
    const cplx num = (1.0 - std::conj(e)) - kappa * (1.0 - e);
    // sum_{k=0}^{K} 1/(r + kL) = (psi(r/L + K + 1) - psi(r/L)) / L
    const std::int64_t K = (zmax - r) / period;
    double h;
    if (K < 8) {
      h = 0.0;
      for (std::int64_t k = 0; k <= K; ++k) h += 1.0 / static_cast<double>(r + k * period);
    } else {
      const double s = static_cast<double>(r) / L;
      h = (boost::math::digamma(s + static_cast<double>(K) + 1.0) - boost::math::digamma(s)) / L;
    }
    acc += static_cast<double>(c) * h * num;
  }
  return gauss_sum_closed_form(d) / cplx{0.0, kTwoPi} * acc;
}

void ExpSumSpec::validate() const {
  if (!(z >= 1.0)) throw std::invalid_argument("ExpSumSpec: z must be >= 1");
  if (!(y >= 2.0)) throw std::invalid_argument("ExpSumSpec: y must be >= 2");
  if (coprime_to < 1) throw std::invalid_argument("ExpSumSpec: coprime_to must be >= 1");
  if (d != 1 && !arith::is_fundamental(d))
    throw std::invalid_argument("ExpSumSpec: d must be 1 or a fundamental discriminant");
}

cplx exp_sum(const ExpSumSpec& spec, double alpha, const arith::SmoothnessSieve* sieve) {
  spec.validate();
  const auto zmax = static_cast<std::uint64_t>(std::floor(spec.z));
  if (sieve == nullptr || sieve->limit() < zmax)
    throw std::invalid_argument("exp_sum: smoothness sieve missing or shorter than z");
  const auto table = period_table(spec.d);
  const std::uint64_t q = table.size();
  cplx acc{0.0, 0.0};
  for (std::uint64_t n = 1; n <= zmax; ++n) {
    const int c = table[n % q];
    if (c == 0) continue;
    const bool friable = sieve->is_friable(static_cast<std::uint32_t>(n), spec.y);
    if (spec.restriction == Restriction::friable && !friable) continue;
    if (spec.restriction == Restriction::non_friable && friable) continue;
    if (spec.coprime_to != 1 && std::gcd(n, spec.coprime_to) != 1) continue;
    acc += (static_cast<double>(c) / static_cast<double>(n)) * unit_phase(phase_of(n, alpha));
  }
  return acc;
}

SyzResult s_yz_max(std::int64_t d, double y, double z, const arith::SmoothnessSieve& sieve, std::size_t grid,
                   double max_slack) {
  if (!(y >= 2.0)) throw std::invalid_argument("s_yz_max: y must be >= 2");
  if (!(z >= 1.0)) throw std::invalid_argument("s_yz_max: z must be >= 1");
  if (grid < 2) throw std::invalid_argument("s_yz_max: grid must have at least 2 points");
  if (d != 1 && !arith::is_fundamental(d))
    throw std::invalid_argument("s_yz_max: d must be 1 or a fundamental discriminant");
  const auto zmax = static_cast<std::uint64_t>(std::floor(z));
  if (sieve.limit() < zmax) throw std::invalid_argument("s_yz_max: smoothness sieve shorter than z");

  SyzResult res;
  res.grid = grid;

  auto in = make_buffer(grid);
  std::fill_n(&in[0][0], 2 * grid, 0.0);
  for (std::uint64_t n = 2; n <= zmax; ++n) {
    if (sieve.is_friable(static_cast<std::uint32_t>(n), y)) continue;
    const int c = d == 1 ? 1 : arith::kronecker(d, static_cast<std::int64_t>(n));
    if (c == 0) continue;
    // e(n j/G) only depends on n mod G, so folding is exact on the grid.
    in[n % grid][0] += static_cast<double>(c) / static_cast<double>(n);
    ++res.terms;
  }
  res.slack = constants::pi * static_cast<double>(res.terms) / static_cast<double>(grid);
  if (res.slack > max_slack)
    throw AccuracyError("s_yz_max: Lipschitz slack " + std::to_string(res.slack) + " exceeds requested " +
                        std::to_string(max_slack) + " with grid " + std::to_string(grid));
  if (res.terms == 0) return res;

  auto out = make_buffer(grid);
  fftw_execute_dft(backward_plan(grid), in.get(), out.get());
  double best = 0.0;
  for (std::size_t j = 0; j < grid; ++j) best = std::max(best, std::hypot(out[j][0], out[j][1]));
  res.grid_max = best;
  res.value = best + res.slack;
  return res;
}

double friability_bound(bool odd, double tau, double C, double c) noexcept {
  return odd ? std::exp(tau + C) : std::exp(constants::sqrt3 * tau + c);
}

Membership c_x_membership(arith::FundamentalDiscriminant d, double m, double tau, const MembershipParams& params,
                          const arith::SmoothnessSieve& sieve) {
  if (!(tau >= 1.0)) throw std::invalid_argument("c_x_membership: tau must be >= 1");
  Membership out;
  out.m = m;
  out.y = friability_bound(d.odd(), tau, params.C, params.c);
  if (!(m > tau)) return out;
  out.evaluated = true;
  if (params.z < out.y) {
    // Every n <= z is y-friable: the non-friable sum is empty.
    out.member = true;
    return out;
  }
  out.syz = s_yz_max(d.value(), out.y, params.z, sieve, params.grid, params.max_slack);
  out.member = out.syz.value <= 1.0;
  return out;
}

}  // namespace charsum::polya
