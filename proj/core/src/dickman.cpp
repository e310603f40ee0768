#include "charsum/dickman.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "charsum/constants.hpp"
#include "charsum/errors.hpp"

namespace charsum::dickman {

namespace {

// Lagrange cubic through v[0..3] at nodes 0..3, evaluated at s.
double lagrange4(const double* v, double s) noexcept {
  const double s0 = s, s1 = s - 1.0, s2 = s - 2.0, s3 = s - 3.0;
  return -v[0] * s1 * s2 * s3 / 6.0 + v[1] * s0 * s2 * s3 / 2.0 - v[2] * s0 * s1 * s3 / 2.0 +
         v[3] * s0 * s1 * s2 / 6.0;
}

// First node of the 4-point stencil for the interval [j, j+1], kept inside
// the unit piece that contains it.
std::int64_t stencil_lo(std::int64_t j, std::int64_t n_per_unit) noexcept {
  const std::int64_t piece = j / n_per_unit;
  std::int64_t lo = j - 1;
  lo = std::max(lo, piece * n_per_unit);
  lo = std::min(lo, (piece + 1) * n_per_unit - 3);
  return lo;
}

double midpoint(const std::vector<double>& g, std::int64_t j, std::int64_t n_per_unit) noexcept {
  const std::int64_t lo = stencil_lo(j, n_per_unit);
  return lagrange4(&g[static_cast<std::size_t>(lo)], static_cast<double>(j - lo) + 0.5);
}

void put_bytes(std::ofstream& out, const void* p, std::size_t n) {
  // Stored little-endian regardless of host order.
  const auto* b = static_cast<const unsigned char*>(p);
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(b), static_cast<std::streamsize>(n));
  } else {
    for (std::size_t i = n; i-- > 0;) out.put(static_cast<char>(b[i]));
  }
}

void get_bytes(std::ifstream& in, void* p, std::size_t n) {
  auto* b = static_cast<unsigned char*>(p);
  in.read(reinterpret_cast<char*>(b), static_cast<std::streamsize>(n));
  if constexpr (std::endian::native != std::endian::little) std::reverse(b, b + n);
}

}  // namespace

DickmanTable DickmanTable::from_steps(double u_max, std::uint32_t steps_per_unit) {
  if (!(u_max >= 2.0)) throw std::invalid_argument("DickmanTable: u_max must be >= 2");
  if (steps_per_unit < 3) throw std::invalid_argument("DickmanTable: need at least 3 steps per unit");
  DickmanTable t;
  t.steps_per_unit_ = steps_per_unit;
  const auto n = static_cast<std::int64_t>(std::ceil(u_max * steps_per_unit - 1e-9));
  t.u_max_ = static_cast<double>(n) / static_cast<double>(steps_per_unit);
  t.rho_.assign(static_cast<std::size_t>(n) + 1, 1.0);
  t.P_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  t.solve();
  return t;
}

DickmanTable DickmanTable::build(double u_max, double h, double tolerance) {
  if (!(h > 0.0 && h <= 1e-3)) throw std::invalid_argument("DickmanTable: h must lie in (0, 1e-3]");
  const double inv = 1.0 / h;
  const double steps = std::round(inv);
  if (std::fabs(inv - steps) > 1e-6 * steps) throw std::invalid_argument("DickmanTable: 1/h must be an integer");
  auto t = from_steps(u_max, static_cast<std::uint32_t>(steps));
  const double err = std::fabs(t.rho_[2 * t.steps_per_unit_] - (1.0 - constants::ln2));
  if (err > tolerance)
    throw AccuracyError("DickmanTable: rho(2) off by " + std::to_string(err) + ", step too coarse for tolerance " +
                        std::to_string(tolerance));
  return t;
}

void DickmanTable::solve() {
  const auto N = static_cast<std::int64_t>(steps_per_unit_);
  const auto last = static_cast<std::int64_t>(rho_.size()) - 1;
  const double hh = 1.0 / static_cast<double>(N);
  const double Nd = static_cast<double>(N);

  // t rho'(t) = -rho(t-1): rho(t+h) = rho(t) - int_t^{t+h} rho(s-1)/s ds,
  // integrated by Simpson (the classical fourth-order step for this RHS).
  for (std::int64_t k = N; k < last; ++k) {
    const std::int64_t j = k - N;
    const double t0 = static_cast<double>(k) / Nd;
    const double t1 = static_cast<double>(k + 1) / Nd;
    const double tm = (static_cast<double>(k) + 0.5) / Nd;
    const double f0 = rho_[static_cast<std::size_t>(j)] / t0;
    const double f1 = rho_[static_cast<std::size_t>(j + 1)] / t1;
    const double fm = midpoint(rho_, j, N) / tm;
    rho_[static_cast<std::size_t>(k + 1)] = rho_[static_cast<std::size_t>(k)] - hh / 6.0 * (f0 + 4.0 * fm + f1);
  }

  double cum = 0.0;
  P_[0] = 0.0;
  for (std::int64_t k = 0; k < last; ++k) {
    const auto i = static_cast<std::size_t>(k);
    cum += hh / 6.0 * (rho_[i] + 4.0 * midpoint(rho_, k, N) + rho_[i + 1]);
    P_[i + 1] = constants::exp_minus_gamma * cum;
  }
}

double DickmanTable::interp(const std::vector<double>& grid, double t) const {
  const auto N = static_cast<std::int64_t>(steps_per_unit_);
  const auto last = static_cast<std::int64_t>(grid.size()) - 1;
  const double x = t * static_cast<double>(N);
  auto j = static_cast<std::int64_t>(std::floor(x));
  j = std::clamp<std::int64_t>(j, 0, last - 1);
  const std::int64_t lo = stencil_lo(j, N);
  return lagrange4(&grid[static_cast<std::size_t>(lo)], x - static_cast<double>(lo));
}

double DickmanTable::rho(double t) const {
  if (t < 0.0) return 0.0;
  if (t <= 1.0) return 1.0;
  if (t > u_max_ + 1e-12) throw std::out_of_range("rho: t = " + std::to_string(t) + " beyond table end");
  return interp(rho_, std::min(t, u_max_));
}

DickmanTable::PValue DickmanTable::P(double u) const {
  if (!(u >= 0.0)) throw std::invalid_argument("P: u must be >= 0");
  if (u >= u_max_) return {P_.back(), u > u_max_};
  const auto N = static_cast<double>(steps_per_unit_);
  const auto j = static_cast<std::size_t>(std::floor(u * N));
  const double tj = static_cast<double>(j) / N;
  const double w = u - tj;
  if (w <= 0.0) return {P_[j], false};
  const double mid = rho(tj + 0.5 * w);
  const double extra = w / 6.0 * (rho_[j] + 4.0 * mid + rho(u));
  return {P_[j] + constants::exp_minus_gamma * extra, false};
}

void DickmanTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write("DCKM", 4);
  const std::uint32_t version = kFileVersion;
  const double hh = h();
  put_bytes(out, &version, sizeof version);
  put_bytes(out, &u_max_, sizeof u_max_);
  put_bytes(out, &hh, sizeof hh);
  for (double v : rho_) put_bytes(out, &v, sizeof v);
  for (double v : P_) put_bytes(out, &v, sizeof v);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

DickmanTable DickmanTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  if (!in || std::memcmp(magic.data(), "DCKM", 4) != 0) throw std::runtime_error(path.string() + ": bad magic");
  std::uint32_t version = 0;
  double u_max = 0.0, hh = 0.0;
  get_bytes(in, &version, sizeof version);
  get_bytes(in, &u_max, sizeof u_max);
  get_bytes(in, &hh, sizeof hh);
  if (!in || version != kFileVersion) throw std::runtime_error(path.string() + ": unsupported version");
  if (!(hh > 0.0) || !(u_max >= 2.0)) throw std::runtime_error(path.string() + ": corrupt header");
  DickmanTable t;
  t.steps_per_unit_ = static_cast<std::uint32_t>(std::lround(1.0 / hh));
  t.u_max_ = u_max;
  const auto n = static_cast<std::size_t>(std::llround(u_max * t.steps_per_unit_)) + 1;
  t.rho_.resize(n);
  t.P_.resize(n);
  for (double& v : t.rho_) get_bytes(in, &v, sizeof v);
  for (double& v : t.P_) get_bytes(in, &v, sizeof v);
  if (!in) throw std::runtime_error(path.string() + ": truncated grid data");
  return t;
}

double b0_tail_bound(double T) noexcept { return std::exp(-2.0 * T) / T; }

double b0_constant(double tolerance) {
  if (!(tolerance >= 1e-8)) throw std::invalid_argument("b0_constant: tolerance must be >= 1e-8");
  using boost::math::quadrature::gauss_kronrod;
  const double T = std::max(1.0, 0.5 * std::log(200.0 / tolerance));
  auto head = [](double y) { return y < 1e-8 ? 1.0 - y * y / 3.0 : std::tanh(y) / y; };
  auto tail = [](double y) { return (std::tanh(y) - 1.0) / y; };
  const double q = tolerance * 1e-4;
  const double a = gauss_kronrod<double, 31>::integrate(head, 0.0, 1.0, 15, q);
  const double b = gauss_kronrod<double, 31>::integrate(tail, 1.0, T, 15, q);
  return a + b;
}

double eta_constant() noexcept { return constants::exp_minus_gamma * constants::ln2; }

double mertens_product(double y, const arith::PrimeSieve& sieve) {
  if (!(y >= 2.0)) throw std::invalid_argument("mertens_product: y must be >= 2");
  if (static_cast<double>(sieve.limit()) < std::floor(y)) throw std::invalid_argument("mertens_product: sieve too small");
  double prod = 1.0;
  for (std::uint32_t p : sieve.primes()) {
    if (static_cast<double>(p) > y) break;
    prod /= 1.0 - 1.0 / static_cast<double>(p);
  }
  return prod;
}

double friable_harmonic(double y, double u, const arith::SmoothnessSieve& sieve) {
  if (!(y >= 2.0)) throw std::invalid_argument("friable_harmonic: y must be >= 2");
  if (!(u > 0.0)) throw std::invalid_argument("friable_harmonic: u must be > 0");
  const double top = std::pow(y, u);
  const double limit = std::floor(top * (1.0 + 1e-13));
  if (limit < 2.0) return 1.0;
  if (limit > static_cast<double>(sieve.limit()))
    throw std::invalid_argument("friable_harmonic: y^u = " + std::to_string(top) + " exceeds sieve limit " +
                                std::to_string(sieve.limit()));
  const auto n_max = static_cast<std::uint32_t>(limit);
  // Neumaier-compensated sum, largest terms first.
  double sum = 0.0, comp = 0.0;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    if (!sieve.is_friable(n, y)) continue;
    const double term = 1.0 / static_cast<double>(n);
    const double t = sum + term;
    comp += std::fabs(sum) >= term ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace charsum::dickman
