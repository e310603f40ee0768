// Acceptance suite: one PASS/FAIL line per criterion.
// Exit code 0 when everything passes, 1 when only soft checks fail, 2 otherwise.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "charsum/arith.hpp"
#include "charsum/character_sums.hpp"
#include "charsum/constants.hpp"
#include "charsum/dataset.hpp"
#include "charsum/dickman.hpp"
#include "charsum/polya.hpp"
#include "charsum/rational.hpp"
#include "charsum/verify.hpp"
#include "oracles.hpp"

using namespace charsum;
using arith::FundamentalDiscriminant;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  bool soft_only = false;  ///< failure limited to soft assertions
  std::string detail;
};

int hard_failures = 0;
int soft_failures = 0;

void run(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const char* tag = o.pass ? "PASS" : (o.soft_only ? "FAIL(soft)" : "FAIL");
  std::printf("%s [%2d] %s: %s (%.2f s)\n", tag, id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) (o.soft_only ? soft_failures : hard_failures)++;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Config scan_config(std::uint64_t x, unsigned threads) {
  Config cfg;
  cfg.x = x;
  cfg.tau = 2.0;
  cfg.threads = threads;
  return cfg;
}

Outcome kronecker_oracle() {
  const auto t0 = Clock::now();
  std::size_t mismatches = 0, checked = 0;
  for (std::int64_t p = 3; p <= 300; p += 2) {
    if (!oracle::is_prime(p)) continue;
    for (std::int64_t d = -300; d <= 300; ++d) {
      ++checked;
      mismatches += arith::kronecker(d, p) != oracle::legendre(d, p);
    }
  }
  const double t = seconds_since(t0);
  return {mismatches == 0 && t < 1.0, false, fmt("%zu mismatches over %zu pairs, %.3f s (limit 1 s)", mismatches, checked, t)};
}

Outcome enumeration_oracle() {
  const auto t0 = Clock::now();
  const std::uint64_t x = 10000;
  const auto got = arith::enumerate_fundamental(x);
  const double t = seconds_since(t0);
  std::vector<std::int64_t> want;
  for (std::int64_t a = 1; a <= static_cast<std::int64_t>(x); ++a) {
    if (oracle::fundamental(-a)) want.push_back(-a);
    if (oracle::fundamental(a)) want.push_back(a);
  }
  bool same = got.size() == want.size();
  for (std::size_t i = 0; same && i < got.size(); ++i) same = got[i].value() == want[i];
  const double density = static_cast<double>(got.size()) / static_cast<double>(x);
  const double target = 6.0 / (constants::pi * constants::pi);
  const double rel = std::fabs(density / target - 1.0);
  return {same && rel < 0.01 && t < 1.0, false,
          fmt("%zu discriminants, %s oracle, density %.5f vs %.5f (rel %.2e), %.3f s", got.size(),
              same ? "matches" : "differs from", density, target, rel, t)};
}

Outcome character_identities() {
  const arith::PrimeSieve sieve(1000);
  std::size_t failures = 0, dcount = 0;
  const auto discs = arith::enumerate_fundamental(1000);
  for (auto d : discs) {
    ++dcount;
    const std::uint64_t q = d.modulus();
    std::vector<std::int8_t> chi(q);
    sums::fill_char_values(d.value(), sieve, chi);
    std::vector<std::int64_t> S(q, 0);
    std::int64_t acc = 0;
    for (std::uint64_t n = 1; n < q; ++n) S[n] = (acc += chi[n]);
    failures += acc != 0;  // S(q - 1) = S(q) because chi(q) = 0
    const int sign = -d.parity_sign();
    for (std::uint64_t t = 0; t < q; ++t) failures += S[q - 1 - t] != sign * S[t];
  }
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> pick_d(0, discs.size() - 1);
  std::uniform_int_distribution<std::int64_t> pick_n(1, 1000000);
  for (int i = 0; i < 10000; ++i) {
    const std::int64_t d = discs[pick_d(rng)].value();
    const std::int64_t a = pick_n(rng), b = pick_n(rng);
    failures += arith::kronecker(d, a * b) != arith::kronecker(d, a) * arith::kronecker(d, b);
  }
  return {failures == 0, false,
          fmt("%zu failures (%zu discriminants: period sum and reflection; 10000 random multiplicativity pairs)",
              failures, dcount)};
}

Outcome gauss_sums() {
  double worst = 0.0;
  for (auto d : arith::enumerate_fundamental(500)) {
    const auto g = polya::gauss_sum(d);
    const double r = std::sqrt(static_cast<double>(d.modulus()));
    const std::complex<double> closed = d.value() > 0 ? std::complex<double>(r, 0) : std::complex<double>(0, r);
    worst = std::max(worst, std::abs(g - closed));
  }
  return {worst <= 1e-9, false, fmt("max |G - closed form| = %.3e (limit 1e-9)", worst)};
}

Outcome polya_truncation() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::int64_t worst_d = 0;
  int worst_k = 0;
  std::size_t cases = 0;
  for (auto d : arith::enumerate_fundamental(2000)) {
    const std::uint64_t q = d.modulus();
    const double z = static_cast<double>(q) * static_cast<double>(q);
    // Exact prefix sums by the definitional oracle for this d.
    std::vector<std::int64_t> S(q + 1, 0);
    for (std::uint64_t n = 1; n <= q; ++n) S[n] = S[n - 1] + oracle::chi(d.value(), static_cast<std::int64_t>(n));
    for (int k = 1; k <= 9; ++k) {
      const auto rhs = polya::polya_rhs(d, rational::Fraction{k, 10}, z);
      const std::uint64_t t = (static_cast<std::uint64_t>(k) * q) / 10;
      const double err = std::abs(rhs - static_cast<double>(S[t]));
      ++cases;
      if (err > worst) {
        worst = err;
        worst_d = d.value();
        worst_k = k;
      }
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 5.0 && t < 120.0, false,
          fmt("%zu cases, max |S - rhs| = %.4f at d=%lld alpha=0.%d (limit 5), %.1f s (limit 120 s)", cases, worst,
              static_cast<long long>(worst_d), worst_k, t)};
}

Outcome dickman_checks() {
  const auto table = dickman::DickmanTable::build(10.0, 1e-4);
  const double e2 = std::fabs(table.rho(2.0) - (1.0 - std::log(2.0)));
  double sup = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double u = 1.0 + i / 10000.0;
    sup = std::max(sup, std::fabs(table.rho(u) - (1.0 - std::log(u))));
  }
  bool monotone = true;
  const auto P = table.P_grid();
  for (std::size_t i = 1; i < P.size(); ++i) monotone = monotone && P[i] >= P[i - 1];
  const double P0 = table.P(0.0).value;
  const double e1 = std::fabs(table.P(1.0).value - constants::exp_minus_gamma);
  // Convergence is measured on coarse grids: at h = 1e-4 the u = 4 error is already at roundoff.
  constexpr double rho4 = 0.00491092564776083;
  const double c1 = std::fabs(dickman::DickmanTable::from_steps(5.0, 20).rho(4.0) - rho4);
  const double c2 = std::fabs(dickman::DickmanTable::from_steps(5.0, 40).rho(4.0) - rho4);
  const double ratio = c1 / c2;
  const bool ok = e2 <= 1e-9 && sup <= 1e-9 && monotone && P0 == 0.0 && e1 <= 1e-8 && ratio >= 8.0;
  return {ok, false,
          fmt("|rho(2)-(1-ln2)|=%.2e, sup err [1,2]=%.2e, P monotone=%s, P(0)=%g, |P(1)-e^-g|=%.2e, "
              "error ratio h=1/20 vs 1/40 at u=4: %.1f (need >= 8)",
              e2, sup, monotone ? "yes" : "no", P0, e1, ratio)};
}

Outcome constants_check() {
  const double B0 = dickman::b0_constant();
  const double eta = dickman::eta_constant();
  const bool ok = B0 >= 0.8182 && B0 <= 0.8192 && std::fabs(eta - 0.389173) <= 1e-5;
  return {ok, false, fmt("B0 = %.10f (range [0.8182, 0.8192]), eta = %.10f (0.389173 +- 1e-5)", B0, eta)};
}

Outcome friable_harmonic() {
  const auto t0 = Clock::now();
  const arith::SmoothnessSieve sieve(10000000);
  const auto table = dickman::DickmanTable::build(10.0, 1e-4);
  const double y = std::exp(8.0);
  double worst = 0.0;
  std::string parts;
  for (double u : {1.0, 1.5, 2.0}) {
    const double lhs = dickman::friable_harmonic(y, u, sieve);
    const double rhs = constants::exp_gamma * table.P(u).value * std::log(y);
    const double diff = lhs - rhs;
    worst = std::max(worst, std::fabs(diff));
    parts += fmt(" u=%.1f: %.4f vs %.4f (diff %+.4f);", u, lhs, rhs, diff);
  }
  const double t = seconds_since(t0);
  return {worst <= 3.0 && t < 60.0, false, fmt("%s max |diff| %.4f (limit 3), %.1f s", parts.c_str(), worst, t)};
}

Outcome rational_check() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::size_t mismatches = 0, dirichlet = 0, total = 0;
  for (std::int64_t B : {10, 100, 1000}) {
    for (int i = 0; i < 1000; ++i) {
      const double alpha = unif(rng);
      const auto got = rational::best_approx(alpha, B);
      std::int64_t best_b = 0, best_a = 0;
      long double best = 1e30L;
      for (std::int64_t b = 1; b <= B; ++b) {
        const std::int64_t a = std::llround(static_cast<long double>(alpha) * b);
        const long double err = std::fabs(static_cast<long double>(alpha) * b - a);
        if (err < best - 1e-18L) {
          best = err;
          best_b = b;
          best_a = a;
        }
      }
      ++total;
      mismatches += got.a != best_a || got.b != best_b;
      const long double gap = std::fabs(static_cast<long double>(alpha) - static_cast<long double>(got.a) / got.b);
      dirichlet += gap > 1.0L / (static_cast<long double>(got.b) * B);
    }
  }
  return {mismatches == 0 && dirichlet == 0, false,
          fmt("%zu cases, %zu mismatches with exhaustive search, %zu Dirichlet violations", total, mismatches, dirichlet)};
}

Outcome identity_suite() {
  const verify::Harness h(scan_config(10000, 0));
  const auto records = h.scan();
  double worst = 0.0;
  std::size_t odd = 0;
  for (const auto& r : records) {
    if (!r.odd()) continue;
    ++odd;
    const std::int64_t S = sums::partial_sum(FundamentalDiscriminant(r.d), r.N);  // direct kronecker sum
    const double lhs = constants::exp_minus_gamma * constants::pi * static_cast<double>(S) /
                       std::sqrt(static_cast<double>(r.modulus()));
    worst = std::max(worst, std::fabs(std::fabs(lhs) - r.m));
  }
  const auto rep = h.check_thm12(records, {0.5});
  double harness_worst = -1.0;
  for (const auto& a : rep.assertions)
    if (a.hard) harness_worst = a.value;
  const bool ok = worst <= 1e-9 && rep.hard_pass();
  return {ok, false,
          fmt("%zu odd records, max ||LHS(alpha)| - m| = %.2e (direct sums), %.2e (harness); limit 1e-9", odd, worst,
              harness_worst)};
}

Outcome structure_scan() {
  const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  const auto t0 = Clock::now();
  const verify::Harness h(scan_config(200000, 0));
  const auto records = h.scan();
  const double t = seconds_since(t0);
  std::size_t above = 0, odd_above = 0, members = 0;
  for (const auto& r : records) {
    if (r.m > 2.0) {
      ++above;
      odd_above += r.odd();
    }
    members += r.member;
  }
  const double frac = above ? static_cast<double>(odd_above) / static_cast<double>(above) : 0.0;
  const auto rep = h.check_thm11(records);
  const double rho = rep.parameters.at("spearman_m_vs_euler_product");
  const double rho_odd = rep.parameters.at("spearman_m_vs_euler_product_odd");
  const bool timing = t <= 600.0;
  const bool soft_ok = frac > 0.75 && rho > 0.9;
  Outcome o;
  o.pass = timing && soft_ok;
  o.soft_only = timing && !soft_ok;
  o.detail = fmt("%zu records in %.1f s on %u core(s) (limit 600 s); odd fraction among m > 2: %zu/%zu = %.4f "
                 "(soft > 0.75); members %zu; Spearman(m, Euler product) over members = %.4f (soft > 0.9), "
                 "odd members only %.4f",
                 records.size(), t, cores, odd_above, above, frac, members, rho, rho_odd);
  return o;
}

Outcome distribution_tables() {
  const verify::Harness h(scan_config(100000, 0));
  const auto records = h.scan();
  const std::vector<double> taus{0.5, 1.0, 1.5, 2.0, 2.5};
  bool ok = true;
  std::string parts;
  for (auto fam : {verify::Family::odd, verify::Family::even}) {
    const auto table = verify::psi(records, 100000, fam, taus);
    for (std::size_t i = 0; i < taus.size(); ++i) {
      std::size_t count = 0, total = 0;
      for (const auto& r : records) {
        if ((fam == verify::Family::odd) != (r.d < 0)) continue;
        ++total;
        count += r.m > taus[i];
      }
      const auto& row = table.rows[i];
      ok = ok && row.count == count && table.total == total &&
           row.psi == static_cast<double>(count) / static_cast<double>(total) && row.psi >= 0.0 && row.psi <= 1.0;
      if (i) ok = ok && row.psi <= table.rows[i - 1].psi;
    }
    parts += fmt(" %s:", verify::family_name(fam));
    for (const auto& row : table.rows) parts += fmt(" %.4f", row.psi);
    parts += ";";
  }
  return {ok, false, fmt("Psi over tau {0.5..2.5}%s monotone, bounded and equal to recount: %s", parts.c_str(),
                         ok ? "yes" : "no")};
}

Outcome reproducibility() {
  const Config cfg = scan_config(50000, 1);
  const auto a = verify::Harness(cfg).scan();
  const auto b = verify::Harness(cfg).scan();
  const auto ha = io::rows_checksum(a), hb = io::rows_checksum(b);
  const bool same_text = io::render_dataset(cfg, a) == io::render_dataset(cfg, b);
  return {ha == hb && same_text, false,
          fmt("x=50000 threads=1: checksums %s / %s, datasets byte-identical: %s", io::checksum_hex(ha).c_str(),
              io::checksum_hex(hb).c_str(), same_text ? "yes" : "no")};
}

}  // namespace

int main() {
  run(1, "Kronecker oracle equivalence", kronecker_oracle);
  run(2, "Fundamental discriminant enumeration", enumeration_oracle);
  run(3, "Character identities", character_identities);
  run(4, "Gauss sum closed form", gauss_sums);
  run(5, "Truncated Fourier expansion", polya_truncation);
  run(6, "Dickman function", dickman_checks);
  run(7, "Constants", constants_check);
  run(8, "Friable harmonic sums", friable_harmonic);
  run(9, "Rational approximation", rational_check);
  run(10, "Exact identity suite", identity_suite);
  run(11, "Structure scan", structure_scan);
  run(12, "Distribution tables", distribution_tables);
  run(13, "Reproducibility", reproducibility);
  std::printf("summary: %d hard failure(s), %d soft failure(s)\n", hard_failures, soft_failures);
  if (hard_failures) return 2;
  return soft_failures ? 1 : 0;
}
