#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "charsum/arith.hpp"
#include "charsum/constants.hpp"
#include "charsum/dataset.hpp"
#include "charsum/errors.hpp"
#include "charsum/verify.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace charsum;
using verify::DiscriminantRecord;
using verify::Family;

namespace {

Config small_config(std::uint64_t x, double tau) {
  Config cfg;
  cfg.x = x;
  cfg.tau = tau;
  cfg.threads = 1;
  cfg.h = 1e-3;
  return cfg;
}

const DiscriminantRecord& find(const std::vector<DiscriminantRecord>& rs, std::int64_t d) {
  for (const auto& r : rs)
    if (r.d == d) return r;
  throw std::runtime_error("missing record");
}

double hand_L(std::int64_t d, double y, std::int64_t skip) {
  double v = 1.0;
  for (std::int64_t p = 2; p <= y; ++p)
    if (oracle::is_prime(p) && p != skip) v /= 1.0 - oracle::chi(d, p) / static_cast<double>(p);
  return v;
}

}  // namespace

TEST_CASE("scan at x = 8") {
  const verify::Harness h(small_config(8, 1.0));
  const auto rs = h.scan();
  std::vector<std::int64_t> ds;
  for (const auto& r : rs) ds.push_back(r.d);
  CHECK(ds == std::vector<std::int64_t>{-3, -4, 5, -7, -8, 8});
  const auto& r3 = rs.front();
  CHECK(r3.m == doctest::Approx(1.018375).epsilon(1e-6));
  CHECK(r3.N == 1);
  CHECK(r3.M == 1);
  CHECK(r3.parity == verify::Parity::odd);
  CHECK(r3.membership_evaluated);
  for (const auto& r : rs) {
    CHECK(r.euler_residual >= 0.0);
    CHECK(r.small_prime_defect >= 0.0);
    CHECK((r.b0 == 1 || r.b0 == r.b));
    CHECK(r.E >= std::log(std::log(h.y_for(r.odd()))) - 1.0);
  }
}

TEST_CASE("record fields against hand computation") {
  const verify::Harness h(small_config(200, 1.0));
  const auto rs = h.scan();
  for (const auto& r : rs) {
    const auto want = oracle::max_sum(r.d);
    REQUIRE(r.M == want.M);
    REQUIRE(r.N == want.N);
    const double y = h.y_for(r.odd());
    // residual with the record's b0, from a hand product
    const double b0phi = r.b0 == 1 ? 1.0 : static_cast<double>(r.b0) / (r.b0 - 1);
    const double L = hand_L(r.d, y, r.b0);
    CHECK(r.L_b0 == doctest::Approx(L).epsilon(1e-12));
    CHECK(r.euler_residual == doctest::Approx(std::fabs(r.m - constants::exp_minus_gamma * b0phi * L)).epsilon(1e-12));
    double lhs = 0, delta = 0;
    for (std::int64_t p = 2; p <= y; ++p) {
      if (!oracle::is_prime(p)) continue;
      const int c = oracle::chi(r.d, p);
      delta += std::fabs(1.0 - c) / (p - 1.0);
      if (p <= std::exp(1.0) && p != r.b0) lhs += (1.0 - c) / static_cast<double>(p);
    }
    CHECK(r.small_prime_defect == doctest::Approx(lhs).epsilon(1e-12));
    CHECK(r.delta == doctest::Approx(delta).epsilon(1e-12));
  }
  // The b0 = 1 form for d = -3, y = e^3, by hand.
  const auto& r3 = find(rs, -3);
  const double y = std::exp(3.0);
  const double hand = (1.0 / (1.0 + 0.5)) * (1.0 / (1.0 + 0.2)) * (1.0 / (1.0 - 1.0 / 7)) * (1.0 / (1.0 + 1.0 / 11)) *
                      (1.0 / (1.0 - 1.0 / 13)) * (1.0 / (1.0 + 1.0 / 17)) * (1.0 / (1.0 - 1.0 / 19));
  CHECK(hand_L(-3, y, 1) == doctest::Approx(hand).epsilon(1e-14));
  CHECK(pretend::truncated_L(-3, y, 1, arith::PrimeSieve(100)) == doctest::Approx(hand).epsilon(1e-14));
  CHECK(std::fabs(r3.m - constants::exp_minus_gamma * hand) > 0.0);
}

TEST_CASE("single record matches the scan") {
  const verify::Harness h(small_config(300, 1.0));
  const auto rs = h.scan();
  const auto one = h.record_for(arith::FundamentalDiscriminant(-163));
  const auto& s = find(rs, -163);
  CHECK(io::csv_row(one) == io::csv_row(s));
  CHECK(one.member == s.member);
  CHECK_THROWS_AS(h.record_for(arith::FundamentalDiscriminant(-307)), std::invalid_argument);
}

TEST_CASE("distribution tables") {
  const verify::Harness h(small_config(3000, 1.0));
  const auto rs = h.scan();
  const std::vector<double> taus{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 50.0};
  for (Family f : {Family::odd, Family::even, Family::all}) {
    const auto t = verify::psi(rs, 3000, f, taus);
    CHECK(t.rows.front().psi == 1.0);
    CHECK(t.rows.back().psi == 0.0);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      std::size_t count = 0, total = 0;
      for (const auto& r : rs) {
        if (f == Family::odd && !r.odd()) continue;
        if (f == Family::even && r.odd()) continue;
        ++total;
        count += r.m > taus[i];
      }
      CHECK(t.total == total);
      CHECK(t.rows[i].count == count);
      CHECK(t.rows[i].psi == static_cast<double>(count) / total);
      if (i) CHECK(t.rows[i].psi <= t.rows[i - 1].psi);
    }
    CHECK(std::isnan(t.rows.front().lower_main));
    if (f == Family::all) CHECK(std::isnan(t.rows[1].upper_main));
  }
  const auto odd = verify::psi(rs, 3000, Family::odd, {2.0});
  const double eta = dickman::eta_constant(), B0 = dickman::b0_constant();
  CHECK(odd.rows[0].lower_main == doctest::Approx(std::exp(-std::exp(2.0 - eta - B0) / 2.0)));
  CHECK(odd.rows[0].upper_main == doctest::Approx(std::exp(-std::exp(2.0 - eta - std::log(2.0) - 2.0) / 2.0)));
  const auto even = verify::psi(rs, 3000, Family::even, {2.0});
  const double s3 = std::sqrt(3.0);
  CHECK(even.rows[0].lower_main == doctest::Approx(std::exp(-std::exp(s3 * 2.0 - B0) / (s3 * 2.0))));
  CHECK(even.rows[0].upper_main == doctest::Approx(std::exp(-std::exp(s3 * 2.0) / 2.0)));

  std::vector<DiscriminantRecord> odd_only;
  for (const auto& r : rs)
    if (r.odd()) odd_only.push_back(r);
  CHECK_THROWS_AS(verify::psi(odd_only, 3000, Family::even, taus), std::invalid_argument);
}

TEST_CASE("structured-set report") {
  const verify::Harness h(small_config(3000, 1.0));
  const auto rs = h.scan();
  const auto rep = h.check_thm11(rs);
  std::size_t members = 0, odd = 0;
  for (const auto& r : rs) {
    members += r.member;
    odd += r.member && r.odd();
  }
  CHECK(rep.members == members);
  CHECK(rep.hard_pass());
  bool found = false;
  for (const auto& a : rep.assertions)
    if (a.name == "odd_fraction_members") {
      found = true;
      CHECK(a.value == doctest::Approx(static_cast<double>(odd) / members));
    }
  CHECK(found);

  std::vector<DiscriminantRecord> stripped = rs;
  for (auto& r : stripped) r.membership_evaluated = false;
  CHECK_THROWS_AS(h.check_thm11(stripped), std::logic_error);
  h.annotate_membership(stripped);
  for (std::size_t i = 0; i < rs.size(); ++i) CHECK(stripped[i].member == rs[i].member);
}

TEST_CASE("partial-sum identity and predictions") {
  const verify::Harness h(small_config(2000, 1.0));
  const auto rs = h.scan();
  const auto rep = h.check_thm12(rs, {0.0, 0.5, 1.0 / 3.0});
  CHECK(rep.hard_pass());
  for (const auto& a : rep.assertions)
    if (a.hard) CHECK(a.value <= 1e-9);

  // d = -3, beta = 1/2: S(1) = 1.
  CHECK(verify::Harness::normalized_partial_sum(1, 3) == doctest::Approx(1.0184).epsilon(1e-4));
  CHECK(verify::Harness::normalized_partial_sum(0, 3) == 0.0);
  CHECK_THROWS_AS(h.check_thm12(rs, {1.5}), std::invalid_argument);
}

TEST_CASE("even-family reports") {
  // chi_12(p) (p/3) for p = 2, 5, 7: chi_12(2) = 0, chi_12(5) = -1, chi_12(7) = -1.
  CHECK(arith::kronecker(12, 2) * arith::jacobi(2, 3) == 0);
  CHECK(arith::kronecker(12, 5) * arith::jacobi(5, 3) == oracle::chi(12, 5) * oracle::legendre(5, 3));
  CHECK(arith::kronecker(12, 7) * arith::jacobi(7, 3) == oracle::chi(12, 7) * oracle::legendre(7, 3));

  const verify::Harness h(small_config(5000, 1.0));
  const auto rs = h.scan();
  const auto r13 = h.check_thm13(rs);
  std::size_t members = 0, b3 = 0;
  for (const auto& r : rs)
    if (!r.odd() && r.member) {
      ++members;
      b3 += r.b == 3;
    }
  CHECK(r13.members == members);
  if (members) CHECK(r13.parameters.at("fraction_b_equals_3") == doctest::Approx(double(b3) / members));
  const auto r14 = h.check_thm14(rs, {0.0, 1.0 / 3.0, 0.25});
  CHECK(r14.members == members);
  if (members) {
    CHECK(r14.summaries[0].max == 0.0);  // beta = 0: both sides vanish
  }
}

TEST_CASE("budget refusal") {
  Config cfg = small_config(5000, 1.0);
  cfg.budget_x = 1000;
  const verify::Harness h(cfg);
  try {
    h.check_budget();
    FAIL("expected refusal");
  } catch (const BudgetError& e) {
    CHECK(e.estimated_seconds() > 0.0);
  }
  CHECK_THROWS_AS(h.scan(), BudgetError);
}

TEST_CASE("spearman") {
  CHECK(verify::spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(verify::spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(verify::spearman({1, 2, 2, 3}, {1, 2, 2, 3}) == doctest::Approx(1.0));
  CHECK(std::isnan(verify::spearman({1}, {1})));
}

TEST_CASE("reports render deterministically") {
  const verify::Harness h(small_config(1000, 1.0));
  const auto rs = h.scan();
  const auto a = verify::to_json(h.check_thm11(rs));
  const auto b = verify::to_json(h.check_thm11(h.scan()));
  CHECK(a == b);
  CHECK(a.find("\"theorem\"") != std::string::npos);
  CHECK(verify::to_text(h.check_thm11(rs)).find("odd_fraction_members") != std::string::npos);
  const auto t = verify::psi(rs, 1000, Family::odd, {1.0, 2.0});
  CHECK(verify::to_json(t).find("\"psi\"") != std::string::npos);
}
