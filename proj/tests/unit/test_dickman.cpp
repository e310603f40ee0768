#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "charsum/arith.hpp"
#include "charsum/constants.hpp"
#include "charsum/dickman.hpp"
#include "charsum/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace charsum;
using dickman::DickmanTable;

namespace {

// Reference values from a 50-digit solution of the delay equation.
constexpr double kRho3 = 0.0486083882911316;
constexpr double kRho4 = 0.00491092564776083;
constexpr double kP4 = 0.998934399507577;

// rho on [2, 3]: 1 - log t + int_2^t log(s - 1)/s ds, by fine Simpson.
double rho_23(double t) {
  return 1.0 - std::log(t) + oracle::simpson([](double s) { return std::log(s - 1.0) / s; }, 2.0, t, 20000);
}

const DickmanTable& table() {
  static const DickmanTable t = DickmanTable::build(10.0, 1e-4);
  return t;
}

}  // namespace

TEST_CASE("rho values") {
  const auto& t = table();
  CHECK(t.rho(0.5) == 1.0);
  CHECK(t.rho(1.0) == 1.0);
  CHECK(t.rho(-1.0) == 0.0);
  CHECK(std::fabs(t.rho(2.0) - (1.0 - std::log(2.0))) < 1e-9);
  CHECK(std::fabs(t.rho(3.0) - rho_23(3.0)) < 1e-9);
  CHECK(std::fabs(t.rho(3.0) - kRho3) < 1e-9);
  CHECK(std::fabs(t.rho(4.0) - kRho4) < 1e-9);
  double sup = 0;
  for (int i = 0; i <= 1000; ++i) {
    const double u = 1.0 + i / 1000.0;
    sup = std::max(sup, std::fabs(t.rho(u) - (1.0 - std::log(u))));
  }
  CHECK(sup <= 1e-9);
  for (double u : {2.3, 2.71, 2.9999}) CHECK(std::fabs(t.rho(u) - rho_23(u)) < 1e-8);
  CHECK_THROWS_AS(t.rho(10.5), std::out_of_range);
}

TEST_CASE("rho shape") {
  const auto g = table().rho_grid();
  const std::size_t spu = table().steps_per_unit();
  for (std::size_t i = spu + 1; i < g.size(); ++i) {
    REQUIRE(g[i] < g[i - 1]);
    REQUIRE(g[i] > 0.0);
  }
}

TEST_CASE("P values") {
  const auto& t = table();
  CHECK(t.P(0.0).value == 0.0);
  CHECK(std::fabs(t.P(1.0).value - constants::exp_minus_gamma) < 1e-8);
  CHECK(1.0 - t.P(4.0).value < 0.01);
  CHECK(std::fabs(t.P(4.0).value - kP4) < 1e-8);
  const auto g = t.P_grid();
  for (std::size_t i = 1; i < g.size(); ++i) REQUIRE(g[i] >= g[i - 1]);
  CHECK(g.back() <= 1.0);
  const auto clamped = t.P(25.0);
  CHECK(clamped.clamped);
  CHECK(clamped.value == g.back());
  CHECK_THROWS_AS(t.P(-0.1), std::invalid_argument);
}

TEST_CASE("fourth-order convergence") {
  const double e1 = std::fabs(DickmanTable::from_steps(5.0, 20).rho(4.0) - kRho4);
  const double e2 = std::fabs(DickmanTable::from_steps(5.0, 40).rho(4.0) - kRho4);
  CHECK(e1 > 0.0);
  CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("build preconditions") {
  CHECK_THROWS_AS(DickmanTable::build(1.5, 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(DickmanTable::build(10.0, 2e-3), std::invalid_argument);
  CHECK_THROWS_AS(DickmanTable::build(10.0, 3e-4), std::invalid_argument);
  CHECK_THROWS_AS(DickmanTable::build(5.0, 1e-3, 1e-18), AccuracyError);
}

TEST_CASE("table round trip") {
  const auto t = DickmanTable::build(4.0, 1e-3);
  const auto path = std::filesystem::temp_directory_path() / "charsum_test_table.dckm";
  t.save(path);
  const auto u = DickmanTable::load(path);
  CHECK(u.u_max() == t.u_max());
  CHECK(u.steps_per_unit() == t.steps_per_unit());
  REQUIRE(u.rho_grid().size() == t.rho_grid().size());
  for (std::size_t i = 0; i < u.rho_grid().size(); ++i) {
    REQUIRE(u.rho_grid()[i] == t.rho_grid()[i]);
    REQUIRE(u.P_grid()[i] == t.P_grid()[i]);
  }
  std::filesystem::remove(path);
  CHECK_THROWS(DickmanTable::load(path));
}

TEST_CASE("constants") {
  const double B0 = dickman::b0_constant();
  CHECK(std::fabs(B0 - 0.8187) <= 5e-4);
  CHECK(std::fabs(B0 - 0.818780140172) < 1e-8);
  CHECK(dickman::b0_tail_bound(20.0) < 1e-17);
  const double eta = dickman::eta_constant();
  CHECK(eta == doctest::Approx(0.5614594836 * 0.6931471806).epsilon(1e-9));
  CHECK(std::fabs(eta - 0.389173) < 1e-5);
  CHECK(eta / constants::ln2 == doctest::Approx(constants::exp_minus_gamma).epsilon(1e-15));
  CHECK(eta < B0);
  CHECK_THROWS_AS(dickman::b0_constant(1e-10), std::invalid_argument);
}

TEST_CASE("Mertens product") {
  const arith::PrimeSieve sieve(1000000);
  CHECK(dickman::mertens_product(2.0, sieve) == doctest::Approx(2.0));
  CHECK(dickman::mertens_product(10.0, sieve) == doctest::Approx(4.375).epsilon(1e-14));
  CHECK(std::fabs(dickman::mertens_product(1e6, sieve) - constants::exp_gamma * std::log(1e6)) < 0.5);
  CHECK_THROWS_AS(dickman::mertens_product(2e6, sieve), std::invalid_argument);
}

TEST_CASE("friable harmonic sums") {
  const arith::SmoothnessSieve sieve(10000);
  CHECK(dickman::friable_harmonic(2.0, 0.5, sieve) == 1.0);
  double h10 = 0;
  for (int n = 1; n <= 10; ++n) h10 += 1.0 / n;
  CHECK(dickman::friable_harmonic(10.0, 1.0, sieve) == doctest::Approx(h10).epsilon(1e-14));
  CHECK(h10 == doctest::Approx(2.928968).epsilon(1e-6));
  double want = 0;
  for (std::uint32_t n = 1; n <= 8000; ++n)
    if (oracle::largest_prime_factor(n) <= 20) want += 1.0 / n;
  CHECK(dickman::friable_harmonic(20.0, std::log(8000.5) / std::log(20.0), sieve) == doctest::Approx(want).epsilon(1e-12));
  CHECK_THROWS_AS(dickman::friable_harmonic(200.0, 2.0, sieve), std::invalid_argument);
}
