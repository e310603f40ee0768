#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "charsum/arith.hpp"
#include "charsum/character_sums.hpp"
#include "charsum/config.hpp"
#include "charsum/dickman.hpp"
#include "charsum/pretend.hpp"

namespace charsum::verify {

using sums::Parity;

/// Per-discriminant profile. The fields up to euler_residual are the dataset
/// columns; the membership fields are recomputed on load.
struct DiscriminantRecord {
  std::int64_t d = 0;
  Parity parity = Parity::odd;
  std::int64_t M = 0;
  std::uint64_t N = 0;
  double m = 0.0;
  std::int64_t a = 0;  ///< best approximation a/b of alpha = N/|d|
  std::int64_t b = 1;
  std::int64_t b0 = 1;
  double u0 = 0.0;  ///< |alpha - a/b| = 1/(b e^{scale tau u0}); +inf when alpha == a/b
  double L_b0 = 1.0;
  double delta = 0.0;  ///< sum_{p <= y} |1 - chi(p)|/(p - 1)
  double E = 0.0;      ///< (1 + b/phi(b) (e^delta - 1)) log log y
  std::uint32_t xi_conductor = 1;
  double distance_sq = 0.0;
  double small_prime_defect = 0.0;       ///< sum_{p <= e^tau, p != b0} (1 - chi(p))/p
  double euler_residual = 0.0;  ///< |m - e^{-gamma} (b0/phi(b0)) L_b0|

  bool membership_evaluated = false;
  bool member = false;
  double syz = 0.0;  ///< certified S_{y,z} upper bound (when evaluated with m > tau)

  std::uint64_t modulus() const noexcept { return static_cast<std::uint64_t>(d < 0 ? -d : d); }
  bool odd() const noexcept { return d < 0; }
};

enum class Family : std::uint8_t { odd, even, all };
const char* family_name(Family f) noexcept;
Family family_from_name(const std::string& s);

struct DistributionRow {
  double tau = 0.0;
  std::size_t count = 0;  ///< #{d in family : m > tau}
  double psi = 0.0;
  double lower_main = 0.0;  ///< NaN where the main term is undefined (tau <= 0, family all)
  double upper_main = 0.0;
};

struct DistributionTable {
  std::uint64_t x = 0;
  Family family = Family::all;
  std::size_t total = 0;
  std::vector<DistributionRow> rows;
};

/// Psi(tau) = #{d in family : m > tau} / #family, with the main terms
/// exp(-e^{tau-eta-B0}/tau), exp(-e^{tau-eta-log2-2}/tau) (odd) and
/// exp(-e^{sqrt3 tau-B0}/(sqrt3 tau)), exp(-e^{sqrt3 tau}/tau) (even).
/// Throws std::invalid_argument on an empty family.
DistributionTable psi(const std::vector<DiscriminantRecord>& records, std::uint64_t x, Family family,
                      const std::vector<double>& taus);

struct Summary {
  std::string name;
  std::size_t count = 0;
  double median = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

Summary summarize(std::string name, std::vector<double> values);

struct Assertion {
  std::string name;
  bool hard = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  ///< "<=", ">", ...
  bool pass = false;
};

struct TheoremReport {
  std::string theorem;
  std::uint64_t x = 0;
  double tau = 0.0;
  std::map<std::string, double> parameters;
  std::vector<Summary> summaries;
  std::vector<Assertion> assertions;
  std::vector<std::string> notes;
  std::size_t members = 0;
  bool vacuous = false;

  bool hard_pass() const noexcept;
  bool soft_pass() const noexcept;
};

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

/// Stable-key JSON and a fixed-width text table.
std::string to_json(const TheoremReport& report);
std::string to_text(const TheoremReport& report);
std::string to_json(const DistributionTable& table);
std::string to_text(const DistributionTable& table);

/// Owns the sieves, character list and Dickman table a run needs; the
/// scan and the theorem checks are const and safe to share.
class Harness {
 public:
  explicit Harness(Config cfg);
  /// Reuse an already built (e.g. cached) Dickman table.
  Harness(Config cfg, dickman::DickmanTable table);

  const Config& config() const noexcept { return cfg_; }
  const dickman::DickmanTable& dickman_table() const noexcept { return *table_; }

  /// Friability bound for the family of d at the configured tau.
  double y_for(bool odd) const noexcept;

  /// Refuses with BudgetError when x exceeds the configured budget.
  void check_budget() const;
  /// Rough single-core seconds for a full scan at x.
  static double estimated_seconds(std::uint64_t x) noexcept;

  DiscriminantRecord record_for(arith::FundamentalDiscriminant d) const;
  /// One record per d in F(x), in canonical order, membership included.
  std::vector<DiscriminantRecord> scan() const;
  /// Fills the membership fields that a dataset file does not carry.
  void annotate_membership(std::vector<DiscriminantRecord>& records) const;

  TheoremReport check_thm11(const std::vector<DiscriminantRecord>& records) const;
  TheoremReport check_thm12(const std::vector<DiscriminantRecord>& records, const std::vector<double>& betas) const;
  TheoremReport check_thm13(const std::vector<DiscriminantRecord>& records) const;
  TheoremReport check_thm14(const std::vector<DiscriminantRecord>& records, const std::vector<double>& betas) const;

  /// e^{-gamma} pi S(t)/sqrt|d|: the left-hand side shared by the partial-sum theorems.
  static double normalized_partial_sum(std::int64_t S, std::uint64_t modulus) noexcept;

 private:
  void annotate_one(DiscriminantRecord& r) const;
  void fill_record(DiscriminantRecord& r, std::span<const std::int8_t> half_period) const;
  std::uint32_t dmax_for(bool odd) const noexcept;
  template <class Fn>
  void parallel_for(std::size_t n, Fn&& fn) const;

  Config cfg_;
  std::shared_ptr<const dickman::DickmanTable> table_;
  std::unique_ptr<arith::PrimeSieve> primes_;
  std::unique_ptr<arith::SmoothnessSieve> smooth_;
  std::vector<pretend::PrimitiveCharacter> chars_odd_;
  std::vector<pretend::PrimitiveCharacter> chars_even_;
};

}  // namespace charsum::verify
