#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dispersion/geometry.hpp"
#include "dispersion/real.hpp"
#include "dispersion/scalar.hpp"

namespace dispersion {

/// floor(ln r / ln(1 - r)): the largest m >= 0 with (1 - r)^m >= r, which
/// is how it is computed (exactly). Throws DomainError unless 0 < r < 1.
[[nodiscard]] std::uint64_t exponent_M(const Scalar& r);

/// min(exponent_M(r), d).
[[nodiscard]] std::uint64_t effective_M(const Scalar& r, std::uint64_t d);

/// One element of the covering family: a closed box whose coordinates at
/// `fixed_indices` are the singletons {k/q} for the matching value k, and
/// [1/q, (q-1)/q] everywhere else. Indices are 1-based and strictly
/// increasing; values lie in [1, q-1].
struct GridPattern {
  std::vector<std::uint32_t> fixed_indices;
  std::vector<std::uint32_t> fixed_values;

  /// "(1,2):(2,2)".
  [[nodiscard]] std::string str() const;

  friend bool operator==(const GridPattern&, const GridPattern&) = default;
  friend auto operator<=>(const GridPattern&, const GridPattern&) = default;
};

/// C(d, M_eff) · (q-1)^M_eff with M_eff = effective_M(1/q, d).
[[nodiscard]] mpz_class covering_family_size(std::uint64_t q, std::uint64_t d);

/// Streams the covering family in lexicographic order, index tuples major
/// and value tuples minor. Nothing beyond the current pattern is stored.
class PatternEnumerator {
 public:
  PatternEnumerator(std::uint64_t q, std::uint64_t d);

  /// Current pattern; valid until the next call to advance().
  [[nodiscard]] const GridPattern& current() const noexcept { return pattern_; }
  [[nodiscard]] bool done() const noexcept { return done_; }
  void advance();
  /// Skips the remaining value tuples of the current index tuple.
  void next_indices();

  [[nodiscard]] std::uint64_t q() const noexcept { return q_; }
  [[nodiscard]] std::uint64_t d() const noexcept { return d_; }
  [[nodiscard]] std::uint64_t m_eff() const noexcept { return m_; }

 private:
  std::uint64_t q_;
  std::uint64_t d_;
  std::uint64_t m_;
  GridPattern pattern_;
  bool done_ = false;
};

/// Materialises every pattern. Intended for small families and tests.
[[nodiscard]] std::vector<GridPattern> enumerate_patterns(std::uint64_t q, std::uint64_t d);

/// Any number of fixed coordinates is accepted (family members fix exactly
/// M_eff). Throws DomainError for bad indices or values.
[[nodiscard]] Box pattern_to_box(const GridPattern& pattern, std::uint64_t q, std::uint64_t d);

struct CertificateReport {
  std::uint64_t q = 0;
  std::uint64_t d = 0;
  std::uint64_t M = 0;
  std::uint64_t M_eff = 0;
  mpz_class family_size;
  bool holds = false;
  std::optional<GridPattern> first_violation;
  /// Family size when the certificate holds, otherwise the lexicographic
  /// rank of the first violation plus one.
  mpz_class patterns_checked;
  /// Set when the family size exceeds the configured budget.
  std::optional<std::string> warning;
};

inline constexpr std::uint64_t kDefaultFamilyBudget = 100'000'000ULL;

struct CertificateOptions {
  std::uint64_t family_budget = kDefaultFamilyBudget;
  unsigned threads = 1;
  /// Mark tuples in a bitmap when (q-1)^M_eff is small; otherwise (or when
  /// false) projected tuples are sorted. Both give the same report.
  bool dense_bitmap = true;
};

/// Checks that every covering-family box for (q, d = X.dim()) contains a
/// point of X. When X lies on the grid {1/q..(q-1)/q}^d only the fixed
/// coordinates are compared; otherwise full closed-box membership is used.
/// The reported violation is the lexicographically first one regardless of
/// the thread count.
[[nodiscard]] CertificateReport certificate_check(const PointSet& points, std::uint64_t q,
                                                  const CertificateOptions& options = {});

/// Draws grid points one at a time (the random_grid_set stream for the
/// same seed) and returns the first count at which the certificate holds.
/// Throws BudgetExceeded if the family exceeds `family_budget` or if no
/// certificate is reached within `max_draws` points.
[[nodiscard]] std::uint64_t minimal_certified_n(std::uint64_t q, std::uint64_t d, std::uint64_t seed,
                                                std::uint64_t max_draws,
                                                std::uint64_t family_budget = kDefaultFamilyBudget);

struct UnionBoundReport {
  std::uint64_t M = 0;
  /// M·ln(dq) - n·q^(-M), the log of the union bound's right-hand side.
  Real log_lhs;
  /// log_lhs <= 0, decided exactly against directed-rounding enclosures.
  bool bound_holds = false;
};

/// Throws DomainError unless q >= 2 and d >= 2.
[[nodiscard]] UnionBoundReport union_bound_check(std::uint64_t q, std::uint64_t d, const mpz_class& n);

}  // namespace dispersion
