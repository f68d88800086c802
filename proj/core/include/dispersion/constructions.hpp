#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include <gmpxx.h>

#include "dispersion/geometry.hpp"
#include "dispersion/scalar.hpp"

namespace dispersion {

/// Parameters of the diagonal construction for r in (1/4, 1).
class DiagonalParams {
 public:
  /// Throws DomainError unless 1/4 < r < 1 and d >= 2.
  DiagonalParams(Scalar r, std::size_t d);

  [[nodiscard]] const Scalar& r() const noexcept { return r_; }
  [[nodiscard]] std::size_t d() const noexcept { return d_; }
  /// r >= 1/2: the centre point alone suffices.
  [[nodiscard]] bool center_only() const;
  /// r - 1/4. Only meaningful when !center_only().
  [[nodiscard]] Scalar delta() const;
  /// floor(1/delta). Only meaningful when !center_only().
  [[nodiscard]] std::size_t k0() const;

 private:
  Scalar r_;
  std::size_t d_;
};

/// {k·delta·1 : 1 <= k <= k0} ∪ {1/2·1} without duplicates, or the single
/// centre point when r >= 1/2. Every open box missing it has volume <= r.
[[nodiscard]] PointSet diagonal_set(const DiagonalParams& params);

struct DiagonalConstant {
  mpz_class value;               ///< floor(1/(r - 1/4)) + 1
  bool one_point_suffices = false;  ///< r >= 1/2
};

/// Bound on the size of the diagonal set. Throws DomainError unless
/// 1/4 < r < 1.
[[nodiscard]] DiagonalConstant thm1_constant(const Scalar& r);

inline constexpr std::uint64_t kDefaultMaterializeBudget = 50'000'000ULL;

/// Parameters of the random grid construction on {1/q, ..., (q-1)/q}^d.
struct GridParams {
  std::uint64_t q = 4;
  std::size_t d = 2;
  std::uint64_t n = 1;
  std::uint64_t seed = 0;
  /// Refuse to materialise more than this many coordinates (n·d).
  std::uint64_t budget = kDefaultMaterializeBudget;
};

/// n independent uniform draws (with replacement) from the (q-1)^d grid.
/// Coordinate i of draw t is k/q with k = 1 + below(q-1), drawn in order
/// t = 0..n-1, i = 0..d-1 from one SplitMix64 stream seeded with `seed`.
/// Throws DomainError for q < 2 or d < 1, BudgetExceeded past the budget.
[[nodiscard]] PointSet random_grid_set(const GridParams& params);

/// ceil(q^(q^2+2) · (4 ln q + 1) · ln d), with the ceiling certified by
/// directed-rounding interval evaluation. Throws DomainError unless q >= 2
/// and d >= 2.
[[nodiscard]] mpz_class paper_sample_size(std::uint64_t q, std::uint64_t d);

enum class BaselineKind { UniformRandom, Lattice };

[[nodiscard]] BaselineKind parse_baseline_kind(std::string_view name);

/// Comparison sets. UniformRandom draws every coordinate as k/2^53 with k
/// uniform in [0, 2^53) from a SplitMix64 stream. Lattice needs n = m^d
/// and returns the centred grid {(2i-1)/(2m)}^d in lexicographic order.
[[nodiscard]] PointSet baseline_set(BaselineKind kind, std::size_t n, std::size_t d,
                                    std::uint64_t seed);

}  // namespace dispersion
