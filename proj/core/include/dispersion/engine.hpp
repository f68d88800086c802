#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "dispersion/geometry.hpp"
#include "dispersion/scalar.hpp"

namespace dispersion {

/// Per-dimension sorted, deduplicated endpoint candidates {0, 1} ∪ {x_j}.
using CandidateGrid = std::vector<std::vector<Scalar>>;

[[nodiscard]] CandidateGrid candidate_grid(const PointSet& points);

/// Number of candidate boxes prod_j C(|G_j|, 2), saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t candidate_count(const CandidateGrid& grid);

struct EngineStats {
  /// Candidate boxes whose emptiness and volume were evaluated.
  std::uint64_t candidates_examined = 0;
  /// Candidate boxes skipped by bounding or dominance; examined + pruned
  /// always equals candidate_count of the grid.
  std::uint64_t pruned = 0;

  friend bool operator==(const EngineStats&, const EngineStats&) = default;
};

struct DispersionResult {
  Scalar value;
  Box witness;  ///< open, empty, volume(witness) == value
  EngineStats stats;
};

inline constexpr std::uint64_t kDefaultCandidateBudget = 1'000'000'000ULL;

struct EngineOptions {
  /// Refuse instances whose candidate count exceeds this.
  std::uint64_t budget = kDefaultCandidateBudget;
  /// Worker threads; the result and the stats do not depend on it.
  unsigned threads = 1;
  /// Branch-and-bound on remaining full lengths plus dominance in the last
  /// dimension. When false every candidate box is checked naively.
  bool prune = true;
};

/// Exact dispersion: the largest volume of an open box in [0,1]^d missing
/// every point. Maximises over the boxes prod (l_j, u_j) with l_j < u_j in
/// the candidate grid, which contains every inclusion-maximal empty box.
/// Among maximal volumes the lexicographically smallest endpoint tuple
/// (l_1, u_1, ..., l_d, u_d) is returned.
///
/// Throws BudgetExceeded if candidate_count exceeds options.budget.
[[nodiscard]] DispersionResult dispersion_exact(const PointSet& points,
                                                const EngineOptions& options = {});

/// Randomised lower bound: grows a maximal empty open box greedily from
/// `samples` random seed locations and keeps the largest. The returned box
/// is always empty, so the value never exceeds the exact dispersion.
[[nodiscard]] std::pair<Scalar, Box> dispersion_lower_witness(const PointSet& points,
                                                              std::size_t samples,
                                                              std::uint64_t seed);

struct SearchConfig {
  std::size_t iterations = 200;
  std::size_t restarts = 4;
  std::uint64_t seed = 0;
};

struct SearchResult {
  PointSet points;
  Scalar value;  ///< exact dispersion of `points`, an upper bound on disp*(n,d)
};

/// Local search for a point set of n points with small dispersion. Points
/// live on the lattice {k/(2(n+1)) : 1 <= k < 2(n+1)}; each restart draws
/// a random start and then makes single-coordinate moves, accepting any
/// move that does not increase the exact dispersion.
[[nodiscard]] SearchResult minimal_dispersion_search(std::size_t n, std::size_t d,
                                                     const SearchConfig& cfg,
                                                     const EngineOptions& options = {});

}  // namespace dispersion
