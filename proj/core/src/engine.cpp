#include "dispersion/engine.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include "dispersion/errors.hpp"
#include "dispersion/prng.hpp"

namespace dispersion {

CandidateGrid candidate_grid(const PointSet& points) {
  CandidateGrid grid(points.dim());
  for (std::size_t j = 0; j < points.dim(); ++j) {
    auto& g = grid[j];
    g.reserve(points.size() + 2);
    g.emplace_back(0);
    g.emplace_back(1);
    for (const auto& p : points) g.push_back(p[j]);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }
  return grid;
}

namespace {

__extension__ using u128 = unsigned __int128;
using Rank = std::uint32_t;

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t pair_count(std::size_t m) {
  return static_cast<std::uint64_t>(m) * (m - 1) / 2;
}

// Points and the candidate grid mapped to integers: coordinate j of every
// grid value is pos[j][rank] / lcm_j, so box volumes compare as products of
// integer position differences.
struct RankSpace {
  std::size_t dim = 0;
  CandidateGrid grid;
  std::vector<Rank> ranks;  // point-major, deduplicated
  std::size_t count = 0;
  std::vector<mpz_class> lcm;
  std::vector<std::vector<mpz_class>> pos;

  [[nodiscard]] Rank rank(std::size_t point, std::size_t j) const { return ranks[point * dim + j]; }
  [[nodiscard]] Rank top(std::size_t j) const { return static_cast<Rank>(grid[j].size() - 1); }
};

RankSpace build_rank_space(const PointSet& points) {
  RankSpace rs;
  rs.dim = points.dim();
  rs.grid = candidate_grid(points);
  const std::size_t d = rs.dim;

  std::vector<Rank> raw(points.size() * d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto& g = rs.grid[j];
      raw[i * d + j] = static_cast<Rank>(std::lower_bound(g.begin(), g.end(), points[i][j]) - g.begin());
    }
  }
  // Emptiness is a set predicate, so repeated points are dropped.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  auto row_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(raw.begin() + a * d, raw.begin() + (a + 1) * d, raw.begin() + b * d,
                                        raw.begin() + (b + 1) * d);
  };
  auto row_eq = [&](std::size_t a, std::size_t b) {
    return std::equal(raw.begin() + a * d, raw.begin() + (a + 1) * d, raw.begin() + b * d);
  };
  std::sort(order.begin(), order.end(), row_less);
  order.erase(std::unique(order.begin(), order.end(), row_eq), order.end());
  rs.count = order.size();
  rs.ranks.reserve(rs.count * d);
  for (auto i : order) rs.ranks.insert(rs.ranks.end(), raw.begin() + i * d, raw.begin() + (i + 1) * d);

  rs.lcm.resize(d);
  rs.pos.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    mpz_class l = 1;
    for (const auto& v : rs.grid[j]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.raw().get_den_mpz_t());
    rs.lcm[j] = l;
    for (const auto& v : rs.grid[j]) {
      rs.pos[j].push_back(mpz_class(v.raw().get_num() * (l / v.raw().get_den())));
    }
  }
  return rs;
}

mpz_class lcm_product(const RankSpace& rs) {
  mpz_class p = 1;
  for (const auto& l : rs.lcm) p *= l;
  return p;
}

u128 to_u128(const mpz_class& z) {
  const mpz_class lo = z & mpz_class(std::numeric_limits<std::uint64_t>::max());
  const mpz_class hi = z >> 64;
  return (static_cast<u128>(mpz_get_ui(hi.get_mpz_t())) << 64) | mpz_get_ui(lo.get_mpz_t());
}

template <typename Num>
Num convert(const mpz_class& z) {
  if constexpr (std::is_same_v<Num, u128>) {
    return to_u128(z);
  } else {
    return z;
  }
}

Box witness_box(const RankSpace& rs, std::span<const Rank> ends) {
  std::vector<Scalar> lo;
  std::vector<Scalar> hi;
  for (std::size_t j = 0; j < rs.dim; ++j) {
    lo.push_back(rs.grid[j][ends[2 * j]]);
    hi.push_back(rs.grid[j][ends[2 * j + 1]]);
  }
  return Box::open(lo, hi);
}

// Grows a maximal empty open box from a random cell of the candidate grid.
// Returns endpoint ranks (l_0, u_0, ..., l_{d-1}, u_{d-1}).
std::vector<Rank> grow_from_random_seed(const RankSpace& rs, SplitMix64& rng) {
  const std::size_t d = rs.dim;
  constexpr std::uint64_t kDenBits = 53;
  const mpz_class den = mpz_class(1) << kDenBits;

  std::vector<Rank> ends(2 * d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto& g = rs.grid[j];
    while (true) {
      const mpz_class k = mpz_class(static_cast<unsigned long>(rng.below(std::uint64_t{1} << kDenBits)));
      const Scalar x{mpq_class(k, den)};
      const auto it = std::upper_bound(g.begin(), g.end(), x);
      const auto cell_hi = static_cast<Rank>(it - g.begin());
      if (g[cell_hi - 1] == x) continue;  // on a grid line: redraw
      ends[2 * j] = cell_hi - 1;
      ends[2 * j + 1] = cell_hi;
      break;
    }
  }

  std::vector<std::size_t> axes(d);
  std::iota(axes.begin(), axes.end(), 0);
  shuffle(axes.begin(), axes.end(), rng);

  for (const auto j : axes) {
    Rank lo = 0;
    Rank hi = rs.top(j);
    for (std::size_t p = 0; p < rs.count; ++p) {
      bool inside_others = true;
      for (std::size_t k = 0; k < d && inside_others; ++k) {
        if (k == j) continue;
        const Rank r = rs.rank(p, k);
        inside_others = ends[2 * k] < r && r < ends[2 * k + 1];
      }
      if (!inside_others) continue;
      const Rank r = rs.rank(p, j);
      if (r <= ends[2 * j]) lo = std::max(lo, r);
      if (r >= ends[2 * j + 1]) hi = std::min(hi, r);
    }
    ends[2 * j] = lo;
    ends[2 * j + 1] = hi;
  }
  return ends;
}

template <typename Num>
Num box_measure(const RankSpace& rs, const std::vector<std::vector<Num>>& pos, std::span<const Rank> ends) {
  Num v = 1;
  for (std::size_t j = 0; j < rs.dim; ++j) v *= pos[j][ends[2 * j + 1]] - pos[j][ends[2 * j]];
  return v;
}

struct TaskResult {
  bool found = false;
  std::vector<Rank> ends;
  EngineStats stats;
};

// Depth-first enumeration of the candidate boxes in lexicographic endpoint
// order. `active` at depth j holds the points strictly inside the chosen
// intervals of dimensions < j; a box is empty iff no point survives all d
// dimensions.
template <typename Num>
class BranchAndBound {
 public:
  BranchAndBound(const RankSpace& rs, Num floor) : rs_(rs), floor_(std::move(floor)) {
    const std::size_t d = rs.dim;
    pos_.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto& p : rs.pos[j]) pos_[j].push_back(convert<Num>(p));
    }
    suffix_len_.assign(d + 1, Num(1));
    suffix_count_.assign(d + 1, 1);
    for (std::size_t j = d; j-- > 0;) {
      suffix_len_[j] = suffix_len_[j + 1] * convert<Num>(rs.lcm[j]);
      suffix_count_[j] = sat_mul(suffix_count_[j + 1], pair_count(rs.grid[j].size()));
    }
    buffers_.resize(d);
    ends_.resize(2 * d);
  }

  // All boxes whose first lower endpoint has rank `l0`.
  TaskResult run(Rank l0) {
    result_ = TaskResult{};
    std::vector<std::uint32_t> all(rs_.count);
    std::iota(all.begin(), all.end(), 0);
    if (rs_.dim == 1) {
      last_dim(all, Num(1), l0);
    } else {
      inner(0, all, Num(1), l0);
    }
    return std::move(result_);
  }

 private:
  bool prunable(const Num& bound) const {
    return bound < floor_ || (result_.found && bound <= best_);
  }

  void consider(const Num& vol) {
    ++result_.stats.candidates_examined;
    if (!result_.found || vol > best_) {
      result_.found = true;
      best_ = vol;
      result_.ends = ends_;
    }
  }

  Num length(std::size_t j, Rank l, Rank u) const { return pos_[j][u] - pos_[j][l]; }

  void recurse(std::size_t j, std::span<const std::uint32_t> active, const Num& partial) {
    if (active.empty()) {
      // Nothing left to avoid: the full remaining cube is the only
      // candidate that can attain the subtree maximum.
      for (std::size_t k = j; k < rs_.dim; ++k) {
        ends_[2 * k] = 0;
        ends_[2 * k + 1] = rs_.top(k);
      }
      consider(partial * suffix_len_[j]);
      result_.stats.pruned += suffix_count_[j] - 1;
      return;
    }
    if (j + 1 == rs_.dim) {
      last_dim(active, partial, std::nullopt);
    } else {
      inner(j, active, partial, std::nullopt);
    }
  }

  // Dimension j < d-1. Children for a fixed lower endpoint are prefixes of
  // the active points sorted by rank in j, growing with the upper endpoint.
  void inner(std::size_t j, std::span<const std::uint32_t> active, const Num& partial,
             std::optional<Rank> only_lo) {
    auto& sorted = buffers_[j];
    sorted.assign(active.begin(), active.end());
    std::sort(sorted.begin(), sorted.end(),
              [&](std::uint32_t a, std::uint32_t b) { return rs_.rank(a, j) < rs_.rank(b, j); });

    const bool penultimate = j + 2 == rs_.dim;
    const Rank top = rs_.top(j);
    const Rank lo_begin = only_lo ? *only_lo : 0;
    const Rank lo_end = only_lo ? *only_lo + 1 : top;
    std::size_t first = 0;
    for (Rank l = lo_begin; l < lo_end; ++l) {
      while (first < sorted.size() && rs_.rank(sorted[first], j) <= l) ++first;
      std::size_t last = first;
      ends_[2 * j] = l;
      if (penultimate) last_ranks_.clear();
      for (Rank u = l + 1; u <= top; ++u) {
        while (last < sorted.size() && rs_.rank(sorted[last], j) < u) {
          if (penultimate) {
            const Rank r = rs_.rank(sorted[last], j + 1);
            last_ranks_.insert(std::upper_bound(last_ranks_.begin(), last_ranks_.end(), r), r);
          }
          ++last;
        }
        ends_[2 * j + 1] = u;
        const Num next = partial * length(j, l, u);
        if (prunable(next * suffix_len_[j + 1])) {
          result_.stats.pruned += suffix_count_[j + 1];
          continue;
        }
        const std::span<const std::uint32_t> child(sorted.data() + first, last - first);
        if (penultimate && !child.empty()) {
          last_dim_sorted(next);
        } else {
          recurse(j + 1, child, next);
        }
      }
    }
  }

  void last_dim(std::span<const std::uint32_t> active, const Num& partial, std::optional<Rank> only_lo) {
    const std::size_t j = rs_.dim - 1;
    last_ranks_.clear();
    for (auto p : active) last_ranks_.push_back(rs_.rank(p, j));
    std::sort(last_ranks_.begin(), last_ranks_.end());
    if (only_lo) {
      // Top-level task of a one-dimensional instance.
      const Rank l = *only_lo;
      const auto it = std::upper_bound(last_ranks_.begin(), last_ranks_.end(), l);
      const Rank u = it == last_ranks_.end() ? rs_.top(j) : *it;
      ends_[2 * j] = l;
      ends_[2 * j + 1] = u;
      consider(partial * length(j, l, u));
      result_.stats.pruned += (rs_.top(j) - l) - 1;
      return;
    }
    last_dim_sorted(partial);
  }

  // Last dimension with the blocking ranks in last_ranks_ (sorted). For a
  // fixed lower endpoint the largest empty choice of upper endpoint is the
  // next blocking rank; any smaller choice has strictly smaller volume, and
  // a lower endpoint that is neither 0 nor a blocking rank is dominated by
  // the nearest such rank below it.
  void last_dim_sorted(const Num& partial) {
    const std::size_t j = rs_.dim - 1;
    const Rank top = rs_.top(j);
    std::uint64_t examined = 0;
    Rank l = 0;
    std::size_t idx = 0;
    while (l < top) {
      while (idx < last_ranks_.size() && last_ranks_[idx] <= l) ++idx;
      const Rank u = idx < last_ranks_.size() ? last_ranks_[idx] : top;
      ends_[2 * j] = l;
      ends_[2 * j + 1] = u;
      consider(partial * length(j, l, u));
      ++examined;
      if (idx == last_ranks_.size()) break;
      l = u;
    }
    result_.stats.pruned += pair_count(rs_.grid[j].size()) - examined;
  }

  const RankSpace& rs_;
  Num floor_;
  std::vector<std::vector<Num>> pos_;
  std::vector<Num> suffix_len_;
  std::vector<std::uint64_t> suffix_count_;
  std::vector<std::vector<std::uint32_t>> buffers_;
  std::vector<Rank> last_ranks_;
  std::vector<Rank> ends_;
  Num best_{};
  TaskResult result_;
};

template <typename Num>
DispersionResult solve_pruned(const RankSpace& rs, const EngineOptions& options) {
  std::vector<std::vector<Num>> pos(rs.dim);
  for (std::size_t j = 0; j < rs.dim; ++j) {
    for (const auto& p : rs.pos[j]) pos[j].push_back(convert<Num>(p));
  }

  // A fixed-seed greedy box gives every task the same strict pruning
  // floor, which keeps results and stats independent of scheduling.
  constexpr std::uint64_t kFloorSeed = 0x6469737065727365ULL;
  constexpr std::size_t kFloorSamples = 64;
  SplitMix64 rng(kFloorSeed);
  Num floor = 0;
  for (std::size_t s = 0; s < kFloorSamples; ++s) {
    const auto ends = grow_from_random_seed(rs, rng);
    floor = std::max(floor, box_measure<Num>(rs, pos, ends));
  }

  const Rank tasks = rs.top(0);
  std::vector<TaskResult> results(tasks);
  std::atomic<Rank> next{0};
  auto worker = [&] {
    BranchAndBound<Num> bnb(rs, floor);
    for (Rank t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) results[t] = bnb.run(t);
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, tasks));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  // Tasks are in lexicographic order, so keeping the first strict maximum
  // keeps the lexicographically smallest witness.
  DispersionResult out{Scalar(0), Box::unit(rs.dim), {}};
  const TaskResult* best = nullptr;
  Num best_vol = 0;
  for (const auto& r : results) {
    out.stats.candidates_examined += r.stats.candidates_examined;
    out.stats.pruned += r.stats.pruned;
    if (!r.found) continue;
    const Num v = box_measure<Num>(rs, pos, r.ends);
    if (best == nullptr || v > best_vol) {
      best = &r;
      best_vol = v;
    }
  }
  out.witness = witness_box(rs, best->ends);
  out.value = volume(out.witness);
  return out;
}

// Every candidate box, every point, no shortcuts.
DispersionResult solve_naive(const RankSpace& rs) {
  const std::size_t d = rs.dim;
  std::vector<Rank> ends(2 * d);
  for (std::size_t j = 0; j < d; ++j) {
    ends[2 * j] = 0;
    ends[2 * j + 1] = 1;
  }
  DispersionResult out{Scalar(0), Box::unit(d), {}};
  std::vector<Rank> best_ends;
  Scalar best(-1);
  while (true) {
    ++out.stats.candidates_examined;
    bool empty = true;
    for (std::size_t p = 0; p < rs.count && empty; ++p) {
      bool inside = true;
      for (std::size_t j = 0; j < d && inside; ++j) {
        const Rank r = rs.rank(p, j);
        inside = ends[2 * j] < r && r < ends[2 * j + 1];
      }
      empty = !inside;
    }
    if (empty) {
      Scalar v(1);
      for (std::size_t j = 0; j < d; ++j) v *= rs.grid[j][ends[2 * j + 1]] - rs.grid[j][ends[2 * j]];
      if (v > best) {
        best = v;
        best_ends = ends;
      }
    }
    // Odometer over (l_j, u_j) pairs, last dimension fastest.
    std::size_t j = d;
    while (j-- > 0) {
      if (ends[2 * j + 1] < rs.top(j)) {
        ++ends[2 * j + 1];
        break;
      }
      if (ends[2 * j] + 1 < rs.top(j)) {
        ++ends[2 * j];
        ends[2 * j + 1] = ends[2 * j] + 1;
        break;
      }
      ends[2 * j] = 0;
      ends[2 * j + 1] = 1;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  out.witness = witness_box(rs, best_ends);
  out.value = best;
  return out;
}

}  // namespace

std::uint64_t candidate_count(const CandidateGrid& grid) {
  std::uint64_t total = 1;
  for (const auto& g : grid) total = sat_mul(total, pair_count(g.size()));
  return total;
}

DispersionResult dispersion_exact(const PointSet& points, const EngineOptions& options) {
  const auto rs = build_rank_space(points);
  const auto count = candidate_count(rs.grid);
  if (count > options.budget) {
    throw BudgetExceeded("instance too large for exact engine: " + std::to_string(count) +
                         " candidate boxes exceed the budget of " + std::to_string(options.budget));
  }
  if (!options.prune) return solve_naive(rs);
  // Volumes scaled by the product of the per-dimension denominators are
  // integers bounded by that product.
  if (mpz_sizeinbase(lcm_product(rs).get_mpz_t(), 2) <= 126) return solve_pruned<u128>(rs, options);
  return solve_pruned<mpz_class>(rs, options);
}

std::pair<Scalar, Box> dispersion_lower_witness(const PointSet& points, std::size_t samples,
                                                std::uint64_t seed) {
  if (samples == 0) throw DomainError("samples must be at least 1");
  const auto rs = build_rank_space(points);
  SplitMix64 rng(seed);
  std::optional<Box> best;
  Scalar best_vol(-1);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto ends = grow_from_random_seed(rs, rng);
    Box box = witness_box(rs, ends);
    Scalar v = volume(box);
    if (v > best_vol) {
      best_vol = std::move(v);
      best = std::move(box);
    }
  }
  return {best_vol, *best};
}

SearchResult minimal_dispersion_search(std::size_t n, std::size_t d, const SearchConfig& cfg,
                                       const EngineOptions& options) {
  if (n == 0 || d == 0) throw DomainError("minimal_dispersion_search needs n >= 1 and d >= 1");
  if (cfg.iterations == 0 || cfg.restarts == 0) throw DomainError("iterations and restarts must be >= 1");

  const std::uint64_t res = 2 * (static_cast<std::uint64_t>(n) + 1);
  auto to_set = [&](const std::vector<std::uint64_t>& ks) {
    PointSet ps(d);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Scalar> c;
      c.reserve(d);
      for (std::size_t j = 0; j < d; ++j) {
        c.emplace_back(mpq_class(static_cast<unsigned long>(ks[i * d + j]), static_cast<unsigned long>(res)));
      }
      ps.add(Point(std::move(c)));
    }
    return ps;
  };

  SplitMix64 root(cfg.seed);
  std::optional<SearchResult> best;
  for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
    SplitMix64 rng = root.split();
    std::vector<std::uint64_t> ks(n * d);
    for (auto& k : ks) k = 1 + rng.below(res - 1);
    Scalar current = dispersion_exact(to_set(ks), options).value;
    for (std::size_t it = 0; it < cfg.iterations; ++it) {
      const std::size_t slot = rng.below(n) * d + rng.below(d);
      const std::uint64_t proposal = 1 + rng.below(res - 1);
      if (proposal == ks[slot]) continue;
      const std::uint64_t previous = ks[slot];
      ks[slot] = proposal;
      Scalar v = dispersion_exact(to_set(ks), options).value;
      if (v <= current) {
        current = std::move(v);
      } else {
        ks[slot] = previous;
      }
    }
    if (!best || current < best->value) best = SearchResult{to_set(ks), current};
  }
  return std::move(*best);
}

}  // namespace dispersion
