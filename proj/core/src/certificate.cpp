#include "dispersion/certificate.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "dispersion/errors.hpp"
#include "dispersion/prng.hpp"

namespace dispersion {

namespace {

constexpr mpfr_prec_t kUnionBoundPrecision = 256;

void require_q(std::uint64_t q) {
  if (q < 2) throw DomainError("q must be at least 2");
  if (q > (std::uint64_t{1} << 31)) throw DomainError("q too large");
}

// (1 - r)^m >= r, decided exactly with r = a/b: (b - a)^m · b >= a · b^m.
bool power_at_least(const mpz_class& a, const mpz_class& b, std::uint64_t m) {
  mpz_class lhs;
  mpz_class rhs;
  const mpz_class c = b - a;
  mpz_pow_ui(lhs.get_mpz_t(), c.get_mpz_t(), m);
  mpz_pow_ui(rhs.get_mpz_t(), b.get_mpz_t(), m);
  lhs *= b;
  rhs *= a;
  return lhs >= rhs;
}

// Advances a strictly increasing 1-based k-subset of [d]; false when done.
bool next_combination(std::vector<std::uint32_t>& idx, std::uint64_t d) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i-- > 0) {
    if (idx[i] < d - (k - 1 - i)) {
      ++idx[i];
      for (std::size_t t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
      return true;
    }
  }
  return false;
}

// Advances a value tuple over [1, q-1]^k, last entry fastest; false on wrap.
bool next_values(std::vector<std::uint32_t>& vals, std::uint64_t q) {
  std::size_t i = vals.size();
  while (i-- > 0) {
    if (vals[i] + 1 < q) {
      ++vals[i];
      return true;
    }
    vals[i] = 1;
  }
  return false;
}

std::vector<std::uint32_t> first_combination(std::uint64_t m) {
  std::vector<std::uint32_t> idx(m);
  for (std::uint64_t i = 0; i < m; ++i) idx[i] = static_cast<std::uint32_t>(i + 1);
  return idx;
}

// Lexicographic rank of a value tuple over [1, q-1]^k.
mpz_class value_rank(const std::vector<std::uint32_t>& vals, std::uint64_t q) {
  mpz_class r = 0;
  for (auto v : vals) r = r * static_cast<unsigned long>(q - 1) + (v - 1);
  return r;
}

// Per-point view used by the certificate: level[i] = k when coordinate i
// equals k/q with 1 <= k <= q-1 (0 otherwise), middle[i] when coordinate i
// lies in [1/q, (q-1)/q].
struct GridView {
  std::size_t d = 0;
  std::size_t count = 0;
  std::vector<std::uint32_t> level;
  std::vector<char> middle;
  bool on_grid = true;
};

GridView grid_view(const PointSet& points, std::uint64_t q) {
  GridView v;
  v.d = points.dim();
  v.count = points.size();
  v.level.resize(v.count * v.d);
  v.middle.resize(v.count * v.d);
  const Scalar lo(mpq_class(1, static_cast<unsigned long>(q)));
  const Scalar hi(mpq_class(static_cast<unsigned long>(q - 1), static_cast<unsigned long>(q)));
  const Scalar qs(mpz_class(static_cast<unsigned long>(q)));
  for (std::size_t p = 0; p < v.count; ++p) {
    for (std::size_t i = 0; i < v.d; ++i) {
      const Scalar& x = points[p][i];
      const bool mid = lo <= x && x <= hi;
      const Scalar scaled = x * qs;
      std::uint32_t k = 0;
      if (mid && scaled.is_integer()) k = static_cast<std::uint32_t>(scaled.floor().get_ui());
      v.level[p * v.d + i] = k;
      v.middle[p * v.d + i] = mid ? 1 : 0;
      if (k == 0) v.on_grid = false;
    }
  }
  return v;
}

// Value tuples per combination up to which a presence bitmap is used
// instead of sorting the projected tuples.
constexpr std::uint64_t kDenseTuples = 1U << 22;

struct Scratch {
  std::vector<std::uint32_t> tuples;
  std::vector<char> seen;
  std::vector<char> fixed;
};

// First value tuple (lexicographic) of the combination `idx` that no point
// matches, or nullopt if every tuple is hit. `dense` is (q-1)^m when that is
// at most kDenseTuples, otherwise 0.
std::optional<std::vector<std::uint32_t>> first_missing(const GridView& view, const std::vector<std::uint32_t>& idx,
                                                        std::uint64_t q, std::uint64_t dense, Scratch& scratch) {
  const std::size_t m = idx.size();
  const std::size_t d = view.d;
  scratch.tuples.clear();
  if (dense != 0) scratch.seen.assign(dense, 0);
  if (!view.on_grid) {
    scratch.fixed.assign(d, 0);
    for (auto i : idx) scratch.fixed[i - 1] = 1;
  }
  for (std::size_t p = 0; p < view.count; ++p) {
    const std::uint32_t* level = view.level.data() + p * d;
    bool ok = true;
    if (!view.on_grid) {
      // Closed-box membership: free coordinates in [1/q, (q-1)/q], fixed
      // coordinates exactly on their level.
      const char* mid = view.middle.data() + p * d;
      for (std::size_t i = 0; i < d && ok; ++i) ok = scratch.fixed[i] ? level[i] != 0 : mid[i] != 0;
    }
    if (!ok) continue;
    if (dense != 0) {
      std::uint64_t rank = 0;
      for (auto i : idx) rank = rank * (q - 1) + (level[i - 1] - 1);
      scratch.seen[rank] = 1;
    } else {
      for (auto i : idx) scratch.tuples.push_back(level[i - 1]);
    }
  }

  if (dense != 0) {
    const auto gap = std::find(scratch.seen.begin(), scratch.seen.end(), 0);
    if (gap == scratch.seen.end()) return std::nullopt;
    auto rank = static_cast<std::uint64_t>(gap - scratch.seen.begin());
    std::vector<std::uint32_t> out(m);
    for (std::size_t j = m; j-- > 0;) {
      out[j] = static_cast<std::uint32_t>(rank % (q - 1) + 1);
      rank /= q - 1;
    }
    return out;
  }

  // Sort the projected tuples and walk them against the lexicographic
  // sequence of all tuples; the first gap is the first missing pattern.
  const auto& tuples = scratch.tuples;
  const std::size_t rows = tuples.size() / m;
  std::vector<std::size_t> order(rows);
  for (std::size_t r = 0; r < rows; ++r) order[r] = r;
  auto row = [&](std::size_t r) { return tuples.begin() + static_cast<std::ptrdiff_t>(r * m); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + m, row(b), row(b) + m);
  });

  std::vector<std::uint32_t> expected(m, 1);
  std::size_t r = 0;
  while (true) {
    // Skip present tuples smaller than `expected` (duplicates).
    while (r < rows && std::lexicographical_compare(row(order[r]), row(order[r]) + m, expected.begin(), expected.end())) ++r;
    if (r == rows || !std::equal(expected.begin(), expected.end(), row(order[r]))) return expected;
    if (!next_values(expected, q)) return std::nullopt;
  }
}

}  // namespace

std::uint64_t exponent_M(const Scalar& r) {
  if (!(Scalar(0) < r && r < Scalar(1))) throw DomainError("r = " + r.str() + " outside (0,1)");
  const mpz_class a = r.numerator();
  const mpz_class b = r.denominator();

  // Floating estimate of ln r / ln(1 - r), then exact correction.
  const Real rr(r.raw(), 128);
  const Real one_minus(mpq_class(1 - r.raw()), 128);
  const Real ratio = log(rr) / log(one_minus);
  mpz_class est = floor_integer(ratio);
  if (est < 0) est = 0;
  std::uint64_t m = est.get_ui();
  while (m > 0 && !power_at_least(a, b, m)) --m;
  while (power_at_least(a, b, m + 1)) ++m;
  return m;
}

std::uint64_t effective_M(const Scalar& r, std::uint64_t d) { return std::min(exponent_M(r), d); }

std::string GridPattern::str() const {
  std::ostringstream os;
  auto list = [&](const std::vector<std::uint32_t>& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
  };
  list(fixed_indices);
  os << ':';
  list(fixed_values);
  return os.str();
}

mpz_class covering_family_size(std::uint64_t q, std::uint64_t d) {
  require_q(q);
  if (d < 1) throw DomainError("d must be at least 1");
  const std::uint64_t m = effective_M(Scalar(mpq_class(1, static_cast<unsigned long>(q))), d);
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), d, m);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), q - 1, m);
  return binom * power;
}

PatternEnumerator::PatternEnumerator(std::uint64_t q, std::uint64_t d) : q_(q), d_(d) {
  require_q(q);
  if (d < 1) throw DomainError("d must be at least 1");
  m_ = effective_M(Scalar(mpq_class(1, static_cast<unsigned long>(q))), d);
  pattern_.fixed_indices = first_combination(m_);
  pattern_.fixed_values.assign(m_, 1);
}

void PatternEnumerator::advance() {
  if (done_) return;
  if (next_values(pattern_.fixed_values, q_)) return;
  if (!next_combination(pattern_.fixed_indices, d_)) done_ = true;
}

void PatternEnumerator::next_indices() {
  if (done_) return;
  std::fill(pattern_.fixed_values.begin(), pattern_.fixed_values.end(), 1U);
  if (!next_combination(pattern_.fixed_indices, d_)) done_ = true;
}

std::vector<GridPattern> enumerate_patterns(std::uint64_t q, std::uint64_t d) {
  std::vector<GridPattern> out;
  for (PatternEnumerator e(q, d); !e.done(); e.advance()) out.push_back(e.current());
  return out;
}

Box pattern_to_box(const GridPattern& pattern, std::uint64_t q, std::uint64_t d) {
  require_q(q);
  const auto& idx = pattern.fixed_indices;
  const auto& val = pattern.fixed_values;
  if (idx.size() != val.size()) throw DomainError("pattern index and value lists differ in length");
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 1 || idx[i] > d || (i > 0 && idx[i] <= idx[i - 1])) {
      throw DomainError("pattern indices must be strictly increasing within [1, d]");
    }
    if (val[i] < 1 || val[i] >= q) throw DomainError("pattern values must lie in [1, q-1]");
  }
  const auto qq = static_cast<unsigned long>(q);
  const Scalar lo(mpq_class(1, qq));
  const Scalar hi(mpq_class(qq - 1, qq));
  std::vector<Interval> iv(d, Interval::closed(lo, hi));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    iv[idx[i] - 1] = Interval::singleton(Scalar(mpq_class(val[i], qq)));
  }
  return Box(std::move(iv));
}

CertificateReport certificate_check(const PointSet& points, std::uint64_t q, const CertificateOptions& options) {
  require_q(q);
  CertificateReport report;
  report.q = q;
  report.d = points.dim();
  report.M = exponent_M(Scalar(mpq_class(1, static_cast<unsigned long>(q))));
  report.M_eff = std::min<std::uint64_t>(report.M, report.d);
  report.family_size = covering_family_size(q, report.d);
  if (report.family_size > static_cast<unsigned long>(options.family_budget)) {
    report.warning = "covering family of " + report.family_size.get_str() + " boxes exceeds the budget of " +
                     std::to_string(options.family_budget) + "; the check may be slow";
  }

  const GridView view = grid_view(points, q);
  const std::uint64_t m = report.M_eff;
  mpz_class per_combination;
  mpz_ui_pow_ui(per_combination.get_mpz_t(), q - 1, m);
  const std::uint64_t dense = options.dense_bitmap && per_combination <= static_cast<unsigned long>(kDenseTuples)
                                  ? per_combination.get_ui()
                                  : 0;

  // Combination c is handled by worker c % threads. The smallest violating
  // combination index wins, so the outcome does not depend on threads.
  struct Found {
    std::uint64_t combination = 0;
    std::vector<std::uint32_t> indices;
    std::vector<std::uint32_t> values;
  };
  const unsigned threads = std::max(1U, options.threads);
  std::atomic<std::uint64_t> cutoff{std::numeric_limits<std::uint64_t>::max()};
  std::vector<std::optional<Found>> found(threads);

  auto worker = [&](unsigned tid) {
    std::vector<std::uint32_t> idx = first_combination(m);
    Scratch scratch;
    std::uint64_t c = 0;
    do {
      if (c >= cutoff.load(std::memory_order_relaxed)) break;
      if (c % threads == tid) {
        if (auto missing = first_missing(view, idx, q, dense, scratch)) {
          found[tid] = Found{c, idx, std::move(*missing)};
          std::uint64_t cur = cutoff.load();
          while (c < cur && !cutoff.compare_exchange_weak(cur, c)) {
          }
          break;
        }
      }
      ++c;
    } while (next_combination(idx, report.d));
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }

  const Found* first = nullptr;
  for (const auto& f : found) {
    if (f && (first == nullptr || f->combination < first->combination)) first = &*f;
  }
  if (first == nullptr) {
    report.holds = true;
    report.patterns_checked = report.family_size;
  } else {
    report.holds = false;
    report.first_violation = GridPattern{first->indices, first->values};
    report.patterns_checked =
        mpz_class(static_cast<unsigned long>(first->combination)) * per_combination + value_rank(first->values, q) + 1;
  }
  return report;
}

std::uint64_t minimal_certified_n(std::uint64_t q, std::uint64_t d, std::uint64_t seed, std::uint64_t max_draws,
                                  std::uint64_t family_budget) {
  require_q(q);
  if (d < 1) throw DomainError("d must be at least 1");
  const mpz_class size = covering_family_size(q, d);
  if (size > static_cast<unsigned long>(family_budget)) {
    throw BudgetExceeded("covering family of " + size.get_str() + " boxes exceeds the budget of " +
                         std::to_string(family_budget));
  }
  const std::uint64_t m = effective_M(Scalar(mpq_class(1, static_cast<unsigned long>(q))), d);
  std::uint64_t per_combination = 1;
  for (std::uint64_t i = 0; i < m; ++i) per_combination *= q - 1;

  std::vector<bool> covered(size.get_ui(), false);
  std::uint64_t uncovered = size.get_ui();
  SplitMix64 rng(seed);
  std::vector<std::uint32_t> point(d);
  for (std::uint64_t t = 0; t < max_draws; ++t) {
    for (auto& k : point) k = static_cast<std::uint32_t>(1 + rng.below(q - 1));
    std::vector<std::uint32_t> idx = first_combination(m);
    std::uint64_t c = 0;
    do {
      std::uint64_t rank = 0;
      for (auto i : idx) rank = rank * (q - 1) + (point[i - 1] - 1);
      const std::uint64_t slot = c * per_combination + rank;
      if (!covered[slot]) {
        covered[slot] = true;
        --uncovered;
      }
      ++c;
    } while (next_combination(idx, d));
    if (uncovered == 0) return t + 1;
  }
  throw BudgetExceeded("no certificate within " + std::to_string(max_draws) + " draws");
}

UnionBoundReport union_bound_check(std::uint64_t q, std::uint64_t d, const mpz_class& n) {
  require_q(q);
  if (d < 2) throw DomainError("union_bound_check needs d >= 2");
  UnionBoundReport out;
  out.M = exponent_M(Scalar(mpq_class(1, static_cast<unsigned long>(q))));

  mpz_class q_pow;
  mpz_ui_pow_ui(q_pow.get_mpz_t(), q, out.M);
  const mpq_class hits(n, q_pow);  // n · r^M, exact
  const mpz_class dq = mpz_class(static_cast<unsigned long>(d)) * static_cast<unsigned long>(q);
  const mpz_class big_m(static_cast<unsigned long>(out.M));

  // M·ln(dq) is enclosed in [lo, hi]; the sign of M·ln(dq) - n·r^M is
  // settled by exact comparison of the enclosure with the rational n·r^M.
  for (mpfr_prec_t prec = kUnionBoundPrecision;; prec *= 2) {
    const Real lo = mul(Real(big_m, prec), log(Real(dq, prec, Round::Down), Round::Down), Round::Down);
    const Real hi = mul(Real(big_m, prec), log(Real(dq, prec, Round::Up), Round::Up), Round::Up);
    const bool holds = compare(hi, hits) <= 0;
    const bool fails = compare(lo, hits) > 0;
    if (holds || fails || prec > (1 << 16)) {
      out.bound_holds = holds;
      out.log_lhs = Real(big_m, prec) * log(Real(dq, prec)) - Real(hits, prec);
      break;
    }
  }
  return out;
}

}  // namespace dispersion
