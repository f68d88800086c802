#include "dispersion/constructions.hpp"

#include <algorithm>
#include <string>

#include "dispersion/errors.hpp"
#include "dispersion/prng.hpp"
#include "dispersion/real.hpp"

namespace dispersion {

namespace {

const Scalar kQuarter{1, 4};
const Scalar kHalf{1, 2};

void require_thm1_range(const Scalar& r) {
  if (!(kQuarter < r && r < Scalar(1))) {
    throw DomainError("r = " + r.str() + " outside (1/4,1)");
  }
}

}  // namespace

DiagonalParams::DiagonalParams(Scalar r, std::size_t d) : r_(std::move(r)), d_(d) {
  require_thm1_range(r_);
  if (d_ < 2) throw DomainError("the diagonal construction needs d >= 2");
}

bool DiagonalParams::center_only() const { return r_ >= kHalf; }

Scalar DiagonalParams::delta() const { return r_ - kQuarter; }

std::size_t DiagonalParams::k0() const {
  return static_cast<std::size_t>((Scalar(1) / delta()).floor().get_ui());
}

PointSet diagonal_set(const DiagonalParams& params) {
  PointSet out(params.d());
  if (params.center_only()) {
    out.add(Point::diagonal(kHalf, params.d()));
    return out;
  }
  const Scalar delta = params.delta();
  std::vector<Scalar> multiples;
  const std::size_t k0 = params.k0();
  multiples.reserve(k0 + 1);
  for (std::size_t k = 1; k <= k0; ++k) multiples.push_back(Scalar(static_cast<long>(k)) * delta);
  multiples.push_back(kHalf);
  std::sort(multiples.begin(), multiples.end());
  multiples.erase(std::unique(multiples.begin(), multiples.end()), multiples.end());
  for (const auto& c : multiples) out.add(Point::diagonal(c, params.d()));
  return out;
}

DiagonalConstant thm1_constant(const Scalar& r) {
  require_thm1_range(r);
  DiagonalConstant c;
  c.value = (Scalar(1) / (r - kQuarter)).floor() + 1;
  c.one_point_suffices = r >= kHalf;
  return c;
}

PointSet random_grid_set(const GridParams& params) {
  if (params.q < 2) throw DomainError("q must be at least 2");
  if (params.d < 1) throw DomainError("d must be at least 1");
  const std::uint64_t d = params.d;
  if (params.n > 0 && d > params.budget / params.n) {
    throw BudgetExceeded("random grid set of " + std::to_string(params.n) + " points in dimension " +
                         std::to_string(d) + " exceeds the materialisation budget; use the certificate "
                         "search (minimal_certified_n) instead");
  }
  std::vector<Scalar> levels;
  levels.reserve(params.q - 1);
  for (std::uint64_t k = 1; k < params.q; ++k) {
    levels.emplace_back(mpq_class(static_cast<unsigned long>(k), static_cast<unsigned long>(params.q)));
  }
  SplitMix64 rng(params.seed);
  PointSet out(params.d);
  for (std::uint64_t t = 0; t < params.n; ++t) {
    std::vector<Scalar> c;
    c.reserve(d);
    for (std::uint64_t i = 0; i < d; ++i) c.push_back(levels[rng.below(params.q - 1)]);
    out.add(Point(std::move(c)));
  }
  return out;
}

mpz_class paper_sample_size(std::uint64_t q, std::uint64_t d) {
  if (q < 2 || d < 2) throw DomainError("paper_sample_size needs q >= 2 and d >= 2");
  if (q > (std::uint64_t{1} << 20)) throw DomainError("q too large");
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), q, q * q + 2);

  // q^(q^2+2) is exact; the logarithmic factor is enclosed by evaluating
  // every step rounded down and rounded up. The ceiling is accepted once
  // both enclosures agree on it.
  mpfr_prec_t prec = 128 + static_cast<mpfr_prec_t>(mpz_sizeinbase(power.get_mpz_t(), 2));
  for (int attempt = 0; attempt < 12; ++attempt, prec *= 2) {
    auto eval = [&](Round rnd) {
      const Real p(power, prec, rnd);
      const Real lq = log(Real(mpz_class(static_cast<unsigned long>(q)), prec), rnd);
      const Real ld = log(Real(mpz_class(static_cast<unsigned long>(d)), prec), rnd);
      const Real factor = add(mul(Real(4.0, prec), lq, rnd), Real(1.0, prec), rnd);
      return mul(mul(p, factor, rnd), ld, rnd);
    };
    const mpz_class lo = ceil_integer(eval(Round::Down));
    const mpz_class hi = ceil_integer(eval(Round::Up));
    if (lo == hi) return lo;
  }
  throw DomainError("could not certify the ceiling of the sample size");
}

BaselineKind parse_baseline_kind(std::string_view name) {
  if (name == "uniform-random") return BaselineKind::UniformRandom;
  if (name == "lattice") return BaselineKind::Lattice;
  throw DomainError("unknown baseline kind '" + std::string(name) + "'");
}

PointSet baseline_set(BaselineKind kind, std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw DomainError("baseline sets need n >= 1 and d >= 1");
  PointSet out(d);
  if (kind == BaselineKind::UniformRandom) {
    constexpr unsigned kBits = 53;
    const mpz_class den = mpz_class(1) << kBits;
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < n; ++t) {
      std::vector<Scalar> c;
      c.reserve(d);
      for (std::size_t i = 0; i < d; ++i) {
        const mpz_class k(static_cast<unsigned long>(rng.below(std::uint64_t{1} << kBits)));
        c.emplace_back(mpq_class(k, den));
      }
      out.add(Point(std::move(c)));
    }
    return out;
  }

  mpz_class root;
  mpz_root(root.get_mpz_t(), mpz_class(static_cast<unsigned long>(n)).get_mpz_t(), d);
  mpz_class check;
  mpz_pow_ui(check.get_mpz_t(), root.get_mpz_t(), d);
  if (check != static_cast<unsigned long>(n)) {
    throw DomainError("lattice needs n = m^d; " + std::to_string(n) + " is not a perfect " +
                      std::to_string(d) + "-th power");
  }
  const auto m = root.get_ui();
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<Scalar> c;
    c.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
      c.emplace_back(mpq_class(static_cast<unsigned long>(2 * idx[i] + 1), 2 * m));
    }
    out.add(Point(std::move(c)));
    for (std::size_t i = d; i-- > 0;) {
      if (++idx[i] < m) break;
      idx[i] = 0;
    }
  }
  return out;
}

}  // namespace dispersion
