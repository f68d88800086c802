#include "dispersion/bounds.hpp"

#include <sstream>

#include "dispersion/constructions.hpp"
#include "dispersion/errors.hpp"

namespace dispersion {

namespace {

constexpr int kCsvDigits = 20;

const Scalar kQuarter{1, 4};

Real integer(std::uint64_t v) { return Real(mpz_class(static_cast<unsigned long>(v))); }

void require_n_d(std::uint64_t n, std::uint64_t d) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (d < 2) throw DomainError("d must be at least 2");
}

void require_small_r(const Scalar& r) {
  if (!(Scalar(0) < r && r <= kQuarter)) throw DomainError("r = " + r.str() + " outside (0,1/4]");
}

}  // namespace

Scalar pigeonhole_lower(std::uint64_t n) {
  return Scalar(mpq_class(1, mpz_class(static_cast<unsigned long>(n)) + 1));
}

Real ahr_lower_disp(std::uint64_t n, std::uint64_t d) {
  require_n_d(n, d);
  const Real l = log2(integer(d));
  return l / (Real(4.0) * (integer(n) + l));
}

Real ahr_lower_N(const Scalar& r, std::uint64_t d) {
  if (!(Scalar(0) < r && r < kQuarter)) throw DomainError("r = " + r.str() + " outside (0,1/4)");
  if (d < 2) throw DomainError("d must be at least 2");
  const Scalar coeff = (Scalar(1) - Scalar(4) * r) / (Scalar(4) * r);
  return Real(coeff.raw()) * log2(integer(d));
}

Real aux_lower_N_quarter(std::uint64_t d) {
  if (d < 1) throw DomainError("d must be at least 1");
  return log2(Real(mpz_class(mpz_class(static_cast<unsigned long>(d)) + 1)));
}

Real larcher_upper(std::uint64_t n, std::uint64_t d) {
  require_n_d(n, d);
  const mpz_class numerator = mpz_class(1) << static_cast<mp_bitcnt_t>(7 * d + 1);
  return Real(numerator) / integer(n);
}

Real rudolf_upper(std::uint64_t n, std::uint64_t d) {
  require_n_d(n, d);
  const mpz_class nine_n = mpz_class(static_cast<unsigned long>(n)) * 9;
  if (nine_n <= static_cast<unsigned long>(d)) throw DomainError("rudolf_upper needs 9n > d");
  const mpq_class ratio(nine_n, mpz_class(static_cast<unsigned long>(d)));
  const mpq_class lead(mpz_class(static_cast<unsigned long>(d)) * 4, mpz_class(static_cast<unsigned long>(n)));
  return Real(lead) * log(Real(ratio));
}

Real rudolf_upper_N(const Scalar& r, std::uint64_t d) {
  require_small_r(r);
  if (d < 1) throw DomainError("d must be at least 1");
  const Scalar q = Scalar(1) / r;
  const Scalar lead = Scalar(8) * Scalar(mpz_class(static_cast<unsigned long>(d))) * q;
  return Real(lead.raw()) * log(Real((Scalar(33) * q).raw()));
}

Real thm2_constant(const Scalar& r) {
  require_small_r(r);
  const mpz_class q = (Scalar(1) / r).ceil();
  const unsigned long qq = q.get_ui();
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), qq, qq * qq + 2);
  return Real(power) * (Real(4.0) * log(Real(q)) + Real(1.0));
}

std::vector<BoundsReport> bounds_table(const BoundsQuery& query, std::span<const std::uint64_t> d_range) {
  std::vector<BoundsReport> out;
  out.reserve(d_range.size());
  for (const auto d : d_range) {
    if (d < 2) throw DomainError("d must be at least 2");
    BoundsReport rep;
    rep.d = d;
    if (const auto* n = std::get_if<std::uint64_t>(&query)) {
      rep.n = *n;
      rep.pigeonhole_lower = pigeonhole_lower(*n);
      if (*n >= 1) {
        rep.ahr_lower_disp = ahr_lower_disp(*n, d);
        rep.larcher_upper = larcher_upper(*n, d);
        if (mpz_class(static_cast<unsigned long>(*n)) * 9 > static_cast<unsigned long>(d)) {
          rep.rudolf_upper = rudolf_upper(*n, d);
        }
      }
    } else {
      const auto& r = std::get<Scalar>(query);
      if (!(Scalar(0) < r && r < Scalar(1))) throw DomainError("r = " + r.str() + " outside (0,1)");
      rep.r = r;
      if (r < kQuarter) rep.ahr_lower_N = ahr_lower_N(r, d);
      if (r == kQuarter) rep.aux_lower_N_quarter = aux_lower_N_quarter(d);
      if (r <= kQuarter) {
        rep.rudolf_upper_N = rudolf_upper_N(r, d);
        rep.thm2_c = thm2_constant(r);
      } else {
        const auto c = thm1_constant(r);
        rep.thm1_c = c.value;
        rep.thm1_one_point_suffices = c.one_point_suffices;
      }
    }
    out.push_back(std::move(rep));
  }
  return out;
}

std::string bounds_csv_header() {
  return "n,r,d,pigeonhole_lower,ahr_lower_disp,larcher_upper,rudolf_upper,ahr_lower_N,"
         "aux_lower_N_quarter,rudolf_upper_N,thm1_c,thm1_one_point_suffices,thm2_c";
}

std::string bounds_csv_row(const BoundsReport& rep) {
  std::ostringstream os;
  auto cell = [&](const auto& opt, auto render) {
    if (opt) {
      os << render(*opt);
    } else {
      os << "NA";
    }
  };
  auto real = [](const Real& x) { return x.str(kCsvDigits); };
  cell(rep.n, [](std::uint64_t v) { return std::to_string(v); });
  os << ',';
  cell(rep.r, [](const Scalar& v) { return v.str(); });
  os << ',' << rep.d << ',';
  cell(rep.pigeonhole_lower, [](const Scalar& v) { return v.str(); });
  os << ',';
  cell(rep.ahr_lower_disp, real);
  os << ',';
  cell(rep.larcher_upper, real);
  os << ',';
  cell(rep.rudolf_upper, real);
  os << ',';
  cell(rep.ahr_lower_N, real);
  os << ',';
  cell(rep.aux_lower_N_quarter, real);
  os << ',';
  cell(rep.rudolf_upper_N, real);
  os << ',';
  cell(rep.thm1_c, [](const mpz_class& v) { return v.get_str(); });
  os << ',';
  cell(rep.thm1_one_point_suffices, [](bool v) { return std::string(v ? "true" : "false"); });
  os << ',';
  cell(rep.thm2_c, real);
  return os.str();
}

}  // namespace dispersion
