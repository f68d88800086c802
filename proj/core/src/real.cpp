#include "dispersion/real.hpp"

#include <cstdio>
#include <memory>
#include <ostream>
#include <string>

namespace dispersion {

mpfr_rnd_t to_mpfr(Round rnd) {
  switch (rnd) {
    case Round::Down:
      return MPFR_RNDD;
    case Round::Up:
      return MPFR_RNDU;
    case Round::Nearest:
      break;
  }
  return MPFR_RNDN;
}

Real::Real(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value, mpfr_prec_t precision, Round rnd) {
  mpfr_init2(value_, precision);
  mpfr_set_z(value_, value.get_mpz_t(), to_mpfr(rnd));
}

Real::Real(const mpq_class& value, mpfr_prec_t precision, Round rnd) {
  mpfr_init2(value_, precision);
  mpfr_set_q(value_, value.get_mpq_t(), to_mpfr(rnd));
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) {
    mpfr_swap(value_, other.value_);
  }
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::str(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", digits, value_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

namespace {

template <typename Op>
Real binary(const Real& a, const Real& b, Round rnd, Op op) {
  Real out(a.precision());
  op(out.get(), a.get(), b.get(), to_mpfr(rnd));
  return out;
}

}  // namespace

Real operator+(const Real& a, const Real& b) { return add(a, b, Round::Nearest); }
Real operator-(const Real& a, const Real& b) { return sub(a, b, Round::Nearest); }
Real operator*(const Real& a, const Real& b) { return mul(a, b, Round::Nearest); }
Real operator/(const Real& a, const Real& b) { return div(a, b, Round::Nearest); }

Real operator-(const Real& a) {
  Real out(a.precision());
  mpfr_neg(out.get(), a.get(), MPFR_RNDN);
  return out;
}

Real add(const Real& a, const Real& b, Round rnd) { return binary(a, b, rnd, mpfr_add); }
Real sub(const Real& a, const Real& b, Round rnd) { return binary(a, b, rnd, mpfr_sub); }
Real mul(const Real& a, const Real& b, Round rnd) { return binary(a, b, rnd, mpfr_mul); }
Real div(const Real& a, const Real& b, Round rnd) { return binary(a, b, rnd, mpfr_div); }

Real log(const Real& x, Round rnd) {
  Real out(x.precision());
  mpfr_log(out.get(), x.get(), to_mpfr(rnd));
  return out;
}

Real log2(const Real& x, Round rnd) {
  Real out(x.precision());
  mpfr_log2(out.get(), x.get(), to_mpfr(rnd));
  return out;
}

Real exp(const Real& x, Round rnd) {
  Real out(x.precision());
  mpfr_exp(out.get(), x.get(), to_mpfr(rnd));
  return out;
}

int compare(const Real& a, const mpq_class& q) { return mpfr_cmp_q(a.get(), q.get_mpq_t()); }

mpz_class floor_integer(const Real& x) {
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), x.get(), MPFR_RNDD);
  return out;
}

mpz_class ceil_integer(const Real& x) {
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), x.get(), MPFR_RNDU);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Real& r) { return os << r.str(); }

}  // namespace dispersion
