#pragma once

#include <iosfwd>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace dispersion {

/// Binary precision (mantissa bits) used for analytic bounds unless the
/// caller asks for more.
inline constexpr mpfr_prec_t kDefaultRealPrecision = 160;

enum class Round { Nearest, Down, Up };

/// RAII value type over an MPFR float. Each operation takes its result
/// precision from the left operand and rounds to nearest unless a directed
/// mode is requested through the free functions below.
class Real {
 public:
  explicit Real(mpfr_prec_t precision = kDefaultRealPrecision);
  Real(double value, mpfr_prec_t precision = kDefaultRealPrecision);  // NOLINT
  Real(const mpz_class& value, mpfr_prec_t precision = kDefaultRealPrecision, Round rnd = Round::Nearest);
  Real(const mpq_class& value, mpfr_prec_t precision = kDefaultRealPrecision, Round rnd = Round::Nearest);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  [[nodiscard]] mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }
  [[nodiscard]] mpfr_srcptr get() const noexcept { return value_; }
  [[nodiscard]] mpfr_ptr get() noexcept { return value_; }

  [[nodiscard]] double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  [[nodiscard]] int sign() const { return mpfr_sgn(value_); }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(value_) != 0; }

  /// Decimal rendering with `digits` significant digits, e.g.
  /// "8.7888898309344" or "3.1176e+11" style for large magnitudes.
  [[nodiscard]] std::string str(int digits = 17) const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);

  friend int compare(const Real& a, const Real& b) { return mpfr_cmp(a.value_, b.value_); }
  friend bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return compare(a, b) == 0; }

  friend std::ostream& operator<<(std::ostream& os, const Real& r);

 private:
  mpfr_t value_;
};

mpfr_rnd_t to_mpfr(Round rnd);

/// Natural logarithm, rounded in direction `rnd`.
Real log(const Real& x, Round rnd = Round::Nearest);
Real log2(const Real& x, Round rnd = Round::Nearest);
Real exp(const Real& x, Round rnd = Round::Nearest);
/// Directed-rounding arithmetic for certified bounds.
Real mul(const Real& a, const Real& b, Round rnd);
Real add(const Real& a, const Real& b, Round rnd);
Real sub(const Real& a, const Real& b, Round rnd);
Real div(const Real& a, const Real& b, Round rnd);

/// Exact comparison of an MPFR value with a rational: sign of (a - q).
int compare(const Real& a, const mpq_class& q);

/// Floor / ceiling of a Real as an exact integer.
mpz_class floor_integer(const Real& x);
mpz_class ceil_integer(const Real& x);

}  // namespace dispersion
