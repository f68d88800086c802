#include "dispersion/scalar.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

#include "dispersion/errors.hpp"

namespace dispersion {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

mpz_class parse_integer(std::string_view digits) {
  return mpz_class(std::string(digits), 10);
}

}  // namespace

Scalar::Scalar(long num, long den) : value_(num, den) {
  if (den == 0) throw DomainError("zero denominator");
  value_.canonicalize();
}

Scalar::Scalar(mpq_class value) : value_(std::move(value)) {
  if (value_.get_den() == 0) throw DomainError("zero denominator");
  value_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
  const std::string_view original = text;
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  mpq_class value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError(0, "malformed fraction '" + std::string(original) + "'");
    }
    const mpz_class q = parse_integer(den);
    if (q == 0) throw ParseError(0, "zero denominator in '" + std::string(original) + "'");
    value = mpq_class(parse_integer(num), q);
  } else {
    const auto dot = text.find('.');
    const auto whole = text.substr(0, dot);
    const auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    const bool ok = (whole.empty() || all_digits(whole)) && (frac.empty() || all_digits(frac)) &&
                    !(whole.empty() && frac.empty());
    if (!ok) throw ParseError(0, "malformed number '" + std::string(original) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    std::string digits(whole);
    digits += frac;
    value = mpq_class(parse_integer(digits), scale);
  }
  value.canonicalize();
  if (negative) value = -value;
  return Scalar(std::move(value));
}

mpz_class Scalar::floor() const {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

mpz_class Scalar::ceil() const {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.value_ == 0) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar pow(const Scalar& base, long exponent) {
  if (exponent < 0) {
    if (base.sign() == 0) throw DomainError("zero to a negative power");
    return Scalar(1) / pow(base, -exponent);
  }
  mpz_class num;
  mpz_class den;
  const auto e = static_cast<unsigned long>(exponent);
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), e);
  return Scalar(mpq_class(num, den));
}

std::size_t ScalarHash::operator()(const Scalar& s) const {
  const std::hash<std::string> h;
  return h(s.str());
}

}  // namespace dispersion
