#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dispersion {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Every coordinate, interval endpoint and volume in the
/// library is a Scalar; nothing is ever rounded.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den);
  explicit Scalar(const mpz_class& integer) : value_(integer) {}
  explicit Scalar(mpq_class value);

  /// Accepts "p/q", an integer, or a finite decimal such as "0.25" (read
  /// exactly as 1/4). A leading '-' is accepted; range checks belong to
  /// the caller.
  static Scalar parse(std::string_view text);

  [[nodiscard]] const mpq_class& raw() const noexcept { return value_; }
  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }

  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(value_); }

  /// Largest integer not exceeding the value.
  [[nodiscard]] mpz_class floor() const;
  /// Smallest integer not below the value.
  [[nodiscard]] mpz_class ceil() const;

  /// "p/q", or "p" for integers.
  [[nodiscard]] std::string str() const { return value_.get_str(); }
  [[nodiscard]] double to_double() const { return value_.get_d(); }

  Scalar& operator+=(const Scalar& o) { value_ += o.value_; return *this; }
  Scalar& operator-=(const Scalar& o) { value_ -= o.value_; return *this; }
  Scalar& operator*=(const Scalar& o) { value_ *= o.value_; return *this; }
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.value_)); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  mpq_class value_{0};
};

/// Exact integer power; `exponent` may be negative for nonzero bases.
Scalar pow(const Scalar& base, long exponent);

struct ScalarHash {
  std::size_t operator()(const Scalar& s) const;
};

}  // namespace dispersion
