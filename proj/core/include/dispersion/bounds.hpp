#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "dispersion/real.hpp"
#include "dispersion/scalar.hpp"

namespace dispersion {

// Closed-form bounds on the minimal dispersion disp*(n,d) and its inverse
// N(r,d). log2 is used where the bound is stated in base 2, the natural
// log everywhere else. Real results carry kDefaultRealPrecision bits.

/// 1/(n+1).
[[nodiscard]] Scalar pigeonhole_lower(std::uint64_t n);

/// log2(d) / (4(n + log2(d))). Requires n >= 1, d >= 2.
[[nodiscard]] Real ahr_lower_disp(std::uint64_t n, std::uint64_t d);

/// (1 - 4r)/(4r) · log2(d). Requires 0 < r < 1/4, d >= 2.
[[nodiscard]] Real ahr_lower_N(const Scalar& r, std::uint64_t d);

/// log2(d + 1). Requires d >= 1.
[[nodiscard]] Real aux_lower_N_quarter(std::uint64_t d);

/// 2^(7d+1) / n. Requires n >= 1, d >= 2.
[[nodiscard]] Real larcher_upper(std::uint64_t n, std::uint64_t d);

/// (4d/n) · ln(9n/d). Requires n >= 1, d >= 2, 9n > d.
[[nodiscard]] Real rudolf_upper(std::uint64_t n, std::uint64_t d);

/// 8·d·q·ln(33q) with q = 1/r exactly. Requires 0 < r <= 1/4.
[[nodiscard]] Real rudolf_upper_N(const Scalar& r, std::uint64_t d);

/// q^(q^2+2) · (4 ln q + 1) with q = ceil(1/r). Requires 0 < r <= 1/4.
[[nodiscard]] Real thm2_constant(const Scalar& r);

struct BoundsReport {
  std::optional<std::uint64_t> n;
  std::optional<Scalar> r;
  std::uint64_t d = 0;

  std::optional<Scalar> pigeonhole_lower;
  std::optional<Real> ahr_lower_disp;
  std::optional<Real> larcher_upper;
  std::optional<Real> rudolf_upper;
  std::optional<Real> ahr_lower_N;
  std::optional<Real> aux_lower_N_quarter;
  std::optional<Real> rudolf_upper_N;
  std::optional<mpz_class> thm1_c;
  std::optional<bool> thm1_one_point_suffices;
  std::optional<Real> thm2_c;
};

/// Either a point count n (disp* bounds) or a volume r (N bounds).
using BoundsQuery = std::variant<std::uint64_t, Scalar>;

/// One report per d. Cells whose formula does not apply to the inputs are
/// left empty. Throws DomainError for d < 2 or r outside (0, 1).
[[nodiscard]] std::vector<BoundsReport> bounds_table(const BoundsQuery& query,
                                                     std::span<const std::uint64_t> d_range);

/// CSV header naming the BoundsReport fields, and one row per report with
/// "NA" in empty cells.
[[nodiscard]] std::string bounds_csv_header();
[[nodiscard]] std::string bounds_csv_row(const BoundsReport& report);

}  // namespace dispersion
