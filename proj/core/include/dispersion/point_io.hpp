#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dispersion/geometry.hpp"

namespace dispersion {

/// Reads the point CSV format: one point per line, comma-separated tokens
/// that are finite decimals or "p/q" (p >= 0, q >= 1). Lines starting with
/// '#' and blank lines are skipped. Every coordinate must lie in [0,1] and
/// every row must have the same length.
///
/// An input without any point rows yields an empty set of dimension
/// `empty_dim`. Errors are reported as ParseError with the line number.
PointSet parse_points(std::istream& in, std::size_t empty_dim = 2);
PointSet parse_points(std::string_view text, std::size_t empty_dim = 2);

/// Writes one row per point, coordinates as exact "p/q" tokens.
void write_points(std::ostream& out, const PointSet& points);

/// Writes `lines` as '#'-prefixed comment lines.
void write_comment_header(std::ostream& out, const std::vector<std::string>& lines);

}  // namespace dispersion
