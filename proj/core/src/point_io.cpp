#include "dispersion/point_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "dispersion/errors.hpp"

namespace dispersion {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

PointSet parse_points(std::istream& in, std::size_t empty_dim) {
  std::vector<Point> points;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::vector<Scalar> coords;
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      const auto token = trim(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start));
      if (token.empty()) throw ParseError(line_no, "empty coordinate");
      if (token.front() == '-' || token.front() == '+') {
        throw ParseError(line_no, "signed coordinate '" + std::string(token) + "'");
      }
      Scalar x;
      try {
        x = Scalar::parse(token);
      } catch (const ParseError& e) {
        throw ParseError(line_no, e.what());
      }
      if (x > Scalar(1)) {
        throw ParseError(line_no, "coordinate " + std::string(token) + " outside [0,1]");
      }
      coords.push_back(std::move(x));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }

    if (dim == 0) {
      dim = coords.size();
    } else if (coords.size() != dim) {
      throw ParseError(line_no, "expected " + std::to_string(dim) + " coordinates, found " +
                                    std::to_string(coords.size()));
    }
    points.emplace_back(std::move(coords));
  }
  if (in.bad()) throw ParseError(line_no, "read error");
  return PointSet(dim == 0 ? empty_dim : dim, std::move(points));
}

PointSet parse_points(std::string_view text, std::size_t empty_dim) {
  std::istringstream in{std::string(text)};
  return parse_points(in, empty_dim);
}

void write_points(std::ostream& out, const PointSet& points) {
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (i) out << ',';
      out << p[i];
    }
    out << '\n';
  }
}

void write_comment_header(std::ostream& out, const std::vector<std::string>& lines) {
  for (const auto& l : lines) out << "# " << l << '\n';
}

}  // namespace dispersion
