#include "dispersion/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "dispersion/errors.hpp"

namespace dispersion {

namespace {

const Scalar kZero{0};
const Scalar kOne{1};

bool in_unit(const Scalar& x) { return kZero <= x && x <= kOne; }

}  // namespace

Point::Point(std::vector<Scalar> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("a point needs at least one coordinate");
  for (const auto& c : coords_) {
    if (!in_unit(c)) throw DomainError("coordinate " + c.str() + " outside [0,1]");
  }
}

Point Point::diagonal(const Scalar& c, std::size_t dim) {
  return Point(std::vector<Scalar>(dim, c));
}

Interval::Interval(Scalar lo, Scalar hi, bool lo_open, bool hi_open)
    : lo_(std::move(lo)), hi_(std::move(hi)), lo_open_(lo_open), hi_open_(hi_open) {
  if (!in_unit(lo_) || !in_unit(hi_)) {
    throw DomainError("interval endpoints must lie in [0,1]");
  }
  if (hi_ < lo_) throw DomainError("interval with lo > hi");
  if (lo_ == hi_ && (lo_open_ || hi_open_)) {
    throw DomainError("degenerate interval must be a closed singleton");
  }
}

bool Interval::contains(const Scalar& x) const {
  const bool above = lo_open_ ? lo_ < x : lo_ <= x;
  const bool below = hi_open_ ? x < hi_ : x <= hi_;
  return above && below;
}

bool Interval::subset_of(const Interval& outer) const {
  const bool lo_ok = outer.lo_ < lo_ || (outer.lo_ == lo_ && (!outer.lo_open_ || lo_open_));
  const bool hi_ok = hi_ < outer.hi_ || (hi_ == outer.hi_ && (!outer.hi_open_ || hi_open_));
  return lo_ok && hi_ok;
}

Box::Box(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw DomainError("a box needs at least one interval");
}

Box Box::open(std::span<const Scalar> lo, std::span<const Scalar> hi) {
  if (lo.size() != hi.size()) throw DomainError("endpoint lists differ in length");
  std::vector<Interval> iv;
  iv.reserve(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) iv.push_back(Interval::open(lo[i], hi[i]));
  return Box(std::move(iv));
}

Box Box::unit(std::size_t dim) {
  return Box(std::vector<Interval>(dim, Interval::open(kZero, kOne)));
}

bool Box::is_open() const {
  return std::all_of(intervals_.begin(), intervals_.end(), [](const Interval& i) { return i.is_open(); });
}

bool Box::is_closed() const {
  return std::all_of(intervals_.begin(), intervals_.end(), [](const Interval& i) { return i.is_closed(); });
}

Box Box::product(const Box& other) const {
  std::vector<Interval> iv = intervals_;
  iv.insert(iv.end(), other.intervals_.begin(), other.intervals_.end());
  return Box(std::move(iv));
}

std::string Box::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (i) os << 'x';
    os << (iv.lo_open() ? '(' : '[') << iv.lo() << ',' << iv.hi() << (iv.hi_open() ? ')' : ']');
  }
  return os.str();
}

Scalar volume(const Box& box) {
  Scalar v{1};
  for (const auto& iv : box.intervals()) v *= iv.length();
  return v;
}

bool contains(const Box& box, const Point& p) {
  if (box.dim() != p.dim()) throw DomainError("box and point dimensions differ");
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (!box[i].contains(p[i])) return false;
  }
  return true;
}

PointSet::PointSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DomainError("dimension must be positive");
}

PointSet::PointSet(std::size_t dim, std::vector<Point> points) : PointSet(dim) {
  points_.reserve(points.size());
  for (auto& p : points) add(std::move(p));
}

void PointSet::add(Point p) {
  if (p.dim() != dim_) {
    throw DomainError("point of dimension " + std::to_string(p.dim()) + " in a set of dimension " +
                      std::to_string(dim_));
  }
  points_.push_back(std::move(p));
}

PointSet PointSet::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != dim_) throw DomainError("permutation length differs from dimension");
  PointSet out(dim_);
  for (const auto& p : points_) {
    std::vector<Scalar> c(dim_);
    for (std::size_t i = 0; i < dim_; ++i) c[i] = p[perm[i]];
    out.add(Point(std::move(c)));
  }
  return out;
}

PointSet PointSet::reflected() const {
  PointSet out(dim_);
  for (const auto& p : points_) {
    std::vector<Scalar> c;
    c.reserve(dim_);
    for (const auto& x : p.coords()) c.push_back(kOne - x);
    out.add(Point(std::move(c)));
  }
  return out;
}

bool is_empty_of(const Box& box, const PointSet& points) {
  return std::none_of(points.begin(), points.end(), [&](const Point& p) { return contains(box, p); });
}

}  // namespace dispersion
