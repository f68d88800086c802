#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "dispersion/scalar.hpp"

namespace dispersion {

/// A point of [0,1]^d with exact coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Scalar> coords);
  Point(std::initializer_list<Scalar> coords) : Point(std::vector<Scalar>(coords)) {}

  /// The point c·1 on the main diagonal.
  static Point diagonal(const Scalar& c, std::size_t dim);

  [[nodiscard]] std::size_t dim() const noexcept { return coords_.size(); }
  [[nodiscard]] const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  [[nodiscard]] std::span<const Scalar> coords() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  std::vector<Scalar> coords_;
};

/// One factor of a box. lo == hi is allowed only as the closed singleton
/// [lo, lo]; an empty interval cannot be constructed.
class Interval {
 public:
  Interval(Scalar lo, Scalar hi, bool lo_open, bool hi_open);

  static Interval open(Scalar lo, Scalar hi) { return {std::move(lo), std::move(hi), true, true}; }
  static Interval closed(Scalar lo, Scalar hi) { return {std::move(lo), std::move(hi), false, false}; }
  static Interval singleton(const Scalar& at) { return closed(at, at); }

  [[nodiscard]] const Scalar& lo() const noexcept { return lo_; }
  [[nodiscard]] const Scalar& hi() const noexcept { return hi_; }
  [[nodiscard]] bool lo_open() const noexcept { return lo_open_; }
  [[nodiscard]] bool hi_open() const noexcept { return hi_open_; }
  [[nodiscard]] bool is_open() const noexcept { return lo_open_ && hi_open_; }
  [[nodiscard]] bool is_closed() const noexcept { return !lo_open_ && !hi_open_; }

  [[nodiscard]] Scalar length() const { return hi_ - lo_; }
  [[nodiscard]] bool contains(const Scalar& x) const;
  /// Every point of `*this` lies in `outer`.
  [[nodiscard]] bool subset_of(const Interval& outer) const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Scalar lo_;
  Scalar hi_;
  bool lo_open_;
  bool hi_open_;
};

/// Axis-aligned box I_1 x ... x I_d inside [0,1]^d.
class Box {
 public:
  explicit Box(std::vector<Interval> intervals);

  /// Open box (lo_1,hi_1) x ... x (lo_d,hi_d).
  static Box open(std::span<const Scalar> lo, std::span<const Scalar> hi);
  /// The open unit cube (0,1)^d.
  static Box unit(std::size_t dim);

  [[nodiscard]] std::size_t dim() const noexcept { return intervals_.size(); }
  [[nodiscard]] const Interval& operator[](std::size_t i) const { return intervals_[i]; }
  [[nodiscard]] std::span<const Interval> intervals() const noexcept { return intervals_; }

  [[nodiscard]] bool is_open() const;
  [[nodiscard]] bool is_closed() const;

  /// Cartesian product: the intervals of `other` are appended.
  [[nodiscard]] Box product(const Box& other) const;

  /// "(l,u)x[a,b]x..." with exact endpoints.
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> intervals_;
};

/// Exact product of the interval lengths. Openness does not matter.
[[nodiscard]] Scalar volume(const Box& box);

/// Membership respecting each endpoint's strictness. Throws DomainError on
/// dimension mismatch.
[[nodiscard]] bool contains(const Box& box, const Point& p);

/// Multiset of points of a common dimension.
class PointSet {
 public:
  explicit PointSet(std::size_t dim);
  PointSet(std::size_t dim, std::vector<Point> points);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] bool empty() const noexcept { return points_.empty(); }
  [[nodiscard]] const Point& operator[](std::size_t i) const { return points_[i]; }
  [[nodiscard]] std::span<const Point> points() const noexcept { return points_; }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  void add(Point p);

  /// Applies `perm` to every point: new coordinate i is old coordinate perm[i].
  [[nodiscard]] PointSet permuted(std::span<const std::size_t> perm) const;
  /// x -> 1 - x in every coordinate.
  [[nodiscard]] PointSet reflected() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_;
  std::vector<Point> points_;
};

/// True if no point of `points` lies in `box`.
[[nodiscard]] bool is_empty_of(const Box& box, const PointSet& points);

}  // namespace dispersion
