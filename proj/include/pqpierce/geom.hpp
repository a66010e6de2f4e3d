#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pqpierce/rational.hpp"

namespace pqpierce {

/// A point of R^d with exact rational coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  const Rational& x() const { return coords_[0]; }
  const Rational& y() const { return coords_[1]; }

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }
  /// Lexicographic order; shorter points sort first.
  friend std::strong_ordering operator<=>(const Point& a, const Point& b);

 private:
  std::vector<Rational> coords_;
};

std::string to_string(const Point& p);

/// Sorts and removes duplicates.
std::vector<Point> dedupe_points(std::vector<Point> points);

/// (a - o) x (b - o); positive for a counterclockwise turn o -> a -> b.
Rational cross(const Point& o, const Point& a, const Point& b);

struct Interval {
  Rational lo;
  Rational hi;
};

struct Box {
  Point lo;
  Point hi;
};

/// Convex polygon in the plane. Vertices are in strictly convex position,
/// counterclockwise, starting at the lexicographically smallest vertex.
/// One vertex is a point body, two vertices a segment.
struct Polygon {
  std::vector<Point> vertices;
};

/// Compact convex body: closed interval, axis-aligned box, or convex polygon.
/// Construction validates and canonicalizes, so every instance is nonempty.
class ConvexBody {
 public:
  enum class Kind { Interval, Box, Polygon };

  static ConvexBody interval(Rational lo, Rational hi);
  static ConvexBody box(Point lo, Point hi);
  /// Canonicalizes: duplicate and collinear vertices dropped, CCW order
  /// enforced, segments and single points kept as degenerate polygons.
  /// Throws if some vertex lies strictly inside the hull of the others.
  static ConvexBody polygon(std::vector<Point> vertices);

  Kind kind() const { return static_cast<Kind>(shape_.index()); }
  std::size_t dim() const;

  const Interval& as_interval() const { return std::get<Interval>(shape_); }
  const Box& as_box() const { return std::get<Box>(shape_); }
  const Polygon& as_polygon() const { return std::get<Polygon>(shape_); }

  bool is_polygon() const { return kind() == Kind::Polygon; }
  /// Polygon with one or two vertices.
  bool is_degenerate_polygon() const {
    return is_polygon() && as_polygon().vertices.size() < 3;
  }

  /// Interval or box viewed as a box.
  Box to_box() const;

  friend bool operator==(const ConvexBody& a, const ConvexBody& b);

 private:
  using Shape = std::variant<Interval, Box, Polygon>;
  explicit ConvexBody(Shape shape) : shape_(std::move(shape)) {}
  Shape shape_;
};

std::string to_string(const ConvexBody& body);

/// Closed-body membership, exact.
bool contains(const ConvexBody& body, const Point& p);

/// Intersection of all bodies, or nullopt if empty. Intervals and boxes may
/// be mixed (the result is then a box); polygons only combine with polygons.
std::optional<ConvexBody> intersect_all(std::span<const ConvexBody> bodies);

/// Smallest convex body containing the points (R^1 or R^2).
ConvexBody convex_hull(std::span<const Point> points);

/// Boundary crossing points of two planar polygons, sorted and deduplicated.
/// Collinear overlapping edges contribute the endpoints of their overlap.
std::vector<Point> edge_intersections(const ConvexBody& a, const ConvexBody& b);

/// Interval endpoints or polygon vertices. Boxes are rejected.
std::vector<Point> body_vertices(const ConvexBody& body);

}  // namespace pqpierce
