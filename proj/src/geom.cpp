#include "pqpierce/geom.hpp"

#include <algorithm>
#include <sstream>

#include "pqpierce/errors.hpp"

namespace pqpierce {

std::strong_ordering operator<=>(const Point& a, const Point& b) {
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return std::strong_ordering::less;
    if (b[i] < a[i]) return std::strong_ordering::greater;
  }
  return a.dim() <=> b.dim();
}

std::string to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) out += ", ";
    out += to_string(p[i]);
  }
  return out + ")";
}

std::vector<Point> dedupe_points(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

namespace {

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

/// Andrew's monotone chain on deduplicated points; collinear points dropped.
std::vector<Point> hull_2d(std::vector<Point> pts) {
  pts = dedupe_points(std::move(pts));
  if (pts.size() <= 2) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

void require_2d(const Point& p) {
  if (p.dim() != 2) throw DimensionMismatch("polygon vertex " + to_string(p) + " is not in R^2");
}

/// Closed half-plane normal . x <= offset.
struct HalfPlane {
  Rational nx, ny, offset;
  Rational eval(const Point& p) const { return nx * p.x() + ny * p.y() - offset; }
};

std::vector<HalfPlane> half_planes(const Polygon& poly) {
  const auto& v = poly.vertices;
  std::vector<HalfPlane> out;
  auto edge = [&](const Point& p, const Point& q) {
    // Inside is to the left of p -> q.
    Rational nx = q.y() - p.y();
    Rational ny = p.x() - q.x();
    Rational off = nx * p.x() + ny * p.y();
    out.push_back({std::move(nx), std::move(ny), std::move(off)});
  };
  if (v.size() >= 3) {
    for (std::size_t i = 0; i < v.size(); ++i) edge(v[i], v[(i + 1) % v.size()]);
  } else if (v.size() == 2) {
    edge(v[0], v[1]);
    edge(v[1], v[0]);
    const Rational dx = v[1].x() - v[0].x();
    const Rational dy = v[1].y() - v[0].y();
    out.push_back({-dx, -dy, -(dx * v[0].x() + dy * v[0].y())});
    out.push_back({dx, dy, dx * v[1].x() + dy * v[1].y()});
  } else {
    const Point& p = v[0];
    out.push_back({1, 0, p.x()});
    out.push_back({-1, 0, -p.x()});
    out.push_back({0, 1, p.y()});
    out.push_back({0, -1, -p.y()});
  }
  return out;
}

/// Sutherland-Hodgman step against one closed half-plane.
std::vector<Point> clip(const std::vector<Point>& subject, const HalfPlane& h) {
  std::vector<Point> out;
  const std::size_t n = subject.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& cur = subject[i];
    const Point& nxt = subject[(i + 1) % n];
    const Rational vc = h.eval(cur);
    const Rational vn = h.eval(nxt);
    if (vc <= 0) out.push_back(cur);
    if ((vc < 0 && vn > 0) || (vc > 0 && vn < 0)) {
      const Rational t = vc / (vc - vn);
      out.push_back(Point{cur.x() + t * (nxt.x() - cur.x()), cur.y() + t * (nxt.y() - cur.y())});
    }
  }
  return out;
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
  if (cross(a, b, p) != 0) return false;
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

void segment_intersection(const Point& a, const Point& b, const Point& c, const Point& d,
                          std::vector<Point>& out) {
  const int o1 = sign(cross(a, b, c));
  const int o2 = sign(cross(a, b, d));
  const int o3 = sign(cross(c, d, a));
  const int o4 = sign(cross(c, d, b));
  if (o1 * o2 < 0 && o3 * o4 < 0) {
    const Rational denom = (b.x() - a.x()) * (d.y() - c.y()) - (b.y() - a.y()) * (d.x() - c.x());
    const Rational t = ((c.x() - a.x()) * (d.y() - c.y()) - (c.y() - a.y()) * (d.x() - c.x())) / denom;
    out.push_back(Point{a.x() + t * (b.x() - a.x()), a.y() + t * (b.y() - a.y())});
    return;
  }
  if (on_segment(c, d, a)) out.push_back(a);
  if (on_segment(c, d, b)) out.push_back(b);
  if (on_segment(a, b, c)) out.push_back(c);
  if (on_segment(a, b, d)) out.push_back(d);
}

std::vector<std::pair<Point, Point>> edges_of(const Polygon& poly) {
  const auto& v = poly.vertices;
  std::vector<std::pair<Point, Point>> out;
  if (v.size() >= 3) {
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], v[(i + 1) % v.size()]);
  } else if (v.size() == 2) {
    out.emplace_back(v[0], v[1]);
  } else {
    out.emplace_back(v[0], v[0]);
  }
  return out;
}

void require_same_dim(const ConvexBody& body, const Point& p) {
  if (body.dim() != p.dim())
    throw DimensionMismatch("point " + to_string(p) + " has dimension " + std::to_string(p.dim()) +
                            ", body has dimension " + std::to_string(body.dim()));
}

}  // namespace

ConvexBody ConvexBody::interval(Rational lo, Rational hi) {
  if (hi < lo) throw EmptyBody("interval [" + to_string(lo) + ", " + to_string(hi) + "] is empty");
  return ConvexBody(Interval{std::move(lo), std::move(hi)});
}

ConvexBody ConvexBody::box(Point lo, Point hi) {
  if (lo.dim() != hi.dim()) throw DimensionMismatch("box corners differ in dimension");
  if (lo.dim() == 0) throw DimensionMismatch("box must have dimension >= 1");
  for (std::size_t i = 0; i < lo.dim(); ++i)
    if (hi[i] < lo[i]) throw EmptyBody("box " + to_string(lo) + " .. " + to_string(hi) + " is empty");
  return ConvexBody(Box{std::move(lo), std::move(hi)});
}

ConvexBody ConvexBody::polygon(std::vector<Point> vertices) {
  if (vertices.empty()) throw EmptyBody("polygon without vertices");
  for (const auto& p : vertices) require_2d(p);
  std::vector<Point> hull = hull_2d(vertices);
  if (hull.size() >= 3) {
    Polygon h{hull};
    const auto planes = half_planes(h);
    for (const auto& p : vertices) {
      const bool strictly_inside =
          std::all_of(planes.begin(), planes.end(), [&](const HalfPlane& hp) { return hp.eval(p) < 0; });
      if (strictly_inside)
        throw std::invalid_argument("polygon is not convex: vertex " + to_string(p) +
                                    " lies inside the hull of the others");
    }
  }
  return ConvexBody(Polygon{std::move(hull)});
}

std::size_t ConvexBody::dim() const {
  switch (kind()) {
    case Kind::Interval: return 1;
    case Kind::Box: return as_box().lo.dim();
    case Kind::Polygon: return 2;
  }
  return 0;
}

Box ConvexBody::to_box() const {
  if (kind() == Kind::Interval) return Box{Point{as_interval().lo}, Point{as_interval().hi}};
  if (kind() == Kind::Box) return as_box();
  throw UnsupportedBody("polygon cannot be viewed as a box");
}

bool operator==(const ConvexBody& a, const ConvexBody& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ConvexBody::Kind::Interval:
      return a.as_interval().lo == b.as_interval().lo && a.as_interval().hi == b.as_interval().hi;
    case ConvexBody::Kind::Box:
      return a.as_box().lo == b.as_box().lo && a.as_box().hi == b.as_box().hi;
    case ConvexBody::Kind::Polygon:
      return a.as_polygon().vertices == b.as_polygon().vertices;
  }
  return false;
}

std::string to_string(const ConvexBody& body) {
  switch (body.kind()) {
    case ConvexBody::Kind::Interval:
      return "Interval[" + to_string(body.as_interval().lo) + ", " + to_string(body.as_interval().hi) + "]";
    case ConvexBody::Kind::Box:
      return "Box[" + to_string(body.as_box().lo) + ", " + to_string(body.as_box().hi) + "]";
    case ConvexBody::Kind::Polygon: {
      std::string out = "Polygon[";
      const auto& v = body.as_polygon().vertices;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + to_string(v[i]);
      return out + "]";
    }
  }
  return {};
}

bool contains(const ConvexBody& body, const Point& p) {
  require_same_dim(body, p);
  switch (body.kind()) {
    case ConvexBody::Kind::Interval: {
      const auto& iv = body.as_interval();
      return iv.lo <= p[0] && p[0] <= iv.hi;
    }
    case ConvexBody::Kind::Box: {
      const auto& b = body.as_box();
      for (std::size_t i = 0; i < p.dim(); ++i)
        if (p[i] < b.lo[i] || b.hi[i] < p[i]) return false;
      return true;
    }
    case ConvexBody::Kind::Polygon: {
      const auto& v = body.as_polygon().vertices;
      if (v.size() == 1) return v[0] == p;
      if (v.size() == 2) return on_segment(v[0], v[1], p);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (cross(v[i], v[(i + 1) % v.size()], p) < 0) return false;
      return true;
    }
  }
  return false;
}

std::optional<ConvexBody> intersect_all(std::span<const ConvexBody> bodies) {
  if (bodies.empty()) throw std::invalid_argument("intersect_all of an empty list");
  const std::size_t d = bodies.front().dim();
  const bool polygons = bodies.front().is_polygon();
  for (const auto& b : bodies) {
    if (b.dim() != d) throw DimensionMismatch("intersect_all: bodies differ in dimension");
    if (b.is_polygon() != polygons) throw UnsupportedBody("intersect_all: polygons mixed with boxes");
  }

  if (!polygons) {
    const bool all_intervals = std::all_of(bodies.begin(), bodies.end(), [](const ConvexBody& b) {
      return b.kind() == ConvexBody::Kind::Interval;
    });
    Box acc = bodies.front().to_box();
    std::vector<Rational> lo = acc.lo.coords(), hi = acc.hi.coords();
    for (const auto& b : bodies.subspan(1)) {
      const Box bx = b.to_box();
      for (std::size_t i = 0; i < d; ++i) {
        if (lo[i] < bx.lo[i]) lo[i] = bx.lo[i];
        if (bx.hi[i] < hi[i]) hi[i] = bx.hi[i];
      }
    }
    for (std::size_t i = 0; i < d; ++i)
      if (hi[i] < lo[i]) return std::nullopt;
    if (all_intervals) return ConvexBody::interval(lo[0], hi[0]);
    return ConvexBody::box(Point(std::move(lo)), Point(std::move(hi)));
  }

  std::vector<Point> region = bodies.front().as_polygon().vertices;
  for (const auto& b : bodies.subspan(1)) {
    for (const auto& h : half_planes(b.as_polygon())) {
      region = clip(region, h);
      if (region.empty()) return std::nullopt;
    }
  }
  return ConvexBody::polygon(hull_2d(std::move(region)));
}

ConvexBody convex_hull(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("convex_hull of no points");
  const std::size_t d = points.front().dim();
  for (const auto& p : points)
    if (p.dim() != d) throw DimensionMismatch("convex_hull: points differ in dimension");
  if (d == 1) {
    const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
    return ConvexBody::interval((*lo)[0], (*hi)[0]);
  }
  if (d == 2) return ConvexBody::polygon(hull_2d({points.begin(), points.end()}));
  throw DimensionMismatch("convex_hull supports R^1 and R^2 only");
}

std::vector<Point> edge_intersections(const ConvexBody& a, const ConvexBody& b) {
  if (!a.is_polygon() || !b.is_polygon())
    throw UnsupportedBody("edge_intersections requires planar polygons");
  std::vector<Point> out;
  const auto ea = edges_of(a.as_polygon());
  const auto eb = edges_of(b.as_polygon());
  for (const auto& [p, q] : ea)
    for (const auto& [r, s] : eb) segment_intersection(p, q, r, s, out);
  return dedupe_points(std::move(out));
}

std::vector<Point> body_vertices(const ConvexBody& body) {
  switch (body.kind()) {
    case ConvexBody::Kind::Interval:
      return dedupe_points({Point{body.as_interval().lo}, Point{body.as_interval().hi}});
    case ConvexBody::Kind::Polygon:
      return body.as_polygon().vertices;
    case ConvexBody::Kind::Box:
      break;
  }
  throw UnsupportedBody("body_vertices: boxes are handled coordinate-wise");
}

}  // namespace pqpierce
