#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

namespace mapgeo {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

using Point2 = Vec2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }

inline Vec2 normalized(Vec2 a) {
  const double n = norm(a);
  return {a.x / n, a.y / n};
}

/// Counterclockwise rotation by `angle` radians.
inline Vec2 rotate(Vec2 v, double angle) {
  if (angle == 0.0) return v;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Signed angle from `a` to `b` in (-π, π].
inline double signed_angle(Vec2 a, Vec2 b) {
  return std::atan2(cross(a, b), dot(a, b));
}

/// Twice the signed area of triangle (a, b, c); positive when counterclockwise.
constexpr double orient(Point2 a, Point2 b, Point2 c) {
  return cross(b - a, c - a);
}

inline double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

/// Parameters of the intersection of segments [p0,p1] and [q0,q1]:
/// p0 + s(p1-p0) == q0 + t(q1-q0). Parallel segments report no hit.
struct SegmentHit {
  double s = 0.0;
  double t = 0.0;
};

inline std::optional<SegmentHit> segment_intersection(Point2 p0, Point2 p1,
                                                      Point2 q0, Point2 q1) {
  const Vec2 r = p1 - p0;
  const Vec2 d = q1 - q0;
  const double denom = cross(r, d);
  if (denom == 0.0) return std::nullopt;
  const Vec2 w = q0 - p0;
  const double s = cross(w, d) / denom;
  const double t = cross(w, r) / denom;
  if (s < 0.0 || s > 1.0 || t < 0.0 || t > 1.0) return std::nullopt;
  return SegmentHit{s, t};
}

/// Exact-sign test: do closed segments [a,b] and [c,d] share any point?
inline bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  auto sgn = [](double v) { return (v > 0.0) - (v < 0.0); };
  if (sgn(o1) * sgn(o2) < 0 && sgn(o3) * sgn(o4) < 0) return true;
  auto on_segment = [](Point2 p, Point2 q, Point2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
           std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
  };
  if (o1 == 0.0 && on_segment(a, b, c)) return true;
  if (o2 == 0.0 && on_segment(a, b, d)) return true;
  if (o3 == 0.0 && on_segment(c, d, a)) return true;
  if (o4 == 0.0 && on_segment(c, d, b)) return true;
  return false;
}

/// Ray origin + s*dir (s >= 0) against segment [a,b]; returns (s, t) with t
/// the segment parameter in [0,1].
inline std::optional<SegmentHit> ray_segment_intersection(Point2 origin, Vec2 dir,
                                                          Point2 a, Point2 b) {
  const Vec2 e = b - a;
  const double denom = cross(dir, e);
  if (denom == 0.0) return std::nullopt;
  const Vec2 w = a - origin;
  const double s = cross(w, e) / denom;
  const double t = cross(w, dir) / denom;
  if (s < 0.0 || t < 0.0 || t > 1.0) return std::nullopt;
  return SegmentHit{s, t};
}

/// Shoelace signed area of a closed polygon.
template <typename Range>
double signed_area(const Range& pts) {
  double acc = 0.0;
  const auto n = std::size(pts);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = pts[i];
    const Point2& q = pts[(i + 1) % n];
    acc += cross(p, q);
  }
  return 0.5 * acc;
}

/// Winding number of the closed polygon `pts` around `p`.
template <typename Range>
int winding_number(const Range& pts, Point2 p) {
  int wn = 0;
  const auto n = std::size(pts);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = pts[i];
    const Point2& b = pts[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && orient(a, b, p) > 0.0) ++wn;
    } else {
      if (b.y <= p.y && orient(a, b, p) < 0.0) --wn;
    }
  }
  return wn;
}

}  // namespace mapgeo
