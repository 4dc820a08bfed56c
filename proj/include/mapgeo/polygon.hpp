#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mapgeo/common.hpp"
#include "mapgeo/geometry.hpp"
#include "mapgeo/map_core.hpp"

namespace mapgeo {

/// Σf = (l−2)π with l ≥ 3.
inline bool exists_1_polygon(const std::vector<double>& f, double tol = kTolAngle) {
  const std::size_t l = f.size();
  if (l < 3) return false;
  double sum = 0.0;
  for (double v : f) sum += v;
  return std::abs(sum - (static_cast<double>(l) - 2.0) * kPi) <= static_cast<double>(l) * tol;
}

/// True iff the map has a non-euclidean vertex or edge point.
inline bool exists_2_polygon(const PlanarMap& m) {
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    if (classify_vertex_at(m, v) != PointClass::Euclidean) return true;
  }
  for (EdgeIndex e = 0; e < m.edge_count(); ++e) {
    if (!m.has_custom_angle_function(e)) continue;
    for (double f : m.angle_function(e).samples()) {
      if (classify_angle(f, m.tol_angle()) != PointClass::Euclidean) return true;
    }
  }
  return false;
}

/// (n + l − 2)π − Σf(xᵢ) for an n-gon whose sides cross l edges.
inline double internal_angle_sum(int n, const std::vector<double>& f) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "side count must be >= 1");
  double sum = 0.0;
  for (double v : f) sum += v;
  return (static_cast<double>(n) + static_cast<double>(f.size()) - 2.0) * kPi - sum;
}

enum class ChainKind { Elliptic, Hyperbolic };

inline std::string_view to_string(ChainKind k) {
  return k == ChainKind::Elliptic ? "elliptic" : "hyperbolic";
}

/// Triangle ABC whose side AB is bent at p crossing points x₁…x_p.
/// a = |AC|, b = |BC|, c = (|Ax₁|, |x₁x₂|, …, |x_pB|), f = crossing values.
/// f/2 is the interior angle at xᵢ, so f = 2π is a straight crossing.
struct SideChain {
  ChainKind kind = ChainKind::Elliptic;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> c;
  std::vector<double> f;
};

namespace detail {

/// Heron's area with Kahan's ordering. Slightly negative radicands from
/// rounding count as flat.
inline double heron(double x, double y, double z) {
  double s[3] = {x, y, z};
  std::sort(s, s + 3, [](double p, double q) { return p > q; });
  const double a = s[0], b = s[1], c = s[2];
  const double r = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c)) / 16.0;
  const double scale = std::max(1.0, a * a * a * a);
  if (r < 0.0) {
    if (r >= -1e-12 * scale) return 0.0;
    fail(ErrorCode::DegenerateTriangle, "sides " + std::to_string(x) + ", " + std::to_string(y) +
                                            ", " + std::to_string(z) + " violate the triangle inequality");
  }
  return std::sqrt(r);
}

inline void validate_chain(const SideChain& ch) {
  if (ch.f.empty()) fail(ErrorCode::InvalidArgument, "chain needs at least one crossing");
  if (ch.c.size() != ch.f.size() + 1) {
    fail(ErrorCode::InvalidArgument, "chain needs p+1 segment lengths for p crossings");
  }
  if (!(ch.a > 0.0) || !(ch.b > 0.0)) fail(ErrorCode::InvalidArgument, "side lengths must be positive");
  for (double c : ch.c) {
    if (!(c > 0.0)) fail(ErrorCode::InvalidArgument, "segment lengths must be positive");
  }
  for (double f : ch.f) {
    if (!(f > 0.0 && f <= 2.0 * kTwoPi)) fail(ErrorCode::InvalidArgument, "crossing value outside (0, 4pi]");
    const bool ok = ch.kind == ChainKind::Elliptic ? f <= kTwoPi + kTolAngle : f >= kTwoPi - kTolAngle;
    if (!ok) fail(ErrorCode::ChainInconsistent, "crossing value does not match chain kind");
  }
}

inline double law_of_cosines(double p, double q, double angle) {
  return std::sqrt(std::max(0.0, p * p + q * q - 2.0 * p * q * std::cos(angle)));
}

// Angle opposite side `opp` in a triangle with the other two sides p, q.
inline double angle_opposite(double p, double q, double opp) {
  if (p == 0.0 || q == 0.0) return 0.0;
  const double c = (p * p + q * q - opp * opp) / (2.0 * p * q);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace detail

struct ChainAreaDetail {
  double area = 0.0;
  double ab = 0.0;                // |AB|
  std::vector<double> fan;        // |Ax₁| … |Ax_p|, |AB|
  double base_area = 0.0;         // Heron(a, b, |AB|)
  double chain_area = 0.0;        // Σ of the fan triangles
};

/// Area of a triangle with a bent side: fan triangles from A along the
/// chain, added for elliptic chains (outward bulge) and subtracted for
/// hyperbolic ones (inward dent).
inline ChainAreaDetail chain_area_detail(const SideChain& ch) {
  detail::validate_chain(ch);
  const std::size_t p = ch.f.size();
  ChainAreaDetail out;
  out.fan.reserve(p + 1);
  double ax = ch.c[0];       // |Ax_i|
  double back = 0.0;         // ∠A xᵢ xᵢ₋₁
  out.fan.push_back(ax);
  for (std::size_t i = 0; i < p; ++i) {
    const double half = ch.f[i] / 2.0;
    const double fwd = ch.kind == ChainKind::Elliptic ? half - back : kTwoPi - half - back;
    if (fwd < -kTolAngle || fwd > kPi + kTolAngle) {
      fail(ErrorCode::ChainInconsistent, "chain turns back across the fan at crossing " + std::to_string(i + 1));
    }
    const double next = detail::law_of_cosines(ax, ch.c[i + 1], fwd);
    out.chain_area += detail::heron(ax, ch.c[i + 1], next);
    back = detail::angle_opposite(next, ch.c[i + 1], ax);
    ax = next;
    out.fan.push_back(ax);
  }
  out.ab = ax;
  const double ab = out.ab;
  if (ab > ch.a + ch.b || ch.a > ab + ch.b || ch.b > ab + ch.a) {
    const double slack = 1e-12 * std::max({1.0, ab, ch.a, ch.b});
    if (ab > ch.a + ch.b + slack || ch.a > ab + ch.b + slack || ch.b > ab + ch.a + slack) {
      fail(ErrorCode::ChainInconsistent, "derived |AB| = " + std::to_string(ab) +
                                             " is incompatible with a and b");
    }
  }
  out.base_area = detail::heron(ch.a, ch.b, ab);
  out.area = ch.kind == ChainKind::Elliptic ? out.base_area + out.chain_area
                                            : out.base_area - out.chain_area;
  if (out.area < 0.0) {
    if (out.area < -1e-12 * std::max(1.0, out.base_area)) {
      fail(ErrorCode::NegativeArea, "dent is larger than the triangle");
    }
    out.area = 0.0;
  }
  return out;
}

inline double chain_area(const SideChain& ch) { return chain_area_detail(ch).area; }

/// Single crossing: a = |AC|, b = |BC|, c = |Ax|, d = |xB|.
inline double triangle_area_one_point(double a, double b, double c, double d, double f, ChainKind kind) {
  return chain_area(SideChain{kind, a, b, {c, d}, {f}});
}

struct MCircleQuery {
  Point2 center;
  double radius = 1.0;
  std::size_t samples = 256;
};

struct MCircleResult {
  bool exists = true;
  std::string reason;
  std::optional<double> epsilon;   // offending sweep radius
  std::optional<Point2> witness;   // offending point
};

namespace detail {

inline PointClass classify_map_point(const PlanarMap& m, EdgeIndex e, double t) {
  const Edge& ed = m.edge(e);
  const double x = std::clamp(t, 0.0, 1.0) * ed.length;
  if (x <= 1e-9) return classify_vertex_at(m, ed.u);
  if (ed.length - x <= 1e-9) return classify_vertex_at(m, ed.v);
  return classify_edge_point(m, e, x);
}

}  // namespace detail

/// Decides whether the circle of the query is an m-circle. Intersections of
/// each ε-circle with the map are ordered by polar angle from 0
/// counterclockwise; the first and last are the ones tested.
inline MCircleResult mcircle_exists(const PlanarMap& m, const MCircleQuery& q) {
  if (!(q.radius > 0.0) || q.samples == 0) fail(ErrorCode::InvalidArgument, "radius and samples must be positive");
  MCircleResult res;
  if (m.vertex_count() == 0) return res;
  const auto face = m.locate_face(q.center);
  if (!face) fail(ErrorCode::CenterOnEdge, "circle center lies on an edge");
  if (*face != m.outer_face()) {
    res.reason = "center in an inner face";
    return res;
  }
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    const Point2 pos = m.vertex_at(v).position;
    if (classify_vertex_at(m, v) != PointClass::Euclidean && distance(pos, q.center) < q.radius) {
      res.exists = false;
      res.reason = "non-euclidean vertex inside the circle";
      res.witness = pos;
      return res;
    }
  }
  const double lo = std::log(1e-6);
  for (std::size_t k = 0; k < q.samples; ++k) {
    const double eps = q.radius *
        std::exp(lo * static_cast<double>(q.samples - k) / static_cast<double>(q.samples));
    struct Hit { double phi; EdgeIndex e; double t; Point2 p; };
    std::optional<Hit> first, last;
    for (EdgeIndex e = 0; e < m.edge_count(); ++e) {
      const Edge& ed = m.edge(e);
      const Point2 a = m.vertex_at(ed.u).position;
      const Vec2 d = m.vertex_at(ed.v).position - a;
      const Vec2 w = a - q.center;
      const double A = dot(d, d), B = 2.0 * dot(w, d), C = dot(w, w) - eps * eps;
      const double disc = B * B - 4.0 * A * C;
      if (disc < 0.0) continue;
      const double sq = std::sqrt(disc);
      for (double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
        if (t < 0.0 || t > 1.0) continue;
        const Point2 p = a + t * d;
        double phi = std::atan2(p.y - q.center.y, p.x - q.center.x);
        if (phi < 0.0) phi += kTwoPi;
        const Hit h{phi, e, t, p};
        if (!first || phi < first->phi) first = h;
        if (!last || phi > last->phi) last = h;
      }
    }
    if (!first) continue;
    for (const Hit* h : {&*first, &*last}) {
      if (detail::classify_map_point(m, h->e, h->t) != PointClass::Euclidean) {
        res.exists = false;
        res.reason = "non-euclidean initial or final intersection";
        res.epsilon = eps;
        res.witness = h->p;
        return res;
      }
    }
  }
  res.reason = "all sweep intersections euclidean";
  return res;
}

/// Polar form ρ(θ) = r of an m-circle about `center`.
struct PolarCircle {
  Point2 center;
  double r = 1.0;
  double rho(double /*theta*/) const { return r; }
  Point2 point(double theta) const {
    return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
  }
};

inline PolarCircle mcircle_equation(Point2 center, double r) {
  if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "radius must be positive");
  return PolarCircle{center, r};
}

}  // namespace mapgeo
