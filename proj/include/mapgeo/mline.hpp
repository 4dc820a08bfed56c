#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "mapgeo/angle_function.hpp"
#include "mapgeo/common.hpp"
#include "mapgeo/geometry.hpp"
#include "mapgeo/map_core.hpp"

namespace mapgeo {

inline double angle_at(const AngleFunction& fn, double x) { return fn.at(x); }

enum class TraceClass {
  ClosedSimple,
  OpenSimple,
  OpenSelfIntersecting,
  ClosedSelfIntersecting,
  TerminatedAtBoundary,
  BudgetExhausted,
};

inline std::string_view to_string(TraceClass c) {
  switch (c) {
    case TraceClass::ClosedSimple: return "ClosedSimple";
    case TraceClass::OpenSimple: return "OpenSimple";
    case TraceClass::OpenSelfIntersecting: return "OpenSelfIntersecting";
    case TraceClass::ClosedSelfIntersecting: return "ClosedSelfIntersecting";
    case TraceClass::TerminatedAtBoundary: return "TerminatedAtBoundary";
    case TraceClass::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

struct CrossingEvent {
  Point2 point;
  std::optional<EdgeIndex> edge;      // set for an edge-interior crossing
  std::optional<std::size_t> vertex;  // set for a vertex hit (vertex index)
  double x = 0.0;                     // arc position on `edge`
  double f = 0.0;
  int sign = 0;                       // +1 f<π, 0 f=π, -1 f>π
  double turn = 0.0;                  // π - f, zero at euclidean points
};

struct TraceConfig {
  std::size_t max_crossings = 10000;  // per direction
  double tol_hit = 1e-9;
  double tol_close = 1e-6;
  bool both_directions = true;
};

/// A traced m-line. `points` is the polyline through the crossing points in
/// curve order; an open end that escapes to infinity is kept as a ray
/// leaving points.front() (head) or points.back() (tail).
struct TraceResult {
  Point2 start;
  Vec2 direction;
  std::vector<Point2> points;
  std::optional<Vec2> head_ray;
  std::optional<Vec2> tail_ray;
  std::vector<CrossingEvent> crossings;
  TraceClass classification = TraceClass::OpenSimple;
  bool closed = false;
  std::size_t self_intersections = 0;
  std::size_t vertex_hits = 0;
  double total_length = 0.0;  // finite part

  bool unbounded() const { return head_ray.has_value() || tail_ray.has_value(); }

  std::vector<std::pair<Point2, Point2>> segments() const {
    std::vector<std::pair<Point2, Point2>> out;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) out.emplace_back(points[i], points[i + 1]);
    if (closed && points.size() > 1) out.emplace_back(points.back(), points.front());
    return out;
  }

  std::vector<double> f_values() const {
    std::vector<double> out;
    out.reserve(crossings.size());
    for (const auto& c : crossings) out.push_back(c.f);
    return out;
  }
};

namespace detail {

enum class MarchEnd { Escaped, Closed, Boundary, Budget };

struct March {
  std::vector<CrossingEvent> crossings;
  MarchEnd end = MarchEnd::Escaped;
  Vec2 final_dir;
};

// Face whose corner at vertex v contains direction d.
inline FaceIndex sector_face(const PlanarMap& m, std::size_t v, Vec2 d) {
  const auto& rot = m.rotation_at(v);
  const Point2 o = m.vertex_at(v).position;
  const double theta = std::atan2(d.y, d.x);
  std::size_t pick = rot.size() - 1;  // wraps past the largest angle
  for (std::size_t k = 0; k < rot.size(); ++k) {
    const Vec2 w = m.vertex_at(m.dart_head(rot[k])).position - o;
    if (std::atan2(w.y, w.x) <= theta) pick = k;
    else break;
  }
  return m.dart_face(rot[pick]);
}

inline std::vector<EdgeIndex> face_edges(const PlanarMap& m, FaceIndex f) {
  std::vector<EdgeIndex> out;
  for (Dart d : m.face(f).darts) out.push_back(dart_edge(d));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline March march(const PlanarMap& m, Point2 start, Vec2 dir, FaceIndex face, double orientation,
                   const TraceConfig& cfg, bool detect_closure) {
  March out;
  Point2 p = start;
  Vec2 d = dir;
  std::vector<EdgeIndex> excluded;
  std::vector<std::vector<EdgeIndex>> face_cache(m.face_count());
  std::vector<bool> cached(m.face_count(), false);
  std::vector<EdgeIndex> all_edges(m.edge_count());
  for (EdgeIndex e = 0; e < all_edges.size(); ++e) all_edges[e] = e;

  for (;;) {
    if (!cached[face]) { face_cache[face] = face_edges(m, face); cached[face] = true; }
    double best_s = std::numeric_limits<double>::infinity();
    double best_t = 0.0;
    std::optional<EdgeIndex> best_e;
    auto scan = [&](const std::vector<EdgeIndex>& candidates) {
      for (EdgeIndex e : candidates) {
        if (std::find(excluded.begin(), excluded.end(), e) != excluded.end()) continue;
        const Edge& ed = m.edge(e);
        const auto hit = ray_segment_intersection(p, d, m.vertex_at(ed.u).position,
                                                  m.vertex_at(ed.v).position);
        if (hit && hit->s > 0.0 && hit->s < best_s) {
          best_s = hit->s;
          best_t = hit->t;
          best_e = e;
        }
      }
    };
    scan(face_cache[face]);
    if (!best_e && !m.face(face).outer) scan(all_edges);

    if (detect_closure && !out.crossings.empty()) {
      const Vec2 w = start - p;
      const double along = dot(w, d);
      if (std::abs(signed_angle(dir, d)) < cfg.tol_close && std::abs(cross(d, w)) < cfg.tol_close &&
          along > 0.0 && along <= best_s + cfg.tol_close) {
        out.end = MarchEnd::Closed;
        out.final_dir = d;
        return out;
      }
    }
    if (!best_e) {
      out.end = MarchEnd::Escaped;
      out.final_dir = d;
      return out;
    }

    const Edge& ed = m.edge(*best_e);
    CrossingEvent ev;
    std::optional<std::size_t> vhit;
    if (best_t * ed.length <= cfg.tol_hit) vhit = ed.u;
    else if ((1.0 - best_t) * ed.length <= cfg.tol_hit) vhit = ed.v;
    if (vhit) {
      ev.vertex = vhit;
      ev.point = m.vertex_at(*vhit).position;
      ev.f = m.rho_mu_at(*vhit) / 2.0;
    } else {
      ev.edge = best_e;
      ev.x = best_t * ed.length;
      ev.point = p + best_s * d;
      ev.f = m.angle_function(*best_e).at(ev.x);
    }
    const PointClass cls = classify_angle(ev.f, m.tol_angle());
    ev.sign = sign_of(cls);
    ev.turn = cls == PointClass::Euclidean ? 0.0 : kPi - ev.f;
    const Vec2 nd = normalized(rotate(d, orientation * ev.turn));

    FaceIndex next;
    excluded.clear();
    if (vhit) {
      next = sector_face(m, *vhit, nd);
      for (Dart dd : m.rotation_at(*vhit)) excluded.push_back(dart_edge(dd));
    } else {
      const Vec2 ev_dir = m.vertex_at(ed.v).position - m.vertex_at(ed.u).position;
      const auto [left, right] = m.edge_faces(*best_e);
      next = cross(ev_dir, nd) > 0.0 ? left : right;
      excluded.push_back(*best_e);
    }
    out.crossings.push_back(ev);
    p = ev.point;
    d = nd;
    face = next;
    if (m.is_boundary(face)) {
      out.end = MarchEnd::Boundary;
      out.final_dir = d;
      return out;
    }
    if (out.crossings.size() >= cfg.max_crossings) {
      out.end = MarchEnd::Budget;
      out.final_dir = d;
      return out;
    }
  }
}

// Near-parallel pairs are settled by projection; the plain solve would divide
// two rounding residues and report phantom hits on straight lines.
constexpr double kParallelSin = 1e-12;

inline bool ray_hits_segment(Point2 o, Vec2 d, Point2 a, Point2 b) {
  const Vec2 e = b - a;
  const double len = norm(e);
  if (len == 0.0) return false;
  const Vec2 u = normalized(d);
  if (std::abs(cross(u, e)) <= kParallelSin * len) {
    const double scale = std::max({1.0, norm(a - o), norm(b - o)});
    if (std::abs(cross(u, a - o)) > 1e-12 * scale) return false;
    return dot(a - o, u) >= 0.0 || dot(b - o, u) >= 0.0;
  }
  return ray_segment_intersection(o, d, a, b).has_value();
}

inline bool rays_meet(Point2 o1, Vec2 d1, Point2 o2, Vec2 d2) {
  const Vec2 u1 = normalized(d1);
  const Vec2 u2 = normalized(d2);
  const Vec2 w = o2 - o1;
  if (std::abs(cross(u1, u2)) <= kParallelSin) {
    if (std::abs(cross(w, u1)) > 1e-12 * std::max(1.0, norm(w))) return false;
    return dot(u1, u2) > 0.0 || dot(w, u1) >= 0.0;
  }
  const double denom = cross(u1, u2);
  const double s = cross(w, u2) / denom;
  const double t = cross(w, u1) / denom;
  return s >= 0.0 && t >= 0.0;
}

// Pairwise crossings between non-adjacent pieces of the curve.
inline std::size_t count_self_intersections(const TraceResult& tr) {
  struct Piece {
    Point2 a;
    Point2 b;
    bool ray;  // a + s·b for s ≥ 0 when true
  };
  std::vector<Piece> pieces;
  if (tr.head_ray) pieces.push_back({tr.points.front(), *tr.head_ray, true});
  for (const auto& [a, b] : tr.segments()) pieces.push_back({a, b, false});
  if (tr.tail_ray) pieces.push_back({tr.points.back(), *tr.tail_ray, true});
  const std::size_t n = pieces.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (tr.closed && i == 0 && j == n - 1) continue;
      const Piece& p = pieces[i];
      const Piece& q = pieces[j];
      bool hit;
      if (p.ray && q.ray) hit = rays_meet(p.a, p.b, q.a, q.b);
      else if (p.ray) hit = ray_hits_segment(p.a, p.b, q.a, q.b);
      else if (q.ray) hit = ray_hits_segment(q.a, q.b, p.a, p.b);
      else hit = segments_touch(p.a, p.b, q.a, q.b);
      if (hit) ++count;
    }
  }
  return count;
}

}  // namespace detail

/// Marches an m-line: straight inside faces, turning counterclockwise by
/// π − f at every crossing. With `both_directions` the backward half is
/// traced as well so open results describe the whole line.
inline TraceResult trace_mline(const PlanarMap& m, Point2 start, Vec2 direction,
                               const TraceConfig& cfg = {}) {
  if (!(norm(direction) > 0.0) || !std::isfinite(norm(direction))) {
    fail(ErrorCode::ZeroDirection, "trace direction must be non-zero");
  }
  const auto face = m.locate_face(start, cfg.tol_hit);
  if (!face) fail(ErrorCode::StartOnEdge, "start point lies on an edge");
  const Vec2 dir = normalized(direction);

  TraceResult tr;
  tr.start = start;
  tr.direction = dir;
  if (m.is_boundary(*face)) {
    tr.points = {start};
    tr.classification = TraceClass::TerminatedAtBoundary;
    return tr;
  }

  const detail::March fwd = detail::march(m, start, dir, *face, 1.0, cfg, true);
  detail::March bwd;
  const bool do_back = cfg.both_directions && fwd.end != detail::MarchEnd::Closed;
  if (do_back) bwd = detail::march(m, start, -dir, *face, -1.0, cfg, false);

  for (auto it = bwd.crossings.rbegin(); it != bwd.crossings.rend(); ++it) {
    tr.crossings.push_back(*it);
  }
  tr.crossings.insert(tr.crossings.end(), fwd.crossings.begin(), fwd.crossings.end());
  for (const auto& c : tr.crossings) {
    tr.points.push_back(c.point);
    if (c.vertex) ++tr.vertex_hits;
  }
  if (!do_back) tr.points.insert(tr.points.begin(), start);
  if (tr.points.empty()) tr.points.push_back(start);
  if (fwd.end == detail::MarchEnd::Closed) {
    tr.closed = true;
    tr.points.erase(tr.points.begin());  // drop the start, it sits on the closing segment
  }
  if (do_back && bwd.end == detail::MarchEnd::Escaped) tr.head_ray = bwd.final_dir;
  if (fwd.end == detail::MarchEnd::Escaped) tr.tail_ray = fwd.final_dir;

  for (const auto& [a, b] : tr.segments()) tr.total_length += distance(a, b);

  auto ended = [&](detail::MarchEnd e) { return fwd.end == e || (do_back && bwd.end == e); };
  if (ended(detail::MarchEnd::Boundary)) {
    tr.classification = TraceClass::TerminatedAtBoundary;
  } else if (ended(detail::MarchEnd::Budget)) {
    tr.classification = TraceClass::BudgetExhausted;
  } else {
    tr.self_intersections = detail::count_self_intersections(tr);
    if (tr.closed) {
      tr.classification = tr.self_intersections == 0 ? TraceClass::ClosedSimple
                                                     : TraceClass::ClosedSelfIntersecting;
    } else {
      tr.classification = tr.self_intersections == 0 ? TraceClass::OpenSimple
                                                     : TraceClass::OpenSelfIntersecting;
    }
  }
  return tr;
}

enum class PredictedClass { ClosedSimple, OpenSimple, OpenSelfIntersecting, Unresolved };

inline std::string_view to_string(PredictedClass c) {
  switch (c) {
    case PredictedClass::ClosedSimple: return "ClosedSimple";
    case PredictedClass::OpenSimple: return "OpenSimple";
    case PredictedClass::OpenSelfIntersecting: return "OpenSelfIntersecting";
    case PredictedClass::Unresolved: return "Unresolved";
  }
  return "?";
}

struct Prediction {
  PredictedClass kind = PredictedClass::Unresolved;
  std::size_t self_intersections = 0;
  // Index windows [first, last] whose sums lie strictly inside ((s-2)π, (s-1)π),
  // chosen greedily left to right, shortest first, without overlap.
  std::vector<std::pair<std::size_t, std::size_t>> windows;
};

/// Predicts the trace class from the f-values at its crossings alone.
/// Unresolved is a fallback for a list that fits none of the three cases;
/// random testing has not produced one.
inline Prediction predict_class(const std::vector<double>& f, double tol = kTolAngle) {
  if (f.empty()) fail(ErrorCode::EmptyList, "no crossing values");
  for (double v : f) {
    if (!(v > 0.0 && v < kTwoPi)) fail(ErrorCode::ValueOutOfRange, "f value outside (0, 2pi)");
  }
  const std::size_t n = f.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + f[i];
  const double total = prefix[n];
  const double dn = static_cast<double>(n);

  Prediction out;
  if (std::abs(total - (dn - 2.0) * kPi) <= tol * dn) {
    out.kind = PredictedClass::ClosedSimple;
    return out;
  }
  if (total >= (dn - 1.0) * kPi - tol * dn) {
    out.kind = PredictedClass::OpenSimple;
    return out;
  }
  std::size_t i = 0;
  while (i < n) {
    bool found = false;
    for (std::size_t j = i; j < n; ++j) {
      const double s = static_cast<double>(j - i + 1);
      const double w = prefix[j + 1] - prefix[i];
      if (w > (s - 2.0) * kPi && w < (s - 1.0) * kPi) {
        out.windows.emplace_back(i, j);
        i = j + 1;
        found = true;
        break;
      }
    }
    if (!found) ++i;
  }
  out.self_intersections = out.windows.size();
  out.kind = out.windows.empty() ? PredictedClass::Unresolved : PredictedClass::OpenSelfIntersecting;
  return out;
}

/// Distance of the nearest window sum to a multiple of π; small values mark
/// inputs where predict_class sits on a class boundary.
inline double prediction_margin(const std::vector<double>& f) {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) {
    double w = 0.0;
    for (std::size_t j = i; j < f.size(); ++j) {
      w += f[j];
      const double k = std::round(w / kPi);
      margin = std::min(margin, std::abs(w - k * kPi));
    }
  }
  return margin;
}

/// Σ(π − f) over the non-euclidean crossings.
inline double curvature(const TraceResult& tr) {
  double acc = 0.0;
  for (const auto& c : tr.crossings) {
    if (c.sign != 0) acc += kPi - c.f;
  }
  return acc;
}

/// ∫₀ᵈ (π − f(s)) ds by composite Simpson with `steps` intervals (rounded
/// up to even).
inline double integrate_curvature(const AngleFunction& fn, std::size_t steps) {
  if (steps < 1) fail(ErrorCode::InvalidArgument, "steps must be >= 1");
  if (steps % 2) ++steps;
  const double d = fn.length();
  const double h = d / static_cast<double>(steps);
  auto g = [&](std::size_t k) {
    const double x = k == steps ? d : h * static_cast<double>(k);
    return kPi - fn.at(x);
  };
  double acc = g(0) + g(steps);
  for (std::size_t k = 1; k < steps; ++k) acc += (k % 2 ? 4.0 : 2.0) * g(k);
  return acc * h / 3.0;
}

inline double edge_curvature(const PlanarMap& m, EdgeIndex e, std::size_t steps = 64) {
  return integrate_curvature(m.angle_function(e), steps);
}

struct TotalCurvatureReport {
  double computed = 0.0;      // both directions of every edge, same f each way
  double claimed = 0.0;       // 2π·s(M)
  double difference = 0.0;    // computed − claimed
  double total_length = 0.0;  // s(M)
};

inline TotalCurvatureReport map_total_curvature(const PlanarMap& m, std::size_t steps = 64) {
  TotalCurvatureReport r;
  for (EdgeIndex e = 0; e < m.edge_count(); ++e) {
    r.computed += 2.0 * edge_curvature(m, e, steps);
    r.total_length += m.edge(e).length;
  }
  r.claimed = kTwoPi * r.total_length;
  r.difference = r.computed - r.claimed;
  return r;
}

}  // namespace mapgeo
