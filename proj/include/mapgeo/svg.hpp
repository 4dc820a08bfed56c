#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mapgeo/common.hpp"
#include "mapgeo/map_core.hpp"
#include "mapgeo/mline.hpp"
#include "mapgeo/pseudo_plane.hpp"

namespace mapgeo {

struct RenderSpec {
  int width = 800;
  int height = 800;
  std::optional<Rect> viewport;  // fitted to the content when empty
  std::string elliptic = "#1f77b4";
  std::string euclidean = "#7f7f7f";
  std::string hyperbolic = "#d62728";
  std::string trace = "#2ca02c";
  double stroke = 1.5;
};

namespace svg_detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

inline const std::string& class_color(const RenderSpec& s, PointClass c) {
  switch (c) {
    case PointClass::Elliptic: return s.elliptic;
    case PointClass::Euclidean: return s.euclidean;
    case PointClass::Hyperbolic: return s.hyperbolic;
  }
  return s.euclidean;
}

// Edge colour: the endpoint class further from euclidean wins, hyperbolic first.
inline const std::string& edge_color(const RenderSpec& s, EdgeClass c) {
  switch (c) {
    case EdgeClass::CE2: return s.euclidean;
    case EdgeClass::CE1:
    case EdgeClass::CE4: return s.elliptic;
    default: return s.hyperbolic;
  }
}

class Canvas {
 public:
  Canvas(const RenderSpec& spec, Rect vp) : spec_(spec), vp_(vp) {
    // Uniform scale, centred.
    const double sx = spec.width / (vp.xmax - vp.xmin);
    const double sy = spec.height / (vp.ymax - vp.ymin);
    scale_ = std::min(sx, sy);
    ox_ = 0.5 * (spec.width - scale_ * (vp.xmax - vp.xmin));
    oy_ = 0.5 * (spec.height - scale_ * (vp.ymax - vp.ymin));
  }
  double X(double x) const { return ox_ + scale_ * (x - vp_.xmin); }
  double Y(double y) const { return spec_.height - (oy_ + scale_ * (y - vp_.ymin)); }
  double extent() const { return 4.0 * std::max(vp_.xmax - vp_.xmin, vp_.ymax - vp_.ymin); }

 private:
  const RenderSpec& spec_;
  Rect vp_;
  double scale_ = 1.0, ox_ = 0.0, oy_ = 0.0;
};

inline void grow(Rect& r, bool& any, Point2 p) {
  if (!any) { r = {p.x, p.x, p.y, p.y}; any = true; return; }
  r.xmin = std::min(r.xmin, p.x);
  r.xmax = std::max(r.xmax, p.x);
  r.ymin = std::min(r.ymin, p.y);
  r.ymax = std::max(r.ymax, p.y);
}

inline Rect padded(Rect r) {
  double w = r.xmax - r.xmin, h = r.ymax - r.ymin;
  const double pad = 0.05 * std::max({w, h, 1e-9});
  if (w == 0.0 && h == 0.0) return {r.xmin - 1, r.xmax + 1, r.ymin - 1, r.ymax + 1};
  return {r.xmin - pad, r.xmax + pad, r.ymin - pad, r.ymax + pad};
}

inline void check_spec(const RenderSpec& spec, const Rect& vp) {
  if (spec.width <= 0 || spec.height <= 0) fail(ErrorCode::EmptyViewport, "canvas size must be positive");
  if (!(vp.xmax > vp.xmin) || !(vp.ymax > vp.ymin)) fail(ErrorCode::EmptyViewport, "viewport is degenerate");
}

inline std::string header(const RenderSpec& spec) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<!-- mapgeo: plane y axis points up; screen y = height - plane y -->\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
         std::to_string(spec.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out;
}

}  // namespace svg_detail

/// Map edges coloured by edge class, traces as polylines (infinite ends
/// clipped far outside the view), crossings as circles by point class.
inline std::string render_svg(const std::vector<TraceResult>& traces, const PlanarMap& m,
                              const RenderSpec& spec = {}) {
  Rect vp{};
  if (spec.viewport) {
    vp = *spec.viewport;
  } else {
    bool any = false;
    for (const auto& v : m.vertices()) svg_detail::grow(vp, any, v.position);
    for (const auto& t : traces)
      for (const auto& p : t.points) svg_detail::grow(vp, any, p);
    if (!any) fail(ErrorCode::EmptyViewport, "nothing to draw");
    vp = svg_detail::padded(vp);
  }
  svg_detail::check_spec(spec, vp);
  const svg_detail::Canvas cv(spec, vp);
  using svg_detail::num;

  std::string out = svg_detail::header(spec);
  out += "<g id=\"edges\" stroke-width=\"" + num(spec.stroke) + "\">\n";
  for (EdgeIndex e = 0; e < m.edge_count(); ++e) {
    const Edge& ed = m.edge(e);
    const Point2 a = m.vertex_at(ed.u).position, b = m.vertex_at(ed.v).position;
    const EdgeClass c = classify_edge(m, e);
    out += "<line class=\"" + std::string(to_string(c)) + "\" x1=\"" + num(cv.X(a.x)) + "\" y1=\"" +
           num(cv.Y(a.y)) + "\" x2=\"" + num(cv.X(b.x)) + "\" y2=\"" + num(cv.Y(b.y)) + "\" stroke=\"" +
           svg_detail::edge_color(spec, c) + "\"/>\n";
  }
  out += "</g>\n<g id=\"vertices\">\n";
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    const Point2 p = m.vertex_at(v).position;
    out += "<circle cx=\"" + num(cv.X(p.x)) + "\" cy=\"" + num(cv.Y(p.y)) + "\" r=\"3\" fill=\"" +
           svg_detail::class_color(spec, classify_vertex_at(m, v)) + "\"/>\n";
  }
  out += "</g>\n<g id=\"traces\" fill=\"none\" stroke=\"" + spec.trace + "\" stroke-width=\"" + num(spec.stroke) + "\">\n";
  for (const auto& t : traces) {
    std::vector<Point2> pts;
    if (t.head_ray) pts.push_back(t.points.front() + cv.extent() * *t.head_ray);
    pts.insert(pts.end(), t.points.begin(), t.points.end());
    if (t.closed && !t.points.empty()) pts.push_back(t.points.front());
    if (t.tail_ray) pts.push_back(t.points.back() + cv.extent() * *t.tail_ray);
    std::string attr;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) attr += ' ';
      attr += num(cv.X(pts[i].x)) + "," + num(cv.Y(pts[i].y));
    }
    out += "<polyline class=\"" + std::string(to_string(t.classification)) + "\" points=\"" + attr + "\"/>\n";
  }
  out += "</g>\n<g id=\"crossings\">\n";
  for (const auto& t : traces) {
    for (const auto& c : t.crossings) {
      const PointClass pc = c.sign > 0 ? PointClass::Elliptic : c.sign < 0 ? PointClass::Hyperbolic : PointClass::Euclidean;
      out += "<circle cx=\"" + num(cv.X(c.point.x)) + "\" cy=\"" + num(cv.Y(c.point.y)) + "\" r=\"2.5\" fill=\"" +
             svg_detail::class_color(spec, pc) + "\"/>\n";
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

/// Phase portrait: each orbit as a polyline.
inline std::string render_orbits_svg(const std::vector<Orbit>& orbits, const RenderSpec& spec = {}) {
  Rect vp{};
  if (spec.viewport) {
    vp = *spec.viewport;
  } else {
    bool any = false;
    for (const auto& o : orbits)
      for (const auto& p : o.points) svg_detail::grow(vp, any, p);
    if (!any) fail(ErrorCode::EmptyViewport, "nothing to draw");
    vp = svg_detail::padded(vp);
  }
  svg_detail::check_spec(spec, vp);
  const svg_detail::Canvas cv(spec, vp);
  std::string out = svg_detail::header(spec);
  out += "<g id=\"orbits\" fill=\"none\" stroke=\"" + spec.trace + "\" stroke-width=\"" +
         svg_detail::num(spec.stroke) + "\">\n";
  for (const auto& o : orbits) {
    std::string attr;
    // Thin long orbits so files stay small; the last point is always kept.
    const std::size_t stride = std::max<std::size_t>(1, o.points.size() / 2000);
    for (std::size_t i = 0; i < o.points.size(); i += stride) {
      if (!attr.empty()) attr += ' ';
      attr += svg_detail::num(cv.X(o.points[i].x)) + "," + svg_detail::num(cv.Y(o.points[i].y));
    }
    if (!o.points.empty() && (o.points.size() - 1) % stride != 0) {
      attr += ' ' + svg_detail::num(cv.X(o.points.back().x)) + "," + svg_detail::num(cv.Y(o.points.back().y));
    }
    out += "<polyline points=\"" + attr + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace mapgeo
