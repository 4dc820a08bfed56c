#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mapgeo/angle_function.hpp"
#include "mapgeo/common.hpp"
#include "mapgeo/map_core.hpp"
#include "mapgeo/mline.hpp"

namespace mapgeo {

/// One edge of a cut, oriented from its left endpoint u to its right
/// endpoint v, with the angle function measured from u.
struct CutEdge {
  AngleFunction f;
  VertexId u = 0;
  VertexId v = 0;
  std::optional<EdgeIndex> edge;

  double length() const { return f.length(); }
};

struct Cut {
  std::vector<CutEdge> edges;

  std::size_t size() const { return edges.size(); }
  bool all_linear() const {
    return std::all_of(edges.begin(), edges.end(), [](const CutEdge& e) { return e.f.is_linear(); });
  }
  /// Common offset domain [0, min dᵢ].
  double domain() const {
    double d = edges.at(0).length();
    for (const auto& e : edges) d = std::min(d, e.length());
    return d;
  }
};

inline Cut make_linear_cut(const std::vector<std::pair<double, double>>& rho_mu,
                           const std::vector<double>& lengths) {
  if (rho_mu.size() != lengths.size()) fail(ErrorCode::InvalidArgument, "one length per cut edge");
  Cut cut;
  for (std::size_t i = 0; i < rho_mu.size(); ++i) {
    cut.edges.push_back({AngleFunction::linear(rho_mu[i].first / 2.0, rho_mu[i].second / 2.0, lengths[i]),
                         static_cast<VertexId>(2 * i), static_cast<VertexId>(2 * i + 1), std::nullopt});
  }
  return cut;
}

/// Cut through map edges given as (left, right) endpoint pairs.
inline Cut make_cut(const PlanarMap& m, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  Cut cut;
  for (const auto& [a, b] : pairs) {
    const auto e = m.find_edge(a, b);
    if (!e) fail(ErrorCode::UnknownEdge, "no edge " + std::to_string(a) + "-" + std::to_string(b));
    const Edge& ed = m.edge(*e);
    AngleFunction fn = m.angle_function(*e);
    if (m.vertex_at(ed.u).id != a) {
      // Reverse so that the function is measured from `a`.
      std::vector<double> s = fn.samples();
      std::reverse(s.begin(), s.end());
      fn = fn.is_linear() ? AngleFunction::linear(s.front(), s.back(), fn.length())
                          : AngleFunction::sampled(fn.length(), s);
    }
    cut.edges.push_back({fn, a, b, e});
  }
  return cut;
}

/// Sign applied to each fᵢ′ in the prefix sums. Orientation uses +1 for
/// every edge along the bundle direction; Classification uses the pointwise
/// class of fᵢ(x) (+1 elliptic, 0 euclidean, −1 hyperbolic).
enum class SignRule { Orientation, Classification };

struct BundleVerdict {
  bool holds = true;
  std::optional<std::size_t> prefix;  // 1-based length of the first failing prefix
  std::optional<double> x;
  double value = 0.0;                 // the failing prefix sum
};

namespace detail {

inline void require_nonempty(const Cut& cut) {
  if (cut.edges.empty()) fail(ErrorCode::EmptyCut, "cut has no edges");
}

inline constexpr std::size_t kBundleGrid = 128;

inline double grid_x(const Cut& cut, std::size_t k) {
  const double d = cut.domain();
  return k + 1 == kBundleGrid ? d : d * static_cast<double>(k) / static_cast<double>(kBundleGrid - 1);
}

// Forward difference on the grid; the last sample looks backward.
inline double grid_derivative(const CutEdge& e, const Cut& cut, std::size_t k) {
  if (e.f.is_linear()) return e.f.right_derivative(0.0);
  const std::size_t j = k + 1 < kBundleGrid ? k : k - 1;
  const double x0 = grid_x(cut, j);
  const double x1 = grid_x(cut, j + 1);
  return (e.f.at(x1) - e.f.at(x0)) / (x1 - x0);
}

inline double rule_sign(const CutEdge& e, double x, SignRule rule) {
  if (rule == SignRule::Orientation) return 1.0;
  return static_cast<double>(sign_of(classify_angle(e.f.at(x))));
}

inline double prefix_tol(double magnitude) { return 1e-12 * (1.0 + magnitude); }

// Checks prefixes 1..upto at every grid point (or once, when the sums do
// not depend on x).
inline BundleVerdict check_prefixes(const Cut& cut, SignRule rule, std::size_t upto) {
  const bool constant = cut.all_linear() && rule == SignRule::Orientation;
  const std::size_t samples = constant ? 1 : kBundleGrid;
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = constant ? 0.0 : grid_x(cut, k);
    double sum = 0.0;
    double mag = 0.0;
    for (std::size_t i = 0; i < upto; ++i) {
      const double term = rule_sign(cut.edges[i], x, rule) * grid_derivative(cut.edges[i], cut, k);
      sum += term;
      mag += std::abs(term);
      if (sum < -prefix_tol(mag)) return BundleVerdict{false, i + 1, x, sum};
    }
  }
  return {};
}

}  // namespace detail

/// Every prefix Σ_{i≤k} sign(fᵢ)·fᵢ′₊(x) must be ≥ 0 on the common domain.
inline BundleVerdict is_parallel_bundle(const Cut& cut, SignRule rule = SignRule::Orientation) {
  detail::require_nonempty(cut);
  return detail::check_prefixes(cut, rule, cut.size());
}

/// Strict prefixes hold and the full sum vanishes: the lines leave parallel.
inline bool exits_parallel(const Cut& cut, SignRule rule = SignRule::Orientation) {
  detail::require_nonempty(cut);
  if (!detail::check_prefixes(cut, rule, cut.size() - 1).holds) return false;
  for (std::size_t k = 0; k < detail::kBundleGrid; ++k) {
    const double x = detail::grid_x(cut, k);
    double sum = 0.0;
    double mag = 0.0;
    for (const auto& e : cut.edges) {
      const double term = detail::rule_sign(e, x, rule) * detail::grid_derivative(e, cut, k);
      sum += term;
      mag += std::abs(term);
    }
    if (std::abs(sum) > detail::prefix_tol(mag) + 1e-9) return false;
  }
  return true;
}

/// Prefix conditions plus Σ sign(fᵢ)fᵢ(x) = lπ at the offset x.
inline bool parallel_to_initial(const Cut& cut, double x, SignRule rule = SignRule::Orientation,
                                double tol = kTolAngle) {
  detail::require_nonempty(cut);
  if (x < 0.0 || x > cut.domain()) fail(ErrorCode::OutOfRange, "offset outside the common domain");
  if (!detail::check_prefixes(cut, rule, cut.size()).holds) return false;
  double sum = 0.0;
  for (const auto& e : cut.edges) sum += detail::rule_sign(e, x, rule) * e.f.at(x);
  const double l = static_cast<double>(cut.size());
  return std::abs(sum - l * kPi) <= l * tol;
}

/// Prefix sums of (ρμ(vᵢ) − ρμ(uᵢ))/d(uᵢ,vᵢ) must all be ≥ 0.
inline BundleVerdict linear_bundle_check(const Cut& cut) {
  detail::require_nonempty(cut);
  if (!cut.all_linear()) fail(ErrorCode::NonlinearFunction, "linear check needs linear angle functions");
  double sum = 0.0;
  double mag = 0.0;
  for (std::size_t i = 0; i < cut.size(); ++i) {
    const auto& f = cut.edges[i].f;
    const double term = 2.0 * (f.end_value() - f.start_value()) / f.length();
    sum += term;
    mag += std::abs(term);
    if (sum < -detail::prefix_tol(mag)) return BundleVerdict{false, i + 1, std::nullopt, sum};
  }
  return {};
}

/// Prefix sums of the linear system, for callers that need the margins.
inline std::vector<double> linear_prefix_sums(const Cut& cut) {
  std::vector<double> out;
  double sum = 0.0;
  for (const auto& e : cut.edges) {
    sum += 2.0 * (e.f.end_value() - e.f.start_value()) / e.f.length();
    out.push_back(sum);
  }
  return out;
}

/// ρμ(uᵢ) ≤ ρμ(vᵢ) on every edge individually.
inline bool sufficient_per_edge(const Cut& cut) {
  return std::all_of(cut.edges.begin(), cut.edges.end(),
                     [](const CutEdge& e) { return e.f.start_value() <= e.f.end_value(); });
}

struct SimulationConfig {
  std::size_t rays = 6;
  double margin = 0.05;  // fraction of the common domain kept clear at each end
  double gap = 1e-6;     // rung spacing in the corridor
  double frame = 1e9;    // half-size of the enclosing euclidean frame
  TraceConfig trace{};
};

struct SimulationResult {
  bool parallel = true;
  std::optional<std::size_t> prefix;  // first prefix whose traces meet
  std::vector<std::vector<TraceResult>> traces;  // per prefix
};

namespace detail {

// The first k cut edges as stacked horizontal rungs joined by rails, inside
// a far euclidean frame. Rays enter from below rung 1.
inline PlanarMap corridor_map(const Cut& cut, std::size_t k, const SimulationConfig& cfg) {
  std::vector<Vertex> vs;
  std::vector<EdgeSpec> es;
  const double F = cfg.frame;
  const double mu_flat = kTwoPi / 3.0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& f = cut.edges[i].f;
    const double y = static_cast<double>(i) * cfg.gap;
    vs.push_back({static_cast<VertexId>(2 * i), {0.0, y}, 2.0 * f.start_value() / 3.0});
    vs.push_back({static_cast<VertexId>(2 * i + 1), {f.length(), y}, 2.0 * f.end_value() / 3.0});
    es.push_back({static_cast<VertexId>(2 * i), static_cast<VertexId>(2 * i + 1)});
    if (i > 0) {
      es.push_back({static_cast<VertexId>(2 * i - 2), static_cast<VertexId>(2 * i)});
      es.push_back({static_cast<VertexId>(2 * i - 1), static_cast<VertexId>(2 * i + 1)});
    }
  }
  const auto top_u = static_cast<VertexId>(2 * k - 2);
  const auto top_v = static_cast<VertexId>(2 * k - 1);
  const VertexId TL = -1, TR = -2, BR = -3, BL = -4;
  vs.push_back({TL, {-F, F}, mu_flat});
  vs.push_back({TR, {F, F}, mu_flat});
  vs.push_back({BR, {F, -F}, mu_flat});
  vs.push_back({BL, {-F, -F}, mu_flat});
  es.push_back({TL, TR});
  es.push_back({TR, BR});
  es.push_back({BR, BL});
  es.push_back({BL, TL});
  es.push_back({top_u, TL});
  es.push_back({top_v, TR});
  es.push_back({0, BL});
  es.push_back({1, BR});
  PlanarMap m = build_map(vs, es);
  std::vector<bool> rung(m.edge_count(), false);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& f = cut.edges[i].f;
    const auto e = m.find_edge(static_cast<VertexId>(2 * i), static_cast<VertexId>(2 * i + 1));
    rung[*e] = true;
    if (!f.is_linear()) m = m.with_angle_function(*e, f);
  }
  // Rails and frame spokes would otherwise inherit the rung-end angles and
  // bend lines a second time; past the cut the lines should run straight.
  for (EdgeIndex e = 0; e < m.edge_count(); ++e) {
    if (!rung[e]) m = m.with_angle_function(e, AngleFunction::linear(kPi, kPi, m.edge(e).length));
  }
  return m;
}

inline bool traces_meet(const TraceResult& a, const TraceResult& b) {
  struct Piece { Point2 p; Vec2 q; bool ray; };
  auto pieces = [](const TraceResult& t) {
    std::vector<Piece> out;
    if (t.head_ray) out.push_back({t.points.front(), *t.head_ray, true});
    for (const auto& [p, q] : t.segments()) out.push_back({p, q, false});
    if (t.tail_ray) out.push_back({t.points.back(), *t.tail_ray, true});
    return out;
  };
  const auto pa = pieces(a);
  const auto pb = pieces(b);
  for (const auto& x : pa) {
    for (const auto& y : pb) {
      bool hit;
      if (x.ray && y.ray) hit = rays_meet(x.p, x.q, y.p, y.q);
      else if (x.ray) hit = ray_hits_segment(x.p, x.q, y.p, y.q);
      else if (y.ray) hit = ray_hits_segment(y.p, y.q, x.p, x.q);
      else hit = segments_touch(x.p, x.q, y.p, y.q);
      if (hit) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Geometric oracle: traces parallel rays through every prefix of the cut
/// (each realized as its own corridor map) and reports whether any two
/// traced lines meet.
inline SimulationResult simulate_bundle(const Cut& cut, const SimulationConfig& cfg = {}) {
  detail::require_nonempty(cut);
  if (cfg.rays < 2) fail(ErrorCode::InvalidArgument, "simulation needs at least two rays");
  SimulationResult res;
  const double D = cut.domain();
  const double lo = cfg.margin * D;
  const double hi = (1.0 - cfg.margin) * D;
  for (std::size_t k = 1; k <= cut.size(); ++k) {
    const PlanarMap m = detail::corridor_map(cut, k, cfg);
    std::vector<TraceResult> traces;
    for (std::size_t r = 0; r < cfg.rays; ++r) {
      const double p = lo + (hi - lo) * static_cast<double>(r) / static_cast<double>(cfg.rays - 1);
      traces.push_back(trace_mline(m, {p, -0.5 * D}, {0.0, 1.0}, cfg.trace));
    }
    bool meet = false;
    for (std::size_t i = 0; i < traces.size() && !meet; ++i) {
      for (std::size_t j = i + 1; j < traces.size() && !meet; ++j) {
        meet = detail::traces_meet(traces[i], traces[j]);
      }
    }
    res.traces.push_back(std::move(traces));
    if (meet && res.parallel) {
      res.parallel = false;
      res.prefix = k;
    }
  }
  return res;
}

inline SimulationResult simulate_bundle(const PlanarMap& m,
                                        const std::vector<std::pair<VertexId, VertexId>>& cut_edges,
                                        const SimulationConfig& cfg = {}) {
  return simulate_bundle(make_cut(m, cut_edges), cfg);
}

}  // namespace mapgeo
