#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mapgeo/angle_function.hpp"
#include "mapgeo/common.hpp"
#include "mapgeo/geometry.hpp"

namespace mapgeo {

using VertexId = int;
using EdgeIndex = std::size_t;
using FaceIndex = std::size_t;

struct Vertex {
  VertexId id = 0;
  Point2 position;
  double mu = 0.0;
};

struct EdgeSpec {
  VertexId u = 0;
  VertexId v = 0;
};

struct Edge {
  std::size_t u = 0;  // vertex index, not label
  std::size_t v = 0;
  double length = 0.0;
};

/// A dart is one side of an edge: dart 2e runs u→v, dart 2e+1 runs v→u.
using Dart = std::size_t;

inline EdgeIndex dart_edge(Dart d) { return d / 2; }
inline Dart dart_twin(Dart d) { return d ^ 1U; }

struct Face {
  std::vector<Dart> darts;
  std::vector<std::size_t> vertices;  // tail vertex of each dart
  double signed_area = 0.0;
  bool outer = false;
};

enum class EdgeClass { CE1, CE2, CE3, CE4, CE5, CE6 };

inline std::string_view to_string(EdgeClass c) {
  static constexpr std::array<std::string_view, 6> names = {"CE1", "CE2", "CE3",
                                                             "CE4", "CE5", "CE6"};
  return names[static_cast<std::size_t>(c)];
}

/// CE1 eu-el, CE2 eu-eu, CE3 eu-hy, CE4 el-el, CE5 el-hy, CE6 hy-hy.
inline EdgeClass edge_class_of(PointClass a, PointClass b) {
  if (a > b) std::swap(a, b);
  using P = PointClass;
  if (a == P::Elliptic && b == P::Euclidean) return EdgeClass::CE1;
  if (a == P::Euclidean && b == P::Euclidean) return EdgeClass::CE2;
  if (a == P::Euclidean && b == P::Hyperbolic) return EdgeClass::CE3;
  if (a == P::Elliptic && b == P::Elliptic) return EdgeClass::CE4;
  if (a == P::Elliptic && b == P::Hyperbolic) return EdgeClass::CE5;
  return EdgeClass::CE6;
}

struct BuildOptions {
  // Auxiliary drawings (a lone triangle, say) may go below valency 3.
  bool require_min_valency = true;
  double tol_angle = kTolAngle;
};

class PlanarMap;
PlanarMap build_map(const std::vector<Vertex>& vertices,
                    const std::vector<EdgeSpec>& edges,
                    const BuildOptions& options = {});

/// Immutable straight-line planar map with angle factors.
class PlanarMap {
 public:
  PlanarMap() { faces_.push_back(Face{{}, {}, 0.0, true}); boundary_.push_back(false); }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t face_count() const { return faces_.size(); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Vertex& vertex_at(std::size_t index) const { return vertices_[index]; }
  const Edge& edge(EdgeIndex e) const {
    if (e >= edges_.size()) fail(ErrorCode::UnknownEdge, "edge index " + std::to_string(e));
    return edges_[e];
  }
  const Face& face(FaceIndex f) const {
    if (f >= faces_.size()) fail(ErrorCode::UnknownFace, "face index " + std::to_string(f));
    return faces_[f];
  }

  std::size_t index_of(VertexId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) fail(ErrorCode::UnknownVertex, "vertex " + std::to_string(id));
    return it->second;
  }
  bool has_vertex(VertexId id) const { return index_.count(id) != 0; }
  const Vertex& vertex(VertexId id) const { return vertices_[index_of(id)]; }

  int valency_at(std::size_t index) const {
    return static_cast<int>(rotation_[index].size());
  }
  int valency(VertexId id) const { return valency_at(index_of(id)); }

  /// ρ(u)μ(u), the total angle around the vertex.
  double rho_mu_at(std::size_t index) const {
    return valency_at(index) * vertices_[index].mu;
  }
  double rho_mu(VertexId id) const { return rho_mu_at(index_of(id)); }

  /// Outgoing darts at a vertex, counterclockwise by direction angle.
  const std::vector<Dart>& rotation_at(std::size_t index) const { return rotation_[index]; }

  std::size_t dart_tail(Dart d) const {
    const Edge& e = edges_[dart_edge(d)];
    return (d & 1U) ? e.v : e.u;
  }
  std::size_t dart_head(Dart d) const { return dart_tail(dart_twin(d)); }
  FaceIndex dart_face(Dart d) const { return dart_face_[d]; }

  /// Faces on the left of u→v and of v→u.
  std::pair<FaceIndex, FaceIndex> edge_faces(EdgeIndex e) const {
    return {dart_face_[2 * e], dart_face_[2 * e + 1]};
  }

  std::optional<EdgeIndex> find_edge(VertexId a, VertexId b) const {
    const std::size_t ia = index_of(a);
    const std::size_t ib = index_of(b);
    for (Dart d : rotation_[ia]) {
      if (dart_head(d) == ib) return dart_edge(d);
    }
    return std::nullopt;
  }

  FaceIndex outer_face() const { return faces_.size() - 1; }
  bool is_boundary(FaceIndex f) const { return boundary_.at(f); }
  const std::vector<bool>& boundary_flags() const { return boundary_; }
  std::vector<FaceIndex> boundary_faces() const {
    std::vector<FaceIndex> out;
    for (FaceIndex f = 0; f < boundary_.size(); ++f) {
      if (boundary_[f]) out.push_back(f);
    }
    return out;
  }

  /// Angle function of edge e oriented from its first endpoint; linear in
  /// the endpoint half-angles unless a custom function was attached.
  AngleFunction angle_function(EdgeIndex e) const {
    const Edge& ed = edge(e);
    if (custom_[e]) return *custom_[e];
    return AngleFunction::linear(rho_mu_at(ed.u) / 2.0, rho_mu_at(ed.v) / 2.0, ed.length);
  }

  /// Copy of this map with a custom angle function on edge e. Endpoint values
  /// are not forced to match the vertex half-angles.
  PlanarMap with_angle_function(EdgeIndex e, AngleFunction fn) const {
    const Edge& ed = edge(e);
    if (std::abs(fn.length() - ed.length) > 1e-9 * std::max(1.0, ed.length)) {
      fail(ErrorCode::InvalidArgument, "angle function length does not match edge");
    }
    PlanarMap copy = *this;
    copy.custom_[e] = std::move(fn);
    return copy;
  }
  bool has_custom_angle_function(EdgeIndex e) const { return custom_.at(e).has_value(); }

  double tol_angle() const { return tol_angle_; }

  /// Face containing p, or nullopt when p lies within `tol` of an edge.
  std::optional<FaceIndex> locate_face(Point2 p, double tol = 1e-9) const {
    for (const Edge& e : edges_) {
      if (point_segment_distance(p, vertices_[e.u].position, vertices_[e.v].position) <= tol) {
        return std::nullopt;
      }
    }
    for (FaceIndex f = 0; f + 1 < faces_.size(); ++f) {
      if (winding_number(face_points(f), p) != 0) return f;
    }
    return outer_face();
  }

  std::vector<Point2> face_points(FaceIndex f) const {
    std::vector<Point2> pts;
    for (std::size_t v : face(f).vertices) pts.push_back(vertices_[v].position);
    return pts;
  }

 private:
  friend PlanarMap build_map(const std::vector<Vertex>&, const std::vector<EdgeSpec>&,
                             const BuildOptions&);
  friend PlanarMap remove_faces(const PlanarMap&, const std::vector<FaceIndex>&);

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<VertexId, std::size_t> index_;
  std::vector<std::vector<Dart>> rotation_;
  std::vector<std::size_t> rotation_pos_;  // per dart, position in its tail's rotation
  std::vector<Face> faces_;
  std::vector<FaceIndex> dart_face_;
  std::vector<bool> boundary_;
  std::vector<std::optional<AngleFunction>> custom_;
  double tol_angle_ = kTolAngle;
};

namespace detail {

inline bool edges_conflict(Point2 a, Point2 b, Point2 c, Point2 d, bool share_a_c) {
  // Segments sharing endpoint a == c may only touch there: they conflict when
  // collinear and pointing the same way.
  if (share_a_c) {
    const Vec2 ab = b - a;
    const Vec2 cd = d - c;
    return cross(ab, cd) == 0.0 && dot(ab, cd) > 0.0;
  }
  return segments_touch(a, b, c, d);
}

inline bool connected(std::size_t n, const std::vector<Edge>& edges) {
  if (n == 0) return true;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = n;
  for (const Edge& e : edges) {
    const auto a = find(e.u);
    const auto b = find(e.v);
    if (a != b) { parent[a] = b; --comps; }
  }
  return comps == 1;
}

}  // namespace detail

inline PlanarMap build_map(const std::vector<Vertex>& vertices,
                           const std::vector<EdgeSpec>& edge_specs,
                           const BuildOptions& options) {
  PlanarMap m;
  m.tol_angle_ = options.tol_angle;
  m.vertices_ = vertices;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vertex& v = vertices[i];
    if (!std::isfinite(v.position.x) || !std::isfinite(v.position.y) || !std::isfinite(v.mu)) {
      fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v.id) + " has non-finite data");
    }
    if (!m.index_.emplace(v.id, i).second) {
      fail(ErrorCode::InvalidArgument, "duplicate vertex id " + std::to_string(v.id));
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, EdgeIndex> seen;
  for (const EdgeSpec& spec : edge_specs) {
    const std::size_t a = m.index_of(spec.u);
    const std::size_t b = m.index_of(spec.v);
    if (a == b) fail(ErrorCode::DegenerateEdge, "loop at vertex " + std::to_string(spec.u));
    const double len = distance(vertices[a].position, vertices[b].position);
    if (!(len > 0.0)) {
      fail(ErrorCode::DegenerateEdge, "edge " + std::to_string(spec.u) + "-" +
                                          std::to_string(spec.v) + " has zero length");
    }
    if (!seen.emplace(std::minmax(a, b), m.edges_.size()).second) {
      fail(ErrorCode::DuplicateEdge, "edge " + std::to_string(spec.u) + "-" + std::to_string(spec.v));
    }
    m.edges_.push_back(Edge{a, b, len});
  }

  // Straight-line planarity.
  const auto& E = m.edges_;
  for (std::size_t i = 0; i < E.size(); ++i) {
    for (std::size_t j = i + 1; j < E.size(); ++j) {
      Point2 a = vertices[E[i].u].position, b = vertices[E[i].v].position;
      Point2 c = vertices[E[j].u].position, d = vertices[E[j].v].position;
      bool shared = true;
      if (E[i].u == E[j].u) {
      } else if (E[i].u == E[j].v) {
        std::swap(c, d);
      } else if (E[i].v == E[j].u) {
        std::swap(a, b);
      } else if (E[i].v == E[j].v) {
        std::swap(a, b);
        std::swap(c, d);
      } else {
        shared = false;
      }
      if (detail::edges_conflict(a, b, c, d, shared)) {
        fail(ErrorCode::EdgeCrossing,
             "edges " + std::to_string(vertices[E[i].u].id) + "-" + std::to_string(vertices[E[i].v].id) +
                 " and " + std::to_string(vertices[E[j].u].id) + "-" + std::to_string(vertices[E[j].v].id) +
                 " intersect");
      }
    }
  }

  // Rotation system.
  const std::size_t n = vertices.size();
  m.rotation_.assign(n, {});
  for (EdgeIndex e = 0; e < E.size(); ++e) {
    m.rotation_[E[e].u].push_back(2 * e);
    m.rotation_[E[e].v].push_back(2 * e + 1);
  }
  m.rotation_pos_.assign(2 * E.size(), 0);
  for (std::size_t v = 0; v < n; ++v) {
    auto& rot = m.rotation_[v];
    const Point2 o = vertices[v].position;
    auto angle = [&](Dart d) {
      const Vec2 w = vertices[m.dart_head(d)].position - o;
      return std::atan2(w.y, w.x);
    };
    std::sort(rot.begin(), rot.end(), [&](Dart x, Dart y) { return angle(x) < angle(y); });
    for (std::size_t k = 0; k < rot.size(); ++k) m.rotation_pos_[rot[k]] = k;
  }

  for (std::size_t v = 0; v < n; ++v) {
    const int rho = m.valency_at(v);
    if (options.require_min_valency && rho < 3) {
      fail(ErrorCode::LowValency, "vertex " + std::to_string(vertices[v].id) + " has valency " +
                                      std::to_string(rho));
    }
    const double mu = vertices[v].mu;
    // The upper bound 4π/ρ itself is admitted (see README, "Conventions").
    if (rho > 0 && !(mu > 0.0 && mu <= 4.0 * kPi / rho + 1e-12)) {
      fail(ErrorCode::MuOutOfRange, "vertex " + std::to_string(vertices[v].id) + ": mu " +
                                        std::to_string(mu) + " outside (0, 4pi/" +
                                        std::to_string(rho) + "]");
    }
    if (rho == 0 && !(mu > 0.0)) {
      fail(ErrorCode::MuOutOfRange, "vertex " + std::to_string(vertices[v].id) + ": mu must be positive");
    }
  }
  if (!detail::connected(n, E)) fail(ErrorCode::Disconnected, "map drawing is not connected");

  // Face tracing: after u→v continue along v→w, w the neighbour preceding u
  // counterclockwise around v. Bounded faces come out counterclockwise.
  m.faces_.clear();
  m.boundary_.clear();
  const std::size_t darts = 2 * E.size();
  constexpr FaceIndex kNone = static_cast<FaceIndex>(-1);
  m.dart_face_.assign(darts, kNone);
  std::vector<Face> traced;
  for (Dart start = 0; start < darts; ++start) {
    if (m.dart_face_[start] != kNone) continue;
    Face f;
    Dart d = start;
    do {
      m.dart_face_[d] = traced.size();
      f.darts.push_back(d);
      f.vertices.push_back(m.dart_tail(d));
      const Dart back = dart_twin(d);
      const std::size_t v = m.dart_tail(back);
      const auto& rot = m.rotation_[v];
      const std::size_t k = m.rotation_pos_[back];
      d = rot[(k + rot.size() - 1) % rot.size()];
    } while (d != start);
    std::vector<Point2> pts;
    for (std::size_t v : f.vertices) pts.push_back(vertices[v].position);
    f.signed_area = signed_area(pts);
    traced.push_back(std::move(f));
  }
  if (traced.empty()) {
    traced.push_back(Face{{}, {}, 0.0, true});
  }
  std::size_t outer = 0;
  for (std::size_t i = 1; i < traced.size(); ++i) {
    if (traced[i].signed_area < traced[outer].signed_area) outer = i;
  }
  std::vector<FaceIndex> remap(traced.size());
  for (std::size_t i = 0, k = 0; i < traced.size(); ++i) {
    if (i == outer) continue;
    remap[i] = k++;
  }
  remap[outer] = traced.size() - 1;
  m.faces_.resize(traced.size());
  for (std::size_t i = 0; i < traced.size(); ++i) {
    traced[i].outer = (i == outer);
    m.faces_[remap[i]] = std::move(traced[i]);
  }
  for (auto& fi : m.dart_face_) fi = remap[fi];
  m.boundary_.assign(m.faces_.size(), false);
  m.custom_.assign(E.size(), std::nullopt);

  if (n > 0) {
    const long euler = static_cast<long>(n) - static_cast<long>(E.size()) +
                       static_cast<long>(m.faces_.size());
    if (euler != 2) {
      fail(ErrorCode::InvalidArgument, "internal: Euler characteristic " + std::to_string(euler));
    }
  }
  return m;
}

inline PointClass classify_vertex(const PlanarMap& m, VertexId id) {
  return classify_against(m.rho_mu(id), kTwoPi, m.tol_angle());
}

inline PointClass classify_vertex_at(const PlanarMap& m, std::size_t index) {
  return classify_against(m.rho_mu_at(index), kTwoPi, m.tol_angle());
}

inline EdgeClass classify_edge(const PlanarMap& m, EdgeIndex e) {
  const Edge& ed = m.edge(e);
  return edge_class_of(classify_vertex_at(m, ed.u), classify_vertex_at(m, ed.v));
}

inline EdgeClass classify_edge(const PlanarMap& m, VertexId a, VertexId b) {
  const auto e = m.find_edge(a, b);
  if (!e) fail(ErrorCode::UnknownEdge, "no edge " + std::to_string(a) + "-" + std::to_string(b));
  return classify_edge(m, *e);
}

/// Class of the point at arc position x (from the edge's first endpoint).
inline PointClass classify_edge_point(const PlanarMap& m, EdgeIndex e, double x) {
  return classify_angle(m.angle_function(e).at(x), m.tol_angle());
}

struct CensusReport {
  std::size_t elliptic = 0;
  std::size_t euclidean = 0;
  std::size_t hyperbolic = 0;
  long rho_elliptic = 0;
  long rho_euclidean = 0;
  long rho_hyperbolic = 0;
  std::array<std::size_t, 6> edge_classes{};
  std::size_t edges = 0;
  std::size_t faces = 0;
  bool degree_identity = false;  // Σρ over the classes = 2·Σ|CEi|
  bool count_identity = false;   // |Vel|+|Veu|+|Vhy|+φ = Σ|CEi|+2
};

inline CensusReport census(const PlanarMap& m) {
  CensusReport r;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    const long rho = m.valency_at(v);
    switch (classify_vertex_at(m, v)) {
      case PointClass::Elliptic: ++r.elliptic; r.rho_elliptic += rho; break;
      case PointClass::Euclidean: ++r.euclidean; r.rho_euclidean += rho; break;
      case PointClass::Hyperbolic: ++r.hyperbolic; r.rho_hyperbolic += rho; break;
    }
  }
  for (EdgeIndex e = 0; e < m.edge_count(); ++e) {
    ++r.edge_classes[static_cast<std::size_t>(classify_edge(m, e))];
  }
  r.edges = std::accumulate(r.edge_classes.begin(), r.edge_classes.end(), std::size_t{0});
  r.faces = m.face_count();
  r.degree_identity =
      r.rho_elliptic + r.rho_euclidean + r.rho_hyperbolic == 2 * static_cast<long>(r.edges);
  r.count_identity = r.elliptic + r.euclidean + r.hyperbolic + r.faces == r.edges + 2;
  return r;
}

/// True iff some edge carries different ρμ at its ends, or ρμ is one
/// constant other than 2π over the whole vertex set.
inline bool has_infinite_noneuclidean(const PlanarMap& m) {
  const double tol = m.tol_angle();
  for (const Edge& e : m.edges()) {
    if (std::abs(m.rho_mu_at(e.u) - m.rho_mu_at(e.v)) > tol) return true;
  }
  if (m.vertex_count() == 0) return false;
  const double first = m.rho_mu_at(0);
  for (std::size_t v = 1; v < m.vertex_count(); ++v) {
    if (std::abs(m.rho_mu_at(v) - first) > tol) return false;
  }
  return classify_against(first, kTwoPi, tol) != PointClass::Euclidean;
}

/// Marks faces as removed. Removed faces are closed: their boundary edges and
/// vertices leave the surface with them, and what is left must stay connected.
inline PlanarMap remove_faces(const PlanarMap& m, const std::vector<FaceIndex>& ids) {
  std::vector<bool> removed(m.face_count(), false);
  for (FaceIndex f : ids) {
    if (f >= m.face_count()) fail(ErrorCode::UnknownFace, "face index " + std::to_string(f));
    removed[f] = true;
  }
  for (FaceIndex f = 0; f < m.face_count(); ++f) removed[f] = removed[f] || m.is_boundary(f);
  const auto count = static_cast<std::size_t>(std::count(removed.begin(), removed.end(), true));
  if (count == 0) fail(ErrorCode::InvalidArgument, "no faces to remove");
  if (count >= m.face_count()) fail(ErrorCode::AllFacesRemoved, "at least one face must remain");

  std::vector<std::size_t> parent(m.face_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

  for (EdgeIndex e = 0; e < m.edge_count(); ++e) {
    const auto [f1, f2] = m.edge_faces(e);
    if (!removed[f1] && !removed[f2]) unite(f1, f2);
  }
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    const auto& rot = m.rotation_at(v);
    bool keeps = std::none_of(rot.begin(), rot.end(),
                              [&](Dart d) { return removed[m.dart_face(d)]; });
    if (!keeps) continue;
    for (std::size_t k = 1; k < rot.size(); ++k) unite(m.dart_face(rot[0]), m.dart_face(rot[k]));
  }
  std::optional<std::size_t> root;
  for (FaceIndex f = 0; f < m.face_count(); ++f) {
    if (removed[f]) continue;
    if (!root) root = find(f);
    else if (find(f) != *root) fail(ErrorCode::Disconnects, "remaining surface is disconnected");
  }

  PlanarMap out = m;
  out.boundary_ = removed;
  return out;
}

}  // namespace mapgeo
