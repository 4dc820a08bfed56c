#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace mapgeo;
using testsupport::data_path;
using testsupport::raised;

namespace {

constexpr double pi = kPi;

PlanarMap k4_uniform(double mu) {
  // Triangle with an inner apex joined to all three corners.
  return build_map({{1, {0, 0}, mu}, {2, {4, 0}, mu}, {3, {2, 3.5}, mu}, {4, {2, 1.2}, mu}},
                   {{1, 2}, {2, 3}, {3, 1}, {1, 4}, {2, 4}, {3, 4}});
}

// K4 with ρμ chosen per vertex (all valencies are 3).
PlanarMap k4_rho_mu(double a, double b, double c, double d) {
  return build_map({{1, {0, 0}, a / 3}, {2, {4, 0}, b / 3}, {3, {2, 3.5}, c / 3}, {4, {2, 1.2}, d / 3}},
                   {{1, 2}, {2, 3}, {3, 1}, {1, 4}, {2, 4}, {3, 4}});
}

}  // namespace

TEST(BuildMap, K4DrawingHasFourFaces) {
  const auto m = k4_uniform(2 * pi / 3);
  EXPECT_EQ(m.vertex_count(), 4u);
  EXPECT_EQ(m.edge_count(), 6u);
  EXPECT_EQ(m.face_count(), 4u);
  EXPECT_TRUE(m.face(m.outer_face()).outer);
  EXPECT_LT(m.face(m.outer_face()).signed_area, 0.0);
}

TEST(BuildMap, ExampleK4FixtureIsValid) {
  const auto m = load_map(data_path("k4.map"));
  EXPECT_EQ(m.vertex_count(), 4u);
  EXPECT_NEAR(m.rho_mu(1), 3 * pi / 2, 1e-12);
  EXPECT_NEAR(m.rho_mu(2), 3 * pi, 1e-12);
  EXPECT_NEAR(m.rho_mu(3), 3 * pi, 1e-12);
  EXPECT_NEAR(m.rho_mu(4), 2 * pi, 1e-12);
}

TEST(BuildMap, RotationIsCounterclockwise) {
  const auto m = load_map(data_path("wheel.map"));
  const auto& rot = m.rotation_at(m.index_of(0));
  ASSERT_EQ(rot.size(), 4u);
  double prev = -10;
  for (Dart d : rot) {
    const Vec2 v = m.vertex_at(m.dart_head(d)).position - m.vertex_at(m.dart_tail(d)).position;
    const double a = std::atan2(v.y, v.x);
    EXPECT_GT(a, prev);
    prev = a;
  }
}

TEST(BuildMap, Errors) {
  const double mu = 2 * pi / 3;
  // Two crossing diagonals of a square.
  EXPECT_EQ(raised([&] {
              build_map({{1, {0, 0}, mu}, {2, {1, 1}, mu}, {3, {1, 0}, mu}, {4, {0, 1}, mu}}, {{1, 2}, {3, 4}},
                        BuildOptions{false});
            }),
            ErrorCode::EdgeCrossing);
  EXPECT_EQ(raised([&] { build_map({{1, {0, 0}, pi}, {2, {1, 0}, pi}, {3, {0, 1}, pi}}, {{1, 2}, {2, 3}, {3, 1}}); }),
            ErrorCode::LowValency);
  EXPECT_EQ(raised([&] { k4_uniform(7.0); }), ErrorCode::MuOutOfRange);
  EXPECT_EQ(raised([&] { k4_uniform(0.0); }), ErrorCode::MuOutOfRange);
  EXPECT_EQ(raised([&] {
              build_map({{1, {0, 0}, mu}, {2, {4, 0}, mu}, {3, {2, 3.5}, mu}, {4, {2, 1.2}, mu}},
                        {{1, 2}, {2, 3}, {3, 1}, {1, 4}, {2, 4}, {3, 4}, {2, 1}});
            }),
            ErrorCode::DuplicateEdge);
  EXPECT_EQ(raised([&] { build_map({{1, {0, 0}, mu}, {1, {1, 0}, mu}}, {}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(raised([&] { build_map({{1, {0, 0}, mu}}, {{1, 1}}); }), ErrorCode::DegenerateEdge);
  EXPECT_EQ(raised([&] { build_map({{1, {0, 0}, mu}}, {{1, 9}}); }), ErrorCode::UnknownVertex);
}

TEST(BuildMap, MuUpperBoundIsInclusive) {
  // Rim vertices of the wheel sit exactly on μ = 4π/ρ.
  EXPECT_NO_THROW(load_map(data_path("wheel.map")));
  EXPECT_THROW(k4_uniform(4 * pi / 3 + 1e-9), Error);
}

TEST(ClassifyVertex, Examples) {
  const auto wheel = load_map(data_path("wheel.map"));
  EXPECT_EQ(wheel.valency(0), 4);
  EXPECT_EQ(classify_vertex(wheel, 0), PointClass::Euclidean);  // ρ=4, μ=π/2
  EXPECT_EQ(classify_vertex(wheel, 1), PointClass::Hyperbolic);  // ρ=3, μ=4π/3
  const auto k4 = load_map(data_path("k4.map"));
  EXPECT_EQ(classify_vertex(k4, 1), PointClass::Elliptic);  // ρ=3, μ=π/2
  EXPECT_THROW(classify_vertex(k4, 42), Error);
}

TEST(ClassifyEdge, Examples) {
  const auto k4 = load_map(data_path("k4.map"));
  EXPECT_EQ(classify_edge(k4, 1, 4), EdgeClass::CE1);  // elliptic - euclidean
  EXPECT_EQ(classify_edge(k4, 3, 2), EdgeClass::CE6);  // ρμ = 3π at both ends
  EXPECT_EQ(classify_edge(k4, 2, 3), EdgeClass::CE6);
  const auto flat = k4_uniform(2 * pi / 3);
  for (EdgeIndex e = 0; e < flat.edge_count(); ++e) EXPECT_EQ(classify_edge(flat, e), EdgeClass::CE2);
  EXPECT_THROW(classify_edge(k4, EdgeIndex{99}), Error);
  try {
    classify_edge(k4, EdgeIndex{99});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownEdge);
  }
}

TEST(ClassifyEdge, TableCoversAllPairs) {
  using P = PointClass;
  EXPECT_EQ(edge_class_of(P::Euclidean, P::Elliptic), EdgeClass::CE1);
  EXPECT_EQ(edge_class_of(P::Euclidean, P::Euclidean), EdgeClass::CE2);
  EXPECT_EQ(edge_class_of(P::Hyperbolic, P::Euclidean), EdgeClass::CE3);
  EXPECT_EQ(edge_class_of(P::Elliptic, P::Elliptic), EdgeClass::CE4);
  EXPECT_EQ(edge_class_of(P::Hyperbolic, P::Elliptic), EdgeClass::CE5);
  EXPECT_EQ(edge_class_of(P::Hyperbolic, P::Hyperbolic), EdgeClass::CE6);
}

TEST(ClassifyEdgePoint, LinearInterpolation) {
  // ρμ 4π/3 at u, 8π/3 at v: f runs 2π/3 → 4π/3.
  const auto m = k4_rho_mu(4 * pi / 3, 8 * pi / 3, 2 * pi, 2 * pi);
  const EdgeIndex e = *m.find_edge(1, 2);
  ASSERT_EQ(m.vertex_at(m.edge(e).u).id, 1);
  EXPECT_EQ(classify_edge(m, e), EdgeClass::CE5);
  const double d = m.edge(e).length;
  EXPECT_EQ(classify_edge_point(m, e, d / 2), PointClass::Euclidean);
  EXPECT_EQ(classify_edge_point(m, e, d / 4), PointClass::Elliptic);
  EXPECT_EQ(classify_edge_point(m, e, 3 * d / 4), PointClass::Hyperbolic);
  EXPECT_THROW(classify_edge_point(m, e, 1.01 * d), Error);
  EXPECT_THROW(classify_edge_point(m, e, -0.1), Error);

  const auto flat = k4_uniform(2 * pi / 3);
  for (double x : {0.0, 0.3, 1.7, 4.0}) EXPECT_EQ(classify_edge_point(flat, 0, x), PointClass::Euclidean);
}

TEST(Census, Examples) {
  const auto k4 = load_map(data_path("k4.map"));
  auto c = census(k4);
  EXPECT_EQ(c.rho_elliptic + c.rho_euclidean + c.rho_hyperbolic, 12);
  EXPECT_EQ(c.edges, 6u);
  EXPECT_TRUE(c.degree_identity);
  EXPECT_TRUE(c.count_identity);

  const auto tri = build_map({{1, {0, 0}, pi}, {2, {1, 0}, pi}, {3, {0, 1}, pi}}, {{1, 2}, {2, 3}, {3, 1}},
                             BuildOptions{false});
  c = census(tri);
  EXPECT_EQ(c.euclidean, 3u);
  EXPECT_EQ(c.faces, 2u);
  EXPECT_EQ(c.edge_classes[1], 3u);
  EXPECT_TRUE(c.count_identity);

  const auto wheel = load_map(data_path("wheel.map"));
  c = census(wheel);
  EXPECT_EQ(c.euclidean, 1u);
  EXPECT_EQ(c.hyperbolic, 4u);
  EXPECT_EQ(c.faces, 5u);
  EXPECT_EQ(c.edges, 8u);
  EXPECT_EQ(c.elliptic + c.euclidean + c.hyperbolic + c.faces, c.edges + 2);
  EXPECT_TRUE(c.degree_identity && c.count_identity);
}

TEST(InfiniteNonEuclidean, Examples) {
  EXPECT_FALSE(has_infinite_noneuclidean(k4_uniform(2 * pi / 3)));
  EXPECT_TRUE(has_infinite_noneuclidean(load_map(data_path("k4.map"))));
  EXPECT_TRUE(has_infinite_noneuclidean(k4_uniform(pi)));  // ρμ = 3π everywhere
}

TEST(RemoveFaces, Examples) {
  const auto k4 = k4_uniform(2 * pi / 3);
  const auto m = remove_faces(k4, {0});
  EXPECT_EQ(m.boundary_faces(), std::vector<FaceIndex>{0});
  EXPECT_TRUE(m.is_boundary(0));

  std::vector<FaceIndex> all(k4.face_count());
  std::iota(all.begin(), all.end(), 0);
  try {
    remove_faces(k4, all);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllFacesRemoved);
  }
  EXPECT_THROW(remove_faces(k4, {17}), Error);

  // Dropping the three quadrilaterals of a prism leaves the inner triangle
  // cut off from the outer face.
  const auto pr = testsupport::prism();
  std::vector<FaceIndex> quads;
  for (FaceIndex f = 0; f < pr.face_count(); ++f) {
    if (pr.face(f).darts.size() == 4) quads.push_back(f);
  }
  ASSERT_EQ(quads.size(), 3u);
  try {
    remove_faces(pr, quads);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Disconnects);
  }
  EXPECT_NO_THROW(remove_faces(pr, {quads[0]}));
}

TEST(MapText, BoundaryLinesAreApplied) {
  const std::string text =
      "v 1 0 0 2.0943951023931957\nv 2 4 0 2.0943951023931957\nv 3 2 3.5 2.0943951023931957\n"
      "v 4 2 1.2 2.0943951023931957\ne 1 2\ne 2 3\ne 3 1\ne 1 4\ne 2 4\ne 3 4\nboundary 1\n";
  const auto m = parse_map_file(text);
  EXPECT_EQ(m.boundary_faces(), std::vector<FaceIndex>{1});
}

TEST(MapInvariants, RandomMaps) {
  auto rng = testsupport::make_rng(1);
  for (int it = 0; it < 60; ++it) {
    const auto m = testsupport::random_map(rng, testsupport::any_class(), {5, 12, 10.0, 0.3});
    const long nu = static_cast<long>(m.vertex_count());
    const long eps = static_cast<long>(m.edge_count());
    const long phi = static_cast<long>(m.face_count());
    EXPECT_EQ(nu - eps + phi, 2);
    const auto c = census(m);
    EXPECT_TRUE(c.degree_identity);
    EXPECT_TRUE(c.count_identity);
    for (EdgeIndex e = 0; e < m.edge_count(); ++e) {
      const auto& ed = m.edge(e);
      const auto a = classify_vertex_at(m, ed.u), b = classify_vertex_at(m, ed.v);
      EXPECT_EQ(edge_class_of(a, b), edge_class_of(b, a));
      EXPECT_EQ(classify_edge(m, e), edge_class_of(b, a));
      EXPECT_EQ(classify_edge_point(m, e, 0.0), a);
      EXPECT_EQ(classify_edge_point(m, e, ed.length), b);
    }
  }
}
