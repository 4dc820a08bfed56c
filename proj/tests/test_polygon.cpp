#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace mapgeo;
using testsupport::data_path;
using testsupport::raised;

namespace {

constexpr double pi = kPi;

double heron_ref(double a, double b, double c) {
  const double s = (a + b + c) / 2;
  return std::sqrt(std::max(0.0, s * (s - a) * (s - b) * (s - c)));
}

}  // namespace

TEST(Polygon1, Examples) {
  EXPECT_TRUE(exists_1_polygon({pi / 3, pi / 3, pi / 3}));
  EXPECT_FALSE(exists_1_polygon({pi, pi}));
  EXPECT_TRUE(exists_1_polygon({pi / 2, pi / 2, pi / 2, pi / 2}));
  EXPECT_FALSE(exists_1_polygon({pi / 2, pi / 2, pi / 2}));
}

TEST(Polygon2, Examples) {
  const auto flat = build_map({{1, {0, 0}, 2 * pi / 3}, {2, {4, 0}, 2 * pi / 3}, {3, {2, 3.5}, 2 * pi / 3},
                               {4, {2, 1.2}, 2 * pi / 3}},
                              {{1, 2}, {2, 3}, {3, 1}, {1, 4}, {2, 4}, {3, 4}});
  EXPECT_FALSE(exists_2_polygon(flat));
  EXPECT_TRUE(exists_2_polygon(load_map(data_path("k4.map"))));
  // A custom non-euclidean edge function is enough on its own.
  const auto bent = flat.with_angle_function(0, AngleFunction::linear(pi, 0.9 * pi, flat.edge(0).length));
  EXPECT_TRUE(exists_2_polygon(bent));
}

TEST(InternalAngleSum, Examples) {
  EXPECT_DOUBLE_EQ(internal_angle_sum(3, {}), pi);
  EXPECT_DOUBLE_EQ(internal_angle_sum(3, {pi / 2}), 3 * pi / 2);
  EXPECT_DOUBLE_EQ(internal_angle_sum(4, {}), 2 * pi);
  for (int n = 3; n < 12; ++n) EXPECT_NEAR(internal_angle_sum(n, {}), (n - 2) * pi, 1e-12);
  EXPECT_EQ(raised([] { internal_angle_sum(0, {}); }), ErrorCode::InvalidArgument);
}

TEST(InternalAngleSum, TriangleTrichotomy) {
  // A triangle whose sides cross l edges: elliptic crossings (f < π) push the
  // sum above π, hyperbolic ones below, euclidean leave it at π.
  EXPECT_GT(internal_angle_sum(3, {0.8 * pi, 0.9 * pi}), pi);
  EXPECT_NEAR(internal_angle_sum(3, {pi, pi}), pi, 1e-15);
  EXPECT_LT(internal_angle_sum(3, {1.2 * pi, 1.1 * pi}), pi);
}

TEST(TriangleAreaOnePoint, Examples) {
  // f = 2π is a straight crossing: plain Heron of (a, b, c+d).
  EXPECT_NEAR(triangle_area_one_point(3, 4, 2, 3, 2 * pi, ChainKind::Elliptic), heron_ref(3, 4, 5), 1e-12);
  EXPECT_NEAR(triangle_area_one_point(3, 4, 2, 3, 2 * pi, ChainKind::Hyperbolic), heron_ref(3, 4, 5), 1e-12);
  // Right-isosceles construction: interior angle π/2 at x.
  EXPECT_NEAR(triangle_area_one_point(1, 1, 1, 1, pi, ChainKind::Elliptic), 1.0, 1e-12);
  // Reflex 3π/2 at x dents by the same half-square.
  EXPECT_NEAR(triangle_area_one_point(1, 1, 1, 1, 3 * pi, ChainKind::Hyperbolic), 0.0, 1e-12);
  // Coordinates: A(0,0), x(1,0), B(1,1), C(0,1) is the unit square.
  const std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_NEAR(testsupport::shoelace(sq), triangle_area_one_point(1, 1, 1, 1, pi, ChainKind::Elliptic), 1e-12);
}

TEST(ChainArea, Errors) {
  EXPECT_EQ(raised([] { chain_area({ChainKind::Elliptic, 1, 1, {1}, {}}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(raised([] { chain_area({ChainKind::Elliptic, 1, 1, {1, 1, 1}, {pi}}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(raised([] { chain_area({ChainKind::Elliptic, 1, 1, {1, 1}, {3 * pi}}); }), ErrorCode::ChainInconsistent);
  EXPECT_EQ(raised([] { chain_area({ChainKind::Hyperbolic, 1, 1, {1, 1}, {pi}}); }), ErrorCode::ChainInconsistent);
  // |AB| = √2 cannot close with a = b = 0.5.
  EXPECT_EQ(raised([] { chain_area({ChainKind::Elliptic, 0.5, 0.5, {1, 1}, {pi}}); }), ErrorCode::ChainInconsistent);
  // Dent larger than the triangle on AB.
  EXPECT_EQ(raised([] { chain_area({ChainKind::Hyperbolic, 0.75, 0.75, {1, 1}, {3 * pi}}); }), ErrorCode::NegativeArea);
  EXPECT_EQ(raised([] { detail::heron(1, 1, 3); }), ErrorCode::DegenerateTriangle);
  EXPECT_EQ(detail::heron(1, 1, 2), 0.0);
}

TEST(ChainArea, FlatChainIsPlainTriangle) {
  const SideChain ch{ChainKind::Elliptic, 5, 4, {1, 0.5, 1.5}, {2 * pi, 2 * pi}};
  EXPECT_NEAR(chain_area(ch), heron_ref(5, 4, 3), 1e-12);
  EXPECT_NEAR(chain_area_detail(ch).ab, 3.0, 1e-12);
}

TEST(ChainArea, SpecializationIsExact) {
  auto rng = testsupport::make_rng(3);
  for (int it = 0; it < 50; ++it) {
    const auto kind = it % 2 ? ChainKind::Elliptic : ChainKind::Hyperbolic;
    const auto d = testsupport::random_drawn_chain(rng, kind, 1);
    const auto& ch = d.chain;
    EXPECT_EQ(chain_area(ch), triangle_area_one_point(ch.a, ch.b, ch.c[0], ch.c[1], ch.f[0], kind));
  }
}

TEST(ChainArea, MatchesCoordinates) {
  auto rng = testsupport::make_rng(4);
  for (int it = 0; it < 200; ++it) {
    const auto kind = it % 2 ? ChainKind::Elliptic : ChainKind::Hyperbolic;
    const std::size_t p = 1 + static_cast<std::size_t>(it % 4);
    const auto d = testsupport::random_drawn_chain(rng, kind, p);
    const auto det = chain_area_detail(d.chain);
    EXPECT_NEAR(det.area, d.area, 1e-9 * d.area) << "p=" << p << " kind=" << to_string(kind);
    EXPECT_NEAR(det.ab, distance(d.polygon.front(), d.polygon[p + 1]), 1e-9);
  }
}

TEST(MCircle, Examples) {
  EXPECT_TRUE(mcircle_exists(PlanarMap{}, {{3, 4}, 1.0}).exists);

  const auto pr = testsupport::prism();
  const auto inner = mcircle_exists(pr, {{0, 0}, 0.2});
  EXPECT_TRUE(inner.exists);
  EXPECT_EQ(inner.reason, "center in an inner face");

  // Outer face, bottom side of the prism (elliptic, f = π/3) at distance r/2.
  const auto outer = mcircle_exists(pr, {{0, -6}, 2.0});
  EXPECT_FALSE(outer.exists);
  ASSERT_TRUE(outer.witness.has_value());
  EXPECT_NEAR(outer.witness->y, -5.0, 1e-9);
  ASSERT_TRUE(outer.epsilon.has_value());
  EXPECT_GE(*outer.epsilon, 1.0);

  // Far away from everything: no intersections, so the circle exists.
  EXPECT_TRUE(mcircle_exists(pr, {{0, -40}, 2.0}).exists);

  EXPECT_EQ(raised([&] { mcircle_exists(pr, {{0, -5}, 1.0}); }), ErrorCode::CenterOnEdge);
}

TEST(MCircle, EuclideanMapAlwaysExists) {
  const auto flat = build_map({{1, {0, 0}, 2 * pi / 3}, {2, {4, 0}, 2 * pi / 3}, {3, {2, 3.5}, 2 * pi / 3},
                               {4, {2, 1.2}, 2 * pi / 3}},
                              {{1, 2}, {2, 3}, {3, 1}, {1, 4}, {2, 4}, {3, 4}});
  EXPECT_TRUE(mcircle_exists(flat, {{2, -1}, 3.0}).exists);
}

TEST(MCircle, NonEuclideanVertexInside) {
  const auto k4 = load_map(data_path("k4.map"));
  const auto r = mcircle_exists(k4, {{-1, -1}, 2.0});
  EXPECT_FALSE(r.exists);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->x, 0.0);
}

TEST(MCircleEquation, Examples) {
  EXPECT_EQ(mcircle_equation({0, 0}, 1.0).rho(0.0), 1.0);
  EXPECT_EQ(mcircle_equation({1, 2}, 2.5).rho(pi), 2.5);
  EXPECT_EQ(raised([] { mcircle_equation({0, 0}, 0.0); }), ErrorCode::InvalidArgument);
  const auto c = mcircle_equation({1, 2}, 2.5);
  EXPECT_NEAR(distance(c.point(1.234), {1, 2}), 2.5, 1e-12);
}

TEST(MCircleEquation, RadiusMatchesTracedLength) {
  // On a euclidean map the m-length of a traced radius is its plain length.
  const auto flat = build_map({{1, {-5, -5}, 2 * pi / 3}, {2, {5, -5}, 2 * pi / 3}, {3, {5, 5}, 2 * pi / 3},
                               {4, {-5, 5}, 2 * pi / 3}, {5, {0.3, 0.2}, pi / 2}},
                              {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {2, 5}, {3, 5}, {4, 5}});
  const Point2 o{-1.0, 0.1};
  const double r0 = 3.7;
  TraceConfig cfg;
  cfg.both_directions = false;
  const auto t = trace_mline(flat, o, {std::cos(0.4), std::sin(0.4)}, cfg);
  ASSERT_TRUE(t.tail_ray.has_value());
  // Walk r0 along the polyline and ray.
  double left = r0;
  Point2 at = t.points.front();
  for (std::size_t i = 1; i < t.points.size() && left > 0; ++i) {
    const double d = distance(at, t.points[i]);
    if (d >= left) {
      at = at + (left / d) * (t.points[i] - at);
      left = 0;
    } else {
      left -= d;
      at = t.points[i];
    }
  }
  if (left > 0) at = at + left * *t.tail_ray;
  EXPECT_NEAR(distance(o, at), mcircle_equation(o, r0).rho(0.4), 1e-9);
}
