#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mapgeo/cli.hpp"
#include "test_support.hpp"

using namespace mapgeo;
using testsupport::data_path;
using testsupport::raised;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  const int code = mapgeo::cli::run(args, o, e);
  return {code, o.str(), e.str()};
}

std::string tmp(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "mapgeo_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST(Cli, Classify) {
  const auto r = run_cli({"classify", "--map", data_path("k4.map")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("vertex 1 rho=3"), std::string::npos);
  EXPECT_NE(r.out.find("degree_identity=true count_identity=true"), std::string::npos);
  EXPECT_EQ(count(r.out, "\nedge "), 6u);
}

TEST(Cli, TracePrismWritesFiles) {
  const auto svg = tmp("prism.svg"), csv = tmp("prism.csv");
  const auto r = run_cli({"trace", "--map", data_path("prism.map"), "--start", "0,-4", "--dir", "1,0", "--svg", svg,
                      "--csv", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("classification=ClosedSimple crossings=3"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("predicted=ClosedSimple"), std::string::npos);
  const auto text = read_file(svg);
  EXPECT_NE(text.find("<svg"), std::string::npos);
  EXPECT_EQ(count(text, "<polyline"), 1u);
  EXPECT_EQ(count(read_file(csv), "\n"), 4u);  // header + three segments
}

TEST(Cli, TraceManyRays) {
  const auto r = run_cli({"--threads", "2", "trace", "--map", data_path("k4.map"), "--start", "2,-1", "--dir", "0,1",
                      "--rays", "3", "--spacing", "0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count(r.out, "ray "), 3u);
}

TEST(Cli, Enumerate) {
  const auto r = run_cli({"enumerate", "--graph", data_path("k4.edges")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("graph,nu,eps,betti,aut,genus_poly,n_O,n_N,n_O_b,n_N_b"), std::string::npos);
  EXPECT_NE(r.out.find("k4,4,6,3,24,2 + 14x,27,189,243/4,1701/4"), std::string::npos) << r.out;
}

TEST(Cli, AreaAndBundle) {
  const auto a = run_cli({"area", "--file", data_path("triangle.chain")});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("area=1 "), std::string::npos) << a.out;
  EXPECT_NE(a.out.find("area=0 "), std::string::npos) << a.out;

  const auto b = run_cli({"bundle", "--map", data_path("ladder.map"), "--cut", "1-4,2-5,3-6", "--simulate", "4"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("bundle true"), std::string::npos);
  EXPECT_NE(b.out.find("simulated true"), std::string::npos);
  const auto rev = run_cli({"bundle", "--map", data_path("ladder.map"), "--cut", "4:1,5:2", "--mode", "linear"});
  EXPECT_NE(rev.out.find("linear false failing_prefix=1"), std::string::npos) << rev.out;
}

TEST(Cli, Pseudo) {
  const auto r = run_cli({"pseudo", "--field", "ring:1,1,-", "--rect", "-2,2,-2,2", "--orbit", "0.5,0", "--flow",
                      "companion", "--horizon", "20", "--step", "0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("field_class=C_P2"), std::string::npos);
  EXPECT_NE(r.out.find("orbit status=horizon"), std::string::npos);
  const auto p = run_cli({"pseudo", "--field", "lifted:x", "--point", "0,1"});
  EXPECT_NE(p.out.find("class=euclidean"), std::string::npos) << p.out;
}

TEST(Cli, Errors) {
  // Missing required option: usage error.
  EXPECT_EQ(run_cli({"trace", "--map", data_path("k4.map"), "--dir", "1,0"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"bundle", "--map", data_path("k4.map"), "--cut", "1-2", "--mode", "bogus"}).code, 2);
  EXPECT_EQ(run_cli({"trace", "--map", data_path("k4.map"), "--start", "1", "--dir", "1,0"}).code, 2);

  // Domain errors: exit 1 with the message on stderr.
  const auto bad_mu = tmp("bad_mu.map");
  write(bad_mu, "v 1 0 0 7\nv 2 1 0 1\nv 3 0 1 1\ne 1 2\ne 2 3\ne 3 1\n");
  const auto r = run_cli({"classify", "--map", bad_mu, "--allow-low-valency"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error:"), std::string::npos);

  const auto syntax = tmp("syntax.map");
  write(syntax, "# header\nv 1 0 0 1\nq 1 2\n");
  const auto s = run_cli({"classify", "--map", syntax});
  EXPECT_EQ(s.code, 1);
  EXPECT_NE(s.err.find("line 3"), std::string::npos) << s.err;
  EXPECT_EQ(raised([&] { load_map(syntax); }), ErrorCode::SyntaxError);

  EXPECT_EQ(run_cli({"classify", "--map", tmp("does_not_exist.map")}).code, 1);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("enumerate"), std::string::npos);
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = MAPGEO_CLI_PATH;
  const auto quiet = " >/dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " classify --map " + data_path("k4.map") + quiet).c_str())), 0);
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " classify" + quiet).c_str())), 2);
}

TEST(Render, K4WithTraces) {
  const auto m = load_map(data_path("k4.map"));
  const std::vector<TraceResult> t{trace_mline(m, {2, -1}, {0, 1}), trace_mline(m, {-1, 1}, {1, 0.1})};
  const auto svg = render_svg(t, m);
  EXPECT_EQ(count(svg, "<line"), 6u);
  EXPECT_EQ(count(svg, "<polyline"), 2u);
  EXPECT_EQ(svg, render_svg(t, m));

  RenderSpec zero;
  zero.width = 0;
  EXPECT_EQ(raised([&] { render_svg(t, m, zero); }), ErrorCode::EmptyViewport);
  RenderSpec flat;
  flat.viewport = Rect{0, 0, 0, 1};
  EXPECT_EQ(raised([&] { render_svg(t, m, flat); }), ErrorCode::EmptyViewport);
  EXPECT_EQ(raised([] { render_svg({}, PlanarMap{}); }), ErrorCode::EmptyViewport);
}

TEST(Render, EmptyMapOneTrace) {
  const PlanarMap empty;
  const auto t = trace_mline(empty, {0, 0}, {1, 1});
  EXPECT_EQ(t.classification, TraceClass::OpenSimple);
  const auto svg = render_svg({t}, empty);
  EXPECT_EQ(count(svg, "<polyline"), 1u);
  EXPECT_EQ(count(svg, "<line"), 0u);
}

TEST(Render, Orbits) {
  const auto o = integrate_ode(ring_companion_field(1.0, RingBranch::Minus), {0.5, 0}, 1e-3, 10);
  const auto svg = render_orbits_svg({o});
  EXPECT_EQ(count(svg, "<polyline"), 1u);
  EXPECT_EQ(raised([] { render_orbits_svg({}); }), ErrorCode::EmptyViewport);
}

TEST(MapText, DumpRoundTrip) {
  for (const char* name : {"k4.map", "wheel.map", "prism.map", "ladder.map"}) {
    const auto m = load_map(data_path(name));
    const auto back = parse_map_file(dump_map(m));
    ASSERT_EQ(back.vertex_count(), m.vertex_count()) << name;
    ASSERT_EQ(back.edge_count(), m.edge_count());
    ASSERT_EQ(back.face_count(), m.face_count());
    for (std::size_t v = 0; v < m.vertex_count(); ++v) {
      EXPECT_EQ(back.vertex_at(v).id, m.vertex_at(v).id);
      EXPECT_EQ(back.vertex_at(v).mu, m.vertex_at(v).mu);
      EXPECT_EQ(back.vertex_at(v).position.x, m.vertex_at(v).position.x);
    }
    EXPECT_EQ(dump_map(back), dump_map(m));
  }
}

TEST(MapText, EdgeAndChainParsing) {
  EXPECT_EQ(parse_edge_list("# c\n1 2\n2 3 # tail\n\n").size(), 2u);
  EXPECT_EQ(raised([] { parse_edge_list("1 2 3\n"); }), ErrorCode::SyntaxError);
  const auto ch = parse_chain_line("chain elliptic 1 1 1 1 | 3.141592653589793");
  EXPECT_EQ(ch.kind, ChainKind::Elliptic);
  EXPECT_EQ(ch.c.size(), 2u);
  EXPECT_EQ(raised([] { parse_field_spec("ring:1,1"); }), ErrorCode::SyntaxError);
  EXPECT_EQ(raised([] { parse_field_spec("bogus:1"); }), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_field_spec("constant:3")(0, 0), 3.0);
}
