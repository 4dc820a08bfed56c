#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mapgeo/bundles.hpp"
#include "mapgeo/enumeration.hpp"
#include "mapgeo/io.hpp"
#include "mapgeo/map_core.hpp"
#include "mapgeo/mline.hpp"
#include "mapgeo/polygon.hpp"
#include "mapgeo/pseudo_plane.hpp"
#include "mapgeo/svg.hpp"

namespace mapgeo::cli {

/// Malformed flag values; reported with exit code 2 like parse errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::vector<double> parse_list(const std::string& s, std::size_t n, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) {
    double v = 0.0;
    if (!parse_double(part, v)) throw UsageError(std::string(flag) + ": bad number `" + part + "`");
    out.push_back(v);
  }
  if (n && out.size() != n) {
    throw UsageError(std::string(flag) + ": expected " + std::to_string(n) + " comma-separated numbers");
  }
  return out;
}

inline Point2 parse_point(const std::string& s, const char* flag) {
  const auto v = parse_list(s, 2, flag);
  return {v[0], v[1]};
}

inline Rect parse_rect(const std::string& s, const char* flag) {
  const auto v = parse_list(s, 4, flag);
  return {v[0], v[1], v[2], v[3]};
}

inline std::vector<std::pair<VertexId, VertexId>> parse_cut(const std::string& s) {
  std::vector<std::pair<VertexId, VertexId>> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    auto sep = item.find(':');
    if (sep == std::string::npos) sep = item.find('-', 1);
    int a = 0, b = 0;
    if (sep == std::string::npos || !parse_int(item.substr(0, sep), a) || !parse_int(item.substr(sep + 1), b)) {
      throw UsageError("--cut: expected edges as u-v or u:v, got `" + item + "`");
    }
    out.emplace_back(a, b);
  }
  if (out.empty()) throw UsageError("--cut: empty edge list");
  return out;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  f << text;
}

template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline std::string trace_summary(const TraceResult& t) {
  double sum_f = 0.0;
  for (const auto& c : t.crossings) sum_f += c.f;
  std::string out = "classification=" + std::string(to_string(t.classification)) +
                    " crossings=" + std::to_string(t.crossings.size()) + " vertex_hits=" +
                    std::to_string(t.vertex_hits) + " sum_f=" + num(sum_f) + " curvature=" + num(curvature(t)) +
                    " length=" + num(t.total_length) + (t.unbounded() ? "+inf" : "");
  if (!t.crossings.empty()) {
    try {
      out += " predicted=" + std::string(to_string(predict_class(t.f_values()).kind));
    } catch (const Error&) {
      out += " predicted=n/a";
    }
  }
  return out;
}

inline std::string trace_csv(const std::vector<TraceResult>& traces) {
  std::string out = "ray,x0,y0,x1,y1\n";
  for (std::size_t r = 0; r < traces.size(); ++r) {
    for (const auto& [a, b] : traces[r].segments()) {
      out += std::to_string(r) + "," + num(a.x) + "," + num(a.y) + "," + num(b.x) + "," + num(b.y) + "\n";
    }
  }
  return out;
}

inline VectorField named_flow(const std::string& name, const OmegaField& field) {
  if (name == "companion") {
    if (field.kind() != OmegaField::Kind::RadialRing) throw UsageError("--flow companion needs a ring field");
    return ring_companion_field(field.rho0(), field.branch());
  }
  if (name == "rotation") return [](Point2 p) { return Vec2{-p.y, p.x}; };
  if (name == "radial") return [](Point2 p) { return Vec2{p.x, p.y}; };
  if (name == "saddle") return [](Point2 p) { return Vec2{p.x, -p.y}; };
  throw UsageError("--flow: unknown flow `" + name + "` (companion, rotation, radial, saddle)");
}

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success, 1 domain error, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"mapgeo: map geometries, m-lines and pseudo-planes", "mapgeo"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "worker threads for enumeration and multi-ray tracing")->check(CLI::PositiveNumber);

  // classify
  auto* classify = app.add_subcommand("classify", "classify vertices and edges of a map, census identities");
  std::string map_path;
  bool low_valency = false;
  classify->add_option("--map", map_path, "map file")->required();
  classify->add_flag("--allow-low-valency", low_valency, "accept vertices of valency < 3");

  // trace
  auto* trace = app.add_subcommand("trace", "trace m-lines through a map");
  std::string start_s, dir_s, svg_path, csv_path;
  std::size_t max_crossings = 10000, rays = 1;
  double spacing = 0.1;
  bool one_way = false;
  trace->add_option("--map", map_path, "map file")->required();
  trace->add_option("--start", start_s, "start point x,y")->required();
  trace->add_option("--dir", dir_s, "direction dx,dy")->required();
  trace->add_option("--max-crossings", max_crossings, "crossing budget per direction");
  trace->add_flag("--one-way", one_way, "trace forward only");
  trace->add_option("--rays", rays, "number of parallel rays")->check(CLI::PositiveNumber);
  trace->add_option("--spacing", spacing, "offset between parallel rays");
  trace->add_option("--svg", svg_path, "write an SVG drawing");
  trace->add_option("--csv", csv_path, "write segments as CSV");
  trace->add_flag("--allow-low-valency", low_valency, "accept vertices of valency < 3");

  // curvature
  auto* curv = app.add_subcommand("curvature", "edge curvatures and the total-curvature report");
  std::size_t steps = 64;
  curv->add_option("--map", map_path, "map file")->required();
  curv->add_option("--steps", steps, "quadrature intervals")->check(CLI::PositiveNumber);
  curv->add_flag("--allow-low-valency", low_valency, "accept vertices of valency < 3");

  // area
  auto* area = app.add_subcommand("area", "area of a triangle with a bent side");
  std::vector<std::string> chains;
  std::string chain_file;
  area->add_option("--chain", chains, "chain <kind> a b c1 .. c_{p+1} | f1 .. fp");
  area->add_option("--file", chain_file, "file with one chain per line");

  // bundle
  auto* bundle = app.add_subcommand("bundle", "parallel-bundle conditions for a cut");
  std::string cut_s, mode = "general", sign_s = "orientation";
  double x_at = 0.0;
  std::size_t simulate = 0;
  bundle->add_option("--map", map_path, "map file")->required();
  bundle->add_option("--cut", cut_s, "cut edges u-v,u-v,... left to right")->required();
  bundle->add_option("--mode", mode, "general|linear|sufficient|exit|initial")
      ->check(CLI::IsMember({"general", "linear", "sufficient", "exit", "initial"}));
  bundle->add_option("--x", x_at, "common offset for --mode initial");
  bundle->add_option("--sign", sign_s, "orientation|classification")
      ->check(CLI::IsMember({"orientation", "classification"}));
  bundle->add_option("--simulate", simulate, "also trace N parallel rays as a geometric check");
  bundle->add_flag("--allow-low-valency", low_valency, "accept vertices of valency < 3");

  // enumerate
  auto* enumerate_cmd = app.add_subcommand("enumerate", "count non-equivalent map geometries of a graph");
  std::string graph_path, graph_name;
  bool low_degree = false;
  enumerate_cmd->add_option("--graph", graph_path, "edge-list file")->required();
  enumerate_cmd->add_option("--name", graph_name, "graph column value (default: file stem)");
  enumerate_cmd->add_flag("--allow-low-degree", low_degree, "accept vertices of degree < 3");

  // pseudo
  auto* pseudo = app.add_subcommand("pseudo", "pseudo-plane fields and integral curves");
  std::string field_s, rect_s = "-1,1,-1,1", point_s, orbit_s, flow = "rotation";
  std::size_t samples = 32;
  double step = 1e-3, horizon = 10.0;
  pseudo->add_option("--field", field_s, "constant:ETA | ring:RHO0,THETA0,{+,-} | lifted:ID | grid:FILE")->required();
  pseudo->add_option("--rect", rect_s, "classification window xmin,xmax,ymin,ymax");
  pseudo->add_option("--samples", samples, "lattice size per axis");
  pseudo->add_option("--point", point_s, "classify one point x,y");
  pseudo->add_option("--orbit", orbit_s, "integrate an orbit from x0,y0");
  pseudo->add_option("--flow", flow, "companion|rotation|radial|saddle");
  pseudo->add_option("--step", step, "RK4 step")->check(CLI::PositiveNumber);
  pseudo->add_option("--horizon", horizon, "integration time");
  pseudo->add_option("--csv", csv_path, "write the orbit as CSV");
  pseudo->add_option("--svg", svg_path, "write a phase portrait");

  // render
  auto* render = app.add_subcommand("render", "draw a map with traced m-lines as SVG");
  std::vector<std::string> trace_specs;
  int width = 800, height = 800;
  render->add_option("--map", map_path, "map file")->required();
  render->add_option("--trace", trace_specs, "x,y,dx,dy (repeatable)");
  render->add_option("--svg", svg_path, "output file")->required();
  render->add_option("--width", width, "canvas width");
  render->add_option("--height", height, "canvas height");
  render->add_flag("--allow-low-valency", low_valency, "accept vertices of valency < 3");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }

  try {
    const BuildOptions bopt{!low_valency};

    if (*classify) {
      const PlanarMap m = load_map(map_path, bopt);
      for (std::size_t v = 0; v < m.vertex_count(); ++v) {
        out << "vertex " << m.vertex_at(v).id << " rho=" << m.valency_at(v) << " rho_mu=" << num(m.rho_mu_at(v))
            << " " << to_string(classify_vertex_at(m, v)) << "\n";
      }
      for (EdgeIndex e = 0; e < m.edge_count(); ++e) {
        out << "edge " << m.vertex_at(m.edge(e).u).id << "-" << m.vertex_at(m.edge(e).v).id << " "
            << to_string(classify_edge(m, e)) << "\n";
      }
      const CensusReport c = census(m);
      out << "census elliptic=" << c.elliptic << " euclidean=" << c.euclidean << " hyperbolic=" << c.hyperbolic
          << " edges=" << c.edges << " faces=" << c.faces;
      for (std::size_t k = 0; k < 6; ++k) out << " CE" << k + 1 << "=" << c.edge_classes[k];
      out << "\n";
      out << "degree_identity=" << (c.degree_identity ? "true" : "false")
          << " count_identity=" << (c.count_identity ? "true" : "false") << "\n";
      out << "infinite_noneuclidean=" << (has_infinite_noneuclidean(m) ? "true" : "false") << "\n";
      return 0;
    }

    if (*trace) {
      const PlanarMap m = load_map(map_path, bopt);
      const Point2 start = parse_point(start_s, "--start");
      const Point2 d = parse_point(dir_s, "--dir");
      TraceConfig cfg;
      cfg.max_crossings = max_crossings;
      cfg.both_directions = !one_way;
      const Vec2 dir = norm(d) > 0.0 ? normalized(d) : d;
      const Vec2 perp{-dir.y, dir.x};
      std::vector<TraceResult> results(rays);
      std::vector<std::string> errors(rays);
      parallel_for(rays, threads, [&](std::size_t i) {
        const double off = (static_cast<double>(i) - 0.5 * static_cast<double>(rays - 1)) * spacing;
        try {
          results[i] = trace_mline(m, start + off * perp, d, cfg);
        } catch (const Error& e) {
          errors[i] = e.what();
        }
      });
      for (const auto& e : errors) {
        if (!e.empty()) {
          err << "error: " << e << "\n";
          return 1;
        }
      }
      for (std::size_t i = 0; i < rays; ++i) {
        out << (rays > 1 ? "ray " + std::to_string(i) + ": " : "") << trace_summary(results[i]) << "\n";
      }
      if (!csv_path.empty()) write_file(csv_path, trace_csv(results));
      if (!svg_path.empty()) write_file(svg_path, render_svg(results, m));
      return 0;
    }

    if (*curv) {
      const PlanarMap m = load_map(map_path, bopt);
      for (EdgeIndex e = 0; e < m.edge_count(); ++e) {
        out << "edge " << m.vertex_at(m.edge(e).u).id << "-" << m.vertex_at(m.edge(e).v).id
            << " curvature=" << num(edge_curvature(m, e, steps)) << "\n";
      }
      const auto r = map_total_curvature(m, steps);
      out << "total computed=" << num(r.computed) << " claimed=" << num(r.claimed)
          << " difference=" << num(r.difference) << " edge_length_sum=" << num(r.total_length) << "\n";
      return 0;
    }

    if (*area) {
      std::vector<std::string> lines = chains;
      if (!chain_file.empty()) {
        std::stringstream ss(read_file(chain_file));
        for (std::string line; std::getline(ss, line);) {
          const auto tok = line.substr(0, line.find('#'));
          if (tok.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
        }
      }
      if (lines.empty()) throw UsageError("area: give --chain or --file");
      for (const auto& line : lines) {
        const auto d = chain_area_detail(parse_chain_line(line));
        out << "area=" << num(d.area) << " AB=" << num(d.ab) << " base=" << num(d.base_area)
            << " fan=" << num(d.chain_area) << "\n";
      }
      return 0;
    }

    if (*bundle) {
      const PlanarMap m = load_map(map_path, bopt);
      const Cut cut = make_cut(m, parse_cut(cut_s));
      const SignRule rule = sign_s == "classification" ? SignRule::Classification : SignRule::Orientation;
      auto verdict_line = [&](const BundleVerdict& v) {
        std::string s = v.holds ? "true" : "false";
        if (!v.holds) {
          s += " failing_prefix=" + std::to_string(*v.prefix) + " value=" + num(v.value);
          if (v.x) s += " x=" + num(*v.x);
        }
        return s;
      };
      if (mode == "general") out << "bundle " << verdict_line(is_parallel_bundle(cut, rule)) << "\n";
      else if (mode == "linear") out << "linear " << verdict_line(linear_bundle_check(cut)) << "\n";
      else if (mode == "sufficient") out << "sufficient " << (sufficient_per_edge(cut) ? "true" : "false") << "\n";
      else if (mode == "exit") out << "exits_parallel " << (exits_parallel(cut, rule) ? "true" : "false") << "\n";
      else out << "parallel_to_initial " << (parallel_to_initial(cut, x_at, rule) ? "true" : "false") << "\n";
      if (simulate > 0) {
        SimulationConfig sc;
        sc.rays = std::max<std::size_t>(simulate, 2);
        const auto sim = simulate_bundle(cut, sc);
        out << "simulated " << (sim.parallel ? "true" : "false");
        if (sim.prefix) out << " failing_prefix=" << *sim.prefix;
        out << "\n";
      }
      return 0;
    }

    if (*enumerate_cmd) {
      const auto edges = parse_edge_list(read_file(graph_path));
      const SimpleGraph g = SimpleGraph::from_edges(edges, GraphOptions{!low_degree});
      std::string name = graph_name;
      if (name.empty()) {
        name = graph_path.substr(graph_path.find_last_of('/') + 1);
        name = name.substr(0, name.find('.'));
      }
      const auto r = mapgeo::enumerate(g, threads);
      out << "graph,nu,eps,betti,aut,genus_poly,n_O,n_N,n_O_b,n_N_b\n";
      out << name << "," << r.nu << "," << r.eps << "," << r.betti << "," << r.aut.str() << ","
          << r.genus.to_string() << "," << to_string(r.n_O) << "," << to_string(r.n_N) << ","
          << to_string(r.n_O_b) << "," << to_string(r.n_N_b) << "\n";
      return 0;
    }

    if (*pseudo) {
      const OmegaField field = parse_field_spec(field_s);
      const Rect r = parse_rect(rect_s, "--rect");
      const auto census = classify_field_detail(field, r, samples);
      out << "field_class=" << to_string(census.cls) << " elliptic=" << census.elliptic
          << " euclidean=" << census.euclidean << " hyperbolic=" << census.hyperbolic
          << " skipped=" << census.skipped << "\n";
      if (!point_s.empty()) {
        const Point2 p = parse_point(point_s, "--point");
        out << "point omega=" << num(field(p)) << " class=" << to_string(classify_point_p(field, p)) << "\n";
      }
      if (!orbit_s.empty()) {
        const Orbit orb = integrate_ode(named_flow(flow, field), parse_point(orbit_s, "--orbit"), step, horizon);
        const Point2 last = orb.points.back();
        out << "orbit status=" << to_string(orb.status) << " steps=" << orb.points.size() - 1
            << " end=" << num(last.x) << "," << num(last.y) << " radius=" << num(std::hypot(last.x, last.y)) << "\n";
        if (!csv_path.empty()) {
          std::string csv = "t,x,y\n";
          for (std::size_t i = 0; i < orb.points.size(); ++i) {
            csv += num(orb.t[i]) + "," + num(orb.points[i].x) + "," + num(orb.points[i].y) + "\n";
          }
          write_file(csv_path, csv);
        }
        if (!svg_path.empty()) write_file(svg_path, render_orbits_svg({orb}));
      }
      return 0;
    }

    if (*render) {
      const PlanarMap m = load_map(map_path, bopt);
      std::vector<TraceResult> results(trace_specs.size());
      for (std::size_t i = 0; i < trace_specs.size(); ++i) {
        const auto v = parse_list(trace_specs[i], 4, "--trace");
        results[i] = trace_mline(m, {v[0], v[1]}, {v[2], v[3]});
      }
      RenderSpec spec;
      spec.width = width;
      spec.height = height;
      write_file(svg_path, render_svg(results, m, spec));
      out << "wrote " << svg_path << " (" << m.edge_count() << " edges, " << results.size() << " traces)\n";
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace mapgeo::cli
