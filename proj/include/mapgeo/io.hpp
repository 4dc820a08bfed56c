#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mapgeo/common.hpp"
#include "mapgeo/map_core.hpp"
#include "mapgeo/polygon.hpp"
#include "mapgeo/pseudo_plane.hpp"

namespace mapgeo {

namespace io_detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

[[noreturn]] inline void syntax(std::size_t line, const std::string& what) {
  fail(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace io_detail

inline bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

inline bool parse_int(std::string_view s, int& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct MapText {
  std::vector<Vertex> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<FaceIndex> boundary;
};

/// Reads the line format `v id x y mu`, `e id1 id2`, `boundary face`.
inline MapText parse_map_text(std::string_view text) {
  MapText out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto tok = io_detail::split_ws(io_detail::strip_comment(raw));
    if (tok.empty()) continue;
    if (tok[0] == "v") {
      Vertex v;
      if (tok.size() != 5 || !parse_int(tok[1], v.id) || !parse_double(tok[2], v.position.x) ||
          !parse_double(tok[3], v.position.y) || !parse_double(tok[4], v.mu)) {
        io_detail::syntax(line_no, "expected `v <id> <x> <y> <mu>`");
      }
      out.vertices.push_back(v);
    } else if (tok[0] == "e") {
      EdgeSpec e;
      if (tok.size() != 3 || !parse_int(tok[1], e.u) || !parse_int(tok[2], e.v)) {
        io_detail::syntax(line_no, "expected `e <id1> <id2>`");
      }
      out.edges.push_back(e);
    } else if (tok[0] == "boundary") {
      int f = 0;
      if (tok.size() != 2 || !parse_int(tok[1], f) || f < 0) io_detail::syntax(line_no, "expected `boundary <face-index>`");
      out.boundary.push_back(static_cast<FaceIndex>(f));
    } else {
      io_detail::syntax(line_no, "unknown record `" + tok[0] + "`");
    }
  }
  return out;
}

inline PlanarMap parse_map_file(std::string_view text, const BuildOptions& opt = {}) {
  const MapText mt = parse_map_text(text);
  PlanarMap m = build_map(mt.vertices, mt.edges, opt);
  if (!mt.boundary.empty()) m = remove_faces(m, mt.boundary);
  return m;
}

inline PlanarMap load_map(const std::string& path, const BuildOptions& opt = {}) {
  return parse_map_file(read_file(path), opt);
}

/// Canonical text form; parse_map_file reads it back to an equal map.
inline std::string dump_map(const PlanarMap& m) {
  std::string out = "# mapgeo map: " + std::to_string(m.vertex_count()) + " vertices, " +
                    std::to_string(m.edge_count()) + " edges, " + std::to_string(m.face_count()) + " faces\n";
  for (const auto& v : m.vertices()) {
    out += "v " + std::to_string(v.id) + " " + io_detail::fmt(v.position.x) + " " + io_detail::fmt(v.position.y) +
           " " + io_detail::fmt(v.mu) + "\n";
  }
  for (const auto& e : m.edges()) {
    out += "e " + std::to_string(m.vertex_at(e.u).id) + " " + std::to_string(m.vertex_at(e.v).id) + "\n";
  }
  for (FaceIndex f : m.boundary_faces()) out += "boundary " + std::to_string(f) + "\n";
  return out;
}

/// One `<u> <v>` pair per line; '#' starts a comment.
inline std::vector<std::pair<int, int>> parse_edge_list(std::string_view text) {
  std::vector<std::pair<int, int>> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto tok = io_detail::split_ws(io_detail::strip_comment(raw));
    if (tok.empty()) continue;
    int a = 0, b = 0;
    if (tok.size() != 2 || !parse_int(tok[0], a) || !parse_int(tok[1], b)) {
      io_detail::syntax(line_no, "expected `<u> <v>`");
    }
    out.emplace_back(a, b);
  }
  return out;
}

/// `chain <kind> a b c1 ... c_{p+1} | f1 ... fp`
inline SideChain parse_chain_line(std::string_view line) {
  const auto tok = io_detail::split_ws(io_detail::strip_comment(line));
  if (tok.size() < 2 || tok[0] != "chain") io_detail::syntax(1, "expected `chain <kind> ...`");
  SideChain ch;
  if (tok[1] == "elliptic") ch.kind = ChainKind::Elliptic;
  else if (tok[1] == "hyperbolic") ch.kind = ChainKind::Hyperbolic;
  else io_detail::syntax(1, "chain kind must be elliptic or hyperbolic");
  std::vector<double> lengths;
  std::size_t i = 2;
  for (; i < tok.size() && tok[i] != "|"; ++i) {
    double v = 0.0;
    if (!parse_double(tok[i], v)) io_detail::syntax(1, "bad length `" + tok[i] + "`");
    lengths.push_back(v);
  }
  if (i == tok.size()) io_detail::syntax(1, "missing `|` before the crossing values");
  for (++i; i < tok.size(); ++i) {
    double v = 0.0;
    if (!parse_double(tok[i], v)) io_detail::syntax(1, "bad angle `" + tok[i] + "`");
    ch.f.push_back(v);
  }
  if (lengths.size() < 4) io_detail::syntax(1, "need a, b and at least two segment lengths");
  ch.a = lengths[0];
  ch.b = lengths[1];
  ch.c.assign(lengths.begin() + 2, lengths.end());
  return ch;
}

/// Named height functions for lifted fields.
inline OmegaField::Fn named_height(const std::string& id) {
  if (id == "zero") return [](double, double) { return 0.0; };
  if (id == "x") return [](double x, double) { return x; };
  if (id == "y") return [](double, double y) { return y; };
  if (id == "neg-x") return [](double x, double) { return -x; };
  if (id == "paraboloid") return [](double x, double y) { return x * x + y * y; };
  if (id == "saddle") return [](double x, double y) { return x * x - y * y; };
  if (id == "cone") return [](double x, double y) { return std::hypot(x, y); };
  if (id == "wave") return [](double x, double y) { return std::sin(x) * std::cos(y); };
  fail(ErrorCode::InvalidArgument, "unknown height `" + id + "` (zero, x, y, neg-x, paraboloid, saddle, cone, wave)");
}

/// `grid xmin xmax ymin ymax nx ny` followed by nx·ny values, rows in y.
inline OmegaField parse_grid_field(std::string_view text) {
  std::vector<std::string> tok;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    for (auto& t : io_detail::split_ws(io_detail::strip_comment(raw))) tok.push_back(std::move(t));
  }
  if (tok.size() < 7 || tok[0] != "grid") io_detail::syntax(1, "expected `grid xmin xmax ymin ymax nx ny`");
  Rect r;
  int nx = 0, ny = 0;
  if (!parse_double(tok[1], r.xmin) || !parse_double(tok[2], r.xmax) || !parse_double(tok[3], r.ymin) ||
      !parse_double(tok[4], r.ymax) || !parse_int(tok[5], nx) || !parse_int(tok[6], ny) || nx < 2 || ny < 2) {
    io_detail::syntax(1, "bad grid header");
  }
  std::vector<double> values;
  for (std::size_t i = 7; i < tok.size(); ++i) {
    double v = 0.0;
    if (!parse_double(tok[i], v)) io_detail::syntax(1, "bad grid value `" + tok[i] + "`");
    values.push_back(v);
  }
  return OmegaField::grid(r, static_cast<std::size_t>(nx), static_cast<std::size_t>(ny), std::move(values));
}

/// `constant:ETA`, `ring:RHO0,THETA0,{+,-}`, `lifted:ID`, `grid:FILE`.
inline OmegaField parse_field_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) fail(ErrorCode::SyntaxError, "field spec needs `kind:args`");
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  if (kind == "constant") {
    double eta = 0.0;
    if (!parse_double(args, eta)) fail(ErrorCode::SyntaxError, "bad constant `" + args + "`");
    return OmegaField::constant(eta);
  }
  if (kind == "ring") {
    std::vector<std::string> parts;
    std::stringstream ss(args);
    for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
    double rho0 = 0.0, theta0 = 0.0;
    if (parts.size() != 3 || !parse_double(parts[0], rho0) || !parse_double(parts[1], theta0) ||
        (parts[2] != "+" && parts[2] != "-")) {
      fail(ErrorCode::SyntaxError, "expected ring:RHO0,THETA0,{+,-}");
    }
    return OmegaField::radial_ring(rho0, theta0, parts[2] == "+" ? RingBranch::Plus : RingBranch::Minus);
  }
  if (kind == "lifted") return OmegaField::lifted(named_height(args), args);
  if (kind == "grid") return parse_grid_field(read_file(args));
  fail(ErrorCode::SyntaxError, "unknown field kind `" + kind + "`");
}

}  // namespace mapgeo
