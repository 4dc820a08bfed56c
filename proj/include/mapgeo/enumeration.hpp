#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mapgeo/common.hpp"

namespace mapgeo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

struct GraphOptions {
  bool require_min_degree = true;  // degree ≥ 3 everywhere
};

/// Simple undirected graph on vertices 0..ν−1; `labels` keeps the input names.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  static SimpleGraph from_edges(const std::vector<std::pair<int, int>>& edges,
                                const GraphOptions& opt = {}) {
    std::vector<int> labels;
    for (const auto& [a, b] : edges) {
      labels.push_back(a);
      labels.push_back(b);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (const auto& [a, b] : edges) e.emplace_back(index[a], index[b]);
    SimpleGraph g = from_indexed(labels.size(), e, opt);
    g.labels_ = labels;
    return g;
  }

  static SimpleGraph from_indexed(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                  const GraphOptions& opt = {}) {
    SimpleGraph g;
    g.n_ = n;
    g.adj_.assign(n, std::vector<bool>(n, false));
    g.nbrs_.assign(n, {});
    g.labels_.resize(n);
    std::iota(g.labels_.begin(), g.labels_.end(), 0);
    for (const auto& [a, b] : edges) {
      if (a >= n || b >= n) fail(ErrorCode::UnknownVertex, "edge endpoint out of range");
      if (a == b) fail(ErrorCode::InvalidArgument, "loop at vertex " + std::to_string(a));
      if (g.adj_[a][b]) fail(ErrorCode::DuplicateEdge, "parallel edge " + std::to_string(a) + "-" + std::to_string(b));
      g.adj_[a][b] = g.adj_[b][a] = true;
      g.nbrs_[a].push_back(b);
      g.nbrs_[b].push_back(a);
      g.edges_.emplace_back(std::min(a, b), std::max(a, b));
    }
    for (auto& nb : g.nbrs_) std::sort(nb.begin(), nb.end());
    if (opt.require_min_degree) {
      for (std::size_t v = 0; v < n; ++v) {
        if (g.nbrs_[v].size() < 3) {
          fail(ErrorCode::LowValency, "vertex " + std::to_string(v) + " has degree " +
                                          std::to_string(g.nbrs_[v].size()) + " (< 3)");
        }
      }
    }
    return g;
  }

  std::size_t order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  std::size_t degree(std::size_t v) const { return nbrs_[v].size(); }
  bool adjacent(std::size_t a, std::size_t b) const { return adj_[a][b]; }
  const std::vector<std::size_t>& neighbours(std::size_t v) const { return nbrs_[v]; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<int>& labels() const { return labels_; }

  bool connected() const {
    if (n_ == 0) return true;
    std::vector<bool> seen(n_, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : nbrs_[v]) {
        if (!seen[w]) { seen[w] = true; ++count; stack.push_back(w); }
      }
    }
    return count == n_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<bool>> adj_;
  std::vector<std::vector<std::size_t>> nbrs_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<int> labels_;
};

/// Complete graph, cycle and path helpers for fixtures and demos.
inline SimpleGraph complete_graph(std::size_t n, const GraphOptions& opt = {}) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return SimpleGraph::from_indexed(n, e, opt);
}

inline SimpleGraph cycle_graph(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return SimpleGraph::from_indexed(n, e, GraphOptions{false});
}

inline SimpleGraph path_graph(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return SimpleGraph::from_indexed(n, e, GraphOptions{false});
}

inline constexpr std::size_t kMaxAutOrder = 10;
inline constexpr std::uint64_t kMaxRotationSystems = 10'000'000;

/// Number of adjacency-preserving vertex permutations (backtracking).
inline BigInt aut_order(const SimpleGraph& g) {
  const std::size_t n = g.order();
  if (n > kMaxAutOrder) fail(ErrorCode::TooLarge, "automorphism search limited to 10 vertices");
  std::vector<std::size_t> image(n);
  std::vector<bool> used(n, false);
  BigInt count = 0;
  auto extend = [&](auto&& self, std::size_t v) -> void {
    if (v == n) { ++count; return; }
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || g.degree(w) != g.degree(v)) continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u) ok = g.adjacent(u, v) == g.adjacent(image[u], w);
      if (!ok) continue;
      used[w] = true;
      image[v] = w;
      self(self, v + 1);
      used[w] = false;
    }
  };
  extend(extend, 0);
  return count;
}

/// β = ε − ν + 1.
inline long betti(const SimpleGraph& g) {
  if (!g.connected()) fail(ErrorCode::Disconnected, "Betti number needs a connected graph");
  return static_cast<long>(g.size()) - static_cast<long>(g.order()) + 1;
}

/// Π (ρ(v) − 1)!, vertices of degree 0 contributing 1.
inline BigInt rotation_system_count(const SimpleGraph& g) {
  BigInt total = 1;
  for (std::size_t v = 0; v < g.order(); ++v) {
    for (std::size_t k = 2; k + 1 <= g.degree(v); ++k) total *= k;
  }
  return total;
}

struct GenusPolynomial {
  std::vector<BigInt> coeffs;  // coeffs[k] = embeddings of genus k

  BigInt total() const {
    BigInt s = 0;
    for (const auto& c : coeffs) s += c;
    return s;
  }
  /// g′(1) = Σ k·g_k.
  BigInt derivative_at_one() const {
    BigInt s = 0;
    for (std::size_t k = 1; k < coeffs.size(); ++k) s += BigInt(k) * coeffs[k];
    return s;
  }
  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] == 0) continue;
      if (!out.empty()) out += " + ";
      const bool unit = coeffs[k] == 1 && k > 0;
      if (!unit) out += coeffs[k].str();
      if (k >= 1) out += "x";
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
  }
};

namespace detail {

// Faces of the rotation system given by per-vertex cyclic neighbour orders.
inline std::size_t count_faces(const SimpleGraph& g, const std::vector<std::vector<std::size_t>>& rot,
                               const std::vector<std::vector<std::size_t>>& pos_of,
                               std::vector<std::size_t>& dart_offset, std::vector<char>& seen) {
  // Dart (v, i) leaves v toward rot[v][i]; its successor in the face is
  // (w, position of v in rot[w] + 1).
  std::fill(seen.begin(), seen.end(), 0);
  std::size_t faces = 0;
  for (std::size_t v = 0; v < g.order(); ++v) {
    for (std::size_t i = 0; i < rot[v].size(); ++i) {
      if (seen[dart_offset[v] + i]) continue;
      ++faces;
      std::size_t cv = v, ci = i;
      while (!seen[dart_offset[cv] + ci]) {
        seen[dart_offset[cv] + ci] = 1;
        const std::size_t w = rot[cv][ci];
        const std::size_t back = pos_of[w][cv];
        ci = (back + 1) % rot[w].size();
        cv = w;
      }
    }
  }
  return faces;
}

}  // namespace detail

/// Genus distribution by enumerating every rotation system (smallest
/// neighbour fixed first at each vertex, the rest in lexicographic order).
inline GenusPolynomial genus_distribution(const SimpleGraph& g, unsigned threads = 1) {
  if (!g.connected()) fail(ErrorCode::Disconnected, "genus distribution needs a connected graph");
  const BigInt total_big = rotation_system_count(g);
  if (total_big > kMaxRotationSystems) {
    fail(ErrorCode::TooLarge, "more than 1e7 rotation systems (" + total_big.str() + ")");
  }
  const auto total = static_cast<std::uint64_t>(total_big);
  const std::size_t n = g.order();
  GenusPolynomial poly;
  if (g.size() == 0) {
    poly.coeffs = {BigInt(1)};
    return poly;
  }

  // Per vertex, every cyclic order as a neighbour list starting at the anchor.
  std::vector<std::vector<std::vector<std::size_t>>> choices(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> rest(g.neighbours(v).begin() + (g.degree(v) ? 1 : 0), g.neighbours(v).end());
    do {
      std::vector<std::size_t> order;
      if (g.degree(v)) order.push_back(g.neighbours(v).front());
      order.insert(order.end(), rest.begin(), rest.end());
      choices[v].push_back(std::move(order));
    } while (std::next_permutation(rest.begin(), rest.end()));
  }

  const long nu = static_cast<long>(n);
  const long eps = static_cast<long>(g.size());
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
  std::vector<std::vector<std::uint64_t>> tallies(workers);

  auto work = [&](unsigned id) {
    const std::uint64_t begin = total * id / workers;
    const std::uint64_t end = total * (id + 1) / workers;
    std::vector<std::size_t> digit(n, 0);
    std::uint64_t rem = begin;
    for (std::size_t v = n; v-- > 0;) {
      digit[v] = static_cast<std::size_t>(rem % choices[v].size());
      rem /= choices[v].size();
    }
    std::vector<std::vector<std::size_t>> rot(n);
    std::vector<std::vector<std::size_t>> pos_of(n, std::vector<std::size_t>(n, 0));
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offset[v + 1] = offset[v] + g.degree(v);
    std::vector<char> seen(offset[n], 0);
    auto load = [&](std::size_t v) {
      rot[v] = choices[v][digit[v]];
      for (std::size_t i = 0; i < rot[v].size(); ++i) pos_of[v][rot[v][i]] = i;
    };
    for (std::size_t v = 0; v < n; ++v) load(v);
    auto& tally = tallies[id];
    for (std::uint64_t it = begin; it < end; ++it) {
      const long faces = static_cast<long>(detail::count_faces(g, rot, pos_of, offset, seen));
      const long chi = nu - eps + faces;
      if (chi > 2 || (2 - chi) % 2 != 0) fail(ErrorCode::InvalidArgument, "internal: odd Euler characteristic");
      const auto genus = static_cast<std::size_t>((2 - chi) / 2);
      if (tally.size() <= genus) tally.resize(genus + 1, 0);
      ++tally[genus];
      // Odometer step, last vertex fastest.
      for (std::size_t v = n; v-- > 0;) {
        if (++digit[v] < choices[v].size()) { load(v); break; }
        digit[v] = 0;
        load(v);
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  for (const auto& tally : tallies) {
    if (poly.coeffs.size() < tally.size()) poly.coeffs.resize(tally.size(), BigInt(0));
    for (std::size_t k = 0; k < tally.size(); ++k) poly.coeffs[k] += tally[k];
  }
  return poly;
}

/// (3ⁿ·|M|, 3ⁿ·m·|M|).
inline std::pair<BigInt, BigInt> count_from_map_set(unsigned n, unsigned m, const BigInt& size) {
  const BigInt p = boost::multiprecision::pow(BigInt(3), n);
  return {p * size, p * m * size};
}

namespace detail {

inline Rational orientable_prefactor(const SimpleGraph& g, const BigInt& aut) {
  const BigInt p = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(g.order()));
  return Rational(p, 2 * aut);
}

inline BigInt two_pow_minus_one(long beta) {
  return (BigInt(1) << static_cast<unsigned>(beta)) - 1;
}

}  // namespace detail

/// 3^ν·Π(ρ−1)!/(2|Aut Γ|).
inline Rational n_orientable(const SimpleGraph& g) {
  return detail::orientable_prefactor(g, aut_order(g)) * Rational(rotation_system_count(g));
}

/// (2^β − 1)·n_orientable.
inline Rational n_nonorientable(const SimpleGraph& g) {
  return Rational(detail::two_pow_minus_one(betti(g))) * n_orientable(g);
}

inline Rational n_orientable_boundary(const SimpleGraph& g, const GenusPolynomial& poly) {
  const BigInt bracket = BigInt(betti(g) + 1) * rotation_system_count(g) - 2 * poly.derivative_at_one();
  return detail::orientable_prefactor(g, aut_order(g)) * Rational(bracket);
}

/// 3^ν/(2|Aut Γ|)·[(β+1)Π(ρ−1)! − 2g′(1)].
inline Rational n_orientable_boundary(const SimpleGraph& g, unsigned threads = 1) {
  return n_orientable_boundary(g, genus_distribution(g, threads));
}

inline Rational n_nonorientable_boundary(const SimpleGraph& g, unsigned threads = 1) {
  return Rational(detail::two_pow_minus_one(betti(g))) * n_orientable_boundary(g, threads);
}

struct EnumerationReport {
  std::size_t nu = 0;
  std::size_t eps = 0;
  long betti = 0;
  BigInt aut;
  GenusPolynomial genus;
  Rational n_O, n_N, n_O_b, n_N_b;
};

inline EnumerationReport enumerate(const SimpleGraph& g, unsigned threads = 1) {
  EnumerationReport r;
  r.nu = g.order();
  r.eps = g.size();
  r.betti = betti(g);
  r.aut = aut_order(g);
  r.genus = genus_distribution(g, threads);
  const Rational pre = detail::orientable_prefactor(g, r.aut);
  const BigInt rs = rotation_system_count(g);
  const Rational factor(detail::two_pow_minus_one(r.betti));
  r.n_O = pre * Rational(rs);
  r.n_N = factor * r.n_O;
  r.n_O_b = pre * Rational(BigInt(r.betti + 1) * rs - 2 * r.genus.derivative_at_one());
  r.n_N_b = factor * r.n_O_b;
  return r;
}

}  // namespace mapgeo
