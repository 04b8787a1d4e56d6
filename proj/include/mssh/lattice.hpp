#pragma once

// The modified-SSH chain as an explicit directed graph.
//
// Diamonds are laid out a_{-M}, b_{-M}, a_{-M+1}, ..., b_M. Every diamond has
// a left and a right three-port; port 0 faces the neighbouring diamond (or the
// chain end), port 1 carries the phase-shifted internal edge and port 2 the
// plain internal edge. Consecutive diamonds are joined by an external edge,
// and the dangling port 0 at each chain end feeds a terminal edge that
// returns to the same port with a mirror phase of -1.
//
// Each directed edge belongs to the diamond it points into; internal edges
// belong to their own diamond.

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mssh/errors.hpp"
#include "mssh/multiport.hpp"

namespace mssh {

enum class Subsite : int { a = 0, b = 1 };
enum class Direction : int { left = 0, right = 1 };
enum class EdgeKind : int { internal, external, terminal };

inline const char* to_string(Subsite s) { return s == Subsite::a ? "a" : "b"; }
inline const char* to_string(Direction d) { return d == Direction::left ? "left" : "right"; }

struct PhaseRegion {
  std::optional<int> from;  // unbounded below when empty
  std::optional<int> to;    // unbounded above when empty
  double phi_a = 0.0;
  double phi_b = 0.0;

  bool contains(int m) const { return (!from || m >= *from) && (!to || m <= *to); }
};

struct PhaseProfile {
  std::vector<PhaseRegion> regions;

  static PhaseProfile uniform(double phi_a, double phi_b) { return {{PhaseRegion{{}, {}, phi_a, phi_b}}}; }

  /// Two regions: cells m <= split use `left`, cells m > split use `right`.
  static PhaseProfile interface(int split, std::pair<double, double> left, std::pair<double, double> right) {
    return {{PhaseRegion{{}, split, left.first, left.second}, PhaseRegion{split + 1, {}, right.first, right.second}}};
  }

  /// Throws ConfigError unless the regions are ordered, disjoint, finite and
  /// cover [-half_length, half_length].
  void validate(int half_length) const {
    if (regions.empty()) throw ConfigError("regions", "at least one region is required");
    long long next = -half_length;
    for (std::size_t i = 0; i < regions.size(); ++i) {
      const auto& r = regions[i];
      const std::string path = "regions[" + std::to_string(i) + "]";
      if (!std::isfinite(r.phi_a)) throw ConfigError(path + ".phi_a", "must be finite");
      if (!std::isfinite(r.phi_b)) throw ConfigError(path + ".phi_b", "must be finite");
      if (r.from && r.to && *r.from > *r.to) throw ConfigError(path, "'from' exceeds 'to'");
      const long long lo = r.from ? std::max<long long>(*r.from, -half_length) : -half_length;
      const long long hi = r.to ? std::min<long long>(*r.to, half_length) : half_length;
      if (i > 0 && !r.from) throw ConfigError(path + ".from", "only the first region may be unbounded below");
      if (i + 1 < regions.size() && !r.to) throw ConfigError(path + ".to", "only the last region may be unbounded above");
      if (i > 0 && *r.from != *regions[i - 1].to + 1) {
        throw ConfigError(path + ".from", "regions must be contiguous, ordered and disjoint");
      }
      if (lo > hi) continue;
      if (lo != next) throw ConfigError(path, "cells " + std::to_string(next) + ".." + std::to_string(lo - 1) + " are not covered");
      next = hi + 1;
    }
    if (next != half_length + 1) {
      throw ConfigError("regions", "cells " + std::to_string(next) + ".." + std::to_string(half_length) + " are not covered");
    }
  }

  std::pair<double, double> phases_at(int m) const {
    for (const auto& r : regions) {
      if (r.contains(m)) return {r.phi_a, r.phi_b};
    }
    throw ConfigError("regions", "cell " + std::to_string(m) + " is not covered");
  }
};

/// Spatial reflection m -> -m. Under reflection subsite a of cell m becomes
/// subsite b of cell -m, so the phases swap.
inline PhaseProfile mirrored(const PhaseProfile& p) {
  PhaseProfile out;
  for (auto it = p.regions.rbegin(); it != p.regions.rend(); ++it) {
    PhaseRegion r;
    if (it->to) r.from = -*it->to;
    if (it->from) r.to = -*it->from;
    r.phi_a = it->phi_b;
    r.phi_b = it->phi_a;
    out.regions.push_back(r);
  }
  return out;
}

struct LatticeSpec {
  int half_length = 1;
  PhaseProfile profile = PhaseProfile::uniform(0.0, 0.0);
  double theta = kImaginaryTheta;
  int internal_length = 2;
  int external_length = 3;

  int cell_count() const { return 2 * half_length + 1; }
};

struct DirectedEdge {
  int tail_vertex = -1;
  int tail_port = -1;
  int head_vertex = -1;
  int head_port = -1;
  int length = 1;      // sub-steps
  cplx phase{1.0};     // applied on arrival at the head
  int cell = 0;
  Subsite subsite = Subsite::a;
  Direction orientation = Direction::right;
  EdgeKind kind = EdgeKind::internal;
  int offset = 0;      // first slot in the state vector
};

struct Vertex {
  int diamond = -1;
  bool is_left = true;
  std::array<int, 3> out_edge{-1, -1, -1};  // port -> directed edge leaving through it
};

struct Diamond {
  int cell = 0;
  Subsite subsite = Subsite::a;
  double phi = 0.0;
  int left_vertex = -1;
  int right_vertex = -1;
};

struct LatticeGraph {
  int half_length = 0;
  Eigen::Matrix3cd vertex_matrix;
  std::vector<Diamond> diamonds;
  std::vector<Vertex> vertices;
  std::vector<DirectedEdge> edges;
  int dimension = 0;  // total slots over all directed edges

  int cell_count() const { return 2 * half_length + 1; }

  int diamond_index(int cell, Subsite s) const {
    if (cell < -half_length || cell > half_length) {
      throw ConfigError("cell", "cell " + std::to_string(cell) + " outside [-" + std::to_string(half_length) + ", " +
                                    std::to_string(half_length) + "]");
    }
    return 2 * (cell + half_length) + static_cast<int>(s);
  }

  /// Directed edge entering the given diamond from outside, travelling in `d`.
  int entering_edge(int cell, Subsite s, Direction d) const {
    const Diamond& dm = diamonds[diamond_index(cell, s)];
    const int v = d == Direction::right ? dm.left_vertex : dm.right_vertex;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].head_vertex == v && edges[e].head_port == port_a) return static_cast<int>(e);
    }
    throw InvariantViolation("diamond has no external input edge");
  }
};

namespace detail {

inline int add_edge(LatticeGraph& g, DirectedEdge e) {
  e.offset = g.dimension;
  g.dimension += e.length;
  g.edges.push_back(e);
  const int id = static_cast<int>(g.edges.size()) - 1;
  g.vertices[e.tail_vertex].out_edge[e.tail_port] = id;
  return id;
}

}  // namespace detail

inline LatticeGraph build_lattice(const LatticeSpec& spec) {
  if (spec.half_length < 1) throw ConfigError("half_length", "must be >= 1");
  if (spec.internal_length < 1) throw ConfigError("edge_lengths.internal", "must be >= 1");
  if (spec.external_length < 1) throw ConfigError("edge_lengths.external", "must be >= 1");
  if (!std::isfinite(spec.theta)) throw ConfigError("theta", "must be finite");
  spec.profile.validate(spec.half_length);

  LatticeGraph g;
  g.half_length = spec.half_length;
  g.vertex_matrix = vertex_unitary(spec.theta).matrix;
  const int n_diamonds = 2 * spec.cell_count();
  g.diamonds.reserve(n_diamonds);
  g.vertices.resize(2 * n_diamonds);

  for (int m = -spec.half_length; m <= spec.half_length; ++m) {
    const auto [phi_a, phi_b] = spec.profile.phases_at(m);
    for (Subsite s : {Subsite::a, Subsite::b}) {
      const int d = static_cast<int>(g.diamonds.size());
      Diamond dm{m, s, s == Subsite::a ? phi_a : phi_b, 2 * d, 2 * d + 1};
      g.vertices[dm.left_vertex] = Vertex{d, true, {-1, -1, -1}};
      g.vertices[dm.right_vertex] = Vertex{d, false, {-1, -1, -1}};
      g.diamonds.push_back(dm);
    }
  }

  for (const Diamond& dm : g.diamonds) {
    const cplx shift = std::exp(I * dm.phi);
    for (int port : {port_b, port_c}) {
      const cplx phase = port == port_b ? shift : cplx{1.0};
      detail::add_edge(g, {dm.left_vertex, port, dm.right_vertex, port, spec.internal_length, phase, dm.cell,
                           dm.subsite, Direction::right, EdgeKind::internal});
      detail::add_edge(g, {dm.right_vertex, port, dm.left_vertex, port, spec.internal_length, phase, dm.cell,
                           dm.subsite, Direction::left, EdgeKind::internal});
    }
  }

  for (int d = 0; d + 1 < n_diamonds; ++d) {
    const Diamond& lhs = g.diamonds[d];
    const Diamond& rhs = g.diamonds[d + 1];
    detail::add_edge(g, {lhs.right_vertex, port_a, rhs.left_vertex, port_a, spec.external_length, cplx{1.0}, rhs.cell,
                         rhs.subsite, Direction::right, EdgeKind::external});
    detail::add_edge(g, {rhs.left_vertex, port_a, lhs.right_vertex, port_a, spec.external_length, cplx{1.0}, lhs.cell,
                         lhs.subsite, Direction::left, EdgeKind::external});
  }

  // Mirror terminations: out of port 0 and straight back in with phase -1.
  const Diamond& first = g.diamonds.front();
  const Diamond& last = g.diamonds.back();
  detail::add_edge(g, {first.left_vertex, port_a, first.left_vertex, port_a, spec.external_length, cplx{-1.0},
                       first.cell, first.subsite, Direction::right, EdgeKind::terminal});
  detail::add_edge(g, {last.right_vertex, port_a, last.right_vertex, port_a, spec.external_length, cplx{-1.0},
                       last.cell, last.subsite, Direction::left, EdgeKind::terminal});
  return g;
}

struct AuditReport {
  int vertex_count = 0;
  int diamond_count = 0;
  int cell_count = 0;
  int directed_edge_count = 0;
  int internal_undirected = 0;
  int external_undirected = 0;
  int terminal_edges = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Structural audit: port wiring, degree 3 everywhere, reverse partners for
/// every non-terminal edge, linear chain order, and the cell/subsite
/// partition of edges.
inline AuditReport audit_graph(const LatticeGraph& g) {
  AuditReport rep;
  rep.vertex_count = static_cast<int>(g.vertices.size());
  rep.diamond_count = static_cast<int>(g.diamonds.size());
  rep.cell_count = g.cell_count();
  rep.directed_edge_count = static_cast<int>(g.edges.size());
  auto violation = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };

  const int n_edges = rep.directed_edge_count;
  std::vector<std::array<int, 3>> incoming(g.vertices.size(), {0, 0, 0});
  for (int e = 0; e < n_edges; ++e) {
    const auto& de = g.edges[e];
    if (de.head_vertex < 0 || de.head_vertex >= rep.vertex_count || de.head_port < 0 || de.head_port > 2) {
      violation("edge " + std::to_string(e) + " has an invalid head");
      continue;
    }
    ++incoming[de.head_vertex][de.head_port];
    if (de.length < 1) violation("edge " + std::to_string(e) + " has non-positive length");
  }

  for (int v = 0; v < rep.vertex_count; ++v) {
    int degree = 0;
    for (int p = 0; p < 3; ++p) {
      const int e = g.vertices[v].out_edge[p];
      if (e < 0 || e >= n_edges) {
        violation("vertex " + std::to_string(v) + " port " + std::to_string(p) + " has no outgoing edge");
        continue;
      }
      if (g.edges[e].tail_vertex != v || g.edges[e].tail_port != p) {
        violation("vertex " + std::to_string(v) + " port " + std::to_string(p) + " is wired to a foreign edge");
        continue;
      }
      if (incoming[v][p] != 1) {
        violation("vertex " + std::to_string(v) + " port " + std::to_string(p) + " has " +
                  std::to_string(incoming[v][p]) + " incoming edges");
        continue;
      }
      ++degree;
    }
    if (degree != 3) violation("vertex " + std::to_string(v) + " has degree " + std::to_string(degree));
  }

  std::map<std::array<int, 4>, int> by_ends;
  for (int e = 0; e < n_edges; ++e) {
    const auto& de = g.edges[e];
    by_ends[{de.tail_vertex, de.tail_port, de.head_vertex, de.head_port}] = e;
  }
  for (int e = 0; e < n_edges; ++e) {
    const auto& de = g.edges[e];
    if (de.kind == EdgeKind::terminal) {
      ++rep.terminal_edges;
      if (de.tail_vertex != de.head_vertex || de.tail_port != de.head_port) {
        violation("terminal edge " + std::to_string(e) + " does not return to its own port");
      }
      continue;
    }
    auto partner = by_ends.find({de.head_vertex, de.head_port, de.tail_vertex, de.tail_port});
    if (partner == by_ends.end()) {
      violation("edge " + std::to_string(e) + " has no reverse partner");
      continue;
    }
    if (partner->second > e) {
      if (de.kind == EdgeKind::internal) ++rep.internal_undirected;
      else ++rep.external_undirected;
    }
  }

  const int n_diamonds = rep.diamond_count;
  if (n_diamonds != 2 * rep.cell_count) violation("expected two diamonds per cell");
  if (rep.vertex_count != 4 * rep.cell_count) violation("expected four three-ports per cell");
  if (rep.terminal_edges != 2) violation("chain must have exactly two terminated ends");
  for (int d = 0; d < n_diamonds; ++d) {
    const Diamond& dm = g.diamonds[d];
    if (dm.cell != -g.half_length + d / 2 || static_cast<int>(dm.subsite) != d % 2) {
      violation("diamond " + std::to_string(d) + " is out of chain order");
    }
  }
  for (int e = 0; e < n_edges; ++e) {
    const auto& de = g.edges[e];
    if (de.kind != EdgeKind::external) continue;
    const int dt = g.vertices[de.tail_vertex].diamond;
    const int dh = g.vertices[de.head_vertex].diamond;
    if (std::abs(dt - dh) != 1) violation("external edge " + std::to_string(e) + " skips a diamond");
  }

  // Partition: every slot is owned by exactly one diamond, and the owning
  // diamond is the head's diamond.
  int slots = 0;
  for (int e = 0; e < n_edges; ++e) {
    const auto& de = g.edges[e];
    if (de.offset != slots) violation("edge " + std::to_string(e) + " slots are not contiguous");
    slots += de.length;
    if (de.head_vertex < 0 || de.head_vertex >= rep.vertex_count) continue;
    const Diamond& owner = g.diamonds[g.vertices[de.head_vertex].diamond];
    if (owner.cell != de.cell || owner.subsite != de.subsite) {
      violation("edge " + std::to_string(e) + " is labelled with a diamond other than its head's");
    }
  }
  if (slots != g.dimension) violation("state dimension does not match edge lengths");
  return rep;
}

}  // namespace mssh
