#pragma once

// Discrete-time scattering walk on a LatticeGraph.
//
// The state holds one complex amplitude per (directed edge, slot); slot 0 is
// where an amplitude leaving the tail vertex lands and slot length-1 is the
// one that reaches the head vertex on the next sub-step.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "mssh/errors.hpp"
#include "mssh/lattice.hpp"

namespace mssh {

struct WalkState {
  std::vector<cplx> amplitudes;
  long time = 0;  // sub-steps elapsed

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
  }
};

inline WalkState initial_state(const LatticeGraph& g, int cell, Subsite s, Direction d) {
  const int e = g.entering_edge(cell, s, d);
  WalkState st;
  st.amplitudes.assign(g.dimension, cplx{0.0});
  const auto& edge = g.edges[e];
  st.amplitudes[edge.offset + edge.length - 1] = 1.0;
  return st;
}

/// One sub-step: shift every edge register by one slot, scatter arrivals at
/// each vertex with its unitary, and write the outputs into slot 0 of the
/// outgoing edges.
inline WalkState step(const WalkState& state, const LatticeGraph& g) {
  if (static_cast<int>(state.amplitudes.size()) != g.dimension) {
    throw InvariantViolation("walk state dimension does not match the lattice");
  }
  WalkState next;
  next.time = state.time + 1;
  next.amplitudes.assign(g.dimension, cplx{0.0});
  std::vector<cplx> arrivals(3 * g.vertices.size(), cplx{0.0});

  const auto& in = state.amplitudes;
  auto& out = next.amplitudes;
  for (const auto& e : g.edges) {
    for (int s = e.length - 1; s > 0; --s) out[e.offset + s] = in[e.offset + s - 1];
    arrivals[3 * e.head_vertex + e.head_port] += in[e.offset + e.length - 1] * e.phase;
  }
  const auto& u = g.vertex_matrix;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const cplx* a = &arrivals[3 * v];
    if (a[0] == 0.0 && a[1] == 0.0 && a[2] == 0.0) continue;
    for (int q = 0; q < 3; ++q) {
      out[g.edges[g.vertices[v].out_edge[q]].offset] += u(q, 0) * a[0] + u(q, 1) * a[1] + u(q, 2) * a[2];
    }
  }
  return next;
}

inline constexpr int kMaxOperatorDimension = 10000;

/// Explicit one-sub-step matrix in the slot basis. Validation aid only.
inline Eigen::SparseMatrix<cplx> assemble_step_operator(const LatticeGraph& g) {
  if (g.dimension > kMaxOperatorDimension) {
    throw std::length_error("step operator of dimension " + std::to_string(g.dimension) + " exceeds " +
                            std::to_string(kMaxOperatorDimension));
  }
  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(g.dimension + 2 * g.edges.size());
  for (const auto& e : g.edges) {
    for (int s = 0; s + 1 < e.length; ++s) entries.emplace_back(e.offset + s + 1, e.offset + s, 1.0);
    const int source = e.offset + e.length - 1;
    for (int q = 0; q < 3; ++q) {
      const int target = g.edges[g.vertices[e.head_vertex].out_edge[q]].offset;
      entries.emplace_back(target, source, g.vertex_matrix(q, e.head_port) * e.phase);
    }
  }
  Eigen::SparseMatrix<cplx> op(g.dimension, g.dimension);
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

/// Probability per cell, indexed by m + half_length.
inline std::vector<double> cell_probabilities(const WalkState& st, const LatticeGraph& g) {
  std::vector<double> p(g.cell_count(), 0.0);
  for (const auto& e : g.edges) {
    double w = 0.0;
    for (int s = 0; s < e.length; ++s) w += std::norm(st.amplitudes[e.offset + s]);
    p[e.cell + g.half_length] += w;
  }
  return p;
}

struct WalkObservables {
  int half_length = 0;
  int substeps_per_record = 1;
  std::vector<std::vector<double>> p_cell;  // [record][m + half_length]
  std::vector<double> mean;
  std::vector<double> sigma;
  std::vector<double> p_boundary;  // sum over |m| <= 1
  double max_norm_drift = 0.0;

  std::size_t records() const { return p_cell.size(); }
  double p(std::size_t record, int m) const { return p_cell[record][m + half_length]; }
};

inline constexpr double kLightConeTolerance = 1e-9;

/// Records t = 0, 1, ..., n_record (in units of substeps_per_record
/// sub-steps). Throws LightConeOverflow if either end cell ever holds more
/// than 1e-9 probability.
inline WalkObservables evolve(WalkState state, const LatticeGraph& g, int n_record, int substeps_per_record) {
  if (n_record < 0) throw std::invalid_argument("n_record must be >= 0");
  if (substeps_per_record < 1) throw std::invalid_argument("substeps_per_record must be >= 1");
  WalkObservables obs;
  obs.half_length = g.half_length;
  obs.substeps_per_record = substeps_per_record;

  auto record = [&](const WalkState& st) {
    auto p = cell_probabilities(st, g);
    double mean = 0.0, second = 0.0, boundary = 0.0;
    for (int m = -g.half_length; m <= g.half_length; ++m) {
      const double pm = p[m + g.half_length];
      mean += m * pm;
      second += double(m) * m * pm;
      if (std::abs(m) <= 1) boundary += pm;
    }
    if (p.front() > kLightConeTolerance || p.back() > kLightConeTolerance) {
      throw LightConeOverflow("probability reached the chain ends at sub-step " + std::to_string(st.time) +
                              "; enlarge half_length");
    }
    obs.mean.push_back(mean);
    obs.sigma.push_back(std::sqrt(std::max(0.0, second - mean * mean)));
    obs.p_boundary.push_back(boundary);
    obs.p_cell.push_back(std::move(p));
    obs.max_norm_drift = std::max(obs.max_norm_drift, std::abs(st.norm_squared() - 1.0));
  };

  record(state);
  for (int r = 0; r < n_record; ++r) {
    for (int s = 0; s < substeps_per_record; ++s) state = step(state, g);
    record(state);
  }
  return obs;
}

/// Smallest half-length whose light cone stays clear of the end cells for the
/// requested number of sub-steps. Amplitude advances at most one slot per
/// sub-step and crossing one cell costs 2·(internal + external) slots.
inline int required_half_length(int n_record, int substeps_per_record, int internal_length, int external_length) {
  const long long substeps = static_cast<long long>(n_record) * substeps_per_record;
  const long long per_cell = 2LL * (internal_length + external_length);
  return static_cast<int>((substeps + per_cell - 1) / per_cell) + 2;
}

struct WalkConfig {
  PhaseProfile profile = PhaseProfile::uniform(0.0, 0.0);
  double theta = kImaginaryTheta;
  int internal_length = 2;
  int external_length = 3;
  std::optional<int> half_length;           // auto-sized when empty
  std::optional<int> substeps_per_record;   // internal + external when empty
  int n_record = 200;
  int inject_cell = 0;
  Subsite inject_subsite = Subsite::a;
  Direction inject_direction = Direction::right;

  int cadence() const { return substeps_per_record.value_or(internal_length + external_length); }
  int resolved_half_length() const {
    return half_length.value_or(required_half_length(n_record, cadence(), internal_length, external_length));
  }
  LatticeSpec lattice_spec() const {
    return {resolved_half_length(), profile, theta, internal_length, external_length};
  }
};

inline WalkObservables run_walk(const WalkConfig& cfg) {
  const LatticeGraph g = build_lattice(cfg.lattice_spec());
  return evolve(initial_state(g, cfg.inject_cell, cfg.inject_subsite, cfg.inject_direction), g, cfg.n_record,
                cfg.cadence());
}

// Small analysis helpers for observables.

inline double window_mean(const std::vector<double>& xs, std::size_t first, std::size_t last) {
  if (first > last || last >= xs.size()) throw std::out_of_range("window outside the recorded range");
  double s = 0.0;
  for (std::size_t i = first; i <= last; ++i) s += xs[i];
  return s / double(last - first + 1);
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line through (i, ys[i]) for i in [first, last].
inline LinearFit fit_line(const std::vector<double>& ys, std::size_t first, std::size_t last) {
  if (first >= last || last >= ys.size()) throw std::out_of_range("fit window outside the recorded range");
  const double n = double(last - first + 1);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = first; i <= last; ++i) {
    const double x = double(i);
    sx += x;
    sy += ys[i];
    sxx += x * x;
    sxy += x * ys[i];
  }
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  const double ybar = sy / n;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = first; i <= last; ++i) {
    const double r = ys[i] - (f.intercept + f.slope * double(i));
    ss_res += r * r;
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  f.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

}  // namespace mssh
