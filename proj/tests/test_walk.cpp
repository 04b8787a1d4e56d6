#include <random>

#include <gtest/gtest.h>

#include "mssh/walk.hpp"

using namespace mssh;

namespace {

LatticeGraph interface_graph(int m) {
  LatticeSpec s;
  s.half_length = m;
  s.profile = PhaseProfile::interface(0, {1.5, 2.5}, {3 * kPi / 4, 0.0});
  return build_lattice(s);
}

WalkState random_state(const LatticeGraph& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  WalkState st;
  st.amplitudes.resize(g.dimension);
  for (auto& a : st.amplitudes) a = {n(rng), n(rng)};
  const double scale = 1.0 / std::sqrt(st.norm_squared());
  for (auto& a : st.amplitudes) a *= scale;
  return st;
}

double max_deviation(const std::vector<cplx>& a, const Eigen::VectorXcd& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b(Eigen::Index(i))));
  return d;
}

}  // namespace

TEST(InitialState, LocalisedAtInjectionCell) {
  const auto g = interface_graph(3);
  const auto st = initial_state(g, 0, Subsite::a, Direction::right);
  EXPECT_NEAR(st.norm_squared(), 1.0, 1e-15);
  const auto p = cell_probabilities(st, g);
  for (int m = -3; m <= 3; ++m) EXPECT_EQ(p[m + 3], m == 0 ? 1.0 : 0.0);
}

TEST(InitialState, RejectsCellOutsideChain) {
  const auto g = interface_graph(3);
  EXPECT_THROW(initial_state(g, 4, Subsite::a, Direction::right), ConfigError);
  EXPECT_THROW(initial_state(g, -4, Subsite::b, Direction::left), ConfigError);
}

TEST(Step, PreservesNorm) {
  const auto g = interface_graph(4);
  auto st = random_state(g, 11);
  for (int i = 0; i < 50; ++i) {
    st = step(st, g);
    EXPECT_NEAR(st.norm_squared(), 1.0, 1e-12);
  }
  EXPECT_EQ(st.time, 50);
}

TEST(StepOperator, UnitaryOnSmallChain) {
  const auto g = interface_graph(2);
  const Eigen::MatrixXcd op = Eigen::MatrixXcd(assemble_step_operator(g));
  const Eigen::MatrixXcd gram = op.adjoint() * op - Eigen::MatrixXcd::Identity(op.rows(), op.cols());
  EXPECT_LE(gram.cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::VectorXd col = op.cwiseAbs2().colwise().sum().transpose();
  const Eigen::VectorXd row = op.cwiseAbs2().rowwise().sum();
  EXPECT_LE((col.array() - 1.0).abs().maxCoeff(), 1e-12);
  EXPECT_LE((row.array() - 1.0).abs().maxCoeff(), 1e-12);
}

TEST(StepOperator, MatchesIteratedStep) {
  const auto g = interface_graph(2);
  const Eigen::MatrixXcd op = Eigen::MatrixXcd(assemble_step_operator(g));
  auto st = random_state(g, 5);
  Eigen::VectorXcd v(g.dimension);
  for (int i = 0; i < g.dimension; ++i) v(i) = st.amplitudes[i];
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(g.dimension, g.dimension);
  for (int i = 0; i < 20; ++i) {
    st = step(st, g);
    power = op * power;
  }
  EXPECT_LE(max_deviation(st.amplitudes, power * v), 1e-12);
}

TEST(StepOperator, RefusesOversizedGraph) {
  LatticeSpec s;
  s.half_length = 400;
  EXPECT_THROW(assemble_step_operator(build_lattice(s)), std::length_error);
}

TEST(Evolve, RecordOnlyInitialTime) {
  const auto g = interface_graph(2);
  const auto obs = evolve(initial_state(g, 0, Subsite::a, Direction::right), g, 0, 5);
  ASSERT_EQ(obs.records(), 1u);
  EXPECT_EQ(obs.p(0, 0), 1.0);
  EXPECT_EQ(obs.mean[0], 0.0);
  EXPECT_EQ(obs.sigma[0], 0.0);
  EXPECT_EQ(obs.p_boundary[0], 1.0);
}

TEST(Evolve, ObservablesAreNormalisedDistributions) {
  WalkConfig cfg;
  cfg.profile = PhaseProfile::interface(0, {1.5, 2.5}, {3 * kPi / 4, 0.0});
  cfg.n_record = 40;
  const auto obs = run_walk(cfg);
  ASSERT_EQ(obs.records(), 41u);
  for (const auto& row : obs.p_cell) {
    double s = 0.0;
    for (double p : row) {
      EXPECT_GE(p, 0.0);
      s += p;
    }
    EXPECT_NEAR(s, 1.0, 1e-10);
  }
  EXPECT_LE(obs.max_norm_drift, 1e-10);
}

TEST(Evolve, LightConeOverflowDetected) {
  const auto g = interface_graph(2);
  EXPECT_THROW(evolve(initial_state(g, 0, Subsite::a, Direction::right), g, 40, 5), LightConeOverflow);
}

TEST(Evolve, AutoSizedChainStaysInsideLightCone) {
  WalkConfig cfg = WalkConfig{};
  cfg.n_record = 60;
  cfg.external_length = 1;
  EXPECT_NO_THROW(run_walk(cfg));
  EXPECT_EQ(required_half_length(60, 3, 2, 1), 32);
}

TEST(Evolve, MirrorSymmetry) {
  WalkConfig cfg;
  cfg.profile = PhaseProfile::interface(0, {1.5, 2.5}, {3 * kPi / 4, 0.0});
  cfg.n_record = 60;
  WalkConfig mirror = cfg;
  mirror.profile = mirrored(cfg.profile);
  mirror.inject_subsite = Subsite::b;
  mirror.inject_direction = Direction::left;
  const auto a = run_walk(cfg);
  const auto b = run_walk(mirror);
  ASSERT_EQ(a.half_length, b.half_length);
  for (std::size_t t = 0; t < a.records(); ++t)
    for (int m = -a.half_length; m <= a.half_length; ++m) EXPECT_NEAR(a.p(t, m), b.p(t, -m), 1e-12);
}

TEST(Analysis, LineFitOnExactLine) {
  std::vector<double> ys;
  for (int i = 0; i < 20; ++i) ys.push_back(3.0 + 0.5 * i);
  const auto f = fit_line(ys, 2, 19);
  EXPECT_NEAR(f.slope, 0.5, 1e-12);
  EXPECT_NEAR(f.intercept, 3.0, 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(window_mean(ys, 0, 1), 3.25, 1e-15);
  EXPECT_THROW(window_mean(ys, 5, 20), std::out_of_range);
}
