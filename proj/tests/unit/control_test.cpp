#include "opinionflow/control.hpp"

#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "opinionflow/dynamics.hpp"
#include "opinionflow/error.hpp"
#include "support/random_scenarios.hpp"

namespace opinionflow {
namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Laplacian k2_lap() { return Laplacian::from_graph(Graph::build(2, {{1, 2, 1.0}, {2, 1, 1.0}})); }
Laplacian chain_lap() { return Laplacian::from_graph(Graph::build(2, {{2, 1, 1.0}})); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kValidation;
}

TEST(Schedule, ConstantAndLookup) {
  const ControlSchedule s = ControlSchedule::constant(vec({1, 2}));
  EXPECT_EQ(s.size(), 2);
  EXPECT_TRUE(s.switch_times().empty());
  EXPECT_EQ(s.control_at(1e6)(1), 2.0);
}

TEST(Schedule, SegmentOwnsItsLeftEnd) {
  const ControlSchedule s({{0.0, 1.5, vec({1})}, {1.5, kForever, vec({2})}});
  EXPECT_EQ(s.segment_at(0.0), 0u);
  EXPECT_EQ(s.segment_at(1.4999), 0u);
  EXPECT_EQ(s.segment_at(1.5), 1u);
  EXPECT_EQ(s.switch_times(), std::vector<double>{1.5});
}

TEST(Schedule, RejectsBrokenSegments) {
  EXPECT_EQ(code_of([] { ControlSchedule({}); }), ErrorCode::kValidation);
  EXPECT_EQ(code_of([] { ControlSchedule({{0.5, kForever, vec({1})}}); }), ErrorCode::kValidation);
  EXPECT_EQ(code_of([] { ControlSchedule({{0.0, 1.0, vec({1})}}); }), ErrorCode::kValidation);
  EXPECT_EQ(code_of([] { ControlSchedule({{0.0, 1.0, vec({1})}, {2.0, kForever, vec({1})}}); }),
            ErrorCode::kValidation);
  EXPECT_EQ(code_of([] { ControlSchedule({{0.0, 1.0, vec({1})}, {1.0, kForever, vec({1, 2})}}); }),
            ErrorCode::kDimensionMismatch);
}

TEST(Reachability, UndirectedAverageDecides) {
  const Laplacian l = k2_lap();
  const ZeroEigenstructure eig = zero_eigenstructure(l);
  EXPECT_TRUE(is_reachable(eig, vec({0, 4}), vec({3, 1})).reachable);
  const ReachabilityVerdict r = is_reachable(eig, vec({0, 0}), vec({3, 1}));
  EXPECT_FALSE(r.reachable);
  ASSERT_EQ(r.gaps.size(), 1u);
  EXPECT_NEAR(r.gaps[0], 2.0, 1e-14);
}

TEST(Reachability, ChainLeaderCannotMove) {
  const ZeroEigenstructure eig = zero_eigenstructure(chain_lap());
  EXPECT_TRUE(is_reachable(eig, vec({1, 0}), vec({1, 9})).reachable);
  EXPECT_FALSE(is_reachable(eig, vec({1, 0}), vec({2, 9})).reachable);
}

TEST(StabilizingControl, Examples) {
  const Laplacian l = k2_lap();
  const Vector u = design_stabilizing_control(l, vec({3, 1}), vec({0, 0}));
  EXPECT_NEAR(u(0), 2.0, 1e-14);
  EXPECT_NEAR(u(1), -2.0, 1e-14);
  const Vector b = l.matrix() * vec({3, 1});
  EXPECT_LT(design_stabilizing_control(l, vec({3, 1}), b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(TwoStage, ReachableTargetNeedsOneSegment) {
  const Laplacian l = k2_lap();
  const ControlSchedule s =
      design_two_stage_control(l, zero_eigenstructure(l), vec({0, 4}), vec({3, 1}), vec({0, 0}), 1.0);
  ASSERT_EQ(s.segments().size(), 1u);
  EXPECT_NEAR(s.segments()[0].u(0), 2.0, 1e-14);
}

// Average has to climb from 0 to 2 within t_bar = 1: alpha = 2, stage 1
// adds 2 * ones on top of L x_d = [2, -2].
TEST(TwoStage, UndirectedPair) {
  const Laplacian l = k2_lap();
  const ControlSchedule s =
      design_two_stage_control(l, zero_eigenstructure(l), vec({0, 0}), vec({3, 1}), vec({0, 0}), 1.0);
  ASSERT_EQ(s.segments().size(), 2u);
  EXPECT_EQ(s.segments()[0].t_end, 1.0);
  EXPECT_NEAR(s.segments()[0].u(0), 4.0, 1e-12);
  EXPECT_NEAR(s.segments()[0].u(1), 0.0, 1e-12);
  EXPECT_NEAR(s.segments()[1].u(0), 2.0, 1e-12);
  EXPECT_NEAR(s.segments()[1].u(1), -2.0, 1e-12);
}

// Leader starts at 0 and must reach 5 by t_bar = 2: alpha = 2.5 and the
// ones direction carries it; L x_d = 0 for a consensus target.
TEST(TwoStage, ChainConsensusTarget) {
  const Laplacian l = chain_lap();
  const ControlSchedule s =
      design_two_stage_control(l, zero_eigenstructure(l), vec({0, 0}), vec({5, 5}), vec({0, 0}), 2.0);
  ASSERT_EQ(s.segments().size(), 2u);
  EXPECT_NEAR(s.segments()[0].u(0), 2.5, 1e-12);
  EXPECT_NEAR(s.segments()[0].u(1), 2.5, 1e-12);
  EXPECT_LT(s.segments()[1].u.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TwoStage, RejectsBadHorizon) {
  const Laplacian l = k2_lap();
  const ZeroEigenstructure eig = zero_eigenstructure(l);
  for (double t : {0.0, -1.0, std::nan(""), kForever})
    EXPECT_EQ(code_of([&] { design_two_stage_control(l, eig, vec({0, 0}), vec({3, 1}), vec({0, 0}), t); }),
              ErrorCode::kInvalidHorizon);
}

TEST(TwoStage, RandomTargetsAreReachedAfterHandoff) {
  support::Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = support::uniform_int(rng, 2, 7);
    const Laplacian l = Laplacian::from_graph(support::random_digraph(rng, n));
    const ZeroEigenstructure eig = zero_eigenstructure(l);
    const Vector x0 = support::random_vector(rng, n);
    const Vector x_d = support::random_vector(rng, n);
    const Vector b = support::random_vector(rng, n);
    const double t_bar = support::uniform(rng, 0.5, 3.0);
    const ControlSchedule s = design_two_stage_control(l, eig, x0, x_d, b, t_bar);

    // Zero modes move linearly during stage 1 and land on target at t_bar.
    const Vector at_switch = propagate_exact(l, x0, b + s.segments()[0].u, t_bar);
    const Vector half = propagate_exact(l, x0, b + s.segments()[0].u, 0.5 * t_bar);
    const Vector gap_end = eig.w0.transpose() * (at_switch - x_d);
    const Vector mid_expected = 0.5 * eig.w0.transpose() * (x0 + x_d);
    EXPECT_LT(gap_end.cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LT((eig.w0.transpose() * half - mid_expected).cwiseAbs().maxCoeff(), 1e-6);

    const auto spec = spectrum(l);
    const double decay = std::abs(spec.slowest_nonzero().value_or(std::complex<double>(-1, 0)).real());
    const Vector end = propagate_exact(l, at_switch, b + s.segments().back().u, 40.0 / decay);
    EXPECT_LT((end - x_d).cwiseAbs().maxCoeff(), 1e-3);
  }
}

}  // namespace
}  // namespace opinionflow
