#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "support.hpp"
#include "ternwave/design.hpp"
#include "ternwave/error.hpp"
#include "ternwave/gates.hpp"

using namespace ternwave;

namespace {

std::vector<double> angles_of(const std::array<double, 6>& a) { return {a.begin(), a.end()}; }

MomentConstraintSet single(SequenceId id, bool highfreq, std::vector<unsigned> alphas) {
  MomentConstraintSet s;
  s.alphas = std::move(alphas);
  s.which = {{id, highfreq}};
  return s;
}

}  // namespace

TEST(Sequences, DepthSixGeometry) {
  for (const auto& spec : {TernaryCircuitSpec::type_i(), TernaryCircuitSpec::type_ii()}) {
    const SequenceSet s = extract_sequences(spec);
    EXPECT_EQ(s.h_plus.taps.size(), 33u);
    EXPECT_EQ(s.g_plus.taps.size(), 36u);
    EXPECT_EQ(s.g_minus.taps.size(), 36u);
    EXPECT_DOUBLE_EQ(s.h_plus.center, 16.0);
    EXPECT_DOUBLE_EQ(s.g_plus.center, 17.5);
    EXPECT_EQ(s.leakage, 0.0);
    EXPECT_LT(s.h_plus.symmetry_residual(+1), 1e-13);
    EXPECT_LT(s.g_plus.symmetry_residual(+1), 1e-13);
    EXPECT_LT(s.g_minus.symmetry_residual(-1), 1e-13);
    for (SequenceId id : {SequenceId::HPlus, SequenceId::GPlus, SequenceId::GMinus})
      EXPECT_NEAR(twtest::norm2(s.get(id).taps), 1.0, 1e-13);
  }
}

TEST(Sequences, TypeISupportIsFullWindow) {
  const SequenceSet s = extract_sequences(TernaryCircuitSpec::type_i());
  EXPECT_EQ(s.h_plus.support(), 33u);
  EXPECT_EQ(s.g_plus.support(), 36u);
  EXPECT_EQ(s.g_minus.support(), 36u);
}

TEST(Sequences, GenericAnglesFillTheWindow) {
  twtest::for_all(10, 21, [](twtest::Gen& g, std::size_t) {
    std::vector<double> a(6);
    for (double& t : a) t = g.uniform(0.2, 1.3) * (g.uniform(0, 1) < 0.5 ? -1 : 1);
    const SequenceSet s = extract_sequences(TernaryCircuitSpec(a, Cascade::SiteCentered));
    EXPECT_EQ(s.h_plus.support(), 33u);
    EXPECT_EQ(s.g_plus.support(), 36u);
    EXPECT_EQ(s.g_minus.support(), 36u);
  });
}

TEST(Sequences, TypeIITrivialRowsShortenTheSupport) {
  // theta = 0 leaves one layer as the identity, which trims two taps from
  // each end of every sequence.
  const SequenceSet s = extract_sequences(TernaryCircuitSpec::type_ii());
  EXPECT_EQ(s.h_plus.support(), 29u);
  EXPECT_EQ(s.g_plus.support(), 32u);
  EXPECT_EQ(s.g_minus.support(), 32u);
}

TEST(Sequences, DepthOneMatchesHandComposition) {
  const double theta = 0.8137;
  const SequenceSet s = extract_sequences(TernaryCircuitSpec({theta}, Cascade::SiteCentered));
  ASSERT_EQ(s.h_plus.taps.size(), 3u);
  ASSERT_EQ(s.g_plus.taps.size(), 6u);
  // Analysis rows are rows of v^T, i.e. columns of v; u_H then mixes the
  // last output of one triple with the first output of the next.
  const Mat3 v = ternary_gate(theta).m;
  const double r = 1.0 / std::numbers::sqrt2;
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(s.h_plus.taps[i], v[i][1], 1e-15);
    EXPECT_NEAR(s.g_plus.taps[i], r * v[i][2], 1e-15);
    EXPECT_NEAR(s.g_plus.taps[i + 3], r * v[i][0], 1e-15);
    EXPECT_NEAR(s.g_minus.taps[i], r * v[i][2], 1e-15);
    EXPECT_NEAR(s.g_minus.taps[i + 3], -r * v[i][0], 1e-15);
  }
}

TEST(Moments, SymmetryCancellation) {
  const SequenceSet s = extract_sequences(TernaryCircuitSpec::type_i());
  for (unsigned a : {0u, 2u, 4u}) EXPECT_NEAR(moment(s.g_minus, a, false), 0.0, 1e-12) << a;
  for (unsigned a : {1u, 3u, 5u}) {
    EXPECT_NEAR(moment(s.g_plus, a, false), 0.0, 1e-12) << a;
    EXPECT_NEAR(moment(s.h_plus, a, false), 0.0, 1e-12) << a;
  }
  EXPECT_TRUE(is_symmetry_trivial({SequenceId::GMinus, 0, false}));
  EXPECT_TRUE(is_symmetry_trivial({SequenceId::GPlus, 1, false}));
  EXPECT_TRUE(is_symmetry_trivial({SequenceId::GPlus, 0, true}));
  EXPECT_TRUE(is_symmetry_trivial({SequenceId::GMinus, 1, true}));
  EXPECT_TRUE(is_symmetry_trivial({SequenceId::HPlus, 1, true}));
  EXPECT_FALSE(is_symmetry_trivial({SequenceId::GMinus, 1, false}));
  EXPECT_FALSE(is_symmetry_trivial({SequenceId::HPlus, 2, true}));
  EXPECT_FALSE(is_symmetry_trivial({SequenceId::GPlus, 1, true}));
}

TEST(Moments, HighFrequencySignConvention) {
  Sequence seq;
  seq.taps = {1.0, 1.0};
  seq.center = 0.5;
  // r = -1/2 and +1/2; floor gives -1 and 0, so the tap at +1/2 is positive.
  EXPECT_EQ(moment(seq, 0, true), 0.0);
  seq.taps = {-1.0, 1.0};
  EXPECT_EQ(moment(seq, 0, true), 2.0);
}

TEST(Moments, TableAnglesVanish) {
  const SequenceSet s = extract_sequences(TernaryCircuitSpec::type_i());
  EXPECT_LT(std::abs(moment(s.g_minus, 1, false)), 1e-7);
  // Only three vanishing moments for the anti-symmetric wavelet.
  EXPECT_GT(std::abs(moment(s.g_minus, 3, false)), 1e-4);
  EXPECT_GT(std::abs(moment(extract_sequences(TernaryCircuitSpec::type_ii()).g_minus, 3, false)), 1e-4);
}

TEST(VerifyAngles, TableAnglesBothTypes) {
  for (const auto& spec : {TernaryCircuitSpec::type_i(), TernaryCircuitSpec::type_ii()}) {
    const ResidualReport r = verify_angles(spec, default_constraints(spec.cascade()));
    EXPECT_LT(r.max_abs, 1e-6);
    std::size_t nontrivial = 0;
    for (const auto& e : r.entries) nontrivial += !e.trivial;
    EXPECT_EQ(nontrivial, 6u);
  }
}

TEST(VerifyAngles, DefaultConstraintRoles) {
  const auto site = default_constraints(Cascade::SiteCentered);
  const auto edge = default_constraints(Cascade::EdgeCentered);
  EXPECT_EQ(site.alphas, (std::vector<unsigned>{0, 1, 2}));
  ASSERT_EQ(site.which.size(), 4u);
  ASSERT_EQ(edge.which.size(), 4u);
  auto has = [](const MomentConstraintSet& s, SequenceId id, bool hf) {
    for (const auto& w : s.which)
      if (w.sequence == id && w.highfreq == hf) return true;
    return false;
  };
  EXPECT_TRUE(has(site, SequenceId::GPlus, false));
  EXPECT_TRUE(has(site, SequenceId::GMinus, false));
  EXPECT_TRUE(has(site, SequenceId::HPlus, true));
  EXPECT_TRUE(has(site, SequenceId::GPlus, true));
  EXPECT_TRUE(has(edge, SequenceId::HPlus, false));
  EXPECT_TRUE(has(edge, SequenceId::GMinus, false));
  EXPECT_TRUE(has(edge, SequenceId::GPlus, true));
  EXPECT_TRUE(has(edge, SequenceId::HPlus, true));
  EXPECT_EQ(site.expand().size(), 12u);
}

TEST(VerifyAngles, RandomAnglesDoNotSatisfyConstraints) {
  twtest::for_all(10, 22, [](twtest::Gen& g, std::size_t) {
    std::vector<double> a(6);
    for (double& t : a) t = g.uniform(-3.0, 3.0);
    const TernaryCircuitSpec spec(a, Cascade::SiteCentered);
    EXPECT_GT(verify_angles(spec, default_constraints(spec.cascade())).max_abs, 1e-3);
  });
}

TEST(Solver, StartingAtTheTableConvergesImmediately) {
  const SolveResult r = solve_angles(6, Cascade::SiteCentered, default_constraints(Cascade::SiteCentered),
                                     angles_of(kTypeIAngles));
  EXPECT_LE(r.iterations, 2u);
  EXPECT_LT(r.max_residual, 1e-12);
  EXPECT_FALSE(r.already_solved);
}

TEST(Solver, ReconvergesFromPerturbedTableAngles) {
  for (Cascade cascade : {Cascade::SiteCentered, Cascade::EdgeCentered}) {
    twtest::for_all(3, 23, [&](twtest::Gen& g, std::size_t) {
      auto init = angles_of(cascade == Cascade::SiteCentered ? kTypeIAngles : kTypeIIAngles);
      for (double& t : init) t += g.uniform(-1e-3, 1e-3);
      const SolveResult r = solve_angles(6, cascade, default_constraints(cascade), init);
      EXPECT_LT(r.max_residual, 1e-10);
      EXPECT_LE(r.iterations, 200u);
      // The residual the solver reports is what verify_angles sees.
      const TernaryCircuitSpec spec(r.angles, cascade);
      EXPECT_LT(verify_angles(spec, default_constraints(cascade)).max_abs, 1e-10);
    });
  }
}

TEST(Solver, TrivialConstraintIsAlreadySolved) {
  const SolveResult r =
      solve_angles(1, Cascade::SiteCentered, single(SequenceId::GMinus, false, {0}), {0.4});
  EXPECT_TRUE(r.already_solved);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(r.angles, (std::vector<double>{0.4}));
}

TEST(Solver, Errors) {
  EXPECT_THROW(solve_angles(2, Cascade::SiteCentered, default_constraints(Cascade::SiteCentered),
                            {0.1, 0.2}),
               InvalidArgument);
  EXPECT_THROW(solve_angles(6, Cascade::SiteCentered, default_constraints(Cascade::SiteCentered),
                            {0.1, 0.2}),
               InvalidArgument);
  SolverOptions tight;
  tight.max_iterations = 1;
  tight.tolerance = 1e-300;
  std::vector<double> far(6, 0.3);
  EXPECT_THROW(solve_angles(6, Cascade::SiteCentered, default_constraints(Cascade::SiteCentered), far,
                            tight),
               ConvergenceFailure);
}

TEST(Render, FirstIterationIsTheRawSequence) {
  const auto spec = TernaryCircuitSpec::type_i();
  const SequenceSet s = extract_sequences(spec);
  const RenderedFunction f = render_function(spec, SequenceId::GPlus, 1);
  EXPECT_EQ(f.iterations, 1u);
  EXPECT_EQ(f.value, s.g_plus.taps);
  ASSERT_EQ(f.x.size(), 36u);
  EXPECT_DOUBLE_EQ(f.x.front(), -17.5);
  EXPECT_DOUBLE_EQ(f.x.back(), 17.5);
}

TEST(Render, CascadeConvergesAndKeepsSymmetry) {
  for (const auto& spec : {TernaryCircuitSpec::type_i(), TernaryCircuitSpec::type_ii()}) {
    const auto d = cauchy_differences(spec, SequenceId::HPlus, 6);
    ASSERT_EQ(d.size(), 5u);
    for (std::size_t i = 1; i < d.size(); ++i) EXPECT_LT(d[i], d[i - 1]);

    const RenderedFunction f = render_function(spec, SequenceId::GMinus, 4);
    const std::size_t n = f.value.size();
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(f.x[k], -f.x[n - 1 - k], 1e-12);
      EXPECT_NEAR(f.value[k], -f.value[n - 1 - k], 1e-12);
    }
    EXPECT_EQ(f.at(1e6), 0.0);
  }
  EXPECT_THROW(render_function(TernaryCircuitSpec::type_i(), SequenceId::HPlus, 0), InvalidArgument);
}

TEST(SequenceIds, Parse) {
  EXPECT_EQ(parse_sequence_id("h+"), SequenceId::HPlus);
  EXPECT_EQ(parse_sequence_id("g+"), SequenceId::GPlus);
  EXPECT_EQ(parse_sequence_id("g-"), SequenceId::GMinus);
  EXPECT_FALSE(parse_sequence_id("x").has_value());
  EXPECT_EQ(to_string(SequenceId::GMinus), "g-");
}
