#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "support.hpp"
#include "ternwave/design.hpp"
#include "ternwave/error.hpp"
#include "ternwave/ternary.hpp"

using namespace ternwave;

namespace {

const TernaryCircuitSpec& spec_of(int type) {
  static const TernaryCircuitSpec t1 = TernaryCircuitSpec::type_i();
  static const TernaryCircuitSpec t2 = TernaryCircuitSpec::type_ii();
  return type == 1 ? t1 : t2;
}

std::vector<double> flatten(const Subbands1D& b) {
  std::vector<double> v(b.sca);
  v.insert(v.end(), b.wav_plus.begin(), b.wav_plus.end());
  v.insert(v.end(), b.wav_minus.begin(), b.wav_minus.end());
  return v;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

using twtest::reference_open;

void expect_bands_near(const Subbands1D& a, const Subbands1D& b, double tol) {
  ASSERT_EQ(a.sca.size(), b.sca.size());
  ASSERT_EQ(a.wav_plus.size(), b.wav_plus.size());
  ASSERT_EQ(a.wav_minus.size(), b.wav_minus.size());
  EXPECT_LT(twtest::max_abs_diff(a.sca, b.sca), tol);
  EXPECT_LT(twtest::max_abs_diff(a.wav_plus, b.wav_plus), tol);
  EXPECT_LT(twtest::max_abs_diff(a.wav_minus, b.wav_minus), tol);
}

// Dense matrix of the single-level open transform in [sca | wav+ | wav-] layout.
Eigen::MatrixXd open_operator(std::size_t n, const TernaryCircuitSpec& spec) {
  const TernaryTransform t(spec);
  Eigen::MatrixXd m(n, n);
  std::vector<double> e(n, 0.0), col(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    t.forward(e, col);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }
  return m;
}

}  // namespace

// --- circuit specs and level plans ----------------------------------------

TEST(CircuitSpec, BuiltInConstants) {
  const auto t1 = TernaryCircuitSpec::type_i();
  const auto t2 = TernaryCircuitSpec::type_ii();
  EXPECT_EQ(t1.depth(), 6u);
  EXPECT_EQ(t2.depth(), 6u);
  EXPECT_EQ(t1.cascade(), Cascade::SiteCentered);
  EXPECT_EQ(t2.cascade(), Cascade::EdgeCentered);
  // Published angles, quoted to nine decimals.
  const double type_i[] = {0.072130476, 0.847695078, -0.576099009,
                           -0.591746629, 0.673886987, 0.529449713};
  const double type_ii[] = {-0.261582176, 3.141592654, 0.107465734,
                            3.141592654, -0.461363266, 0.0};
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_NEAR(t1.angles()[k], type_i[k], 5e-10);
    EXPECT_NEAR(t2.angles()[k], type_ii[k], 5e-10);
  }
  EXPECT_EQ(t1.min_transform_length(), 36u);
}

TEST(CircuitSpec, RejectsBadAngles) {
  EXPECT_THROW(TernaryCircuitSpec({}, Cascade::SiteCentered), InvalidArgument);
  EXPECT_THROW(TernaryCircuitSpec({0.1, std::nan("")}, Cascade::SiteCentered), InvalidArgument);
}

TEST(PlanLevel, TableExamples) {
  const LevelPlan p9 = plan_level(9, Cascade::SiteCentered);
  EXPECT_EQ(p9.left, Extension::Edge);
  EXPECT_EQ(p9.right, Extension::Edge);
  EXPECT_EQ(p9.n_sca, 3u);
  EXPECT_EQ(p9.n_wav_plus, 4u);
  EXPECT_EQ(p9.n_wav_minus, 2u);

  const LevelPlan p10 = plan_level(10, Cascade::SiteCentered);
  EXPECT_EQ(p10.left, Extension::Site);
  EXPECT_EQ(p10.right, Extension::Site);
  EXPECT_EQ(p10.n_sca, 4u);
  EXPECT_EQ(p10.n_wav_plus, 3u);
  EXPECT_EQ(p10.n_wav_minus, 3u);

  const LevelPlan p11 = plan_level(11, Cascade::EdgeCentered);
  EXPECT_EQ(p11.left, Extension::Edge);
  EXPECT_EQ(p11.right, Extension::Site);
  EXPECT_EQ(p11.n_sca, 4u);
  EXPECT_EQ(p11.n_wav_plus, 4u);
  EXPECT_EQ(p11.n_wav_minus, 3u);
}

TEST(PlanLevel, CountsForAllClassesAndBothCascades) {
  for (std::size_t k = 2; k <= 20; ++k) {
    struct Row {
      std::size_t n;
      Extension l, r;
      std::size_t sites, gp, gm;
    };
    const Row rows[] = {{3 * k, Extension::Edge, Extension::Edge, k, k + 1, k - 1},
                        {3 * k + 1, Extension::Site, Extension::Site, k + 1, k, k},
                        {3 * k + 2, Extension::Edge, Extension::Site, k + 1, k + 1, k}};
    for (const Row& row : rows) {
      SCOPED_TRACE("n = " + std::to_string(row.n));
      const LevelPlan a = plan_level(row.n, Cascade::SiteCentered);
      EXPECT_EQ(a.n, row.n);
      EXPECT_EQ(a.left, row.l);
      EXPECT_EQ(a.right, row.r);
      EXPECT_EQ(a.n_sca, row.sites);
      EXPECT_EQ(a.n_wav_plus, row.gp);
      EXPECT_EQ(a.n_wav_minus, row.gm);
      const LevelPlan b = plan_level(row.n, Cascade::EdgeCentered);
      EXPECT_EQ(b.left, row.l);
      EXPECT_EQ(b.right, row.r);
      EXPECT_EQ(b.n_sca, row.gp);
      EXPECT_EQ(b.n_wav_plus, row.sites);
      EXPECT_EQ(b.n_wav_minus, row.gm);
      EXPECT_EQ(a.n_sca + a.n_wav_plus + a.n_wav_minus, row.n);
    }
  }
}

TEST(PlanLevel, TooShort) {
  EXPECT_THROW(plan_level(2, Cascade::SiteCentered), TooShort);
  EXPECT_THROW(plan_periodic(7), InvalidArgument);
  EXPECT_THROW(plan_periodic(3), InvalidArgument);
}

// --- periodic transform ----------------------------------------------------

TEST(Periodic, ConstantSignalHasNoWaveletContent) {
  const std::vector<double> x(9, 1.0);
  const Subbands1D b = forward_periodic(x, TernaryCircuitSpec::type_i());
  ASSERT_EQ(b.sca.size(), 3u);
  // The built-in angles are quoted to nine decimals, so "zero" is at that level.
  EXPECT_LT(twtest::max_abs(b.wav_plus), 1e-8);
  EXPECT_LT(twtest::max_abs(b.wav_minus), 1e-8);
  for (double s : b.sca) {
    EXPECT_GT(s, 0.0);
    EXPECT_NEAR(s, b.sca[0], 1e-12);
    EXPECT_NEAR(s, std::sqrt(3.0), 1e-8);  // unit-norm h+ summing to sqrt(3)
  }
}

TEST(Periodic, MatchesGateCompositionOnFortyFiveSites) {
  for (int type : {1, 2}) {
    const auto& spec = spec_of(type);
    const Eigen::MatrixXd A = twtest::circuit_matrix(spec.angles(), 45);
    EXPECT_LT((A.transpose() * A - Eigen::MatrixXd::Identity(45, 45)).cwiseAbs().maxCoeff(), 1e-12);

    // The library's own probed matrix agrees with the composition.
    const std::vector<double> lib = periodic_analysis_matrix(spec, 45);
    double diff = 0.0;
    for (Eigen::Index i = 0; i < 45; ++i)
      for (Eigen::Index j = 0; j < 45; ++j)
        diff = std::max(diff, std::abs(lib[static_cast<std::size_t>(i * 45 + j)] - A(i, j)));
    EXPECT_LT(diff, 1e-13) << "type " << type;

    twtest::for_all(20, 100 + type, [&](twtest::Gen& g, std::size_t) {
      const std::vector<double> x = g.vec(45);
      const Eigen::VectorXd y = A * Eigen::Map<const Eigen::VectorXd>(x.data(), 45);
      const Subbands1D b = forward_periodic(x, spec);
      std::vector<double> sites, gp, gm;
      for (Eigen::Index j = 0; j < 45; j += 3) {
        sites.push_back(y(j + 1));
        gp.push_back(y(j + 2));
        gm.push_back(y((j + 3) % 45));
      }
      EXPECT_LT(twtest::max_abs_diff(spec.cascade() == Cascade::SiteCentered ? b.sca : b.wav_plus, sites), 1e-13);
      EXPECT_LT(twtest::max_abs_diff(spec.cascade() == Cascade::SiteCentered ? b.wav_plus : b.sca, gp), 1e-13);
      EXPECT_LT(twtest::max_abs_diff(b.wav_minus, gm), 1e-13);
    });
  }
}

TEST(Periodic, MatrixRowsAreTheExtractedSequences) {
  for (int type : {1, 2}) {
    const auto& spec = spec_of(type);
    const Eigen::MatrixXd A = twtest::circuit_matrix(spec.angles(), 45);
    const SequenceSet seqs = extract_sequences(spec);
    const auto z = static_cast<Eigen::Index>(spec.depth());
    auto check_row = [&](Eigen::Index row, Eigen::Index start, const Sequence& s) {
      std::vector<double> expect(45, 0.0);
      for (std::size_t i = 0; i < s.taps.size(); ++i)
        expect[static_cast<std::size_t>(((start + static_cast<Eigen::Index>(i)) % 45 + 45) % 45)] = s.taps[i];
      std::vector<double> got(45);
      for (Eigen::Index j = 0; j < 45; ++j) got[static_cast<std::size_t>(j)] = A(row, j);
      EXPECT_LT(twtest::max_abs_diff(got, expect), 1e-13) << "row " << row << " type " << type;
    };
    for (Eigen::Index j = 0; j < 45; j += 3) {
      const Eigen::Index site = j + 1, first = j + 2;
      check_row(site, site - (3 * z - 2), seqs.h_plus);
      check_row(first, first - (3 * z - 1), seqs.g_plus);
      check_row((first + 1) % 45, first - (3 * z - 1), seqs.g_minus);
    }
  }
}

TEST(Periodic, PreservesEnergyAndRoundTrips) {
  for (int type : {1, 2}) {
    twtest::for_all(60, 200 + type, [&](twtest::Gen& g, std::size_t) {
      const std::size_t n = 3 * g.size(2, 60);
      const auto x = g.vec(n, -3.0, 3.0);
      const Subbands1D b = forward_periodic(x, spec_of(type));
      EXPECT_NEAR(twtest::norm2(flatten(b)), twtest::norm2(x), 1e-12 * std::max(1.0, twtest::norm2(x)));
      EXPECT_LT(twtest::max_abs_diff(inverse_periodic(b, spec_of(type)), x), 1e-12);
    });
  }
}

// --- open boundaries --------------------------------------------------------

TEST(SymmetricExtension, MirrorDefinitions) {
  const std::vector<double> x{1.0, 2.0, 3.0};
  const auto edge = extend_symmetric(x, Extension::Edge, Extension::Edge, 3, 0);
  EXPECT_EQ(edge, (std::vector<double>{3, 2, 1, 1, 2, 3}));
  const auto site = extend_symmetric(x, Extension::Site, Extension::Site, 2, 0);
  EXPECT_EQ(site, (std::vector<double>{3, 2, 1, 2, 3}));
  const auto right = extend_symmetric(x, Extension::Edge, Extension::Site, 0, 2);
  EXPECT_EQ(right, (std::vector<double>{1, 2, 3, 2, 1}));
  // Padding longer than the signal keeps reflecting.
  const auto wide = extend_symmetric(x, Extension::Edge, Extension::Edge, 7, 0);
  EXPECT_EQ(wide, (std::vector<double>{1, 1, 2, 3, 3, 2, 1, 1, 2, 3}));
}

TEST(OpenBoundary, LengthTwelveMatchesReference) {
  twtest::Gen g(12);
  const auto x = g.vec(12);
  const auto ref = reference_open(x, spec_of(1));
  expect_bands_near(forward_open(x, spec_of(1)), ref.bands, 1e-12);
}

TEST(OpenBoundary, MatchesIndependentReferenceForAllClasses) {
  for (int type : {1, 2}) {
    for (std::size_t n = 36; n <= 62; ++n) {
      SCOPED_TRACE("type " + std::to_string(type) + ", n = " + std::to_string(n));
      twtest::Gen g(1000 * type + n);
      const auto x = g.vec(n, -2.0, 2.0);
      const auto ref = reference_open(x, spec_of(type));
      const Subbands1D got = forward_open(x, spec_of(type));
      expect_bands_near(got, ref.bands, 1e-12);
      const LevelPlan plan = plan_level(n, spec_of(type).cascade());
      EXPECT_EQ(ref.b_left.has_value(), plan.left == Extension::Edge);
      EXPECT_EQ(ref.b_right.has_value(), plan.right == Extension::Edge);
      if (ref.b_left) {
        EXPECT_LT(std::abs(*ref.b_left), 1e-13);
      }
      if (ref.b_right) {
        EXPECT_LT(std::abs(*ref.b_right), 1e-13);
      }
    }
  }
}

TEST(OpenBoundary, AgreesWithLibraryOracle) {
  for (int type : {1, 2}) {
    twtest::for_all(1000, 300 + type, [&](twtest::Gen& g, std::size_t) {
      const std::size_t n = g.size(36, 120);
      const auto x = g.vec(n);
      const auto& spec = spec_of(type);
      const LevelPlan plan = plan_level(n, spec.cascade());
      expect_bands_near(forward_open(x, spec, plan), symmetric_extension_oracle(x, spec, plan), 1e-12);
      const TrimmedBoundary t = trimmed_boundary_coefficients(x, spec, plan);
      EXPECT_EQ(t.left.has_value(), plan.left == Extension::Edge);
      EXPECT_EQ(t.right.has_value(), plan.right == Extension::Edge);
      if (t.left) {
        EXPECT_LT(std::abs(*t.left), 1e-13);
      }
      if (t.right) {
        EXPECT_LT(std::abs(*t.right), 1e-13);
      }
    });
  }
}

TEST(OpenBoundary, ConstantSignalHasNoWaveletContent) {
  for (int type : {1, 2}) {
    for (std::size_t n : {36u, 37u, 38u, 100u}) {
      const std::vector<double> x(n, 0.75);
      const Subbands1D b = forward_open(x, spec_of(type));
      EXPECT_LT(twtest::max_abs(b.wav_plus), 1e-8) << n;
      EXPECT_LT(twtest::max_abs(b.wav_minus), 1e-8) << n;
    }
  }
}

TEST(OpenBoundary, RejectsMismatchedPlan) {
  const std::vector<double> x(37, 1.0);
  EXPECT_THROW(forward_open(x, spec_of(1), plan_level(36, Cascade::SiteCentered)), InvalidArgument);
}

TEST(OpenBoundary, RoundTripAllLengths) {
  for (int type : {1, 2}) {
    twtest::Gen g(400 + type);
    for (std::size_t n = 36; n <= 200; ++n) {
      const auto x = g.vec(n, -5.0, 5.0);
      const auto back = inverse_open(forward_open(x, spec_of(type)), spec_of(type));
      ASSERT_LT(twtest::max_abs_diff(back, x), 1e-10) << "type " << type << " n " << n;
    }
  }
}

TEST(OpenBoundary, ZeroBandsGiveZeroSignal) {
  Subbands1D b;
  b.plan = plan_level(40, Cascade::SiteCentered);
  b.sca.assign(b.plan.n_sca, 0.0);
  b.wav_plus.assign(b.plan.n_wav_plus, 0.0);
  b.wav_minus.assign(b.plan.n_wav_minus, 0.0);
  EXPECT_EQ(twtest::max_abs(inverse_open(b, spec_of(1))), 0.0);
}

TEST(OpenBoundary, InverseColumnsAreDualVectors) {
  for (int type : {1, 2}) {
    for (std::size_t n : {36u, 37u, 38u, 51u}) {
      const Eigen::MatrixXd M = open_operator(n, spec_of(type));
      const Eigen::MatrixXd Minv = M.inverse();
      const TernaryTransform t(spec_of(type));
      std::vector<double> e(n, 0.0), out(n);
      for (std::size_t k = 0; k < n; ++k) {
        e[k] = 1.0;
        t.inverse(e, out);
        e[k] = 0.0;
        const Eigen::VectorXd col = Minv.col(static_cast<Eigen::Index>(k));
        EXPECT_LT(twtest::max_abs_diff(out, to_std(col)), 1e-10) << "type " << type << " n " << n << " k " << k;
      }
    }
  }
}

TEST(OpenBoundary, SubbandsFromLatticeMatchesForward) {
  const auto& spec = spec_of(1);
  twtest::Gen g(77);
  for (std::size_t n : {39u, 40u, 41u}) {
    const auto x = g.vec(n);
    const LevelPlan plan = plan_level(n, spec.cascade());
    std::vector<double> work = x;
    TernaryTransform(spec).analyze_in_place(work, plan.left, false);
    expect_bands_near(subbands_from_lattice(work, plan, spec.cascade()), forward_open(x, spec), 0.0 + 1e-15);
  }
}

// --- multi-level -------------------------------------------------------------

TEST(MultiLevel, LevelTwoInputLength) {
  std::vector<double> x(36, 0.0);
  std::iota(x.begin(), x.end(), 0.0);
  const auto pyr = forward_multi(x, spec_of(1), 2);
  ASSERT_GE(pyr.size(), 1u);
  EXPECT_EQ(pyr[0].sca.size(), 12u);
  // 12 is below the 36-sample multi-level minimum, so recursion stops here.
  EXPECT_EQ(pyr.size(), 1u);

  const auto plans = plan_levels(108, spec_of(1), 2);
  ASSERT_EQ(plans.size(), 2u);
  EXPECT_EQ(plans[1].n, 36u);
  EXPECT_EQ(plans[1].n_sca, 12u);
}

TEST(MultiLevel, PlansDependOnlyOnInitialLength) {
  twtest::Gen g(5);
  for (std::size_t n : {36u, 100u, 325u, 1000u}) {
    const auto x = g.vec(n);
    const auto pyr = forward_multi(x, spec_of(2), 99);
    const auto plans = plan_levels(n, spec_of(2), 99);
    ASSERT_EQ(pyr.size(), plans.size());
    for (std::size_t l = 0; l < pyr.size(); ++l) EXPECT_EQ(pyr[l].plan, plans[l]);
    EXPECT_LT(pyr.back().sca.size(), 36u);
  }
}

TEST(MultiLevel, ConstantSignalHasNoWaveletContent) {
  for (int type : {1, 2}) {
    const std::vector<double> x(500, -1.25);
    for (const auto& lvl : forward_multi(x, spec_of(type), 99)) {
      EXPECT_LT(twtest::max_abs(lvl.wav_plus), 1e-7);
      EXPECT_LT(twtest::max_abs(lvl.wav_minus), 1e-7);
    }
  }
}

TEST(MultiLevel, RoundTrip) {
  for (int type : {1, 2}) {
    twtest::Gen g(500 + type);
    for (std::size_t n = 36; n <= 200; ++n) {
      const auto x = g.vec(n, -5.0, 5.0);
      const auto back = inverse_multi(forward_multi(x, spec_of(type), 99), spec_of(type));
      ASSERT_LT(twtest::max_abs_diff(back, x), 1e-10) << "type " << type << " n " << n;
    }
  }
}

TEST(MultiLevel, ZeroPyramidAndDuals) {
  const auto& spec = spec_of(1);
  const std::size_t n = 120;
  auto pyr = forward_multi(std::vector<double>(n, 0.0), spec, 99);
  ASSERT_EQ(pyr.size(), 2u);
  EXPECT_EQ(twtest::max_abs(inverse_multi(pyr, spec)), 0.0);

  // Dense matrix of the full multi-level operator, coarsest scaling first.
  auto flatten_pyr = [](const std::vector<Subbands1D>& p) {
    std::vector<double> v(p.back().sca);
    for (std::size_t l = p.size(); l-- > 0;) {
      v.insert(v.end(), p[l].wav_plus.begin(), p[l].wav_plus.end());
      v.insert(v.end(), p[l].wav_minus.begin(), p[l].wav_minus.end());
    }
    return v;
  };
  Eigen::MatrixXd M(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const auto col = flatten_pyr(forward_multi(e, spec, 99));
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }
  const Eigen::MatrixXd Minv = M.inverse();
  // Unit coefficient in the coarsest scaling band and in a fine wavelet band.
  pyr.back().sca[2] = 1.0;
  EXPECT_LT(twtest::max_abs_diff(inverse_multi(pyr, spec), to_std(Minv.col(2))), 1e-10);
  pyr.back().sca[2] = 0.0;
  pyr[0].wav_minus[5] = 1.0;
  const std::size_t flat = n - pyr[0].wav_minus.size() + 5;
  EXPECT_LT(twtest::max_abs_diff(inverse_multi(pyr, spec), to_std(Minv.col(static_cast<Eigen::Index>(flat)))), 1e-10);
}

TEST(MultiLevel, TooShortAndMalformed) {
  EXPECT_THROW(forward_multi(std::vector<double>(35, 1.0), spec_of(1), 3), TooShort);
  EXPECT_THROW(inverse_multi({}, spec_of(1)), InvalidArgument);
}
