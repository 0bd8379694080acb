#include "convexfn/corpus.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace convexfn;
using namespace testing_support;

namespace {

constexpr double pi = std::numbers::pi;

ConvZFunction box_function() {
  return ConvZFunction(PAFunction::indicator(Polytope::hull(square_corners(0, 1)), -1.0));
}

CorpusSpec small_corpus(BoundaryCondition b = BoundaryCondition::Free, int max_sites = 10) {
  CorpusSpec s;
  s.max_sites = max_sites;
  s.boundary = b;
  return s;
}

Profile ramp() { return Profile({0, 1}, {1, 0}); }

}  // namespace

TEST(BallConstants, ValuesAndRecurrence) {
  EXPECT_DOUBLE_EQ(BallConstants::kappa(0), 1.0);
  EXPECT_DOUBLE_EQ(BallConstants::kappa(1), 2.0);
  EXPECT_NEAR(BallConstants::kappa(2), pi, 1e-15);
  EXPECT_NEAR(BallConstants::kappa(3), 4 * pi / 3, 1e-15);
  for (int j = 1; j <= 6; ++j) EXPECT_LT(rel_err(BallConstants::kappa_recurrence(j), BallConstants::kappa(j)), 1e-12);
}

TEST(Vbar, ExamplesAndScaling) {
  EXPECT_NEAR(vbar_np1(box_function()), 1.0, 1e-15);
  EXPECT_EQ(vbar_np1(ConvZFunction(PAFunction::indicator(Polytope::hull(square_corners(0, 1))))), 0.0);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    for (double lam : {0.5, 2.0}) EXPECT_LT(rel_err(vbar_np1(epi_scale(lam, u)), std::pow(lam, 3) * vbar_np1(u)), 1e-12);
  }
}

TEST(ZPhi, BoxConjugate) {
  const ConvZFunction u = box_function();
  EXPECT_NEAR(z_phi(conjugate(u.fn()), u), 3.0, 1e-12);
  EXPECT_NEAR(z_phi_lifted(TildeIntegrand(conjugate(u.fn())), u), 3.0, 1e-12);
}

TEST(ZPhi, ConjugateGivesScaledVolume) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    EXPECT_NEAR(z_phi(conjugate(u.fn()), u), 3 * vbar_np1(u), 1e-9);
  }
}

TEST(ZPhi, MatchesLiftedIntegral) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int trial = 0; trial < 60; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    AffineMax a;
    for (int i = 0; i < 3; ++i) {
      a.slopes.push_back(make_vec({U(rng), U(rng)}));
      a.intercepts.push_back(U(rng));
    }
    for (const RecFunction& phi : {RecFunction::affine_max(a), RecFunction::radial(2, ramp()), RecFunction::sum(a, ramp())})
      EXPECT_NEAR(z_phi(phi, u), z_phi_lifted(TildeIntegrand(phi), u), 1e-9);
  }
}

TEST(ZPhi, RadialDensityIsTopIntrinsicVolume) {
  std::mt19937_64 rng(34);
  const Profile alpha({0, 0.5, 2}, {1.0, 0.6, 0.0});
  for (int trial = 0; trial < 30; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    EXPECT_NEAR(z_phi(RecFunction::radial(2, alpha), u), fiv_top(alpha, u.fn()), 1e-12);
  }
}

TEST(FivRadial, ConeClosedForm) {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> U(0, 1.5);
  for (int n = 2; n <= 6; ++n)
    for (int j = 1; j <= n; ++j)
      for (int trial = 0; trial < 20; ++trial) {
        const double t = U(rng);
        const Profile alpha({0, 0.4, 1.0 + U(rng)}, {1.0 + U(rng), 0.5 * U(rng), 0.0});
        const double expect = kappa(n) / kappa(n - j) * binomial(n, j) * alpha(t);
        const double got = fiv_radial(j, alpha, make_ut(t, n, 8).exact);
        if (expect == 0)
          EXPECT_EQ(got, 0.0);
        else
          EXPECT_LT(rel_err(got, expect), 1e-12);
      }
  EXPECT_NEAR(fiv_radial(1, ramp(), make_ut(0.5, 2).exact), pi / 2, 1e-14);
  EXPECT_THROW(fiv_radial(0, ramp(), make_ut(0.5, 2).exact), InputError);
  EXPECT_THROW(fiv_radial(3, ramp(), make_ut(0.5, 2).exact), InputError);
}

TEST(FivRadial, TopDegreeMatchesPolygonalPath) {
  const Profile alpha({0, 0.3, 1.5}, {1.0, 0.8, 0.0});
  const RadialFunction u(2, {0, 0.3, 0.7, 1.0}, {0, 0.06, 0.26, 0.56});
  const double exact = fiv_radial(2, alpha, u);
  EXPECT_NEAR(fiv_top(alpha, u.pa_approximant(128)), exact, 0.01 * exact);
}

TEST(FivSteiner, TopAndBottomCoefficients) {
  std::mt19937_64 rng(36);
  const Profile alpha({0, 0.5, 3}, {0.9, 0.7, 0.0});
  for (int trial = 0; trial < 10; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    EXPECT_NEAR(fiv_steiner_extraction(2, alpha, u.fn(), 32).value, fiv_top(alpha, u.fn()), 1e-6);
    const SteinerExtraction bottom = fiv_steiner_extraction(0, alpha, u.fn(), 32);
    EXPECT_NEAR(bottom.value, alpha(0) * (1 - bottom.ball_deficit), 1e-6);
    EXPECT_NEAR(bottom.value, alpha(0), alpha(0) * bottom.ball_deficit + 1e-9);
  }
  EXPECT_THROW(fiv_steiner_extraction(1, alpha, box_function().fn(), 32, {0.5, 0.5, 1.0}), InputError);
  EXPECT_THROW(fiv_steiner_extraction(3, alpha, box_function().fn(), 32), InputError);
}

TEST(FivSteiner, RadialAgreesWithClosedForm) {
  const Profile alpha({0, 1}, {1, 0});
  for (double t : {0.25, 0.5, 0.75}) {
    const UtPair ut = make_ut(t, 2, 128);
    const SteinerExtraction s = fiv_steiner_extraction(1, alpha, ut.approx, 128);
    const double exact = fiv_radial(1, alpha, ut.exact);
    EXPECT_NEAR(s.value, exact, 0.01 * exact);
    EXPECT_GT(s.ball_deficit, 0.0);
    EXPECT_LT(s.ball_deficit, 1e-3);
  }
}

TEST(FivSteiner, EpiHomogeneity) {
  std::mt19937_64 rng(37);
  const Profile alpha({0, 0.5, 3}, {0.9, 0.7, 0.0});
  for (int trial = 0; trial < 5; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    const SteinerExtraction base = fiv_steiner_all(alpha, u.fn(), 32);
    for (double lam : {0.5, 1.7}) {
      const SteinerExtraction s = fiv_steiner_all(alpha, epi_scale(lam, u).fn(), 32);
      for (int p = 0; p <= 2; ++p) {
        const double expect = std::pow(lam, 2 - p) * base.coefficients[p];
        EXPECT_NEAR(s.coefficients[p], expect, 1e-6 * std::max(1.0, std::abs(expect)));
      }
    }
  }
}

TEST(Fiv, NonNegativeForNonNegativeDensity) {
  std::mt19937_64 rng(38);
  const Profile alpha({0, 0.2, 0.9}, {0.3, 1.0, 0.0});
  for (int trial = 0; trial < 20; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    for (double c : fiv_steiner_all(alpha, u.fn(), 32).coefficients) EXPECT_GE(c, -1e-9);
  }
}

TEST(Fiv, IndicatorTopDegree) {
  const Polytope K = Polytope::hull({make_vec({0, 0}), make_vec({2, 0}), make_vec({1, 3}), make_vec({0, 1})});
  const Profile alpha({0, 1}, {0.7, 0});
  EXPECT_NEAR(fiv_top(alpha, PAFunction::indicator(K)), 0.7 * K.volume(), 1e-14);
}

TEST(CauchyKubota, AgreesWithSteinerPath) {
  std::mt19937_64 rng(39);
  const Profile alpha({0, 0.5, 3}, {0.9, 0.7, 0.0});
  for (int trial = 0; trial < 5; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    const double ck = fiv_cauchy_kubota(alpha, u.fn(), 720);
    const double st = fiv_steiner_extraction(1, alpha, u.fn(), 256).value;
    EXPECT_NEAR(ck, st, 0.01 * st);
  }
}

TEST(VbarMixed, DiagonalSymmetryRepresentation) {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 30; ++trial) {
    const ConvZFunction a = random_convz(small_corpus(), rng), b = random_convz(small_corpus(), rng),
                        c = random_convz(small_corpus(), rng);
    EXPECT_NEAR(vbar_mixed({a, a, a}), vbar_np1(a), 1e-9);
    const double abc = vbar_mixed({a, b, c});
    EXPECT_NEAR(vbar_mixed({c, a, b}), abc, 1e-9);
    EXPECT_NEAR(vbar_mixed({b, c, a}), abc, 1e-9);
    EXPECT_NEAR(vbar_mixed_rep({a, b, c}), abc, 1e-9);
    EXPECT_NEAR(vbar_mixed_rep({b, a, c}), abc, 1e-9);
  }
}

TEST(VbarMixed, HandCheckedRepresentation) {
  const Polytope sq = Polytope::hull(square_corners(0, 1));
  const Polytope tri = Polytope::hull({make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})});
  const ConvZFunction u0(PAFunction::indicator(sq, -1.0));
  const ConvZFunction i1(PAFunction::indicator(tri)), i2(PAFunction::indicator(sq));
  // MA*(I_tri, I_sq) has mass V(tri, sq) = 1 at the origin where u0* = 1; the
  // boundary term vanishes, and the lifts give the same value.
  EXPECT_NEAR(vbar_mixed_rep({u0, i1, i2}), mixed_volume({tri, sq}) / 3, 1e-12);
  EXPECT_NEAR(vbar_mixed({u0, i1, i2}), mixed_volume({tri, sq}) / 3, 1e-12);
}

TEST(VbarMixed, PolynomialInEpiCombination) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng), v = random_convz(small_corpus(), rng);
    const double c[4] = {vbar_mixed({v, v, v}), vbar_mixed({u, v, v}), vbar_mixed({u, u, v}), vbar_mixed({u, u, u})};
    for (auto [l1, l2] : {std::pair{0.3, 0.9}, std::pair{1.0, 1.0}, std::pair{2.0, 0.4}, std::pair{0.0, 1.5}}) {
      const ConvZFunction w(epi_combination({u.fn(), v.fn()}, {l1, l2}));
      double expect = 0;
      for (int i = 0; i <= 3; ++i) expect += binomial(3, i) * std::pow(l1, i) * std::pow(l2, 3 - i) * c[i];
      EXPECT_NEAR(vbar_np1(w), expect, 1e-9 * std::max(1.0, expect));
    }
  }
}

TEST(VbarMixed, AlexandrovFenchel) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const ConvZFunction a = random_convz(small_corpus(), rng), b = random_convz(small_corpus(), rng),
                        c = random_convz(small_corpus(), rng);
    const double lhs = std::pow(vbar_mixed({a, b, c}), 2), rhs = vbar_mixed({a, a, c}) * vbar_mixed({b, b, c});
    EXPECT_GE(lhs, rhs - 1e-9 * std::max(1.0, lhs));
  }
}

TEST(VbarMixed, RootConcavityAlongCombination) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 4; ++trial) {
    const ConvZFunction u0 = random_convz(small_corpus(), rng), u1 = random_convz(small_corpus(), rng),
                        v = random_convz(small_corpus(), rng);
    for (int m = 1; m <= 3; ++m) {
      std::vector<double> f;
      for (int k = 0; k <= 4; ++k) {
        const double l = k / 4.0;
        const ConvZFunction ul(epi_combination({u0.fn(), u1.fn()}, {1 - l, l}));
        std::vector<ConvZFunction> args(static_cast<size_t>(m), ul);
        while (args.size() < 3) args.push_back(v);
        f.push_back(std::pow(vbar_mixed(args), 1.0 / m));
      }
      for (int k = 1; k < 4; ++k) EXPECT_GE(f[k], 0.5 * (f[k - 1] + f[k + 1]) - 1e-9) << "m = " << m;
    }
  }
}

TEST(MixedMaInequality, EqualityInequalityAndSymmetry) {
  std::mt19937_64 rng(44);
  const CorpusSpec spec = small_corpus(BoundaryCondition::Vanishing);
  const ConvZFunction u = random_convz(spec, rng);
  const Report eq = mixed_ma_inequality_check({u, u, u});
  EXPECT_TRUE(eq.holds());
  EXPECT_NEAR(eq.at("gap"), 0.0, 1e-9 * eq.at("lhs"));
  for (int trial = 0; trial < 30; ++trial) {
    const Report r = mixed_ma_inequality_check({random_convz(spec, rng), random_convz(spec, rng), random_convz(spec, rng)}, 44);
    EXPECT_TRUE(r.holds()) << r.note;
    EXPECT_GE(r.at("gap"), -1e-9 * r.at("lhs"));
    EXPECT_LE(r.at("asymmetry"), 1e-9 * std::max(1.0, r.at("integral")));
  }
  const Report bad = mixed_ma_inequality_check({box_function(), u, u});
  EXPECT_EQ(bad.verdict, Verdict::HypothesisUnmet);
}

TEST(MixedMaInequality, BoundaryTermVanishes) {
  std::mt19937_64 rng(45);
  const CorpusSpec spec = small_corpus(BoundaryCondition::Vanishing);
  for (int trial = 0; trial < 10; ++trial) {
    const ConvZFunction a = random_convz(spec, rng), b = random_convz(spec, rng), c = random_convz(spec, rng);
    EXPECT_NEAR(vbar_mixed_rep({a, b, c}), conjugate_mixed_integral({a, b, c}) / 3, 1e-12);
  }
}

TEST(Corpus, HonoursSpec) {
  CorpusSpec spec;
  spec.seed = 9;
  const ConvZFunction a = random_convz(spec), b = random_convz(spec);
  EXPECT_EQ(a.fn().points().size(), b.fn().points().size());
  for (size_t i = 0; i < a.fn().points().size(); ++i) EXPECT_EQ(a.fn().values()[i], b.fn().values()[i]);
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 50; ++trial) {
    const ConvZFunction v = random_convz(small_corpus(BoundaryCondition::Vanishing, 40), rng);
    EXPECT_LE(boundary_max_abs(v.fn()), 1e-9);
    EXPECT_LE(v.fn().points().size(), 40u);
    EXPECT_GE(v.fn().points().size(), 3u);
    const ConvZFunction c = random_convz(small_corpus(BoundaryCondition::Constant), rng);
    EXPECT_LE(boundary_spread(c.fn()), 1e-9);
  }
  EXPECT_NE(derive_seed(7, 0), derive_seed(7, 1));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}
