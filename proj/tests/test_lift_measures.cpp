#include "convexfn/corpus.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace convexfn;
using namespace testing_support;

namespace {

ConvZFunction box_function() {
  return ConvZFunction(PAFunction::indicator(Polytope::hull(square_corners(0, 1)), -1.0));
}

CorpusSpec small_corpus(BoundaryCondition b = BoundaryCondition::Free) {
  CorpusSpec s;
  s.min_sites = 3;
  s.max_sites = 12;
  s.boundary = b;
  return s;
}

std::vector<Vec> sorted_vertices(const Polytope& K) {
  std::vector<Vec> v = K.vertices();
  std::sort(v.begin(), v.end(), [](const Vec& a, const Vec& b) { return lex_less(a, b); });
  return v;
}

double vertex_set_distance(const Polytope& A, const Polytope& B) {
  double worst = 0;
  for (const Vec& a : A.vertices()) {
    double best = kInf;
    for (const Vec& b : B.vertices()) best = std::min(best, (a - b).norm());
    worst = std::max(worst, best);
  }
  for (const Vec& b : B.vertices()) {
    double best = kInf;
    for (const Vec& a : A.vertices()) best = std::min(best, (a - b).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

Vec random_sphere(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> G;
  Vec v(d);
  for (int k = 0; k < d; ++k) v[k] = G(rng);
  return v / v.norm();
}

RecFunction random_affine_phi(std::mt19937_64& rng, int n = 2, int pieces = 4) {
  AffineMax a;
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int i = 0; i < pieces; ++i) {
    Vec s(n);
    for (int k = 0; k < n; ++k) s[k] = U(rng);
    a.slopes.push_back(s);
    a.intercepts.push_back(U(rng));
  }
  return RecFunction::affine_max(a);
}

RecFunction radial_phi() { return RecFunction::radial(2, Profile({0, 0.5, 2}, {1.0, 0.8, 0.0})); }

}  // namespace

TEST(Lift, BoxAndIndicator) {
  const LiftedBody K = lift_body(box_function());
  EXPECT_EQ(K.body().vertices().size(), 8u);
  EXPECT_NEAR(K.body().volume(), 2.0, 1e-12);
  for (const Vec& v : K.body().vertices()) EXPECT_NEAR(std::abs(v[2]), 1.0, 1e-15);

  const Polytope tri = Polytope::hull({make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})});
  const LiftedBody S = lift_body(ConvZFunction(PAFunction::indicator(tri)));
  EXPECT_EQ(S.body().intrinsic_dim(), 2);
  EXPECT_EQ(S.body().vertices().size(), 3u);
  const ConvZFunction back = floor_function(S);
  EXPECT_EQ(back.evaluate(make_vec({0.2, 0.2})), 0.0);
  EXPECT_EQ(back.evaluate(make_vec({0.8, 0.8})), kInf);
}

TEST(Lift, RejectsPositiveAndAsymmetric) {
  EXPECT_THROW(ConvZFunction(PAFunction::indicator(Polytope::hull(square_corners(0, 1)), 0.1)), HypothesisError);
  std::vector<Vec> pts = cube_corners(0, 1);
  for (Vec& p : pts) p[2] -= 0.2;
  EXPECT_THROW(LiftedBody(Polytope::hull(pts)), InputError);
}

TEST(Lift, VolumeIsTwiceIntegral) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    EXPECT_NEAR(lift_body(u).body().volume(), 2.0 * vbar_np1(u), 1e-9);
  }
}

TEST(Lift, FloorRoundTrip) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    const LiftedBody K = lift_body(u);
    const ConvZFunction f = floor_function(K);
    EXPECT_LT(vertex_set_distance(lift_body(f).body(), K.body()), 1e-9);
    for (const Vec& x : random_points(rng, 2, 20)) {
      const double a = u.evaluate(x), b = f.evaluate(x);
      if (std::isinf(a) || std::isinf(b))
        EXPECT_EQ(std::isinf(a), std::isinf(b)) << "disagreement near the boundary only";
      else
        EXPECT_NEAR(a, b, 1e-9);
    }
  }
}

TEST(Lift, BallFloorIsLowerHemisphere) {
  std::vector<Vec> pts;
  for (double r : {0.0, 0.4, 0.8, 1.0})
    for (int k = 0; k < 24; ++k) {
      const double a = 2 * std::numbers::pi * k / 24;
      const double h = std::sqrt(std::max(0.0, 1 - r * r));
      pts.push_back(make_vec({r * std::cos(a), r * std::sin(a), h}));
      pts.push_back(make_vec({r * std::cos(a), r * std::sin(a), -h}));
    }
  const ConvZFunction f = floor_function(LiftedBody(Polytope::hull(pts)));
  for (const Vec& p : pts) EXPECT_NEAR(f.evaluate(p.head(2)), -std::abs(p[2]), 1e-9);
}

TEST(Gnomonic, IdentitiesAndErrors) {
  EXPECT_LT(gnomonic(make_vec({0, 0, -1})).norm(), 1e-15);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    Vec nu = random_sphere(rng, 3);
    if (nu[2] > 0) nu[2] = -nu[2];
    if (nu[2] > -1e-3) continue;
    const Vec g = gnomonic(nu);
    EXPECT_LT((gnomonic_inverse(g) - nu).norm(), 1e-12);
    EXPECT_NEAR(std::sqrt(1 + g.squaredNorm()), 1 / std::abs(nu[2]), 1e-12 / std::abs(nu[2]));
  }
  EXPECT_THROW(gnomonic(make_vec({1, 0, 0})), InputError);
  EXPECT_THROW(gnomonic(make_vec({0, 0, 1})), InputError);
}

TEST(Lift, ConjugateViaSupport) {
  EXPECT_NEAR(conjugate_via_support(box_function(), make_vec({0, 0})), 1.0, 1e-15);
  const Polytope K = Polytope::hull({make_vec({0, 0}), make_vec({2, 0}), make_vec({0, 1})});
  const ConvZFunction ind(PAFunction::indicator(K));
  std::mt19937_64 rng(14);
  for (const Vec& y : random_points(rng, 2, 50, -3, 3)) EXPECT_NEAR(conjugate_via_support(ind, y), K.support(y), 1e-12);
  for (int trial = 0; trial < 30; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    for (const Vec& y : random_points(rng, 2, 100, -3, 3))
      EXPECT_NEAR(conjugate_via_support(u, y), conjugate_value(u.fn(), y), 1e-9);
  }
}

TEST(TildeIntegrand, ConjugateGivesSupportFunction) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 5; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    const TildeIntegrand t(conjugate(u.fn()));
    const Polytope K = lift_body(u).body();
    for (int i = 0; i < 1000; ++i) {
      const Vec nu = random_sphere(rng, 3);
      EXPECT_NEAR(t(nu), K.support(nu), 1e-9);
    }
    for (const Vec& z : {make_vec({1, 0, 0}), make_vec({0.6, -0.8, 0})}) EXPECT_NEAR(t(z), K.support(z), 1e-9);
  }
}

TEST(TildeIntegrand, SymmetryAndEquator) {
  std::mt19937_64 rng(16);
  const TildeIntegrand r(radial_phi());
  const TildeIntegrand a(random_affine_phi(rng));
  for (int i = 0; i < 300; ++i) {
    const Vec nu = random_sphere(rng, 3);
    EXPECT_EQ(r(nu), r(reflect_vertical(nu)));
    EXPECT_EQ(a(nu), a(reflect_vertical(nu)));
    Vec flat = nu;
    flat[2] = 0;
    flat.normalize();
    if (std::abs(nu[2]) < 0.1) {
      EXPECT_EQ(r(nu), 0.0);
    }
    Vec near = flat;
    near[2] = -1e-7;
    near.normalize();
    EXPECT_NEAR(a(near), a(flat), 1e-5);
  }
}

TEST(Lift, AdditivityOfLifts) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const ConvZFunction u1 = random_convz(small_corpus(), rng), u2 = random_convz(small_corpus(), rng);
    const double lambdas[] = {0.0, 0.3, 1.0, 2.0};
    const double l1 = lambdas[trial % 4], l2 = lambdas[(trial / 4) % 4];
    const ConvZFunction w(epi_combination({u1.fn(), u2.fn()}, {l1, l2}));
    const Polytope lhs = lift_body(w).body();
    const Polytope rhs = minkowski_combination({lift_body(u1).body(), lift_body(u2).body()}, {l1, l2});
    EXPECT_LT(vertex_set_distance(lhs, rhs), 1e-9) << "lambda " << l1 << ", " << l2;
    if (l1 > 0 && l2 > 0) {
      EXPECT_EQ(sorted_vertices(lhs).size(), sorted_vertices(rhs).size());
    }
  }
}

TEST(Lift, LowerFacetsMatchCells) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 100; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    for (const RecFunction& phi : {random_affine_phi(rng), radial_phi()}) {
      const auto f = [&](const Vec& y) { return phi(y); };
      EXPECT_NEAR(lower_facet_integral(u, f), ma_conjugate(u.fn()).integrate(f), 1e-9);
    }
  }
}

TEST(Lift, EquatorMatchesBoundaryMeasure) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    EXPECT_LT(measure_distance(equatorial_measure(u), boundary_measure(u), 1e-7), 1e-9);
  }
}

TEST(MaConjugate, Examples) {
  const AtomicMeasure m = ma_conjugate(box_function().fn());
  ASSERT_EQ(m.atoms().size(), 1u);
  EXPECT_LT(m.atoms()[0].point.norm(), 1e-15);
  EXPECT_NEAR(m.atoms()[0].mass, 1.0, 1e-15);

  const int mgon = 64;
  const double t = 0.5;
  const UtPair ut = make_ut(t, 2, mgon);
  const AtomicMeasure mu = ma_conjugate(ut.approx);
  EXPECT_NEAR(mu.total_mass(), ut.approx.domain().volume(), 1e-12);
  EXPECT_NEAR(mu.total_mass(), 0.5 * mgon * std::sin(2 * std::numbers::pi / mgon), 1e-12);
  for (const Atom& a : mu.atoms()) EXPECT_NEAR(a.point.norm(), t / std::cos(std::numbers::pi / mgon), 1e-12);
}

TEST(MaConjugate, TotalMassIsDomainVolume) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 100; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng);
    EXPECT_NEAR(ma_conjugate(u.fn()).total_mass(), u.fn().domain().volume(), 1e-12);
    const AtomicMeasure mu = ma_conjugate(u.fn());
    for (const Atom& a : mu.atoms()) EXPECT_GE(a.mass, 0.0);
  }
}

TEST(BoundaryMeasure, Examples) {
  const SphereMeasure s = boundary_measure(box_function());
  ASSERT_EQ(s.atoms().size(), 4u);
  for (const Vec& z : {make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1}), make_vec({0, -1})})
    EXPECT_NEAR(s.mass_at(z, 1e-9), 1.0, 1e-15);

  const PAFunction seg({make_vec({0, 0}), make_vec({2, 0}), make_vec({1, 0})}, {0.0, 0.0, -1.0});
  const SphereMeasure low = boundary_measure(seg);
  ASSERT_EQ(low.atoms().size(), 2u);
  EXPECT_NEAR(low.mass_at(make_vec({0, 1}), 1e-9), 1.0, 1e-12);
  EXPECT_NEAR(low.mass_at(make_vec({0, -1}), 1e-9), 1.0, 1e-12);

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(BoundaryCondition::Vanishing), rng);
    EXPECT_LT(boundary_measure(u).total_mass(), 1e-12);
  }
}

TEST(MixedMa, DiagonalSymmetryTranslation) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng), v = random_convz(small_corpus(), rng);
    EXPECT_LT(measure_distance(mixed_ma(std::vector<PAFunction>{u.fn(), u.fn()}), ma_conjugate(u.fn()), 1e-7), 1e-9);
    EXPECT_LT(measure_distance(mixed_boundary(std::vector<PAFunction>{u.fn(), u.fn()}), boundary_measure(u), 1e-7), 1e-9);
    const AtomicMeasure uv = mixed_ma(std::vector<PAFunction>{u.fn(), v.fn()});
    EXPECT_LT(measure_distance(uv, mixed_ma(std::vector<PAFunction>{v.fn(), u.fn()}), 1e-7), 1e-9);
    EXPECT_LT(measure_distance(uv, mixed_ma(std::vector<PAFunction>{u.fn().plus_constant(-0.7), v.fn()}), 1e-7), 1e-9);
    EXPECT_LT(measure_distance(mixed_boundary(std::vector<ConvZFunction>{u, v}), mixed_boundary(std::vector<ConvZFunction>{v, u}), 1e-7),
              1e-9);
    for (const Atom& a : uv.atoms()) EXPECT_GE(a.mass, -1e-12);
  }
}

TEST(MixedMa, Multilinearity) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const ConvZFunction a = random_convz(small_corpus(), rng), b = random_convz(small_corpus(), rng),
                        v = random_convz(small_corpus(), rng);
    const double lam = 0.4 + trial * 0.1;
    const PAFunction ab = epi_combination({a.fn(), b.fn()}, {lam, 1.0});
    AtomicMeasure expect(2);
    expect.add(mixed_ma(std::vector<PAFunction>{a.fn(), v.fn()}), lam);
    expect.add(mixed_ma(std::vector<PAFunction>{b.fn(), v.fn()}), 1.0);
    EXPECT_LT(measure_distance(mixed_ma(std::vector<PAFunction>{ab, v.fn()}), expect.merged(1e-9), 1e-7), 1e-9);
  }
}

TEST(MixedMa, LowerHemisphereOfLiftedMixedMeasure) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(), rng), v = random_convz(small_corpus(), rng);
    const SphereMeasure S = mixed_area_measure({lift_body(u).body(), lift_body(v).body()}, 3);
    const RecFunction phi = random_affine_phi(rng);
    double lifted = 0;
    SphereMeasure equator(2);
    for (const Atom& a : S.atoms()) {
      if (a.point[2] < -1e-12) {
        const Vec g = gnomonic(a.point);
        lifted += phi(g) / std::sqrt(1 + g.squaredNorm()) * a.mass;
      } else if (std::abs(a.point[2]) <= 1e-12) {
        equator.add(a.point.head(2).normalized(), 0.5 * a.mass);
      }
    }
    EXPECT_NEAR(lifted, mixed_ma(std::vector<ConvZFunction>{u, v}).integrate([&](const Vec& y) { return phi(y); }), 1e-9);
    EXPECT_LT(measure_distance(equator.merged(1e-9), mixed_boundary(std::vector<ConvZFunction>{u, v}), 1e-7), 1e-9);
  }
}

TEST(MixedBoundary, VanishesForVanishingFunctions) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(BoundaryCondition::Vanishing), rng);
    const ConvZFunction v = random_convz(small_corpus(BoundaryCondition::Vanishing), rng);
    EXPECT_LT(mixed_boundary(std::vector<ConvZFunction>{u, v}).total_variation(), 1e-9);
  }
  EXPECT_THROW(mixed_boundary(std::vector<PAFunction>{PAFunction::indicator(Polytope::hull(square_corners(0, 1)), 0.5),
                                                      PAFunction::indicator(Polytope::hull(square_corners(0, 1)))}),
               HypothesisError);
}

TEST(Integrate, TotalsLinearAndErrors) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    const ConvZFunction u = random_convz(small_corpus(BoundaryCondition::Vanishing), rng);
    const AtomicMeasure m = ma_conjugate(u.fn());
    EXPECT_NEAR(integrate(m, [](const Vec&) { return 1.0; }), m.total_mass(), 1e-15);
    const Vec w = random_sphere(rng, 2);
    EXPECT_NEAR(integrate(m, [&](const Vec& y) { return w.dot(y); }), 0.0, 1e-9);
  }
  const AtomicMeasure m = ma_conjugate(box_function().fn());
  EXPECT_THROW(integrate(m, [](const Vec&) { return kInf; }), InputError);
  EXPECT_THROW(integrate(m, [](const Vec&) { return std::nan(""); }), InputError);
}

TEST(Integrate, RadialDensityAgainstConeApproximant) {
  const Profile alpha = Profile::hat();
  const UtPair ut = make_ut(0.5, 2, 128);
  const double value = integrate(ma_conjugate(ut.approx), [&](const Vec& y) { return alpha(y.norm()); });
  EXPECT_NEAR(value, alpha(0.5) * kappa(2), 0.01 * alpha(0.5) * kappa(2));
}

TEST(CauchyKubota, RadialFunctionsMatchClosedForm) {
  const Profile alpha({0, 0.3, 1.2}, {1.0, 0.9, 0.0});
  for (double t : {0.2, 0.5, 0.9}) {
    const UtPair ut = make_ut(t, 2, 128);
    const PAFunction& u = ut.approx;
    const double exact = fiv_radial(1, alpha, ut.exact);
    EXPECT_NEAR(fiv_cauchy_kubota(alpha, u, 180), exact, 0.01 * exact);
    const PAFunction ball = PAFunction::indicator(polygonal_ball(2, 128));
    const double mixed = mixed_ma(std::vector<PAFunction>{u, ball}).integrate([&](const Vec& y) { return alpha(y.norm()); });
    EXPECT_NEAR(mixed / kappa(2), fiv_cauchy_kubota(alpha, u, 180) / kappa(2), 0.01 * exact / kappa(2));
  }
}
