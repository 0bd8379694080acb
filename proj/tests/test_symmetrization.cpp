#include "convexfn/corpus.hpp"
#include "convexfn/symmetrization.hpp"
#include "convexfn/wulff.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace convexfn;
using namespace testing_support;

namespace {

CorpusSpec corpus(BoundaryCondition b = BoundaryCondition::Free) {
  CorpusSpec s;
  s.max_sites = 12;
  s.boundary = b;
  return s;
}

Vec mirror(const Vec& x, const Vec& z) { return x - 2 * z.dot(x) * z; }

ConvZFunction mirrored(const ConvZFunction& u, const Vec& z) {
  std::vector<Vec> p;
  for (const Vec& x : u.fn().points()) p.push_back(mirror(x, z));
  return ConvZFunction(PAFunction(p, u.fn().values()));
}

double sup_distance(const PAFunction& a, const PAFunction& b, std::mt19937_64& rng) {
  double worst = 0;
  for (const Vec& x : random_points(rng, a.n(), 200)) {
    const double u = a.evaluate(x), v = b.evaluate(x);
    if (std::isinf(u) != std::isinf(v)) {
      if (a.domain().contains(x, -1e-7) || b.domain().contains(x, -1e-7)) return kInf;
      continue;
    }
    if (std::isfinite(u)) worst = std::max(worst, std::abs(u - v));
  }
  return worst;
}

}  // namespace

TEST(ChordMovement, PlanarSweepMatchesChordRoute) {
  std::mt19937_64 rng(70);
  std::uniform_real_distribution<double> A(0, 2 * std::numbers::pi);
  for (int i = 0; i < 200; ++i) {
    const Polytope K = i % 10 == 0 ? Polytope::hull(square_corners(0, 1)) : Polytope::hull(random_points(rng, 2, 3 + i % 15));
    const Vec z = i % 10 == 0 ? make_vec({1, 0}) : angle_direction(A(rng));
    const double t = (i % 7) / 6.0;
    std::vector<Vec> q;
    for (const Vec& b : detail::chord_breakpoints(K, z)) {
      const auto [lo, hi] = detail::chord(K, z, b);
      q.push_back(b + (lo - t * (lo + hi)) * z);
      q.push_back(b + (hi - t * (lo + hi)) * z);
    }
    const Polytope M = chord_movement_body(K, z, t);
    EXPECT_LT(detail::vertex_distance(M, Polytope::hull(q)), 1e-12);
    EXPECT_NEAR(M.volume(), K.volume(), 1e-12);
  }
}

TEST(SteinerSymmetralFn, SymmetricInputIsFixed) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec z = angle_direction(0.4 * trial);
    const ConvZFunction u = random_convz(corpus(), rng);
    std::vector<Vec> p = u.fn().points();
    std::vector<double> v = u.fn().values();
    for (size_t i = 0, m = p.size(); i < m; ++i) {
      p.push_back(mirror(p[i], z));
      v.push_back(v[i]);
    }
    const ConvZFunction s(PAFunction(p, v));
    EXPECT_LT(sup_distance(steiner_symmetral_fn(s, z).fn(), s.fn(), rng), 1e-9);
  }
}

TEST(SteinerSymmetralFn, PreservesLevelVolumesAndMass) {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 30; ++trial) {
    const ConvZFunction u = random_convz(corpus(), rng);
    const Vec z = angle_direction(0.9 * trial);
    const ConvZFunction s = steiner_symmetral_fn(u, z);
    EXPECT_NEAR(s.fn().min_value(), u.fn().min_value(), 1e-12);
    for (int k = 0; k < 10; ++k) {
      const double level = u.fn().min_value() + (u.fn().max_value() - u.fn().min_value()) * (k + 0.5) / 10;
      EXPECT_NEAR(level_volume(s.fn(), level), level_volume(u.fn(), level), 1e-10);
    }
    EXPECT_NEAR(vbar_np1(s), vbar_np1(u), 1e-10);
    EXPECT_LT(detail::vertex_distance(s.fn().domain(), steiner_symmetral_body(u.fn().domain(), z)), 1e-9);
    EXPECT_LT(sup_distance(s.fn(), mirrored(s, z).fn(), rng), 1e-9);
  }
}

TEST(SteinerSymmetralFn, VanishingBoundaryIsKept) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const ConvZFunction u = random_convz(corpus(BoundaryCondition::Vanishing), rng);
    const Vec z = angle_direction(0.3 + trial);
    for (double t : {0.25, 0.5, 0.75}) EXPECT_LE(boundary_max_abs(chord_movement_fn(u, z, t).fn()), 1e-9);
    const ConvZFunction c = random_convz(corpus(BoundaryCondition::Constant), rng);
    EXPECT_LE(boundary_spread(steiner_symmetral_fn(c, z).fn()), 1e-9);
  }
}

TEST(ShadowTrajectory, EndpointsAndLevelSets) {
  std::mt19937_64 rng(74);
  for (int trial = 0; trial < 10; ++trial) {
    const ConvZFunction u = random_convz(corpus(), rng);
    const Vec z = angle_direction(1.3 * trial);
    const ShadowTrajectory s = shadow_trajectory(u, z, 5);
    EXPECT_LT(sup_distance(s.samples.front().fn(), u.fn(), rng), 1e-9);
    EXPECT_LT(sup_distance(s.samples.back().fn(), mirrored(u, z).fn(), rng), 1e-9);
    for (size_t k = 0; k < s.ts.size(); ++k) {
      for (int j = 1; j < 4; ++j) {
        const double level = u.fn().min_value() + (u.fn().max_value() - u.fn().min_value()) * j / 4;
        const Polytope moved = chord_movement_body(*level_set(u.fn(), level), z, s.ts[k]);
        EXPECT_LT(detail::vertex_distance(*level_set(s.samples[k].fn(), level), moved), 1e-9);
      }
    }
  }
}

TEST(Rearrangement, Examples) {
  const ConvZFunction box(PAFunction::indicator(Polytope::hull(square_corners(0, 1)), -1.0));
  const RadialFunction b = rearrangement(box);
  EXPECT_NEAR(b.radius(), 1 / std::sqrt(std::numbers::pi), 1e-12);
  EXPECT_EQ(b.min_value(), -1.0);
  EXPECT_EQ(b.max_value(), -1.0);

  const RadialFunction cone(2, {0.0, 0.5, 1.0}, {-1.0, -0.8, -0.2});
  const RadialFunction back = rearrangement(cone.pa_approximant(512));
  for (double r = 0; r <= 0.99; r += 0.03) EXPECT_NEAR(back.profile(r), cone.profile(r), 2e-3);

  std::mt19937_64 rng(75);
  for (int trial = 0; trial < 30; ++trial) {
    const ConvZFunction u = random_convz(corpus(), rng);
    const RadialFunction ub = rearrangement(u);
    EXPECT_EQ(ub.min_value(), u.fn().min_value());
    EXPECT_NEAR(kappa(2) * ub.radius() * ub.radius(), u.fn().domain().volume(), 1e-12);
    for (double s : u.fn().values()) EXPECT_NEAR(level_volume(ub, s), level_volume(u.fn(), s), 1e-9);
    for (size_t k = 1; k < ub.values().size(); ++k) {
      const double s = ub.values()[k];
      const double exact = level_volume(u.fn(), s);
      EXPECT_LE(std::abs(level_volume(ub, s) - exact), 5e-3 * exact + 1e-12);
    }
  }
}

TEST(Rearrangement, OneDimensional) {
  const ConvZFunction u(PAFunction({make_vec({-1}), make_vec({0.2}), make_vec({2})}, {0.0, -1.0, 0.0}));
  const RadialFunction ub = rearrangement(u);
  EXPECT_NEAR(ub.radius(), 1.5, 1e-12);
  EXPECT_NEAR(ub.profile(0), -1.0, 1e-12);
  EXPECT_NEAR(ub.profile(0.75), -0.5, 1e-12);
}

TEST(RadialConjugateIntegral, MatchesPolytopalPath) {
  const RadialFunction u(2, {0.0, 0.4, 1.0}, {-1.0, -0.8, 0.0});
  const RadialFunction w(2, {0.0, 0.7, 1.5}, {-0.5, -0.2, 1.0});
  const double exact = radial_conjugate_integral(w, u);
  const double pa = ma_conjugate(u.pa_approximant(512)).integrate(conjugate_affine(w.pa_approximant(512)));
  EXPECT_NEAR(pa, exact, 1e-3 * std::abs(exact));
}

TEST(TruncateW, Examples) {
  std::mt19937_64 rng(76);
  const ConvZFunction w = random_convz(corpus(), rng);
  const PAFunction same = truncate_w(w.fn(), w.fn().max_value() + 1);
  EXPECT_NEAR(same.domain().volume(), w.fn().domain().volume(), 1e-12);
  EXPECT_THROW(truncate_w(w.fn(), w.fn().min_value() - 1), GeometryError);

  const double slope = 2.0, j = 1.0;
  const PAFunction cone = RadialFunction(2, {0.0, 3.0}, {0.0, 3 * slope}).pa_approximant(64);
  const PAFunction cut = truncate_w(cone, j);
  EXPECT_NEAR(cut.domain().support(make_vec({1, 0})), j / slope, 1e-12);

  for (int trial = 0; trial < 10; ++trial) {
    const ConvZFunction f = random_convz(corpus(), rng);
    const double level = 0.5 * (f.fn().min_value() + f.fn().max_value());
    const PAFunction t = truncate_w(f.fn(), level);
    for (const Vec& x : random_points(rng, 2, 100)) {
      if (f.fn().domain().contains(x)) {
        EXPECT_GE(t.evaluate(x), f.evaluate(x) - 1e-12);
      }
    }
    for (const Vec& y : random_points(rng, 2, 100, -5, 5)) EXPECT_LE(conjugate_value(t, y), conjugate_value(f.fn(), y) + 1e-12);
  }
}

TEST(ShadowConvexity, SymmetricTuplesAreConstant) {
  const Vec z = make_vec({1, 0});
  const ConvZFunction a(PAFunction::indicator(Polytope::hull(square_corners(-1, 1)), -1.0));
  const ConvZFunction b(RadialFunction(2, {0.0, 1.0}, {-1.0, 0.0}).pa_approximant(16));
  std::vector<ShadowTrajectory> tr{shadow_trajectory(b, z), shadow_trajectory(a, z), shadow_trajectory(a, z)};
  const Report r = shadow_convexity_check(tr);
  EXPECT_TRUE(r.holds()) << r.note;
  EXPECT_NEAR(r.at("integral_t0"), r.at("integral_half"), 1e-12);
  EXPECT_NEAR(r.at("integral_t0"), r.at("integral_t1"), 1e-12);
}

TEST(ShadowConvexity, RandomTuples) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> A(0, std::numbers::pi);
  for (int trial = 0; trial < 25; ++trial) {
    const Vec z = angle_direction(A(rng));
    std::vector<ShadowTrajectory> tr{shadow_trajectory(random_convz(corpus(), rng), z),
                                     shadow_trajectory(random_convz(corpus(BoundaryCondition::Constant), rng), z),
                                     shadow_trajectory(random_convz(corpus(BoundaryCondition::Vanishing), rng), z)};
    const Report r = shadow_convexity_check(tr);
    EXPECT_TRUE(r.holds()) << r.note << " " << r.at("integral_min_second_difference");
    EXPECT_NEAR(r.at("integral_t0"), r.at("integral_t1"), 1e-9 * std::max(1.0, std::abs(r.at("integral_t0"))));
  }
}

TEST(ShadowConvexity, NonConstantBoundaryIsUnmet) {
  std::mt19937_64 rng(78);
  ConvZFunction bumpy;
  do bumpy = random_convz(corpus(), rng);
  while (boundary_spread(bumpy.fn()) < 1e-3);
  const Vec z = make_vec({0, 1});
  const ConvZFunction u = random_convz(corpus(), rng);
  std::vector<ShadowTrajectory> tr{shadow_trajectory(u, z), shadow_trajectory(bumpy, z), shadow_trajectory(u, z)};
  EXPECT_EQ(shadow_convexity_check(tr).verdict, Verdict::HypothesisUnmet);
}

TEST(ShadowMixedVolume, RandomBodies) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 2;
    std::vector<Polytope> bodies;
    for (int i = 0; i < d; ++i) bodies.push_back(Polytope::hull(random_points(rng, d, 4 + i * 2)));
    Vec z = random_points(rng, d, 1).front().normalized();
    const Report r = chord_mixed_volume_check(bodies, z);
    EXPECT_TRUE(r.holds()) << r.at("min_second_difference");
    EXPECT_NEAR(r.at("v_t0"), r.at("v_t1"), 1e-9);
  }
}

TEST(PsChain, BoxGivesEqualities) {
  std::mt19937_64 rng(80);
  const ConvZFunction box(PAFunction::indicator(Polytope::hull(square_corners(0, 1)), -1.0));
  for (int trial = 0; trial < 5; ++trial) {
    const ConvZFunction w = random_convz(corpus(), rng);
    const Report r = ps_chain_check(w.fn(), box, angle_direction(0.5 * trial));
    EXPECT_TRUE(r.holds()) << r.note;
    EXPECT_NEAR(r.at("i1"), -w.fn().min_value(), 1e-12);
    EXPECT_NEAR(r.at("i2"), r.at("i1"), 1e-12);
    EXPECT_NEAR(r.at("i3"), r.at("i1"), 1e-12);
  }
}

TEST(PsChain, RadialInputsAreNearlyFixed) {
  const ConvZFunction u(RadialFunction(2, {0.0, 0.6, 1.0}, {-1.0, -0.7, -0.4}).pa_approximant(256));
  const PAFunction w = RadialFunction(2, {0.0, 0.5, 1.2}, {-0.3, -0.1, 0.6}).pa_approximant(256);
  const Report r = ps_chain_check(w, u, angle_direction(0.3));
  EXPECT_TRUE(r.holds()) << r.note;
  EXPECT_NEAR(r.at("i1"), r.at("i3"), 2e-3 * std::abs(r.at("i1")));
  EXPECT_NEAR(r.at("i2"), r.at("i3"), 2e-3 * std::abs(r.at("i1")));
}

TEST(PsChain, RandomAdmissiblePairs) {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 25; ++trial) {
    const ConvZFunction u = random_convz(corpus(BoundaryCondition::Constant), rng);
    const ConvZFunction w = random_convz(corpus(), rng);
    for (int k = 0; k < 4; ++k) {
      const Report r = ps_chain_check(w.fn(), u, angle_direction(std::numbers::pi * k / 4), trial);
      EXPECT_TRUE(r.holds()) << r.note << " " << r.at("i1") << " " << r.at("i2") << " " << r.at("i3");
      EXPECT_LE(r.at("gradient_mean"), 1e-9);
    }
  }
  const ConvZFunction bumpy = random_convz(corpus(), rng);
  if (boundary_spread(bumpy.fn()) > 1e-9) {
    EXPECT_EQ(ps_chain_check(bumpy.fn(), bumpy, make_vec({1, 0})).verdict, Verdict::HypothesisUnmet);
  }
}

TEST(IteratedSymmetrization, DeficitFallsBelowOnePercent) {
  std::mt19937_64 rng(82);
  for (int trial = 0; trial < 10; ++trial) {
    const ConvZFunction u = random_convz(corpus(), rng);
    const IteratedSymmetrization it = iterate_symmetrization(u);
    ASSERT_EQ(it.deficits.size(), 51u);
    EXPECT_LT(it.deficits.back(), 0.01);
    EXPECT_NEAR(it.domain.volume(), u.fn().domain().volume(), 1e-5 * u.fn().domain().volume());
  }
  const ConvZFunction u = random_convz(corpus(), rng);
  ConvZFunction f = u;
  Polytope D = u.fn().domain();
  for (int k = 0; k < 3; ++k) {
    const Vec z = angle_direction(std::numbers::pi * k / kGoldenRatio);
    f = steiner_symmetral_fn(f, z);
    D = steiner_symmetral_body(D, z);
    EXPECT_LT(detail::vertex_distance(f.fn().domain(), D), 1e-9);
  }
}
