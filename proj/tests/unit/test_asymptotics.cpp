#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "reslab/asymptotics.hpp"
#include "reslab/error.hpp"
#include "reslab/rootfind.hpp"
#include "reslab/secular.hpp"

using namespace reslab;
using reslab::testing::make_config;

namespace {

// Phase error of w^{2l} from rounding z alone: 2 l |z| eps / h.
double conditioning(const PotentialConfig& c, cplx z) {
  return 2.0 * c.total_length() * std::abs(z) * std::numeric_limits<double>::epsilon() / c.h();
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return Errc::Parse;
}

double frac(double v) { return v - std::floor(v); }

}  // namespace

TEST(KRange, CoversWindowWithMargin) {
  const KRange r = k_range_for(0.1, 1.0, 2.0);
  EXPECT_EQ(r.k_min, 9);
  EXPECT_EQ(r.k_max, 21);
  const KRange low = k_range_for(0.1, -1.0, 0.05);
  EXPECT_EQ(low.k_min, 1);
}

TEST(TwoDelta, GammaAndFixedPointResidual) {
  const auto c = reslab::testing::two_delta();
  const double h = c.h();
  const double ell = c.lengths()[0];
  const double spacing = std::numbers::pi * h / ell;
  const auto s = two_delta_string(c, k_range_for(spacing, 1 - 3 * h, 1 + 3 * h));
  EXPECT_NEAR(s.gamma, 1.5 / (2.0 * ell), 1e-15);
  EXPECT_NEAR(s.gamma, 0.0439339, 1e-7);
  EXPECT_EQ(s.branch, Branch::Single);
  EXPECT_EQ(s.provenance, Provenance::ClosedForm2Delta);
  EXPECT_TRUE(s.failures.empty());
  ASSERT_GT(s.per_k.size(), 30u);
  const SecularFunction f(c);
  for (const auto& p : s.per_k) {
    const auto sc = scattering_coefficients(c, p.z_pred);
    const cplx r12 = sc.reflection[0] * sc.reflection[1];
    const cplx lhs = w_power(2.0 * ell, p.z_pred, h);
    EXPECT_LE(std::abs(lhs - r12), 1e-12);
    const double floor = 64.0 * conditioning(c, p.z_pred);
    EXPECT_LE(std::abs(lhs - r12), std::max(1e-12, floor) * std::abs(r12));
    EXPECT_LE(std::abs(f(p.z_pred)), std::max(1e-10, floor) * f.scale(p.z_pred));
  }
}

TEST(TwoDelta, ResidualAtModerateH) {
  const auto c = reslab::testing::two_delta(1e-3);
  const double spacing = std::numbers::pi * c.h() / c.lengths()[0];
  const auto s = two_delta_string(c, k_range_for(spacing, 0.9, 1.1));
  ASSERT_FALSE(s.per_k.empty());
  const SecularFunction f(c);
  for (const auto& p : s.per_k) {
    EXPECT_LE(std::abs(f(p.z_pred)), 1e-10 * f.scale(p.z_pred));
  }
}

TEST(TwoDelta, RefinedFormulas) {
  const auto c = reslab::testing::two_delta();
  const double h = c.h();
  const double ell = c.lengths()[0];
  const long k = 5433880;
  const auto s = two_delta_string(c, {k, k});
  ASSERT_EQ(s.per_k.size(), 1u);
  const auto r = two_delta_refined(c, k);
  EXPECT_NEAR(r.im_leading, -6.07e-7, 0.01e-7);
  EXPECT_NEAR(s.per_k[0].z_pred.imag(), r.im, 5e-10);
  EXPECT_NEAR(s.per_k[0].z_pred.real(), r.re, 1e-10);
  // the quoted sign of the log correction moves Im to the upper half plane
  EXPECT_GT(r.im_printed, 0.0);
  EXPECT_NEAR(r.re_printed - r.re, (std::numbers::pi * h / ell) * 0.75, 1e-15);
}

TEST(TwoDelta, CouplingSignShiftsRealParts) {
  const double h = 1e-6;
  const auto pos = reslab::testing::two_delta(h, 1.0);
  const auto neg = reslab::testing::two_delta(h, -1.0);
  const double spacing = std::numbers::pi * h / pos.lengths()[0];
  const KRange ks = k_range_for(spacing, 1 - 3 * h, 1 + 3 * h);
  const auto a = two_delta_string(pos, ks);
  const auto b = two_delta_string(neg, ks);
  ASSERT_EQ(a.per_k.size(), b.per_k.size());
  for (std::size_t i = 0; i < a.per_k.size(); ++i) {
    EXPECT_NEAR(frac(a.per_k[i].z_pred.real() / spacing), 0.5, 1e-3);
    EXPECT_NEAR(frac(b.per_k[i].z_pred.real() / spacing + 0.5) - 0.5, 0.0, 1e-3);
  }
}

TEST(TwoDelta, WrongSize) {
  const auto c = reslab::testing::three_delta_case2();
  EXPECT_EQ(code_of([&] { two_delta_string(c, {1, 2}); }), Errc::NotTwoDeltas);
  EXPECT_EQ(code_of([&] { two_delta_refined(c, 1); }), Errc::NotTwoDeltas);
}

TEST(ThreeDeltaGammas, CaseTwoConfig) {
  const auto g = three_delta_gammas(reslab::testing::three_delta_case2());
  EXPECT_EQ(g.case_id, 2);
  EXPECT_NEAR(g.gamma_plus, 1.0 / (2.0 * 3.0 * std::numbers::sqrt2) * 0.9, 1e-15);
  EXPECT_NEAR(g.gamma_plus, 0.106066, 1e-6);
  EXPECT_NEAR(g.gamma_minus, 0.1, 1e-15);
  const double h = 1e-6;
  EXPECT_NEAR(-g.gamma_plus * h * std::log(1 / h), -1.465e-6, 0.001e-6);
  EXPECT_NEAR(-g.gamma_minus * h * std::log(1 / h), -1.382e-6, 0.001e-6);
}

TEST(ThreeDeltaGammas, CaseOneConfig) {
  const auto g = three_delta_gammas(reslab::testing::three_delta_case1());
  EXPECT_EQ(g.case_id, 1);
  EXPECT_DOUBLE_EQ(g.gamma_plus, g.gamma_minus);
  EXPECT_NEAR(g.gamma_plus, 2.0 / (2.0 * (5.0 + 3.0 * std::numbers::sqrt2)), 1e-15);
  EXPECT_NEAR(g.gamma_plus, 0.10819, 1e-4);
}

TEST(ThreeDeltaGammas, BoundaryBelongsToCaseOne) {
  // beta1 l2 = beta2 l1 + beta2 l2 + beta3 l1 with l = (1, 2): b1 * 2 = 3 b2 + b3
  const auto c = make_config(1e-3, {0.0, 1.0, 3.0}, {2.0, 1.0, 1.0});
  EXPECT_EQ(three_delta_gammas(c).case_id, 1);
  const auto c3 = make_config(1e-3, {0.0, 1.0, 3.0}, {2.5, 1.0, 1.0});
  EXPECT_EQ(three_delta_gammas(c3).case_id, 3);
}

TEST(ThreeDeltaGammas, ReflectionSwapsCasesTwoAndThree) {
  const auto c = reslab::testing::three_delta_case2();
  const auto r = reflect_config(c);
  const auto a = three_delta_gammas(c);
  const auto b = three_delta_gammas(r);
  EXPECT_EQ(b.case_id, 3);
  EXPECT_EQ(std::set<double>({a.gamma_plus, a.gamma_minus}).size(), 2u);
  EXPECT_NEAR(std::min(a.gamma_plus, a.gamma_minus), std::min(b.gamma_plus, b.gamma_minus), 1e-15);
  EXPECT_NEAR(std::max(a.gamma_plus, a.gamma_minus), std::max(b.gamma_plus, b.gamma_minus), 1e-15);
}

TEST(ThreeDeltaGammas, WrongSize) {
  EXPECT_EQ(code_of([] { three_delta_gammas(reslab::testing::two_delta()); }),
            Errc::NotThreeDeltas);
}

TEST(Reflect, Involution) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const auto c = reslab::testing::random_config(rng, 2 + i % 5, 1e-4);
    const auto r = reflect_config(c);
    EXPECT_EQ(r.h(), c.h());
    EXPECT_EQ(r.pole(0).beta, c.pole(c.size() - 1).beta);
    EXPECT_EQ(reflect_config(r), c);
  }
}

TEST(ThreeDeltaGammas, LargeMiddleBetaDecouples) {
  // Case 2 gives (b1 + b2)/(2 l1) and (b3 - b2)/(2 l2); with b2 large the
  // polygon keeps only the outer-pair two-delta slope.
  const auto c = make_config(1e-3, {0.0, 1.0, 3.0}, {1.0, 50.0, 0.7});
  const auto cand = gamma_candidates(build_polygon(exponent_points(expand_terms(c), c)));
  ASSERT_FALSE(cand.empty());
  const auto g = three_delta_gammas(c);
  std::set<double> closed = {g.gamma_plus, g.gamma_minus};
  for (const auto& x : cand) {
    bool found = false;
    for (double y : closed) found = found || std::abs(x.gamma - y) <= 1e-6;
    EXPECT_TRUE(found) << x.gamma;
  }
  EXPECT_NEAR(g.gamma_plus, (1.0 + 0.7) / (2.0 * 3.0), 1e-6);
}

TEST(EqualSpacing, PredictionsSolveResonanceEquation) {
  const double h = 1e-6;
  for (const auto& betas :
       {std::vector<double>{0.3, 0.2, 1.2}, std::vector<double>{0.5, 0.4, 0.8}}) {
    const auto c = make_config(h, {-3.0, 1.0, 5.0}, betas);
    const double spacing = std::numbers::pi * h / 4.0;
    const auto [plus, minus] = three_delta_equal_strings(c, k_range_for(spacing, 1 - 3 * h, 1 + 3 * h));
    EXPECT_EQ(plus.branch, Branch::Plus);
    EXPECT_EQ(minus.branch, Branch::Minus);
    EXPECT_TRUE(plus.failures.empty());
    EXPECT_TRUE(minus.failures.empty());
    const SecularFunction f(c);
    for (const auto* s : {&plus, &minus}) {
      for (const auto& p : s->per_k) {
        EXPECT_LE(std::abs(f(p.z_pred)), std::max(1e-11, 64.0 * conditioning(c, p.z_pred)) * f.scale(p.z_pred));
      }
    }
    const bool distinct = betas[0] + 2 * betas[1] < betas[2];
    if (distinct) {
      EXPECT_GT(std::abs(plus.gamma - minus.gamma), 0.01);
    } else {
      EXPECT_LT(std::abs(plus.gamma - minus.gamma), 0.01);
    }
  }
}

TEST(EqualSpacing, RootsSatisfyQuadratic) {
  const auto c = make_config(1e-3, {-3.0, 1.0, 5.0}, {0.5, 0.4, 0.8});
  const cplx z(1.0, -1e-3);
  const auto [rp, rm] = equal_spacing_roots(c, z);
  const auto s = scattering_coefficients(c, z);
  const cplx r1 = s.reflection[0], r2 = s.reflection[1], r3 = s.reflection[2];
  EXPECT_LT(std::abs(rp + rm - (r1 + r3) * r2), 1e-15);
  EXPECT_LT(std::abs(rp * rm + r1 * (1.0 + 2.0 * r2) * r3), 1e-15);
}

TEST(EqualSpacing, Errors) {
  EXPECT_EQ(code_of([] { three_delta_equal_strings(reslab::testing::three_delta_case2(), {1, 2}); }),
            Errc::NotEqualSpacing);
  EXPECT_EQ(code_of([] { three_delta_equal_strings(reslab::testing::two_delta(), {1, 2}); }),
            Errc::NotThreeDeltas);
}

TEST(Branch, Names) {
  EXPECT_STREQ(to_string(Branch::Single), "single");
  EXPECT_STREQ(to_string(Branch::Plus), "plus");
  EXPECT_STREQ(to_string(Branch::Minus), "minus");
}
