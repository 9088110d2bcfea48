#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fixtures.hpp"
#include "reslab/error.hpp"
#include "reslab/potential.hpp"

using namespace reslab;
using reslab::testing::make_config;

namespace {

Errc code_of(double h, std::vector<Pole> poles, std::optional<std::size_t>* index = nullptr) {
  try {
    PotentialConfig::validate(h, std::move(poles));
  } catch (const Error& e) {
    if (index) *index = e.index();
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return Errc::Parse;
}

}  // namespace

TEST(Potential, TwoDeltaLengths) {
  const auto c = reslab::testing::two_delta();
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(c.lengths()[0], 17.0710678118654752, 1e-12);
  EXPECT_DOUBLE_EQ(c.total_length(), c.lengths()[0]);
}

TEST(Potential, SortsPolesAndKeepsFields) {
  const auto a = PotentialConfig::validate(0.1, {{3.0, 2.0, 0.5}, {-1.0, -1.0, 1.0}, {0.5, 1.0, 2.0}});
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a.pole(0).x, -1.0);
  EXPECT_EQ(a.pole(0).coupling, -1.0);
  EXPECT_EQ(a.pole(2).beta, 0.5);
  EXPECT_DOUBLE_EQ(a.lengths()[0], 1.5);
  EXPECT_DOUBLE_EQ(a.lengths()[1], 2.5);
  EXPECT_DOUBLE_EQ(a.total_length(), 4.0);
  const auto b = PotentialConfig::validate(0.1, {{0.5, 1.0, 2.0}, {-1.0, -1.0, 1.0}, {3.0, 2.0, 0.5}});
  EXPECT_EQ(a, b);
}

TEST(Potential, RejectsTooFewPoles) {
  EXPECT_EQ(code_of(0.1, {{0.0, 1.0, 1.0}}), Errc::TooFewPoles);
  EXPECT_EQ(code_of(0.1, {}), Errc::TooFewPoles);
}

TEST(Potential, RejectsDuplicatePosition) {
  EXPECT_EQ(code_of(0.1, {{1.0, 1.0, 1.0}, {1.0, 2.0, 1.0}}), Errc::DuplicatePosition);
}

TEST(Potential, RejectsZeroCouplingWithIndex) {
  std::optional<std::size_t> idx;
  EXPECT_EQ(code_of(0.1, {{0.0, 1.0, 1.0}, {1.0, 0.0, 1.0}}, &idx), Errc::ZeroCoupling);
  EXPECT_EQ(idx, 1u);
}

TEST(Potential, RejectsNonpositiveBetaWithInputIndex) {
  std::optional<std::size_t> idx;
  EXPECT_EQ(code_of(0.1, {{5.0, 1.0, 1.0}, {-1.0, 1.0, 0.0}}, &idx), Errc::NonpositiveBeta);
  EXPECT_EQ(idx, 1u);
  EXPECT_EQ(code_of(0.1, {{5.0, 1.0, -0.3}, {-1.0, 1.0, 1.0}}), Errc::NonpositiveBeta);
}

TEST(Potential, RejectsBadH) {
  for (double h : {0.0, 1.0, -0.5, 2.0}) {
    EXPECT_EQ(code_of(h, {{0.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}), Errc::BadH) << h;
  }
}

TEST(Potential, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(code_of(0.1, {{nan, 1.0, 1.0}, {1.0, 1.0, 1.0}}), Errc::NonFinite);
  EXPECT_EQ(code_of(0.1, {{0.0, inf, 1.0}, {1.0, 1.0, 1.0}}), Errc::NonFinite);
  EXPECT_EQ(code_of(nan, {{0.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}), Errc::BadH);
}

TEST(Potential, HandComputedCoefficients) {
  const auto c = make_config(0.1, {0.0, 1.0}, {1.0, 1.0}, {2.0, 1.0});
  const auto s = scattering_coefficients(c, cplx(1.0, 0.0));
  const cplx vt(0.0, -0.1);
  EXPECT_NEAR(std::abs(s.vtilde[0] - vt), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.transmission[0] - 1.0 / cplx(1.0, 0.1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.reflection[0] - vt / cplx(1.0, 0.1)), 0.0, 1e-15);
}

TEST(Potential, ZeroSpectralParameter) {
  const auto c = reslab::testing::two_delta();
  try {
    scattering_coefficients(c, cplx(0.0, 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroSpectralParameter);
  }
}

TEST(Potential, SingularCoefficient) {
  // Vt = C h^beta / (2 i z) = 1 at z = -i C h^beta / 2.
  const auto c = make_config(0.25, {0.0, 1.0}, {1.0, 1.0}, {2.0, 1.0});
  try {
    scattering_coefficients(c, cplx(0.0, -0.25));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SingularCoefficient);
    EXPECT_EQ(e.index(), 0u);
  }
}

TEST(Potential, SmallHLimit) {
  for (double h : {1e-2, 1e-4, 1e-8}) {
    const auto c = make_config(h, {0.0, 1.0}, {0.5, 1.0});
    const auto s = scattering_coefficients(c, cplx(1.0, 0.0));
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_LT(std::abs(s.reflection[j]), std::pow(h, c.pole(j).beta));
      EXPECT_LT(std::abs(s.transmission[j] - 1.0), std::pow(h, c.pole(j).beta));
    }
  }
}

TEST(Potential, WPowerMatchesExpAndComposes) {
  const double h = 1e-3;
  const cplx z(0.7, -2e-3);
  for (double l : {0.5, 3.0, -4.25}) {
    const cplx direct = std::exp(cplx(0.0, -1.0) * l * z / h);
    EXPECT_LT(reslab::testing::rel_err(w_power(l, z, h), direct), 1e-11) << l;
  }
  const cplx ab = w_power(1.25 + 2.5, z, h);
  const cplx a_b = w_power(1.25, z, h) * w_power(2.5, z, h);
  EXPECT_LT(reslab::testing::rel_err(ab, a_b), 1e-12);
}
