// Copyright 2026 The besselid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "besselid/identities.hpp"
#include "test_util.hpp"

namespace besselid {
namespace {

using testing_util::random_point;

MultiPoly poly_in(unsigned m, std::initializer_list<std::pair<Exponents, BigRational>> terms) {
  MultiPoly p(m);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

// ---------------------------------------------------------------------------
// Independent pointwise oracle: evaluates each side at a rational point from
// the univariate families only, without MultiPoly or substitute_sum.
// ---------------------------------------------------------------------------

using Family = std::function<UniPoly(unsigned)>;
using Weight = std::function<BigRational(unsigned)>;

BigRational lhs_at(unsigned m, unsigned n, const Family& family, const Weight& w,
                   const std::vector<BigRational>& pt) {
  BigRational total(0);
  for (const auto& c : weak_compositions(n, m)) {
    BigRational term(1);
    for (unsigned i = 0; i < m; ++i) term *= w(c[i]) * family(c[i])(pt[i]);
    total += term;
  }
  return total;
}

BigRational rhs_at(unsigned n, const Family& family, const Weight& w,
                   const std::vector<BigRational>& pt) {
  BigRational z(0);
  for (const auto& a : pt) z += a;
  BigRational total(0);
  for (unsigned k = 0; k <= n; ++k) total += w(k) * family(k)(z);
  return total;
}

BigRational shift_weight(unsigned m, unsigned j) {
  return pochhammer_half(make_rational(m - 1, 2), j) / BigRational(factorial(j));
}

BigRational pow2(unsigned e) {
  BigInt v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, e);
  return BigRational(v);
}

TEST(GeneralBessel, HandExpansions) {
  auto r0 = verify_general_bessel(2, 0);
  EXPECT_TRUE(r0.passed);
  auto s0 = general_bessel_sides(2, 0);
  EXPECT_EQ(s0.lhs, MultiPoly::constant(2, 1));
  EXPECT_EQ(s0.rhs, MultiPoly::constant(2, 1));

  // LHS 2(1+z_1) + 2(1+z_2); RHS 4 (1/2) + 2(1 + z_1 + z_2)
  auto s1 = general_bessel_sides(2, 1);
  const MultiPoly expected = poly_in(2, {{{0, 0}, 4}, {{1, 0}, 2}, {{0, 1}, 2}});
  EXPECT_EQ(s1.lhs, expected);
  EXPECT_EQ(s1.rhs, expected);
  EXPECT_TRUE(verify_general_bessel(2, 1).passed);
}

TEST(GeneralBessel, PointwiseOracleAgrees) {
  std::mt19937_64 rng(5);
  const Family q = [](unsigned k) { return q_poly(k); };
  const Weight lhs_w = [](unsigned k) -> BigRational { return binomial(2 * k, k); };
  for (auto [m, n] : {std::pair{3u, 2u}, std::pair{2u, 5u}, std::pair{4u, 3u}}) {
    const auto sides = general_bessel_sides(m, n);
    const Weight rhs_w = [m, n](unsigned k) -> BigRational {
      return BigRational(binomial(2 * k, k)) * pow2(2 * (n - k)) * shift_weight(m, n - k);
    };
    for (int trial = 0; trial < 20; ++trial) {
      const auto pt = random_point(rng, m);
      const BigRational l = lhs_at(m, n, q, lhs_w, pt);
      EXPECT_EQ(l, rhs_at(n, q, rhs_w, pt));
      EXPECT_EQ(sides.lhs(pt), l);
      EXPECT_EQ(sides.rhs(pt), l);
    }
  }
}

TEST(GeneralBessel, RejectsSingleSummand) {
  EXPECT_THROW(verify_general_bessel(1, 0), std::invalid_argument);
  EXPECT_THROW(verify_theta_identity(0, 3), std::invalid_argument);
}

TEST(GeneralBessel, CoefficientsOutgrow64Bits) {
  // the constant term of the left side at m = 2 is sum_k C(2k,k) C(2n-2k,n-k) = 4^n
  const auto sides = general_bessel_sides(2, 40);
  BigInt four_pow;
  mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, 40);
  EXPECT_EQ(sides.lhs.coefficient({0, 0}), BigRational(four_pow));
  EXPECT_FALSE(four_pow.fits_slong_p());
  EXPECT_EQ(sides.lhs, sides.rhs);
  EXPECT_TRUE(verify_general_bessel(5, 12).passed);
}

TEST(ConvolutionForm, Examples) {
  auto s = convolution_form_sides(2, 1);
  EXPECT_EQ(s.lhs, (UniPoly{4, 4}));
  EXPECT_EQ(s.rhs, (UniPoly{4, 4}));
  EXPECT_TRUE(verify_convolution_form(2, 1).passed);
  auto s5 = convolution_form_sides(5, 0);
  EXPECT_EQ(s5.lhs, UniPoly{1});
  EXPECT_TRUE(verify_convolution_form(5, 0).passed);
}

TEST(ConvolutionForm, CollapseOfGeneralForm) {
  for (unsigned n = 0; n <= 6; ++n) {
    const auto general = general_bessel_sides(3, n);
    const auto uni = convolution_form_sides(3, n);
    EXPECT_EQ(collapse(general.lhs), uni.lhs) << "n=" << n;
    EXPECT_EQ(collapse(general.rhs), uni.rhs) << "n=" << n;
    EXPECT_TRUE(verify_convolution_form(3, n).passed);
  }
}

TEST(ThetaIdentity, Examples) {
  auto s = theta_identity_sides(2, 1);
  const MultiPoly expected = poly_in(2, {{{0, 0}, 2}, {{1, 0}, 1}, {{0, 1}, 1}});
  EXPECT_EQ(s.lhs, expected);
  EXPECT_EQ(s.rhs, expected);
  EXPECT_TRUE(verify_theta_identity(2, 0).passed);
}

TEST(ThetaIdentity, RescalingOfGeneralForm) {
  // C(2k,k) q_k = 2^k theta_k / k!, so general = 2^n * theta form.
  for (unsigned m = 2; m <= 4; ++m) {
    for (unsigned n = 0; n <= 8; ++n) {
      const auto general = general_bessel_sides(m, n);
      const auto theta = theta_identity_sides(m, n);
      EXPECT_EQ(general.lhs, theta.lhs * pow2(n)) << m << "," << n;
      EXPECT_EQ(general.rhs, theta.rhs * pow2(n)) << m << "," << n;
    }
  }
}

TEST(FMultinomial, Examples) {
  // (z_1+z_2)/2 + (z_1^2+z_2^2)/2 + z_1 z_2
  const BigRational half = make_rational(1, 2);
  const MultiPoly expected = poly_in(
      2, {{{1, 0}, half}, {{0, 1}, half}, {{2, 0}, half}, {{0, 2}, half}, {{1, 1}, 1}});
  auto s = f_multinomial_sides(2, 2);
  EXPECT_EQ(s.lhs, expected);
  EXPECT_EQ(s.rhs, expected);
  EXPECT_TRUE(verify_f_multinomial(3, 0).passed);
}

TEST(FMultinomial, PointwiseOracle) {
  std::mt19937_64 rng(46);
  const Family f = [](unsigned k) { return f_poly(k); };
  const Weight inv_fact = [](unsigned k) { return make_rational(1, factorial(k)); };
  const unsigned m = 4, n = 6;
  EXPECT_TRUE(verify_f_multinomial(m, n).passed);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pt = random_point(rng, m);
    BigRational z(0);
    for (const auto& a : pt) z += a;
    EXPECT_EQ(lhs_at(m, n, f, inv_fact, pt), f_poly(n)(z) / BigRational(factorial(n)));
  }
}

TEST(LaguerreIdentity, SmallCases) {
  EXPECT_TRUE(verify_laguerre_identity(2, 0).passed);
  EXPECT_TRUE(verify_laguerre_identity(2, 1).passed);
  for (unsigned n = 0; n <= 6; ++n) EXPECT_TRUE(verify_laguerre_identity(3, n).passed);
}

TEST(LaguerreIdentity, PrintedDoubleWeightFails) {
  // With both 2^{2n-2k} and (-4)^{n-k} in the weight the identity is off
  // already at m = 2, n = 1: LHS = -4 - x, that RHS = -10 - x.
  const unsigned m = 2, n = 1;
  const auto sides = laguerre_identity_sides(m, n);
  UniPoly wrong;
  for (unsigned k = 0; k <= n; ++k) {
    BigRational w = pow2(2 * (n - k)) * pow2(2 * (n - k)) * shift_weight(m, n - k);
    if ((n - k) % 2 == 1) w = -w;
    wrong += laguerre_special(k) * w;
  }
  EXPECT_NE(substitute_sum(wrong, m), sides.lhs);
  EXPECT_EQ(sides.lhs, sides.rhs);
  EXPECT_EQ(collapse(sides.lhs), (UniPoly{-4, -2 * 2}));
}

TEST(Prudnikov, Examples) {
  auto r0 = verify_prudnikov(0);
  EXPECT_TRUE(r0.passed);
  EXPECT_EQ(*r0.constant, 1);
  auto r1 = verify_prudnikov(1);
  EXPECT_TRUE(r1.passed);
  EXPECT_EQ(*r1.constant, -4);
  // L_0 L_1(-z) + L_1(z) L_0 = (-2 + z) + (-2 - z)
  EXPECT_EQ(prudnikov_sum(1), UniPoly{-4});
  auto r20 = verify_prudnikov(20);
  EXPECT_TRUE(r20.passed);
  BigInt expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), 4, 20);
  EXPECT_EQ(*r20.constant, expected);
}

TEST(Identities, SmallGridPassesWithDegreeN) {
  using Sides = IdentitySides<MultiPoly> (*)(unsigned, unsigned);
  for (Sides build : {general_bessel_sides, theta_identity_sides, f_multinomial_sides,
                      laguerre_identity_sides}) {
    for (unsigned m = 2; m <= 3; ++m) {
      for (unsigned n = 0; n <= 6; ++n) {
        const auto s = build(m, n);
        EXPECT_EQ(s.lhs, s.rhs);
        EXPECT_EQ(s.lhs.total_degree(), static_cast<int>(n));
        EXPECT_EQ(s.rhs.total_degree(), static_cast<int>(n));
      }
    }
  }
}

TEST(Report, WitnessIsLexicographicallySmallest) {
  MultiPoly lhs = poly_in(2, {{{0, 2}, 1}, {{1, 0}, 3}, {{2, 0}, 5}});
  MultiPoly rhs = poly_in(2, {{{0, 2}, 1}, {{1, 0}, 4}, {{2, 0}, 6}});
  const auto r = detail::compare("demo", 2u, 2, lhs, rhs);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->exponents, (Exponents{1, 0}));
  EXPECT_EQ(r.witness->lhs, 3);
  EXPECT_EQ(r.witness->rhs, 4);
  EXPECT_EQ(r.mismatches, 2u);
}

}  // namespace
}  // namespace besselid
