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

#ifndef BESSELID_IDENTITIES_HPP_
#define BESSELID_IDENTITIES_HPP_

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "besselid/besselpoly.hpp"
#include "besselid/exact.hpp"

// Exact verification of the multi-sum identities for Bessel polynomials.
//
// Every identity has the shape
//
//   sum_{k_1+...+k_m=n} prod_i w(k_i) P_{k_i}(z_i)
//       = sum_{k=0}^n c_{m,n-k} P_k(z_1 + ... + z_m)
//
// for a polynomial family P and weights w, c. Both sides are expanded into
// MultiPoly objects over z_1..z_m and compared coefficient by coefficient,
// which proves the identity for the given (m, n) as a formal polynomial
// identity (and so for every complex substitution).
//
// Default practical bound: m <= 5, n <= 12. Nothing here enforces it; the
// cost grows like C(n+m-1, m-1) times the number of monomials of degree n.

namespace besselid {

struct Witness {
  Exponents exponents;
  BigRational lhs;
  BigRational rhs;
};

struct VerificationReport {
  std::string identity;
  std::optional<unsigned> m;
  unsigned n = 0;
  bool passed = false;
  // First differing exponent vector (lexicographic) when the check fails.
  std::optional<Witness> witness;
  // Number of nonzero coefficients of LHS - RHS.
  std::size_t mismatches = 0;
  int max_degree = -1;
  std::size_t term_count = 0;
  // Value of the constant side for identities that collapse to a number.
  std::optional<BigRational> constant;
};

template <typename Poly>
struct IdentitySides {
  Poly lhs;
  Poly rhs;
};

namespace detail {

inline void require_m(unsigned m, const char* who) {
  if (m < 2)
    throw std::invalid_argument(std::string(who) + ": m must be >= 2");
}

/// ((m-1)/2)_j / j!
inline BigRational half_shift_weight(unsigned m, unsigned j) {
  return pochhammer_half(make_rational(m - 1, 2), j) / BigRational(factorial(j));
}

/// sum over weak compositions of prod_i weight(k_i) family(k_i)(z_i).
inline MultiPoly composition_sum(
    unsigned m, unsigned n, const std::function<UniPoly(unsigned)>& family,
    const std::function<BigRational(unsigned)>& weight) {
  // embedded[slot][k] = weight(k) family(k)(z_slot)
  std::vector<std::vector<MultiPoly>> embedded(m);
  for (unsigned slot = 0; slot < m; ++slot)
    for (unsigned k = 0; k <= n; ++k)
      embedded[slot].push_back(embed_univariate(family(k) * weight(k), m, slot));

  MultiPoly total(m);
  for (const auto& comp : weak_compositions(n, m)) {
    MultiPoly term = embedded[0][comp[0]];
    for (unsigned slot = 1; slot < m; ++slot)
      term = term * embedded[slot][comp[slot]];
    total += term;
  }
  return total;
}

/// sum_k weight(k) family(k)(z_1 + ... + z_m).
inline MultiPoly collapsed_sum(
    unsigned m, unsigned n, const std::function<UniPoly(unsigned)>& family,
    const std::function<BigRational(unsigned)>& weight) {
  UniPoly combined;
  for (unsigned k = 0; k <= n; ++k) combined += family(k) * weight(k);
  return substitute_sum(combined, m);
}

inline VerificationReport compare(std::string name, std::optional<unsigned> m,
                                  unsigned n, const MultiPoly& lhs,
                                  const MultiPoly& rhs) {
  VerificationReport report;
  report.identity = std::move(name);
  report.m = m;
  report.n = n;
  report.max_degree = std::max(lhs.total_degree(), rhs.total_degree());
  report.term_count = std::max(lhs.term_count(), rhs.term_count());
  const MultiPoly diff = lhs - rhs;
  report.passed = diff.is_zero();
  report.mismatches = diff.term_count();
  if (!report.passed) {
    const Exponents& first = diff.terms().begin()->first;
    report.witness = Witness{first, lhs.coefficient(first), rhs.coefficient(first)};
  }
  return report;
}

inline VerificationReport compare(std::string name, std::optional<unsigned> m,
                                  unsigned n, const UniPoly& lhs,
                                  const UniPoly& rhs) {
  return compare(std::move(name), m, n, embed_univariate(lhs, 1, 0),
                 embed_univariate(rhs, 1, 0));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Side builders (exposed so callers can inspect or cross-check each side)
// ---------------------------------------------------------------------------

/// sum prod C(2k_i,k_i) q_{k_i}(z_i)  vs
/// sum_k C(2k,k) 4^{n-k} ((m-1)/2)_{n-k}/(n-k)! q_k(z).
inline IdentitySides<MultiPoly> general_bessel_sides(unsigned m, unsigned n) {
  detail::require_m(m, "general_bessel_sides");
  auto family = [](unsigned k) { return q_poly(k); };
  auto lhs = detail::composition_sum(m, n, family, [](unsigned k) -> BigRational {
    return BigRational(binomial(2 * k, k));
  });
  auto rhs = detail::collapsed_sum(m, n, family, [m, n](unsigned k) -> BigRational {
    BigInt four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, n - k);
    return BigRational(binomial(2 * k, k) * four_pow) *
           detail::half_shift_weight(m, n - k);
  });
  return {std::move(lhs), std::move(rhs)};
}

/// The all-equal specialization z_i = z as univariate polynomials.
inline IdentitySides<UniPoly> convolution_form_sides(unsigned m, unsigned n) {
  detail::require_m(m, "convolution_form_sides");
  UniPoly lhs;
  for (const auto& comp : weak_compositions(n, m)) {
    UniPoly term = UniPoly::constant(1);
    for (unsigned k : comp.parts)
      term = term * (q_poly(k) * BigRational(binomial(2 * k, k)));
    lhs += term;
  }
  UniPoly rhs;
  const BigRational scale(m);
  for (unsigned k = 0; k <= n; ++k) {
    BigInt four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, n - k);
    rhs += q_poly(k).rescaled(scale) *
           (BigRational(binomial(2 * k, k) * four_pow) *
            detail::half_shift_weight(m, n - k));
  }
  return {std::move(lhs), std::move(rhs)};
}

/// sum prod theta_{k_i}(z_i)/k_i!  vs
/// sum_k 2^{n-k} ((m-1)/2)_{n-k}/(n-k)! theta_k(z)/k!.
inline IdentitySides<MultiPoly> theta_identity_sides(unsigned m, unsigned n) {
  detail::require_m(m, "theta_identity_sides");
  auto family = [](unsigned k) { return theta_poly(k); };
  auto lhs = detail::composition_sum(m, n, family, [](unsigned k) -> BigRational {
    return make_rational(1, factorial(k));
  });
  auto rhs = detail::collapsed_sum(m, n, family, [m, n](unsigned k) -> BigRational {
    BigInt two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, n - k);
    return make_rational(two_pow, factorial(k)) *
           detail::half_shift_weight(m, n - k);
  });
  return {std::move(lhs), std::move(rhs)};
}

/// sum prod f_{k_i}(z_i)/k_i!  vs  f_n(z)/n!.
inline IdentitySides<MultiPoly> f_multinomial_sides(unsigned m, unsigned n) {
  detail::require_m(m, "f_multinomial_sides");
  auto lhs = detail::composition_sum(m, n, f_poly, [](unsigned k) -> BigRational {
    return make_rational(1, factorial(k));
  });
  auto rhs = substitute_sum(f_poly(n) * make_rational(1, factorial(n)), m);
  return {std::move(lhs), std::move(rhs)};
}

/// sum prod L_{k_i}^{(-2k_i-1)}(x_i)  vs
/// sum_k (-4)^{n-k} ((m-1)/2)_{n-k}/(n-k)! L_k^{(-2k-1)}(x), x = sum x_i.
/// Built in variables w_i with x_i = 2 w_i, where laguerre_special lives.
inline IdentitySides<MultiPoly> laguerre_identity_sides(unsigned m, unsigned n) {
  detail::require_m(m, "laguerre_identity_sides");
  auto lhs = detail::composition_sum(m, n, laguerre_special,
                                     [](unsigned) -> BigRational { return 1; });
  auto rhs = detail::collapsed_sum(m, n, laguerre_special, [m, n](unsigned k) -> BigRational {
    BigInt four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, n - k);
    BigRational sign((n - k) % 2 == 0 ? 1 : -1);
    return sign * BigRational(four_pow) * detail::half_shift_weight(m, n - k);
  });
  return {std::move(lhs), std::move(rhs)};
}

/// sum_k L_k^{(-2k-1)}(z) L_{n-k}^{(-2n+2k-1)}(-z) as a polynomial in z.
inline UniPoly prudnikov_sum(unsigned n) {
  const BigRational half = make_rational(1, 2);
  UniPoly total;
  for (unsigned k = 0; k <= n; ++k)
    total += laguerre_special(k).rescaled(half) *
             laguerre_special(n - k).rescaled(-half);
  return total;
}

// ---------------------------------------------------------------------------
// Verifiers
// ---------------------------------------------------------------------------

inline VerificationReport verify_general_bessel(unsigned m, unsigned n) {
  auto sides = general_bessel_sides(m, n);
  return detail::compare("general", m, n, sides.lhs, sides.rhs);
}

/// Checks the univariate identity and that it agrees with the z_i -> z
/// collapse of both sides of the general identity.
inline VerificationReport verify_convolution_form(unsigned m, unsigned n) {
  auto sides = convolution_form_sides(m, n);
  auto report = detail::compare("convolution", m, n, sides.lhs, sides.rhs);
  if (report.passed) {
    auto general = general_bessel_sides(m, n);
    auto collapsed = detail::compare("convolution", m, n,
                                     collapse(general.lhs), sides.lhs);
    if (!collapsed.passed) return collapsed;
    collapsed = detail::compare("convolution", m, n, collapse(general.rhs),
                                sides.rhs);
    if (!collapsed.passed) return collapsed;
  }
  return report;
}

inline VerificationReport verify_theta_identity(unsigned m, unsigned n) {
  auto sides = theta_identity_sides(m, n);
  return detail::compare("theta", m, n, sides.lhs, sides.rhs);
}

inline VerificationReport verify_f_multinomial(unsigned m, unsigned n) {
  auto sides = f_multinomial_sides(m, n);
  return detail::compare("f", m, n, sides.lhs, sides.rhs);
}

inline VerificationReport verify_laguerre_identity(unsigned m, unsigned n) {
  auto sides = laguerre_identity_sides(m, n);
  return detail::compare("laguerre", m, n, sides.lhs, sides.rhs);
}

/// Passes iff the Prudnikov sum is exactly the constant (-4)^n.
inline VerificationReport verify_prudnikov(unsigned n) {
  BigInt expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), 4, n);
  if (n % 2 == 1) expected = -expected;
  const UniPoly lhs = prudnikov_sum(n);
  auto report = detail::compare("prudnikov", std::nullopt, n, lhs,
                                UniPoly::constant(BigRational(expected)));
  report.constant = lhs[0];
  return report;
}

}  // namespace besselid

#endif  // BESSELID_IDENTITIES_HPP_
