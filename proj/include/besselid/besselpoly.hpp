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

#ifndef BESSELID_BESSELPOLY_HPP_
#define BESSELID_BESSELPOLY_HPP_

#include <cstdint>
#include <map>
#include <mutex>

#include "besselid/exact.hpp"

// Three normalizations of the Bessel polynomials, all derived from q_k:
//
//   q_k(z)     = sum_{l=0}^k C(k,l)/C(2k,l) (2z)^l / l!      q_k(0) = 1
//   theta_n(z) = (2n)!/(n! 2^n) q_n(z)                        monic
//   f_n(z)     = z theta_{n-1}(z),  f_0 = 1                   monic
//
// theta_n(z) is the n-th moment of GIG(psi=1, chi=z^2, lambda=1/2) and f_n(z)
// the n-th moment of the inverse Gaussian GIG(1, z^2, -1/2).

namespace besselid {

namespace detail {

template <typename Build>
const UniPoly& memoized(std::map<unsigned, UniPoly>& cache, std::mutex& mu,
                        unsigned k, Build build) {
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
  }
  UniPoly p = build(k);
  std::lock_guard<std::mutex> lock(mu);
  // map nodes are stable, so the reference outlives the lock
  return cache.try_emplace(k, std::move(p)).first->second;
}

inline UniPoly build_q(unsigned k) {
  std::vector<BigRational> coeffs;
  coeffs.reserve(k + 1);
  BigInt two_pow = 1;
  for (unsigned l = 0; l <= k; ++l) {
    coeffs.push_back(make_rational(binomial(k, l) * two_pow,
                                   binomial(2 * k, l) * factorial(l)));
    two_pow *= 2;
  }
  return UniPoly(std::move(coeffs));
}

}  // namespace detail

/// Bessel polynomial q_k of degree k, normalized so q_k(0) = 1.
inline const UniPoly& q_poly(unsigned k) {
  static std::map<unsigned, UniPoly> cache;
  static std::mutex mu;
  return detail::memoized(cache, mu, k, detail::build_q);
}

/// Reverse Bessel polynomial theta_n = ((2n)!/n!) 2^{-n} q_n.
inline const UniPoly& theta_poly(unsigned n) {
  static std::map<unsigned, UniPoly> cache;
  static std::mutex mu;
  return detail::memoized(cache, mu, n, [](unsigned k) {
    BigInt two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, k);
    return q_poly(k) * make_rational(factorial(2 * k), factorial(k) * two_pow);
  });
}

/// Carlitz polynomial: f_0 = 1, f_n = z theta_{n-1}.
inline UniPoly f_poly(unsigned n) {
  if (n == 0) return UniPoly::constant(1);
  return theta_poly(n - 1).shifted_up();
}

/// L_n^{(-2n-1)}(2z) as a polynomial in z, i.e. (-1)^n C(2n,n) q_n(z).
inline UniPoly laguerre_special(unsigned n) {
  BigRational scale(binomial(2 * n, n));
  if (n % 2 == 1) scale = -scale;
  return q_poly(n) * scale;
}

/// E X^n for X ~ GIG(1, z^2, 1/2), which is theta_n(z).
inline BigRational moment_theta(unsigned n, const BigRational& z) {
  return theta_poly(n)(z);
}

}  // namespace besselid

#endif  // BESSELID_BESSELPOLY_HPP_
