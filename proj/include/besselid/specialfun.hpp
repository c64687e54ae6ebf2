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

#ifndef BESSELID_SPECIALFUN_HPP_
#define BESSELID_SPECIALFUN_HPP_

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "besselid/besselpoly.hpp"
#include "besselid/exact.hpp"

namespace besselid {

/// Settings for the cosh-integral evaluation of K_nu.
struct QuadratureSpec {
  /// Convergence threshold on successive panel-doubling estimates, taken
  /// relative to the current estimate.
  double tolerance = 1e-12;
  /// Upper integration limit; chosen from the integrand when empty.
  std::optional<double> truncation;
  /// Largest number of Gauss-Legendre panels tried before giving up.
  int max_panels = 4096;
};

namespace detail {

inline void require_positive(double z, const char* who) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw std::domain_error(std::string(who) + ": argument must be positive and finite");
}

inline double checked(double v, const char* who) {
  if (!std::isfinite(v))
    throw std::overflow_error(std::string(who) + ": result is not finite");
  return v;
}

/// Symmetric relative difference with a 1e-300 floor.
inline double relative_residual(double lhs, double rhs) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return std::abs(lhs - rhs) / scale;
}

}  // namespace detail

/// K_{k+1/2}(z) from the Bessel polynomial closed form
///   K_{k+1/2}(z) = Gamma(k+1/2) 2^{k-1/2} z^{-k-1/2} e^{-z} q_k(z).
inline double bessel_k_half(unsigned k, double z) {
  detail::require_positive(z, "bessel_k_half");
  const double gamma = std::sqrt(std::numbers::pi) * gamma_half_ratio(k).get_d();
  const double scale = std::ldexp(std::numbers::sqrt2 / 2.0, static_cast<int>(k));
  const double v = gamma * scale * std::pow(z, -(k + 0.5)) * std::exp(-z) *
                   q_poly(k).eval(z);
  return detail::checked(v, "bessel_k_half");
}

/// K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt, by composite 20-point
/// Gauss-Legendre with panel doubling. Supported for |nu| <= 30.
inline double bessel_k_real(double nu, double z, const QuadratureSpec& spec = {}) {
  detail::require_positive(z, "bessel_k_real");
  if (!std::isfinite(nu) || std::abs(nu) > 30.0)
    throw std::domain_error("bessel_k_real: |nu| must be <= 30");
  if (!(spec.tolerance > 0.0))
    throw std::invalid_argument("bessel_k_real: tolerance must be positive");
  if (spec.truncation && !(*spec.truncation > 0.0))
    throw std::invalid_argument("bessel_k_real: truncation must be positive");
  const double a = std::abs(nu);

  // log of the integrand; log cosh(a t) written to avoid overflow
  auto log_integrand = [a, z](double t) {
    const double at = a * t;
    return -z * std::cosh(t) + at + std::log1p(std::exp(-2.0 * at)) - std::numbers::ln2;
  };

  // Locate the peak and the point where the integrand has fallen below
  // tol * 1e-3 of it.
  double peak = log_integrand(0.0);
  double upper = 0.0;
  {
    const double drop = std::log(spec.tolerance * 1e-3);
    const double step = 0.05;
    for (double t = step; t < 60.0; t += step) {
      const double g = log_integrand(t);
      peak = std::max(peak, g);
      upper = t;
      if (g < peak + drop && g < log_integrand(t - step)) break;
    }
  }
  if (spec.truncation) upper = *spec.truncation;

  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& nodes = Rule::abscissa();
  const auto& weights = Rule::weights();
  auto integrate = [&](int panels) {
    const double width = upper / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double mid = (p + 0.5) * width;
      const double half = 0.5 * width;
      double panel = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        panel += weights[i] * (std::exp(log_integrand(mid + half * nodes[i]) - peak) +
                               std::exp(log_integrand(mid - half * nodes[i]) - peak));
      }
      sum += half * panel;
    }
    return sum;
  };

  double previous = integrate(2);
  for (int panels = 4; panels <= spec.max_panels; panels *= 2) {
    const double current = integrate(panels);
    if (std::abs(current - previous) <= spec.tolerance * std::abs(current))
      return detail::checked(current * std::exp(peak), "bessel_k_real");
    previous = current;
  }
  throw std::runtime_error("bessel_k_real: tolerance not reached within panel budget");
}

/// I_{-k-1/2}(z) - I_{k+1/2}(z) = (2/pi) (-1)^k K_{k+1/2}(z). The two I terms
/// are never formed separately.
inline double bessel_i_half_diff(unsigned k, double z) {
  const double v = 2.0 / std::numbers::pi * bessel_k_half(k, z);
  return k % 2 == 0 ? v : -v;
}

// ---------------------------------------------------------------------------
// Numeric forms of the transcendental identities. Each returns the symmetric
// relative residual |LHS - RHS| / max(|LHS|, |RHS|).
// ---------------------------------------------------------------------------

namespace detail {

inline void require_m_numeric(unsigned m, const char* who) {
  if (m < 2) throw std::invalid_argument(std::string(who) + ": m must be >= 2");
}

/// sum over weak compositions of prod_i factor[i][k_i].
inline double composition_sum_numeric(unsigned n,
                                      const std::vector<std::vector<double>>& factor) {
  double total = 0.0;
  for (const auto& comp : weak_compositions(n, static_cast<unsigned>(factor.size()))) {
    double term = 1.0;
    for (std::size_t i = 0; i < factor.size(); ++i) term *= factor[i][comp[i]];
    total += term;
  }
  return total;
}

}  // namespace detail

/// Brychkov's multi-sum of half-integer I-differences:
///   sum prod (1/k_i!) [I_{-k_i-1/2}(z) - I_{k_i+1/2}(z)]
///     = (-1)^n sqrt(m)/n! pi^{(1-m)/2} (z/2)^{(1-m)/2-n}
///       sum_k C(n,k) ((m-1)/2)_{n-k} (-mz/2)^k [I_{-k-1/2}(mz) - I_{k+1/2}(mz)].
inline double verify_brychkov_numeric(unsigned m, unsigned n, double z) {
  detail::require_m_numeric(m, "verify_brychkov_numeric");
  detail::require_positive(z, "verify_brychkov_numeric");
  std::vector<double> per_part(n + 1);
  for (unsigned k = 0; k <= n; ++k)
    per_part[k] = bessel_i_half_diff(k, z) * make_rational(1, factorial(k)).get_d();
  const double lhs = detail::composition_sum_numeric(
      n, std::vector<std::vector<double>>(m, per_part));

  const BigRational shift = make_rational(m - 1, 2);
  const double mz = m * z;
  double sum = 0.0;
  for (unsigned k = 0; k <= n; ++k) {
    const BigRational coeff_exact = BigRational(binomial(n, k)) *
                                    pochhammer_half(shift, n - k) /
                                    BigRational(factorial(n));
    const double coeff = coeff_exact.get_d();
    sum += coeff * std::pow(-mz / 2.0, k) * bessel_i_half_diff(k, mz);
  }
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  const double rhs = sign * std::sqrt(static_cast<double>(m)) *
                     std::pow(std::numbers::pi, (1.0 - m) / 2.0) *
                     std::pow(z / 2.0, (1.0 - m) / 2.0 - n) * sum;
  return detail::relative_residual(lhs, rhs);
}

/// Multi-sum of z^{k+1/2} K_{k+1/2}(z)/k!:
///   sum prod z^{k_i+1/2} K_{k_i+1/2}(z)/k_i!
///     = (pi/2)^{(m-1)/2} sum_k 2^{n-k} ((m-1)/2)_{n-k}/(n-k)!
///       (mz)^{k+1/2} K_{k+1/2}(mz)/k!.
inline double verify_k_identity_numeric(unsigned m, unsigned n, double z) {
  detail::require_m_numeric(m, "verify_k_identity_numeric");
  detail::require_positive(z, "verify_k_identity_numeric");
  std::vector<double> per_part(n + 1);
  for (unsigned k = 0; k <= n; ++k)
    per_part[k] = std::pow(z, k + 0.5) * bessel_k_half(k, z) *
                  make_rational(1, factorial(k)).get_d();
  const double lhs = detail::composition_sum_numeric(
      n, std::vector<std::vector<double>>(m, per_part));

  const BigRational shift = make_rational(m - 1, 2);
  const double mz = m * z;
  double sum = 0.0;
  for (unsigned k = 0; k <= n; ++k) {
    BigInt two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, n - k);
    const BigRational coeff_exact = BigRational(two_pow) *
                                    pochhammer_half(shift, n - k) /
                                    BigRational(factorial(n - k) * factorial(k));
    const double coeff = coeff_exact.get_d();
    sum += coeff * std::pow(mz, k + 0.5) * bessel_k_half(k, mz);
  }
  const double rhs = std::pow(std::numbers::pi / 2.0, (m - 1.0) / 2.0) * sum;
  return detail::relative_residual(lhs, rhs);
}

/// K_{k-1/2}(z) = K_{|k-1/2|}(z) through the half-integer closed form.
inline double bessel_k_minus_half(unsigned k, double z) {
  return bessel_k_half(k == 0 ? 0 : k - 1, z);
}

/// Multinomial property of f_n in Macdonald form, z = sum z_i:
///   sum prod z_i^{k_i+1/2} K_{k_i-1/2}(z_i)/k_i!
///     = (2/pi)^{(1-m)/2} z^{n+1/2} K_{n-1/2}(z)/n!.
inline double verify_fk_identity_numeric(unsigned m, unsigned n,
                                         std::span<const double> z_vec) {
  detail::require_m_numeric(m, "verify_fk_identity_numeric");
  if (z_vec.size() != m)
    throw std::invalid_argument("verify_fk_identity_numeric: need exactly m values of z");
  std::vector<std::vector<double>> factor(m, std::vector<double>(n + 1));
  double z = 0.0;
  for (unsigned i = 0; i < m; ++i) {
    detail::require_positive(z_vec[i], "verify_fk_identity_numeric");
    z += z_vec[i];
    for (unsigned k = 0; k <= n; ++k)
      factor[i][k] = std::pow(z_vec[i], k + 0.5) * bessel_k_minus_half(k, z_vec[i]) *
                     make_rational(1, factorial(k)).get_d();
  }
  const double lhs = detail::composition_sum_numeric(n, factor);
  const double rhs = std::pow(2.0 / std::numbers::pi, (1.0 - m) / 2.0) *
                     std::pow(z, n + 0.5) * bessel_k_minus_half(n, z) *
                     make_rational(1, factorial(n)).get_d();
  return detail::relative_residual(lhs, rhs);
}

}  // namespace besselid

#endif  // BESSELID_SPECIALFUN_HPP_
