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

#ifndef BESSELID_GIG_HPP_
#define BESSELID_GIG_HPP_

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "besselid/besselpoly.hpp"
#include "besselid/exact.hpp"
#include "besselid/specialfun.hpp"

// Generalized inverse Gaussian law
//
//   f(x; psi, chi, lambda) = (psi/chi)^{lambda/2} / (2 K_lambda(sqrt(psi chi)))
//                            x^{lambda-1} exp(-chi/(2x) - psi x/2),   x > 0,
//
// and the half-order members X_{+-1/2,z} = GIG(1, z^2, +-1/2). X_{-1/2,z} is the
// inverse Gaussian law with mean z and shape z^2; X_{lambda,0} is the Gamma law
// with shape lambda and scale 2 (so X_{(m-1)/2,0} is chi-square with m-1
// degrees of freedom, not chi).
//
// Sampling builds X_{1/2,z} as X_{-1/2,z} + X_{1/2,0} with independent
// summands.

namespace besselid {

struct GIGParams {
  double psi = 1.0;
  double chi = 0.0;
  double lambda = 0.5;

  /// Throws std::invalid_argument unless psi > 0, chi >= 0, and lambda > 0
  /// when chi = 0 or lambda > -1 when chi > 0.
  void validate() const {
    if (!(psi > 0.0) || !std::isfinite(psi))
      throw std::invalid_argument("GIGParams: psi must be positive");
    if (!(chi >= 0.0) || !std::isfinite(chi))
      throw std::invalid_argument("GIGParams: chi must be nonnegative");
    if (!std::isfinite(lambda))
      throw std::invalid_argument("GIGParams: lambda must be finite");
    if (chi == 0.0 && !(lambda > 0.0))
      throw std::invalid_argument("GIGParams: chi = 0 requires lambda > 0");
    if (chi > 0.0 && !(lambda > -1.0))
      throw std::invalid_argument("GIGParams: lambda must exceed -1");
  }
};

/// X_{lambda,z} for lambda = +-1/2: GIG(psi=1, chi=z^2, lambda).
struct HalfGIG {
  double lambda = 0.5;
  double z = 0.0;

  static HalfGIG plus(double z) { return {0.5, z}; }
  static HalfGIG minus(double z) { return {-0.5, z}; }

  GIGParams params() const {
    if (lambda != 0.5 && lambda != -0.5)
      throw std::invalid_argument("HalfGIG: lambda must be +1/2 or -1/2");
    if (!(z >= 0.0) || !std::isfinite(z))
      throw std::invalid_argument("HalfGIG: z must be nonnegative");
    if (z == 0.0 && lambda < 0.0)
      throw std::invalid_argument("HalfGIG: z = 0 needs lambda = +1/2");
    return {1.0, z * z, lambda};
  }
};

struct SampleSet {
  std::vector<double> values;
  std::uint64_t seed = 0;

  std::size_t size() const { return values.size(); }
  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

// ---------------------------------------------------------------------------
// Density and moments
// ---------------------------------------------------------------------------

namespace detail {

/// K_lambda via the closed form when 2 lambda is odd, else by quadrature.
inline double bessel_k_any(double lambda, double z) {
  const double twice = 2.0 * std::abs(lambda);
  if (twice == std::floor(twice) && static_cast<long>(twice) % 2 == 1 && twice < 200.0)
    return bessel_k_half(static_cast<unsigned>((twice - 1.0) / 2.0), z);
  return bessel_k_real(lambda, z);
}

}  // namespace detail

/// log f(x; psi, chi, lambda).
inline double gig_log_density(const GIGParams& p, double x) {
  p.validate();
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("gig_density: x must be positive");
  if (p.chi == 0.0)
    return p.lambda * std::log(p.psi / 2.0) + (p.lambda - 1.0) * std::log(x) -
           p.psi * x / 2.0 - std::lgamma(p.lambda);
  const double omega = std::sqrt(p.psi * p.chi);
  return 0.5 * p.lambda * std::log(p.psi / p.chi) - std::numbers::ln2 -
         std::log(detail::bessel_k_any(p.lambda, omega)) + (p.lambda - 1.0) * std::log(x) -
         p.chi / (2.0 * x) - p.psi * x / 2.0;
}

inline double gig_density(const GIGParams& p, double x) {
  return std::exp(gig_log_density(p, x));
}

/// int_0^inf x^order f(x; p) dx by double-exponential quadrature. With
/// order = 0 this is the normalization of the density.
inline double gig_moment_quadrature(const GIGParams& p, double order) {
  p.validate();
  auto integrand = [&](double x) {
    if (!(x > 0.0) || !std::isfinite(x)) return 0.0;
    return std::exp(order * std::log(x) + gig_log_density(p, x));
  };
  // tanh-sinh on (0, 1] handles the x^{lambda-1} endpoint of the Gamma limit;
  // exp-sinh takes the tail.
  boost::math::quadrature::tanh_sinh<double> head;
  boost::math::quadrature::exp_sinh<double> tail;
  const double tol = 1e-14;
  return head.integrate(integrand, 0.0, 1.0, tol) + tail.integrate(integrand, 1.0,
      std::numeric_limits<double>::infinity(), tol);
}

/// E X_{1/2,z}^nu = sqrt(2/pi) e^z z^{nu+1/2} K_{nu+1/2}(z).
inline double gig_moment_real(double nu, double z, const QuadratureSpec& spec = {}) {
  detail::require_positive(z, "gig_moment_real");
  const double k = bessel_k_real(nu + 0.5, z, spec);
  return detail::checked(std::sqrt(2.0 / std::numbers::pi) * std::exp(z) *
                             std::pow(z, nu + 0.5) * k,
                         "gig_moment_real");
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// Independent substream seed for (seed, stream), via splitmix64.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Draws from X_{-1/2,z}, the inverse Gaussian law with mean z and shape z^2,
/// by the transformation-with-rejection method (one normal, one uniform).
inline SampleSet sample_inverse_gaussian(double z, std::size_t count, std::uint64_t seed) {
  detail::require_positive(z, "sample_inverse_gaussian");
  const double mu = z;
  const double shape = z * z;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  SampleSet out{std::vector<double>(count), seed};
  for (auto& v : out.values) {
    const double nu = normal(rng);
    const double y = nu * nu;
    const double my = mu * y;
    // smaller root of the quadratic, in cancellation-free form
    const double x = mu - 2.0 * mu * my / (my + std::sqrt(4.0 * mu * shape * y + my * my));
    v = uniform(rng) * (mu + x) <= mu ? x : mu * mu / x;
  }
  return out;
}

/// Gamma(shape, scale = 2) draws, i.e. X_{shape,0}.
inline SampleSet sample_gamma(double shape, std::size_t count, std::uint64_t seed) {
  if (!(shape > 0.0) || !std::isfinite(shape))
    throw std::domain_error("sample_gamma: shape must be positive");
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(shape, 2.0);
  SampleSet out{std::vector<double>(count), seed};
  for (auto& v : out.values) v = gamma(rng);
  return out;
}

/// X_{1/2,z} as X_{-1/2,z} + X_{1/2,0}. z = 0 is the pure Gamma(1/2, 2) law.
inline SampleSet sample_half_gig(double z, std::size_t count, std::uint64_t seed) {
  if (!(z >= 0.0) || !std::isfinite(z))
    throw std::domain_error("sample_half_gig: z must be nonnegative");
  if (z == 0.0) return sample_gamma(0.5, count, seed);
  SampleSet out = sample_inverse_gaussian(z, count, derive_seed(seed, 0));
  const SampleSet chi2 = sample_gamma(0.5, count, derive_seed(seed, 1));
  for (std::size_t i = 0; i < count; ++i) out.values[i] += chi2.values[i];
  out.seed = seed;
  return out;
}

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov two-sample test
// ---------------------------------------------------------------------------

/// sup_x |F_a(x) - F_b(x)| of the two empirical CDFs.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_statistic: samples must be nonempty");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

/// c(alpha) sqrt((n1 + n2) / (n1 n2)); c = 1.628 corresponds to alpha = 0.01.
inline double ks_threshold(std::size_t n1, std::size_t n2, double c_alpha = 1.628) {
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  return c_alpha * std::sqrt((a + b) / (a * b));
}

struct SampleSummary {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Mean of x^power and its estimated standard error.
inline SampleSummary summarize(std::span<const double> values, unsigned power = 1) {
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += std::pow(v, power);
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) {
    const double d = std::pow(v, power) - mean;
    ss += d * d;
  }
  const double var = values.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

struct DistributionReport {
  std::string test;
  std::vector<double> z;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
  // First-moment cross-check: both sides should have this mean.
  double expected_mean = 0.0;
  SampleSummary lhs;
  SampleSummary rhs;
};

namespace detail {

inline DistributionReport ks_report(std::string test, std::vector<double> z,
                                    std::size_t count, std::uint64_t seed,
                                    const std::vector<double>& lhs,
                                    const std::vector<double>& rhs,
                                    double expected_mean) {
  DistributionReport r;
  r.test = std::move(test);
  r.z = std::move(z);
  r.count = count;
  r.seed = seed;
  r.statistic = ks_statistic(lhs, rhs);
  r.threshold = ks_threshold(lhs.size(), rhs.size());
  r.passed = r.statistic < r.threshold;
  r.expected_mean = expected_mean;
  r.lhs = summarize(lhs);
  r.rhs = summarize(rhs);
  return r;
}

inline void add_into(std::vector<double>& acc, const SampleSet& s) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s.values[i];
}

}  // namespace detail

/// X_{-1/2,z1} + X_{-1/2,z2} against X_{-1/2,z1+z2}.
inline DistributionReport mc_verify_stability(double z1, double z2, std::size_t count,
                                              std::uint64_t seed) {
  std::vector<double> lhs = sample_inverse_gaussian(z1, count, derive_seed(seed, 0)).values;
  detail::add_into(lhs, sample_inverse_gaussian(z2, count, derive_seed(seed, 1)));
  const auto rhs = sample_inverse_gaussian(z1 + z2, count, derive_seed(seed, 2)).values;
  return detail::ks_report("stability", {z1, z2}, count, seed, lhs, rhs, z1 + z2);
}

/// X_{1/2,z1} + X_{1/2,z2} against X_{1/2,0} + X_{1/2,z1+z2}.
inline DistributionReport mc_verify_lemma2(double z1, double z2, std::size_t count,
                                           std::uint64_t seed) {
  detail::require_positive(z1, "mc_verify_lemma2");
  detail::require_positive(z2, "mc_verify_lemma2");
  std::vector<double> lhs = sample_half_gig(z1, count, derive_seed(seed, 0)).values;
  detail::add_into(lhs, sample_half_gig(z2, count, derive_seed(seed, 1)));
  std::vector<double> rhs = sample_gamma(0.5, count, derive_seed(seed, 2)).values;
  detail::add_into(rhs, sample_half_gig(z1 + z2, count, derive_seed(seed, 3)));
  return detail::ks_report("lemma2", {z1, z2}, count, seed, lhs, rhs, 2.0 + z1 + z2);
}

/// sum_i X_{1/2,z_i} against X_{1/2,sum z_i} + X_{(m-1)/2,0}.
inline DistributionReport mc_verify_extension(std::span<const double> z_vec,
                                              std::size_t count, std::uint64_t seed) {
  const std::size_t m = z_vec.size();
  if (m < 2) throw std::invalid_argument("mc_verify_extension: need at least two z values");
  for (double z : z_vec) detail::require_positive(z, "mc_verify_extension");
  std::vector<double> lhs(count, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    detail::add_into(lhs, sample_half_gig(z_vec[i], count, derive_seed(seed, i)));
  const double total = std::accumulate(z_vec.begin(), z_vec.end(), 0.0);
  std::vector<double> rhs = sample_half_gig(total, count, derive_seed(seed, m)).values;
  detail::add_into(rhs, sample_gamma((m - 1.0) / 2.0, count, derive_seed(seed, m + 1)));
  return detail::ks_report("extension", {z_vec.begin(), z_vec.end()}, count, seed, lhs,
                           rhs, static_cast<double>(m) + total);
}

struct MomentReport {
  double z = 0.0;
  unsigned n = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double empirical = 0.0;
  double target = 0.0;
  double standard_error = 0.0;
  bool passed = false;
};

/// Empirical E X_{1/2,z}^n against theta_n(z), within 3 standard errors.
inline MomentReport mc_moment_check(double z, unsigned n, std::size_t count,
                                    std::uint64_t seed) {
  detail::require_positive(z, "mc_moment_check");
  if (n > 4) throw std::invalid_argument("mc_moment_check: n must be <= 4");
  if (count < 2) throw std::invalid_argument("mc_moment_check: count must be >= 2");
  const SampleSet s = sample_half_gig(z, count, seed);
  const SampleSummary summary = summarize(s.values, n);
  MomentReport r;
  r.z = z;
  r.n = n;
  r.count = count;
  r.seed = seed;
  r.empirical = summary.mean;
  r.standard_error = summary.standard_error;
  r.target = moment_theta(n, BigRational(z)).get_d();
  r.passed = std::abs(r.empirical - r.target) <= 3.0 * r.standard_error;
  return r;
}

// ---------------------------------------------------------------------------
// Inequalities for nu -> K_nu(z)
// ---------------------------------------------------------------------------

struct TuranReport {
  double x = 0.0, y = 0.0, p = 0.0, q = 0.0, z = 0.0;
  double lhs = 0.0;  // K_{x/p + y/q}(z)
  double rhs = 0.0;  // K_x(z)^{1/p} K_y(z)^{1/q}
  bool passed = false;
};

/// K_{x/p+y/q}(z) <= K_x(z)^{1/p} K_y(z)^{1/q} with 1/p + 1/q = 1.
inline TuranReport check_turan(double x, double y, double p, double z) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("check_turan: p must exceed 1");
  detail::require_positive(z, "check_turan");
  const double q = p / (p - 1.0);
  if (!(x / p > -0.5) || !(y / q > -0.5))
    throw std::domain_error("check_turan: need x/p > -1/2 and y/q > -1/2");
  TuranReport r{x, y, p, q, z};
  r.lhs = bessel_k_real(x / p + y / q, z);
  r.rhs = std::pow(bessel_k_real(x, z), 1.0 / p) * std::pow(bessel_k_real(y, z), 1.0 / q);
  r.passed = r.lhs <= r.rhs * (1.0 + 1e-9);
  return r;
}

struct LogConvexityReport {
  double z = 0.0;
  std::size_t triples_checked = 0;
  // Smallest log K_{nu-h} + log K_{nu+h} - 2 log K_nu over checked triples.
  double min_second_difference = 0.0;
  double worst_nu = 0.0;
  bool passed = false;
};

/// Second differences of log K_nu(z) over every equally spaced consecutive
/// triple of a sorted grid must be >= -1e-9.
inline LogConvexityReport check_logconvexity(std::span<const double> nu_grid, double z) {
  detail::require_positive(z, "check_logconvexity");
  if (!std::is_sorted(nu_grid.begin(), nu_grid.end()) ||
      std::adjacent_find(nu_grid.begin(), nu_grid.end()) != nu_grid.end())
    throw std::invalid_argument("check_logconvexity: grid must be strictly increasing");
  LogConvexityReport r;
  r.z = z;
  r.min_second_difference = std::numeric_limits<double>::infinity();
  std::vector<double> log_k(nu_grid.size());
  for (std::size_t i = 0; i < nu_grid.size(); ++i)
    log_k[i] = std::log(bessel_k_real(nu_grid[i], z));
  for (std::size_t i = 1; i + 1 < nu_grid.size(); ++i) {
    const double h1 = nu_grid[i] - nu_grid[i - 1];
    const double h2 = nu_grid[i + 1] - nu_grid[i];
    if (std::abs(h1 - h2) > 1e-9 * std::max(1.0, std::abs(h1))) continue;
    const double second = log_k[i - 1] + log_k[i + 1] - 2.0 * log_k[i];
    ++r.triples_checked;
    if (second < r.min_second_difference) {
      r.min_second_difference = second;
      r.worst_nu = nu_grid[i];
    }
  }
  r.passed = r.min_second_difference >= -1e-9;
  return r;
}

}  // namespace besselid

#endif  // BESSELID_GIG_HPP_
