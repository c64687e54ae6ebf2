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

#ifndef BESSELID_EXACT_HPP_
#define BESSELID_EXACT_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace besselid {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// True when `r` is gcd-reduced with a positive denominator.
inline bool is_canonical(const BigRational& r) {
  if (sgn(r.get_den()) <= 0) return false;
  if (sgn(r.get_num()) == 0) return r.get_den() == 1;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return g == 1;
}

/// Builds num/den in canonical form. Throws on a zero denominator.
inline BigRational make_rational(const BigInt& num, const BigInt& den = 1) {
  if (sgn(den) == 0) throw std::domain_error("make_rational: zero denominator");
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const BigRational& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// Combinatorial primitives
// ---------------------------------------------------------------------------

/// C(n, k); zero outside 0 <= k <= n.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

inline BigInt factorial(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("factorial: n must be nonnegative");
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

inline BigRational pow_rational(const BigRational& base, unsigned exponent) {
  BigRational out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

/// Rising factorial (a)_j = a(a+1)...(a+j-1) for integer or half-integer a.
inline BigRational pochhammer_half(const BigRational& a, std::int64_t j) {
  if (a.get_den() != 1 && a.get_den() != 2)
    throw std::invalid_argument(
        "pochhammer_half: argument must be an integer or half-integer");
  if (j < 0) throw std::invalid_argument("pochhammer_half: j must be >= 0");
  BigRational out(1);
  BigRational term = a;
  for (std::int64_t i = 0; i < j; ++i) {
    out *= term;
    term += 1;
  }
  return out;
}

/// Gamma(n + 1/2) / Gamma(1/2) = (2n)! / (4^n n!).
inline BigRational gamma_half_ratio(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("gamma_half_ratio: n must be >= 0");
  BigInt four_pow;
  mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned long>(n));
  return make_rational(factorial(2 * n), four_pow * factorial(n));
}

// ---------------------------------------------------------------------------
// Weak compositions
// ---------------------------------------------------------------------------

/// A weak composition (k_1, ..., k_m) of n.
struct Composition {
  std::vector<unsigned> parts;
  unsigned n = 0;

  std::size_t size() const { return parts.size(); }
  unsigned operator[](std::size_t i) const { return parts[i]; }
  bool operator==(const Composition&) const = default;
};

/// Every weak composition of n into m parts, in lexicographic order.
/// There are C(n+m-1, m-1) of them.
inline std::vector<Composition> weak_compositions(unsigned n, unsigned m) {
  if (m == 0) throw std::invalid_argument("weak_compositions: m must be >= 1");
  std::vector<Composition> out;
  std::vector<unsigned> parts(m, 0);
  // Recursive fill: slot i takes 0..remaining, last slot takes the rest.
  auto fill = [&](auto&& self, unsigned slot, unsigned remaining) -> void {
    if (slot + 1 == m) {
      parts[slot] = remaining;
      out.push_back(Composition{parts, n});
      return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
      parts[slot] = k;
      self(self, slot + 1, remaining - k);
    }
  };
  fill(fill, 0, n);
  return out;
}

// ---------------------------------------------------------------------------
// Univariate polynomials
// ---------------------------------------------------------------------------

/// Exact polynomial in one variable. coeffs[i] multiplies z^i; the highest
/// stored coefficient is nonzero and the zero polynomial has no coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
  }
  UniPoly(std::initializer_list<BigRational> coeffs) : coeffs_(coeffs) {
    normalize();
  }

  static UniPoly constant(const BigRational& c) { return UniPoly({c}); }
  static UniPoly monomial(unsigned degree, const BigRational& c = 1) {
    std::vector<BigRational> coeffs(degree + 1, BigRational(0));
    coeffs[degree] = c;
    return UniPoly(std::move(coeffs));
  }

  const std::vector<BigRational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  BigRational operator[](std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : BigRational(0);
  }
  const BigRational& leading() const {
    if (coeffs_.empty()) throw std::logic_error("leading: zero polynomial");
    return coeffs_.back();
  }

  BigRational operator()(const BigRational& z) const {
    BigRational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= z;
      acc += *it;
    }
    return acc;
  }

  double eval(double z) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * z + it->get_d();
    return acc;
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
  }
  UniPoly& operator*=(const BigRational& c) {
    for (auto& x : coeffs_) x *= c;
    normalize();
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const BigRational& c) { return a *= c; }
  friend UniPoly operator*(const BigRational& c, UniPoly a) { return a *= c; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRational> out(a.coeffs_.size() + b.coeffs_.size() - 1,
                                 BigRational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(out));
  }
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  /// p(c z).
  UniPoly rescaled(const BigRational& c) const {
    std::vector<BigRational> out = coeffs_;
    BigRational power(1);
    for (auto& x : out) {
      x *= power;
      power *= c;
    }
    return UniPoly(std::move(out));
  }

  /// z * p(z).
  UniPoly shifted_up() const {
    if (is_zero()) return {};
    std::vector<BigRational> out;
    out.reserve(coeffs_.size() + 1);
    out.emplace_back(0);
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return UniPoly(std::move(out));
  }

  friend std::ostream& operator<<(std::ostream& os, const UniPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
      if (sgn(p.coeffs_[i]) == 0) continue;
      if (!first) os << " + ";
      os << "(" << p.coeffs_[i].get_str() << ")";
      if (i > 0) os << "*z^" << i;
      first = false;
    }
    return os;
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
#ifndef NDEBUG
    for (const auto& c : coeffs_) assert(is_canonical(c));
#endif
  }

  std::vector<BigRational> coeffs_;
};

// ---------------------------------------------------------------------------
// Multivariate polynomials
// ---------------------------------------------------------------------------

using Exponents = std::vector<unsigned>;

/// Exact polynomial in m variables z_1..z_m, stored as a sorted map from
/// exponent vector to nonzero coefficient. Iteration order is lexicographic
/// in the exponent vector.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, BigRational>;

  explicit MultiPoly(unsigned num_vars) : num_vars_(num_vars) {}

  static MultiPoly constant(unsigned num_vars, const BigRational& c) {
    MultiPoly p(num_vars);
    p.add_term(Exponents(num_vars, 0), c);
    return p;
  }

  unsigned num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  BigRational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigRational(0) : it->second;
  }

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const {
    int best = -1;
    for (const auto& [e, c] : terms_) {
      unsigned d = 0;
      for (unsigned x : e) d += x;
      best = std::max(best, static_cast<int>(d));
    }
    return best;
  }

  void add_term(const Exponents& e, const BigRational& c) {
    if (e.size() != num_vars_)
      throw std::invalid_argument("MultiPoly: exponent vector has wrong arity");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  BigRational operator()(std::span<const BigRational> point) const {
    if (point.size() != num_vars_)
      throw std::invalid_argument("MultiPoly: evaluation point has wrong arity");
    BigRational acc(0);
    for (const auto& [e, c] : terms_) {
      BigRational term = c;
      for (unsigned i = 0; i < num_vars_; ++i)
        term *= pow_rational(point[i], e[i]);
      acc += term;
    }
    return acc;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const BigRational& c) {
    if (sgn(c) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, x] : terms_) x *= c;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const BigRational& c) { return a *= c; }
  friend MultiPoly operator*(const BigRational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_arity(b);
    MultiPoly out(a.num_vars_);
    Exponents e(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (unsigned i = 0; i < a.num_vars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [e, c] : p.terms_) {
      if (!first) os << " + ";
      os << "(" << c.get_str() << ")";
      for (unsigned i = 0; i < e.size(); ++i)
        if (e[i] > 0) os << "*z" << (i + 1) << "^" << e[i];
      first = false;
    }
    return os;
  }

 private:
  void check_arity(const MultiPoly& o) const {
    if (o.num_vars_ != num_vars_)
      throw std::invalid_argument("MultiPoly: operands have different arity");
  }

  unsigned num_vars_;
  TermMap terms_;
};

/// p viewed as a polynomial in variable `slot` of an m-variable ring.
inline MultiPoly embed_univariate(const UniPoly& p, unsigned m, unsigned slot) {
  if (slot >= m)
    throw std::out_of_range("embed_univariate: slot must be < m");
  MultiPoly out(m);
  Exponents e(m, 0);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    e[slot] = static_cast<unsigned>(i);
    out.add_term(e, p.coeffs()[i]);
  }
  return out;
}

/// p(z_1 + ... + z_m), expanded with multinomial coefficients.
inline MultiPoly substitute_sum(const UniPoly& p, unsigned m) {
  if (m == 0) throw std::invalid_argument("substitute_sum: m must be >= 1");
  MultiPoly out(m);
  for (std::size_t d = 0; d < p.coeffs().size(); ++d) {
    const BigRational& c = p.coeffs()[d];
    if (sgn(c) == 0) continue;
    const BigInt d_fact = factorial(static_cast<std::int64_t>(d));
    for (const auto& comp : weak_compositions(static_cast<unsigned>(d), m)) {
      BigInt denom = 1;
      for (unsigned k : comp.parts) denom *= factorial(k);
      out.add_term(comp.parts, c * make_rational(d_fact, denom));
    }
  }
  return out;
}

/// Sets every z_i = z, collapsing to a univariate polynomial.
inline UniPoly collapse(const MultiPoly& p) {
  std::vector<BigRational> coeffs;
  for (const auto& [e, c] : p.terms()) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    if (coeffs.size() <= d) coeffs.resize(d + 1, BigRational(0));
    coeffs[d] += c;
  }
  return UniPoly(std::move(coeffs));
}

}  // namespace besselid

#endif  // BESSELID_EXACT_HPP_
