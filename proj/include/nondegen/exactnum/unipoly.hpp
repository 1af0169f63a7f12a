#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nondegen/core/errors.hpp"
#include "nondegen/core/rational.hpp"

namespace nondegen {

/// Upper bound on the degree of any polynomial built by the library.
inline constexpr std::size_t kDegreeCap = 10000;

inline void check_degree_cap(std::size_t degree) {
  if (degree > kDegreeCap)
    throw DegreeCapExceeded("polynomial degree " + std::to_string(degree) + " exceeds cap " +
                            std::to_string(kDegreeCap));
}

/// Dense univariate polynomial, coefficients lowest degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
template <class S>
class UniPoly {
 public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;

  UniPoly() = default;
  explicit UniPoly(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<S> coeffs) : coeffs_(coeffs) { trim(); }

  static UniPoly constant(S c) { return UniPoly(std::vector<S>{std::move(c)}); }

  static UniPoly monomial(S c, std::size_t k) {
    check_degree_cap(k);
    std::vector<S> coeffs(k + 1, S(0));
    coeffs[k] = std::move(c);
    return UniPoly(std::move(coeffs));
  }

  /// z - a
  static UniPoly linear_root(const S& a) { return UniPoly({-a, S(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const S> coeffs() const { return coeffs_; }

  /// Coefficient of z^k (zero past the degree).
  S coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : S(0); }

  template <class T>
  UniPoly<T> cast() const {
    std::vector<T> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(T(c));
    return UniPoly<T>(std::move(out));
  }

  UniPoly& operator+=(const UniPoly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), S(0));
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    trim();
    return *this;
  }

  UniPoly& operator-=(const UniPoly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), S(0));
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    trim();
    return *this;
  }

  UniPoly& operator*=(const S& c) {
    if (Traits::is_zero(c)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& a : coeffs_) a *= c;
    trim();
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const S& c) { return a *= c; }
  friend UniPoly operator*(const S& c, UniPoly a) { return a *= c; }
  friend UniPoly operator-(UniPoly a) { return a *= S(-1); }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    check_degree_cap(a.coeffs_.size() + b.coeffs_.size() - 2);
    std::vector<S> out(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (Traits::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UniPoly(std::move(out));
  }

  UniPoly& operator*=(const UniPoly& other) { return *this = *this * other; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

 private:
  void trim() {
    while (!coeffs_.empty() && Traits::is_zero(coeffs_.back())) coeffs_.pop_back();
    check_degree_cap(coeffs_.empty() ? 0 : coeffs_.size() - 1);
  }

  std::vector<S> coeffs_;
};

using ExactPoly = UniPoly<GaussianRational>;
using FloatPoly = UniPoly<std::complex<double>>;

/// Horner evaluation; exact for exact scalars.
template <class S>
S poly_eval(const UniPoly<S>& p, const S& z) {
  S acc(0);
  const auto c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc *= z;
    acc += c[k];
  }
  return acc;
}

/// k-th formal derivative.
template <class S>
UniPoly<S> poly_derivative(const UniPoly<S>& p, unsigned k) {
  const auto c = p.coeffs();
  if (k >= c.size()) return {};
  std::vector<S> out;
  out.reserve(c.size() - k);
  for (std::size_t j = k; j < c.size(); ++j) {
    // falling factorial j (j-1) ... (j-k+1)
    S coeff = c[j];
    for (std::size_t m = 0; m < k; ++m) coeff *= S(static_cast<long long>(j - m));
    out.push_back(std::move(coeff));
  }
  return UniPoly<S>(std::move(out));
}

template <class S>
UniPoly<S> poly_pow(const UniPoly<S>& base, unsigned exponent) {
  UniPoly<S> result = UniPoly<S>::constant(S(1));
  UniPoly<S> b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

/// (P(z), P'(z), ..., P^(d)(z)).
template <class S>
std::vector<S> poly_jet(const UniPoly<S>& p, const S& z, unsigned d) {
  std::vector<S> jet;
  jet.reserve(d + 1);
  UniPoly<S> q = p;
  for (unsigned k = 0; k <= d; ++k) {
    jet.push_back(poly_eval(q, z));
    q = poly_derivative(q, 1);
  }
  return jet;
}

/// Exact evaluation over Q[i] through a common integer denominator, which
/// avoids a gcd per Horner step on high-degree polynomials.
GaussianRational poly_eval(const ExactPoly& p, const GaussianRational& z);
std::vector<GaussianRational> poly_jet(const ExactPoly& p, const GaussianRational& z, unsigned d);

/// Maximum of |P| over m equispaced points of the circle |z| = r.
/// A lower estimate of the sup norm on the closed disk.
template <class S>
double sampled_sup(const UniPoly<S>& p, double r, std::size_t m) {
  require(m >= 1, "sampled_sup needs at least one sample");
  require(r > 0.0, "sampled_sup radius must be positive");
  if (p.is_zero()) return 0.0;
  std::vector<std::complex<double>> c;
  c.reserve(p.size());
  for (const auto& a : p.coeffs()) c.push_back(ScalarTraits<S>::to_complex(a));
  double best = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    const std::complex<double> z = std::polar(r, angle);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    best = std::max(best, std::abs(acc));
  }
  return best;
}

/// Sum of |a_k| r^k, a certified over-estimate of sup_{|z|<=r} |P(z)|.
/// The exact overload returns a rigorous rational upper bound that is
/// exact whenever every |a_k| is rational.
Rational sup_norm_bound(const ExactPoly& p, const Rational& r);
double sup_norm_bound(const FloatPoly& p, double r);

}  // namespace nondegen
