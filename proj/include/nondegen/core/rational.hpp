#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace nondegen {

// Expression templates are off so values interoperate with Eigen and `auto`.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Parses "7", "-2/3", "0.125", "1e-6", "-1.5E3" into an exact rational.
Rational parse_rational(std::string_view text);

/// Exact value of a finite double.
Rational rational_from_double(double value);

/// Exact value of the shortest decimal that round-trips to `value`.
/// This is how JSON floats such as 0.1 become 1/10.
Rational rational_from_decimal_double(double value);

/// "p" or "p/q" with q > 0.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

Rational rational_pow(const Rational& base, unsigned exponent);

/// Element of Q[i]; both parts are kept in lowest terms by GMP.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = Rational(0)) : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(int re) : re_(re) {}
  GaussianRational(long re) : re_(re) {}
  GaussianRational(long long re) : re_(re) {}

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  /// |z|^2, exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational inverse() const;

  std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

  GaussianRational& operator+=(const GaussianRational& other);
  GaussianRational& operator-=(const GaussianRational& other);
  GaussianRational& operator*=(const GaussianRational& other);
  GaussianRational& operator/=(const GaussianRational& other);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  // Mixing with floating values demotes to floating.
  friend std::complex<double> operator+(const GaussianRational& a, std::complex<double> b) { return a.to_complex() + b; }
  friend std::complex<double> operator+(std::complex<double> a, const GaussianRational& b) { return a + b.to_complex(); }
  friend std::complex<double> operator-(const GaussianRational& a, std::complex<double> b) { return a.to_complex() - b; }
  friend std::complex<double> operator-(std::complex<double> a, const GaussianRational& b) { return a - b.to_complex(); }
  friend std::complex<double> operator*(const GaussianRational& a, std::complex<double> b) { return a.to_complex() * b; }
  friend std::complex<double> operator*(std::complex<double> a, const GaussianRational& b) { return a * b.to_complex(); }
  friend std::complex<double> operator/(const GaussianRational& a, std::complex<double> b) { return a.to_complex() / b; }
  friend std::complex<double> operator/(std::complex<double> a, const GaussianRational& b) { return a / b.to_complex(); }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

 private:
  Rational re_{0};
  Rational im_{0};
};

GaussianRational gaussian_pow(const GaussianRational& base, unsigned exponent);

/// "a", "a+bi", "a-bi" or "bi" with exact parts.
std::string to_string(const GaussianRational& value);

/// Rigorous rational bounds on |z|; exact whenever |z| is rational.
Rational abs_upper(const GaussianRational& z);
Rational abs_lower(const GaussianRational& z);

/// Rigorous rational bounds on sqrt(q) for q >= 0.
Rational sqrt_upper(const Rational& q);
Rational sqrt_lower(const Rational& q);

/// Compile-time description of the scalar types polynomials are templated on.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  using Real = Rational;
  static constexpr bool exact = true;
  static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
  static std::complex<double> to_complex(const GaussianRational& z) { return z.to_complex(); }
  static GaussianRational from_real(const Rational& x) { return GaussianRational(x); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  using Real = double;
  static constexpr bool exact = false;
  static bool is_zero(const std::complex<double>& z) { return z == std::complex<double>(0.0, 0.0); }
  static std::complex<double> to_complex(const std::complex<double>& z) { return z; }
  static std::complex<double> from_real(double x) { return {x, 0.0}; }
};

template <>
struct ScalarTraits<Rational> {
  using Real = Rational;
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return x == 0; }
  static std::complex<double> to_complex(const Rational& x) { return {to_double(x), 0.0}; }
  static Rational from_real(const Rational& x) { return x; }
};

template <>
struct ScalarTraits<double> {
  using Real = double;
  static constexpr bool exact = false;
  static bool is_zero(double x) { return x == 0.0; }
  static std::complex<double> to_complex(double x) { return {x, 0.0}; }
  static double from_real(double x) { return x; }
};

}  // namespace nondegen
