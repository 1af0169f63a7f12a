#include <algorithm>

#include "nondegen/exactnum/unipoly.hpp"

namespace nondegen {

namespace {

struct GaussInt {
  Integer re;
  Integer im;
};

// Coefficients scaled to Gaussian integers: p = (1/L) sum A_k z^k.
struct ScaledPoly {
  std::vector<GaussInt> A;
  Integer L{1};
};

ScaledPoly scale_to_integers(const ExactPoly& p) {
  ScaledPoly out;
  for (const auto& c : p.coeffs()) {
    for (const Rational* part : {&c.real(), &c.imag()}) {
      const Integer den = denominator(*part);
      if (out.L % den != 0) out.L = out.L / gcd(out.L, den) * den;
    }
  }
  out.A.reserve(p.size());
  for (const auto& c : p.coeffs()) {
    out.A.push_back({numerator(c.real()) * (out.L / denominator(c.real())),
                     numerator(c.imag()) * (out.L / denominator(c.imag()))});
  }
  return out;
}

// sum_{k >= j} A_k k!/(k-j)! z^{k-j} with z = w/q, w a Gaussian integer.
GaussianRational scaled_derivative(const ScaledPoly& p, const GaussInt& w, const Integer& q, unsigned j) {
  const std::size_t n = p.A.size();
  if (n <= j) return GaussianRational(0);
  const bool real_point = w.im == 0;
  GaussInt acc{0, 0};
  Integer qpow(1);
  for (std::size_t k = n; k-- > j;) {
    // acc = acc * w + A_k * falling(k, j) * q^(n-1-k)
    if (k + 1 < n) {
      if (real_point) {
        acc.re *= w.re;
        acc.im *= w.re;
      } else {
        Integer re = acc.re * w.re - acc.im * w.im;
        Integer im = acc.re * w.im + acc.im * w.re;
        acc.re = std::move(re);
        acc.im = std::move(im);
      }
      qpow *= q;
    }
    Integer falling(1);
    for (unsigned m = 0; m < j; ++m) falling *= static_cast<unsigned long>(k - m);
    const Integer scale = falling * qpow;
    acc.re += p.A[k].re * scale;
    acc.im += p.A[k].im * scale;
  }
  // Horner ran over degree n-1-j, so the denominator is L q^(n-1-j).
  const Integer den = p.L * qpow;
  return GaussianRational(Rational(acc.re, den), Rational(acc.im, den));
}

}  // namespace

std::vector<GaussianRational> poly_jet(const ExactPoly& p, const GaussianRational& z, unsigned d) {
  std::vector<GaussianRational> jet(d + 1, GaussianRational(0));
  if (p.is_zero()) return jet;
  const ScaledPoly scaled = scale_to_integers(p);
  const Integer q = denominator(z.real()) / gcd(denominator(z.real()), denominator(z.imag())) *
                    denominator(z.imag());
  const GaussInt w{numerator(z.real()) * (q / denominator(z.real())),
                   numerator(z.imag()) * (q / denominator(z.imag()))};
  for (unsigned j = 0; j <= d; ++j) jet[j] = scaled_derivative(scaled, w, q, j);
  return jet;
}

GaussianRational poly_eval(const ExactPoly& p, const GaussianRational& z) { return poly_jet(p, z, 0).front(); }

}  // namespace nondegen
