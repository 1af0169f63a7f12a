#include "nondegen/interp/interp.hpp"

namespace nondegen::interp {

namespace {

Rational factorial(unsigned m) {
  Rational out(1);
  for (unsigned k = 2; k <= m; ++k) out *= k;
  return out;
}

void check_peak_preconditions(const GaussianRational& p, const Rational& r, const Rational& eps) {
  require(r > 0, "peak radius must be positive");
  require(eps > 0, "peak budget must be positive");
  require(p.norm() > r * r, "peak point must satisfy |p| > r");
}

// Smallest N with scale_sq * rho^N < eps^2, rho = r^2/|p|^2 < 1.
unsigned exponent_for_scale_sq(const GaussianRational& p, const Rational& r, const Rational& eps,
                               const Rational& scale_sq) {
  check_peak_preconditions(p, r, eps);
  const Rational rho = r * r / p.norm();
  const Rational target = eps * eps;
  auto fits = [&](unsigned n) { return scale_sq * rational_pow(rho, n) < target; };
  if (fits(0)) return 0;
  unsigned hi = 1;
  while (!fits(hi)) {
    if (hi > kDegreeCap) throw DegreeCapExceeded("peak exponent exceeds the degree cap");
    hi *= 2;
  }
  unsigned lo = hi / 2;  // fails
  while (hi - lo > 1) {
    const unsigned mid = lo + (hi - lo) / 2;
    (fits(mid) ? hi : lo) = mid;
  }
  check_degree_cap(hi);
  return hi;
}

}  // namespace

unsigned peak_exponent(const GaussianRational& p, const Rational& r, const Rational& eps, const Rational& scale) {
  require(scale >= 0, "peak scale must be nonnegative");
  return exponent_for_scale_sq(p, r, eps, scale * scale);
}

ExactPoly peak_poly(const GaussianRational& p, const Rational& r, const Rational& eps) {
  const unsigned n = peak_exponent(p, r, eps);
  return ExactPoly::monomial(gaussian_pow(p.inverse(), n), n);
}

JetPeak jet_peak_construct(const GaussianRational& p, const Rational& r, const Rational& eps, const ExactJet& jet) {
  check_peak_preconditions(p, r, eps);
  const unsigned d = jet.order();
  const Rational stage_eps = eps / Rational(d + 1);
  const GaussianRational p_inv = p.inverse();

  JetPeak out;
  ExactPoly& poly = out.poly;
  for (unsigned m = 0; m <= d; ++m) {
    JetPeakStage stage;
    stage.order = m;
    stage.budget = eps * Rational(m + 1) / Rational(d + 1);
    // Q_m = (a_m - P_{m-1}^(m)(p)) / m! (z - p)^m vanishes to order m at p.
    const GaussianRational c =
        (jet[m] - poly_eval(poly_derivative(poly, m), p)) / GaussianRational(factorial(m));
    if (!c.is_zero()) {
      const ExactPoly q = poly_pow(ExactPoly::linear_root(p), m) * c;
      // For m = 0, |Q_0| = |a_0| is used exactly through its square.
      const unsigned n = m == 0 ? exponent_for_scale_sq(p, r, stage_eps, c.norm())
                                : peak_exponent(p, r, stage_eps / sup_norm_bound(q, r));
      stage.peak_exponent = n;
      poly += q * ExactPoly::monomial(gaussian_pow(p_inv, n), n);
    }
    stage.bound = sup_norm_bound(poly, r);
    if (!(stage.bound < stage.budget))
      throw CertificateFailure("jet_peak_poly: stage " + std::to_string(m) + " exceeded its budget");
    out.stages.push_back(std::move(stage));
  }
  out.bound = out.stages.back().bound;
  return out;
}

ExactPoly jet_peak_poly(const GaussianRational& p, const Rational& r, const Rational& eps, const ExactJet& jet) {
  return jet_peak_construct(p, r, eps, jet).poly;
}

}  // namespace nondegen::interp
