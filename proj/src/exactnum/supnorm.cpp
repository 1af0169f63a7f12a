#include <cmath>

#include "nondegen/exactnum/unipoly.hpp"

namespace nondegen {

Rational sup_norm_bound(const ExactPoly& p, const Rational& r) {
  require(r > 0, "sup_norm_bound radius must be positive");
  Rational total(0);
  Rational radius_power(1);
  for (const auto& a : p.coeffs()) {
    if (!a.is_zero()) total += abs_upper(a) * radius_power;
    radius_power *= r;
  }
  return total;
}

double sup_norm_bound(const FloatPoly& p, double r) {
  require(r > 0.0, "sup_norm_bound radius must be positive");
  double total = 0.0;
  double radius_power = 1.0;
  for (const auto& a : p.coeffs()) {
    total += std::abs(a) * radius_power;
    radius_power *= r;
  }
  return total;
}

}  // namespace nondegen
