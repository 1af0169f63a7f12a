#include "nondegen/cli/serialize.hpp"

#include <cmath>

namespace nondegen::cli {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const GaussianRational& z) { return Json{{"re", to_string(z.real())}, {"im", to_string(z.imag())}}; }

Json to_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const ExactPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
  return coeffs;
}

Json to_json(const avoidance::RationalPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"exponent", e}, {"coeff", to_json(c)}});
  return terms;
}

Json to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Rational rational_from_json(const Json& j, const std::string& what) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const PreconditionError& e) {
      throw PreconditionError(what + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return j.is_number_unsigned() ? Rational(j.get<unsigned long long>()) : Rational(j.get<long long>());
  if (j.is_number_float()) {
    const double v = j.get<double>();
    require(std::isfinite(v), what + " must be finite");
    return rational_from_decimal_double(v);
  }
  throw PreconditionError(what + " must be a rational number");
}

GaussianRational gaussian_from_json(const Json& j, const std::string& what) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      require(key == "re" || key == "im", what + ": unknown field '" + key + "'");
    Rational re = j.contains("re") ? rational_from_json(j.at("re"), what + ".re") : Rational(0);
    Rational im = j.contains("im") ? rational_from_json(j.at("im"), what + ".im") : Rational(0);
    return {std::move(re), std::move(im)};
  }
  return GaussianRational(rational_from_json(j, what));
}

double double_from_json(const Json& j, const std::string& what) {
  if (j.is_number()) {
    const double v = j.get<double>();
    require(std::isfinite(v), what + " must be finite");
    return v;
  }
  if (j.is_string()) return to_double(rational_from_json(j, what));
  throw PreconditionError(what + " must be a number");
}

std::complex<double> complex_from_json(const Json& j, const std::string& what) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      require(key == "re" || key == "im", what + ": unknown field '" + key + "'");
    const double re = j.contains("re") ? double_from_json(j.at("re"), what + ".re") : 0.0;
    const double im = j.contains("im") ? double_from_json(j.at("im"), what + ".im") : 0.0;
    return {re, im};
  }
  return {double_from_json(j, what), 0.0};
}

ExactPoly exact_poly_from_json(const Json& j, const std::string& what) {
  require(j.is_array(), what + " must be an array of coefficients");
  std::vector<GaussianRational> coeffs;
  for (std::size_t k = 0; k < j.size(); ++k)
    coeffs.push_back(gaussian_from_json(j[k], what + "[" + std::to_string(k) + "]"));
  return ExactPoly(std::move(coeffs));
}

avoidance::RationalPoly rational_poly_from_json(const Json& j, std::size_t variables, const std::string& what) {
  require(j.is_array(), what + " must be an array of terms");
  avoidance::RationalPoly p(variables);
  for (std::size_t k = 0; k < j.size(); ++k) {
    const Json& term = j[k];
    const std::string here = what + "[" + std::to_string(k) + "]";
    require(term.is_object() && term.contains("exponent") && term.contains("coeff"),
            here + " must be {\"exponent\", \"coeff\"}");
    require(term.size() == 2, here + ": unknown fields");
    require(term.at("exponent").is_array(), here + ".exponent must be an array");
    Exponent e;
    for (const auto& x : term.at("exponent")) {
      require(x.is_number_unsigned() || (x.is_number_integer() && x.get<long long>() >= 0),
              here + ".exponent entries must be nonnegative integers");
      e.push_back(x.get<unsigned>());
    }
    require(e.size() == variables, here + ".exponent has the wrong length");
    p.add_term(std::move(e), rational_from_json(term.at("coeff"), here + ".coeff"));
  }
  return p;
}

}  // namespace nondegen::cli
