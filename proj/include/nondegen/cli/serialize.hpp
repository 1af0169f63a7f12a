#pragma once

#include <complex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nondegen/avoidance/avoidance.hpp"
#include "nondegen/core/rational.hpp"
#include "nondegen/exactnum/unipoly.hpp"

namespace nondegen::cli {

using Json = nlohmann::json;

// Exact values are strings "p/q" (or "p"); Gaussian values are {"re", "im"}.
Json to_json(const Rational& q);
Json to_json(const GaussianRational& z);
Json to_json(std::complex<double> z);
Json to_json(const ExactPoly& p);
Json to_json(const avoidance::RationalPoly& p);
Json to_json(const RationalMatrix& m);

/// Accepts "p/q", decimal strings, integers, and floats (read through their
/// shortest decimal form).
Rational rational_from_json(const Json& j, const std::string& what);
/// Accepts a rational literal or {"re": .., "im": ..}.
GaussianRational gaussian_from_json(const Json& j, const std::string& what);
std::complex<double> complex_from_json(const Json& j, const std::string& what);
double double_from_json(const Json& j, const std::string& what);

ExactPoly exact_poly_from_json(const Json& j, const std::string& what);
avoidance::RationalPoly rational_poly_from_json(const Json& j, std::size_t variables, const std::string& what);

}  // namespace nondegen::cli
