#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nondegen/core/eigen_support.hpp"
#include "nondegen/core/errors.hpp"

namespace nondegen::genpos {

using RealPoint = std::vector<double>;
using RationalPoint = std::vector<Rational>;

struct SphereCurveConfig {
  unsigned dimension = 2;
  std::vector<double> frequencies;  ///< dimension - 1 distinct positive values

  /// Frequencies 1, sqrt 2, sqrt 3, sqrt 5, ...
  static SphereCurveConfig standard(unsigned dimension);
  void validate() const;
};

/// Unit vector with spherical angles (f_1 t, ..., f_{d-1} t).
RealPoint dense_sphere_curve(double t, const SphereCurveConfig& cfg);

/// (2/pi) arctan(t) dense_sphere_curve(t), inside the open unit ball.
RealPoint gamma_curve(double t, const SphereCurveConfig& cfg);

enum class Provenance { analytic, greedy };

struct GammaSet {
  Provenance provenance = Provenance::analytic;
  unsigned dimension = 0;
  std::vector<RealPoint> points;              ///< analytic sets
  std::vector<RationalPoint> rational_points; ///< greedy sets
  std::vector<double> parameters;             ///< t_j for analytic sets
  std::vector<unsigned> schedule;             ///< greedy sets
  std::uint64_t seed = 0;
  unsigned final_bits = 0;                    ///< sampling box size at the end (greedy)
  std::uint64_t draws = 0;

  bool exact() const { return provenance == Provenance::greedy; }
  std::size_t size() const { return exact() ? rational_points.size() : points.size(); }
};

/// {1, 1/2, ..., 1/m}
std::vector<double> default_gamma0(std::size_t m);

GammaSet analytic_gamma_set(std::span<const double> parameters, const SphereCurveConfig& cfg);
GammaSet analytic_gamma_set(std::size_t m, const SphereCurveConfig& cfg);

/// C(d + k, d), the number of monomials of degree <= k in d variables.
std::size_t monomial_count(unsigned d, unsigned k);

/// Exponents of all monomials of degree <= k, by total degree and then
/// lexicographically descending within a degree (1, x, y, x^2, xy, y^2, ...).
std::vector<std::vector<unsigned>> monomial_exponents(unsigned d, unsigned k);

template <class S>
Matrix<S> veronese_matrix(std::span<const std::vector<S>> points, unsigned d, unsigned k) {
  require(k >= 1, "veronese degree must be at least 1");
  const auto exps = monomial_exponents(d, k);
  Matrix<S> out(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(exps.size()));
  for (std::size_t r = 0; r < points.size(); ++r) {
    require(points[r].size() == d, "point has the wrong dimension");
    for (std::size_t c = 0; c < exps.size(); ++c) {
      S value(1);
      for (unsigned v = 0; v < d; ++v)
        for (unsigned e = 0; e < exps[c][v]; ++e) value *= points[r][v];
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = value;
    }
  }
  return out;
}

inline constexpr double kFloatRankThreshold = 1e-9;

/// Singular values below kFloatRankThreshold * (largest) count as zero.
std::size_t float_rank(const Matrix<double>& m);

/// Coefficient vectors (columns) of degree-k polynomials vanishing on the
/// points, or nullopt when only the zero polynomial does.
std::optional<RationalMatrix> hypersurface_through(std::span<const RationalPoint> points, unsigned d, unsigned k);
std::optional<Matrix<double>> hypersurface_through(std::span<const RealPoint> points, unsigned d, unsigned k);

struct GreedyBudget {
  std::uint64_t max_draws = 1'000'000;
  unsigned initial_bits = 4;
  unsigned rejections_per_growth = 100;
};

/// Degree bound for the j-th point (1-based); the last entry repeats.
unsigned schedule_at(std::span<const unsigned> schedule, std::size_t j);

/// Seeded rejection sampler: after each acceptance, every subset of size
/// min(M(d,k), count) has full Veronese rank for every k <= K(j).
GammaSet greedy_rational_gamma(unsigned d, std::span<const unsigned> schedule, std::size_t m, std::uint64_t seed,
                               const GreedyBudget& budget = {});

inline constexpr double kExhaustiveSubsetLimit = 1e6;
inline constexpr std::size_t kSampledSubsets = 20000;

struct DegreeCheck {
  unsigned degree = 0;
  std::size_t monomials = 0;     ///< M(d, k)
  std::size_t subset_size = 0;   ///< min(M, |Gamma|)
  std::uint64_t subsets_checked = 0;
  bool exhaustive = true;
  std::size_t worst_rank = 0;
  double worst_relative_sigma = 1.0;  ///< float sets only
  std::vector<std::size_t> worst_subset;
  std::optional<std::vector<std::size_t>> witness;  ///< first rank-deficient subset
  std::size_t incidence_bound = 0;  ///< M - 1 points on any degree-k hypersurface
  std::size_t prefix_bound = 0;     ///< M - 1 + (k - 1)
  bool passed = false;
};

struct GenericPositionCertificate {
  std::vector<unsigned> schedule;
  std::vector<DegreeCheck> degrees;
  bool exact = true;
  bool certified() const;
  std::string verdict() const { return certified() ? "certified" : "violated"; }
};

/// Full-rank check of all subsets of size min(M(d,k), |Gamma|) for every
/// distinct degree in the schedule; a seeded sample of kSampledSubsets
/// subsets when there are more than kExhaustiveSubsetLimit.
GenericPositionCertificate certify_generic_position(const GammaSet& gamma, std::span<const unsigned> schedule,
                                                    std::uint64_t seed = 0);

/// Lexicographic successor of a sorted index subset of {0..n-1}.
bool next_subset(std::vector<std::size_t>& subset, std::size_t n);

/// C(n, k) as a double (saturating at infinity for huge values).
double binomial(std::size_t n, std::size_t k);

}  // namespace nondegen::genpos
