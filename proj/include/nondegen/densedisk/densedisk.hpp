#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nondegen::densedisk {

using Complex = std::complex<double>;

/// Membership tolerance for the half-plane, disk and polydisk types.
inline constexpr double kMembershipTolerance = 1e-12;

/// Positive frequencies lambda_1..lambda_{2n}, assumed Q-linearly independent.
class FrequencyVector {
 public:
  explicit FrequencyVector(std::vector<double> values);

  /// (1, sqrt 2, sqrt 3, sqrt 5, sqrt 7, ...): square roots of the first
  /// `count - 1` primes after a leading 1.
  static FrequencyVector standard(std::size_t count);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  double max() const;

 private:
  std::vector<double> values_;
};

class HalfPlanePoint {
 public:
  explicit HalfPlanePoint(Complex z);
  Complex value() const { return z_; }

 private:
  Complex z_;
};

class DiskPoint {
 public:
  explicit DiskPoint(Complex w);
  Complex value() const { return w_; }

 private:
  Complex w_;
};

class PolydiskPoint {
 public:
  explicit PolydiskPoint(std::vector<Complex> components);
  std::size_t size() const { return components_.size(); }
  Complex operator[](std::size_t i) const { return components_[i]; }
  std::span<const Complex> components() const { return components_; }

 private:
  std::vector<Complex> components_;
};

/// w -> -i (w + 1)/(w - 1), the unit disk onto the upper half plane.
HalfPlanePoint cayley_to_halfplane(const DiskPoint& w);
/// z -> (iz + 1)/(iz - 1).
DiskPoint cayley_to_disk(const HalfPlanePoint& z);

/// z -> (e^{i lambda_j z})_j in the polydisk of dimension lambda.size().
/// Each component is built in polar form: modulus e^{-lambda_j Im z}, phase lambda_j Re z.
PolydiskPoint torus_map(const HalfPlanePoint& z, const FrequencyVector& lambda);

/// v -> ((v_1 + v_2)/2, (v_3 + v_4)/2, ...).
PolydiskPoint pair_average(const PolydiskPoint& v);

/// The closed-form dense map from the disk into the bidisk with frequencies
/// (1, sqrt 2, sqrt 3, sqrt 5): u = (w+1)/(w-1),
/// w -> ((e^u + e^{sqrt2 u})/2, (e^{sqrt3 u} + e^{sqrt5 u})/2).
PolydiskPoint explicit_dense_map(const DiskPoint& w);

/// pair_average(torus_map(cayley_to_halfplane(w), lambda)).
PolydiskPoint composed_dense_map(const DiskPoint& w, const FrequencyVector& lambda);

struct AnglePair {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Angles with r e^{i alpha} + s e^{i beta} = 2w, requires r >= s > 0 and
/// r - s <= |2w| <= r + s. Of the two mirror solutions the one with
/// alpha - arg(2w) in [0, pi] is returned.
AnglePair angle_solve(Complex w, double r, double s);

struct TauSearch {
  double lower = 1e-9;
  double upper = 1e3;
  std::size_t scan_points = 4096;
};

/// A tau with (e^{-a tau} + e^{-b tau})/2 > |w_k| > |e^{-a tau} - e^{-b tau}|/2
/// for every pair (a, b) = (lambda_{2k-1}, lambda_{2k}). Returns the midpoint
/// of the lowest feasible interval found by a logarithmic scan refined by
/// bisection.
double radius_window_tau(std::span<const double> target_moduli, const FrequencyVector& lambda,
                         const TauSearch& search = {});

/// Distance between two angles on the circle, in [0, pi].
double circle_distance(double a, double b);

struct LineSearchResult {
  double t = 0.0;             ///< refined parameter
  double grid_t = 0.0;        ///< smallest admissible |t| on the grid
  double max_angle_error = 0.0;
};

/// A real t with circle_distance(lambda_j t, theta_j) < delta for all j. The
/// grid has step delta/(2 max lambda); the smallest admissible |t| on it is
/// returned (positive on ties), then locally refined.
LineSearchResult line_density_search(std::span<const double> theta, const FrequencyVector& lambda, double delta,
                                     double t_max);

struct PreimageBudget {
  double t_max = 1e7;
  TauSearch tau;
};

struct Preimage {
  Complex z;
  double tau = 0.0;
  double t = 0.0;
  double delta = 0.0;
  double error = 0.0;  ///< sup-norm residual, verified by direct evaluation
};

/// z in the upper half plane with |pair_average(torus_map(z)) - w|_inf < eps.
Preimage find_preimage(const PolydiskPoint& w, const FrequencyVector& lambda, double eps,
                       const PreimageBudget& budget = {});

struct TargetOutcome {
  std::vector<Complex> target;
  bool success = false;
  bool budget_exhausted = false;
  double error = 0.0;
  Complex z;
};

struct DensityReport {
  std::size_t dimension = 0;
  std::size_t targets = 0;
  std::size_t successes = 0;
  std::size_t budget_failures = 0;
  std::size_t other_failures = 0;
  double success_fraction = 0.0;
  double max_error = 0.0;
  double seconds = 0.0;  ///< wall time; not part of any deterministic output
  std::vector<TargetOutcome> outcomes;
};

/// Targets: per component, `grid` moduli evenly spaced in [0.1, 0.9] (0.5 when
/// grid = 1) times `grid` phases 2 pi j/grid, in lexicographic order.
std::vector<std::vector<Complex>> density_targets(std::size_t n, std::size_t grid);

DensityReport density_certify(const FrequencyVector& lambda, double eps, std::size_t grid,
                              const PreimageBudget& budget = {}, unsigned threads = 1);

}  // namespace nondegen::densedisk
