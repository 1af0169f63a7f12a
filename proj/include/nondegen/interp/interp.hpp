#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nondegen/exactnum/hermite.hpp"
#include "nondegen/exactnum/unipoly.hpp"

namespace nondegen::interp {

// ---------------------------------------------------------------------------
// Peak polynomials
// ---------------------------------------------------------------------------

/// Smallest N >= 0 with scale * (r/|p|)^N < eps, decided in exact arithmetic
/// on squared quantities, so no square root of |p| is ever rounded.
unsigned peak_exponent(const GaussianRational& p, const Rational& r, const Rational& eps,
                       const Rational& scale = Rational(1));

/// (z/p)^N with N = peak_exponent(p, r, eps): equals 1 at p and its
/// certified sup-norm bound on |z| <= r is below eps.
ExactPoly peak_poly(const GaussianRational& p, const Rational& r, const Rational& eps);

struct JetPeakStage {
  unsigned order = 0;  ///< m: jets 0..m are matched after this stage
  Rational bound;      ///< sup_norm_bound(P_m, r)
  Rational budget;     ///< (m+1)/(d+1) * eps
  unsigned peak_exponent = 0;
};

struct JetPeak {
  ExactPoly poly;
  Rational bound;
  std::vector<JetPeakStage> stages;
};

/// Builds P with P^(k)(p) = jet[k] for k = 0..d and sup_norm_bound(P, r) < eps
/// through the staged recursion P_m = P_{m-1} + Q_m R_m.
JetPeak jet_peak_construct(const GaussianRational& p, const Rational& r, const Rational& eps,
                           const ExactJet& jet);

ExactPoly jet_peak_poly(const GaussianRational& p, const Rational& r, const Rational& eps, const ExactJet& jet);

// ---------------------------------------------------------------------------
// Truncated entire interpolants over discrete site sets
// ---------------------------------------------------------------------------

/// Sites gamma_1, gamma_2, ... with |gamma_n| > r nondecreasing, pairwise distinct.
class SiteList {
 public:
  SiteList(std::vector<GaussianRational> sites, Rational guard_radius);

  const std::vector<GaussianRational>& sites() const { return sites_; }
  const Rational& guard_radius() const { return guard_radius_; }
  std::size_t size() const { return sites_.size(); }
  const GaussianRational& operator[](std::size_t i) const { return sites_[i]; }

  /// Integer sites first, first+1, ..., first+count-1 with the given guard radius.
  static SiteList integers(long long first, std::size_t count, Rational guard_radius);

 private:
  std::vector<GaussianRational> sites_;
  Rational guard_radius_;
};

/// Radii r < r_1 < r_2 < ... with r_n < |gamma_n|:
/// r_n = max((r + m_n)/2, r_{n-1} + (m_n - r_{n-1})/4), m_n a rational lower
/// bound of |gamma_n|.
std::vector<Rational> radius_schedule(const SiteList& sites, std::size_t count);

struct InterpolantTerm {
  ExactPoly product;      ///< P_n Q_n
  Rational radius;        ///< r_n
  Rational bound;         ///< sup_norm_bound(P_n Q_n, r_n)
  Rational budget;        ///< 2^-n eps
  unsigned peak_exponent = 0;
};

struct InterpolantCertificate {
  ExactPoly interpolant;  ///< F = sum of the recorded products
  std::vector<InterpolantTerm> terms;
  unsigned jet_order = 0;
  Rational budget;
  std::size_t n_max = 0;
  Rational guard_radius;
  std::vector<GaussianRational> sites;
  Rational total_bound;        ///< sum of term bounds
  Rational interpolant_bound;  ///< sup_norm_bound(F, guard radius)
  std::vector<bool> exact_jets;

  /// Re-checks every recorded inequality and the jet flags.
  bool holds() const;
};

InterpolantCertificate entire_interpolant(const SiteList& sites, std::span<const ExactJet> jets, unsigned d,
                                          const Rational& eps, std::size_t n_max);

// ---------------------------------------------------------------------------
// Enumeration of Q[i]^n
// ---------------------------------------------------------------------------

/// k-th term (k >= 1) of the Calkin-Wilf sequence 1, 1/2, 2, 1/3, 3/2, ...
Rational calkin_wilf(std::uint64_t k);

/// Bijection N>=1 -> Q: 1 -> 0, 2j -> q_j, 2j+1 -> -q_j.
Rational enumerate_rational(std::uint64_t index);

/// Inverse Cantor pairing on N>=0.
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z);

/// Bijection N>=1 -> Q[i]^n. Real and imaginary rational indices are
/// Cantor-paired, tuples are (n-1)-fold Cantor-paired; index 1 is the origin.
std::vector<GaussianRational> enumerate_gaussian_rational(unsigned n, std::uint64_t index);

// ---------------------------------------------------------------------------
// Dense-jet perturbation of entire maps
// ---------------------------------------------------------------------------

/// A polynomial map C -> C^n.
class EntireMapTuple {
 public:
  explicit EntireMapTuple(std::vector<ExactPoly> components);
  std::size_t dimension() const { return components_.size(); }
  const std::vector<ExactPoly>& components() const { return components_; }
  const ExactPoly& operator[](std::size_t i) const { return components_[i]; }

  /// (f_1, .., f_n, f_1', .., f_n', ...) at z: derivative-major, n(d+1) entries.
  std::vector<GaussianRational> jet(const GaussianRational& z, unsigned d) const;

  friend bool operator==(const EntireMapTuple&, const EntireMapTuple&) = default;

 private:
  std::vector<ExactPoly> components_;
};

/// Target jet for the index-th site, ordered like EntireMapTuple::jet.
std::vector<GaussianRational> jet_target(unsigned n, unsigned d, std::uint64_t index);

struct DensePerturbation {
  EntireMapTuple map;
  std::vector<InterpolantCertificate> certificates;  ///< one per component
  std::vector<GaussianRational> sites;
  std::vector<std::vector<GaussianRational>> targets;
};

/// phi = f + g with J_d phi(site_j) equal to the j-th enumerated target for
/// the first m sites ceil(R)+1, ceil(R)+2, ... and a certified bound of g on
/// |z| <= R below eps per component.
DensePerturbation dense_perturbation(const EntireMapTuple& f, const Rational& radius, const Rational& eps,
                                     unsigned d, std::size_t m, unsigned threads = 1);

/// Axis-aligned box in C^{n(d+1)} viewed as R^{2n(d+1)} (re, im interleaved).
struct CoverageBox {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct CoverageReport {
  std::size_t samples = 0;
  std::size_t samples_in_box = 0;
  std::size_t cells_hit = 0;
  double total_cells = 0.0;
  double fraction = 0.0;
  /// Largest sup-distance from a cell center to the nearest in-box sample;
  /// only computed when the grid has at most 10^6 cells and a sample lies in the box.
  std::optional<double> max_gap;
};

CoverageReport jet_coverage_report(const EntireMapTuple& phi, unsigned d, const CoverageBox& box, unsigned grid,
                                   std::span<const GaussianRational> sample_points);

}  // namespace nondegen::interp
