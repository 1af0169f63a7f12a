#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nondegen/core/eigen_support.hpp"
#include "nondegen/exactnum/multipoly.hpp"
#include "nondegen/interp/interp.hpp"

namespace nondegen::avoidance {

using RationalPoly = MultiPoly<Rational>;
using RationalPolyMap = PolyMap<Rational>;

/// {x : M x = b} with rational data and linearly independent rows.
struct AffineSubspace {
  RationalMatrix M;
  RationalVector b;

  AffineSubspace(RationalMatrix m, RationalVector rhs);

  std::size_t ambient_dimension() const { return static_cast<std::size_t>(M.cols()); }
  std::size_t codimension() const { return static_cast<std::size_t>(M.rows()); }
  bool contains_origin() const;
  bool contains(std::span<const GaussianRational> x) const;
  bool contains(std::span<const Rational> x) const;

  /// A point of the subspace and a basis of its direction space (columns).
  RationalVector base_point() const;
  RationalMatrix directions() const;

  /// x = base + directions * s as polynomials in s.
  RationalPolyMap parametrization() const;

  /// The point {x_k = c_k}.
  static AffineSubspace point(std::vector<Rational> coords);

  friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) { return a.M == b.M && a.b == b.b; }
};

/// Finite union of affine subspaces of common ambient dimension.
class AffineSet {
 public:
  explicit AffineSet(std::size_t dimension, std::vector<AffineSubspace> components = {});

  std::size_t dimension() const { return dimension_; }
  const std::vector<AffineSubspace>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  bool contains_origin() const;
  bool contains(std::span<const GaussianRational> x) const;
  bool contains(std::span<const Rational> x) const;

 private:
  std::size_t dimension_;
  std::vector<AffineSubspace> components_;
};

/// An AffineSet all of whose components have codimension at least 2.
class AffineSubspaceSet : public AffineSet {
 public:
  explicit AffineSubspaceSet(std::size_t dimension, std::vector<AffineSubspace> components = {});
};

/// Image of Z under deletion of coordinate `axis`, a subset of C^{n-1}.
AffineSet project_component(const AffineSet& z, std::size_t axis);

/// Product over components of (1 - (M_j u)/b_j), j the first row with b_j != 0.
/// Throws PreconditionError when a component contains the origin.
RationalPoly vanishing_poly(const AffineSet& projected);

struct Shear {
  std::size_t axis = 0;
  RationalPoly P;  ///< in the n-1 coordinates other than `axis`
};

using ShearFamily = std::vector<Shear>;

/// v + zeta P(pi(v)) e_axis with v, zeta polynomial in the same variables.
RationalPolyMap apply_shear(const Shear& shear, const RationalPolyMap& v, const RationalPoly& zeta);

struct AvoidanceMap {
  RationalPolyMap F;  ///< n polynomials in t_1..t_n
  friend bool operator==(const AvoidanceMap&, const AvoidanceMap&) = default;
};

struct CoordinateChange {
  RationalMatrix U;  ///< y = U x; integer entries, det +-1
  RationalMatrix U_inverse;
  unsigned attempts = 0;
};

struct AvoidanceConstruction {
  AvoidanceMap map;             ///< in the original coordinates
  AvoidanceMap normalized_map;  ///< in the coordinates y = U x
  ShearFamily shears;           ///< relative to the normalized coordinates
  std::optional<CoordinateChange> change;
  AffineSubspaceSet normalized_z;
};

inline constexpr unsigned kMaxCoordinateRetries = 32;

/// F(t) = Phi_t(0), Phi_t the composite of the shears along axes 1..n.
AvoidanceConstruction build_avoidance_map(const AffineSubspaceSet& z, std::uint64_t seed);

/// Z in the coordinates y = U x.
AffineSubspaceSet transform_set(const AffineSubspaceSet& z, const RationalMatrix& U_inverse);

/// Jacobian of F at t = 0.
RationalMatrix jacobian_at_origin(const RationalPolyMap& F);

struct AvoidanceCertificate {
  bool shears_fix_z = false;     ///< each shear is the identity on Z as an identity in zeta
  bool axes_fixed = false;       ///< F(zeta e_i) = zeta e_i
  bool change_consistent = true; ///< F = U^{-1} F' when a coordinate change was used
  std::size_t jacobian_rank = 0;
  bool degree_bound = false;     ///< deg F'_i <= 1 + deg P_i * max_{j<i} deg F'_j
  std::size_t samples = 0;
  std::size_t sample_failures = 0;

  bool holds(std::size_t n) const {
    return shears_fix_z && axes_fixed && change_consistent && jacobian_rank == n && degree_bound &&
           sample_failures == 0;
  }
};

/// Exact checks of a construction against Z, plus `samples` random Gaussian
/// rational parameters t with F(t) tested for membership in Z.
AvoidanceCertificate certify_avoidance(const AvoidanceConstruction& built, const AffineSubspaceSet& z,
                                       std::size_t samples, std::uint64_t seed = 0);

/// Like certify_avoidance but throws CertificateFailure when any check fails.
AvoidanceCertificate certify_avoidance_or_throw(const AvoidanceConstruction& built, const AffineSubspaceSet& z,
                                                std::size_t samples, std::uint64_t seed = 0);

struct DenseCurve {
  std::vector<ExactPoly> curve;
  std::vector<std::vector<std::complex<double>>> samples;
};

/// z -> h(phi(z)), with the image sampled at `sample_points`.
DenseCurve compose_dense_curve(const RationalPolyMap& h, const interp::EntireMapTuple& phi,
                               std::span<const GaussianRational> sample_points = {});

}  // namespace nondegen::avoidance
