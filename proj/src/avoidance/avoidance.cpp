#include "nondegen/avoidance/avoidance.hpp"

#include <random>

#include "nondegen/exactnum/linalg.hpp"

namespace nondegen::avoidance {

namespace {

RationalPoly constant_poly(std::size_t vars, const Rational& c) { return RationalPoly::constant(vars, c); }

RationalPoly zero_poly(std::size_t vars) { return RationalPoly(vars); }

// Same polynomial viewed in `extra` more trailing variables.
RationalPoly extend_variables(const RationalPoly& p, std::size_t extra) {
  RationalPoly out(p.variables() + extra);
  for (const auto& [e, c] : p.terms()) {
    Exponent wide(e);
    wide.resize(e.size() + extra, 0U);
    out.add_term(std::move(wide), c);
  }
  return out;
}

RationalPolyMap drop_coordinate(const RationalPolyMap& v, std::size_t axis) {
  RationalPolyMap out;
  out.reserve(v.size() - 1);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != axis) out.push_back(v[k]);
  return out;
}

RationalPoly substitute(const RationalPoly& p, const RationalPolyMap& args, std::size_t target_vars) {
  if (p.variables() == 0) return constant_poly(target_vars, p.coeff({}));
  return p.compose(args);
}

RationalPolyMap linear_image(const RationalMatrix& A, const RationalPolyMap& v) {
  const std::size_t vars = v.empty() ? 0 : v.front().variables();
  RationalPolyMap out;
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    RationalPoly acc = zero_poly(vars);
    for (Eigen::Index c = 0; c < A.cols(); ++c)
      if (A(r, c) != 0) acc += v[static_cast<std::size_t>(c)] * A(r, c);
    out.push_back(std::move(acc));
  }
  return out;
}

Rational determinant(RationalMatrix m) {
  const Eigen::Index n = m.rows();
  Rational det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Rational f = m(r, col) / m(col, col);
      for (Eigen::Index j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const Eigen::Index n = m.rows();
  RationalMatrix augmented(n, 2 * n);
  augmented << m, RationalMatrix::Identity(n, n);
  const auto ech = row_echelon(augmented);
  if (ech.rank() < n || ech.pivot_columns[static_cast<std::size_t>(n - 1)] != n - 1)
    throw PreconditionError("matrix is singular");
  return ech.reduced.rightCols(n);
}

// Integer matrix with entries in [-3, 3] and determinant +-1.
RationalMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  const auto size = static_cast<Eigen::Index>(n);
  for (;;) {
    RationalMatrix u(size, size);
    for (Eigen::Index r = 0; r < size; ++r)
      for (Eigen::Index c = 0; c < size; ++c) u(r, c) = Rational(static_cast<long>(rng() % 7) - 3);
    const Rational det = determinant(u);
    if (det == 1 || det == -1) return u;
  }
}

struct GaussInt {
  Integer re;
  Integer im;
};

GaussInt operator*(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Integer lcm_into(const Integer& l, const Integer& den) { return l % den == 0 ? l : l / gcd(l, den) * den; }

// F with each component written as (1/L) sum a_e t^e, a_e integer. Evaluating
// at a common-denominator point keeps every product in Z[i], no gcds until the end.
class IntegerMap {
 public:
  explicit IntegerMap(const RationalPolyMap& F) {
    for (const auto& p : F) {
      Component c;
      c.degree = std::max(0L, p.total_degree());
      for (const auto& [e, a] : p.terms()) c.L = lcm_into(c.L, denominator(a));
      for (const auto& [e, a] : p.terms()) {
        std::size_t deg = 0;
        for (std::size_t k = 0; k < e.size(); ++k) {
          deg += e[k];
          if (max_exp_.size() <= k) max_exp_.resize(k + 1, 0U);
          max_exp_[k] = std::max(max_exp_[k], e[k]);
        }
        c.terms.push_back({e, numerator(a) * (c.L / denominator(a)), static_cast<unsigned>(deg)});
      }
      components_.push_back(std::move(c));
    }
  }

  std::vector<GaussianRational> operator()(std::span<const GaussianRational> t) const {
    Integer q(1);
    for (const auto& x : t) q = lcm_into(lcm_into(q, denominator(x.real())), denominator(x.imag()));
    std::vector<std::vector<GaussInt>> powers(t.size());
    unsigned top = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const GaussInt a{numerator(t[k].real()) * (q / denominator(t[k].real())),
                       numerator(t[k].imag()) * (q / denominator(t[k].imag()))};
      powers[k].push_back({Integer(1), Integer(0)});
      const unsigned m = k < max_exp_.size() ? max_exp_[k] : 0U;
      for (unsigned e = 1; e <= m; ++e) powers[k].push_back(powers[k].back() * a);
    }
    for (const auto& c : components_) top = std::max(top, static_cast<unsigned>(c.degree));
    std::vector<Integer> qpow{Integer(1)};
    for (unsigned e = 1; e <= top; ++e) qpow.push_back(qpow.back() * q);

    std::vector<GaussianRational> out;
    out.reserve(components_.size());
    for (const auto& c : components_) {
      GaussInt total{Integer(0), Integer(0)};
      for (const auto& term : c.terms) {
        GaussInt m{term.a * qpow[static_cast<std::size_t>(c.degree) - term.degree], Integer(0)};
        for (std::size_t k = 0; k < term.e.size(); ++k)
          if (term.e[k] > 0) m = m * powers[k][term.e[k]];
        total.re += m.re;
        total.im += m.im;
      }
      const Rational den(c.L * qpow[static_cast<std::size_t>(c.degree)]);
      out.emplace_back(Rational(total.re) / den, Rational(total.im) / den);
    }
    return out;
  }

 private:
  struct Term {
    Exponent e;
    Integer a;
    unsigned degree;
  };
  struct Component {
    std::vector<Term> terms;
    Integer L{1};
    long degree = 0;
  };
  std::vector<Component> components_;
  std::vector<unsigned> max_exp_;
};

Rational random_rational(std::mt19937_64& rng) {
  const long num = static_cast<long>(rng() % 41) - 20;
  const long den = static_cast<long>(rng() % 20) + 1;
  return Rational(num, den);
}

}  // namespace

AffineSubspace::AffineSubspace(RationalMatrix m, RationalVector rhs) : M(std::move(m)), b(std::move(rhs)) {
  require(M.rows() == b.size(), "affine subspace: M and b have different row counts");
  require(exact_rank(M) == M.rows(), "affine subspace: rows of M must be independent");
}

bool AffineSubspace::contains_origin() const {
  for (Eigen::Index r = 0; r < b.size(); ++r)
    if (b(r) != 0) return false;
  return true;
}

bool AffineSubspace::contains(std::span<const GaussianRational> x) const {
  require(x.size() == ambient_dimension(), "point has the wrong dimension");
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    Rational re(0);
    Rational im(0);
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      if (M(r, c) == 0) continue;
      re += M(r, c) * x[static_cast<std::size_t>(c)].real();
      im += M(r, c) * x[static_cast<std::size_t>(c)].imag();
    }
    if (re != b(r) || im != 0) return false;
  }
  return true;
}

bool AffineSubspace::contains(std::span<const Rational> x) const {
  require(x.size() == ambient_dimension(), "point has the wrong dimension");
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    Rational acc(0);
    for (Eigen::Index c = 0; c < M.cols(); ++c) acc += M(r, c) * x[static_cast<std::size_t>(c)];
    if (acc != b(r)) return false;
  }
  return true;
}

RationalVector AffineSubspace::base_point() const {
  if (M.rows() == 0) return RationalVector::Constant(M.cols(), Rational(0));
  auto x = exact_particular_solution(M, b);
  if (!x) throw CertificateFailure("affine subspace with independent rows is inconsistent");
  return *x;
}

RationalMatrix AffineSubspace::directions() const {
  if (M.rows() == 0) return RationalMatrix::Identity(M.cols(), M.cols());
  return exact_nullspace(M);
}

RationalPolyMap AffineSubspace::parametrization() const {
  const RationalVector q = base_point();
  const RationalMatrix dirs = directions();
  const auto k = static_cast<std::size_t>(dirs.cols());
  RationalPolyMap out;
  for (Eigen::Index r = 0; r < M.cols(); ++r) {
    RationalPoly p = constant_poly(k, q(r));
    for (std::size_t s = 0; s < k; ++s) {
      const Rational& c = dirs(r, static_cast<Eigen::Index>(s));
      if (c != 0) p += RationalPoly::variable(k, s) * c;
    }
    out.push_back(std::move(p));
  }
  return out;
}

AffineSubspace AffineSubspace::point(std::vector<Rational> coords) {
  const auto n = static_cast<Eigen::Index>(coords.size());
  RationalVector rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) rhs(k) = coords[static_cast<std::size_t>(k)];
  return AffineSubspace(RationalMatrix::Identity(n, n), rhs);
}

AffineSet::AffineSet(std::size_t dimension, std::vector<AffineSubspace> components)
    : dimension_(dimension), components_(std::move(components)) {
  for (const auto& c : components_)
    require(c.ambient_dimension() == dimension_, "component has the wrong ambient dimension");
}

bool AffineSet::contains_origin() const {
  for (const auto& c : components_)
    if (c.contains_origin()) return true;
  return false;
}

bool AffineSet::contains(std::span<const GaussianRational> x) const {
  for (const auto& c : components_)
    if (c.contains(x)) return true;
  return false;
}

bool AffineSet::contains(std::span<const Rational> x) const {
  for (const auto& c : components_)
    if (c.contains(x)) return true;
  return false;
}

AffineSubspaceSet::AffineSubspaceSet(std::size_t dimension, std::vector<AffineSubspace> components)
    : AffineSet(dimension, std::move(components)) {
  for (const auto& c : this->components()) require(c.codimension() >= 2, "components must have codimension >= 2");
}

AffineSet project_component(const AffineSet& z, std::size_t axis) {
  require(axis < z.dimension(), "projection axis out of range");
  const auto n = static_cast<Eigen::Index>(z.dimension());
  const auto col = static_cast<Eigen::Index>(axis);
  std::vector<AffineSubspace> out;
  for (const auto& comp : z.components()) {
    RationalMatrix M = comp.M;
    RationalVector b = comp.b;
    Eigen::Index pivot = 0;
    while (pivot < M.rows() && M(pivot, col) == 0) ++pivot;
    std::vector<Eigen::Index> keep;
    if (pivot < M.rows()) {
      for (Eigen::Index r = 0; r < M.rows(); ++r) {
        if (r == pivot) continue;
        if (M(r, col) != 0) {
          const Rational f = M(r, col) / M(pivot, col);
          M.row(r) -= f * M.row(pivot);
          b(r) -= f * b(pivot);
        }
        keep.push_back(r);
      }
    } else {
      for (Eigen::Index r = 0; r < M.rows(); ++r) keep.push_back(r);
    }
    RationalMatrix projected(static_cast<Eigen::Index>(keep.size()), n - 1);
    RationalVector rhs(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      for (Eigen::Index c = 0, d = 0; c < n; ++c)
        if (c != col) projected(r, d++) = M(keep[i], c);
      rhs(r) = b(keep[i]);
    }
    out.emplace_back(std::move(projected), std::move(rhs));
  }
  return AffineSet(z.dimension() - 1, std::move(out));
}

RationalPoly vanishing_poly(const AffineSet& projected) {
  const std::size_t vars = projected.dimension();
  RationalPoly p = constant_poly(vars, Rational(1));
  for (const auto& comp : projected.components()) {
    Eigen::Index row = 0;
    while (row < comp.b.size() && comp.b(row) == 0) ++row;
    if (row == comp.b.size()) throw PreconditionError("vanishing_poly: a projected component contains the origin");
    RationalPoly factor = constant_poly(vars, Rational(1));
    for (std::size_t k = 0; k < vars; ++k) {
      const Rational& m = comp.M(row, static_cast<Eigen::Index>(k));
      if (m != 0) factor -= RationalPoly::variable(vars, k) * (m / comp.b(row));
    }
    p = p * factor;
  }
  return p;
}

RationalPolyMap apply_shear(const Shear& shear, const RationalPolyMap& v, const RationalPoly& zeta) {
  require(shear.axis < v.size(), "shear axis out of range");
  const std::size_t vars = zeta.variables();
  RationalPolyMap out(v);
  out[shear.axis] += zeta * substitute(shear.P, drop_coordinate(v, shear.axis), vars);
  return out;
}

AffineSubspaceSet transform_set(const AffineSubspaceSet& z, const RationalMatrix& U_inverse) {
  std::vector<AffineSubspace> comps;
  for (const auto& c : z.components()) comps.emplace_back(RationalMatrix(c.M * U_inverse), c.b);
  return AffineSubspaceSet(z.dimension(), std::move(comps));
}

AvoidanceConstruction build_avoidance_map(const AffineSubspaceSet& z, std::uint64_t seed) {
  const std::size_t n = z.dimension();
  require(n >= 1, "ambient dimension must be positive");
  require(!z.contains_origin(), "Z must not contain the origin");

  std::mt19937_64 rng(seed);
  for (unsigned attempt = 0; attempt <= kMaxCoordinateRetries; ++attempt) {
    std::optional<CoordinateChange> change;
    AffineSubspaceSet zz = z;
    if (attempt > 0) {
      CoordinateChange cc;
      cc.U = random_unimodular(n, rng);
      cc.U_inverse = inverse(cc.U);
      cc.attempts = attempt;
      zz = transform_set(z, cc.U_inverse);
      change = std::move(cc);
    }

    ShearFamily shears;
    bool origin_hit = false;
    for (std::size_t i = 0; i < n && !origin_hit; ++i) {
      const AffineSet projected = n > 1 ? project_component(zz, i) : AffineSet(0);
      if (projected.contains_origin()) {
        origin_hit = true;
        break;
      }
      shears.push_back({i, vanishing_poly(projected)});
    }
    if (origin_hit) continue;

    RationalPolyMap v(n, zero_poly(n));
    for (const auto& s : shears) v = apply_shear(s, v, RationalPoly::variable(n, s.axis));

    AvoidanceConstruction out{{v}, {v}, std::move(shears), change, zz};
    if (change) out.map.F = linear_image(change->U_inverse, v);
    return out;
  }
  throw BudgetExhausted("build_avoidance_map: coordinate-change retries exhausted");
}

RationalMatrix jacobian_at_origin(const RationalPolyMap& F) {
  const auto n = static_cast<Eigen::Index>(F.size());
  const Eigen::Index vars = F.empty() ? 0 : static_cast<Eigen::Index>(F.front().variables());
  RationalMatrix J = RationalMatrix::Constant(n, vars, Rational(0));
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < vars; ++c) {
      Exponent e(static_cast<std::size_t>(vars), 0U);
      e[static_cast<std::size_t>(c)] = 1;
      J(r, c) = F[static_cast<std::size_t>(r)].coeff(e);
    }
  }
  return J;
}

AvoidanceCertificate certify_avoidance(const AvoidanceConstruction& built, const AffineSubspaceSet& z,
                                       std::size_t samples, std::uint64_t seed) {
  const std::size_t n = z.dimension();
  AvoidanceCertificate cert;
  const RationalPolyMap& Fn = built.normalized_map.F;
  const RationalPolyMap& F = built.map.F;
  if (Fn.size() != n || F.size() != n || built.shears.size() != n) return cert;

  // (1) every shear is the identity on every component, as an identity in zeta.
  cert.shears_fix_z = true;
  for (const auto& s : built.shears) {
    if (s.P.coeff(Exponent(s.P.variables(), 0U)) != 1) cert.shears_fix_z = false;
    for (const auto& comp : built.normalized_z.components()) {
      const RationalPolyMap frame = comp.parametrization();
      const std::size_t k = frame.empty() ? 0 : frame.front().variables();
      RationalPolyMap lifted;
      for (const auto& p : frame) lifted.push_back(extend_variables(p, 1));
      const RationalPoly zeta = RationalPoly::variable(k + 1, k);
      if (apply_shear(s, lifted, zeta) != lifted) cert.shears_fix_z = false;
    }
  }

  // (2) F(zeta e_i) = zeta e_i.
  cert.axes_fixed = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<UniPoly<Rational>> args(n);
    args[i] = UniPoly<Rational>::monomial(Rational(1), 1);
    for (std::size_t k = 0; k < n; ++k) {
      const auto image = Fn[k].compose(args);
      if (image != (k == i ? args[i] : UniPoly<Rational>())) cert.axes_fixed = false;
    }
  }

  if (built.change) cert.change_consistent = linear_image(built.change->U_inverse, Fn) == F;

  // (3) Jacobian rank at the origin.
  cert.jacobian_rank = static_cast<std::size_t>(exact_rank(jacobian_at_origin(F)));

  // Coordinate i is t_i P_i(earlier coordinates): D_i = 1 + deg P_i * max_{j<i} D_j.
  // For n = 2 this is at most sum deg P_i + 1; for n >= 3 that sum is not a bound.
  cert.degree_bound = true;
  long earlier = 0;
  for (std::size_t i = 0; i < built.shears.size(); ++i) {
    const long bound = 1 + std::max(0L, built.shears[i].P.total_degree()) * earlier;
    if (Fn[built.shears[i].axis].total_degree() > bound) cert.degree_bound = false;
    earlier = std::max(earlier, bound);
  }

  std::mt19937_64 rng(seed);
  const IntegerMap eval_map(F);
  cert.samples = samples;
  for (std::size_t j = 0; j < samples; ++j) {
    std::vector<GaussianRational> t;
    t.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      Rational re = random_rational(rng);
      Rational im = random_rational(rng);
      t.emplace_back(std::move(re), std::move(im));
    }
    const auto x = eval_map(t);
    if (z.contains(std::span<const GaussianRational>(x))) ++cert.sample_failures;
  }
  return cert;
}

AvoidanceCertificate certify_avoidance_or_throw(const AvoidanceConstruction& built, const AffineSubspaceSet& z,
                                                std::size_t samples, std::uint64_t seed) {
  auto cert = certify_avoidance(built, z, samples, seed);
  if (!cert.holds(z.dimension())) throw CertificateFailure("certify_avoidance: a check failed");
  return cert;
}

DenseCurve compose_dense_curve(const RationalPolyMap& h, const interp::EntireMapTuple& phi,
                               std::span<const GaussianRational> sample_points) {
  DenseCurve out;
  const std::vector<ExactPoly>& args = phi.components();
  for (const auto& hk : h) {
    require(hk.variables() == phi.dimension(), "compose_dense_curve: arity mismatch");
    out.curve.push_back(hk.cast<GaussianRational>().compose(args));
  }
  std::vector<FloatPoly> floats;
  for (const auto& c : out.curve) {
    std::vector<std::complex<double>> coeffs;
    for (const auto& a : c.coeffs()) coeffs.push_back(a.to_complex());
    floats.emplace_back(std::move(coeffs));
  }
  for (const auto& z : sample_points) {
    std::vector<std::complex<double>> image;
    for (const auto& f : floats) image.push_back(poly_eval(f, z.to_complex()));
    out.samples.push_back(std::move(image));
  }
  return out;
}

}  // namespace nondegen::avoidance
