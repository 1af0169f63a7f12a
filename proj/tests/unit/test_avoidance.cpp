#include <doctest.h>

#include <random>

#include "nondegen/avoidance/avoidance.hpp"

using namespace nondegen;
using namespace nondegen::avoidance;

namespace {

using Q = Rational;
using G = GaussianRational;
using P = RationalPoly;

AffineSubspace pt(std::initializer_list<long long> coords) {
  std::vector<Q> c;
  for (auto v : coords) c.emplace_back(v);
  return AffineSubspace::point(std::move(c));
}

AffineSubspace line3(std::initializer_list<long long> row1, long long b1, std::initializer_list<long long> row2,
                     long long b2) {
  RationalMatrix m(2, 3);
  RationalVector b(2);
  Eigen::Index k = 0;
  for (auto v : row1) m(0, k++) = Q(v);
  k = 0;
  for (auto v : row2) m(1, k++) = Q(v);
  b << Q(b1), Q(b2);
  return {m, b};
}

bool contains_q(const AffineSet& s, std::initializer_list<long long> x) {
  std::vector<Q> v;
  for (auto c : x) v.emplace_back(c);
  return s.contains(std::span<const Q>(v));
}

// independent check: plug the point into every equation
bool in_subspace(const AffineSubspace& a, const std::vector<G>& x) {
  for (Eigen::Index r = 0; r < a.M.rows(); ++r) {
    G lhs(0);
    for (Eigen::Index c = 0; c < a.M.cols(); ++c) lhs += G(a.M(r, c)) * x[static_cast<std::size_t>(c)];
    if (lhs != G(a.b(r))) return false;
  }
  return true;
}

AffineSubspaceSet random_configuration(std::mt19937_64& rng, std::size_t n) {
  std::vector<AffineSubspace> comps;
  const std::size_t count = 1 + rng() % 5;
  auto rnd = [&] { return Q(static_cast<long long>(rng() % 7) - 3, static_cast<long long>(rng() % 3) + 1); };
  while (comps.size() < count) {
    const bool point = n == 2 || rng() % 2 == 0;
    RationalMatrix m(static_cast<Eigen::Index>(point ? n : n - 1), static_cast<Eigen::Index>(n));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rnd();
    RationalVector b(m.rows());
    for (Eigen::Index r = 0; r < b.size(); ++r) b(r) = rnd();
    if (exact_rank(m) != m.rows()) continue;
    AffineSubspace a(m, b);
    if (a.contains_origin()) continue;
    comps.push_back(std::move(a));
  }
  return AffineSubspaceSet(n, std::move(comps));
}

}  // namespace

TEST_CASE("affine subspaces") {
  const auto p = pt({1, 1});
  CHECK(p.codimension() == 2);
  CHECK_FALSE(p.contains_origin());
  const std::vector<Q> x{Q(1), Q(1)};
  CHECK(p.contains(std::span<const Q>(x)));

  const auto l = line3({1, 0, 0}, 0, {0, 1, 0}, 1);
  CHECK(l.directions().cols() == 1);
  const auto par = l.parametrization();
  REQUIRE(par.size() == 3);
  for (long long s : {-2LL, 0LL, 5LL}) {
    std::vector<Q> at{Q(s)};
    std::vector<Q> y;
    for (const auto& c : par) y.push_back(c.eval(std::span<const Q>(at)));
    CHECK(l.contains(std::span<const Q>(y)));
  }

  RationalMatrix dependent(2, 2);
  dependent << Q(1), Q(2), Q(2), Q(4);
  RationalVector b(2);
  b << Q(1), Q(2);
  CHECK_THROWS_AS(AffineSubspace(dependent, b), PreconditionError);

  RationalMatrix hyper(1, 2);
  hyper << Q(1), Q(0);
  RationalVector hb(1);
  hb << Q(1);
  CHECK_THROWS_AS(AffineSubspaceSet(2, {AffineSubspace(hyper, hb)}), PreconditionError);
}

TEST_CASE("project_component") {
  SUBCASE("a point loses a coordinate") {
    const auto proj = project_component(AffineSet(2, {pt({1, 1})}), 0);
    CHECK(proj.dimension() == 1);
    CHECK(contains_q(proj, {1}));
    CHECK_FALSE(contains_q(proj, {2}));
  }
  SUBCASE("deleting the only nonzero slot lands on the origin") {
    const auto proj = project_component(AffineSet(3, {pt({0, 0, 4})}), 2);
    CHECK(proj.contains_origin());
  }
  SUBCASE("a line in C^3 along axis 3") {
    const auto proj = project_component(AffineSet(3, {line3({1, 0, 0}, 0, {0, 1, 0}, 1)}), 2);
    CHECK(contains_q(proj, {0, 1}));
    CHECK_FALSE(contains_q(proj, {1, 1}));
    CHECK(proj.components()[0].codimension() == 2);
  }
  SUBCASE("a slanted line in C^3 projects to a line") {
    const auto proj = project_component(AffineSet(3, {line3({1, 0, 1}, 2, {0, 1, -1}, 1)}), 2);
    CHECK(proj.components()[0].codimension() == 1);
    // (x, y, z) = (2 - z, 1 + z, z) -> x + y = 3
    CHECK(contains_q(proj, {5, -2}));
    CHECK_FALSE(contains_q(proj, {0, 0}));
  }
}

TEST_CASE("vanishing_poly") {
  const P u = P::variable(1, 0);
  const P one = P::constant(1, Q(1));
  CHECK(vanishing_poly(AffineSet(1, {pt({1})})) == one - u);
  CHECK(vanishing_poly(AffineSet(1)) == one);
  const P two = vanishing_poly(AffineSet(1, {pt({1}), pt({2})}));
  CHECK(two == (one - u) * (one - u * Q(1, 2)));
  for (long long x : {1LL, 2LL}) CHECK(two.eval(std::vector<Q>{Q(x)}) == Q(0));
  CHECK(two.eval(std::vector<Q>{Q(0)}) == Q(1));
  CHECK_THROWS_AS(vanishing_poly(AffineSet(1, {pt({0})})), PreconditionError);
}

TEST_CASE("avoidance map worked example") {
  const AffineSubspaceSet z(2, {pt({1, 1})});
  const auto built = build_avoidance_map(z, 0);
  CHECK_FALSE(built.change);
  const P t1 = P::variable(2, 0);
  const P t2 = P::variable(2, 1);
  CHECK(built.map.F[0] == t1);
  CHECK(built.map.F[1] == t2 - t1 * t2);

  const std::vector<Q> at{Q(1), Q(1)};
  CHECK(built.map.F[0].eval(std::span<const Q>(at)) == Q(1));
  CHECK(built.map.F[1].eval(std::span<const Q>(at)) == Q(0));

  RationalMatrix id = RationalMatrix::Identity(2, 2);
  CHECK(jacobian_at_origin(built.map.F) == id);

  const auto cert = certify_avoidance(built, z, 10000, 1);
  CHECK(cert.shears_fix_z);
  CHECK(cert.axes_fixed);
  CHECK(cert.jacobian_rank == 2);
  CHECK(cert.sample_failures == 0);
  CHECK(cert.samples == 10000);
  CHECK(cert.holds(2));
}

TEST_CASE("empty set gives the identity") {
  const auto built = build_avoidance_map(AffineSubspaceSet(3), 0);
  for (std::size_t k = 0; k < 3; ++k) CHECK(built.map.F[k] == P::variable(3, k));
  CHECK(certify_avoidance(built, AffineSubspaceSet(3), 100).holds(3));
}

TEST_CASE("origin in Z is rejected") {
  CHECK_THROWS_AS(build_avoidance_map(AffineSubspaceSet(2, {pt({0, 0})}), 0), PreconditionError);
}

TEST_CASE("coordinate change path") {
  // deleting x1 from (1, 0) hits the origin of H_1
  const AffineSubspaceSet z(2, {pt({1, 0})});
  const auto built = build_avoidance_map(z, 5);
  REQUIRE(built.change);
  CHECK(built.change->attempts >= 1);
  CHECK(built.change->U * built.change->U_inverse == RationalMatrix::Identity(2, 2));
  const auto cert = certify_avoidance(built, z, 2000, 2);
  CHECK(cert.change_consistent);
  CHECK(cert.holds(2));
  // deterministic in the seed
  CHECK(build_avoidance_map(z, 5).map == built.map);
}

TEST_CASE("random configurations in C^2 and C^3") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
    const auto z = random_configuration(rng, n);
    const auto built = build_avoidance_map(z, static_cast<std::uint64_t>(trial));
    const auto cert = certify_avoidance(built, z, 300, static_cast<std::uint64_t>(trial));
    INFO("trial " << trial << " fix " << cert.shears_fix_z << " axes " << cert.axes_fixed << " change "
                   << cert.change_consistent << " rank " << cert.jacobian_rank << " deg " << cert.degree_bound
                   << " fail " << cert.sample_failures);
    CHECK(cert.holds(n));
    if (n == 2) {
      long sum = 0;
      for (const auto& s : built.shears) sum += s.P.total_degree();
      for (const auto& f : built.normalized_map.F) CHECK(f.total_degree() <= sum + 1);
    }

    // independent membership test on small integer parameters
    std::vector<Q> t(n, Q(-2));
    for (;;) {
      std::vector<G> image;
      for (const auto& f : built.map.F) image.emplace_back(f.eval(std::span<const Q>(t)));
      for (const auto& c : z.components()) CHECK_FALSE(in_subspace(c, image));
      std::size_t k = 0;
      while (k < n && (t[k] += 1) > Q(2)) t[k++] = Q(-2);
      if (k == n) break;
    }
  }
}

TEST_CASE("compose_dense_curve") {
  const interp::EntireMapTuple phi({ExactPoly({1, 2, 3}), ExactPoly({0, G(Q(1), Q(1))})});
  SUBCASE("identity") {
    const RationalPolyMap id{P::variable(2, 0), P::variable(2, 1)};
    const auto c = compose_dense_curve(id, phi);
    CHECK(c.curve == phi.components());
  }
  SUBCASE("constant") {
    const RationalPolyMap h{P::constant(2, Q(3)), P::constant(2, Q(-1))};
    const std::vector<G> pts{G(0), G(5)};
    const auto c = compose_dense_curve(h, phi, pts);
    CHECK(c.curve[0] == ExactPoly({3}));
    CHECK(c.curve[1] == ExactPoly({-1}));
    CHECK(c.samples.size() == 2);
    CHECK(c.samples[1][0] == std::complex<double>(3.0, 0.0));
  }
  SUBCASE("worked example map after a dense perturbation") {
    const auto built = build_avoidance_map(AffineSubspaceSet(2, {pt({1, 1})}), 0);
    const auto pert =
        interp::dense_perturbation(interp::EntireMapTuple({ExactPoly(), ExactPoly()}), Q(1), Q(1, 10), 0, 3);
    const auto c = compose_dense_curve(built.map.F, pert.map);
    long phi_deg = 0;
    for (const auto& p : pert.map.components()) phi_deg = std::max(phi_deg, p.degree());
    for (std::size_t k = 0; k < 2; ++k) CHECK(c.curve[k].degree() <= built.map.F[k].total_degree() * phi_deg);
    // F(phi(z)) at a site, exactly
    const G s = pert.sites[1];
    const G x = poly_eval(pert.map[0], s);
    const G y = poly_eval(pert.map[1], s);
    CHECK(poly_eval(c.curve[0], s) == x);
    CHECK(poly_eval(c.curve[1], s) == y - x * y);
  }
}
