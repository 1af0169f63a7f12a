#include <doctest.h>

#include <cmath>
#include <random>

#include "nondegen/exactnum/hermite.hpp"
#include "nondegen/exactnum/multipoly.hpp"

using namespace nondegen;

namespace {

using Q = Rational;
using G = GaussianRational;

G gq(long long re, long long im = 0) { return G(Q(re), Q(im)); }

// (z - 2)(z/2)^4 = z^5/16 - z^4/8, expanded by hand
ExactPoly hand_expanded() { return ExactPoly({0, 0, 0, 0, G(Q(-1, 8)), G(Q(1, 16))}); }

G random_gaussian(std::mt19937_64& rng, int span = 9) {
  auto part = [&] {
    const long long num = static_cast<long long>(rng() % (2 * span + 1)) - span;
    const long long den = static_cast<long long>(rng() % span) + 1;
    return Q(num, den);
  };
  Q re = part();
  Q im = part();
  return {re, im};
}

ExactPoly random_poly(std::mt19937_64& rng, std::size_t degree) {
  std::vector<G> c;
  for (std::size_t k = 0; k <= degree; ++k) c.push_back(random_gaussian(rng));
  return ExactPoly(std::move(c));
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("7") == Q(7));
  CHECK(parse_rational("-2/3") == Q(-2, 3));
  CHECK(parse_rational("0.125") == Q(1, 8));
  CHECK(parse_rational("1e-6") == Q(1, 1000000));
  CHECK(parse_rational("-1.5E3") == Q(-1500));
  // leading zeros are decimal, not octal
  CHECK(parse_rational("0.08") == Q(2, 25));
  CHECK(parse_rational("007/010") == Q(7, 10));
  CHECK(rational_from_decimal_double(0.0625) == Q(1, 16));
  CHECK_THROWS_AS(parse_rational("1/0"), PreconditionError);
  CHECK_THROWS_AS(parse_rational("abc"), PreconditionError);
  CHECK(rational_from_decimal_double(0.1) == Q(1, 10));
  CHECK(rational_from_double(0.5) == Q(1, 2));
  CHECK(to_string(Q(-4, 6)) == "-2/3");
  CHECK(to_string(Q(5)) == "5");
}

TEST_CASE("sqrt and modulus bounds bracket the true value") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const G z = random_gaussian(rng, 50);
    const double truth = std::abs(z.to_complex());
    CHECK(to_double(abs_lower(z)) <= truth * (1 + 1e-15));
    CHECK(to_double(abs_upper(z)) >= truth * (1 - 1e-15));
    CHECK(abs_lower(z) <= abs_upper(z));
  }
  CHECK(abs_upper(gq(3, 4)) == Q(5));
  CHECK(abs_lower(gq(3, 4)) == Q(5));
  CHECK(sqrt_upper(Q(9, 4)) == Q(3, 2));
  CHECK(sqrt_lower(Q(2)) * sqrt_lower(Q(2)) < Q(2));
  CHECK(sqrt_upper(Q(2)) * sqrt_upper(Q(2)) > Q(2));
}

TEST_CASE("Gaussian rational field operations") {
  const G a = gq(1, 2);
  const G b(Q(3, 4), Q(-1, 5));
  CHECK((a * b) / b == a);
  CHECK(a * a.inverse() == G(1));
  CHECK(gaussian_pow(G(Q(0), Q(1)), 4) == G(1));
  CHECK(to_string(gq(1, -2)) == "1-2i");
  CHECK_THROWS_AS(G(0).inverse(), PreconditionError);
}

TEST_CASE("poly_eval") {
  CHECK(poly_eval(ExactPoly({0, 0, 1}), G(3)) == G(9));
  CHECK(poly_eval(ExactPoly(), gq(5, -7)) == G(0));
  const ExactPoly p = ExactPoly({-2, 1}) * poly_pow(ExactPoly({0, G(Q(1, 2))}), 4);
  CHECK(p == hand_expanded());
  CHECK(poly_eval(p, G(2)) == G(0));
  CHECK(poly_eval(FloatPoly({0.0, 0.0, 1.0}), std::complex<double>(3.0)) == std::complex<double>(9.0));
}

TEST_CASE("poly_derivative and poly_jet") {
  CHECK(poly_derivative(ExactPoly({0, 0, 0, 1}), 1) == ExactPoly({0, 0, 3}));
  CHECK(poly_derivative(ExactPoly({0, 0, 0, 1}), 4).is_zero());
  const auto jet = poly_jet(hand_expanded(), G(2), 1);
  CHECK(jet[0] == G(0));
  CHECK(jet[1] == G(1));
}

TEST_CASE("integer-scaled exact evaluation agrees with plain Horner") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const ExactPoly p = random_poly(rng, rng() % 30);
    const G z = random_gaussian(rng);
    // the template is plain Horner in Q[i]
    CHECK(poly_eval(p, z) == poly_eval<G>(p, z));
    const unsigned d = static_cast<unsigned>(rng() % 4);
    CHECK(poly_jet(p, z, d) == poly_jet<G>(p, z, d));
  }
}

TEST_CASE("degree cap") {
  CHECK_THROWS_AS(ExactPoly::monomial(G(1), kDegreeCap + 1), DegreeCapExceeded);
  const ExactPoly big = ExactPoly::monomial(G(1), kDegreeCap / 2 + 1);
  CHECK_THROWS_AS(big * big, DegreeCapExceeded);
  CHECK_NOTHROW(ExactPoly::monomial(G(1), kDegreeCap));
}

TEST_CASE("sup_norm_bound") {
  CHECK(sup_norm_bound(ExactPoly({0, 0, 1}), Q(2)) == Q(4));
  CHECK(sup_norm_bound(ExactPoly({1, 1}), Q(1)) == Q(2));
  CHECK(sup_norm_bound(hand_expanded(), Q(1)) == Q(3, 16));
  CHECK(sup_norm_bound(ExactPoly(), Q(5)) == Q(0));
  // |1 + i| = sqrt 2 is irrational: a rigorous rational upper bound
  const Q b = sup_norm_bound(ExactPoly({gq(1, 1)}), Q(1));
  CHECK(b * b >= Q(2));
  CHECK(to_double(b) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("sampled_sup never exceeds sup_norm_bound") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const ExactPoly p = random_poly(rng, rng() % 12);
    const Q r(static_cast<long long>(rng() % 7) + 1, static_cast<long long>(rng() % 3) + 1);
    CHECK(sampled_sup(p, to_double(r), 4096) <= to_double(sup_norm_bound(p, r)) * (1 + 1e-12));
  }
  CHECK(sampled_sup(ExactPoly({0, 1}), 1.0, 8) == doctest::Approx(1.0));
  CHECK(sampled_sup(ExactPoly(), 2.0, 16) == 0.0);
  const double s = sampled_sup(hand_expanded(), 1.0, 4096);
  CHECK(s > 0.0);
  CHECK(s <= 0.1875);
}

TEST_CASE("hermite_interpolate") {
  using Site = HermiteSite<G>;
  CHECK(hermite_interpolate(std::vector<Site>{{G(0), ExactJet{G(5)}}}) == ExactPoly({5}));
  const ExactPoly q = hermite_interpolate(std::vector<Site>{{G(0), ExactJet{G(0), G(1)}}, {G(1), ExactJet{G(0)}}});
  CHECK(q == ExactPoly({0, 1, -1}));
  CHECK(hermite_interpolate(std::vector<Site>{{G(0), ExactJet::zeros(2)}, {G(3), ExactJet::zeros(1)}}).is_zero());
  CHECK_THROWS_AS(hermite_interpolate(std::vector<Site>{{G(1), ExactJet{G(1)}}, {G(1), ExactJet{G(2)}}}),
                  PreconditionError);
}

TEST_CASE("hermite_interpolate matches every prescribed jet") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<HermiteSite<G>> sites;
    const int count = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < count; ++i) {
      const unsigned order = static_cast<unsigned>(rng() % 3);
      std::vector<G> v;
      for (unsigned k = 0; k <= order; ++k) v.push_back(random_gaussian(rng));
      sites.push_back({gq(i, i % 2), ExactJet(v)});
    }
    const ExactPoly p = hermite_interpolate(sites);
    std::size_t conditions = 0;
    for (const auto& s : sites) {
      CHECK(jet_of(p, s.point, s.jet.order()) == s.jet);
      conditions += s.jet.size();
    }
    CHECK(p.degree() < static_cast<long>(conditions));
  }
}

TEST_CASE("exact linear algebra") {
  RationalMatrix m(3, 3);
  m << Q(1), Q(2), Q(3), Q(2), Q(4), Q(6), Q(1), Q(0), Q(1);
  CHECK(exact_rank(m) == 2);
  const RationalMatrix ns = exact_nullspace(m);
  REQUIRE(ns.cols() == 1);
  CHECK((m * ns).isZero());
  RationalVector b(3);
  b << Q(1), Q(2), Q(0);
  const auto x = exact_particular_solution(m, b);
  REQUIRE(x);
  CHECK(m * *x == b);
  b(1) = Q(3);
  CHECK_FALSE(exact_particular_solution(m, b));
  CHECK_FALSE(solve_square(m, b));
}

TEST_CASE("multivariate polynomials") {
  using P = MultiPoly<Q>;
  const P x = P::variable(2, 0);
  const P y = P::variable(2, 1);
  const P one = P::constant(2, Q(1));
  const P p = (one - x) * y;
  CHECK(p.total_degree() == 2);
  CHECK(p.eval(std::vector<Q>{Q(3), Q(2)}) == Q(-4));
  // p(x, x + 1) = (1 - x)(x + 1) = 1 - x^2
  const P sub = p.compose(std::vector<P>{x, x + one});
  CHECK(sub == one - x * x);
  const auto uni = p.compose(std::vector<UniPoly<Q>>{UniPoly<Q>({Q(0), Q(1)}), UniPoly<Q>({Q(1), Q(1)})});
  CHECK(uni == UniPoly<Q>({Q(1), Q(0), Q(-1)}));
}
