#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "nondegen/exactnum/linalg.hpp"
#include "nondegen/genpos/genpos.hpp"

using namespace nondegen;
using namespace nondegen::genpos;

namespace {

using Q = Rational;

double norm(const RealPoint& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

std::vector<RationalPoint> qpoints(std::initializer_list<std::pair<long long, long long>> xy) {
  std::vector<RationalPoint> out;
  for (auto [x, y] : xy) out.push_back({Q(x), Q(y)});
  return out;
}

GammaSet exact_set(std::vector<RationalPoint> pts) {
  GammaSet g;
  g.provenance = Provenance::greedy;
  g.dimension = 2;
  g.rational_points = std::move(pts);
  return g;
}

// every k-subset of {0..n-1}, by recursion
void all_subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                 std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    all_subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("sphere curve") {
  const auto cfg2 = SphereCurveConfig::standard(2);
  const auto p0 = dense_sphere_curve(0.0, cfg2);
  CHECK(p0[0] == doctest::Approx(1.0));
  CHECK(p0[1] == doctest::Approx(0.0));
  for (double t : {0.3, 1.0, 2.5, -4.0}) {
    const auto p = dense_sphere_curve(t, cfg2);
    CHECK(p[0] == doctest::Approx(std::cos(t)));
    CHECK(p[1] == doctest::Approx(std::sin(t)));
  }

  const auto cfg3 = SphereCurveConfig::standard(3);
  CHECK(cfg3.frequencies.size() == 2);
  CHECK(cfg3.frequencies[1] == doctest::Approx(std::sqrt(2.0)));
  std::set<std::pair<int, int>> cells;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    const double t = 1e4 * i / (samples - 1.0);
    const auto x = dense_sphere_curve(t, cfg3);
    CHECK(std::abs(norm(x) - 1.0) < 1e-12);
    const double polar = std::acos(std::clamp(x[0], -1.0, 1.0));
    const double azimuth = std::atan2(x[2], x[1]) + std::numbers::pi;
    cells.emplace(std::min(19, static_cast<int>(polar / std::numbers::pi * 20)),
                  std::min(19, static_cast<int>(azimuth / (2 * std::numbers::pi) * 20)));
  }
  CHECK(cells.size() == 400);

  SphereCurveConfig bad{3, {1.0, 1.0}};
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("gamma curve") {
  const auto cfg = SphereCurveConfig::standard(3);
  for (double v : gamma_curve(0.0, cfg)) CHECK(v == 0.0);
  for (double t : {0.01, 0.5, 1.0, 7.0, 1e3}) {
    CHECK(norm(gamma_curve(t, cfg)) == doctest::Approx(2 / std::numbers::pi * std::atan(t)).epsilon(1e-13));
  }
  CHECK(norm(gamma_curve(1e6, cfg)) > 0.999);
  CHECK(norm(gamma_curve(1e6, cfg)) < 1.0);
}

TEST_CASE("analytic gamma sets") {
  const auto cfg = SphereCurveConfig::standard(2);
  const auto one = analytic_gamma_set(1, cfg);
  REQUIRE(one.size() == 1);
  CHECK(one.points[0] == gamma_curve(1.0, cfg));

  const auto g = analytic_gamma_set(50, cfg);
  CHECK(g.size() == 50);
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(norm(g.points[j]) < 1.0);
    CHECK(norm(g.points[j]) == doctest::Approx(2 / std::numbers::pi * std::atan(1.0 / (j + 1))).epsilon(1e-13));
  }
  CHECK(default_gamma0(3) == std::vector<double>{1.0, 0.5, 1.0 / 3});
}

TEST_CASE("monomials and Veronese rows") {
  CHECK(monomial_count(2, 2) == 6);
  CHECK(monomial_count(3, 3) == 20);
  const auto e = monomial_exponents(2, 2);
  const std::vector<std::vector<unsigned>> want{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  CHECK(e == want);

  const std::vector<RationalPoint> origin{{Q(0), Q(0)}};
  const auto v = veronese_matrix<Q>(origin, 2, 3);
  CHECK(v(0, 0) == Q(1));
  for (Eigen::Index c = 1; c < v.cols(); ++c) CHECK(v(0, c) == Q(0));

  const std::vector<RationalPoint> pt{{Q(2), Q(3)}};
  const auto w = veronese_matrix<Q>(pt, 2, 2);
  CHECK(w(0, 3) == Q(4));
  CHECK(w(0, 4) == Q(6));
  CHECK(w(0, 5) == Q(9));
}

TEST_CASE("ranks and hypersurfaces") {
  const auto collinear = qpoints({{0, 0}, {1, 1}, {2, 2}});
  CHECK(exact_rank(veronese_matrix<Q>(collinear, 2, 1)) == 2);
  const auto line = hypersurface_through(collinear, 2, 1);
  REQUIRE(line);
  REQUIRE(line->cols() == 1);
  // proportional to x - y over (1, x, y)
  CHECK((*line)(0, 0) == Q(0));
  CHECK((*line)(1, 0) == -(*line)(2, 0));
  CHECK((*line)(1, 0) != Q(0));

  CHECK_FALSE(hypersurface_through(qpoints({{0, 0}, {1, 0}, {0, 1}}), 2, 1));
  const auto full = hypersurface_through(std::vector<RationalPoint>{}, 2, 2);
  REQUIRE(full);
  CHECK(full->cols() == 6);

  const std::vector<RealPoint> fl{{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0 + 1e-13}};
  CHECK(float_rank(veronese_matrix<double>(fl, 2, 1)) == 2);
  const auto fline = hypersurface_through(fl, 2, 1);
  REQUIRE(fline);
  CHECK(fline->cols() == 1);
}

TEST_CASE("subset helpers") {
  std::vector<std::size_t> s{0, 1};
  std::size_t count = 1;
  while (next_subset(s, 5)) ++count;
  CHECK(count == 10);
  CHECK(binomial(12, 6) == 924.0);
  CHECK(binomial(5, 7) == 0.0);
  CHECK(schedule_at(std::vector<unsigned>{1, 2, 3}, 2) == 2);
  CHECK(schedule_at(std::vector<unsigned>{1, 2, 3}, 9) == 3);
}

TEST_CASE("greedy rational points") {
  SUBCASE("three non-collinear points") {
    const std::vector<unsigned> k1{1};
    const auto g = greedy_rational_gamma(2, k1, 3, 1);
    REQUIRE(g.size() == 3);
    CHECK(exact_rank(veronese_matrix<Q>(g.rational_points, 2, 1)) == 3);
  }
  SUBCASE("twelve points with no six on a conic") {
    const std::vector<unsigned> k2{2};
    const auto g = greedy_rational_gamma(2, k2, 12, 42);
    REQUIRE(g.size() == 12);
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> cur;
    all_subsets(12, 6, 0, cur, subsets);
    CHECK(subsets.size() == 924);
    for (const auto& sub : subsets) {
      std::vector<RationalPoint> pts;
      for (auto i : sub) pts.push_back(g.rational_points[i]);
      CHECK(exact_rank(veronese_matrix<Q>(pts, 2, 2)) == 6);
    }
    const auto again = greedy_rational_gamma(2, k2, 12, 42);
    CHECK(again.rational_points == g.rational_points);
    const auto cert = certify_generic_position(g, k2);
    CHECK(cert.certified());
    CHECK(cert.degrees[0].subsets_checked == 924);
    CHECK(cert.degrees[0].incidence_bound == 5);
  }
  SUBCASE("budget exhaustion") {
    const std::vector<unsigned> k{1};
    GreedyBudget tiny;
    tiny.max_draws = 2;
    CHECK_THROWS_AS(greedy_rational_gamma(2, k, 5, 0, tiny), BudgetExhausted);
  }
  SUBCASE("points are distinct") {
    const std::vector<unsigned> k{1, 2, 3};
    const auto g = greedy_rational_gamma(2, k, 10, 3);
    std::set<std::vector<std::string>> seen;
    for (const auto& p : g.rational_points) seen.insert({to_string(p[0]), to_string(p[1])});
    CHECK(seen.size() == 10);
  }
}

TEST_CASE("generic position certificates") {
  const std::vector<unsigned> k1{1};
  SUBCASE("single point is vacuous") {
    const auto cert = certify_generic_position(exact_set(qpoints({{3, 4}})), k1);
    CHECK(cert.certified());
  }
  SUBCASE("triangle") {
    const auto cert = certify_generic_position(exact_set(qpoints({{0, 0}, {1, 0}, {0, 1}})), k1);
    CHECK(cert.verdict() == "certified");
    CHECK(cert.degrees[0].incidence_bound == 2);
  }
  SUBCASE("planted collinear triple") {
    const auto cert = certify_generic_position(exact_set(qpoints({{0, 0}, {5, 1}, {1, 1}, {2, 2}})), k1);
    CHECK(cert.verdict() == "violated");
    REQUIRE(cert.degrees[0].witness);
    CHECK(*cert.degrees[0].witness == std::vector<std::size_t>{0, 2, 3});
  }
  SUBCASE("float certification of the analytic set at degree 1") {
    const auto g = analytic_gamma_set(20, SphereCurveConfig::standard(2));
    const std::vector<unsigned> sched{1};
    const auto cert = certify_generic_position(g, sched);
    CHECK_FALSE(cert.exact);
    CHECK(cert.certified());
    CHECK(cert.degrees[0].worst_relative_sigma > kFloatRankThreshold);
  }
  SUBCASE("sampled subsets past the exhaustive limit") {
    const std::vector<unsigned> k3{3};
    const auto g = greedy_rational_gamma(2, std::vector<unsigned>{1}, 40, 9);
    // C(40, 10) is far above 10^6
    const auto a = certify_generic_position(g, k3, 5);
    const auto b = certify_generic_position(g, k3, 5);
    CHECK_FALSE(a.degrees[0].exhaustive);
    CHECK(a.degrees[0].subsets_checked == kSampledSubsets);
    CHECK(a.degrees[0].worst_subset == b.degrees[0].worst_subset);
  }
}
