#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nondegen/core/errors.hpp"
#include "nondegen/densedisk/densedisk.hpp"

using namespace nondegen;
using namespace nondegen::densedisk;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex I{0.0, 1.0};

Complex random_disk_point(std::mt19937_64& rng, double max_radius = 0.999) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(max_radius * std::sqrt(u(rng)), 2 * kPi * u(rng));
}

double sup_distance(std::span<const Complex> a, std::span<const Complex> b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

// naive admissibility scan on a fine grid, for small |t|
bool grid_admissible(double t, std::span<const double> theta, const FrequencyVector& lambda, double delta) {
  for (std::size_t j = 0; j < theta.size(); ++j)
    if (circle_distance(lambda[j] * t, theta[j]) >= delta) return false;
  return true;
}

}  // namespace

TEST_CASE("frequency vectors") {
  const auto f = FrequencyVector::standard(6);
  CHECK(f[0] == 1.0);
  CHECK(f[1] == doctest::Approx(std::sqrt(2.0)));
  CHECK(f[3] == doctest::Approx(std::sqrt(5.0)));
  CHECK(f[5] == doctest::Approx(std::sqrt(11.0)));
  CHECK_THROWS_AS(FrequencyVector({1.0, -1.0}), PreconditionError);
  CHECK_THROWS_AS(FrequencyVector({1.0, 1.0}), PreconditionError);
}

TEST_CASE("point types enforce their domains") {
  CHECK_THROWS_AS(HalfPlanePoint(Complex(1.0, 0.0)), PreconditionError);
  CHECK_THROWS_AS(DiskPoint(Complex(1.0, 0.0)), PreconditionError);
  CHECK_THROWS_AS(PolydiskPoint({Complex(0.5, 0.0), Complex(0.0, 1.5)}), PreconditionError);
  CHECK_NOTHROW(PolydiskPoint({Complex(0.5, 0.0)}));
}

TEST_CASE("Cayley transforms") {
  CHECK(std::abs(cayley_to_halfplane(DiskPoint(0.0)).value() - I) < 1e-15);
  CHECK(std::abs(cayley_to_halfplane(DiskPoint(0.5)).value() - 3.0 * I) < 1e-15);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Complex w = random_disk_point(rng);
    CHECK(std::abs(cayley_to_disk(cayley_to_halfplane(DiskPoint(w))).value() - w) < 1e-12);
  }
}

TEST_CASE("torus map") {
  const FrequencyVector lambda({1.0, std::sqrt(2.0)});
  const auto v = torus_map(HalfPlanePoint(I), lambda);
  CHECK(v[0].real() == doctest::Approx(std::exp(-1.0)));
  CHECK(v[1].real() == doctest::Approx(std::exp(-std::sqrt(2.0))));
  CHECK(v[0].real() == doctest::Approx(0.3679).epsilon(1e-4));
  CHECK(v[1].real() == doctest::Approx(0.2431).epsilon(1e-3));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> t(-1e3, 1e3);
  for (double tau : {0.1, 1.0, 3.5}) {
    double prev = 2.0;
    for (int i = 0; i < 50; ++i) {
      const auto img = torus_map(HalfPlanePoint({t(rng), tau}), lambda);
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(std::abs(std::abs(img[j]) - std::exp(-lambda[j] * tau)) < 1e-12);
    }
    const double m = std::abs(torus_map(HalfPlanePoint({0.0, tau}), lambda)[0]);
    CHECK(m < prev);
    prev = m;
  }
}

TEST_CASE("pair_average") {
  const auto a = pair_average(PolydiskPoint({0.3, 0.3, Complex(0, 0.2), Complex(0, 0.2)}));
  CHECK(a.size() == 2);
  CHECK(std::abs(a[0] - 0.3) < 1e-15);
  CHECK(std::abs(a[1] - Complex(0, 0.2)) < 1e-15);
  CHECK(std::abs(pair_average(PolydiskPoint({0.5, -0.5}))[0]) == 0.0);
  CHECK_THROWS_AS(pair_average(PolydiskPoint({0.5, 0.5, 0.5})), PreconditionError);
}

TEST_CASE("explicit dense map") {
  const auto v = explicit_dense_map(DiskPoint(0.0));
  const double e1 = 0.5 * (std::exp(-1.0) + std::exp(-std::sqrt(2.0)));
  const double e2 = 0.5 * (std::exp(-std::sqrt(3.0)) + std::exp(-std::sqrt(5.0)));
  CHECK(v[0].real() == doctest::Approx(e1).epsilon(1e-14));
  CHECK(v[1].real() == doctest::Approx(e2).epsilon(1e-14));
  CHECK(v[0].real() == doctest::Approx(0.3055).epsilon(1e-3));
  CHECK(v[1].real() == doctest::Approx(0.1419).epsilon(1e-3));

  const auto lambda = FrequencyVector::standard(4);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const DiskPoint w(random_disk_point(rng));
    const auto a = explicit_dense_map(w);
    const auto b = composed_dense_map(w, lambda);
    CHECK(sup_distance(a.components(), b.components()) < 1e-12);
    CHECK(std::abs(a[0]) < 1.0);
    CHECK(std::abs(a[1]) < 1.0);
  }
}

TEST_CASE("angle_solve") {
  const auto a = angle_solve(0.5, 1.0, 1.0);
  CHECK(std::abs(a.alpha - kPi / 3) < 1e-12);
  CHECK(std::abs(a.beta + kPi / 3) < 1e-12);

  const Complex w = std::polar(0.6, 0.7);
  const auto b = angle_solve(w, 0.7, 0.5);
  CHECK(std::abs(b.alpha - 0.7) < 1e-6);
  CHECK(std::abs(b.beta - 0.7) < 1e-6);

  const auto c = angle_solve(0.1, 0.7, 0.5);
  CHECK(std::abs(c.alpha) < 1e-6);
  CHECK(std::abs(circle_distance(c.beta, kPi)) < 1e-6);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double r = 0.2 + 0.8 * u(rng);
    const double s = r * (0.1 + 0.9 * u(rng));
    const double mod = (r - s) + (2 * s) * (0.01 + 0.98 * u(rng));
    const Complex target = std::polar(mod / 2, 2 * kPi * u(rng));
    const auto ab = angle_solve(target, r, s);
    CHECK(std::abs(std::polar(r, ab.alpha) + std::polar(s, ab.beta) - 2.0 * target) < 1e-9);
  }
  CHECK_THROWS_AS(angle_solve(0.9, 0.5, 0.2), PreconditionError);
}

TEST_CASE("radius window tau") {
  const FrequencyVector lambda({1.0, std::sqrt(2.0)});
  const double m = 0.3;
  const std::vector<double> moduli{m};
  const double tau = radius_window_tau(moduli, lambda);
  auto feasible = [&](double t) {
    const double a = std::exp(-t);
    const double b = std::exp(-std::sqrt(2.0) * t);
    return (a + b) / 2 > m && m > std::abs(a - b) / 2;
  };
  CHECK(feasible(1.0));
  CHECK(feasible(tau));
  // tau lies in the same feasible interval as 1: feasibility holds on the segment
  for (int k = 0; k <= 100; ++k) CHECK(feasible(std::min(tau, 1.0) + (std::abs(tau - 1.0)) * k / 100.0));

  const double near_one = radius_window_tau(std::vector<double>{0.99}, lambda);
  CHECK(near_one > 0.0);
  CHECK(near_one < 0.02);
  CHECK_THROWS_AS(radius_window_tau(std::vector<double>{0.0}, lambda), PreconditionError);
}

TEST_CASE("line density search") {
  const FrequencyVector lambda({1.0, std::sqrt(2.0)});
  const std::vector<double> zeros{0.0, 0.0};
  CHECK(line_density_search(zeros, lambda, 0.3, 100.0).grid_t == 0.0);

  const std::vector<double> theta{0.0, kPi};
  const auto res = line_density_search(theta, lambda, 0.5, 1e4);
  CHECK(std::abs(res.grid_t) <= 200.0);
  CHECK(res.max_angle_error < 0.5);
  CHECK(grid_admissible(res.t, theta, lambda, 0.5));

  // brute-force oracle: walk the same grid outward, positive side first
  const double step = 0.5 / (2 * lambda.max());
  double oracle = std::nan("");
  for (long k = 0; k < 100000 && std::isnan(oracle); ++k) {
    if (grid_admissible(k * step, theta, lambda, 0.5))
      oracle = k * step;
    else if (grid_admissible(-k * step, theta, lambda, 0.5))
      oracle = -k * step;
  }
  CHECK(res.grid_t == doctest::Approx(oracle).epsilon(1e-12));

  const std::vector<double> generic{1.0, 2.5};
  CHECK_THROWS_AS(line_density_search(generic, lambda, 1e-6, 1.0), BudgetExhausted);
}

TEST_CASE("find_preimage") {
  const FrequencyVector lambda({1.0, std::sqrt(2.0)});
  const auto pre = find_preimage(PolydiskPoint({0.3}), lambda, 0.05);
  CHECK(pre.error < 0.05);
  CHECK(pre.z.imag() > 0.0);
  const auto img = pair_average(torus_map(HalfPlanePoint(pre.z), lambda));
  CHECK(std::abs(img[0] - 0.3) == doctest::Approx(pre.error));

  // target on the image
  const Complex z0(17.25, 0.8);
  const auto w = pair_average(torus_map(HalfPlanePoint(z0), lambda));
  const auto again = find_preimage(w, lambda, 1e-3);
  CHECK(again.error < 1e-3);

  const auto lambda4 = FrequencyVector::standard(4);
  const auto two = find_preimage(PolydiskPoint({Complex(0.2, 0.4), Complex(-0.5, 0.1)}), lambda4, 0.1);
  CHECK(two.error < 0.1);

  CHECK_THROWS_AS(find_preimage(PolydiskPoint({0.0}), lambda, 0.05), PreconditionError);
  CHECK_THROWS_AS(find_preimage(PolydiskPoint({0.3, 0.3}), lambda, 0.05), PreconditionError);
}

TEST_CASE("density targets") {
  const auto t = density_targets(1, 7);
  CHECK(t.size() == 49);
  CHECK(std::abs(t.front()[0] - Complex(0.1, 0.0)) < 1e-15);
  CHECK(std::abs(std::abs(t.back()[0]) - 0.9) < 1e-15);
  CHECK(density_targets(2, 3).size() == 81);
  CHECK(std::abs(density_targets(1, 1)[0][0] - Complex(0.5, 0.0)) < 1e-15);
}

TEST_CASE("density_certify") {
  const FrequencyVector lambda({1.0, std::sqrt(2.0)});
  SUBCASE("single reachable target") {
    const auto rep = density_certify(lambda, 0.05, 1);
    CHECK(rep.success_fraction == 1.0);
  }
  SUBCASE("7x7 grid") {
    const auto rep = density_certify(lambda, 0.05, 7, {}, 2);
    CHECK(rep.targets == 49);
    CHECK(rep.success_fraction == 1.0);
    CHECK(rep.max_error < 0.05);
    for (const auto& o : rep.outcomes) {
      const auto img = pair_average(torus_map(HalfPlanePoint(o.z), lambda));
      CHECK(std::abs(img[0] - o.target[0]) < 0.05);
    }
  }
  SUBCASE("thread count does not change outcomes") {
    const auto a = density_certify(lambda, 0.05, 3, {}, 1);
    const auto b = density_certify(lambda, 0.05, 3, {}, 3);
    for (std::size_t i = 0; i < a.outcomes.size(); ++i) CHECK(a.outcomes[i].z == b.outcomes[i].z);
  }
  SUBCASE("tiny budget fails without false positives") {
    PreimageBudget tiny;
    tiny.t_max = 1.0;
    const auto rep = density_certify(lambda, 1e-12, 2, tiny);
    CHECK(rep.success_fraction == 0.0);
    CHECK(rep.budget_failures == rep.targets);
  }
}
