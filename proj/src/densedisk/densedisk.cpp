#include "nondegen/densedisk/densedisk.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <optional>
#include <thread>

#include "nondegen/core/errors.hpp"

namespace nondegen::densedisk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI{0.0, 1.0};

bool is_prime(unsigned v) {
  if (v < 2) return false;
  for (unsigned d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

bool window_feasible(std::span<const double> moduli, const FrequencyVector& lambda, double tau) {
  for (std::size_t k = 0; k < moduli.size(); ++k) {
    const double a = std::exp(-lambda[2 * k] * tau);
    const double b = std::exp(-lambda[2 * k + 1] * tau);
    if (!(0.5 * (a + b) > moduli[k] && moduli[k] > 0.5 * std::abs(a - b))) return false;
  }
  return true;
}

// Boundary between an infeasible and a feasible parameter.
double bisect_boundary(std::span<const double> moduli, const FrequencyVector& lambda, double infeasible,
                       double feasible) {
  for (int iter = 0; iter < 200 && std::abs(feasible - infeasible) > 1e-15 * std::abs(feasible); ++iter) {
    const double mid = 0.5 * (infeasible + feasible);
    (window_feasible(moduli, lambda, mid) ? feasible : infeasible) = mid;
  }
  return feasible;
}

double max_angle_error(double t, std::span<const double> theta, const FrequencyVector& lambda) {
  double worst = 0.0;
  for (std::size_t j = 0; j < theta.size(); ++j)
    worst = std::max(worst, circle_distance(lambda[j] * t, theta[j]));
  return worst;
}

// Smallest k in [start, limit] with sign*k*step admissible.
std::optional<long long> scan_direction(int sign, long long start, long long limit, double step,
                                        std::span<const double> theta, const FrequencyVector& lambda,
                                        double delta) {
  long long k = start;
  while (k <= limit) {
    const double t = sign * static_cast<double>(k) * step;
    bool admissible = true;
    double skip = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) {
      const double dist = circle_distance(lambda[j] * t, theta[j]);
      if (dist >= delta) {
        admissible = false;
        // No grid point closer than (dist - delta)/lambda_j can satisfy angle j.
        skip = std::max(skip, (dist - delta) / (lambda[j] * step));
      }
    }
    if (admissible) return k;
    k += std::max<long long>(1, static_cast<long long>(std::floor(skip)));
  }
  return std::nullopt;
}

}  // namespace

FrequencyVector::FrequencyVector(std::vector<double> values) : values_(std::move(values)) {
  require(!values_.empty(), "frequency vector must be nonempty");
  for (double v : values_) require(std::isfinite(v) && v > 0.0, "frequencies must be positive");
  // independence is only declared; equal entries are the one cheap violation to catch
  for (std::size_t i = 0; i < values_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) require(values_[i] != values_[j], "frequencies must be pairwise distinct");
}

FrequencyVector FrequencyVector::standard(std::size_t count) {
  require(count >= 1, "frequency vector must be nonempty");
  std::vector<double> values{1.0};
  for (unsigned p = 2; values.size() < count; ++p)
    if (is_prime(p)) values.push_back(std::sqrt(static_cast<double>(p)));
  return FrequencyVector(std::move(values));
}

double FrequencyVector::max() const { return *std::max_element(values_.begin(), values_.end()); }

HalfPlanePoint::HalfPlanePoint(Complex z) : z_(z) {
  require(std::isfinite(z.real()) && z.imag() > 0.0, "point must lie in the upper half plane");
}

DiskPoint::DiskPoint(Complex w) : w_(w) { require(std::abs(w) < 1.0, "point must lie in the unit disk"); }

PolydiskPoint::PolydiskPoint(std::vector<Complex> components) : components_(std::move(components)) {
  require(!components_.empty(), "polydisk point must have components");
  for (auto v : components_)
    require(std::abs(v) < 1.0 + kMembershipTolerance, "polydisk components must lie in the unit disk");
}

HalfPlanePoint cayley_to_halfplane(const DiskPoint& w) {
  const Complex v = w.value();
  return HalfPlanePoint(-kI * (v + 1.0) / (v - 1.0));
}

DiskPoint cayley_to_disk(const HalfPlanePoint& z) {
  const Complex iz = kI * z.value();
  return DiskPoint((iz + 1.0) / (iz - 1.0));
}

PolydiskPoint torus_map(const HalfPlanePoint& z, const FrequencyVector& lambda) {
  std::vector<Complex> out;
  out.reserve(lambda.size());
  for (double l : lambda.values()) out.push_back(std::polar(std::exp(-l * z.value().imag()), l * z.value().real()));
  return PolydiskPoint(std::move(out));
}

PolydiskPoint pair_average(const PolydiskPoint& v) {
  require(v.size() % 2 == 0, "pair_average needs an even number of components");
  std::vector<Complex> out;
  out.reserve(v.size() / 2);
  for (std::size_t k = 0; k < v.size(); k += 2) out.push_back(0.5 * (v[k] + v[k + 1]));
  return PolydiskPoint(std::move(out));
}

PolydiskPoint explicit_dense_map(const DiskPoint& w) {
  const Complex u = (w.value() + 1.0) / (w.value() - 1.0);
  const double s2 = std::numbers::sqrt2;
  const double s3 = std::numbers::sqrt3;
  const double s5 = std::sqrt(5.0);
  return PolydiskPoint({0.5 * (std::exp(u) + std::exp(s2 * u)), 0.5 * (std::exp(s3 * u) + std::exp(s5 * u))});
}

PolydiskPoint composed_dense_map(const DiskPoint& w, const FrequencyVector& lambda) {
  return pair_average(torus_map(cayley_to_halfplane(w), lambda));
}

AnglePair angle_solve(Complex w, double r, double s) {
  require(s > 0.0 && r >= s, "angle_solve needs r >= s > 0");
  const Complex target = 2.0 * w;
  const double m = std::abs(target);
  const double slack = 1e-12 * (r + s);
  if (m > r + s + slack || m < r - s - slack)
    throw PreconditionError("angle_solve: |2w| lies outside [r - s, r + s]");
  if (m == 0.0) return {0.0, std::numbers::pi};
  const double phi = std::arg(target);
  const double cos_gap = std::clamp((r * r + m * m - s * s) / (2.0 * r * m), -1.0, 1.0);
  const double alpha = phi + std::acos(cos_gap);
  const double beta = std::arg(target - std::polar(r, alpha));
  return {alpha, beta};
}

double radius_window_tau(std::span<const double> target_moduli, const FrequencyVector& lambda,
                         const TauSearch& search) {
  require(!target_moduli.empty(), "radius window needs targets");
  require(lambda.size() == 2 * target_moduli.size(), "need two frequencies per target component");
  for (double m : target_moduli) require(m > 0.0 && m < 1.0, "target moduli must lie in (0, 1)");
  require(search.lower > 0.0 && search.upper > search.lower && search.scan_points >= 2, "bad tau search range");

  const double log_lo = std::log(search.lower);
  const double log_hi = std::log(search.upper);
  auto at = [&](std::size_t i) {
    return std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / static_cast<double>(search.scan_points - 1));
  };
  std::size_t first = search.scan_points;
  for (std::size_t i = 0; i < search.scan_points; ++i) {
    if (window_feasible(target_moduli, lambda, at(i))) {
      first = i;
      break;
    }
  }
  if (first == search.scan_points)
    throw BudgetExhausted("radius_window_tau: no feasible tau in the search range");
  std::size_t last = first;
  while (last + 1 < search.scan_points && window_feasible(target_moduli, lambda, at(last + 1))) ++last;

  const double lo = first == 0 ? at(0) : bisect_boundary(target_moduli, lambda, at(first - 1), at(first));
  const double hi =
      last + 1 == search.scan_points ? at(last) : bisect_boundary(target_moduli, lambda, at(last + 1), at(last));
  const double mid = 0.5 * (lo + hi);
  if (window_feasible(target_moduli, lambda, mid)) return mid;
  return at((first + last) / 2);
}

double circle_distance(double a, double b) {
  double d = std::fmod(a - b, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return std::min(d, kTwoPi - d);
}

LineSearchResult line_density_search(std::span<const double> theta, const FrequencyVector& lambda, double delta,
                                     double t_max) {
  require(theta.size() == lambda.size(), "one target angle per frequency");
  require(delta > 0.0, "line search tolerance must be positive");
  require(t_max >= 0.0, "line search range must be nonnegative");
  const double step = delta / (2.0 * lambda.max());
  const auto limit = static_cast<long long>(std::floor(t_max / step));

  const auto positive = scan_direction(+1, 0, limit, step, theta, lambda, delta);
  const auto negative = scan_direction(-1, 1, positive ? *positive - 1 : limit, step, theta, lambda, delta);
  if (!positive && !negative)
    throw BudgetExhausted("line_density_search: no admissible t with |t| <= t_max");

  LineSearchResult out;
  out.grid_t = negative ? -static_cast<double>(*negative) * step : static_cast<double>(*positive) * step;

  // Local refinement of the worst angle error around the grid point.
  double best_t = out.grid_t;
  double best_err = max_angle_error(best_t, theta, lambda);
  double half_width = step;
  for (int round = 0; round < 3; ++round) {
    const double center = best_t;
    for (int i = -32; i <= 32; ++i) {
      const double t = center + half_width * i / 32.0;
      const double err = max_angle_error(t, theta, lambda);
      if (err < best_err) {
        best_err = err;
        best_t = t;
      }
    }
    half_width /= 16.0;
  }
  out.t = best_t;
  out.max_angle_error = best_err;
  return out;
}

Preimage find_preimage(const PolydiskPoint& w, const FrequencyVector& lambda, double eps,
                       const PreimageBudget& budget) {
  require(eps > 0.0, "preimage tolerance must be positive");
  const std::size_t n = w.size();
  require(lambda.size() == 2 * n, "need two frequencies per target component");
  std::vector<double> moduli(n);
  for (std::size_t k = 0; k < n; ++k) {
    moduli[k] = std::abs(w[k]);
    require(moduli[k] > 0.0 && moduli[k] < 1.0, "target components must have modulus in (0, 1)");
  }

  Preimage out;
  out.tau = radius_window_tau(moduli, lambda, budget.tau);
  std::vector<double> theta(2 * n);
  double widest = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ra = std::exp(-lambda[2 * k] * out.tau);
    const double rb = std::exp(-lambda[2 * k + 1] * out.tau);
    if (ra >= rb) {
      const auto ang = angle_solve(w[k], ra, rb);
      theta[2 * k] = ang.alpha;
      theta[2 * k + 1] = ang.beta;
    } else {
      const auto ang = angle_solve(w[k], rb, ra);
      theta[2 * k] = ang.beta;
      theta[2 * k + 1] = ang.alpha;
    }
    widest = std::max(widest, 0.5 * (ra + rb));
  }
  // A phase error below delta moves each averaged component by less than
  // (ra + rb)/2 * delta.
  out.delta = std::min(0.9 * eps / widest, std::numbers::pi);
  const auto line = line_density_search(theta, lambda, out.delta, budget.t_max);
  out.t = line.t;
  out.z = Complex(line.t, out.tau);

  const auto image = pair_average(torus_map(HalfPlanePoint(out.z), lambda));
  for (std::size_t k = 0; k < n; ++k) out.error = std::max(out.error, std::abs(image[k] - w[k]));
  if (!(out.error < eps)) throw CertificateFailure("find_preimage: residual check failed");
  return out;
}

std::vector<std::vector<Complex>> density_targets(std::size_t n, std::size_t grid) {
  require(n >= 1 && grid >= 1, "density grid needs n >= 1 and grid >= 1");
  std::vector<Complex> per_component;
  for (std::size_t a = 0; a < grid; ++a) {
    const double modulus = grid == 1 ? 0.5 : 0.1 + 0.8 * static_cast<double>(a) / static_cast<double>(grid - 1);
    for (std::size_t b = 0; b < grid; ++b)
      per_component.push_back(std::polar(modulus, kTwoPi * static_cast<double>(b) / static_cast<double>(grid)));
  }
  std::vector<std::vector<Complex>> targets{{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<Complex>> next;
    next.reserve(targets.size() * per_component.size());
    for (const auto& prefix : targets) {
      for (auto c : per_component) {
        auto t = prefix;
        t.push_back(c);
        next.push_back(std::move(t));
      }
    }
    targets = std::move(next);
  }
  return targets;
}

DensityReport density_certify(const FrequencyVector& lambda, double eps, std::size_t grid,
                              const PreimageBudget& budget, unsigned threads) {
  require(lambda.size() % 2 == 0, "density_certify needs an even number of frequencies");
  require(eps > 0.0, "density tolerance must be positive");
  const auto start = std::chrono::steady_clock::now();
  DensityReport report;
  report.dimension = lambda.size() / 2;
  const auto targets = density_targets(report.dimension, grid);
  report.targets = targets.size();
  report.outcomes.resize(targets.size());

  auto solve = [&](std::size_t i) {
    TargetOutcome& o = report.outcomes[i];
    o.target = targets[i];
    try {
      const auto pre = find_preimage(PolydiskPoint(targets[i]), lambda, eps, budget);
      o.success = true;
      o.error = pre.error;
      o.z = pre.z;
    } catch (const BudgetExhausted&) {
      o.budget_exhausted = true;
    } catch (const std::exception&) {
      o.success = false;
    }
  };

  const std::size_t workers = std::max(1U, threads);
  if (workers == 1) {
    for (std::size_t i = 0; i < targets.size(); ++i) solve(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < targets.size(); i += workers) solve(i);
      });
    for (auto& t : pool) t.join();
  }

  for (const auto& o : report.outcomes) {
    if (o.success) {
      ++report.successes;
      report.max_error = std::max(report.max_error, o.error);
    } else if (o.budget_exhausted) {
      ++report.budget_failures;
    } else {
      ++report.other_failures;
    }
  }
  report.success_fraction =
      report.targets == 0 ? 0.0 : static_cast<double>(report.successes) / static_cast<double>(report.targets);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace nondegen::densedisk
