#include "nondegen/genpos/genpos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "nondegen/exactnum/linalg.hpp"

namespace nondegen::genpos {

namespace {

bool is_prime(unsigned v) {
  if (v < 2) return false;
  for (unsigned q = 2; q * q <= v; ++q)
    if (v % q == 0) return false;
  return true;
}

void exponents_of_degree(unsigned d, unsigned remaining, std::vector<unsigned>& current,
                         std::vector<std::vector<unsigned>>& out) {
  const std::size_t slot = current.size();
  if (slot + 1 == d) {
    current.push_back(remaining);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    current.push_back(e);
    exponents_of_degree(d, remaining - e, current, out);
    current.pop_back();
  }
}

template <class S>
Matrix<S> select_rows(const Matrix<S>& m, const std::vector<std::size_t>& rows) {
  Matrix<S> out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(static_cast<Eigen::Index>(rows[r]));
  return out;
}

struct SubsetResult {
  std::size_t rank = 0;
  double relative_sigma = 1.0;
};

SubsetResult check_subset(const RationalMatrix& v, const std::vector<std::size_t>& rows) {
  return {static_cast<std::size_t>(exact_rank(select_rows(v, rows))), 1.0};
}

SubsetResult check_subset(const Matrix<double>& v, const std::vector<std::size_t>& rows) {
  const Matrix<double> sub = select_rows(v, rows);
  Eigen::JacobiSVD<Matrix<double>> svd(sub);
  const auto& s = svd.singularValues();
  SubsetResult out;
  if (s.size() == 0) return out;
  const double top = s(0);
  if (top == 0.0) return {0, 0.0};
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) >= kFloatRankThreshold * top) ++out.rank;
  out.relative_sigma = static_cast<Eigen::Index>(rows.size()) <= s.size() ? s(static_cast<Eigen::Index>(rows.size()) - 1) / top : 0.0;
  return out;
}

std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng() % (n - i)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

template <class S>
DegreeCheck check_degree(const Matrix<S>& veronese, unsigned d, unsigned k, std::uint64_t seed) {
  DegreeCheck out;
  out.degree = k;
  out.monomials = monomial_count(d, k);
  const auto n = static_cast<std::size_t>(veronese.rows());
  out.subset_size = std::min(out.monomials, n);
  out.incidence_bound = out.monomials - 1;
  out.prefix_bound = out.monomials - 1 + (k - 1);
  out.worst_rank = out.subset_size;

  auto visit = [&](const std::vector<std::size_t>& subset) {
    const auto r = check_subset(veronese, subset);
    ++out.subsets_checked;
    const bool worse = r.rank < out.worst_rank || (r.rank == out.worst_rank && r.relative_sigma < out.worst_relative_sigma);
    if (worse || out.worst_subset.empty()) {
      out.worst_rank = std::min(out.worst_rank, r.rank);
      out.worst_relative_sigma = std::min(out.worst_relative_sigma, r.relative_sigma);
      out.worst_subset = subset;
    }
    if (r.rank < out.subset_size && !out.witness) out.witness = subset;
  };

  if (out.subset_size == 0) {
    out.passed = true;
    return out;
  }
  out.exhaustive = binomial(n, out.subset_size) <= kExhaustiveSubsetLimit;
  if (out.exhaustive) {
    std::vector<std::size_t> subset(out.subset_size);
    for (std::size_t i = 0; i < subset.size(); ++i) subset[i] = i;
    do visit(subset);
    while (next_subset(subset, n));
  } else {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * k));
    for (std::size_t s = 0; s < kSampledSubsets; ++s) visit(random_subset(n, out.subset_size, rng));
  }
  out.passed = !out.witness.has_value();
  return out;
}

std::vector<unsigned> distinct_degrees(std::span<const unsigned> schedule) {
  std::set<unsigned> s(schedule.begin(), schedule.end());
  return {s.begin(), s.end()};
}

Rational random_coordinate(std::mt19937_64& rng, unsigned bits) {
  const std::uint64_t span = std::uint64_t{1} << bits;
  const auto num = static_cast<long long>(rng() % (2 * span + 1)) - static_cast<long long>(span);
  const auto den = static_cast<long long>(rng() % span) + 1;
  return Rational(Integer(num), Integer(den));
}

}  // namespace

SphereCurveConfig SphereCurveConfig::standard(unsigned dimension) {
  require(dimension >= 2, "sphere curve dimension must be at least 2");
  SphereCurveConfig cfg;
  cfg.dimension = dimension;
  cfg.frequencies.push_back(1.0);
  for (unsigned p = 2; cfg.frequencies.size() + 1 < dimension; ++p)
    if (is_prime(p)) cfg.frequencies.push_back(std::sqrt(static_cast<double>(p)));
  return cfg;
}

void SphereCurveConfig::validate() const {
  require(dimension >= 2, "sphere curve dimension must be at least 2");
  require(frequencies.size() + 1 == dimension, "need dimension - 1 frequencies");
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    require(std::isfinite(frequencies[i]) && frequencies[i] > 0.0, "frequencies must be positive");
    for (std::size_t j = 0; j < i; ++j) require(frequencies[i] != frequencies[j], "frequencies must be distinct");
  }
}

RealPoint dense_sphere_curve(double t, const SphereCurveConfig& cfg) {
  cfg.validate();
  RealPoint x(cfg.dimension);
  double sin_product = 1.0;
  for (unsigned j = 0; j + 1 < cfg.dimension; ++j) {
    const double angle = cfg.frequencies[j] * t;
    x[j] = sin_product * std::cos(angle);
    sin_product *= std::sin(angle);
  }
  x[cfg.dimension - 1] = sin_product;
  return x;
}

RealPoint gamma_curve(double t, const SphereCurveConfig& cfg) {
  RealPoint x = dense_sphere_curve(t, cfg);
  const double scale = 2.0 / std::numbers::pi * std::atan(t);
  for (auto& v : x) v *= scale;
  return x;
}

std::vector<double> default_gamma0(std::size_t m) {
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = 1.0 / static_cast<double>(j + 1);
  return out;
}

GammaSet analytic_gamma_set(std::span<const double> parameters, const SphereCurveConfig& cfg) {
  require(!parameters.empty(), "analytic gamma set needs at least one parameter");
  cfg.validate();
  GammaSet out;
  out.provenance = Provenance::analytic;
  out.dimension = cfg.dimension;
  out.parameters.assign(parameters.begin(), parameters.end());
  for (double t : parameters) {
    require(std::isfinite(t), "gamma parameters must be finite");
    out.points.push_back(gamma_curve(t, cfg));
  }
  for (std::size_t i = 0; i < out.points.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (out.points[i] == out.points[j]) throw CertificateFailure("analytic gamma set: repeated point");
  return out;
}

GammaSet analytic_gamma_set(std::size_t m, const SphereCurveConfig& cfg) {
  require(m >= 1, "analytic gamma set needs m >= 1");
  const auto params = default_gamma0(m);
  return analytic_gamma_set(params, cfg);
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (std::size_t i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(out);
}

std::size_t monomial_count(unsigned d, unsigned k) {
  // exact integer recurrence C(d+k, d)
  std::size_t out = 1;
  for (unsigned i = 1; i <= d; ++i) out = out * (k + i) / i;
  return out;
}

std::vector<std::vector<unsigned>> monomial_exponents(unsigned d, unsigned k) {
  require(d >= 1, "monomials need at least one variable");
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> current;
  for (unsigned total = 0; total <= k; ++total) exponents_of_degree(d, total, current, out);
  return out;
}

std::size_t float_rank(const Matrix<double>& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix<double>> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) >= kFloatRankThreshold * s(0)) ++rank;
  return rank;
}

std::optional<RationalMatrix> hypersurface_through(std::span<const RationalPoint> points, unsigned d, unsigned k) {
  const auto cols = static_cast<Eigen::Index>(monomial_count(d, k));
  if (points.empty()) {
    RationalMatrix full = RationalMatrix::Constant(cols, cols, Rational(0));
    for (Eigen::Index i = 0; i < cols; ++i) full(i, i) = 1;
    return full;
  }
  RationalMatrix basis = exact_nullspace(veronese_matrix<Rational>(points, d, k));
  if (basis.cols() == 0) return std::nullopt;
  return basis;
}

std::optional<Matrix<double>> hypersurface_through(std::span<const RealPoint> points, unsigned d, unsigned k) {
  const auto cols = static_cast<Eigen::Index>(monomial_count(d, k));
  if (points.empty()) return Matrix<double>(Matrix<double>::Identity(cols, cols));
  const Matrix<double> v = veronese_matrix<double>(points, d, k);
  Eigen::JacobiSVD<Matrix<double>> svd(v, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double top = s.size() > 0 ? s(0) : 0.0;
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index i = 0; i < cols; ++i)
    if (i >= s.size() || s(i) < kFloatRankThreshold * top) null_cols.push_back(i);
  if (null_cols.empty()) return std::nullopt;
  Matrix<double> out(cols, static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t c = 0; c < null_cols.size(); ++c)
    out.col(static_cast<Eigen::Index>(c)) = svd.matrixV().col(null_cols[c]);
  return out;
}

unsigned schedule_at(std::span<const unsigned> schedule, std::size_t j) {
  require(!schedule.empty(), "degree schedule must be nonempty");
  require(j >= 1, "schedule positions start at 1");
  return schedule[std::min(j, schedule.size()) - 1];
}

bool next_subset(std::vector<std::size_t>& subset, std::size_t n) {
  const std::size_t k = subset.size();
  for (std::size_t i = k; i-- > 0;) {
    if (subset[i] < n - k + i) {
      ++subset[i];
      for (std::size_t j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
      return true;
    }
  }
  return false;
}

GammaSet greedy_rational_gamma(unsigned d, std::span<const unsigned> schedule, std::size_t m, std::uint64_t seed,
                               const GreedyBudget& budget) {
  require(d >= 1 && m >= 1, "greedy gamma needs d >= 1 and m >= 1");
  require(!schedule.empty(), "degree schedule must be nonempty");
  for (unsigned k : schedule) require(k >= 1, "scheduled degrees must be at least 1");
  require(budget.initial_bits >= 1 && budget.initial_bits <= 62, "sampling box bits must lie in [1, 62]");

  GammaSet out;
  out.provenance = Provenance::greedy;
  out.dimension = d;
  out.schedule.assign(schedule.begin(), schedule.end());
  out.seed = seed;

  std::mt19937_64 rng(seed);
  unsigned bits = budget.initial_bits;
  std::uint64_t consecutive_rejections = 0;
  unsigned verified_degree = 0;  // every subset of the accepted points is checked up to this degree
  std::vector<RationalPoint>& accepted = out.rational_points;

  while (accepted.size() < m) {
    if (out.draws >= budget.max_draws)
      throw BudgetExhausted("greedy_rational_gamma: draw budget exhausted after " + std::to_string(accepted.size()) +
                            " points");
    ++out.draws;
    RationalPoint candidate(d);
    for (auto& c : candidate) c = random_coordinate(rng, bits);

    bool ok = std::find(accepted.begin(), accepted.end(), candidate) == accepted.end();
    const unsigned K = schedule_at(schedule, accepted.size() + 1);
    if (ok) {
      std::vector<RationalPoint> trial = accepted;
      trial.push_back(candidate);
      const std::size_t newest = trial.size() - 1;
      for (unsigned k = 1; k <= K && ok; ++k) {
        const RationalMatrix v = veronese_matrix<Rational>(trial, d, k);
        const std::size_t size = std::min(monomial_count(d, k), trial.size());
        const bool all_subsets = k > verified_degree;
        std::vector<std::size_t> subset(size);
        for (std::size_t i = 0; i < size; ++i) subset[i] = i;
        do {
          if (!all_subsets && subset.back() != newest) continue;
          if (static_cast<std::size_t>(exact_rank(select_rows(v, subset))) < size) ok = false;
        } while (ok && next_subset(subset, trial.size()));
      }
    }

    if (ok) {
      accepted.push_back(std::move(candidate));
      verified_degree = std::max(verified_degree, K);
      consecutive_rejections = 0;
    } else if (++consecutive_rejections % budget.rejections_per_growth == 0) {
      bits = std::min(62U, bits * 2);
    }
  }
  out.final_bits = bits;
  return out;
}

bool GenericPositionCertificate::certified() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const DegreeCheck& c) { return c.passed; });
}

GenericPositionCertificate certify_generic_position(const GammaSet& gamma, std::span<const unsigned> schedule,
                                                    std::uint64_t seed) {
  require(!schedule.empty(), "degree schedule must be nonempty");
  for (unsigned k : schedule) require(k >= 1, "scheduled degrees must be at least 1");
  GenericPositionCertificate cert;
  cert.schedule.assign(schedule.begin(), schedule.end());
  cert.exact = gamma.exact();
  for (unsigned k : distinct_degrees(schedule)) {
    if (gamma.exact())
      cert.degrees.push_back(
          check_degree(veronese_matrix<Rational>(gamma.rational_points, gamma.dimension, k), gamma.dimension, k, seed));
    else
      cert.degrees.push_back(
          check_degree(veronese_matrix<double>(gamma.points, gamma.dimension, k), gamma.dimension, k, seed));
  }
  return cert;
}

}  // namespace nondegen::genpos
