#include <cmath>
#include <exception>
#include <limits>
#include <set>
#include <thread>

#include "nondegen/interp/interp.hpp"

namespace nondegen::interp {

EntireMapTuple::EntireMapTuple(std::vector<ExactPoly> components) : components_(std::move(components)) {
  require(!components_.empty(), "an entire map tuple needs at least one component");
}

std::vector<GaussianRational> EntireMapTuple::jet(const GaussianRational& z, unsigned d) const {
  const std::size_t n = components_.size();
  std::vector<GaussianRational> out(n * (d + 1));
  for (std::size_t c = 0; c < n; ++c) {
    const auto j = poly_jet(components_[c], z, d);
    for (unsigned k = 0; k <= d; ++k) out[k * n + c] = j[k];
  }
  return out;
}

std::vector<GaussianRational> jet_target(unsigned n, unsigned d, std::uint64_t index) {
  return enumerate_gaussian_rational(n * (d + 1), index);
}

DensePerturbation dense_perturbation(const EntireMapTuple& f, const Rational& radius, const Rational& eps,
                                     unsigned d, std::size_t m, unsigned threads) {
  require(radius > 0, "perturbation radius must be positive");
  require(eps > 0, "perturbation budget must be positive");
  const std::size_t n = f.dimension();

  // Sites ceil(R)+1, ceil(R)+2, ...
  Integer ceil_r = numerator(radius) / denominator(radius);
  if (Rational(ceil_r) < radius) ceil_r += 1;
  const SiteList sites = SiteList::integers(ceil_r.convert_to<long long>() + 1, m, radius);

  DensePerturbation out{f, std::vector<InterpolantCertificate>(n), sites.sites(), {}};
  out.targets.reserve(m);
  for (std::size_t j = 0; j < m; ++j) out.targets.push_back(jet_target(static_cast<unsigned>(n), d, j + 1));

  auto build_component = [&](std::size_t c) {
    std::vector<ExactJet> jets;
    jets.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<GaussianRational> want(d + 1);
      for (unsigned k = 0; k <= d; ++k) want[k] = out.targets[j][k * n + c];
      jets.push_back(ExactJet(std::move(want)) - jet_of(f[c], sites[j], d));
    }
    out.certificates[c] = entire_interpolant(sites, jets, d, eps, m);
  };

  const std::size_t workers = std::min<std::size_t>(std::max(1U, threads), n);
  if (workers <= 1) {
    for (std::size_t c = 0; c < n; ++c) build_component(c);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < n; c += workers) {
          try {
            build_component(c);
          } catch (...) {
            errors[c] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<ExactPoly> phi;
  phi.reserve(n);
  for (std::size_t c = 0; c < n; ++c) phi.push_back(f[c] + out.certificates[c].interpolant);
  out.map = EntireMapTuple(std::move(phi));
  return out;
}

CoverageReport jet_coverage_report(const EntireMapTuple& phi, unsigned d, const CoverageBox& box, unsigned grid,
                                   std::span<const GaussianRational> sample_points) {
  require(grid >= 1, "coverage grid must be at least 1");
  const std::size_t dim = 2 * phi.dimension() * (d + 1);
  require(box.lower.size() == dim && box.upper.size() == dim, "coverage box has the wrong dimension");
  for (std::size_t k = 0; k < dim; ++k) require(box.lower[k] < box.upper[k], "coverage box is empty");

  CoverageReport report;
  report.samples = sample_points.size();
  report.total_cells = std::pow(static_cast<double>(grid), static_cast<double>(dim));

  std::vector<std::vector<double>> inside;
  std::set<std::vector<unsigned>> cells;
  for (const auto& z : sample_points) {
    const auto jet = phi.jet(z, d);
    std::vector<double> x(dim);
    for (std::size_t e = 0; e < jet.size(); ++e) {
      x[2 * e] = to_double(jet[e].real());
      x[2 * e + 1] = to_double(jet[e].imag());
    }
    bool in_box = true;
    std::vector<unsigned> cell(dim);
    for (std::size_t k = 0; k < dim && in_box; ++k) {
      if (!(x[k] >= box.lower[k] && x[k] <= box.upper[k])) {
        in_box = false;
        break;
      }
      const double u = (x[k] - box.lower[k]) / (box.upper[k] - box.lower[k]) * grid;
      cell[k] = std::min(grid - 1, static_cast<unsigned>(u));
    }
    if (!in_box) continue;
    cells.insert(std::move(cell));
    inside.push_back(std::move(x));
  }
  report.samples_in_box = inside.size();
  report.cells_hit = cells.size();
  report.fraction = static_cast<double>(report.cells_hit) / report.total_cells;

  if (!inside.empty() && report.total_cells <= 1e6) {
    double worst = 0.0;
    std::vector<unsigned> index(dim, 0);
    const auto total = static_cast<std::size_t>(report.total_cells);
    for (std::size_t cell = 0; cell < total; ++cell) {
      std::size_t rest = cell;
      for (std::size_t k = 0; k < dim; ++k) {
        index[k] = static_cast<unsigned>(rest % grid);
        rest /= grid;
      }
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& x : inside) {
        double dist = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
          const double width = (box.upper[k] - box.lower[k]) / grid;
          const double center = box.lower[k] + (index[k] + 0.5) * width;
          dist = std::max(dist, std::abs(x[k] - center));
        }
        nearest = std::min(nearest, dist);
      }
      worst = std::max(worst, nearest);
    }
    report.max_gap = worst;
  }
  return report;
}

}  // namespace nondegen::interp
