#include <algorithm>

#include "nondegen/interp/interp.hpp"

namespace nondegen::interp {

SiteList::SiteList(std::vector<GaussianRational> sites, Rational guard_radius)
    : sites_(std::move(sites)), guard_radius_(std::move(guard_radius)) {
  require(guard_radius_ > 0, "guard radius must be positive");
  const Rational guard_sq = guard_radius_ * guard_radius_;
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    require(sites_[i].norm() > guard_sq, "every site must lie outside the guard radius");
    if (i > 0) {
      require(sites_[i].norm() >= sites_[i - 1].norm(), "site moduli must be nondecreasing");
      for (std::size_t j = 0; j < i; ++j) require(sites_[i] != sites_[j], "sites must be pairwise distinct");
    }
  }
}

SiteList SiteList::integers(long long first, std::size_t count, Rational guard_radius) {
  std::vector<GaussianRational> sites;
  sites.reserve(count);
  for (std::size_t k = 0; k < count; ++k) sites.emplace_back(first + static_cast<long long>(k));
  return SiteList(std::move(sites), std::move(guard_radius));
}

std::vector<Rational> radius_schedule(const SiteList& sites, std::size_t count) {
  require(count <= sites.size(), "radius schedule longer than the site list");
  std::vector<Rational> radii;
  radii.reserve(count);
  const Rational& r = sites.guard_radius();
  Rational previous = r;
  for (std::size_t n = 0; n < count; ++n) {
    const Rational modulus = abs_lower(sites[n]);
    if (!(modulus > previous)) throw CertificateFailure("radius schedule: site modulus not separated");
    Rational next = std::max<Rational>((r + modulus) / 2, previous + (modulus - previous) / 4);
    radii.push_back(next);
    previous = std::move(next);
  }
  return radii;
}

InterpolantCertificate entire_interpolant(const SiteList& sites, std::span<const ExactJet> jets, unsigned d,
                                          const Rational& eps, std::size_t n_max) {
  require(eps > 0, "interpolant budget must be positive");
  require(jets.size() >= n_max, "fewer jets than requested sites");
  require(sites.size() >= n_max, "fewer sites than requested");
  for (std::size_t j = 0; j < n_max; ++j) require(jets[j].order() == d, "jet order does not match d");

  InterpolantCertificate cert;
  cert.jet_order = d;
  cert.budget = eps;
  cert.n_max = n_max;
  cert.guard_radius = sites.guard_radius();
  cert.sites.assign(sites.sites().begin(), sites.sites().begin() + static_cast<long>(n_max));

  const auto radii = radius_schedule(sites, n_max);
  ExactPoly& f = cert.interpolant;
  std::vector<HermiteSite<GaussianRational>> hermite_sites;
  Rational term_budget = eps;
  for (std::size_t n = 0; n < n_max; ++n) {
    term_budget /= 2;
    const GaussianRational& gamma = sites[n];
    InterpolantTerm term;
    term.radius = radii[n];
    term.budget = term_budget;

    const ExactJet correction = jets[n] - jet_of(f, gamma, d);
    hermite_sites.push_back({gamma, correction});
    if (!correction.is_zero()) {
      // Q_n: zero d-jets at the earlier sites, the missing jet at gamma_n.
      const ExactPoly q = hermite_interpolate(hermite_sites);
      const Rational delta = term_budget / sup_norm_bound(q, term.radius);
      const JetPeak peak = jet_peak_construct(gamma, term.radius, delta, ExactJet::unit(d));
      term.peak_exponent = peak.stages.front().peak_exponent;
      term.product = peak.poly * q;
      term.bound = sup_norm_bound(term.product, term.radius);
      if (!(term.bound < term.budget))
        throw CertificateFailure("entire_interpolant: term " + std::to_string(n + 1) + " exceeded its budget");
      f += term.product;
    }
    hermite_sites.back().jet = ExactJet::zeros(d);
    cert.total_bound += term.bound;
    cert.terms.push_back(std::move(term));
  }

  cert.interpolant_bound = sup_norm_bound(f, cert.guard_radius);
  cert.exact_jets.reserve(n_max);
  for (std::size_t j = 0; j < n_max; ++j) cert.exact_jets.push_back(jet_of(f, sites[j], d) == jets[j]);
  return cert;
}

bool InterpolantCertificate::holds() const {
  if (terms.size() != n_max || exact_jets.size() != n_max) return false;
  ExactPoly sum;
  Rational total(0);
  Rational term_budget = budget;
  Rational previous_radius = guard_radius;
  for (std::size_t n = 0; n < terms.size(); ++n) {
    const auto& t = terms[n];
    term_budget /= 2;
    if (t.budget != term_budget) return false;
    if (!(t.radius > previous_radius)) return false;
    if (!(t.radius * t.radius < sites[n].norm())) return false;
    if (sup_norm_bound(t.product, t.radius) != t.bound) return false;
    if (!(t.bound < t.budget)) return false;
    previous_radius = t.radius;
    total += t.bound;
    sum += t.product;
  }
  if (sum != interpolant || total != total_bound) return false;
  if (!(total_bound < budget)) return false;
  if (!(interpolant_bound <= total_bound)) return false;
  return std::all_of(exact_jets.begin(), exact_jets.end(), [](bool b) { return b; });
}

}  // namespace nondegen::interp
