#include "nondegen/cli/job.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "nondegen/avoidance/avoidance.hpp"
#include "nondegen/densedisk/densedisk.hpp"
#include "nondegen/genpos/genpos.hpp"
#include "nondegen/interp/interp.hpp"

namespace nondegen::cli {

namespace {

// Object of named parameters with a fixed set of allowed keys.
class Params {
 public:
  Params(const Json& j, std::string scope, std::initializer_list<const char*> allowed) : j_(j), scope_(std::move(scope)) {
    require(j_.is_object(), scope_ + " must be an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j_.items())
      require(ok.count(key) > 0, scope_ + ": unknown field '" + key + "'");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const Json& at(const std::string& key) const {
    require(has(key), scope_ + ": missing field '" + key + "'");
    return j_.at(key);
  }

  std::string name(const std::string& key) const { return scope_ + "." + key; }

  Rational rational(const std::string& key) const { return rational_from_json(at(key), name(key)); }
  Rational rational(const std::string& key, const Rational& fallback) const {
    return has(key) ? rational(key) : fallback;
  }

  double real(const std::string& key) const { return double_from_json(at(key), name(key)); }
  double real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

  std::uint64_t natural(const std::string& key) const {
    const Json& v = at(key);
    require(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0),
            name(key) + " must be a nonnegative integer");
    return v.get<std::uint64_t>();
  }
  std::uint64_t natural(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? natural(key) : fallback;
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    require(at(key).is_boolean(), name(key) + " must be a boolean");
    return at(key).get<bool>();
  }

  const Json& array(const std::string& key) const {
    const Json& v = at(key);
    require(v.is_array(), name(key) + " must be an array");
    return v;
  }

 private:
  const Json& j_;
  std::string scope_;
};

unsigned to_unsigned(std::uint64_t v, const std::string& what) {
  require(v <= 1'000'000'000ULL, what + " is too large");
  return static_cast<unsigned>(v);
}

std::string item(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

std::vector<double> real_list(const Json& j, const std::string& what) {
  require(j.is_array(), what + " must be an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(double_from_json(j[i], item(what, i)));
  return out;
}

std::vector<std::complex<double>> complex_list(const Json& j, const std::string& what) {
  require(j.is_array(), what + " must be an array");
  std::vector<std::complex<double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_from_json(j[i], item(what, i)));
  return out;
}

std::vector<unsigned> schedule_list(const Json& j, const std::string& what) {
  require(j.is_array() && !j.empty(), what + " must be a nonempty array");
  std::vector<unsigned> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number_integer() && j[i].get<long long>() >= 1 && j[i].get<long long>() <= 64,
            item(what, i) + " must be an integer in [1, 64]");
    out.push_back(j[i].get<unsigned>());
  }
  return out;
}

Json complex_vector_json(std::span<const std::complex<double>> v) {
  Json out = Json::array();
  for (auto z : v) out.push_back(to_json(z));
  return out;
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------- interp

Json term_json(std::size_t n, const interp::InterpolantTerm& t) {
  return Json{{"n", n},
              {"radius", to_json(t.radius)},
              {"bound", to_json(t.bound)},
              {"budget", to_json(t.budget)},
              {"peak_exponent", t.peak_exponent},
              {"degree", t.product.degree()}};
}

Json certificate_json(const interp::InterpolantCertificate& c) {
  Json terms = Json::array();
  for (std::size_t n = 0; n < c.terms.size(); ++n) terms.push_back(term_json(n + 1, c.terms[n]));
  Json sites = Json::array();
  for (const auto& s : c.sites) sites.push_back(to_json(s));
  return Json{{"jet_order", c.jet_order},
              {"budget", to_json(c.budget)},
              {"n_max", c.n_max},
              {"guard_radius", to_json(c.guard_radius)},
              {"sites", sites},
              {"terms", terms},
              {"total_bound", to_json(c.total_bound)},
              {"interpolant_bound", to_json(c.interpolant_bound)},
              {"exact_jets", c.exact_jets},
              {"degree", c.interpolant.degree()},
              {"holds", c.holds()}};
}

Scatter circle_scatter(const ExactPoly& p, const Rational& radius, const std::string& title) {
  Scatter s;
  s.title = title;
  s.x_label = "Re";
  s.y_label = "Im";
  std::vector<std::complex<double>> c;
  for (const auto& a : p.coeffs()) c.push_back(a.to_complex());
  const FloatPoly fp(std::move(c));
  for (int j = 0; j < 256; ++j) {
    const auto z = std::polar(to_double(radius), 2.0 * std::numbers::pi * j / 256.0);
    const auto v = poly_eval(fp, z);
    s.x.push_back(v.real());
    s.y.push_back(v.imag());
  }
  return s;
}

JobOutput run_interpolate(const JobSpec& job) {
  const Params p(job.params, "params",
                 {"sites", "site_start", "guard_radius", "d", "eps", "jets", "n_max"});
  const unsigned d = to_unsigned(p.natural("d", 0), p.name("d"));
  const Rational eps = p.rational("eps");
  const Rational guard = p.rational("guard_radius", Rational(1));
  const Json& jets_json = p.array("jets");
  std::vector<ExactJet> jets;
  for (std::size_t i = 0; i < jets_json.size(); ++i) {
    const Json& row = jets_json[i];
    require(row.is_array() && row.size() == d + 1, item(p.name("jets"), i) + " must have d + 1 entries");
    std::vector<GaussianRational> v;
    for (std::size_t k = 0; k < row.size(); ++k) v.push_back(gaussian_from_json(row[k], item(item(p.name("jets"), i), k)));
    jets.emplace_back(std::move(v));
  }
  const std::size_t n_max = p.natural("n_max", jets.size());
  require(!(p.has("sites") && p.has("site_start")), "params: give either sites or site_start");
  std::vector<GaussianRational> sites;
  if (p.has("sites")) {
    const Json& s = p.array("sites");
    for (std::size_t i = 0; i < s.size(); ++i) sites.push_back(gaussian_from_json(s[i], item(p.name("sites"), i)));
  } else {
    const Json& start = p.has("site_start") ? p.at("site_start") : Json(2);
    require(start.is_number_integer(), p.name("site_start") + " must be an integer");
    for (std::size_t k = 0; k < jets.size(); ++k) sites.emplace_back(start.get<long long>() + static_cast<long long>(k));
  }
  const interp::SiteList site_list(std::move(sites), guard);
  const auto cert = interp::entire_interpolant(site_list, jets, d, eps, n_max);
  if (!cert.holds()) throw CertificateFailure("interpolant certificate does not verify");

  JobOutput out;
  out.result = certificate_json(cert);
  out.result["interpolant"] = to_json(cert.interpolant);
  out.csv.header = {"n", "site_re", "site_im", "radius", "bound", "budget", "peak_exponent", "degree"};
  for (std::size_t n = 0; n < cert.terms.size(); ++n) {
    const auto& t = cert.terms[n];
    out.csv.rows.push_back({std::to_string(n + 1), fmt(to_double(cert.sites[n].real())),
                            fmt(to_double(cert.sites[n].imag())), fmt(to_double(t.radius)), fmt(to_double(t.bound)),
                            fmt(to_double(t.budget)), std::to_string(t.peak_exponent),
                            std::to_string(t.product.degree())});
  }
  out.svg = circle_scatter(cert.interpolant, guard, "interpolant on the guard circle");
  return out;
}

JobOutput run_perturb(const JobSpec& job, unsigned threads) {
  const Params p(job.params, "params", {"f", "radius", "eps", "d", "m", "coverage"});
  const Json& f_json = p.array("f");
  std::vector<ExactPoly> f;
  for (std::size_t i = 0; i < f_json.size(); ++i) f.push_back(exact_poly_from_json(f_json[i], item(p.name("f"), i)));
  const interp::EntireMapTuple map(std::move(f));
  const Rational radius = p.rational("radius");
  const Rational eps = p.rational("eps");
  const unsigned d = to_unsigned(p.natural("d", 0), p.name("d"));
  const std::size_t m = p.natural("m");

  const auto result = interp::dense_perturbation(map, radius, eps, d, m, threads);
  for (const auto& c : result.certificates)
    if (!c.holds()) throw CertificateFailure("perturbation certificate does not verify");

  JobOutput out;
  Json components = Json::array();
  for (const auto& c : result.map.components()) components.push_back(to_json(c));
  Json certs = Json::array();
  for (const auto& c : result.certificates) certs.push_back(certificate_json(c));
  Json targets = Json::array();
  for (const auto& t : result.targets) {
    Json row = Json::array();
    for (const auto& v : t) row.push_back(to_json(v));
    targets.push_back(std::move(row));
  }
  Json sites = Json::array();
  for (const auto& s : result.sites) sites.push_back(to_json(s));
  out.result = Json{{"map", components}, {"certificates", certs}, {"targets", targets}, {"sites", sites}};

  if (p.has("coverage")) {
    const Params c(p.at("coverage"), p.name("coverage"), {"lower", "upper", "grid", "samples"});
    interp::CoverageBox box{real_list(c.at("lower"), c.name("lower")), real_list(c.at("upper"), c.name("upper"))};
    const unsigned grid = to_unsigned(c.natural("grid", 2), c.name("grid"));
    const std::size_t extra = c.natural("samples", 0);
    std::vector<GaussianRational> points(result.sites.begin(), result.sites.end());
    long long span = 2;
    for (const auto& s : result.sites) span = std::max(span, static_cast<long long>(to_double(abs_upper(s))) + 1);
    std::mt19937_64 rng(job.seed);
    for (std::size_t k = 0; k < extra; ++k) {
      const auto coord = [&] {
        const long long num = static_cast<long long>(rng() % static_cast<std::uint64_t>(32 * span + 1)) - 16 * span;
        return Rational(num, 16);
      };
      Rational re = coord();
      Rational im = coord();
      points.emplace_back(std::move(re), std::move(im));
    }
    const auto report = interp::jet_coverage_report(result.map, d, box, grid, points);
    out.result["coverage"] = Json{{"samples", report.samples},
                                  {"samples_in_box", report.samples_in_box},
                                  {"cells_hit", report.cells_hit},
                                  {"total_cells", report.total_cells},
                                  {"fraction", report.fraction},
                                  {"max_gap", report.max_gap ? Json(*report.max_gap) : Json(nullptr)}};
  }

  const std::size_t n = result.map.dimension();
  out.csv.header = {"index", "site_re", "site_im"};
  for (unsigned k = 0; k <= d; ++k)
    for (std::size_t c = 0; c < n; ++c) {
      const std::string tag = "f" + std::to_string(c + 1) + "_d" + std::to_string(k);
      out.csv.header.push_back(tag + "_re");
      out.csv.header.push_back(tag + "_im");
    }
  for (std::size_t j = 0; j < result.sites.size(); ++j) {
    std::vector<std::string> row{std::to_string(j + 1), fmt(to_double(result.sites[j].real())),
                                 fmt(to_double(result.sites[j].imag()))};
    for (const auto& v : result.targets[j]) {
      row.push_back(fmt(to_double(v.real())));
      row.push_back(fmt(to_double(v.imag())));
    }
    out.csv.rows.push_back(std::move(row));
    out.svg.x.push_back(to_double(result.targets[j][0].real()));
    out.svg.y.push_back(to_double(result.targets[j][0].imag()));
  }
  out.svg.title = "prescribed values of the first component at the sites";
  out.svg.x_label = "Re";
  out.svg.y_label = "Im";
  return out;
}

// ---------------------------------------------------------------- densedisk

densedisk::FrequencyVector frequencies_or_standard(const Params& p, std::size_t count) {
  if (!p.has("frequencies")) return densedisk::FrequencyVector::standard(count);
  return densedisk::FrequencyVector(real_list(p.at("frequencies"), p.name("frequencies")));
}

densedisk::PreimageBudget preimage_budget(const Params& p) {
  densedisk::PreimageBudget b;
  b.t_max = p.real("t_max", b.t_max);
  if (p.has("tau")) {
    const Params t(p.at("tau"), p.name("tau"), {"lower", "upper", "scan_points"});
    b.tau.lower = t.real("lower", b.tau.lower);
    b.tau.upper = t.real("upper", b.tau.upper);
    b.tau.scan_points = t.natural("scan_points", b.tau.scan_points);
  }
  return b;
}

JobOutput run_densedisk_eval(const JobSpec& job) {
  const Params p(job.params, "params", {"points", "map", "frequencies"});
  const std::string mode = p.has("map") ? p.at("map").get<std::string>() : "explicit";
  require(mode == "explicit" || mode == "composed", p.name("map") + " must be \"explicit\" or \"composed\"");
  require(mode == "composed" || !p.has("frequencies"), "frequencies apply to the composed map only");
  const auto points = complex_list(p.array("points"), p.name("points"));
  const auto lambda = frequencies_or_standard(p, 4);

  JobOutput out;
  Json images = Json::array();
  out.csv.header = {"w_re", "w_im"};
  for (std::size_t k = 0; k < lambda.size() / 2; ++k) {
    out.csv.header.push_back("v" + std::to_string(k + 1) + "_re");
    out.csv.header.push_back("v" + std::to_string(k + 1) + "_im");
  }
  for (auto w : points) {
    const densedisk::DiskPoint dw(w);
    const auto v = mode == "explicit" ? densedisk::explicit_dense_map(dw) : densedisk::composed_dense_map(dw, lambda);
    images.push_back(complex_vector_json(v.components()));
    std::vector<std::string> row{fmt(w.real()), fmt(w.imag())};
    for (auto c : v.components()) {
      row.push_back(fmt(c.real()));
      row.push_back(fmt(c.imag()));
    }
    out.csv.rows.push_back(std::move(row));
    out.svg.x.push_back(v[0].real());
    out.svg.y.push_back(v[0].imag());
  }
  if (mode == "explicit") out.csv.header.resize(6);
  out.result = Json{{"map", mode}, {"images", images}};
  if (mode == "composed") out.result["frequencies"] = std::vector<double>(lambda.values().begin(), lambda.values().end());
  out.svg.title = "first image component";
  out.svg.x_label = "Re";
  out.svg.y_label = "Im";
  return out;
}

JobOutput run_densedisk_preimage(const JobSpec& job) {
  const Params p(job.params, "params", {"target", "frequencies", "eps", "t_max", "tau"});
  const auto target = complex_list(p.array("target"), p.name("target"));
  const auto lambda = frequencies_or_standard(p, 2 * target.size());
  const double eps = p.real("eps");
  const auto pre = densedisk::find_preimage(densedisk::PolydiskPoint(target), lambda, eps, preimage_budget(p));
  const auto image = densedisk::pair_average(densedisk::torus_map(densedisk::HalfPlanePoint(pre.z), lambda));

  JobOutput out;
  out.result = Json{{"z", to_json(pre.z)},   {"tau", pre.tau},     {"t", pre.t},
                    {"delta", pre.delta},    {"error", pre.error}, {"image", complex_vector_json(image.components())},
                    {"eps", eps},            {"frequencies", std::vector<double>(lambda.values().begin(), lambda.values().end())}};
  out.csv.header = {"component", "target_re", "target_im", "image_re", "image_im"};
  for (std::size_t k = 0; k < target.size(); ++k) {
    out.csv.rows.push_back({std::to_string(k + 1), fmt(target[k].real()), fmt(target[k].imag()), fmt(image[k].real()),
                            fmt(image[k].imag())});
    out.svg.x.push_back(target[k].real());
    out.svg.y.push_back(target[k].imag());
    out.svg.x.push_back(image[k].real());
    out.svg.y.push_back(image[k].imag());
  }
  out.svg.title = "targets and preimage images";
  return out;
}

JobOutput run_densedisk_certify(const JobSpec& job, unsigned threads) {
  const Params p(job.params, "params", {"n", "frequencies", "eps", "grid", "t_max", "tau"});
  const std::size_t n = p.natural("n", 1);
  require(n >= 1, p.name("n") + " must be at least 1");
  const auto lambda = frequencies_or_standard(p, 2 * n);
  require(lambda.size() == 2 * n, "need 2n frequencies");
  const auto report =
      densedisk::density_certify(lambda, p.real("eps"), p.natural("grid", 5), preimage_budget(p), threads);

  JobOutput out;
  Json outcomes = Json::array();
  out.csv.header = {"index", "success", "budget_exhausted", "error", "z_re", "z_im"};
  for (std::size_t k = 0; k < report.dimension; ++k) {
    out.csv.header.push_back("w" + std::to_string(k + 1) + "_re");
    out.csv.header.push_back("w" + std::to_string(k + 1) + "_im");
  }
  for (std::size_t i = 0; i < report.outcomes.size(); ++i) {
    const auto& o = report.outcomes[i];
    outcomes.push_back(Json{{"target", complex_vector_json(o.target)},
                            {"success", o.success},
                            {"budget_exhausted", o.budget_exhausted},
                            {"error", o.error},
                            {"z", o.success ? to_json(o.z) : Json(nullptr)}});
    std::vector<std::string> row{std::to_string(i + 1), o.success ? "1" : "0", o.budget_exhausted ? "1" : "0",
                                 fmt(o.error), fmt(o.z.real()), fmt(o.z.imag())};
    for (auto w : o.target) {
      row.push_back(fmt(w.real()));
      row.push_back(fmt(w.imag()));
    }
    out.csv.rows.push_back(std::move(row));
    if (o.success) {
      out.svg.x.push_back(o.z.real());
      out.svg.y.push_back(o.z.imag());
    }
  }
  out.result = Json{{"dimension", report.dimension},
                    {"frequencies", std::vector<double>(lambda.values().begin(), lambda.values().end())},
                    {"targets", report.targets},
                    {"successes", report.successes},
                    {"budget_failures", report.budget_failures},
                    {"other_failures", report.other_failures},
                    {"success_fraction", report.success_fraction},
                    {"max_error", report.max_error},
                    {"outcomes", outcomes}};
  out.svg.title = "preimages in the upper half plane";
  out.svg.x_label = "Re z";
  out.svg.y_label = "Im z";
  return out;
}

// ---------------------------------------------------------------- avoidance

avoidance::AffineSubspaceSet subspace_set(const Params& p) {
  const std::size_t n = p.natural("dimension");
  const Json& comps = p.array("components");
  std::vector<avoidance::AffineSubspace> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string where = item(p.name("components"), i);
    const Params c(comps[i], where, {"M", "b", "point"});
    if (c.has("point")) {
      require(!c.has("M") && !c.has("b"), where + ": give either point or M and b");
      const Json& pt = c.array("point");
      std::vector<Rational> coords;
      for (std::size_t k = 0; k < pt.size(); ++k) coords.push_back(rational_from_json(pt[k], item(c.name("point"), k)));
      out.push_back(avoidance::AffineSubspace::point(std::move(coords)));
      continue;
    }
    const Json& M = c.array("M");
    const Json& b = c.array("b");
    require(M.size() == b.size(), where + ": M and b have different row counts");
    RationalMatrix m(static_cast<Eigen::Index>(M.size()), static_cast<Eigen::Index>(n));
    RationalVector rhs(static_cast<Eigen::Index>(b.size()));
    for (std::size_t r = 0; r < M.size(); ++r) {
      require(M[r].is_array() && M[r].size() == n, item(c.name("M"), r) + " must have `dimension` entries");
      for (std::size_t k = 0; k < n; ++k)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = rational_from_json(M[r][k], item(item(c.name("M"), r), k));
      rhs(static_cast<Eigen::Index>(r)) = rational_from_json(b[r], item(c.name("b"), r));
    }
    out.emplace_back(std::move(m), std::move(rhs));
  }
  return avoidance::AffineSubspaceSet(n, std::move(out));
}

Json poly_map_json(const avoidance::RationalPolyMap& F) {
  Json out = Json::array();
  for (const auto& f : F) out.push_back(to_json(f));
  return out;
}

Json construction_json(const avoidance::AvoidanceConstruction& built) {
  Json shears = Json::array();
  for (const auto& s : built.shears)
    shears.push_back(Json{{"axis", s.axis + 1}, {"P", to_json(s.P)}, {"degree", s.P.total_degree()}});
  Json change = nullptr;
  if (built.change)
    change = Json{{"U", to_json(built.change->U)},
                  {"U_inverse", to_json(built.change->U_inverse)},
                  {"attempts", built.change->attempts}};
  return Json{{"F", poly_map_json(built.map.F)},
              {"normalized_F", poly_map_json(built.normalized_map.F)},
              {"shears", shears},
              {"coordinate_change", change}};
}

void avoidance_samples(const avoidance::RationalPolyMap& F, JobOutput& out) {
  const std::size_t n = F.size();
  out.csv.header.clear();
  for (std::size_t k = 0; k < n; ++k) out.csv.header.push_back("t" + std::to_string(k + 1));
  for (std::size_t k = 0; k < n; ++k) out.csv.header.push_back("F" + std::to_string(k + 1));
  // F on the integer grid [-3, 3]^n, evaluated exactly
  std::vector<int> t(n, -3);
  for (;;) {
    std::vector<Rational> point(t.begin(), t.end());
    std::vector<std::string> row;
    for (int v : t) row.push_back(std::to_string(v));
    std::vector<double> image;
    for (const auto& f : F) {
      const Rational v = f.eval(std::span<const Rational>(point));
      row.push_back(to_string(v));
      image.push_back(to_double(v));
    }
    out.csv.rows.push_back(std::move(row));
    out.svg.x.push_back(image[0]);
    out.svg.y.push_back(n > 1 ? image[1] : 0.0);
    std::size_t k = 0;
    while (k < n && ++t[k] > 3) t[k++] = -3;
    if (k == n) break;
  }
  out.svg.title = "F on the integer grid [-3, 3]^n";
  out.svg.x_label = "F1";
  out.svg.y_label = "F2";
}

JobOutput run_avoid_build(const JobSpec& job) {
  const Params p(job.params, "params", {"dimension", "components"});
  const auto z = subspace_set(p);
  const auto built = avoidance::build_avoidance_map(z, job.seed);
  JobOutput out;
  out.result = construction_json(built);
  avoidance_samples(built.map.F, out);
  return out;
}

JobOutput run_avoid_check(const JobSpec& job) {
  const Params p(job.params, "params", {"dimension", "components", "samples"});
  const auto z = subspace_set(p);
  const auto built = avoidance::build_avoidance_map(z, job.seed);
  const auto cert = avoidance::certify_avoidance_or_throw(built, z, p.natural("samples", 10000), job.seed);
  JobOutput out;
  out.result = construction_json(built);
  out.result["certificate"] = Json{{"shears_fix_z", cert.shears_fix_z},
                                   {"axes_fixed", cert.axes_fixed},
                                   {"change_consistent", cert.change_consistent},
                                   {"jacobian_rank", cert.jacobian_rank},
                                   {"jacobian_at_origin", to_json(avoidance::jacobian_at_origin(built.map.F))},
                                   {"degree_bound", cert.degree_bound},
                                   {"samples", cert.samples},
                                   {"sample_failures", cert.sample_failures},
                                   {"holds", cert.holds(z.dimension())}};
  avoidance_samples(built.map.F, out);
  return out;
}

// ---------------------------------------------------------------- genpos

Json certificate_json(const genpos::GenericPositionCertificate& c) {
  Json degrees = Json::array();
  for (const auto& d : c.degrees) {
    Json entry{{"degree", d.degree},
               {"monomials", d.monomials},
               {"subset_size", d.subset_size},
               {"subsets_checked", d.subsets_checked},
               {"exhaustive", d.exhaustive},
               {"worst_rank", d.worst_rank},
               {"worst_subset", d.worst_subset},
               {"witness", d.witness ? Json(*d.witness) : Json(nullptr)},
               {"incidence_bound", d.incidence_bound},
               {"prefix_bound", d.prefix_bound},
               {"passed", d.passed}};
    if (!c.exact) entry["worst_relative_sigma"] = d.worst_relative_sigma;
    degrees.push_back(std::move(entry));
  }
  return Json{{"verdict", c.verdict()}, {"exact", c.exact}, {"schedule", c.schedule}, {"degrees", degrees}};
}

void point_table(const genpos::GammaSet& g, JobOutput& out) {
  out.csv.header = {"index"};
  for (unsigned k = 0; k < g.dimension; ++k) out.csv.header.push_back("x" + std::to_string(k + 1));
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<std::string> row{std::to_string(i + 1)};
    std::vector<double> x;
    for (unsigned k = 0; k < g.dimension; ++k) {
      if (g.exact()) {
        row.push_back(to_string(g.rational_points[i][k]));
        x.push_back(to_double(g.rational_points[i][k]));
      } else {
        row.push_back(fmt(g.points[i][k]));
        x.push_back(g.points[i][k]);
      }
    }
    out.csv.rows.push_back(std::move(row));
    out.svg.x.push_back(x[0]);
    out.svg.y.push_back(g.dimension > 1 ? x[1] : 0.0);
  }
  out.svg.x_label = "x1";
  out.svg.y_label = "x2";
}

Json points_json(const genpos::GammaSet& g) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    Json row = Json::array();
    for (unsigned k = 0; k < g.dimension; ++k) {
      if (g.exact())
        row.push_back(to_json(g.rational_points[i][k]));
      else
        row.push_back(g.points[i][k]);
    }
    pts.push_back(std::move(row));
  }
  return pts;
}

JobOutput run_genpos_analytic(const JobSpec& job) {
  const Params p(job.params, "params", {"m", "dimension", "frequencies", "parameters", "schedule"});
  const unsigned d = to_unsigned(p.natural("dimension", 2), p.name("dimension"));
  genpos::SphereCurveConfig cfg = genpos::SphereCurveConfig::standard(d);
  if (p.has("frequencies")) cfg.frequencies = real_list(p.at("frequencies"), p.name("frequencies"));
  require(!(p.has("m") && p.has("parameters")), "params: give either m or parameters");
  const auto gamma = p.has("parameters")
                         ? genpos::analytic_gamma_set(real_list(p.at("parameters"), p.name("parameters")), cfg)
                         : genpos::analytic_gamma_set(p.natural("m"), cfg);
  JobOutput out;
  std::vector<double> norms;
  for (const auto& x : gamma.points) {
    double s = 0.0;
    for (double v : x) s += v * v;
    norms.push_back(std::sqrt(s));
  }
  out.result = Json{{"dimension", d},
                    {"frequencies", cfg.frequencies},
                    {"parameters", gamma.parameters},
                    {"points", points_json(gamma)},
                    {"norms", norms}};
  if (p.has("schedule")) {
    const auto schedule = schedule_list(p.at("schedule"), p.name("schedule"));
    out.result["certificate"] = certificate_json(genpos::certify_generic_position(gamma, schedule, job.seed));
  }
  point_table(gamma, out);
  out.svg.title = "analytic points";
  return out;
}

JobOutput run_genpos_rational(const JobSpec& job) {
  const Params p(job.params, "params", {"dimension", "schedule", "m", "max_draws", "initial_bits"});
  const unsigned d = to_unsigned(p.natural("dimension", 2), p.name("dimension"));
  const auto schedule = schedule_list(p.at("schedule"), p.name("schedule"));
  genpos::GreedyBudget budget;
  budget.max_draws = p.natural("max_draws", budget.max_draws);
  budget.initial_bits = to_unsigned(p.natural("initial_bits", budget.initial_bits), p.name("initial_bits"));
  const auto gamma = genpos::greedy_rational_gamma(d, schedule, p.natural("m"), job.seed, budget);
  const auto cert = genpos::certify_generic_position(gamma, schedule, job.seed);
  if (!cert.certified()) throw CertificateFailure("greedy point set failed its own certificate");
  JobOutput out;
  out.result = Json{{"dimension", d},
                    {"schedule", schedule},
                    {"points", points_json(gamma)},
                    {"draws", gamma.draws},
                    {"final_bits", gamma.final_bits},
                    {"certificate", certificate_json(cert)}};
  point_table(gamma, out);
  out.svg.title = "greedy rational points";
  return out;
}

JobOutput run_genpos_certify(const JobSpec& job) {
  const Params p(job.params, "params", {"dimension", "points", "exact", "schedule"});
  const unsigned d = to_unsigned(p.natural("dimension"), p.name("dimension"));
  const Json& pts = p.array("points");
  bool all_exact_literals = true;
  for (const auto& row : pts) {
    require(row.is_array() && row.size() == d, p.name("points") + " rows must have `dimension` entries");
    for (const auto& v : row) all_exact_literals = all_exact_literals && (v.is_string() || v.is_number_integer());
  }
  const bool exact = p.flag("exact", all_exact_literals);
  genpos::GammaSet gamma;
  gamma.dimension = d;
  gamma.provenance = exact ? genpos::Provenance::greedy : genpos::Provenance::analytic;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (exact) {
      genpos::RationalPoint x;
      for (std::size_t k = 0; k < d; ++k) x.push_back(rational_from_json(pts[i][k], item(item(p.name("points"), i), k)));
      gamma.rational_points.push_back(std::move(x));
    } else {
      genpos::RealPoint x;
      for (std::size_t k = 0; k < d; ++k) x.push_back(double_from_json(pts[i][k], item(item(p.name("points"), i), k)));
      gamma.points.push_back(std::move(x));
    }
  }
  const auto schedule = schedule_list(p.at("schedule"), p.name("schedule"));
  JobOutput out;
  out.result = Json{{"dimension", d}, {"certificate", certificate_json(genpos::certify_generic_position(gamma, schedule, job.seed))}};
  point_table(gamma, out);
  out.svg.title = "certified points";
  return out;
}

using Handler = std::function<JobOutput(const JobSpec&, unsigned)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"interpolate", [](const JobSpec& j, unsigned) { return run_interpolate(j); }},
      {"perturb", run_perturb},
      {"densedisk-eval", [](const JobSpec& j, unsigned) { return run_densedisk_eval(j); }},
      {"densedisk-preimage", [](const JobSpec& j, unsigned) { return run_densedisk_preimage(j); }},
      {"densedisk-certify", run_densedisk_certify},
      {"avoid-build", [](const JobSpec& j, unsigned) { return run_avoid_build(j); }},
      {"avoid-check", [](const JobSpec& j, unsigned) { return run_avoid_check(j); }},
      {"genpos-analytic", [](const JobSpec& j, unsigned) { return run_genpos_analytic(j); }},
      {"genpos-rational", [](const JobSpec& j, unsigned) { return run_genpos_rational(j); }},
      {"genpos-certify", [](const JobSpec& j, unsigned) { return run_genpos_certify(j); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, h] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

JobSpec parse_job(const Json& j) {
  const Params top(j, "job", {"command", "seed", "params", "outputs"});
  JobSpec job;
  if (top.has("command")) {
    require(top.at("command").is_string(), "job.command must be a string");
    job.command = top.at("command").get<std::string>();
  }
  job.seed = top.natural("seed", 0);
  if (top.has("params")) {
    require(top.at("params").is_object(), "job.params must be an object");
    job.params = top.at("params");
  }
  if (top.has("outputs")) {
    const Params o(top.at("outputs"), "job.outputs", {"result", "csv", "svg"});
    auto path = [&o](const char* key) -> std::optional<std::string> {
      if (!o.has(key)) return std::nullopt;
      require(o.at(key).is_string() && !o.at(key).get<std::string>().empty(), o.name(key) + " must be a path");
      return o.at(key).get<std::string>();
    };
    job.outputs = {path("result"), path("csv"), path("svg")};
  }
  return job;
}

JobSpec parse_job_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw PreconditionError(std::string("malformed job JSON: ") + e.what());
  }
  return parse_job(j);
}

JobOutput execute(const JobSpec& job, unsigned threads) {
  const auto it = handlers().find(job.command);
  require(it != handlers().end(), "unknown command '" + job.command + "'");
  try {
    return it->second(job, std::max(1U, threads));
  } catch (const Json::exception& e) {
    // type errors inside parameter records
    throw PreconditionError(std::string("invalid parameter: ") + e.what());
  }
}

Json result_document(const JobSpec& job, const Json& result) {
  return Json{{"schema", kSchemaVersion}, {"command", job.command}, {"seed", job.seed}, {"result", result}};
}

std::string dump_document(const Json& doc) { return doc.dump(2) + "\n"; }

int run(const RunRequest& request, std::ostream& err) {
  try {
    std::ifstream in(request.job_file, std::ios::binary);
    require(static_cast<bool>(in), "cannot read job file " + request.job_file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    JobSpec job = parse_job_text(buffer.str());
    if (job.command.empty()) job.command = request.command;
    require(job.command == request.command,
            "job file is for '" + job.command + "' but the command line asks for '" + request.command + "'");
    if (request.seed) job.seed = *request.seed;

    const JobOutput out = execute(job, request.threads);
    const auto result_path = request.out_dir / job.outputs.result.value_or(job.command + ".json");
    write_atomic(result_path, dump_document(result_document(job, out.result)));
    if (job.outputs.csv) {
      require(!out.csv.empty(), "command '" + job.command + "' has no CSV output");
      write_atomic(request.out_dir / *job.outputs.csv, render_csv(out.csv));
    }
    if (job.outputs.svg) {
      Scatter plot = out.svg;
      if (plot.title.empty()) plot.title = job.command;
      write_atomic(request.out_dir / *job.outputs.svg, render_svg(plot));
    }
    return kExitOk;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const CertificateFailure& e) {
    err << "certificate failure: " << e.what() << '\n';
    return kExitCertificate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace nondegen::cli
