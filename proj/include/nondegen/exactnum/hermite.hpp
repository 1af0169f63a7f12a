#pragma once

#include <span>
#include <vector>

#include "nondegen/exactnum/linalg.hpp"
#include "nondegen/exactnum/unipoly.hpp"

namespace nondegen {

/// Jet (a_0, ..., a_d) prescribed at a point; a_k is the k-th derivative.
template <class S>
class JetVector {
 public:
  JetVector() : values_(1, S(0)) {}
  explicit JetVector(std::vector<S> values) : values_(std::move(values)) {
    require(!values_.empty(), "a jet needs at least one entry");
  }
  JetVector(std::initializer_list<S> values) : JetVector(std::vector<S>(values)) {}

  static JetVector zeros(unsigned order) { return JetVector(std::vector<S>(order + 1, S(0))); }
  /// (1, 0, ..., 0)
  static JetVector unit(unsigned order) {
    auto j = zeros(order);
    j.values_[0] = S(1);
    return j;
  }

  unsigned order() const { return static_cast<unsigned>(values_.size() - 1); }
  std::size_t size() const { return values_.size(); }
  const S& operator[](std::size_t k) const { return values_[k]; }
  S& operator[](std::size_t k) { return values_[k]; }
  std::span<const S> values() const { return values_; }

  bool is_zero() const {
    for (const auto& v : values_)
      if (!ScalarTraits<S>::is_zero(v)) return false;
    return true;
  }

  friend JetVector operator-(const JetVector& a, const JetVector& b) {
    require(a.size() == b.size(), "jet order mismatch");
    std::vector<S> out(a.values_);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= b.values_[k];
    return JetVector(std::move(out));
  }
  friend JetVector operator*(const S& c, const JetVector& a) {
    std::vector<S> out(a.values_);
    for (auto& v : out) v *= c;
    return JetVector(std::move(out));
  }
  friend bool operator==(const JetVector& a, const JetVector& b) { return a.values_ == b.values_; }

 private:
  std::vector<S> values_;
};

using ExactJet = JetVector<GaussianRational>;

template <class S>
JetVector<S> jet_of(const UniPoly<S>& p, const S& z, unsigned order) {
  return JetVector<S>(poly_jet(p, z, order));
}

template <class S>
struct HermiteSite {
  S point;
  JetVector<S> jet;
};

/// Minimal-degree polynomial matching every prescribed jet, by solving the
/// confluent Vandermonde system.
template <class S>
UniPoly<S> hermite_interpolate(std::span<const HermiteSite<S>> sites) {
  std::size_t conditions = 0;
  bool all_zero = true;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      require(!(sites[i].point == sites[j].point), "hermite_interpolate: duplicate site point");
    conditions += sites[i].jet.size();
    all_zero = all_zero && sites[i].jet.is_zero();
  }
  if (all_zero) return {};
  check_degree_cap(conditions - 1);

  const auto n = static_cast<Eigen::Index>(conditions);
  Matrix<S> a(n, n);
  Vector<S> b(n);
  a.setConstant(S(0));
  Eigen::Index row = 0;
  for (const auto& site : sites) {
    // powers z^0 .. z^(n-1)
    std::vector<S> powers(conditions, S(1));
    for (std::size_t j = 1; j < conditions; ++j) powers[j] = powers[j - 1] * site.point;
    for (std::size_t k = 0; k < site.jet.size(); ++k, ++row) {
      for (std::size_t j = k; j < conditions; ++j) {
        S entry = powers[j - k];
        for (std::size_t m = 0; m < k; ++m) entry *= S(static_cast<long long>(j - m));
        a(row, static_cast<Eigen::Index>(j)) = std::move(entry);
      }
      b(row) = site.jet[k];
    }
  }
  auto x = solve_square(a, b);
  if (!x) throw CertificateFailure("hermite_interpolate: confluent Vandermonde system is singular");
  return UniPoly<S>(std::vector<S>(x->data(), x->data() + x->size()));
}

template <class S>
UniPoly<S> hermite_interpolate(const std::vector<HermiteSite<S>>& sites) {
  return hermite_interpolate(std::span<const HermiteSite<S>>(sites));
}

}  // namespace nondegen
