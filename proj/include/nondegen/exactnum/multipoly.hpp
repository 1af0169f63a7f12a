#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "nondegen/exactnum/unipoly.hpp"

namespace nondegen {

using Exponent = std::vector<unsigned>;

/// Sparse multivariate polynomial. No zero coefficient is ever stored and
/// the variable count is fixed at construction.
template <class S>
class MultiPoly {
 public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;
  using TermMap = std::map<Exponent, S>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t variables) : variables_(variables) {}

  static MultiPoly constant(std::size_t variables, S c) {
    MultiPoly p(variables);
    p.add_term(Exponent(variables, 0U), std::move(c));
    return p;
  }

  static MultiPoly variable(std::size_t variables, std::size_t index) {
    require(index < variables, "variable index out of range");
    MultiPoly p(variables);
    Exponent e(variables, 0U);
    e[index] = 1;
    p.add_term(std::move(e), S(1));
    return p;
  }

  std::size_t variables() const { return variables_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  long total_degree() const {
    long best = -1;
    for (const auto& [e, c] : terms_) {
      long deg = 0;
      for (auto x : e) deg += x;
      best = std::max(best, deg);
    }
    return best;
  }

  S coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(Exponent e, S c) {
    require(e.size() == variables_, "exponent length does not match variable count");
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  template <class T>
  MultiPoly<T> cast() const {
    MultiPoly<T> out(variables_);
    for (const auto& [e, c] : terms_) out.add_term(e, T(c));
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& other) {
    require(other.variables_ == variables_, "variable count mismatch");
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& other) {
    require(other.variables_ == variables_, "variable count mismatch");
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const S& c) {
    if (Traits::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const S& c) { return a *= c; }
  friend MultiPoly operator*(const S& c, MultiPoly a) { return a *= c; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    require(a.variables_ == b.variables_, "variable count mismatch");
    MultiPoly out(a.variables_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(ea);
        std::size_t deg = 0;
        for (std::size_t k = 0; k < e.size(); ++k) {
          e[k] += eb[k];
          deg += e[k];
        }
        check_degree_cap(deg);
        out.add_term(std::move(e), ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
  }

  /// Value at a point; the point type may differ from S (e.g. exact
  /// coefficients evaluated at floats).
  template <class T>
  T eval(std::span<const T> point) const {
    require(point.size() == variables_, "evaluation point has wrong dimension");
    T total(0);
    for (const auto& [e, c] : terms_) {
      T term = T(c);
      for (std::size_t k = 0; k < e.size(); ++k)
        for (unsigned m = 0; m < e[k]; ++m) term *= point[k];
      total += term;
    }
    return total;
  }

  template <class T>
  T eval(const std::vector<T>& point) const {
    return eval(std::span<const T>(point));
  }

  /// Substitutes polynomial `args[k]` for variable k.
  template <class Poly>
  Poly compose(const std::vector<Poly>& args, const Poly& one) const {
    require(args.size() == variables_, "composition arity mismatch");
    // Cache powers per variable.
    std::vector<std::vector<Poly>> powers(variables_);
    for (std::size_t k = 0; k < variables_; ++k) powers[k].push_back(one);
    Poly total = one * S(0);
    for (const auto& [e, c] : terms_) {
      Poly term = one * c;
      for (std::size_t k = 0; k < e.size(); ++k) {
        while (powers[k].size() <= e[k]) powers[k].push_back(powers[k].back() * args[k]);
        if (e[k] > 0) term = term * powers[k][e[k]];
      }
      total += term;
    }
    return total;
  }

  MultiPoly compose(const std::vector<MultiPoly>& args) const {
    require(!args.empty() || variables_ == 0, "composition needs arguments");
    const std::size_t target_vars = args.empty() ? 0 : args.front().variables();
    return compose(args, MultiPoly::constant(target_vars, S(1)));
  }

  /// Univariate restriction t -> P(args_1(t), ..., args_n(t)).
  UniPoly<S> compose(const std::vector<UniPoly<S>>& args) const {
    return compose(args, UniPoly<S>::constant(S(1)));
  }

 private:
  std::size_t variables_ = 0;
  TermMap terms_;
};

/// Polynomial map given by its component polynomials.
template <class S>
using PolyMap = std::vector<MultiPoly<S>>;

}  // namespace nondegen
