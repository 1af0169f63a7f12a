#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "nondegen/core/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<nondegen::GaussianRational> : GenericNumTraits<nondegen::GaussianRational> {
  using Real = nondegen::Rational;
  using NonInteger = nondegen::GaussianRational;
  using Literal = nondegen::GaussianRational;
  using Nested = nondegen::GaussianRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
};

}  // namespace Eigen

namespace nondegen {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

}  // namespace nondegen
