#include <cmath>

#include "nondegen/interp/interp.hpp"

namespace nondegen::interp {

namespace {

// Stern's diatomic sequence.
std::uint64_t fusc(std::uint64_t n) {
  std::uint64_t a = 1;
  std::uint64_t b = 0;
  while (n > 0) {
    if (n & 1U) {
      b += a;
    } else {
      a += b;
    }
    n >>= 1U;
  }
  return b;
}

}  // namespace

Rational calkin_wilf(std::uint64_t k) {
  require(k >= 1, "Calkin-Wilf index starts at 1");
  return Rational(Integer(fusc(k)), Integer(fusc(k + 1)));
}

Rational enumerate_rational(std::uint64_t index) {
  require(index >= 1, "rational enumeration index starts at 1");
  if (index == 1) return Rational(0);
  const Rational q = calkin_wilf(index / 2);
  return index % 2 == 0 ? q : Rational(-q);
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  // w = floor((sqrt(8z + 1) - 1) / 2): float estimate, then exact correction
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
  while (static_cast<unsigned __int128>(w + 1) * (w + 2) / 2 <= z) ++w;
  while (static_cast<unsigned __int128>(w) * (w + 1) / 2 > z) --w;
  const std::uint64_t t = w * (w + 1) / 2;
  const std::uint64_t b = z - t;
  return {w - b, b};
}

std::vector<GaussianRational> enumerate_gaussian_rational(unsigned n, std::uint64_t index) {
  require(n >= 1, "tuple length must be at least 1");
  require(index >= 1, "enumeration index starts at 1");
  std::vector<GaussianRational> out;
  out.reserve(n);
  std::uint64_t rest = index;
  for (unsigned k = 0; k < n; ++k) {
    std::uint64_t here = rest;
    if (k + 1 < n) {
      const auto [a, b] = cantor_unpair(rest - 1);
      here = a + 1;
      rest = b + 1;
    }
    const auto [re, im] = cantor_unpair(here - 1);
    out.emplace_back(enumerate_rational(re + 1), enumerate_rational(im + 1));
  }
  return out;
}

}  // namespace nondegen::interp
