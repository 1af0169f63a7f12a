#include "nondegen/core/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include <mpfr.h>

#include "nondegen/core/errors.hpp"

namespace nondegen {

namespace {

constexpr mpfr_prec_t kBoundPrecision = 256;

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational ten_pow(long exponent) {
  Integer p = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(exponent)));
  return exponent >= 0 ? Rational(p) : Rational(Integer(1), p);
}

// RAII wrapper for one MPFR value.
class MpfrValue {
 public:
  MpfrValue() { mpfr_init2(value_, kBoundPrecision); }
  ~MpfrValue() { mpfr_clear(value_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

Rational mpfr_to_rational(mpfr_ptr x) {
  Rational out;
  mpfr_get_q(out.backend().data(), x);
  return out;
}

bool exact_sqrt(const Rational& q, Rational& out) {
  const Integer num = numerator(q);
  const Integer den = denominator(q);
  if (num < 0) return false;
  if (!mpz_perfect_square_p(num.backend().data()) || !mpz_perfect_square_p(den.backend().data())) return false;
  Integer rn = boost::multiprecision::sqrt(num);
  Integer rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return false;
  out = Rational(rn, rd);
  return true;
}

Rational sqrt_rounded(const Rational& q, mpfr_rnd_t mode) {
  require(q >= 0, "sqrt of a negative rational");
  Rational exact;
  if (exact_sqrt(q, exact)) return exact;
  MpfrValue x;
  mpfr_set_q(x.get(), q.backend().data(), mode);
  mpfr_sqrt(x.get(), x.get(), mode);
  return mpfr_to_rational(x.get());
}

}  // namespace

namespace {

// GMP treats a leading 0 as an octal prefix
Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  require(!s.empty(), "empty rational literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    std::string_view den_text = s.substr(slash + 1);
    require(is_digits(den_text), "malformed rational literal '" + std::string(text) + "'");
    Integer den = decimal_integer(den_text);
    require(den != 0, "zero denominator in '" + std::string(text) + "'");
    return num / Rational(den);
  }

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    auto [ptr, ec] = std::from_chars(exp_text.data() + (exp_text.starts_with('+') ? 1 : 0),
                                     exp_text.data() + exp_text.size(), exponent);
    require(ec == std::errc() && ptr == exp_text.data() + exp_text.size() && !exp_text.empty(),
            "malformed exponent in '" + std::string(text) + "'");
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    require((int_part.empty() || is_digits(int_part)) && (frac_part.empty() || is_digits(frac_part)) &&
                !(int_part.empty() && frac_part.empty()),
            "malformed decimal literal '" + std::string(text) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    require(is_digits(s), "malformed rational literal '" + std::string(text) + "'");
    digits = std::string(s);
  }
  require(std::labs(exponent) < 100000, "exponent out of range in '" + std::string(text) + "'");
  Rational value = Rational(decimal_integer(digits)) * ten_pow(exponent);
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double value) {
  require(std::isfinite(value), "non-finite value cannot be made exact");
  int exp = 0;
  double mantissa = std::frexp(value, &exp);
  // 53-bit integer mantissa.
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exp -= 53;
  Rational out{Integer(scaled)};
  if (exp >= 0) {
    out *= Rational(boost::multiprecision::pow(Integer(2), static_cast<unsigned>(exp)));
  } else {
    out /= Rational(boost::multiprecision::pow(Integer(2), static_cast<unsigned>(-exp)));
  }
  return out;
}

Rational rational_from_decimal_double(double value) {
  require(std::isfinite(value), "non-finite value cannot be made exact");
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw PreconditionError("cannot format double");
  return parse_rational(std::string_view(buffer, static_cast<std::size_t>(ptr - buffer)));
}

std::string to_string(const Rational& value) { return value.str(); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

GaussianRational GaussianRational::inverse() const {
  const Rational n = norm();
  if (n == 0) throw PreconditionError("division by zero Gaussian rational");
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& other) {
  re_ += other.re_;
  im_ += other.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& other) {
  re_ -= other.re_;
  im_ -= other.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& other) {
  if (im_ == 0 && other.im_ == 0) {
    re_ *= other.re_;
    return *this;
  }
  Rational re = re_ * other.re_ - im_ * other.im_;
  Rational im = re_ * other.im_ + im_ * other.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& other) {
  if (other.im_ == 0) {
    if (other.re_ == 0) throw PreconditionError("division by zero Gaussian rational");
    re_ /= other.re_;
    im_ /= other.re_;
    return *this;
  }
  return *this *= other.inverse();
}

GaussianRational gaussian_pow(const GaussianRational& base, unsigned exponent) {
  GaussianRational result(1);
  GaussianRational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

std::string to_string(const GaussianRational& value) {
  if (value.imag() == 0) return to_string(value.real());
  std::ostringstream os;
  if (value.real() != 0) {
    os << to_string(value.real());
    if (value.imag() > 0) os << '+';
  }
  os << to_string(value.imag()) << 'i';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

Rational sqrt_upper(const Rational& q) { return sqrt_rounded(q, MPFR_RNDU); }
Rational sqrt_lower(const Rational& q) { return sqrt_rounded(q, MPFR_RNDD); }

Rational abs_upper(const GaussianRational& z) {
  if (z.imag() == 0) return abs(z.real());
  if (z.real() == 0) return abs(z.imag());
  return sqrt_upper(z.norm());
}

Rational abs_lower(const GaussianRational& z) {
  if (z.imag() == 0) return abs(z.real());
  if (z.real() == 0) return abs(z.imag());
  return sqrt_lower(z.norm());
}

}  // namespace nondegen
