#pragma once

// Arbitrary-precision real and complex numbers on top of MPFR.
//
// Every value carries its own precision in bits. Binary operations produce a
// result at the larger of the two operand precisions; compound assignment
// rounds into the left-hand side's precision. Rounding is always to nearest.

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace binzeros {

using Precision = mpfr_prec_t;

inline constexpr Precision kMinPrecision = 16;

class BigFloat {
 public:
  static BigFloat zero(Precision prec);
  static BigFloat pi(Precision prec);
  /// Parses a decimal or scientific literal ("-1.25e-3"); throws DomainError.
  static BigFloat parse(std::string_view text, Precision prec);

  BigFloat(long value, Precision prec);
  BigFloat(int value, Precision prec) : BigFloat(static_cast<long>(value), prec) {}
  BigFloat(double value, Precision prec);
  BigFloat(const mpz_class& value, Precision prec);
  BigFloat(const mpq_class& value, Precision prec);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  Precision precision() const { return mpfr_get_prec(value_); }
  /// Same value rounded (or exactly widened) to `prec` bits.
  BigFloat rounded(Precision prec) const;

  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Exact rational value; the value must be finite.
  mpq_class to_rational() const;
  /// Round-trip-safe scientific decimal with a digit count derived from the
  /// precision.
  std::string to_string() const;
  std::string to_string(std::size_t significant_digits) const;

  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  BigFloat& operator+=(long rhs);
  BigFloat& operator-=(long rhs);
  BigFloat& operator*=(long rhs);
  BigFloat& operator/=(long rhs);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator+(const BigFloat& a, long b);
  friend BigFloat operator-(const BigFloat& a, long b);
  friend BigFloat operator+(long a, const BigFloat& b) { return b + a; }
  friend BigFloat operator-(long a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, long b);
  friend BigFloat operator*(long a, const BigFloat& b) { return b * a; }
  friend BigFloat operator/(const BigFloat& a, long b);
  friend BigFloat operator/(long a, const BigFloat& b);

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);
  friend bool operator==(const BigFloat& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, long b);
  friend std::partial_ordering operator<=>(const BigFloat& a, double b);

 private:
  explicit BigFloat(Precision prec);
  mpfr_t value_;
};

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat pow(const BigFloat& base, const BigFloat& exponent);
BigFloat pow(const BigFloat& base, long exponent);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat hypot(const BigFloat& x, const BigFloat& y);
BigFloat ldexp(const BigFloat& x, long exponent);
const BigFloat& min(const BigFloat& a, const BigFloat& b);
const BigFloat& max(const BigFloat& a, const BigFloat& b);

/// 2^e at the given precision.
BigFloat pow2(long exponent, Precision prec);

class BigComplex {
 public:
  static BigComplex zero(Precision prec);
  static BigComplex polar(const BigFloat& modulus, const BigFloat& angle);

  BigComplex(BigFloat re, BigFloat im);
  explicit BigComplex(const BigFloat& re);

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  BigFloat& re() { return re_; }
  BigFloat& im() { return im_; }

  Precision precision() const { return re_.precision(); }
  BigComplex rounded(Precision prec) const;

  BigComplex operator-() const { return {-re_, -im_}; }
  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator/=(const BigComplex& rhs);

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator+(const BigComplex& a, const BigFloat& b);
  friend BigComplex operator-(const BigComplex& a, const BigFloat& b);
  friend BigComplex operator*(const BigComplex& a, const BigFloat& b);
  friend BigComplex operator/(const BigComplex& a, const BigFloat& b);
  friend BigComplex operator+(const BigComplex& a, long b);
  friend BigComplex operator*(const BigComplex& a, long b);

  friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  BigFloat re_;
  BigFloat im_;
};

std::ostream& operator<<(std::ostream& os, const BigComplex& z);

BigComplex conj(const BigComplex& z);
BigFloat abs(const BigComplex& z);
BigFloat norm(const BigComplex& z);
/// Principal argument in (-pi, pi].
BigFloat arg(const BigComplex& z);
/// Argument in [0, 2pi), i.e. with the cut along the positive real axis.
BigFloat arg_positive_cut(const BigComplex& z);
BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);

/// Horner evaluation of sum coeffs[k] z^k with real coefficients, computed
/// at `out`'s precision.
void horner(std::span<const BigFloat> coeffs, const BigComplex& z, BigComplex& out);

}  // namespace binzeros
