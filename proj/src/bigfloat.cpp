#include "binzeros/bigfloat.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

#include "binzeros/errors.hpp"

namespace binzeros {

namespace {

Precision checked(Precision prec) {
  if (prec < kMinPrecision) {
    throw DomainError("precision must be at least 16 bits, got " + std::to_string(prec));
  }
  return prec;
}

}  // namespace

BigFloat::BigFloat(Precision prec) { mpfr_init2(value_, checked(prec)); }

BigFloat BigFloat::zero(Precision prec) {
  BigFloat x(prec);
  mpfr_set_zero(x.value_, +1);
  return x;
}

BigFloat BigFloat::pi(Precision prec) {
  BigFloat x(prec);
  mpfr_const_pi(x.value_, MPFR_RNDN);
  return x;
}

BigFloat BigFloat::parse(std::string_view text, Precision prec) {
  BigFloat x(prec);
  std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(x.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size()) throw DomainError("not a decimal number: '" + s + "'");
  return x;
}

BigFloat::BigFloat(long value, Precision prec) : BigFloat(prec) { mpfr_set_si(value_, value, MPFR_RNDN); }

BigFloat::BigFloat(double value, Precision prec) : BigFloat(prec) { mpfr_set_d(value_, value, MPFR_RNDN); }

BigFloat::BigFloat(const mpz_class& value, Precision prec) : BigFloat(prec) {
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& value, Precision prec) : BigFloat(prec) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) : BigFloat(other.precision()) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept : BigFloat(other.precision()) { mpfr_swap(value_, other.value_); }

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    if (precision() != other.precision()) mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::rounded(Precision prec) const {
  BigFloat x(prec);
  mpfr_set(x.value_, value_, MPFR_RNDN);
  return x;
}

mpq_class BigFloat::to_rational() const {
  if (!is_finite()) throw DomainError("cannot convert a non-finite value to a rational");
  mpz_class mantissa;
  mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
  mpq_class q(mantissa);
  if (e > 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else if (e < 0) {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

std::string BigFloat::to_string() const { return to_string(mpfr_get_str_ndigits(10, precision())); }

std::string BigFloat::to_string(std::size_t significant_digits) const {
  if (mpfr_zero_p(value_)) return mpfr_signbit(value_) ? "-0" : "0";
  char* buf = nullptr;
  const int digits = static_cast<int>(std::max<std::size_t>(significant_digits, 1)) - 1;
  mpfr_asprintf(&buf, "%.*Re", digits, value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

BigFloat BigFloat::operator-() const {
  BigFloat x(precision());
  mpfr_neg(x.value_, value_, MPFR_RNDN);
  return x;
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) { mpfr_add(value_, value_, rhs.value_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator-=(const BigFloat& rhs) { mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator*=(const BigFloat& rhs) { mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator/=(const BigFloat& rhs) { mpfr_div(value_, value_, rhs.value_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator+=(long rhs) { mpfr_add_si(value_, value_, rhs, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator-=(long rhs) { mpfr_sub_si(value_, value_, rhs, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator*=(long rhs) { mpfr_mul_si(value_, value_, rhs, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator/=(long rhs) { mpfr_div_si(value_, value_, rhs, MPFR_RNDN); return *this; }

#define BINZEROS_BINARY(op, fn)                                  \
  BigFloat operator op(const BigFloat& a, const BigFloat& b) {   \
    BigFloat x(std::max(a.precision(), b.precision()));          \
    fn(x.value_, a.value_, b.value_, MPFR_RNDN);                 \
    return x;                                                    \
  }
BINZEROS_BINARY(+, mpfr_add)
BINZEROS_BINARY(-, mpfr_sub)
BINZEROS_BINARY(*, mpfr_mul)
BINZEROS_BINARY(/, mpfr_div)
#undef BINZEROS_BINARY

BigFloat operator+(const BigFloat& a, long b) {
  BigFloat x(a.precision());
  mpfr_add_si(x.value_, a.value_, b, MPFR_RNDN);
  return x;
}
BigFloat operator-(const BigFloat& a, long b) {
  BigFloat x(a.precision());
  mpfr_sub_si(x.value_, a.value_, b, MPFR_RNDN);
  return x;
}
BigFloat operator-(long a, const BigFloat& b) {
  BigFloat x(b.precision());
  mpfr_si_sub(x.value_, a, b.value_, MPFR_RNDN);
  return x;
}
BigFloat operator*(const BigFloat& a, long b) {
  BigFloat x(a.precision());
  mpfr_mul_si(x.value_, a.value_, b, MPFR_RNDN);
  return x;
}
BigFloat operator/(const BigFloat& a, long b) {
  BigFloat x(a.precision());
  mpfr_div_si(x.value_, a.value_, b, MPFR_RNDN);
  return x;
}
BigFloat operator/(long a, const BigFloat& b) {
  BigFloat x(b.precision());
  mpfr_si_div(x.value_, a, b.value_, MPFR_RNDN);
  return x;
}

namespace {
std::partial_ordering from_cmp(int c) {
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}
}  // namespace

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp(a.value_, b.value_));
}

std::partial_ordering operator<=>(const BigFloat& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp_si(a.value_, b));
}

std::partial_ordering operator<=>(const BigFloat& a, double b) {
  if (mpfr_nan_p(a.value_) || b != b) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp_d(a.value_, b));
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.to_string(); }

#define BINZEROS_UNARY(name, fn)         \
  BigFloat name(const BigFloat& x) {     \
    BigFloat y = BigFloat::zero(x.precision()); \
    fn(y.raw(), x.raw(), MPFR_RNDN);     \
    return y;                            \
  }
BINZEROS_UNARY(abs, mpfr_abs)
BINZEROS_UNARY(sqrt, mpfr_sqrt)
BINZEROS_UNARY(exp, mpfr_exp)
BINZEROS_UNARY(log, mpfr_log)
BINZEROS_UNARY(sin, mpfr_sin)
BINZEROS_UNARY(cos, mpfr_cos)
#undef BINZEROS_UNARY

BigFloat pow(const BigFloat& base, const BigFloat& exponent) {
  BigFloat y = BigFloat::zero(std::max(base.precision(), exponent.precision()));
  mpfr_pow(y.raw(), base.raw(), exponent.raw(), MPFR_RNDN);
  return y;
}

BigFloat pow(const BigFloat& base, long exponent) {
  BigFloat y = BigFloat::zero(base.precision());
  mpfr_pow_si(y.raw(), base.raw(), exponent, MPFR_RNDN);
  return y;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r = BigFloat::zero(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat hypot(const BigFloat& x, const BigFloat& y) {
  BigFloat r = BigFloat::zero(std::max(x.precision(), y.precision()));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

BigFloat ldexp(const BigFloat& x, long exponent) {
  BigFloat r = BigFloat::zero(x.precision());
  mpfr_mul_2si(r.raw(), x.raw(), exponent, MPFR_RNDN);
  return r;
}

const BigFloat& min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }
const BigFloat& max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigFloat pow2(long exponent, Precision prec) { return ldexp(BigFloat(1L, prec), exponent); }

// ---------------------------------------------------------------------------
// BigComplex

BigComplex BigComplex::zero(Precision prec) { return {BigFloat::zero(prec), BigFloat::zero(prec)}; }

BigComplex BigComplex::polar(const BigFloat& modulus, const BigFloat& angle) {
  const Precision prec = std::max(modulus.precision(), angle.precision());
  BigFloat s = BigFloat::zero(prec);
  BigFloat c = BigFloat::zero(prec);
  mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
  return {modulus * c, modulus * s};
}

BigComplex::BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.precision() != im_.precision()) {
    const Precision prec = std::max(re_.precision(), im_.precision());
    re_ = re_.rounded(prec);
    im_ = im_.rounded(prec);
  }
}

BigComplex::BigComplex(const BigFloat& re) : re_(re), im_(BigFloat::zero(re.precision())) {}

BigComplex BigComplex::rounded(Precision prec) const { return {re_.rounded(prec), im_.rounded(prec)}; }

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  BigComplex product = *this * rhs;
  const Precision prec = precision();
  re_ = product.re_.rounded(prec);
  im_ = product.im_.rounded(prec);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& rhs) {
  BigComplex quotient = *this / rhs;
  const Precision prec = precision();
  re_ = quotient.re_.rounded(prec);
  im_ = quotient.im_.rounded(prec);
  return *this;
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  const Precision prec = std::max(a.precision(), b.precision());
  BigFloat re = BigFloat::zero(prec);
  BigFloat im = BigFloat::zero(prec);
  mpfr_fmms(re.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
  mpfr_fmma(im.raw(), a.re_.raw(), b.im_.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
  return {std::move(re), std::move(im)};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  // Smith's algorithm avoids the spurious overflow of |b|^2.
  const Precision prec = std::max(a.precision(), b.precision()) + 8;
  BigComplex x = a.rounded(prec);
  BigComplex y = b.rounded(prec);
  BigFloat re = BigFloat::zero(prec);
  BigFloat im = BigFloat::zero(prec);
  if (abs(y.re_) >= abs(y.im_)) {
    BigFloat ratio = y.im_ / y.re_;
    BigFloat denom = y.re_ + y.im_ * ratio;
    re = (x.re_ + x.im_ * ratio) / denom;
    im = (x.im_ - x.re_ * ratio) / denom;
  } else {
    BigFloat ratio = y.re_ / y.im_;
    BigFloat denom = y.re_ * ratio + y.im_;
    re = (x.re_ * ratio + x.im_) / denom;
    im = (x.im_ * ratio - x.re_) / denom;
  }
  const Precision out = std::max(a.precision(), b.precision());
  return {re.rounded(out), im.rounded(out)};
}

BigComplex operator+(const BigComplex& a, const BigFloat& b) { return {a.re_ + b, a.im_.rounded(std::max(a.precision(), b.precision()))}; }
BigComplex operator-(const BigComplex& a, const BigFloat& b) { return {a.re_ - b, a.im_.rounded(std::max(a.precision(), b.precision()))}; }
BigComplex operator*(const BigComplex& a, const BigFloat& b) { return {a.re_ * b, a.im_ * b}; }
BigComplex operator/(const BigComplex& a, const BigFloat& b) { return {a.re_ / b, a.im_ / b}; }
BigComplex operator+(const BigComplex& a, long b) { return {a.re_ + b, a.im_}; }
BigComplex operator*(const BigComplex& a, long b) { return {a.re_ * b, a.im_ * b}; }

std::ostream& operator<<(std::ostream& os, const BigComplex& z) {
  return os << '(' << z.re() << ", " << z.im() << ')';
}

BigComplex conj(const BigComplex& z) { return {z.re(), -z.im()}; }

BigFloat abs(const BigComplex& z) { return hypot(z.re(), z.im()); }

BigFloat norm(const BigComplex& z) {
  BigFloat r = BigFloat::zero(z.precision());
  mpfr_fmma(r.raw(), z.re().raw(), z.re().raw(), z.im().raw(), z.im().raw(), MPFR_RNDN);
  return r;
}

BigFloat arg(const BigComplex& z) { return atan2(z.im(), z.re()); }

BigFloat arg_positive_cut(const BigComplex& z) {
  BigFloat a = arg(z);
  if (a.sign() < 0) a += ldexp(BigFloat::pi(a.precision()), 1);
  return a;
}

BigComplex exp(const BigComplex& z) { return BigComplex::polar(exp(z.re()), z.im()); }

BigComplex log(const BigComplex& z) { return {log(abs(z)), arg(z)}; }

BigComplex sqrt(const BigComplex& z) {
  if (z.re().is_zero() && z.im().is_zero()) return z;
  const BigFloat modulus = abs(z);
  BigFloat t = sqrt(ldexp(modulus + abs(z.re()), -1));
  if (z.re().sign() >= 0) {
    return {t, z.im() / ldexp(t, 1)};
  }
  BigFloat im = z.im().sign() < 0 ? -t : t;
  return {abs(z.im()) / ldexp(t, 1), std::move(im)};
}

void horner(std::span<const BigFloat> coeffs, const BigComplex& z, BigComplex& out) {
  mpfr_ptr re = out.re().raw();
  mpfr_ptr im = out.im().raw();
  mpfr_set_zero(re, +1);
  mpfr_set_zero(im, +1);
  BigFloat t = BigFloat::zero(out.precision());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    // (re + i im)(x + i y) + a
    mpfr_fmms(t.raw(), re, z.re().raw(), im, z.im().raw(), MPFR_RNDN);
    mpfr_fmma(im, re, z.im().raw(), im, z.re().raw(), MPFR_RNDN);
    mpfr_add(re, t.raw(), it->raw(), MPFR_RNDN);
  }
}

}  // namespace binzeros
