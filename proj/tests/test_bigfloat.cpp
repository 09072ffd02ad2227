#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "binzeros/bigfloat.hpp"
#include "binzeros/errors.hpp"

using namespace binzeros;

TEST_CASE("parse and print round-trip") {
  const BigFloat x = BigFloat::parse("-1.25e-3", 128);
  CHECK(abs(x - BigFloat(mpq_class(-1, 800), 256)) < pow2(-135, 256));
  const BigFloat y = BigFloat::parse(x.to_string(), 128);
  CHECK(x == y);
  CHECK(BigFloat::zero(64).to_string() == "0");
  CHECK_THROWS_AS(BigFloat::parse("1.2.3", 64), DomainError);
  CHECK_THROWS_AS(BigFloat::parse("", 64), DomainError);
}

TEST_CASE("binary operations take the wider precision") {
  const BigFloat a(1L, 64);
  const BigFloat b(3L, 200);
  CHECK((a / b).precision() == 200);
  BigFloat c = a;
  c /= b;
  CHECK(c.precision() == 64);
}

TEST_CASE("pi and sqrt(2) against known digits") {
  const BigFloat pi = BigFloat::pi(200);
  const BigFloat ref = BigFloat::parse("3.14159265358979323846264338327950288419716939937510582097494", 200);
  CHECK(abs(pi - ref) < pow2(-190, 200));
  const BigFloat s = sqrt(BigFloat(2L, 300));
  CHECK(abs(s * s - 2L) < pow2(-295, 300));
}

TEST_CASE("exp and log are inverse") {
  for (double v : {0.001, 0.5, 1.0, 7.25, 1e6}) {
    const BigFloat x(v, 160);
    CHECK(abs(exp(log(x)) - x) <= abs(x) * pow2(-155, 160));
  }
}

TEST_CASE("pow and ldexp") {
  CHECK(pow(BigFloat(2L, 64), 10) == 1024L);
  CHECK(pow(BigFloat(0.25, 64), BigFloat(0.5, 64)) == BigFloat(0.5, 64));
  CHECK(ldexp(BigFloat(3L, 64), -2) == BigFloat(0.75, 64));
  CHECK(pow2(-3, 64) == BigFloat(0.125, 64));
}

TEST_CASE("to_rational is exact") {
  const BigFloat x(0.1, 53);
  const mpq_class q = x.to_rational();
  CHECK(q.get_den() == mpz_class(1) << 55);
  CHECK(BigFloat(q, 53) == x);
}

TEST_CASE("complex arithmetic identities") {
  const Precision p = 128;
  const BigComplex z(BigFloat(1.5, p), BigFloat(-2.25, p));
  const BigComplex w(BigFloat(-0.75, p), BigFloat(4L, p));
  const BigComplex q = z / w;
  CHECK(abs(q * w - z) < pow2(-120, p));
  CHECK(abs(z * conj(z)).to_double() == doctest::Approx(norm(z).to_double()));
  CHECK(abs(exp(log(w)) - w) < pow2(-120, p));
  const BigComplex s = sqrt(w);
  CHECK(abs(s * s - w) < pow2(-120, p));
  CHECK(s.re() > 0L);
}

TEST_CASE("division does not overflow for huge components") {
  const Precision p = 64;
  const BigFloat big = pow2(1L << 20, p);
  const BigComplex z(big, big);
  const BigComplex q = z / z;
  CHECK(abs(q - BigComplex(BigFloat(1L, p))) < pow2(-60, p));
}

TEST_CASE("argument ranges") {
  const Precision p = 64;
  const BigComplex below(BigFloat(1L, p), BigFloat(-1L, p));
  CHECK(arg(below).to_double() == doctest::Approx(-M_PI / 4));
  CHECK(arg_positive_cut(below).to_double() == doctest::Approx(7 * M_PI / 4));
  CHECK(arg_positive_cut(BigComplex(BigFloat(1L, p))).is_zero());
  CHECK(arg(BigComplex(BigFloat(-1L, p))).to_double() == doctest::Approx(M_PI));
}

TEST_CASE("horner matches term-by-term evaluation") {
  const Precision p = 128;
  std::vector<BigFloat> c{BigFloat(1L, p), BigFloat(-3L, p), BigFloat(0.5, p), BigFloat(2L, p)};
  const BigComplex z(BigFloat(0.3, p), BigFloat(0.7, p));
  BigComplex out = BigComplex::zero(p);
  horner(c, z, out);
  BigComplex direct = BigComplex::zero(p);
  BigComplex power(BigFloat(1L, p));
  for (const auto& ck : c) {
    direct += power * ck;
    power *= z;
  }
  CHECK(abs(out - direct) < pow2(-120, p));
}

TEST_CASE("polar form") {
  const Precision p = 96;
  const BigComplex z = BigComplex::polar(BigFloat(2L, p), BigFloat::pi(p) / 3L);
  CHECK(z.re().to_double() == doctest::Approx(1.0));
  CHECK(z.im().to_double() == doctest::Approx(std::sqrt(3.0)));
}
