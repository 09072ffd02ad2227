#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "binzeros/errors.hpp"
#include "binzeros/exactpoly.hpp"

using namespace binzeros;

namespace {

// Rows of Pascal's triangle by repeated addition.
std::vector<std::vector<mpz_class>> pascal(long rows) {
  std::vector<std::vector<mpz_class>> t{{1}};
  for (long n = 1; n <= rows; ++n) {
    std::vector<mpz_class> row(n + 1, 1);
    for (long k = 1; k < n; ++k) row[k] = t[n - 1][k - 1] + t[n - 1][k];
    t.push_back(std::move(row));
  }
  return t;
}

ExactPolynomial one_plus_z_pow(long n) {
  ExactPolynomial out(std::vector<mpz_class>{1});
  const ExactPolynomial f(std::vector<mpz_class>{1, 1});
  for (long i = 0; i < n; ++i) out = out * f;
  return out;
}

ExactPolynomial monomial(long k) {
  std::vector<mpz_class> c(k + 1, 0);
  c[k] = 1;
  return ExactPolynomial(c);
}

}  // namespace

TEST_CASE("SectionParams validation") {
  CHECK_NOTHROW(SectionParams(1, 1));
  CHECK_THROWS_AS(SectionParams(0, 5), DomainError);
  CHECK_THROWS_AS(SectionParams(6, 5), DomainError);
  CHECK(SectionParams(10, 30).beta() == mpq_class(1, 3));
  CHECK(SectionParams(10, 30).gamma() == mpq_class(10, 29));
  CHECK_THROWS_AS(SectionParams(1, 1).gamma(), DomainError);
}

TEST_CASE("binomial agrees with Pascal's triangle") {
  const auto t = pascal(60);
  for (long n = 0; n <= 60; ++n) {
    for (long k = 0; k <= n; ++k) REQUIRE(binomial(n, k) == t[n][k]);
  }
  CHECK(binomial(30, 10) == 30045015);
  CHECK_THROWS_AS(binomial(5, 6), DomainError);
  CHECK_THROWS_AS(binomial(5, -1), DomainError);
}

TEST_CASE("binomial stays exact far beyond 64 bits") {
  const mpz_class c = binomial(2000, 1000);
  CHECK(mpz_sizeinbase(c.get_mpz_t(), 2) > 1990);
  CHECK(c == binomial(1999, 999) + binomial(1999, 1000));
}

TEST_CASE("section coefficients") {
  const ExactPolynomial b = build_section(SectionParams(3, 6));
  CHECK(b.degree() == 3);
  CHECK(b.coeffs() == std::vector<mpz_class>{1, 6, 15, 20});
  CHECK(build_section(SectionParams(6, 6)) == one_plus_z_pow(6));
}

TEST_CASE("section plus shifted remainder is the full binomial") {
  for (long n = 2; n <= 20; ++n) {
    for (long r = 1; r < n; ++r) {
      const SectionParams p(r, n);
      const ExactPolynomial lhs = build_section(p) + monomial(r) * build_remainder(p);
      REQUIRE(lhs == one_plus_z_pow(n));
    }
  }
}

TEST_CASE("remainder is the reversed complementary section") {
  for (long n = 3; n <= 20; ++n) {
    for (long r = 1; r < n - 1; ++r) {
      const ExactPolynomial rev = reversed(build_section(SectionParams(n - r - 1, n)), n - r);
      REQUIRE(build_remainder(SectionParams(r, n)) == rev);
    }
    // B_{0,n} = 1 is outside the section range; R_{n-1,n}(z) = z.
    REQUIRE(build_remainder(SectionParams(n - 1, n)) == monomial(1));
  }
  CHECK(build_remainder(SectionParams(2, 4)).coeff(0) == 0);
  CHECK_THROWS_AS(build_remainder(SectionParams(4, 4)), DomainError);
}

TEST_CASE("reliability form interpolates (1-q)^r B(q/(1-q))") {
  for (long n = 1; n <= 12; ++n) {
    for (long r = 1; r <= n; ++r) {
      const SectionParams p(r, n);
      const ExactPolynomial h = reliability_form(p);
      const ExactPolynomial b = build_section(p);
      for (const mpq_class q : {mpq_class(1, 3), mpq_class(-2, 5), mpq_class(7, 2), mpq_class(0)}) {
        mpq_class scale = 1;
        for (long i = 0; i < r; ++i) scale *= 1 - q;
        const mpq_class expected = scale * evaluate(b, mpq_class(q / (1 - q)));
        REQUIRE(evaluate(h, q) == expected);
      }
    }
  }
}

TEST_CASE("polynomial arithmetic trims zeros") {
  const ExactPolynomial a(std::vector<mpz_class>{1, 2, 3});
  const ExactPolynomial z = a - a;
  CHECK(z.is_zero());
  CHECK(z.degree() == 0);
  CHECK(ExactPolynomial(std::vector<mpz_class>{4, 0, 0}).degree() == 0);
  CHECK(a.coeff(10) == 0);
}

TEST_CASE("complex evaluation agrees with exact rational evaluation") {
  const ExactPolynomial b = build_section(SectionParams(7, 15));
  const mpq_class q(-3, 7);
  const BigComplex z(BigFloat(q, 200));
  const BigComplex v = evaluate(b, z);
  CHECK(abs(v.re() - BigFloat(evaluate(b, q), 200)) < pow2(-150, 200));
  CHECK(v.im().is_zero());
  const BigFloat expected(evaluate(b, mpq_class(3, 7)), 200);
  CHECK(abs(evaluate_abs(b, BigFloat(mpq_class(3, 7), 200)) - expected) < expected * pow2(-190, 200));
}

TEST_CASE("JSON round trip") {
  const SectionParams p(5, 40);
  const ExactPolynomial b = build_section(p);
  const auto j = to_json(b, p);
  CHECK(j["coeffs"][5] == binomial(40, 5).get_str());
  SectionParams back(1, 1);
  CHECK(polynomial_from_json(j, &back) == b);
  CHECK(back == p);
  CHECK_THROWS_AS(polynomial_from_json(nlohmann::json{{"coeffs", {"x"}}}), DomainError);
}
