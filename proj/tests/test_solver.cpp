#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "binzeros/errors.hpp"
#include "binzeros/solver.hpp"

using namespace binzeros;

namespace {

// Greedy matching: every expected point has a distinct computed zero within tol.
bool same_multiset(std::vector<BigComplex> got, const std::vector<BigComplex>& want, const BigFloat& tol) {
  if (got.size() != want.size()) return false;
  for (const auto& w : want) {
    auto it = std::min_element(got.begin(), got.end(),
                               [&](const BigComplex& a, const BigComplex& b) { return abs(a - w) < abs(b - w); });
    if (!(abs(*it - w) < tol)) return false;
    got.erase(it);
  }
  return true;
}

}  // namespace

TEST_CASE("default precision rule") {
  CHECK(default_precision(10) == 128);
  CHECK(default_precision(32) == 128);
  CHECK(default_precision(33) == 130);
  CHECK(default_precision(300) == 664);
}

TEST_CASE("linear sections give -1/n correctly rounded") {
  for (long n = 1; n <= 50; ++n) {
    const ZeroSet zs = find_zeros(SectionParams(1, n));
    REQUIRE(zs.zeros.size() == 1);
    CHECK(zs.zeros[0].re() == BigFloat(mpq_class(-1, n), zs.precision_bits));
    CHECK(zs.zeros[0].im().is_zero());
  }
}

TEST_CASE("quadratic sections against the closed form") {
  for (long n = 3; n <= 40; ++n) {
    const ZeroSet zs = find_zeros(SectionParams(2, n));
    const Precision p = zs.precision_bits;
    const BigFloat c(mpz_class(n * (n - 1) / 2), p);
    const BigFloat re(mpq_class(-1, n - 1), p);
    const BigFloat im = sqrt(BigFloat(n * (n - 2), p)) / (c * 2L);
    CHECK(same_multiset(zs.zeros, {BigComplex(re, im), BigComplex(re, -im)}, pow2(-p / 2, p)));
  }
}

TEST_CASE("B_{n-1,n} zeros are -1/2 - (i/2) cot(pi k/n)") {
  for (long n = 2; n <= 30; ++n) {
    const ZeroSet zs = find_zeros(SectionParams(n - 1, n));
    const Precision p = zs.precision_bits;
    std::vector<BigComplex> want;
    for (long k = 1; k < n; ++k) {
      const BigFloat t = BigFloat::pi(p) * k / n;
      want.emplace_back(BigFloat(-0.5, p), -cos(t) / sin(t) / 2L);
    }
    CHECK(same_multiset(zs.zeros, want, pow2(-p / 2, p)));
  }
}

TEST_CASE("full binomial reports a multiple zero at -1") {
  const ZeroSet zs = find_zeros(SectionParams(3, 3));
  REQUIRE(zs.zeros.size() == 3);
  for (const auto& z : zs.zeros) CHECK(z == BigComplex(BigFloat(-1L, zs.precision_bits)));
  REQUIRE(zs.warnings.size() == 1);
  CHECK(zs.warnings[0].find("multiplicity 3") != std::string::npos);
}

TEST_CASE("generic integer polynomials") {
  // z^4 - 10 z^2 + 1 has zeros +-sqrt2 +- sqrt3.
  const ExactPolynomial f(std::vector<mpz_class>{1, 0, -10, 0, 1});
  const ZeroSet zs = find_zeros(f, 160);
  CHECK_FALSE(zs.params.has_value());
  const BigFloat s2 = sqrt(BigFloat(2L, 160));
  const BigFloat s3 = sqrt(BigFloat(3L, 160));
  std::vector<BigComplex> want;
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) want.emplace_back(s2 * static_cast<long>(a) + s3 * static_cast<long>(b));
  }
  CHECK(same_multiset(zs.zeros, want, pow2(-80, 160)));

  const ZeroSet unit = find_zeros(ExactPolynomial(std::vector<mpz_class>{1, 0, 1}), 64);
  CHECK(same_multiset(unit.zeros, {BigComplex(BigFloat::zero(64), BigFloat(1L, 64)),
                                   BigComplex(BigFloat::zero(64), BigFloat(-1L, 64))},
                      pow2(-32, 64)));
}

TEST_CASE("Vieta relations for sections") {
  for (auto [r, n] : std::vector<std::pair<long, long>>{{5, 9}, {10, 30}, {17, 40}, {38, 40}}) {
    const ZeroSet zs = find_zeros(SectionParams(r, n));
    const Precision p = zs.precision_bits;
    BigComplex sum = BigComplex::zero(p);
    BigComplex prod(BigFloat(1L, p));
    for (const auto& z : zs.zeros) {
      sum += z;
      prod *= z;
    }
    // sum = -C(n,r-1)/C(n,r) = -r/(n-r+1), product = (-1)^r / C(n,r)
    CHECK(abs(sum + BigFloat(mpq_class(r, n - r + 1), p)) < pow2(-p / 2, p));
    BigFloat target(mpq_class(1, binomial(n, r)), p);
    if (r % 2 == 1) target = -target;
    CHECK(abs(prod / target - BigFloat(1L, p)) < pow2(-p / 2, p));
  }
}

TEST_CASE("ordering, conjugacy and residual certificate") {
  const ZeroSet zs = find_zeros(SectionParams(50, 150));
  CHECK(zs.zeros.size() == 50);
  for (std::size_t i = 1; i < zs.zeros.size(); ++i) {
    const auto& a = zs.zeros[i - 1];
    const auto& b = zs.zeros[i];
    CHECK((a.re() < b.re() || (a.re() == b.re() && a.im() <= b.im())));
  }
  CHECK(is_conjugate_closed(zs, BigFloat::zero(zs.precision_bits)));
  const ResidualCheck check = verify_residuals(zs);
  CHECK(check.ok);
  CHECK(check.worst < pow2(-zs.precision_bits / 2, zs.precision_bits));
}

TEST_CASE("high-degree and low-ratio cases converge") {
  const ZeroSet near_full = find_zeros(SectionParams(97, 100));
  CHECK(verify_residuals(near_full).ok);
  const ZeroSet thin = find_zeros(SectionParams(20, 2000));
  CHECK(thin.precision_bits == 4064);
  CHECK(verify_residuals(thin).ok);
}

TEST_CASE("solves are deterministic") {
  const SectionParams p(12, 31);
  CHECK(to_json(find_zeros(p)) == to_json(find_zeros(p)));
  CHECK(to_csv(find_zeros(p)) == to_csv(find_zeros(p)));
}

TEST_CASE("serialization") {
  const SectionParams p(4, 9);
  const ZeroSet zs = find_zeros(p);
  const auto j = to_json(zs);
  CHECK(j["r"] == 4);
  CHECK(j["n"] == 9);
  CHECK(j["precision_bits"] == zs.precision_bits);
  const ZeroSet back = zero_set_from_json(j, zs.poly);
  REQUIRE(back.zeros.size() == zs.zeros.size());
  for (std::size_t i = 0; i < zs.zeros.size(); ++i) CHECK(back.zeros[i] == zs.zeros[i]);
  const std::string csv = to_csv(zs);
  CHECK(csv.rfind("re,im,residual\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("invalid requests") {
  CHECK_THROWS_AS(find_zeros(ExactPolynomial(std::vector<mpz_class>{3}), 128), DomainError);
  CHECK_THROWS_AS(find_zeros(SectionParams(3, 5), 40), DomainError);
}

TEST_CASE("iteration cap surfaces the last iterate") {
  SolverOptions opts;
  opts.max_iterations = 1;
  try {
    find_zeros(SectionParams(30, 60), 200, opts);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.best_iterate().zeros.size() == 30);
  }
}
