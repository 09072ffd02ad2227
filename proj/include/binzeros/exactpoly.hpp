#pragma once

// Exact integer polynomials: the binomial sections B_{r,n}, their remainders
// R_{r,n} and the reliability form H_{r,n}.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "binzeros/bigfloat.hpp"
#include "json.hpp"

namespace binzeros {

/// The pair (r, n) with 1 <= r <= n.
class SectionParams {
 public:
  /// Throws DomainError unless 1 <= r <= n.
  SectionParams(long r, long n);

  long r() const { return r_; }
  long n() const { return n_; }

  /// beta = r/n
  mpq_class beta() const {
    mpq_class b(r_, n_);
    b.canonicalize();
    return b;
  }
  /// gamma = r/(n-1); requires n >= 2.
  mpq_class gamma() const;

  friend bool operator==(const SectionParams&, const SectionParams&) = default;

 private:
  long r_;
  long n_;
};

/// Polynomial with exact integer coefficients; coeffs()[k] multiplies z^k.
class ExactPolynomial {
 public:
  ExactPolynomial() = default;
  /// Trailing zero coefficients are dropped.
  explicit ExactPolynomial(std::vector<mpz_class> coeffs);

  /// Index of the last nonzero coefficient; 0 for the zero polynomial.
  long degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  /// Coefficient of z^k, zero beyond the degree.
  mpz_class coeff(long k) const;

  friend bool operator==(const ExactPolynomial&, const ExactPolynomial&) = default;
  friend ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b);
  friend ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b);
  friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b);

 private:
  std::vector<mpz_class> coeffs_;
};

/// C(n, k) exactly. Throws DomainError unless 0 <= k <= n.
mpz_class binomial(long n, long k);

/// B_{r,n}(z) = sum_{k=0}^{r} C(n,k) z^k
ExactPolynomial build_section(const SectionParams& p);

/// R_{r,n}(z) = sum_{k=r+1}^{n} C(n,k) z^{k-r}, with an explicit zero constant
/// term. Throws DomainError when r = n.
ExactPolynomial build_remainder(const SectionParams& p);

/// H_{r,n}(q) = sum_{k=0}^{r} C(n,k) q^k (1-q)^{r-k}, expanded in powers of q.
ExactPolynomial reliability_form(const SectionParams& p);

/// z^d P(1/z) for d >= deg P.
ExactPolynomial reversed(const ExactPolynomial& poly, long d);

/// Horner evaluation at the precision of z.
BigComplex evaluate(const ExactPolynomial& poly, const BigComplex& z);
/// sum |a_k| x^k at the precision of x.
BigFloat evaluate_abs(const ExactPolynomial& poly, const BigFloat& x);
/// Exact rational evaluation.
mpq_class evaluate(const ExactPolynomial& poly, const mpq_class& q);

/// Coefficients rounded to `prec` bits.
std::vector<BigFloat> rounded_coeffs(const ExactPolynomial& poly, Precision prec);

/// {"r":..,"n":..,"coeffs":["..",..]} with decimal-string coefficients.
nlohmann::json to_json(const ExactPolynomial& poly, const SectionParams& p);
/// Inverse of to_json; the r/n labels are returned through `params`.
ExactPolynomial polynomial_from_json(const nlohmann::json& j, SectionParams* params = nullptr);

}  // namespace binzeros
