#include "binzeros/exactpoly.hpp"

#include <algorithm>
#include <utility>

#include "binzeros/errors.hpp"

namespace binzeros {

SectionParams::SectionParams(long r, long n) : r_(r), n_(n) {
  if (r < 1 || n < 1 || r > n) {
    throw DomainError("section parameters need 1 <= r <= n, got r=" + std::to_string(r) +
                      " n=" + std::to_string(n));
  }
}

mpq_class SectionParams::gamma() const {
  if (n_ < 2) throw DomainError("gamma = r/(n-1) needs n >= 2");
  mpq_class g(r_, n_ - 1);
  g.canonicalize();
  return g;
}

ExactPolynomial::ExactPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

long ExactPolynomial::degree() const { return coeffs_.empty() ? 0 : static_cast<long>(coeffs_.size()) - 1; }

mpz_class ExactPolynomial::coeff(long k) const {
  if (k < 0 || k >= static_cast<long>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b) {
  std::vector<mpz_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<long>(k)) + b.coeff(static_cast<long>(k));
  return ExactPolynomial(std::move(c));
}

ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b) {
  std::vector<mpz_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<long>(k)) - b.coeff(static_cast<long>(k));
  return ExactPolynomial(std::move(c));
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return ExactPolynomial(std::move(c));
}

mpz_class binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("binomial(n, k) needs 0 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  k = std::min(k, n - k);
  mpz_class c = 1;
  // c stays integral: after step i it equals C(n-k+i, i).
  for (long i = 1; i <= k; ++i) {
    c *= n - k + i;
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return c;
}

namespace {

// C(n,0..kmax) by the ratio C(n,k) = C(n,k-1) (n-k+1)/k.
std::vector<mpz_class> binomial_row(long n, long kmax) {
  std::vector<mpz_class> row(static_cast<std::size_t>(kmax) + 1);
  row[0] = 1;
  for (long k = 1; k <= kmax; ++k) {
    mpz_class c = row[static_cast<std::size_t>(k - 1)] * (n - k + 1);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k));
    row[static_cast<std::size_t>(k)] = std::move(c);
  }
  return row;
}

}  // namespace

ExactPolynomial build_section(const SectionParams& p) { return ExactPolynomial(binomial_row(p.n(), p.r())); }

ExactPolynomial build_remainder(const SectionParams& p) {
  if (p.r() == p.n()) throw DomainError("remainder R_{r,n} is the zero polynomial when r = n");
  std::vector<mpz_class> full = binomial_row(p.n(), p.n());
  std::vector<mpz_class> c(static_cast<std::size_t>(p.n() - p.r()) + 1);
  for (long j = 1; j <= p.n() - p.r(); ++j) c[static_cast<std::size_t>(j)] = full[static_cast<std::size_t>(j + p.r())];
  return ExactPolynomial(std::move(c));
}

ExactPolynomial reliability_form(const SectionParams& p) {
  const long r = p.r();
  std::vector<mpz_class> row = binomial_row(p.n(), r);
  // sum_k C(n,k) q^k (1-q)^{r-k}, with (1-q)^j expanded via C(j,i)(-1)^i.
  std::vector<mpz_class> c(static_cast<std::size_t>(r) + 1);
  for (long k = 0; k <= r; ++k) {
    const long j = r - k;
    std::vector<mpz_class> inner = binomial_row(j, j);
    for (long i = 0; i <= j; ++i) {
      mpz_class term = row[static_cast<std::size_t>(k)] * inner[static_cast<std::size_t>(i)];
      if (i % 2 == 1) term = -term;
      c[static_cast<std::size_t>(k + i)] += term;
    }
  }
  return ExactPolynomial(std::move(c));
}

ExactPolynomial reversed(const ExactPolynomial& poly, long d) {
  if (d < poly.degree()) throw DomainError("reversal degree below polynomial degree");
  std::vector<mpz_class> c(static_cast<std::size_t>(d) + 1);
  for (long k = 0; k <= d; ++k) c[static_cast<std::size_t>(d - k)] = poly.coeff(k);
  return ExactPolynomial(std::move(c));
}

std::vector<BigFloat> rounded_coeffs(const ExactPolynomial& poly, Precision prec) {
  std::vector<BigFloat> out;
  out.reserve(poly.coeffs().size());
  for (const auto& c : poly.coeffs()) out.emplace_back(c, prec);
  return out;
}

BigComplex evaluate(const ExactPolynomial& poly, const BigComplex& z) {
  BigComplex out = BigComplex::zero(z.precision());
  const std::vector<BigFloat> c = rounded_coeffs(poly, z.precision());
  horner(c, z, out);
  return out;
}

BigFloat evaluate_abs(const ExactPolynomial& poly, const BigFloat& x) {
  BigFloat acc = BigFloat::zero(x.precision());
  const auto& c = poly.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= x;
    acc += BigFloat(mpz_class(abs(*it)), x.precision());
  }
  return acc;
}

mpq_class evaluate(const ExactPolynomial& poly, const mpq_class& q) {
  mpq_class acc = 0;
  const auto& c = poly.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * q + *it;
  return acc;
}

nlohmann::json to_json(const ExactPolynomial& poly, const SectionParams& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : poly.coeffs()) coeffs.push_back(c.get_str());
  return {{"r", p.r()}, {"n", p.n()}, {"coeffs", std::move(coeffs)}};
}

ExactPolynomial polynomial_from_json(const nlohmann::json& j, SectionParams* params) {
  try {
    std::vector<mpz_class> c;
    for (const auto& s : j.at("coeffs")) c.emplace_back(s.get<std::string>(), 10);
    if (params != nullptr) *params = SectionParams(j.at("r").get<long>(), j.at("n").get<long>());
    return ExactPolynomial(std::move(c));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed polynomial JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DomainError(std::string("malformed coefficient: ") + e.what());
  }
}

}  // namespace binzeros
