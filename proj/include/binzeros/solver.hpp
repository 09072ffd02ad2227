#pragma once

// Simultaneous (Aberth-Ehrlich) root finding for exact integer polynomials at
// arbitrary precision.

#include <optional>
#include <string>
#include <vector>

#include "binzeros/bigfloat.hpp"
#include "binzeros/errors.hpp"
#include "binzeros/exactpoly.hpp"
#include "json.hpp"

namespace binzeros {

struct ZeroSet {
  ExactPolynomial poly;
  /// Set when the polynomial is a section B_{r,n}.
  std::optional<SectionParams> params;
  Precision precision_bits = 0;
  /// Sorted by (Re, Im) ascending.
  std::vector<BigComplex> zeros;
  /// |P(z)| / sum |a_k| |z|^k per zero.
  std::vector<BigFloat> residuals;
  /// Multiplicity / clustering notes.
  std::vector<std::string> warnings;
};

struct SolverOptions {
  int max_iterations = 500;
};

/// Thrown when the iteration cap is hit; carries the last iterate.
class SolverError : public NumericalError {
 public:
  SolverError(const std::string& what, ZeroSet best) : NumericalError(what), best_(std::move(best)) {}
  const ZeroSet& best_iterate() const { return best_; }

 private:
  ZeroSet best_;
};

/// max(128, 2n + 64) bits.
Precision default_precision(long n);

/// All deg(poly) zeros. Requires degree >= 1 and precision_bits >= 53.
ZeroSet find_zeros(const ExactPolynomial& poly, Precision precision_bits, const SolverOptions& options = {});
/// Zeros of B_{r,n}; the ZeroSet is labelled with `params`.
ZeroSet find_zeros(const SectionParams& params, Precision precision_bits, const SolverOptions& options = {});
ZeroSet find_zeros(const SectionParams& params);

/// Relative backward error |P(z)| / sum |a_k||z|^k at the precision of z.
BigFloat relative_residual(const ExactPolynomial& poly, const BigComplex& z);

struct ResidualCheck {
  bool ok = false;
  BigFloat worst;
};

/// Re-evaluates every zero at doubled precision; ok iff every relative
/// residual is below 2^(-precision_bits/2).
ResidualCheck verify_residuals(const ZeroSet& zs);

/// True iff each zero's conjugate is present within `tolerance`.
bool is_conjugate_closed(const ZeroSet& zs, const BigFloat& tolerance);

nlohmann::json to_json(const ZeroSet& zs);
ZeroSet zero_set_from_json(const nlohmann::json& j, const ExactPolynomial& poly);
/// Header "re,im,residual" then one row per zero.
std::string to_csv(const ZeroSet& zs);

}  // namespace binzeros
