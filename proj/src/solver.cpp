#include "binzeros/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace binzeros {

namespace {

BigComplex ldexp_pair(const BigComplex& z) { return {ldexp(z.re(), -1), ldexp(z.im(), -1)}; }

bool canonical_less(const BigComplex& a, const BigComplex& b) {
  if (a.re() < b.re()) return true;
  if (b.re() < a.re()) return false;
  return a.im() < b.im();
}

// poly == a_0 (1+z)^d
bool is_binomial_power(const ExactPolynomial& poly) {
  const long d = poly.degree();
  const mpz_class& a0 = poly.coeffs().front();
  if (a0 == 0) return false;
  for (long k = 0; k <= d; ++k) {
    if (poly.coeff(k) != a0 * binomial(d, k)) return false;
  }
  return true;
}

// Bini's starting points: one circle per edge of the upper convex hull of
// (k, log|a_k|), with radius (|a_i|/|a_j|)^(1/(j-i)) for the edge (i, j).
std::vector<BigComplex> newton_polygon_start(const ExactPolynomial& poly, Precision prec) {
  const long d = poly.degree();
  std::vector<double> log_abs(static_cast<std::size_t>(d) + 1, -std::numeric_limits<double>::infinity());
  for (long k = 0; k <= d; ++k) {
    const mpz_class& c = poly.coeffs()[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    long e = 0;
    const double m = mpz_get_d_2exp(&e, c.get_mpz_t());
    log_abs[static_cast<std::size_t>(k)] = std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
  }
  std::vector<long> hull;
  for (long k = 0; k <= d; ++k) {
    const double yk = log_abs[static_cast<std::size_t>(k)];
    if (std::isinf(yk)) continue;
    while (hull.size() >= 2) {
      const long a = hull[hull.size() - 2];
      const long b = hull.back();
      const double ya = log_abs[static_cast<std::size_t>(a)];
      const double yb = log_abs[static_cast<std::size_t>(b)];
      if ((yb - ya) * static_cast<double>(k - a) > (yk - ya) * static_cast<double>(b - a)) break;
      hull.pop_back();
    }
    hull.push_back(k);
  }

  std::vector<BigComplex> start;
  const BigFloat two_pi = ldexp(BigFloat::pi(prec), 1);
  const BigFloat offset(0.7, prec);
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const long m = hull[i + 1] - hull[i];
    const double log_radius =
        (log_abs[static_cast<std::size_t>(hull[i])] - log_abs[static_cast<std::size_t>(hull[i + 1])]) / static_cast<double>(m);
    const BigFloat radius = exp(BigFloat(log_radius, prec));
    for (long j = 0; j < m; ++j) {
      const BigFloat angle = two_pi * j / m + two_pi * hull[i] / d + offset;
      start.push_back(BigComplex::polar(radius, angle));
    }
  }
  // Zero constant term: the hull starts past k = 0, so pin the missing roots at the origin.
  while (static_cast<long>(start.size()) < d) start.push_back(BigComplex::zero(prec));
  return start;
}

// In-place Aberth-Ehrlich iteration on real coefficients.
class AberthIteration {
 public:
  AberthIteration(const ExactPolynomial& poly, Precision prec)
      : prec_(prec),
        degree_(poly.degree()),
        coeffs_(rounded_coeffs(poly, prec)),
        t1_(BigFloat::zero(prec)),
        t2_(BigFloat::zero(prec)),
        t3_(BigFloat::zero(prec)),
        p_(BigComplex::zero(prec)),
        dp_(BigComplex::zero(prec)),
        sum_(BigComplex::zero(prec)),
        step_(BigComplex::zero(prec)) {
    for (const auto& a : coeffs_) abs_coeffs_.push_back(abs(a));
    // Rounding bound for complex Horner: a modest multiple of d * 2^-p.
    noise_ = ldexp(BigFloat(8 * (degree_ + 1), prec), -static_cast<long>(prec));
    step_tol_ = pow2(-static_cast<long>(prec) + 16, prec);
  }

  // One Gauss-Seidel sweep. Returns true once every root has converged.
  bool sweep(std::vector<BigComplex>& z, std::vector<bool>& done) {
    bool all = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      done[i] = update(z, i);
      all = all && done[i];
    }
    return all;
  }

 private:
  // p(z) and p'(z) by Horner.
  void eval(const BigComplex& z) {
    mpfr_ptr pr = p_.re().raw();
    mpfr_ptr pi = p_.im().raw();
    mpfr_ptr dr = dp_.re().raw();
    mpfr_ptr di = dp_.im().raw();
    mpfr_set_zero(pr, 1);
    mpfr_set_zero(pi, 1);
    mpfr_set_zero(dr, 1);
    mpfr_set_zero(di, 1);
    mpfr_srcptr x = z.re().raw();
    mpfr_srcptr y = z.im().raw();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      // dp = dp*z + p
      mpfr_fmms(t1_.raw(), dr, x, di, y, MPFR_RNDN);
      mpfr_fmma(di, dr, y, di, x, MPFR_RNDN);
      mpfr_add(dr, t1_.raw(), pr, MPFR_RNDN);
      mpfr_add(di, di, pi, MPFR_RNDN);
      // p = p*z + a
      mpfr_fmms(t1_.raw(), pr, x, pi, y, MPFR_RNDN);
      mpfr_fmma(pi, pr, y, pi, x, MPFR_RNDN);
      mpfr_add(pr, t1_.raw(), it->raw(), MPFR_RNDN);
    }
  }

  // sum_k |a_k| r^k
  void eval_scale(const BigFloat& r, BigFloat& out) {
    mpfr_set_zero(out.raw(), 1);
    for (auto it = abs_coeffs_.rbegin(); it != abs_coeffs_.rend(); ++it) {
      mpfr_fma(out.raw(), out.raw(), r.raw(), it->raw(), MPFR_RNDN);
    }
  }

  bool update(std::vector<BigComplex>& z, std::size_t i) {
    BigComplex& zi = z[i];
    eval(zi);
    BigFloat modulus = abs(zi);
    BigFloat scale = BigFloat::zero(prec_);
    eval_scale(modulus, scale);
    if (abs(p_) <= noise_ * scale) return true;
    if (dp_.re().is_zero() && dp_.im().is_zero()) {
      // Stationary point: nudge off it.
      zi = zi * BigComplex(BigFloat(1L, prec_) + ldexp(BigFloat(1L, prec_), -20), ldexp(BigFloat(1L, prec_), -20));
      return false;
    }
    BigComplex newton = p_ / dp_;
    // sum_{j != i} 1/(z_i - z_j)
    mpfr_set_zero(sum_.re().raw(), 1);
    mpfr_set_zero(sum_.im().raw(), 1);
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j == i) continue;
      mpfr_sub(t1_.raw(), zi.re().raw(), z[j].re().raw(), MPFR_RNDN);
      mpfr_sub(t2_.raw(), zi.im().raw(), z[j].im().raw(), MPFR_RNDN);
      mpfr_fmma(t3_.raw(), t1_.raw(), t1_.raw(), t2_.raw(), t2_.raw(), MPFR_RNDN);
      mpfr_div(t1_.raw(), t1_.raw(), t3_.raw(), MPFR_RNDN);
      mpfr_div(t2_.raw(), t2_.raw(), t3_.raw(), MPFR_RNDN);
      mpfr_add(sum_.re().raw(), sum_.re().raw(), t1_.raw(), MPFR_RNDN);
      mpfr_sub(sum_.im().raw(), sum_.im().raw(), t2_.raw(), MPFR_RNDN);
    }
    BigComplex denom = BigComplex(BigFloat(1L, prec_)) - newton * sum_;
    step_ = newton / denom;
    zi -= step_;
    return abs(step_) <= step_tol_ * abs(zi);
  }

  Precision prec_;
  long degree_;
  std::vector<BigFloat> coeffs_;
  std::vector<BigFloat> abs_coeffs_;
  BigFloat t1_, t2_, t3_;
  BigComplex p_, dp_, sum_, step_;
  BigFloat noise_ = BigFloat::zero(kMinPrecision);
  BigFloat step_tol_ = BigFloat::zero(kMinPrecision);
};

// Real coefficients: average each approximate conjugate pair onto an exact
// pair, and put unpaired near-real zeros on the real axis.
void pair_conjugates(std::vector<BigComplex>& zeros, Precision prec) {
  const BigFloat tol = pow2(-static_cast<long>(prec / 2), prec);
  std::vector<bool> paired(zeros.size(), false);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (paired[i] || zeros[i].im().sign() <= 0) continue;
    const BigFloat scaled_tol = tol * max(BigFloat(1L, prec), abs(zeros[i]));
    const BigComplex target = conj(zeros[i]);
    std::size_t best = zeros.size();
    BigFloat best_dist = BigFloat::zero(prec);
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      if (j == i || paired[j]) continue;
      BigFloat dist = abs(zeros[j] - target);
      if (best == zeros.size() || dist < best_dist) {
        best = j;
        best_dist = std::move(dist);
      }
    }
    if (best == zeros.size() || !(best_dist < scaled_tol) || !(abs(zeros[i].im()) > scaled_tol)) continue;
    BigComplex mean = ldexp_pair(zeros[i] + conj(zeros[best]));
    zeros[best] = conj(mean);
    zeros[i] = std::move(mean);
    paired[i] = paired[best] = true;
  }
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (paired[i]) continue;
    if (abs(zeros[i].im()) <= tol * max(BigFloat(1L, prec), abs(zeros[i]))) zeros[i].im() = BigFloat::zero(prec);
  }
}

void finish(ZeroSet& zs) {
  std::sort(zs.zeros.begin(), zs.zeros.end(), canonical_less);
  zs.residuals.clear();
  for (const auto& z : zs.zeros) zs.residuals.push_back(relative_residual(zs.poly, z));
}

void flag_clusters(ZeroSet& zs) {
  const BigFloat tol = pow2(-static_cast<long>(zs.precision_bits / 4), zs.precision_bits);
  std::vector<bool> seen(zs.zeros.size(), false);
  for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
    if (seen[i]) continue;
    std::size_t count = 1;
    for (std::size_t j = i + 1; j < zs.zeros.size(); ++j) {
      if (!seen[j] && abs(zs.zeros[i] - zs.zeros[j]) < tol) {
        seen[j] = true;
        ++count;
      }
    }
    if (count > 1) {
      std::ostringstream msg;
      msg << "cluster of " << count << " zeros near (" << zs.zeros[i].re().to_string(12) << ", "
          << zs.zeros[i].im().to_string(12) << "); possible multiple root";
      zs.warnings.push_back(msg.str());
    }
  }
}

}  // namespace

Precision default_precision(long n) { return std::max<Precision>(128, 2 * n + 64); }

BigFloat relative_residual(const ExactPolynomial& poly, const BigComplex& z) {
  const BigFloat scale = evaluate_abs(poly, abs(z));
  const BigFloat value = abs(evaluate(poly, z));
  if (scale.is_zero()) return value;
  return value / scale;
}

ZeroSet find_zeros(const ExactPolynomial& poly, Precision precision_bits, const SolverOptions& options) {
  if (poly.is_zero() || poly.degree() < 1) throw DomainError("find_zeros needs a polynomial of degree >= 1");
  if (precision_bits < 53) throw DomainError("find_zeros needs at least 53 bits of precision");

  ZeroSet zs;
  zs.poly = poly;
  zs.precision_bits = precision_bits;
  const long d = poly.degree();

  if (d == 1) {
    mpq_class root(-poly.coeff(0), poly.coeff(1));
    root.canonicalize();
    zs.zeros.emplace_back(BigFloat(root, precision_bits));
    finish(zs);
    return zs;
  }
  if (is_binomial_power(poly)) {
    for (long k = 0; k < d; ++k) zs.zeros.emplace_back(BigFloat(-1L, precision_bits));
    zs.warnings.push_back("zero -1 has multiplicity " + std::to_string(d));
    finish(zs);
    return zs;
  }

  zs.zeros = newton_polygon_start(poly, precision_bits);

  AberthIteration aberth(poly, precision_bits);
  std::vector<bool> done(zs.zeros.size(), false);
  bool converged = false;
  for (int it = 0; it < options.max_iterations && !converged; ++it) converged = aberth.sweep(zs.zeros, done);
  if (converged) pair_conjugates(zs.zeros, precision_bits);

  finish(zs);
  if (!converged) {
    throw SolverError("Aberth iteration did not converge in " + std::to_string(options.max_iterations) +
                          " sweeps at " + std::to_string(precision_bits) + " bits",
                      zs);
  }
  const BigFloat bound = pow2(-static_cast<long>(precision_bits / 2), precision_bits);
  for (const auto& res : zs.residuals) {
    if (!(res < bound)) {
      throw SolverError("converged zero has residual " + res.to_string(6) + " above 2^(-p/2); retry at higher precision", zs);
    }
  }
  flag_clusters(zs);
  return zs;
}

ZeroSet find_zeros(const SectionParams& params, Precision precision_bits, const SolverOptions& options) {
  ZeroSet zs = find_zeros(build_section(params), precision_bits, options);
  zs.params = params;
  return zs;
}

ZeroSet find_zeros(const SectionParams& params) { return find_zeros(params, default_precision(params.n())); }

ResidualCheck verify_residuals(const ZeroSet& zs) {
  const Precision doubled = 2 * zs.precision_bits;
  const BigFloat bound = pow2(-static_cast<long>(zs.precision_bits / 2), doubled);
  ResidualCheck out{true, BigFloat::zero(doubled)};
  for (const auto& z : zs.zeros) {
    BigFloat res = relative_residual(zs.poly, z.rounded(doubled));
    out.worst = max(out.worst, res);
    if (!(res < bound)) out.ok = false;
  }
  if (zs.zeros.size() != static_cast<std::size_t>(zs.poly.degree())) out.ok = false;
  return out;
}

bool is_conjugate_closed(const ZeroSet& zs, const BigFloat& tolerance) {
  for (const auto& z : zs.zeros) {
    const BigComplex target = conj(z);
    const bool found = std::any_of(zs.zeros.begin(), zs.zeros.end(),
                                   [&](const BigComplex& w) { return abs(w - target) <= tolerance; });
    if (!found) return false;
  }
  return true;
}

nlohmann::json to_json(const ZeroSet& zs) {
  nlohmann::json j;
  if (zs.params) {
    j["r"] = zs.params->r();
    j["n"] = zs.params->n();
  } else {
    j["r"] = zs.poly.degree();
    j["n"] = nullptr;
  }
  j["precision_bits"] = zs.precision_bits;
  nlohmann::json zeros = nlohmann::json::array();
  for (const auto& z : zs.zeros) zeros.push_back({{"re", z.re().to_string()}, {"im", z.im().to_string()}});
  j["zeros"] = std::move(zeros);
  nlohmann::json residuals = nlohmann::json::array();
  for (const auto& r : zs.residuals) residuals.push_back(r.to_string());
  j["residuals"] = std::move(residuals);
  if (!zs.warnings.empty()) j["warnings"] = zs.warnings;
  return j;
}

ZeroSet zero_set_from_json(const nlohmann::json& j, const ExactPolynomial& poly) {
  try {
    ZeroSet zs;
    zs.poly = poly;
    zs.precision_bits = j.at("precision_bits").get<Precision>();
    if (!j.at("n").is_null()) zs.params = SectionParams(j.at("r").get<long>(), j.at("n").get<long>());
    for (const auto& z : j.at("zeros")) {
      zs.zeros.emplace_back(BigFloat::parse(z.at("re").get<std::string>(), zs.precision_bits),
                            BigFloat::parse(z.at("im").get<std::string>(), zs.precision_bits));
    }
    for (const auto& r : j.at("residuals")) zs.residuals.push_back(BigFloat::parse(r.get<std::string>(), zs.precision_bits));
    if (j.contains("warnings")) zs.warnings = j.at("warnings").get<std::vector<std::string>>();
    return zs;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed zero-set JSON: ") + e.what());
  }
}

std::string to_csv(const ZeroSet& zs) {
  std::string out = "re,im,residual\n";
  for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
    out += zs.zeros[i].re().to_string() + ',' + zs.zeros[i].im().to_string() + ',' + zs.residuals[i].to_string() + '\n';
  }
  return out;
}

}  // namespace binzeros
