#include "binzeros/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "binzeros/errors.hpp"
#include "binzeros/geometry.hpp"

namespace binzeros {

namespace {

const SectionParams& require_params(const ZeroSet& zs, const char* what) {
  if (!zs.params) throw DomainError(std::string(what) + " needs a zero set of a section B_{r,n}");
  return *zs.params;
}

BigFloat sqrt_of(long n, Precision prec) { return sqrt(BigFloat(n, prec)); }

// Absolute slack for the coefficient-lemma inequalities.
BigFloat inequality_slack(Precision prec) { return pow2(-64, prec); }

nlohmann::json params_json(const SectionParams& p) { return {{"r", p.r()}, {"n", p.n()}}; }

nlohmann::json complex_json(const BigComplex& z) { return {{"re", z.re().to_string()}, {"im", z.im().to_string()}}; }

}  // namespace

// ---------------------------------------------------------------------------
// Bounding region

BigFloat RegionReport::tolerance() const { return -pow2(-static_cast<long>(precision_bits / 4), precision_bits); }

bool RegionReport::passed() const {
  const BigFloat tol = tolerance();
  return std::all_of(records.begin(), records.end(), [&](const RegionRecord& rec) {
    return rec.margin_outer >= tol && rec.margin_circle >= tol && rec.margin_halfplane >= tol && rec.margin_curve >= tol;
  });
}

std::vector<BigFloat> RegionReport::worst_margins() const {
  if (records.empty()) return {};
  std::vector<BigFloat> worst{records[0].margin_outer, records[0].margin_circle, records[0].margin_halfplane,
                              records[0].margin_curve};
  for (const auto& rec : records) {
    worst[0] = min(worst[0], rec.margin_outer);
    worst[1] = min(worst[1], rec.margin_circle);
    worst[2] = min(worst[2], rec.margin_halfplane);
    worst[3] = min(worst[3], rec.margin_curve);
  }
  return worst;
}

RegionReport check_region(const ZeroSet& zs) {
  const SectionParams& p = require_params(zs, "check_region");
  const long r = p.r();
  const long n = p.n();
  if (r >= n - 1) {
    throw HypothesisError("bounding region requires 1 <= r < n-1, got r=" + std::to_string(r) +
                          ", n=" + std::to_string(n));
  }
  const Precision prec = zs.precision_bits;
  const BigFloat outer(mpq_class(r, n + 1 - r), prec);
  const mpq_class gamma = p.gamma();
  const mpq_class denom = 1 - gamma * gamma;
  const BigFloat center(mpq_class(gamma * gamma / denom), prec);
  const BigFloat radius(mpq_class(gamma / denom), prec);
  const Alpha beta(p.beta(), prec);
  const BigFloat k = limit_constant(beta);

  RegionReport report{p, prec, {}};
  report.records.reserve(zs.zeros.size());
  for (const auto& z : zs.zeros) {
    report.records.push_back({z, outer - abs(z), radius - abs(z - center), z.re() + BigFloat(0.5, prec),
                              level_value(beta, z) - k});
  }
  return report;
}

VietaReport vieta_check(const ZeroSet& zs) {
  const auto& a = zs.poly.coeffs();
  const long d = zs.poly.degree();
  if (d < 1 || static_cast<long>(zs.zeros.size()) != d) throw DomainError("vieta_check needs all zeros of the polynomial");
  const Precision prec = zs.precision_bits;
  BigComplex sum = BigComplex::zero(prec);
  BigComplex prod(BigFloat(1L, prec));
  for (const auto& z : zs.zeros) {
    sum += z;
    prod *= z;
  }
  const BigFloat expected_sum(mpq_class(-a[d - 1], a[d]), prec);
  mpq_class expected_prod(a[0], a[d]);
  if (d % 2 == 1) expected_prod = -expected_prod;
  const BigFloat target(expected_prod, prec);
  return {abs(sum - expected_sum), abs(prod / target - BigFloat(1L, prec))};
}

BigFloat nested_circle_excess(const mpq_class& alpha, std::size_t m, Precision prec) {
  if (alpha <= 0 || alpha >= 1) throw DomainError("alpha must lie strictly inside (0, 1)");
  if (m < 4) throw DomainError("nested_circle_excess needs m >= 4");
  const mpq_class denom = 1 - alpha * alpha;
  const BigFloat center(mpq_class(alpha * alpha / denom), prec);
  const BigFloat radius(mpq_class(alpha / denom), prec);
  const BigFloat bound(mpq_class(alpha / (1 - alpha)), prec);
  const BigFloat full = ldexp(BigFloat::pi(prec), 1);
  BigFloat worst = abs(BigComplex(center + radius)) - bound;
  for (std::size_t j = 1; j < m; ++j) {
    const BigFloat theta = full * static_cast<long>(j) / static_cast<long>(m);
    worst = max(worst, abs(BigComplex::polar(radius, theta) + center) - bound);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Coefficient lemmas

void check_admissible(const std::vector<mpq_class>& b) {
  if (b.empty()) throw DomainError("coefficient sequence is empty");
  const mpq_class b1 = b.size() > 1 ? b[1] : mpq_class(0);
  if (!(b[0] > b1)) throw DomainError("coefficient-bound hypothesis fails at index 0: need b_0 > b_1");
  if (b1 < 0) throw DomainError("coefficient-bound hypothesis fails at index 1: need b_1 >= 0");
  for (std::size_t k = 2; k < b.size(); ++k) {
    if (b[k] < 0) throw DomainError("coefficient-bound hypothesis fails at index " + std::to_string(k) + ": need b_k >= 0");
    if (b1 * b[k - 1] - b[0] * b[k] < 0) {
      throw DomainError("coefficient-bound hypothesis fails at index " + std::to_string(k) +
                        ": need b_1 b_{k-1} - b_0 b_k >= 0");
    }
  }
}

CoefficientBoundReport check_coefficient_bound(const std::vector<mpq_class>& b, std::size_t trials) {
  check_admissible(b);
  if (trials < 1) throw DomainError("check_coefficient_bound needs at least one boundary point");
  constexpr Precision prec = 128;
  std::vector<BigFloat> coeffs;
  coeffs.reserve(b.size());
  mpq_class f1 = 0;
  for (const auto& bk : b) {
    coeffs.emplace_back(bk, prec);
    f1 += bk;
  }
  const mpq_class b1 = b.size() > 1 ? b[1] : mpq_class(0);
  const BigFloat bound(mpq_class((b[0] - b1) / (b[0] + b1) * f1), prec);

  const BigFloat full = ldexp(BigFloat::pi(prec), 1);
  const BigFloat one(1L, prec);
  BigComplex value = BigComplex::zero(prec);
  BigFloat least = BigFloat::zero(prec);
  for (std::size_t j = 0; j < trials; ++j) {
    const BigComplex z = BigComplex::polar(one, full * static_cast<long>(j) / static_cast<long>(trials));
    horner(coeffs, z, value);
    BigFloat m = abs(value);
    if (j == 0 || m < least) least = std::move(m);
  }
  const bool holds = least >= bound - inequality_slack(prec);
  return {holds, std::move(least), bound};
}

std::vector<mpq_class> remainder_coefficients(const SectionParams& p) {
  const long r = p.r();
  const long n = p.n();
  if (r >= n) throw DomainError("the remainder is empty when r = n");
  const mpq_class ratio(r, n - r);
  std::vector<mpq_class> b;
  b.reserve(n - r);
  mpq_class power = 1;
  for (long k = 0; k <= n - r - 1; ++k) {
    b.emplace_back(mpq_class(binomial(n, k + r + 1)) * power);
    power *= ratio;
  }
  return b;
}

mpq_class tail_sum_exact(const SectionParams& p) {
  const long r = p.r();
  const long n = p.n();
  if (r >= n) throw DomainError("tail_sum needs r < n");
  mpz_class num = 0;
  for (long k = r + 1; k <= n; ++k) {
    mpz_class rk;
    mpz_class rest;
    mpz_ui_pow_ui(rk.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(k));
    mpz_ui_pow_ui(rest.get_mpz_t(), static_cast<unsigned long>(n - r), static_cast<unsigned long>(n - k));
    num += binomial(n, k) * rk * rest;
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n));
  mpq_class t(num, den);
  t.canonicalize();
  return t;
}

BigFloat tail_sum(const SectionParams& p, Precision prec) { return BigFloat(tail_sum_exact(p), prec); }

RemainderBoundReport check_remainder_bound(const SectionParams& p, std::size_t z_samples, std::uint64_t seed) {
  const long r = p.r();
  const long n = p.n();
  if (r >= n) throw DomainError("check_remainder_bound needs 1 <= r < n");
  const Precision prec = 128 + 2 * n;
  const ExactPolynomial rem = build_remainder(p);
  const BigFloat rho(mpq_class(r, n - r), prec);
  const BigFloat k = limit_constant(Alpha(p.beta(), prec));
  const BigFloat upper = pow(k, -n) * tail_sum(p, prec);
  const BigFloat lower_scale = upper / (r + 1);
  const BigFloat corrected_scale = lower_scale * (n - r) / r;
  const BigFloat slack = inequality_slack(prec);

  std::vector<BigComplex> points{BigComplex(rho), BigComplex::zero(prec)};
  std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(r) * 1000003u + static_cast<std::uint64_t>(n)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const BigFloat full = ldexp(BigFloat::pi(prec), 1);
  const std::size_t on_boundary = z_samples / 5;
  for (std::size_t j = 0; j < z_samples; ++j) {
    const BigFloat theta = full * BigFloat(unit(rng), prec);
    const BigFloat modulus = j < on_boundary ? rho : rho * sqrt(BigFloat(unit(rng), prec));
    points.push_back(BigComplex::polar(modulus, theta));
  }

  RemainderBoundReport report{p,
                      points.size(),
                      true,
                      true,
                      true,
                      BigFloat::zero(prec),
                      BigFloat(0L, prec),
                      BigFloat(0L, prec)};
  bool first_lower = true;
  for (const auto& z : points) {
    const BigFloat value = abs(evaluate(rem, z));
    const BigFloat modulus = abs(z);
    report.worst_upper_ratio = max(report.worst_upper_ratio, value / upper);
    if (value > upper + slack) report.upper_holds = false;
    const BigFloat lower = lower_scale * modulus;
    const BigFloat corrected = corrected_scale * modulus;
    if (value < lower - slack) report.lower_holds = false;
    if (value < corrected - slack) report.lower_corrected_holds = false;
    if (modulus.is_zero()) continue;
    BigFloat ratio = value / lower;
    BigFloat corrected_ratio = value / corrected;
    if (first_lower || ratio < report.worst_lower_ratio) report.worst_lower_ratio = std::move(ratio);
    if (first_lower || corrected_ratio < report.worst_lower_corrected_ratio) {
      report.worst_lower_corrected_ratio = std::move(corrected_ratio);
    }
    first_lower = false;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Asymptotics

SectionParams nearest_section(const mpq_class& alpha, long n) {
  if (alpha <= 0 || alpha >= 1) throw DomainError("alpha must lie strictly inside (0, 1)");
  const mpq_class scaled = alpha * n + mpq_class(1, 2);
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  const long rr = r.get_si();
  if (rr < 1 || rr >= n - 1) {
    throw HypothesisError("bounding region requires 1 <= r < n-1, got r=" + std::to_string(rr) +
                          ", n=" + std::to_string(n));
  }
  return SectionParams(rr, n);
}

ConvergenceRecord convergence_record(const ZeroSet& zs, const SweepOptions& options) {
  const SectionParams& p = require_params(zs, "convergence_record");
  const long n = p.n();
  const Precision prec = options.curve_precision;
  const Alpha beta(p.beta(), prec);
  const CurveSample curve = sample_curve(beta, Branch::inner, options.curve_points);
  const BigComplex singular(beta.singular_point());
  const BigFloat scale = BigFloat(n, prec) / log(BigFloat(n, prec));
  const BigFloat root_n = sqrt_of(n, prec);

  ConvergenceRecord rec{p, BigFloat::zero(prec), BigFloat::zero(prec), BigFloat::zero(prec)};
  bool first = true;
  for (const auto& z0 : zs.zeros) {
    const BigComplex z = z0.rounded(prec);
    const BigFloat d = distance_to_curve(z, curve);
    const BigFloat gap = abs(z - singular);
    rec.sup_distance = max(rec.sup_distance, d);
    rec.rate_statistic = max(rec.rate_statistic, d * gap * scale);
    if (first || gap * root_n < rec.singular_gap) rec.singular_gap = gap * root_n;
    first = false;
  }
  return rec;
}

std::vector<ConvergenceRecord> convergence_sweep(const mpq_class& alpha, const std::vector<long>& ns,
                                                 const SweepOptions& options) {
  std::vector<SectionParams> params;
  params.reserve(ns.size());
  for (long n : ns) params.push_back(nearest_section(alpha, n));
  std::vector<ConvergenceRecord> out;
  out.reserve(ns.size());
  for (const auto& p : params) {
    const Precision prec = options.precision_bits > 0 ? options.precision_bits : default_precision(p.n());
    out.push_back(convergence_record(find_zeros(p, prec), options));
  }
  return out;
}

std::vector<std::size_t> sweep_inversions(const std::vector<ConvergenceRecord>& records) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].sup_distance >= records[i - 1].sup_distance) out.push_back(i);
  }
  return out;
}

SingularReport singular_check(const ZeroSet& zs, const BigComplex& chi) {
  const SectionParams& p = require_params(zs, "singular_check");
  if (p.r() >= p.n()) throw DomainError("singular_check needs r < n");
  if (zs.zeros.empty()) throw DomainError("singular_check needs at least one zero");
  const Precision prec = std::max<Precision>(128, chi.precision());
  const long n = p.n();
  const mpq_class beta = p.beta();
  const mpq_class one_minus = 1 - beta;
  const BigFloat factor = sqrt(BigFloat(mpq_class(2 * beta / (one_minus * one_minus * one_minus)), prec));
  const BigFloat z_beta(mpq_class(beta / one_minus), prec);
  const BigFloat root_n = sqrt_of(n, prec);
  const BigComplex predicted = BigComplex(z_beta) + chi.rounded(prec) * (factor / root_n);

  std::size_t nearest = 0;
  BigFloat best = abs(zs.zeros[0].rounded(prec) - predicted);
  BigFloat gap = abs(zs.zeros[0].rounded(prec) - z_beta);
  for (std::size_t j = 1; j < zs.zeros.size(); ++j) {
    const BigComplex z = zs.zeros[j].rounded(prec);
    BigFloat d = abs(z - predicted);
    if (d < best) {
      best = std::move(d);
      nearest = j;
    }
    gap = min(gap, abs(z - z_beta));
  }
  return {p,           predicted,   zs.zeros[nearest].rounded(prec), best * root_n, gap * root_n,
          factor * abs(chi.rounded(prec))};
}

SzegoReport szego_check(const ZeroSet& zs, std::size_t curve_points, Precision curve_precision) {
  const SectionParams& p = require_params(zs, "szego_check");
  if (p.r() >= p.n()) throw DomainError("szego_check needs r < n");
  if (zs.zeros.empty()) throw DomainError("szego_check needs at least one zero");
  const Precision prec = curve_precision;
  const PolarCurve curve = szego_curve(prec);
  const Polyline sample = sample_polar(curve, curve_points);
  const BigFloat scale(mpq_class(p.n() - p.r(), p.r()), prec);

  SzegoReport report{p, BigFloat::zero(prec), BigFloat::zero(prec), BigFloat::zero(prec), {}};
  report.rescaled.reserve(zs.zeros.size());
  bool first = true;
  for (const auto& z : zs.zeros) {
    BigComplex w = z.rounded(prec) * scale;
    const BigFloat modulus = abs(w);
    report.sup_distance = max(report.sup_distance, distance_to_polar(w, curve, sample));
    report.max_modulus = max(report.max_modulus, modulus);
    if (first || modulus < report.min_modulus) report.min_modulus = modulus;
    first = false;
    report.rescaled.push_back(std::move(w));
  }
  return report;
}

SzegoReport szego_check(long r, long n, Precision precision_bits) {
  const SectionParams p(r, n);
  if (r >= n) throw DomainError("szego_check needs r < n");
  return szego_check(find_zeros(p, precision_bits > 0 ? precision_bits : default_precision(n)));
}

HalflineRecord halfline_record(const ZeroSet& zs) {
  const SectionParams& p = require_params(zs, "halfline_record");
  const Precision prec = zs.precision_bits;
  const BigFloat half(0.5, prec);
  HalflineRecord rec{p, BigFloat::zero(prec), BigFloat::zero(prec), BigFloat::zero(prec)};
  bool first = true;
  for (const auto& z : zs.zeros) {
    BigFloat margin = z.re() + half;
    const BigFloat dev = abs(margin);
    rec.max_deviation = max(rec.max_deviation, dev);
    if (abs(z) <= 2L) rec.window_deviation = max(rec.window_deviation, dev);
    if (first || margin < rec.min_margin) rec.min_margin = std::move(margin);
    first = false;
  }
  return rec;
}

std::vector<HalflineRecord> halfline_check(const std::vector<long>& ns, long offset, Precision precision_bits) {
  if (offset < 1) throw DomainError("halfline_check needs offset >= 1");
  std::vector<SectionParams> params;
  params.reserve(ns.size());
  for (long n : ns) {
    if (n - offset < 1) throw DomainError("halfline_check needs n > offset, got n=" + std::to_string(n));
    params.emplace_back(n - offset, n);
  }
  std::vector<HalflineRecord> out;
  out.reserve(ns.size());
  for (const auto& p : params) {
    const Precision prec = precision_bits > 0 ? precision_bits : default_precision(p.n());
    out.push_back(halfline_record(find_zeros(p, prec)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json to_json(const RegionReport& report) {
  nlohmann::json zeros = nlohmann::json::array();
  for (const auto& rec : report.records) {
    zeros.push_back({{"zero", complex_json(rec.zero)},
                     {"margin_outer", rec.margin_outer.to_string()},
                     {"margin_circle", rec.margin_circle.to_string()},
                     {"margin_halfplane", rec.margin_halfplane.to_string()},
                     {"margin_curve", rec.margin_curve.to_string()}});
  }
  nlohmann::json worst = nlohmann::json::object();
  const auto w = report.worst_margins();
  if (w.size() == 4) {
    worst = {{"outer", w[0].to_string()}, {"circle", w[1].to_string()}, {"halfplane", w[2].to_string()},
             {"curve", w[3].to_string()}};
  }
  return {{"params", params_json(report.params)},
          {"precision_bits", report.precision_bits},
          {"tolerance", report.tolerance().to_string()},
          {"passed", report.passed()},
          {"worst", std::move(worst)},
          {"zeros", std::move(zeros)}};
}

nlohmann::json to_json(const RemainderBoundReport& report) {
  return {{"params", params_json(report.params)},
          {"samples", report.samples},
          {"holds", report.holds()},
          {"upper_holds", report.upper_holds},
          {"lower_holds", report.lower_holds},
          {"lower_corrected_holds", report.lower_corrected_holds},
          {"worst_upper_ratio", report.worst_upper_ratio.to_string(20)},
          {"worst_lower_ratio", report.worst_lower_ratio.to_string(20)},
          {"worst_lower_corrected_ratio", report.worst_lower_corrected_ratio.to_string(20)}};
}

nlohmann::json to_json(const ConvergenceRecord& record) {
  return {{"n", record.params.n()},
          {"r", record.params.r()},
          {"sup_distance", record.sup_distance.to_string()},
          {"rate_statistic", record.rate_statistic.to_string()},
          {"singular_gap", record.singular_gap.to_string()}};
}

nlohmann::json to_json(const SingularReport& report) {
  return {{"params", params_json(report.params)},
          {"predicted", complex_json(report.predicted)},
          {"nearest", complex_json(report.nearest)},
          {"deviation", report.deviation.to_string()},
          {"singular_gap", report.singular_gap.to_string()},
          {"predicted_gap", report.predicted_gap.to_string()}};
}

nlohmann::json to_json(const SzegoReport& report) {
  nlohmann::json rescaled = nlohmann::json::array();
  for (const auto& w : report.rescaled) rescaled.push_back(complex_json(w));
  return {{"params", params_json(report.params)},
          {"sup_distance", report.sup_distance.to_string()},
          {"max_modulus", report.max_modulus.to_string()},
          {"min_modulus", report.min_modulus.to_string()},
          {"rescaled", std::move(rescaled)}};
}

nlohmann::json to_json(const HalflineRecord& record) {
  return {{"n", record.params.n()},
          {"r", record.params.r()},
          {"max_deviation", record.max_deviation.to_string()},
          {"min_margin", record.min_margin.to_string()},
          {"window_deviation", record.window_deviation.to_string()}};
}

std::string sweep_csv(const std::vector<ConvergenceRecord>& records) {
  std::string out = "n,r,sup_distance,rate_statistic,singular_gap\n";
  for (const auto& rec : records) {
    out += std::to_string(rec.params.n()) + ',' + std::to_string(rec.params.r()) + ',' +
           rec.sup_distance.to_string() + ',' + rec.rate_statistic.to_string() + ',' + rec.singular_gap.to_string() +
           '\n';
  }
  return out;
}

}  // namespace binzeros
