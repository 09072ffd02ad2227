#include "binzeros/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "binzeros/errors.hpp"
#include "bracket.hpp"

namespace binzeros {

namespace {

constexpr Precision kGuardBits = 16;

void check_open_unit(const BigFloat& v) {
  if (!(v > 0L) || !(v < 1L)) throw DomainError("alpha must lie strictly inside (0, 1), got " + v.to_string(10));
}

// phi(r) = alpha ln r - ln|1 + r e^{i theta}| - ln K on a ray with cos(theta) = c.
std::pair<BigFloat, BigFloat> ray_phi(const BigFloat& a, const BigFloat& c, const BigFloat& log_k, const BigFloat& r) {
  const BigFloat q = 1L + r * (ldexp(c, 1) + r);
  BigFloat f = a * log(r) - ldexp(log(q), -1) - log_k;
  BigFloat df = a / r - (c + r) / q;
  return {std::move(f), std::move(df)};
}

// The positive root of (a-1) r^2 + (2a-1) c r + a = 0, where c_theta peaks.
BigFloat ray_peak(const BigFloat& a, const BigFloat& c) {
  const BigFloat b = (ldexp(a, 1) - 1L) * c;
  const BigFloat disc = b * b + ldexp(a * (1L - a), 2);
  return (b + sqrt(disc)) / ldexp(1L - a, 1);
}

BigFloat ray_radius_guarded(const BigFloat& a, Branch branch, const BigFloat& theta, Precision prec) {
  const BigFloat z_alpha = a / (1L - a);
  const BigFloat c = cos(theta);
  if (c == 1L) return z_alpha;
  const BigFloat log_k = a * log(a) + (1L - a) * log(1L - a);
  auto phi = [&](const BigFloat& r) { return ray_phi(a, c, log_k, r); };
  const BigFloat peak = ray_peak(a, c);

  if (branch == Branch::inner) {
    const BigFloat hi = min(peak, z_alpha);
    if (phi(hi).first.sign() <= 0) return hi;
    return detail::solve_bracketed(phi, BigFloat::zero(prec), hi, true, prec);
  }
  const BigFloat lo = max(peak, z_alpha);
  if (phi(lo).first.sign() <= 0) return lo;
  BigFloat hi = ldexp(lo, 1);
  while (phi(hi).first.sign() > 0) hi = ldexp(hi, 1);
  return detail::solve_bracketed(phi, lo, hi, false, prec);
}

BigFloat two_pi(Precision prec) { return ldexp(BigFloat::pi(prec), 1); }

}  // namespace

Alpha::Alpha(const mpq_class& value, Precision prec) : value_(value, prec), exact_(value) {
  if (value <= 0 || value >= 1) throw DomainError("alpha must lie strictly inside (0, 1), got " + value.get_str());
}

Alpha::Alpha(BigFloat value) : value_(std::move(value)) { check_open_unit(value_); }

BigFloat Alpha::singular_point() const {
  if (exact_) return BigFloat(mpq_class(*exact_ / (1 - *exact_)), precision());
  return value_ / (1L - value_);
}

Alpha Alpha::complement() const {
  if (exact_) return Alpha(mpq_class(1 - *exact_), precision());
  return Alpha(1L - value_);
}

std::string to_string(Branch b) { return b == Branch::inner ? "inner" : "outer"; }

BigFloat limit_constant(const Alpha& alpha) {
  const Precision prec = alpha.precision();
  const BigFloat a = alpha.value().rounded(prec + kGuardBits);
  const BigFloat b = 1L - a;
  return (pow(a, a) * pow(b, b)).rounded(prec);
}

BigFloat nu_constant(Precision prec) {
  const Precision wp = prec + kGuardBits;
  // ln x + 1 + x = 0 is increasing in x.
  auto f = [](const BigFloat& x) {
    BigFloat v = log(x) + 1L + x;
    BigFloat dv = 1L / x + 1L;
    return std::pair{std::move(v), std::move(dv)};
  };
  return detail::solve_bracketed(f, BigFloat(0.2, wp), BigFloat(0.4, wp), true, wp).rounded(prec);
}

BigFloat negative_crossing(const Alpha& alpha) {
  const Precision prec = alpha.precision();
  const Precision wp = prec + kGuardBits;
  const Alpha a(alpha.value().rounded(wp));
  const BigFloat k = limit_constant(a);
  // f(t) = t^alpha + K (t - 1), increasing on (0, 1).
  auto f = [&](const BigFloat& t) {
    const BigFloat ta = pow(t, a.value());
    BigFloat v = ta + k * (t - 1L);
    BigFloat dv = a.value() * ta / t + k;
    return std::pair{std::move(v), std::move(dv)};
  };
  const BigFloat lo = nu_constant(wp) * a.value();
  return detail::solve_bracketed(f, lo, BigFloat(0.5, wp), true, wp).rounded(prec);
}

BigFloat level_value(const Alpha& alpha, const BigComplex& z) {
  const BigFloat modulus = abs(z);
  if (modulus.is_zero()) return BigFloat::zero(z.precision());
  return exp(alpha.value() * log(modulus)) / abs(z + BigFloat(1L, z.precision()));
}

BigFloat ray_radius(const Alpha& alpha, Branch branch, const BigFloat& theta) {
  const Precision prec = std::max(alpha.precision(), theta.precision());
  const Precision wp = prec + kGuardBits;
  return ray_radius_guarded(alpha.value().rounded(wp), branch, theta.rounded(wp), wp).rounded(prec);
}

PolarCurve alpha_curve(const Alpha& alpha, Branch branch) {
  return {[alpha, branch](const BigFloat& theta) { return ray_radius(alpha, branch, theta); }, alpha.precision()};
}

PolarCurve szego_curve(Precision prec) {
  auto radius = [prec](const BigFloat& theta) {
    const Precision wp = prec + kGuardBits;
    const BigFloat c = cos(theta.rounded(wp));
    if (c == 1L) return BigFloat(1L, prec);
    // ln t + 1 - t cos(theta) = 0, increasing on (0, 1].
    auto f = [&](const BigFloat& t) {
      BigFloat v = log(t) + 1L - t * c;
      BigFloat dv = 1L / t - c;
      return std::pair{std::move(v), std::move(dv)};
    };
    return detail::solve_bracketed(f, BigFloat::zero(wp), BigFloat(1L, wp), true, wp).rounded(prec);
  };
  return {radius, prec};
}

Polyline sample_polar(const PolarCurve& curve, std::size_t m) {
  if (m < 2) throw DomainError("a polar sample needs at least 2 points");
  const Precision prec = curve.precision;
  Polyline out;
  out.thetas.reserve(m);
  out.points.reserve(m);
  const BigFloat full = two_pi(prec);
  for (std::size_t j = 0; j < m; ++j) out.thetas.push_back(full * static_cast<long>(j) / static_cast<long>(m));
  out.points.assign(m, BigComplex::zero(prec));
  for (std::size_t j = 0; 2 * j <= m; ++j) {
    const BigFloat r = curve.radius(out.thetas[j]);
    if (j == 0) {
      out.points[j] = BigComplex(r);
    } else if (2 * j == m) {
      out.points[j] = BigComplex(-r);
    } else {
      out.points[j] = BigComplex::polar(r, out.thetas[j]);
      out.points[m - j] = conj(out.points[j]);
    }
  }
  return out;
}

BigFloat distance_to_polar(const BigComplex& z, const PolarCurve& curve, const Polyline& sample, double resolution) {
  const std::size_t m = sample.points.size();
  if (m < 2) throw DomainError("empty curve sample");
  const Precision prec = std::max(curve.precision, z.precision());

  BigFloat spacing = BigFloat::zero(prec);
  for (std::size_t j = 0; j < m; ++j) spacing = max(spacing, abs(sample.points[(j + 1) % m] - sample.points[j]));
  if (spacing > resolution) {
    const auto required = static_cast<std::size_t>(std::ceil(1.5 * static_cast<double>(m) * spacing.to_double() / resolution)) + 1;
    throw DensityError("curve sample of " + std::to_string(m) + " points has spacing " + spacing.to_string(4) +
                           " above resolution; use at least " + std::to_string(required) + " points",
                       required);
  }

  std::size_t nearest = 0;
  BigFloat best = abs(z - sample.points[0]);
  for (std::size_t j = 1; j < m; ++j) {
    BigFloat d = abs(z - sample.points[j]);
    if (d < best) {
      best = std::move(d);
      nearest = j;
    }
  }

  // Golden-section search on [theta_i - h, theta_i + h], h = 2 pi / m.
  const BigFloat h = two_pi(prec) / static_cast<long>(m);
  auto dist = [&](const BigFloat& theta) { return abs(z - BigComplex::polar(curve.radius(theta), theta)); };
  const BigFloat inv_phi = (sqrt(BigFloat(5L, prec)) - 1L) / 2L;
  BigFloat a = sample.thetas[nearest] - h;
  BigFloat b = sample.thetas[nearest] + h;
  BigFloat c = b - inv_phi * (b - a);
  BigFloat d = a + inv_phi * (b - a);
  BigFloat fc = dist(c);
  BigFloat fd = dist(d);
  for (int it = 0; it < 60; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = dist(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = dist(d);
    }
  }
  return min(best, min(fc, fd));
}

CurveSample sample_curve(const Alpha& alpha, Branch branch, std::size_t m) {
  if (m < 16) throw DomainError("sample_curve needs m >= 16, got " + std::to_string(m));
  Polyline line = sample_polar(alpha_curve(alpha, branch), m);
  const BigFloat k = limit_constant(alpha);
  CurveSample out{alpha, branch, std::move(line.thetas), std::move(line.points), {}};
  out.residuals.reserve(m);
  for (const auto& z : out.points) out.residuals.push_back(abs(level_value(alpha, z) - k));
  return out;
}

BigFloat distance_to_curve(const BigComplex& z, const CurveSample& sample, double resolution) {
  const Polyline line{sample.thetas, sample.points};
  return distance_to_polar(z, alpha_curve(sample.alpha, sample.branch), line, resolution);
}

BigFloat boundary_map_argument(const Alpha& alpha, const BigComplex& z) {
  return alpha.value() * arg_positive_cut(z) - arg(z + BigFloat(1L, z.precision()));
}

std::vector<CurvePoint> curve_points(const Alpha& alpha, long n) {
  if (n < 2) throw DomainError("curve_points needs n >= 2");
  const Precision prec = alpha.precision();
  const BigFloat full = two_pi(prec);
  std::vector<CurvePoint> out;
  auto point_at = [&](const BigFloat& theta) {
    return BigComplex::polar(ray_radius(alpha, Branch::inner, theta), theta);
  };
  const int steps = static_cast<int>(prec / 2) + 24;
  for (long p = 1; BigFloat(p, prec) / n < alpha.value(); ++p) {
    const BigFloat target = full * p / n;
    // alpha * theta - arg(1 + z(theta)) increases from 0 to 2 pi alpha.
    auto g = [&](const BigFloat& theta) { return boundary_map_argument(alpha, point_at(theta)) - target; };
    BigFloat theta = detail::bisect(g, BigFloat::zero(prec), full, true, steps);
    BigComplex zeta = point_at(theta);
    out.push_back({p, std::move(theta), std::move(zeta)});
  }
  return out;
}

std::string to_csv(const CurveSample& sample) {
  std::string out = "theta,re,im,residual\n";
  for (std::size_t j = 0; j < sample.points.size(); ++j) {
    out += sample.thetas[j].to_string() + ',' + sample.points[j].re().to_string() + ',' +
           sample.points[j].im().to_string() + ',' + sample.residuals[j].to_string() + '\n';
  }
  return out;
}

nlohmann::json to_json(const CurveSample& sample) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t j = 0; j < sample.points.size(); ++j) {
    points.push_back({{"theta", sample.thetas[j].to_string()},
                      {"re", sample.points[j].re().to_string()},
                      {"im", sample.points[j].im().to_string()},
                      {"residual", sample.residuals[j].to_string()}});
  }
  return {{"alpha", sample.alpha.value().to_string()},
          {"branch", to_string(sample.branch)},
          {"precision_bits", sample.precision()},
          {"points", std::move(points)}};
}

}  // namespace binzeros
