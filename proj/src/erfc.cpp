// erfc on the complex plane and its first zero.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "binzeros/errors.hpp"
#include "binzeros/verify.hpp"

namespace binzeros {

namespace {

struct Rect {
  double x0, x1, y0, y1;
};

double phase(const BigComplex& w) { return std::atan2(w.im().to_double(), w.re().to_double()); }

double wrap(double d) {
  while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
  while (d <= -std::numbers::pi) d += 2 * std::numbers::pi;
  return d;
}

// Change of arg erfc along the segment a -> b, refined until every step turns
// by less than pi/4.
double phase_change(std::complex<double> a, std::complex<double> b, Precision prec, int depth = 0) {
  auto at = [prec](std::complex<double> z) { return erfc(BigComplex(BigFloat(z.real(), prec), BigFloat(z.imag(), prec))); };
  const double pa = phase(at(a));
  const double pb = phase(at(b));
  const double d = wrap(pb - pa);
  if (std::abs(d) < std::numbers::pi / 4 || depth > 24) return d;
  const std::complex<double> mid = 0.5 * (a + b);
  return phase_change(a, mid, prec, depth + 1) + phase_change(mid, b, prec, depth + 1);
}

int zero_count(const Rect& q, Precision prec) {
  const std::complex<double> c[4] = {{q.x0, q.y0}, {q.x1, q.y0}, {q.x1, q.y1}, {q.x0, q.y1}};
  double total = 0;
  for (int e = 0; e < 4; ++e) {
    // Eight pieces per edge so the refinement starts from a sensible grid.
    for (int s = 0; s < 8; ++s) {
      const std::complex<double> a = c[e] + (c[(e + 1) % 4] - c[e]) * (s / 8.0);
      const std::complex<double> b = c[e] + (c[(e + 1) % 4] - c[e]) * ((s + 1) / 8.0);
      total += phase_change(a, b, prec);
    }
  }
  const double turns = total / (2 * std::numbers::pi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 0.1) throw NumericalError("argument principle count did not settle");
  return static_cast<int>(rounded);
}

BigComplex newton_erfc(BigComplex z, Precision prec) {
  const Precision wp = prec + 32;
  z = z.rounded(wp);
  const BigFloat scale = BigFloat(-2L, wp) / sqrt(BigFloat::pi(wp));
  const BigFloat tol = pow2(-static_cast<long>(prec) - 8, wp);
  for (int it = 0; it < 200; ++it) {
    const BigComplex f = erfc(z);
    const BigComplex df = exp(-(z * z)) * scale;
    const BigComplex step = f / df;
    z -= step;
    if (abs(step) <= tol * abs(z)) return z.rounded(prec);
  }
  throw NumericalError("Newton iteration for the erfc zero did not converge");
}

}  // namespace

BigComplex erfc(const BigComplex& z) {
  const Precision prec = z.precision();
  const double m2 = norm(z).to_double();
  // The series cancels down from about e^{|z|^2}.
  const Precision wp = prec + 32 + static_cast<Precision>(std::ceil(m2 * std::numbers::log2e));
  const BigComplex x = z.rounded(wp);
  const BigComplex x2 = x * x;
  BigComplex term = x;
  BigComplex sum = x;
  const BigFloat tol = pow2(-static_cast<long>(wp), wp);
  for (long k = 1;; ++k) {
    term = -(term * x2) / BigFloat(k, wp);
    sum += term / BigFloat(2 * k + 1, wp);
    if (static_cast<double>(k) > m2 && abs(term) < tol) break;
  }
  const BigFloat c = BigFloat(2L, wp) / sqrt(BigFloat::pi(wp));
  return (BigComplex(BigFloat(1L, wp)) - sum * c).rounded(prec);
}

BigComplex erfc_zero(Precision prec) {
  if (prec < 53) throw DomainError("erfc_zero needs at least 53 bits");
  constexpr Precision search_prec = 64;
  // erfc has no real zeros, and its zeros near the origin sit in the left
  // half-plane; this box holds the first one and its neighbour.
  std::vector<Rect> pending{{-3.0, 3.0, 0.0, 3.0}};
  std::vector<Rect> isolated;
  while (!pending.empty()) {
    const Rect q = pending.back();
    pending.pop_back();
    const int count = zero_count(q, search_prec);
    if (count == 0) continue;
    const double w = q.x1 - q.x0;
    const double h = q.y1 - q.y0;
    if (count == 1 && std::max(w, h) < 0.25) {
      isolated.push_back(q);
      continue;
    }
    if (std::max(w, h) < 1e-6) throw NumericalError("erfc zeros could not be separated");
    // Off-centre split so that the cut never lands exactly on a symmetric point.
    if (w >= h) {
      const double xm = q.x0 + 0.4999 * w;
      pending.push_back({q.x0, xm, q.y0, q.y1});
      pending.push_back({xm, q.x1, q.y0, q.y1});
    } else {
      const double ym = q.y0 + 0.4999 * h;
      pending.push_back({q.x0, q.x1, q.y0, ym});
      pending.push_back({q.x0, q.x1, ym, q.y1});
    }
  }
  if (isolated.empty()) throw NumericalError("no erfc zero found in the search box");

  bool have = false;
  BigComplex best = BigComplex::zero(prec);
  for (const auto& q : isolated) {
    const BigComplex start(BigFloat(0.5 * (q.x0 + q.x1), prec), BigFloat(0.5 * (q.y0 + q.y1), prec));
    BigComplex z = newton_erfc(start, prec);
    if (!have || abs(z) < abs(best)) best = std::move(z);
    have = true;
  }
  if (!(abs(erfc(best)) < pow2(-static_cast<long>(prec / 2), prec))) {
    throw NumericalError("erfc zero residual above tolerance");
  }
  return best;
}

}  // namespace binzeros
