#pragma once

// The limit curves |z|^alpha / |1+z| = K_alpha and their constants.
//
// C_alpha (inner branch) is the part of the level set with |z| <= alpha/(1-alpha);
// C'_alpha (outer branch) the part with |z| >= alpha/(1-alpha). Both are
// starlike with respect to 0, so every curve here is handled in polar form:
// for each ray angle theta there is exactly one radius on the branch.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "binzeros/bigfloat.hpp"
#include "json.hpp"

namespace binzeros {

/// A ratio strictly inside (0, 1).
class Alpha {
 public:
  Alpha(const mpq_class& value, Precision prec);
  explicit Alpha(BigFloat value);

  const BigFloat& value() const { return value_; }
  Precision precision() const { return value_.precision(); }
  /// z_alpha = alpha / (1 - alpha), where the inner curve meets the positive axis.
  BigFloat singular_point() const;
  /// 1 - alpha
  Alpha complement() const;

 private:
  BigFloat value_;
  std::optional<mpq_class> exact_;  // kept when constructed from a ratio
};

enum class Branch { inner, outer };

std::string to_string(Branch b);

/// K_alpha = alpha^alpha (1-alpha)^(1-alpha), in [1/2, 1).
BigFloat limit_constant(const Alpha& alpha);

/// The unique positive root of x e^(1+x) = 1 (0.278...).
BigFloat nu_constant(Precision prec);

/// X_alpha: C_alpha crosses the negative real axis at -X_alpha.
BigFloat negative_crossing(const Alpha& alpha);

/// |z|^alpha / |1+z| at the precision of z.
BigFloat level_value(const Alpha& alpha, const BigComplex& z);

/// Radius of the branch point on the ray at angle theta.
BigFloat ray_radius(const Alpha& alpha, Branch branch, const BigFloat& theta);

/// A closed starlike curve given by its radius along each ray.
struct PolarCurve {
  std::function<BigFloat(const BigFloat& theta)> radius;
  Precision precision;
};

PolarCurve alpha_curve(const Alpha& alpha, Branch branch);
/// The Szego curve |z e^(1-z)| = 1, |z| <= 1.
PolarCurve szego_curve(Precision prec);

/// Points at theta_j = 2 pi j / m, j = 0..m-1; the lower half mirrors the upper
/// half exactly.
struct Polyline {
  std::vector<BigFloat> thetas;
  std::vector<BigComplex> points;
};

Polyline sample_polar(const PolarCurve& curve, std::size_t m);

/// Distance from z to the curve: nearest polyline vertex, then a golden-section
/// search along the two adjacent arcs. Throws DensityError when adjacent
/// points are farther apart than `resolution`.
BigFloat distance_to_polar(const BigComplex& z, const PolarCurve& curve, const Polyline& sample,
                           double resolution = 0.05);

struct CurveSample {
  Alpha alpha;
  Branch branch;
  std::vector<BigFloat> thetas;
  std::vector<BigComplex> points;
  /// | level_value(z) - K_alpha | per point
  std::vector<BigFloat> residuals;

  Precision precision() const { return alpha.precision(); }
};

/// m >= 16 points on the branch, uniform in theta.
CurveSample sample_curve(const Alpha& alpha, Branch branch, std::size_t m);

BigFloat distance_to_curve(const BigComplex& z, const CurveSample& sample, double resolution = 0.05);

struct CurvePoint {
  long p;
  BigFloat theta;
  BigComplex zeta;
};

/// The points of C_alpha whose image under w = z^alpha / ((1+z) K_alpha), with
/// arg z taken in (0, 2 pi), has argument 2 pi p / n; one for each p with
/// 0 < p/n < alpha.
std::vector<CurvePoint> curve_points(const Alpha& alpha, long n);

/// arg w in (0, 2 pi alpha) for the map above.
BigFloat boundary_map_argument(const Alpha& alpha, const BigComplex& z);

/// Header "theta,re,im,residual".
std::string to_csv(const CurveSample& sample);
nlohmann::json to_json(const CurveSample& sample);

}  // namespace binzeros
