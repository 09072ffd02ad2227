#pragma once

// Numerical checks of the zero-location results: the bounding region, the
// two coefficient lemmas, and the asymptotic statements (limit curve, rate near
// the singular point, the Szego regime r/n -> 0 and the half-line r/n -> 1).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "binzeros/bigfloat.hpp"
#include "binzeros/exactpoly.hpp"
#include "binzeros/solver.hpp"
#include "json.hpp"

namespace binzeros {

// ---------------------------------------------------------------------------
// Bounding region

struct RegionRecord {
  BigComplex zero;
  /// r/(n+1-r) - |z|
  BigFloat margin_outer;
  /// gamma/(1-gamma^2) - |z - gamma^2/(1-gamma^2)|, gamma = r/(n-1)
  BigFloat margin_circle;
  /// Re z + 1/2
  BigFloat margin_halfplane;
  /// |z|^beta / |1+z| - K_beta, beta = r/n; positive outside C_beta
  BigFloat margin_curve;
};

struct RegionReport {
  SectionParams params;
  Precision precision_bits;
  std::vector<RegionRecord> records;

  /// -2^(-precision/4)
  BigFloat tolerance() const;
  bool passed() const;
  /// Smallest of each margin over all zeros, in record field order.
  std::vector<BigFloat> worst_margins() const;
};

/// Throws HypothesisError unless the set is labelled and 1 <= r < n-1.
RegionReport check_region(const ZeroSet& zs);

struct VietaReport {
  /// |sum z + r/(n-r+1)|, or for a generic polynomial |sum z + a_{d-1}/a_d|
  BigFloat sum_error;
  /// |prod z / ((-1)^d a_0/a_d) - 1|
  BigFloat product_error;
};

VietaReport vieta_check(const ZeroSet& zs);

/// max |z| - alpha/(1-alpha) over m points of the limiting gamma-circle
/// |z - alpha^2/(1-alpha^2)| = alpha/(1-alpha^2); <= 0 means it sits inside the
/// limiting outer disk.
BigFloat nested_circle_excess(const mpq_class& alpha, std::size_t m, Precision prec);

// ---------------------------------------------------------------------------
// Coefficient lemmas

/// Throws DomainError naming the first index where
/// b_0 > b_1 >= 0, b_k >= 0, b_1 b_{k-1} - b_0 b_k >= 0 fails.
void check_admissible(const std::vector<mpq_class>& b);

struct CoefficientBoundReport {
  bool holds = false;
  /// min |f| over the boundary samples
  BigFloat min_modulus;
  /// (b_0 - b_1)/(b_0 + b_1) f(1)
  BigFloat bound;
};

/// Samples |f| at `trials` roots of unity (the minimum over the closed disk
/// sits on the boundary) and compares against the bound with slack 2^-64.
CoefficientBoundReport check_coefficient_bound(const std::vector<mpq_class>& b, std::size_t trials);

/// b_k = C(n, k+r+1) (r/(n-r))^k, k = 0..n-r-1; the rescaled remainder.
std::vector<mpq_class> remainder_coefficients(const SectionParams& p);

struct RemainderBoundReport {
  SectionParams params;
  std::size_t samples = 0;
  bool upper_holds = false;
  /// The lower bound |R(z)| >= |z|/(r+1) K^-n T as stated.
  bool lower_holds = false;
  /// The same bound carrying the factor (1-beta)/beta that the rescaling
  /// g(z) = ((1-beta)/(beta z)) R(beta z/(1-beta)) produces.
  bool lower_corrected_holds = false;
  /// max |R(z)| / upper
  BigFloat worst_upper_ratio;
  /// min |R(z)| / lower over z != 0
  BigFloat worst_lower_ratio;
  BigFloat worst_lower_corrected_ratio;

  /// Upper and stated lower bound.
  bool holds() const { return upper_holds && lower_holds; }
};

/// Draws `z_samples` points from the closed disk |z| <= beta/(1-beta) with a
/// fixed seed, a fifth of them on the boundary circle, plus z = beta/(1-beta).
RemainderBoundReport check_remainder_bound(const SectionParams& p, std::size_t z_samples, std::uint64_t seed = 0x5eed);

/// sum_{k>r} C(n,k) beta^k (1-beta)^(n-k) as an exact rational.
mpq_class tail_sum_exact(const SectionParams& p);
BigFloat tail_sum(const SectionParams& p, Precision prec = 128);

// ---------------------------------------------------------------------------
// Asymptotics

/// r = floor(alpha n + 1/2); throws HypothesisError unless 1 <= r < n-1.
SectionParams nearest_section(const mpq_class& alpha, long n);

struct ConvergenceRecord {
  SectionParams params;
  /// max over zeros of d(z, C_beta)
  BigFloat sup_distance;
  /// max over zeros of d(z, C_beta) |z - z_beta| n / ln n
  BigFloat rate_statistic;
  /// min over zeros of |z - z_beta| sqrt(n)
  BigFloat singular_gap;
};

struct SweepOptions {
  /// 0 selects the solver default per n.
  Precision precision_bits = 0;
  std::size_t curve_points = 512;
  Precision curve_precision = 128;
};

ConvergenceRecord convergence_record(const ZeroSet& zs, const SweepOptions& options = {});
std::vector<ConvergenceRecord> convergence_sweep(const mpq_class& alpha, const std::vector<long>& ns,
                                                 const SweepOptions& options = {});

/// Indices i where sup_distance[i] >= sup_distance[i-1].
std::vector<std::size_t> sweep_inversions(const std::vector<ConvergenceRecord>& records);

/// erfc by its entire series, at the precision of z.
BigComplex erfc(const BigComplex& z);

/// The zero of erfc closest to the origin, taken in the upper half-plane.
BigComplex erfc_zero(Precision prec);

struct SingularReport {
  SectionParams params;
  /// z_beta + sqrt(2 beta/(1-beta)^3) chi / sqrt(n)
  BigComplex predicted;
  /// The zero nearest to `predicted`.
  BigComplex nearest;
  /// |nearest - predicted| sqrt(n)
  BigFloat deviation;
  /// min |z - z_beta| sqrt(n) over all zeros
  BigFloat singular_gap;
  /// sqrt(2 beta/(1-beta)^3) |chi|
  BigFloat predicted_gap;
};

SingularReport singular_check(const ZeroSet& zs, const BigComplex& chi);

struct SzegoReport {
  SectionParams params;
  /// max distance of the rescaled zeros w = z (n-r)/r to the Szego curve
  BigFloat sup_distance;
  BigFloat max_modulus;
  BigFloat min_modulus;
  std::vector<BigComplex> rescaled;
};

SzegoReport szego_check(const ZeroSet& zs, std::size_t curve_points = 512, Precision curve_precision = 128);
SzegoReport szego_check(long r, long n, Precision precision_bits = 0);

struct HalflineRecord {
  SectionParams params;
  /// max |Re z + 1/2|
  BigFloat max_deviation;
  /// min (Re z + 1/2)
  BigFloat min_margin;
  /// max |Re z + 1/2| over zeros with |z| <= 2
  BigFloat window_deviation;
};

HalflineRecord halfline_record(const ZeroSet& zs);
/// r = n - offset for each n.
std::vector<HalflineRecord> halfline_check(const std::vector<long>& ns, long offset = 3, Precision precision_bits = 0);

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json to_json(const RegionReport& report);
nlohmann::json to_json(const RemainderBoundReport& report);
nlohmann::json to_json(const ConvergenceRecord& record);
nlohmann::json to_json(const SingularReport& report);
nlohmann::json to_json(const SzegoReport& report);
nlohmann::json to_json(const HalflineRecord& record);
/// Header "n,r,sup_distance,rate_statistic,singular_gap".
std::string sweep_csv(const std::vector<ConvergenceRecord>& records);

}  // namespace binzeros
