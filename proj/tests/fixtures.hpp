#pragma once

// Frozen reference values. Each was produced once by an independent route
// (exact rational arithmetic, mpmath, or the empirical sweep noted) and is not
// recomputed by the code under test.

namespace binzeros::fixtures {

// Exact binomial tail for (r, n) = (10, 30), from Python fractions.
inline constexpr const char* kTail10_30 = "28498105433491/68630377364883";

// First zero of erfc in the upper half-plane, mpmath findroot at 40 digits.
inline constexpr const char* kChiRe = "-1.354810128112006248899850540891001595471";
inline constexpr const char* kChiIm = "1.991466842833879577282157842621640294526";

// Twice the largest rate statistic over alpha = 1/3, n = 30, 60, ..., 300
// (the maximum, 0.334150, occurs at n = 120).
inline constexpr double kRateBound = 0.6683;

// Half the smallest modulus of the rescaled zeros of B_{10,1000} and
// B_{20,2000} (0.321373, attained for n = 2000).
inline constexpr double kSzegoEta = 0.1606;

}  // namespace binzeros::fixtures
