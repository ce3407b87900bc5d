#pragma once

#include <utility>

// Displaced Gaussian lattice sums
//
//     y_a(s) = sum over all integers k of exp(-(k+a)^2 / s^2)
//
// evaluated through two mutually dual series. The direct series above
// converges fast for small s (terms die off like exp(-k^2/s^2)). Poisson
// summation turns it into
//
//     y_a(s) = sqrt(pi) * s * [1 + 2 * sum_{k>=1} exp(-pi^2 s^2 k^2) cos(2 pi k a)]
//
// which converges fast for large s. Both need the same truncation depth at
// the self-dual scale s = 1/sqrt(pi), the natural switch point; eval_auto
// picks the cheaper side. Every evaluation carries a certified bound on the
// discarded tail, derived from the geometric decay of consecutive terms, so
// reported values come with a guaranteed absolute error budget.
//
// The a = 0 specialization satisfies the functional equation
// y_0(s) = sqrt(pi) * s * y_0(1/(pi s)) and the strict bracketing
// sqrt(pi) * s < y_0(s) < sqrt(pi) * s + 2.

namespace thetasum {

inline constexpr double kSqrtPi = 1.7724538509055160273;
inline constexpr double kSelfDualScale = 0.56418958354775628695;  // 1/sqrt(pi)
inline constexpr int kMaxTerms = 1000000;

enum class Method { Direct, Transformed };

const char* to_string(Method m);

/// Displacement a, scale s, and the requested absolute tolerance of the sum.
/// Evaluators require a canonical displacement (see canonicalize_displacement),
/// s >= 0, and tol >= 4 machine epsilons.
struct DisplacedSumInput {
    double a = 0.0;
    double s = 0.0;
    double tol = 1e-12;
};

/// Evaluation result: the sum, the representation that produced it, the
/// one-sided truncation index actually used, and the certified tail bound.
struct EvalReport {
    double value = 0.0;
    Method method = Method::Direct;
    int terms = 0;
    double truncation_bound = 0.0;
};

/// Integral analogue of the lattice sum: sqrt(pi) * s.
double poisson_integral(double s);

/// Reduces any finite displacement to the equivalent one in [0, 0.5].
/// The sum is invariant under a -> a + 1 and a -> -a.
double canonicalize_displacement(double a);

/// One-sided truncation index for the given representation, from the
/// closed-form decay budget. Throws when the index would exceed kMaxTerms,
/// naming the offending (s, tol).
int truncation_index(Method method, double s, double tol);

EvalReport eval_direct(const DisplacedSumInput& in);
EvalReport eval_transformed(const DisplacedSumInput& in);

/// Dispatches on the self-dual scale: direct for s <= 1/sqrt(pi),
/// transformed above.
EvalReport eval_auto(const DisplacedSumInput& in);

/// Deficit e(s) defined by y_0(s) = sqrt(pi) * s + 1 - e(s). Rises from 0
/// (like sqrt(pi) * s) to 1 across the crossover window.
double deficit(double s, double tol = 1e-12);

/// y_0(s) - y_{1/2}(s), the gap between the centered and the half-displaced
/// sums; 1 at s = 0, decays to 0 for large s.
double diff0_half(double s, double tol = 1e-12);

/// Strict bracketing of y_0(s): returns (sqrt(pi)*s, sqrt(pi)*s + 2).
std::pair<double, double> bounds(double s);

}  // namespace thetasum
