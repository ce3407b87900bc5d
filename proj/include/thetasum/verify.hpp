#pragma once

#include <string>
#include <vector>

#include "thetasum/grid.hpp"

namespace thetasum::verify {

/// Outcome of one numerical check; passed iff worst_residual <= threshold.
struct CheckReport {
    std::string name;
    bool passed = false;
    double worst_residual = 0.0;
    double worst_point = 0.0;
    double threshold = 0.0;
};

/// Brute-force direct summation at fixed depth max(64, ceil(40 s)),
/// compensated. Dominates every tolerance the library hands out for s <= 20.
double oracle_direct(double a, double s);

/// Transformed representation at fixed depth 64; requires s > 0.
double oracle_transformed(double a, double s);

/// Ground-truth value: the direct sum, cross-checked against the transformed
/// representation for s > 2 (relative agreement 1e-13, else throws exposing
/// both values) where the transformed side is returned as better conditioned.
double oracle_eval(double a, double s);

double oracle_deficit(double s);
double oracle_diff0_half(double s);

CheckReport check_functional_equation(const GridSpec& grid, double tol);
CheckReport check_poisson_identity(double a, const GridSpec& grid, double tol);
CheckReport check_bounds(const GridSpec& grid);
CheckReport check_limits(double tol_small = 1e-15, double tol_large = 0.006);

/// Full default suite: functional equation and Poisson identity on a 60-point
/// log grid over [0.05, 20] at `tol`, bracketing on (0, 10] step 0.01, and the
/// limit checks at their pinned thresholds.
std::vector<CheckReport> run_all_checks(double tol);

}  // namespace thetasum::verify
