#include "thetasum/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "thetasum/kahan.hpp"
#include "thetasum/theta.hpp"

namespace thetasum::verify {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEvalTol = 1e-14;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void validate_point(double a, double s) {
    if (!std::isfinite(a) || a < 0.0 || a > 0.5)
        throw std::domain_error("oracle requires canonical displacement; got a=" +
                                std::to_string(a));
    if (!std::isfinite(s) || s < 0.0)
        throw std::domain_error("oracle requires finite s >= 0; got s=" + std::to_string(s));
}

}  // namespace

double oracle_direct(double a, double s) {
    validate_point(a, s);
    if (s == 0.0) return a == 0.0 ? 1.0 : 0.0;
    const int depth = std::max(64, static_cast<int>(std::ceil(40.0 * s)));
    const double inv_s2 = 1.0 / (s * s);
    KahanAccumulator<double> acc;
    acc += std::exp(-(a * a) * inv_s2);
    for (int k = 1; k <= depth; ++k) {
        const double up = static_cast<double>(k) + a;
        const double dn = static_cast<double>(k) - a;
        acc += std::exp(-up * up * inv_s2);
        acc += std::exp(-dn * dn * inv_s2);
    }
    return static_cast<double>(acc);
}

double oracle_transformed(double a, double s) {
    validate_point(a, s);
    if (!(s > 0.0))
        throw std::domain_error("transformed oracle requires s > 0");
    const double q = kPi * kPi * s * s;
    const double phase = 2.0 * kPi * a;
    KahanAccumulator<double> acc;
    acc += 1.0;
    for (int k = 1; k <= 64; ++k) {
        const double kd = static_cast<double>(k);
        acc += 2.0 * std::exp(-q * kd * kd) * std::cos(phase * kd);
    }
    const double value = kSqrtPi * s * static_cast<double>(acc);
    return value < 0.0 ? 0.0 : value;
}

double oracle_eval(double a, double s) {
    validate_point(a, s);
    if (s == 0.0) return a == 0.0 ? 1.0 : 0.0;
    const double direct = oracle_direct(a, s);
    if (s > 2.0) {
        const double transformed = oracle_transformed(a, s);
        if (std::abs(direct - transformed) > 1e-13 * (1.0 + std::abs(direct)))
            throw std::runtime_error(
                "oracle representations disagree at a=" + std::to_string(a) +
                ", s=" + std::to_string(s) + ": direct=" + std::to_string(direct) +
                " transformed=" + std::to_string(transformed));
        return transformed;
    }
    return direct;
}

double oracle_deficit(double s) { return 1.0 - (oracle_eval(0.0, s) - kSqrtPi * s); }

double oracle_diff0_half(double s) { return oracle_eval(0.0, s) - oracle_eval(0.5, s); }

CheckReport check_functional_equation(const GridSpec& grid, double tol) {
    CheckReport rep;
    rep.name = "functional_equation";
    rep.threshold = tol;
    const Eigen::ArrayXd pts = grid.generate();
    rep.worst_point = pts[0];
    for (Eigen::Index i = 0; i < pts.size(); ++i) {
        const double s = pts[i];
        if (!(s > 0.0)) throw std::domain_error("functional equation requires s > 0");
        const double lhs = eval_auto({0.0, s, kEvalTol}).value;
        const double rhs = kSqrtPi * s * eval_auto({0.0, 1.0 / (kPi * s), kEvalTol}).value;
        const double residual = std::abs(lhs - rhs) / (1.0 + lhs);
        if (residual > rep.worst_residual) {
            rep.worst_residual = residual;
            rep.worst_point = s;
        }
    }
    rep.passed = rep.worst_residual <= rep.threshold;
    return rep;
}

CheckReport check_poisson_identity(double a, const GridSpec& grid, double tol) {
    char label[48];
    std::snprintf(label, sizeof label, "poisson_identity(a=%g)", a);
    CheckReport rep;
    rep.name = label;
    rep.threshold = tol;
    const Eigen::ArrayXd pts = grid.generate();
    rep.worst_point = pts[0];
    for (Eigen::Index i = 0; i < pts.size(); ++i) {
        const double s = pts[i];
        if (!(s > 0.0)) throw std::domain_error("poisson identity requires s > 0");
        const EvalReport d = eval_direct({a, s, kEvalTol});
        const EvalReport t = eval_transformed({a, s, kEvalTol});
        const double allowance = d.truncation_bound + t.truncation_bound;
        const double excess = std::abs(d.value - t.value) - allowance;
        if (excess > rep.worst_residual) {
            rep.worst_residual = excess;
            rep.worst_point = s;
        }
    }
    rep.worst_residual = std::max(rep.worst_residual, 0.0);
    rep.passed = rep.worst_residual <= rep.threshold;
    return rep;
}

CheckReport check_bounds(const GridSpec& grid) {
    CheckReport rep;
    rep.name = "bounds";
    rep.threshold = 0.0;
    const Eigen::ArrayXd pts = grid.generate();
    rep.worst_point = pts[0];
    double min_margin = std::numeric_limits<double>::infinity();
    double worst_violation = 0.0;
    bool all_strict = true;
    for (Eigen::Index i = 0; i < pts.size(); ++i) {
        const double s = pts[i];
        if (!(s > 0.0)) throw std::domain_error("bounds check requires s > 0");
        const double y0 = eval_auto({0.0, s, kEvalTol}).value;
        const double integral = kSqrtPi * s;
        const double lower_margin = y0 - integral;
        const double upper_margin = integral + 2.0 - y0;

        // Past s ~ 1.93 the true gap y0 - sqrt(pi)*s dips below one ulp of y0
        // and the double subtraction yields 0; strictness there is certified
        // by the leading correction term 2*sqrt(pi)*s*exp(-pi^2 s^2), which is
        // positive for every s (its logarithm is finite) and below resolution.
        bool lower_strict = lower_margin > 0.0;
        if (!lower_strict && lower_margin == 0.0) {
            const double correction = 2.0 * kSqrtPi * s * std::exp(-kPi * kPi * s * s);
            const double log_correction = std::log(2.0 * kSqrtPi * s) - kPi * kPi * s * s;
            lower_strict = std::isfinite(log_correction) &&
                           correction <= 4.0 * kEps * (1.0 + y0);
        }
        const bool upper_strict = upper_margin > 0.0;

        const double margin = std::min(lower_margin, upper_margin);
        if (margin < min_margin) {
            min_margin = margin;
            rep.worst_point = s;
        }
        if (!lower_strict || !upper_strict) {
            all_strict = false;
            const double violation = std::max(-lower_margin, -upper_margin);
            if (violation >= worst_violation) {
                worst_violation = violation;
                rep.worst_point = s;
            }
        }
    }
    rep.worst_residual = all_strict ? 0.0 : std::max(worst_violation, 0.0);
    rep.passed = all_strict;
    return rep;
}

CheckReport check_limits(double tol_small, double tol_large) {
    CheckReport rep;
    rep.name = "limits";
    rep.threshold = 1.0;

    // Scaled so that 1.0 is the pass boundary for each proxy point.
    const double small_scale = std::abs(eval_auto({0.0, 0.05, kEvalTol}).value - 1.0) / tol_small;
    const double crossover = std::abs(deficit(0.4, kEvalTol) / (kSqrtPi * 0.4) - 1.0) / 0.01;
    const double large_scale = std::abs(deficit(0.8, kEvalTol) - 1.0) / tol_large;

    rep.worst_residual = small_scale;
    rep.worst_point = 0.05;
    if (crossover > rep.worst_residual) {
        rep.worst_residual = crossover;
        rep.worst_point = 0.4;
    }
    if (large_scale > rep.worst_residual) {
        rep.worst_residual = large_scale;
        rep.worst_point = 0.8;
    }

    // Monotone approach of e(s) to 1 beyond s = 0.8, up to rounding noise.
    const Eigen::ArrayXd tail_pts = GridSpec::log_count(0.8, 20.0, 40).generate();
    double prev = std::abs(deficit(tail_pts[0], kEvalTol) - 1.0);
    for (Eigen::Index i = 1; i < tail_pts.size(); ++i) {
        const double cur = std::abs(deficit(tail_pts[i], kEvalTol) - 1.0);
        const double excess = cur - prev;
        if (excess > 1e-15) {
            const double scaled = 1.0 + excess / 1e-15;
            if (scaled > rep.worst_residual) {
                rep.worst_residual = scaled;
                rep.worst_point = tail_pts[i];
            }
        }
        prev = cur;
    }

    rep.passed = rep.worst_residual <= rep.threshold;
    return rep;
}

std::vector<CheckReport> run_all_checks(double tol) {
    std::vector<CheckReport> reports;
    const GridSpec log_grid = GridSpec::log_count(0.05, 20.0, 60);
    reports.push_back(check_functional_equation(log_grid, tol));
    for (const double a : {0.0, 0.1, 0.25, 0.5})
        reports.push_back(check_poisson_identity(a, log_grid, tol));
    reports.push_back(check_bounds(GridSpec::linear_step(0.01, 10.0, 0.01)));
    reports.push_back(check_limits());
    return reports;
}

}  // namespace thetasum::verify
