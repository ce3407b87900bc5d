#include "thetasum/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thetasum {
namespace {

// 1 / (1 + e^x), evaluated on the non-overflowing branch; saturates to 0 or 1.
double inv_one_plus_exp(double x) {
    if (x > 0.0) {
        const double t = std::exp(-x);
        return t / (1.0 + t);
    }
    return 1.0 / (1.0 + std::exp(x));
}

Eigen::ArrayXd sigmoid_array(const SigmoidParams& p, const Eigen::ArrayXd& s) {
    Eigen::ArrayXd out(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) out[i] = sigmoid_value(p, s[i]);
    return out;
}

double sum_squares(const Eigen::ArrayXd& r) { return (r * r).sum(); }

ResidualStats stats_from_samples(const Eigen::ArrayXd& s, const Eigen::ArrayXd& r) {
    ResidualStats st;
    st.n_points = static_cast<int>(s.size());
    st.argmax = s[0];
    double sumsq = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        const double d = std::abs(r[i]);
        sumsq += r[i] * r[i];
        if (d > st.sup_abs) {
            st.sup_abs = d;
            st.argmax = s[i];
        }
    }
    st.rms = std::sqrt(sumsq / static_cast<double>(s.size()));
    return st;
}

void validate_samples(const Eigen::ArrayXd& s, const Eigen::ArrayXd& y) {
    if (s.size() != y.size())
        throw std::invalid_argument("sample abscissae and ordinates differ in length");
    if (s.size() < 5)
        throw std::invalid_argument("sigmoid fit needs at least 5 samples; got " +
                                    std::to_string(s.size()));
    std::vector<double> sorted(s.data(), s.data() + s.size());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("sample abscissae must be distinct");
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (!std::isfinite(s[i]) || !std::isfinite(y[i]))
            throw std::invalid_argument("samples must be finite");
}

constexpr int kMaxIterations = 10000;
constexpr double kRelTol = 1e-10;

// Damped least squares with diagonal (Marquardt) scaling; accepted steps
// never increase the objective.
FitResult run_damped_lsq(const Eigen::ArrayXd& s, const Eigen::ArrayXd& y, SigmoidParams p) {
    const Eigen::Index n = s.size();
    FitResult out;
    out.params = p;

    Eigen::Vector4d pv(p.plateau, p.amplitude, p.center, p.width);
    Eigen::ArrayXd r = sigmoid_array(p, s) - y;
    double sse = sum_squares(r);
    out.objective_trace.push_back(sse);

    const double sse_floor = 1e-30 * static_cast<double>(n);
    double lambda = 1e-3;
    int iter = 0;
    bool converged = sse <= sse_floor;

    while (!converged && iter < kMaxIterations) {
        ++iter;
        const SigmoidParams cur{pv[0], pv[1], pv[2], pv[3]};
        Eigen::MatrixXd jac(n, 4);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double x = (s[i] - cur.center) / cur.width;
            const double sig = inv_one_plus_exp(x);
            const double slope = sig * (1.0 - sig);
            jac(i, 0) = 1.0;
            jac(i, 1) = -sig;
            jac(i, 2) = -cur.amplitude * slope / cur.width;
            jac(i, 3) = -cur.amplitude * slope * (s[i] - cur.center) / (cur.width * cur.width);
        }
        const Eigen::Matrix4d jtj = jac.transpose() * jac;
        const Eigen::Vector4d jtr = jac.transpose() * r.matrix();

        if (jtr.lpNorm<Eigen::Infinity>() <= 1e-16 * (1.0 + sse)) {
            converged = true;
            break;
        }

        bool accepted = false;
        while (iter < kMaxIterations) {
            Eigen::Matrix4d damped = jtj;
            for (int d = 0; d < 4; ++d)
                damped(d, d) += lambda * std::max(jtj(d, d), 1e-12);
            const Eigen::Vector4d step = damped.ldlt().solve(-jtr);

            const Eigen::Vector4d cand = pv + step;
            if (cand[3] > 0.0 && cand.allFinite()) {
                const SigmoidParams q{cand[0], cand[1], cand[2], cand[3]};
                const Eigen::ArrayXd rq = sigmoid_array(q, s) - y;
                const double sse_q = sum_squares(rq);
                if (sse_q <= sse) {
                    double rel_step = 0.0;
                    for (int d = 0; d < 4; ++d)
                        rel_step = std::max(rel_step, std::abs(step[d]) / (1.0 + std::abs(pv[d])));
                    const bool small_step = rel_step < kRelTol;
                    const bool small_decrease = (sse - sse_q) < kRelTol * (1.0 + sse);
                    pv = cand;
                    r = rq;
                    sse = sse_q;
                    out.objective_trace.push_back(sse);
                    lambda = std::max(lambda * 0.1, 1e-15);
                    accepted = true;
                    if ((small_step && small_decrease) || sse <= sse_floor) converged = true;
                    break;
                }
            }
            lambda *= 10.0;
            ++iter;
            if (lambda > 1e14) break;  // stalled; no further step can be accepted
        }
        if (!accepted && !converged) break;
    }

    out.params = SigmoidParams{pv[0], pv[1], pv[2], pv[3]};
    out.iterations = iter;
    out.converged = converged;
    out.residuals = stats_from_samples(s, r);
    return out;
}

}  // namespace

SigmoidParams SigmoidParams::reference() {
    return SigmoidParams{1.00582, 0.71664, 0.36712, 0.10290};
}

StretchedLogisticParams StretchedLogisticParams::reference() {
    return StretchedLogisticParams{0.45, 0.088, 1.29};
}

FitNonConvergence::FitNonConvergence(const std::string& what, FitResult best)
    : std::runtime_error(what), best_(std::move(best)) {}

double sigmoid_value(const SigmoidParams& p, double s) {
    return p.plateau - p.amplitude * inv_one_plus_exp((s - p.center) / p.width);
}

double stretched_logistic_value(const StretchedLogisticParams& p, double s) {
    const double u = s - p.center;
    if (u == 0.0) return 0.5;
    const double z = std::pow(std::abs(u) / p.width, p.exponent);
    return inv_one_plus_exp(u > 0.0 ? z : -z);
}

FitResult fit_sigmoid(const Eigen::ArrayXd& s, const Eigen::ArrayXd& y,
                      const SigmoidParams& init) {
    validate_samples(s, y);
    if (!(init.width > 0.0)) throw std::invalid_argument("initial width must be positive");
    FitResult res = run_damped_lsq(s, y, init);
    if (!res.converged)
        throw FitNonConvergence("sigmoid fit did not converge within " +
                                    std::to_string(kMaxIterations) + " iterations",
                                std::move(res));
    return res;
}

FitResult fit_sigmoid(const Eigen::ArrayXd& s, const Eigen::ArrayXd& y) {
    validate_samples(s, y);
    SigmoidParams init{1.0, 0.7, 0.4, 0.1};
    FitResult best = run_damped_lsq(s, y, init);
    if (best.converged) return best;
    for (const double center : {0.3, 0.4, 0.5}) {
        SigmoidParams retry = init;
        retry.center = center;
        FitResult res = run_damped_lsq(s, y, retry);
        if (res.converged) return res;
        if (res.residuals.rms < best.residuals.rms) best = std::move(res);
    }
    throw FitNonConvergence("sigmoid fit did not converge from any start", std::move(best));
}

ResidualStats residual_report(const std::function<double(double)>& candidate,
                              const std::function<double(double)>& truth,
                              const GridSpec& grid) {
    const Eigen::ArrayXd pts = grid.generate();
    Eigen::ArrayXd diff(pts.size());
    for (Eigen::Index i = 0; i < pts.size(); ++i) {
        const double c = candidate(pts[i]);
        const double t = truth(pts[i]);
        if (!std::isfinite(c) || !std::isfinite(t))
            throw std::runtime_error("non-finite value in residual sweep at s=" +
                                     std::to_string(pts[i]));
        diff[i] = c - t;
    }
    return stats_from_samples(pts, diff);
}

}  // namespace thetasum
