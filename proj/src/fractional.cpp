#include "heatkern/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "heatkern/quad.hpp"
#include "heatkern/specfun.hpp"

namespace heatkern::fractional {

namespace {

constexpr double kPi = std::numbers::pi;

// Euclidean Riesz limit of d^{n+2a} int_0^inf (4 pi t)^{-n/2} e^{-d^2/4t} t^{-1-a} dt.
double euclidean_limit_constant(int n, double alpha) {
    return std::pow(4.0, alpha) * std::tgamma(0.5 * n + alpha) / std::pow(kPi, 0.5 * n);
}

// Upper incomplete gamma bound: Gamma(s, u) <= 2 u^{s-1} e^{-u} for u >= 2s.
double upper_gamma_bound(double s, double u) {
    if (u < 2.0 * s) return std::numeric_limits<double>::infinity();
    return 2.0 * std::pow(u, s - 1.0) * std::exp(-u);
}

void require_cm(const CMFunction& F, const char* who) {
    // default probe grid spans the eigenvalue range the sums actually use
    const std::vector<double> grid{0.5, 1.0, 2.0, 5.0, 12.0, 30.0, 80.0};
    const int orders = std::min(F.derivative_orders_checkable, 8);
    const double h = 0.05;
    CMCheckReport rep = completely_monotonic_check(F.F, orders, grid, h);
    if (!rep.pass)
        throw std::invalid_argument(std::string(who) +
                                    ": F failed the complete-monotonicity check");
}

}  // namespace

CMCheckReport completely_monotonic_check(const std::function<double(double)>& F,
                                         int orders, const std::vector<double>& grid,
                                         double h, double tol) {
    if (orders < 1 || orders > 8)
        throw std::domain_error("completely_monotonic_check: orders must be in [1,8]");
    if (!(h > 0.0)) throw std::domain_error("completely_monotonic_check: requires h > 0");
    for (double x : grid)
        if (!(x - orders * h > 0.0))
            throw std::domain_error(
                "completely_monotonic_check: grid - orders*h must stay positive");

    CMCheckReport rep;
    rep.orders = orders;
    rep.pass = true;
    rep.worst_value = std::numeric_limits<double>::infinity();

    // binomial coefficients up to order 8
    double binom[9][9] = {};
    for (int k = 0; k <= 8; ++k) {
        binom[k][0] = binom[k][k] = 1.0;
        for (int j = 1; j < k; ++j) binom[k][j] = binom[k - 1][j - 1] + binom[k - 1][j];
    }

    for (double x : grid) {
        const double scale = std::abs(F(x)) + std::abs(F(x - orders * h));
        const double tol_x = tol > 0.0 ? tol : 1e-12 * std::max(1.0, scale);
        for (int k = 1; k <= orders; ++k) {
            // forward difference anchored at x - k h, sign-adjusted:
            // (-1)^k Delta_h^k F(x - k h)
            double diff = 0.0;
            for (int j = 0; j <= k; ++j) {
                const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
                diff += sign * binom[k][j] * F(x - k * h + j * h);
            }
            const double signed_value = ((k % 2 == 0) ? 1.0 : -1.0) * diff;
            if (signed_value < rep.worst_value) {
                rep.worst_value = signed_value;
                rep.worst_x = x;
                rep.worst_order = k;
            }
            if (signed_value < -tol_x && rep.pass) {
                rep.pass = false;
                rep.first_failed_order = k;
            }
        }
    }
    return rep;
}

FracKernelValue subordinate_kernel(int n, double alpha, double d, double tol) {
    if (n < 1) throw std::domain_error("subordinate_kernel: requires n >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("subordinate_kernel: requires alpha in (0,1)");
    if (!(d >= kSubordinateDMin))
        throw std::domain_error(
            "subordinate_kernel: d below d_min = 0.05 (parametrix regime excluded)");
    if (!(d < kPi)) throw std::domain_error("subordinate_kernel: requires d < pi");
    if (!(tol > 0.0)) throw std::domain_error("subordinate_kernel: requires tol > 0");

    const double T0 = 0.25 * d * d;
    const double vol = kernels::sphere_volume(n);

    // short-time Gaussian comparison constant for the omitted-tail bound
    const double gauss_cmp = 2.0 * std::max(1.0, d / std::sin(d));

    // pick t_min so the omitted mass below it is under tol/4:
    // int_0^tmin M (4 pi t)^{-n/2} e^{-d^2/4t} t^{-1-a} dt
    //   = M (4 pi)^{-n/2} (4/d^2)^{n/2+a} Gamma(n/2+a, d^2/4tmin)
    double t_min = 0.5 * T0;
    double omitted = std::numeric_limits<double>::infinity();
    const double pref = gauss_cmp * std::pow(4.0 * kPi, -0.5 * n) *
                        std::pow(4.0 / (d * d), 0.5 * n + alpha);
    for (int it = 0; it < 200; ++it) {
        omitted = pref * upper_gamma_bound(0.5 * n + alpha, 0.25 * d * d / t_min);
        if (omitted < 0.25 * tol) break;
        t_min *= 0.5;
    }

    const double span = T0 - t_min;
    auto lower_f = [n, d, alpha, tol, span](double t) {
        const double weight = std::pow(t, -1.0 - alpha);
        const double series_tol =
            std::max(0.125 * tol / (weight * span), 1e-16 * weight);
        return kernels::sphere_kernel_series(n, d, t, series_tol).value * weight;
    };
    quad::QuadResult lower = quad::integrate_finite(lower_f, t_min, T0, 0.25 * tol);

    auto upper_f = [n, d, alpha, tol](double t) {
        const double weight = std::pow(t, -1.0 - alpha);
        const double series_tol = std::max(0.025 * tol / weight, 1e-16);
        return kernels::sphere_kernel_fluctuation(n, d, t, series_tol).value * weight;
    };
    quad::QuadResult upper =
        quad::integrate_halfline_decaying(upper_f, T0, std::max(T0, 0.25), 0.25 * tol);
    const double constant_mode = std::pow(T0, -alpha) / (alpha * vol);

    FracKernelValue out;
    out.alpha = alpha;
    out.d = d;
    out.K = lower.value + upper.value + constant_mode;
    out.abs_error_estimate =
        lower.abs_error_estimate + upper.abs_error_estimate + omitted + 0.25 * tol;
    out.k_norm = out.K * std::pow(d, n + 2.0 * alpha) / euclidean_limit_constant(n, alpha);
    return out;
}

kernels::KernelValue frac_heat_kernel(double alpha, double theta, double t, double tol) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("frac_heat_kernel: requires alpha in (0,1)");
    if (!(theta >= 0.0 && theta <= kPi))
        throw std::domain_error("frac_heat_kernel: requires theta in [0, pi]");
    if (!(t > 0.0)) throw std::domain_error("frac_heat_kernel: requires t > 0");
    if (!(tol > 0.0)) throw std::domain_error("frac_heat_kernel: requires tol > 0");

    const double x = std::cos(theta);
    double pm1 = 1.0, p = x;
    double sum = 1.0 / (4.0 * kPi);  // k = 0
    const int k_budget = 500000;
    for (int k = 1; k < k_budget; ++k) {
        const double lam = std::pow(static_cast<double>(k) * (k + 1.0), alpha);
        const double damp = std::exp(-t * lam);
        sum += (2.0 * k + 1.0) / (4.0 * kPi) * damp * p;
        // tail bound: sum_{j>k} (2j+1) e^{-t j^{2a}} <= (2/(a t)) k^{2-2a} e^{-t k^{2a}}
        const double tk = t * std::pow(static_cast<double>(k), 2.0 * alpha);
        if (tk >= 2.0 / alpha) {
            const double tail = (2.0 / (alpha * t)) *
                                std::pow(static_cast<double>(k), 2.0 - 2.0 * alpha) *
                                std::exp(-tk) / (4.0 * kPi);
            if (tail < 0.5 * tol) return {sum, tail + 1e-15 * std::abs(sum)};
        }
        const double pn = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
        pm1 = p;
        p = pn;
    }
    throw kernels::TruncationError("frac_heat_kernel: term budget exhausted (t too small)");
}

double legendre_cm_sum(const CMFunction& F, double x, int k_max, double tol) {
    if (!(x > -1.0 && x < 1.0))
        throw std::domain_error("legendre_cm_sum: requires x in (-1,1)");
    if (!(F.sigma > 2.0))
        throw std::invalid_argument("legendre_cm_sum: requires decay exponent sigma > 2");
    require_cm(F, "legendre_cm_sum");

    // empirical decay constant sup F(x) x^sigma over large-argument probes
    double c_decay = 0.0;
    for (double probe : {1e2, 1e3, 1e4, 1e5, 1e6})
        c_decay = std::max(c_decay, F.F(probe) * std::pow(probe, F.sigma));

    double sum = 0.0;
    double pm1 = 1.0, p = x, dpm1 = 0.0, dp = 1.0;
    for (int k = 1; k <= k_max; ++k) {
        sum += (2.0 * k + 1.0) * dp * F.F(static_cast<double>(k) * (k + 1.0));
        if (k >= 8) {
            // tail_{j>k}: (2j+1)|P_j'| F <= c j^3 (j(j+1))^{-sigma}
            const double tail = 1.5 * c_decay *
                                std::pow(static_cast<double>(k), 4.0 - 2.0 * F.sigma) /
                                (2.0 * F.sigma - 4.0);
            if (tail < tol) return sum;
        }
        const double pn = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
        const double dpn = dpm1 + (2 * k + 1) * p;
        pm1 = p;
        p = pn;
        dpm1 = dp;
        dp = dpn;
    }
    throw kernels::TruncationError("legendre_cm_sum: K_max reached before the decay bound");
}

double mehler_cm_integral(const CMFunction& F, double r, double tol) {
    if (!(r > 0.0)) throw std::domain_error("mehler_cm_integral: requires r > 0");
    if (!(F.sigma > 1.25))
        throw std::invalid_argument("mehler_cm_integral: requires sigma > 5/4");
    if (!(tol > 0.0)) throw std::domain_error("mehler_cm_integral: requires tol > 0");
    require_cm(F, "mehler_cm_integral");

    auto f = [&F, r, tol](double v) {
        if (v == 0.0) return 0.0;
        const double Fv = F.F(0.25 + v * v);
        if (Fv == 0.0) return 0.0;
        const double weight = v * std::tanh(kPi * v);
        // the conical derivative only needs enough accuracy for this term
        const double inner =
            std::clamp(0.02 * tol / (std::abs(Fv) * weight + 1e-300), 1e-13, 1e-3);
        return -Fv * specfun::conical_p_prime(v, r, inner) * weight;
    };
    quad::HalflineOptions opts;
    opts.first_width = std::min(1.0, kPi / r);
    opts.growth = 1.4;
    opts.max_panel_width = kPi / r;  // half the oscillation period of P' in v
    opts.consecutive_small = 3;
    opts.max_panels = 3000;
    return quad::integrate_halfline_decaying(f, 0.0, 1.0, tol, opts).value;
}

double fejer_sum(int N, double x) {
    if (N < 0) throw std::domain_error("fejer_sum: requires N >= 0");
    if (!(x > -1.0 && x < 1.0)) throw std::domain_error("fejer_sum: requires x in (-1,1)");
    if (N == 0) return 1.0;
    double sum = 1.0 + x;
    double pm1 = 1.0, p = x;
    for (int k = 1; k < N; ++k) {
        const double pn = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
        sum += pn;
        pm1 = p;
        p = pn;
    }
    return sum;
}

ZonalFunction::ZonalFunction(std::vector<double> coefficients) : a_(std::move(coefficients)) {
    if (a_.empty()) throw std::invalid_argument("ZonalFunction: needs >= 1 coefficient");
}

double ZonalFunction::eval_x(double x) const {
    double sum = a_[0];
    if (a_.size() == 1) return sum;
    double pm1 = 1.0, p = x;
    sum += a_[1] * x;
    for (std::size_t k = 1; k + 1 < a_.size(); ++k) {
        const double pn = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
        sum += a_[k + 1] * pn;
        pm1 = p;
        p = pn;
    }
    return sum;
}

double ZonalFunction::operator()(double theta) const { return eval_x(std::cos(theta)); }

ZonalFunction frac_apply(const ZonalFunction& f, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("frac_apply: requires alpha in (0,1]");
    std::vector<double> out = f.coefficients();
    out[0] = 0.0;
    for (std::size_t k = 1; k < out.size(); ++k)
        out[k] *= std::pow(static_cast<double>(k) * (k + 1.0), alpha);
    return ZonalFunction(std::move(out));
}

ZonalFunction square_expand(const ZonalFunction& f) {
    const int K = f.degree();
    const int target = 2 * K;
    const int nodes = 2 * K + 2;  // exact for degree 4K + 3 >= deg(f^2 P_k)
    specfun::GaussLegendreRule rule = specfun::gauss_legendre(std::max(nodes, 4));

    std::vector<double> b(static_cast<std::size_t>(target) + 1, 0.0);
    std::vector<double> fsq(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = f.eval_x(rule.nodes[i]);
        fsq[i] = v * v;
    }
    for (int k = 0; k <= target; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * fsq[i] * specfun::legendre_p(k, rule.nodes[i]);
        b[static_cast<std::size_t>(k)] = 0.5 * (2.0 * k + 1.0) * acc;
    }
    ZonalFunction g{std::move(b)};

    double residual = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        residual = std::max(residual, std::abs(g.eval_x(rule.nodes[i]) - fsq[i]));
    if (residual > 1e-10)
        throw std::runtime_error("square_expand: projection residual above 1e-10");
    return g;
}

PointwiseReport cordoba_check(const ZonalFunction& f, double alpha,
                              const std::vector<double>& theta_grid, double tol) {
    if (theta_grid.empty()) throw std::invalid_argument("cordoba_check: empty grid");
    const ZonalFunction Lf = frac_apply(f, alpha);
    const ZonalFunction Lf2 = frac_apply(square_expand(f), alpha);

    PointwiseReport rep;
    rep.check = "cordoba";
    rep.alpha = alpha;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (double theta : theta_grid) {
        const double margin = 2.0 * f(theta) * Lf(theta) - Lf2(theta);
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_theta = theta;
        }
    }
    rep.pass = rep.worst_margin >= -tol;
    return rep;
}

PointwiseReport max_principle_check(const ZonalFunction& f, double alpha, double tol,
                                    int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("max_principle_check: grid too small");
    double best_theta = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_points; ++i) {
        const double theta = kPi * i / (grid_points - 1.0);
        const double v = f(theta);
        if (v > best) {
            best = v;
            best_theta = theta;
        }
    }
    const double value = frac_apply(f, alpha)(best_theta);
    PointwiseReport rep;
    rep.check = "max-principle";
    rep.alpha = alpha;
    rep.worst_margin = value;
    rep.worst_theta = best_theta;
    rep.pass = value >= -tol;
    return rep;
}

std::string report_json(const PointwiseReport& report, int grid_points) {
    nlohmann::json j;
    j["check"] = report.check;
    j["parameters"] = {{"alpha", report.alpha}};
    j["grid"] = grid_points;
    j["worst_margin"] = report.worst_margin;
    j["pass"] = report.pass;
    return j.dump();
}

}  // namespace heatkern::fractional
