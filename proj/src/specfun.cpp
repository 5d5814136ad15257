#include "heatkern/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heatkern/quad.hpp"

namespace heatkern::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

void check_legendre_domain(int n, double x, const char* who) {
    if (n < 0) throw std::domain_error(std::string(who) + ": degree must be >= 0");
    if (!(x >= -1.0 && x <= 1.0))
        throw std::domain_error(std::string(who) + ": argument must lie in [-1,1]");
}

// sinh(t)/t, stable near t = 0.
double sinhc(double t) {
    if (std::abs(t) < 1e-5) {
        const double t2 = t * t;
        return 1.0 + t2 / 6.0 * (1.0 + t2 / 20.0);
    }
    return std::sinh(t) / t;
}

}  // namespace

double legendre_p(int n, double x) {
    check_legendre_domain(n, x, "legendre_p");
    if (n == 0) return 1.0;
    if (n == 1) return x;
    double pm1 = 1.0, p = x;
    for (int k = 1; k < n; ++k) {
        const double pn = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
        pm1 = p;
        p = pn;
    }
    return p;
}

double legendre_p_prime(int n, double x) {
    check_legendre_domain(n, x, "legendre_p_prime");
    if (n == 0) return 0.0;
    if (n == 1) return 1.0;
    // dp_k = P_k', advanced together with P_k via P'_{k+1} = P'_{k-1} + (2k+1) P_k
    double pm1 = 1.0, p = x;
    double dpm1 = 0.0, dp = 1.0;
    for (int k = 1; k < n; ++k) {
        const double pn = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
        const double dpn = dpm1 + (2 * k + 1) * p;
        pm1 = p;
        p = pn;
        dpm1 = dp;
        dp = dpn;
    }
    return dp;
}

double gegenbauer_c(int k, double lambda, double x) {
    if (k < 0) throw std::domain_error("gegenbauer_c: degree must be >= 0");
    if (!(lambda > 0.0)) throw std::domain_error("gegenbauer_c: requires lambda > 0");
    if (!(x >= -1.0 && x <= 1.0))
        throw std::domain_error("gegenbauer_c: argument must lie in [-1,1]");
    if (k == 0) return 1.0;
    if (k == 1) return 2.0 * lambda * x;
    double cm1 = 1.0, c = 2.0 * lambda * x;
    for (int j = 2; j <= k; ++j) {
        const double cn = (2.0 * (j + lambda - 1.0) * x * c - (j + 2.0 * lambda - 2.0) * cm1) / j;
        cm1 = c;
        c = cn;
    }
    return c;
}

double conical_p(double v, double r, double tol) {
    if (!(v >= 0.0)) throw std::domain_error("conical_p: requires v >= 0");
    if (!(r >= 0.0)) throw std::domain_error("conical_p: requires r >= 0");
    if (r == 0.0) return 1.0;  // P_{-1/2+iv}(1) = 1

    // u = r - w^2:  integrand 2 cos(v (r - w^2)) / sqrt(sinh(r-t) sinhc(t)),
    // t = w^2/2, on w in [0, sqrt(r)].
    auto g = [v, r](double w) {
        const double t = 0.5 * w * w;
        const double phase = v * (r - w * w);
        return 2.0 * std::cos(phase) / std::sqrt(std::sinh(r - t) * sinhc(t));
    };
    quad::QuadResult q = quad::integrate_finite(g, 0.0, std::sqrt(r), tol);
    return std::numbers::sqrt2 / kPi * q.value;
}

double conical_p_prime(double v, double r, double tol) {
    if (!(v >= 0.0)) throw std::domain_error("conical_p_prime: requires v >= 0");
    if (!(r > 0.0)) throw std::domain_error("conical_p_prime: requires r > 0");

    // d/dr of the substituted integral: boundary term from the moving upper
    // limit plus the r-derivative of the regular integrand.
    auto dg = [v, r](double w) {
        const double t = 0.5 * w * w;
        const double A = std::sinh(r - t);
        const double B = sinhc(t);
        const double phase = v * (r - w * w);
        const double amp = 1.0 / std::sqrt(A * B);
        return amp * (-2.0 * v * std::sin(phase) -
                      std::cos(phase) * std::cosh(r - t) / A);
    };
    quad::QuadResult q = quad::integrate_finite(dg, 0.0, std::sqrt(r), tol);
    const double boundary = 1.0 / (std::numbers::sqrt2 * std::sinh(0.5 * r));
    const double dP_dr = std::numbers::sqrt2 / kPi * (boundary + q.value);
    return dP_dr / std::sinh(r);
}

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw std::domain_error("gauss_legendre: requires n >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const double p = legendre_p(n, x);
            const double dp = legendre_p_prime(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double dp = legendre_p_prime(n, x);
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace heatkern::specfun
