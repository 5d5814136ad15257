#ifndef HEATKERN_SPECFUN_HPP
#define HEATKERN_SPECFUN_HPP

#include <vector>

namespace heatkern::specfun {

/// Legendre polynomial P_n(x) on [-1,1] by the three-term recurrence.
/// Exact at the endpoints: P_n(1) = 1, P_n(-1) = (-1)^n.
double legendre_p(int n, double x);

/// Derivative P_n'(x) via P'_{n+1} = P'_{n-1} + (2n+1) P_n, which keeps
/// the endpoint values n(n+1)/2 exact. Satisfies |P_n'(x)| <= n(n+1)/2.
double legendre_p_prime(int n, double x);

/// Gegenbauer (ultraspherical) polynomial C_k^lambda(x), lambda > 0.
/// C_k^{1/2} coincides with P_k.
double gegenbauer_c(int k, double lambda, double x);

/// Conical Legendre function P_{-1/2+iv}(cosh r), real-valued for real
/// v >= 0, r >= 0. Evaluated from the Mehler-Dirichlet integral
///   (sqrt(2)/pi) int_0^r cos(v u) / sqrt(cosh r - cosh u) du
/// after the substitution u = r - w^2, which removes the endpoint
/// singularity; the regularized integrand is evaluated in the stable
/// product form 2 sinh(r - w^2/2) sinh(w^2/2) of the cosh difference.
double conical_p(double v, double r, double tol = 1e-12);

/// d/ds P_{-1/2+iv}(s) at s = cosh r, r > 0, by differentiating the
/// substituted Mehler-Dirichlet integral in r (one boundary term from the
/// moving limit plus a regular integral) and dividing by sinh r.
double conical_p_prime(double v, double r, double tol = 1e-12);

/// Gauss-Legendre nodes and weights on [-1,1], by Newton iteration on
/// P_n. Exact for polynomials of degree <= 2n-1.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

}  // namespace heatkern::specfun

#endif
