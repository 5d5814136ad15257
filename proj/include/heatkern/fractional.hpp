#ifndef HEATKERN_FRACTIONAL_HPP
#define HEATKERN_FRACTIONAL_HPP

#include <functional>
#include <string>
#include <vector>

#include "heatkern/kernels.hpp"

namespace heatkern::fractional {

/// Candidate completely monotonic function with its claimed decay
/// exponent: F(x) = O(x^{-sigma}).
struct CMFunction {
    std::function<double(double)> F;
    double sigma = 0.0;
    int derivative_orders_checkable = 8;
    std::string name;
};

/// Finite-difference surrogate for complete monotonicity: verifies
/// (-1)^k Delta_h^k F >= -tol for k <= orders, with the difference stencil
/// anchored so every evaluation stays in (0, inf). tol <= 0 picks a
/// roundoff-scaled default.
struct CMCheckReport {
    bool pass = false;
    int orders = 0;
    int first_failed_order = -1;
    double worst_value = 0.0;  // most negative signed difference seen
    double worst_x = 0.0;
    int worst_order = 0;
};
CMCheckReport completely_monotonic_check(const std::function<double(double)>& F,
                                         int orders, const std::vector<double>& grid,
                                         double h, double tol = 0.0);

/// Subordinated kernel on S^n:  K(d) = int_0^inf G(d, t) t^{-1-alpha} dt,
/// split at T0 = d^2/4; the lower part runs the zonal series down to a
/// t_min below which the omitted Gaussian-bounded mass is under tol, the
/// upper part integrates the fluctuation G - 1/vol plus the exact
/// constant-mode contribution. k_norm is K d^{n+2 alpha} normalized by
/// the Euclidean limit so k_norm(0+) = 1.
struct FracKernelValue {
    double alpha = 0.0;
    double d = 0.0;
    double K = 0.0;
    double k_norm = 0.0;
    double abs_error_estimate = 0.0;
};
FracKernelValue subordinate_kernel(int n, double alpha, double d, double tol);
inline constexpr double kSubordinateDMin = 0.05;

/// Fundamental solution of u_t + (-Laplacian)^alpha u = 0 on S^2:
/// sum_k (2k+1)/(4 pi) e^{-t (k(k+1))^alpha} P_k(cos theta).
kernels::KernelValue frac_heat_kernel(double alpha, double theta, double t, double tol);

/// sum_n (2n+1) P_n'(x) F(n(n+1)), truncated via the sigma-decay bound.
/// Requires F completely monotonic (finite-difference check) and sigma > 2.
double legendre_cm_sum(const CMFunction& F, double x, int k_max, double tol);

/// int_0^inf F(1/4 + v^2) (-d/ds P_{-1/2+iv}(cosh r)) v tanh(pi v) dv,
/// the positive transform obtained by differentiating the Mehler-Fock
/// spectral kernel in r. Requires complete monotonicity and sigma > 5/4.
double mehler_cm_integral(const CMFunction& F, double r, double tol);

/// Fejer partial sum  sum_{n=0}^N P_n(x); positive on (-1, 1).
double fejer_sum(int N, double x);

/// Zonal function on S^2 held as Legendre coefficients a_k.
class ZonalFunction {
  public:
    ZonalFunction() = default;
    explicit ZonalFunction(std::vector<double> coefficients);
    double operator()(double theta) const;
    double eval_x(double x) const;  // x = cos theta
    const std::vector<double>& coefficients() const { return a_; }
    int degree() const { return static_cast<int>(a_.size()) - 1; }

  private:
    std::vector<double> a_;
};

/// Spectral fractional Laplace-Beltrami operator on zonal functions:
/// a_k -> (k(k+1))^alpha a_k, constants annihilated.
ZonalFunction frac_apply(const ZonalFunction& f, double alpha);

/// Expansion of f^2 to the stated degree by Gauss-Legendre projection;
/// throws if the reconstruction residual exceeds 1e-10.
ZonalFunction square_expand(const ZonalFunction& f);

struct PointwiseReport {
    std::string check;
    double alpha = 0.0;
    double worst_margin = 0.0;
    double worst_theta = 0.0;
    bool pass = false;
};

/// Cordoba-Cordoba inequality 2 f (-L)^a f >= (-L)^a (f^2) pointwise on
/// the grid; the margin is the minimum of the difference.
PointwiseReport cordoba_check(const ZonalFunction& f, double alpha,
                              const std::vector<double>& theta_grid,
                              double tol = 1e-10);

/// (-L)^a f at the grid maximum of f must be nonnegative.
PointwiseReport max_principle_check(const ZonalFunction& f, double alpha,
                                    double tol = 1e-10, int grid_points = 1024);

/// JSON record {check, parameters, grid, worst_margin, pass}.
std::string report_json(const PointwiseReport& report, int grid_points);

}  // namespace heatkern::fractional

#endif
