#ifndef HEATKERN_QUAD_HPP
#define HEATKERN_QUAD_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace heatkern::quad {

/// Result of an adaptive quadrature run. The error estimate is the sum of
/// the embedded-rule discrepancies over all panels (plus a tail bound for
/// semi-infinite integrals); it is reported as computed, never clamped.
struct QuadResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::int64_t evaluations = 0;
};

/// Thrown when a quadrature fails to reach the requested tolerance within
/// its subdivision budget. Carries the best result obtained so far.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, QuadResult best)
        : std::runtime_error(what), best_(best) {}
    const QuadResult& best() const { return best_; }

  private:
    QuadResult best_;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7,K15) bisection on [a,b] to absolute
/// tolerance tol. Deterministic: refinement order and the final summation
/// order depend only on the inputs.
QuadResult integrate_finite(const Integrand& f, double a, double b, double tol,
                            int max_panels = 4000);

/// Panel policy for the semi-infinite integrator. max_panel_width matters
/// for oscillatory integrands: capping panels at half the oscillation
/// period keeps the embedded error estimate valid and makes consecutive
/// panel contributions decrease, so the tail cutoff is a sound bound.
struct HalflineOptions {
    double first_width = 0.0;    // 0 -> decay_scale
    double growth = 1.7;         // geometric panel growth
    double max_panel_width = 0.0;  // 0 -> unlimited
    int consecutive_small = 2;   // panels below cutoff before stopping
    int max_panels = 400;
};

/// Integrates f over [a, inf) by summing adaptive panels of geometrically
/// growing width; stops once `consecutive_small` panel contributions fall
/// below tol/10. decay_scale is the characteristic decay length of f.
QuadResult integrate_halfline_decaying(const Integrand& f, double a,
                                       double decay_scale, double tol,
                                       const HalflineOptions& opts = {});

/// Integrates f over [a,b] when f has an inverse-square-root singularity
/// at a: substitutes x = a + w^2 and integrates 2 w f(a + w^2).
QuadResult integrate_endpoint_invsqrt(const Integrand& f, double a, double b,
                                      double tol, int max_panels = 4000);

}  // namespace heatkern::quad

#endif
