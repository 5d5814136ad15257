#ifndef HEATKERN_KERNELS_HPP
#define HEATKERN_KERNELS_HPP

#include <memory>
#include <stdexcept>
#include <string>

namespace heatkern::revolution {
struct RadialProfile;
}

namespace heatkern::kernels {

/// Heat-kernel value with an honest absolute error estimate.
struct KernelValue {
    double value = 0.0;
    double abs_error_estimate = 0.0;
};

/// Thrown when a spectral sum cannot reach the requested tolerance within
/// its term budget (or the evaluator refuses a too-small time).
class TruncationError : public std::runtime_error {
  public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// Model geometry selector. The first period of the flat torus is fixed
/// to 1 and `aspect` is the second one (normalized so aspect >= 1).
struct ModelManifold {
    enum class Kind { Euclidean, Sphere, HyperbolicPlane, Hyperbolic3, FlatTorus, Revolution };

    Kind kind = Kind::Euclidean;
    int dim = 2;          // Euclidean / Sphere
    double aspect = 1.0;  // FlatTorus
    std::shared_ptr<const revolution::RadialProfile> profile;  // Revolution

    static ModelManifold euclidean(int n);
    static ModelManifold sphere(int n);
    static ModelManifold hyperbolic_plane();
    static ModelManifold hyperbolic3();
    static ModelManifold flat_torus(double aspect);
    static ModelManifold revolution(std::shared_ptr<const revolution::RadialProfile> p);

    std::string name() const;
};

/// vol(S^n) = 2 pi^{(n+1)/2} / Gamma((n+1)/2); n = 0 gives 2.
double sphere_volume(int n);

/// Gaussian kernel on R^n: (4 pi t)^{-n/2} exp(-d^2 / 4t).
KernelValue euclidean_kernel(int n, double d, double t);

/// Zonal spectral sum on the unit sphere S^n, normalized by the addition
/// theorem so the kernel has unit mass and tends to 1/vol(S^n) as t grows.
/// For n = 2 this is sum_k (2k+1)/(4 pi) e^{-k(k+1) t} P_k(cos theta).
/// Refuses t below kSphereTMin rather than under-resolve.
KernelValue sphere_kernel(int n, double theta, double t, double tol);
inline constexpr double kSphereTMin = 1e-4;

/// Raw series evaluator behind sphere_kernel, without the small-time
/// refusal. Callers own the accuracy policy (used by the subordination
/// integral, whose omitted-tail bound dictates how far down in t to go).
KernelValue sphere_kernel_series(int n, double theta, double t, double tol,
                                 int max_terms = 200000);

/// G(theta, t) - 1/vol(S^n): the series with the constant mode dropped,
/// so the large-time fluctuation is computed without cancellation.
KernelValue sphere_kernel_fluctuation(int n, double theta, double t, double tol,
                                      int max_terms = 200000);

/// Hyperbolic-plane kernel from the integral representation
///   sqrt(2) e^{-t/4} (4 pi t)^{-3/2} int_d^inf beta e^{-beta^2/4t}
///     / sqrt(cosh beta - cosh d) dbeta.
KernelValue hyperbolic2_kernel_integral(double d, double t, double tol);

/// Hyperbolic-plane kernel from the Mehler-Fock representation
///   (1/2 pi) int_0^inf e^{-(1/4+v^2) t} P_{-1/2+iv}(cosh d) v tanh(pi v) dv.
KernelValue hyperbolic2_kernel_spectral(double d, double t, double tol);

/// Closed form on H^3: (4 pi t)^{-3/2} (d / sinh d) e^{-t - d^2/4t}.
/// Used as an oracle for the radial solver.
KernelValue hyperbolic3_kernel(double d, double t);

/// Flat torus R^2 / (Z x aspect Z), base point at the origin; (x,y) is
/// reduced to the fundamental domain. Image-sum and Fourier forms are the
/// two sides of the Poisson summation identity.
KernelValue torus_kernel_image(double aspect, double x, double y, double t, double tol);
KernelValue torus_kernel_fourier(double aspect, double x, double y, double t, double tol);
KernelValue torus_kernel(double aspect, double x, double y, double t, double tol);

/// Representation switch time: equates the decay scales of the image and
/// Fourier sums.
double torus_t_switch(double aspect);

/// Kernel at geodesic distance d for the radially symmetric models.
/// FlatTorus and Revolution need extra data (a direction / a solver run)
/// and are rejected here.
KernelValue kernel_value(const ModelManifold& model, double d, double t, double tol);

/// Central finite difference (G(d+h) - G(d-h)) / 2h of the radial kernel;
/// h <= 0 picks the default 1e-4 * max(1, d). Sphere distances fold
/// evenly through the antipode.
double radial_derivative(const ModelManifold& model, double d, double t, double h = 0.0,
                         double tol = 1e-10);

/// Total mass of the kernel over the whole manifold (quadrature against
/// the volume element). `spectral` selects the Mehler-Fock representation
/// for the hyperbolic plane.
double total_mass(const ModelManifold& model, double t, double tol, bool spectral = false);

}  // namespace heatkern::kernels

#endif
