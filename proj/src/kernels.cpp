#include "heatkern/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatkern/quad.hpp"
#include "heatkern/specfun.hpp"

namespace heatkern::kernels {

namespace {

constexpr double kPi = std::numbers::pi;

double sinhc_ratio(double d) {
    // d / sinh d, stable near 0
    if (std::abs(d) < 1e-6) return 1.0 / (1.0 + d * d / 6.0);
    return d / std::sinh(d);
}

// 1D lattice heat kernel, image form: (4 pi t)^{-1/2} sum_j e^{-(j p - z)^2/4t}.
double theta_image(double z, double p, double t, double cut_rel) {
    const double inv4t = 1.0 / (4.0 * t);
    const long j0 = std::lround(z / p);
    auto term = [&](long j) {
        const double u = static_cast<double>(j) * p - z;
        return std::exp(-u * u * inv4t);
    };
    double sum = term(j0);
    const double ref = std::max(sum, 1e-300);
    for (long k = 1; k < 100000; ++k) {
        const double a = term(j0 - k);
        const double b = term(j0 + k);
        sum += a + b;
        if (a + b < cut_rel * ref) break;
    }
    return sum / std::sqrt(4.0 * kPi * t);
}

// 1D lattice heat kernel, Fourier form: (1/p)(1 + 2 sum_k e^{-4 pi^2 t k^2/p^2} cos(2 pi k z / p)).
double theta_fourier(double z, double p, double t, double cut_rel) {
    const double q = 4.0 * kPi * kPi * t / (p * p);
    double sum = 1.0;
    for (long k = 1; k < 100000; ++k) {
        const double damp = std::exp(-q * static_cast<double>(k) * static_cast<double>(k));
        sum += 2.0 * damp * std::cos(2.0 * kPi * static_cast<double>(k) * z / p);
        if (2.0 * damp < cut_rel) break;
    }
    return sum / p;
}

double reduce_period(double z, double p) {
    double r = z - p * std::floor(z / p);
    if (r >= p) r = 0.0;
    return r;
}

void check_time(double t, const char* who) {
    if (!(t > 0.0)) throw std::domain_error(std::string(who) + ": requires t > 0");
}

}  // namespace

ModelManifold ModelManifold::euclidean(int n) {
    if (n < 1) throw std::domain_error("ModelManifold: Euclidean dimension must be >= 1");
    ModelManifold m;
    m.kind = Kind::Euclidean;
    m.dim = n;
    return m;
}

ModelManifold ModelManifold::sphere(int n) {
    if (n < 1) throw std::domain_error("ModelManifold: Sphere dimension must be >= 1");
    ModelManifold m;
    m.kind = Kind::Sphere;
    m.dim = n;
    return m;
}

ModelManifold ModelManifold::hyperbolic_plane() {
    ModelManifold m;
    m.kind = Kind::HyperbolicPlane;
    m.dim = 2;
    return m;
}

ModelManifold ModelManifold::hyperbolic3() {
    ModelManifold m;
    m.kind = Kind::Hyperbolic3;
    m.dim = 3;
    return m;
}

ModelManifold ModelManifold::flat_torus(double aspect) {
    if (!(aspect >= 1.0))
        throw std::domain_error("ModelManifold: torus aspect must be >= 1 (longer period second)");
    ModelManifold m;
    m.kind = Kind::FlatTorus;
    m.dim = 2;
    m.aspect = aspect;
    return m;
}

ModelManifold ModelManifold::revolution(std::shared_ptr<const revolution::RadialProfile> p) {
    if (!p) throw std::domain_error("ModelManifold: null profile");
    ModelManifold m;
    m.kind = Kind::Revolution;
    m.profile = std::move(p);
    return m;
}

std::string ModelManifold::name() const {
    switch (kind) {
        case Kind::Euclidean: return "euclid" + std::to_string(dim);
        case Kind::Sphere: return "sphere" + std::to_string(dim);
        case Kind::HyperbolicPlane: return "hyp2";
        case Kind::Hyperbolic3: return "hyp3";
        case Kind::FlatTorus: return "torus";
        case Kind::Revolution: return "revolution";
    }
    return "unknown";
}

double sphere_volume(int n) {
    // n = 0 is the two-point sphere S^0 (volume 2), needed by curve
    // profiles in R^2
    if (n < 0) throw std::domain_error("sphere_volume: requires n >= 0");
    return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

KernelValue euclidean_kernel(int n, double d, double t) {
    if (n < 1) throw std::domain_error("euclidean_kernel: requires n >= 1");
    if (!(d >= 0.0)) throw std::domain_error("euclidean_kernel: requires d >= 0");
    check_time(t, "euclidean_kernel");
    const double v = std::pow(4.0 * kPi * t, -0.5 * n) * std::exp(-d * d / (4.0 * t));
    return {v, 0.0};
}

namespace {

KernelValue sphere_series_impl(int n, double theta, double t, double tol, int max_terms,
                               bool include_constant_mode) {
    if (n < 1 || n > 10)
        throw std::domain_error("sphere_kernel: requires 1 <= n <= 10");
    if (!(theta >= 0.0 && theta <= kPi))
        throw std::domain_error("sphere_kernel: requires theta in [0, pi]");
    check_time(t, "sphere_kernel");
    if (!(tol > 0.0)) throw std::domain_error("sphere_kernel: requires tol > 0");

    const double vol = sphere_volume(n);
    const double x = std::cos(theta);
    const double zero_mode = include_constant_mode ? 1.0 / vol : 0.0;

    if (n == 1) {
        // circle: eigenvalues k^2, multiplicity 2 for k >= 1
        double sum = zero_mode * vol;
        double tail = 0.0;
        long k = 1;
        for (; k < max_terms; ++k) {
            const double damp = std::exp(-t * static_cast<double>(k) * static_cast<double>(k));
            sum += 2.0 * damp * std::cos(static_cast<double>(k) * theta);
            // geometric tail bound: successive term ratios are below
            // rho = e^{-(2k+1)t}, so the remainder is under 2 damp rho/(1-rho)
            const double rho = std::exp(-t * (2.0 * k + 1.0));
            const double bound = 2.0 * damp * rho / (1.0 - rho);
            if (bound < 0.5 * tol * vol) {
                tail = bound;
                break;
            }
        }
        if (k >= max_terms)
            throw TruncationError("sphere_kernel: term budget exhausted (t too small)");
        const double value = sum / vol;
        const double err = tail / vol + 4e-16 * std::sqrt(k + 1.0);
        if (include_constant_mode && value < 0.0 && -value <= err) return {0.0, err};
        return {value, err};
    }

    const double lambda = 0.5 * (n - 1);
    // running recurrences: Gegenbauer C_k^lambda at x and at 1, and
    // binom(k+n-2, n-2); dim H_k = (2k+n-1)/(n-1) * binom(k+n-2, n-2)
    double cm1 = 1.0;                   // C_0(x)
    double c = 2.0 * lambda * x;        // C_1(x)
    double cone_m1 = 1.0;               // C_0(1)
    double cone = 2.0 * lambda;         // C_1(1)
    double sum = zero_mode;
    double abs_sum = std::abs(zero_mode);
    double tail = 0.0;
    bool converged = false;
    double bin = 1.0;
    int k_final = 0;
    for (int k = 1; k < max_terms; ++k) {
        k_final = k;
        bin = (k == 1) ? (n - 1.0) : bin * (k + n - 2.0) / k;
        const double dim = (2.0 * k + n - 1.0) / (n - 1.0) * bin;
        const double damp = std::exp(-t * static_cast<double>(k) * (k + n - 1.0));
        const double ratio = c / cone;  // normalized zonal value, |ratio| <= 1
        const double term = dim * damp * ratio / vol;
        sum += term;
        abs_sum += std::abs(term);
        // geometric tail bound: term-magnitude ratios are below
        // rho = (dim_{k+1}/dim_k) e^{-(2k+n)t}, decreasing in k
        const double dim_ratio =
            (2.0 * k + n + 1.0) * (k + n - 1.0) / ((2.0 * k + n - 1.0) * (k + 1.0));
        const double rho = dim_ratio * std::exp(-t * (2.0 * k + n));
        if (rho < 1.0) {
            const double bound = (dim * damp / vol) * rho / (1.0 - rho);
            if (bound < 0.5 * tol) {
                tail = bound;
                converged = true;
                break;
            }
        }
        // advance recurrences to degree k+1
        const double cn = (2.0 * (k + lambda) * x * c - (k + 2.0 * lambda - 1.0) * cm1) / (k + 1.0);
        cm1 = c;
        c = cn;
        const double cone_n = (2.0 * (k + lambda) * cone - (k + 2.0 * lambda - 1.0) * cone_m1) / (k + 1.0);
        cone_m1 = cone;
        cone = cone_n;
    }
    if (!converged)
        throw TruncationError("sphere_kernel: term budget exhausted (t too small)");
    // roundoff floor of the alternating sum; where the true kernel
    // underflows it, clamp to zero and let the estimate carry the noise
    const double noise = 4e-16 * abs_sum * std::sqrt(k_final + 1.0);
    const double err = tail + noise;
    if (include_constant_mode && sum < 0.0 && -sum <= err) return {0.0, err};
    return {sum, err};
}

}  // namespace

KernelValue sphere_kernel_series(int n, double theta, double t, double tol, int max_terms) {
    return sphere_series_impl(n, theta, t, tol, max_terms, true);
}

KernelValue sphere_kernel_fluctuation(int n, double theta, double t, double tol,
                                      int max_terms) {
    return sphere_series_impl(n, theta, t, tol, max_terms, false);
}

KernelValue sphere_kernel(int n, double theta, double t, double tol) {
    if (t < kSphereTMin)
        throw TruncationError("sphere_kernel: refusing t below t_min = 1e-4");
    return sphere_kernel_series(n, theta, t, tol);
}

KernelValue hyperbolic2_kernel_integral(double d, double t, double tol) {
    if (!(d >= 0.0)) throw std::domain_error("hyperbolic2_kernel_integral: requires d >= 0");
    check_time(t, "hyperbolic2_kernel_integral");
    if (!(tol > 0.0)) throw std::domain_error("hyperbolic2_kernel_integral: requires tol > 0");

    const double pref = std::numbers::sqrt2 * std::exp(-0.25 * t) *
                        std::pow(4.0 * kPi * t, -1.5);
    const double inner_tol = 0.5 * tol / pref;

    // near part: beta = d + w^2, w in [0, sqrt(2)] (beta up to d+2), with
    // cosh beta - cosh d = 2 sinh(d + w^2/2) sinh(w^2/2) kept in product form
    const double inv4t = 1.0 / (4.0 * t);
    auto g_near = [d, inv4t](double w) {
        const double w2 = w * w;
        const double beta = d + w2;
        const double th = 0.5 * w2;
        const double shc = (th < 1e-5) ? 1.0 + th * th / 6.0 : std::sinh(th) / th;
        return 2.0 * beta * std::exp(-beta * beta * inv4t) /
               std::sqrt(std::sinh(d + th) * shc);
    };
    quad::QuadResult near = quad::integrate_finite(g_near, 0.0, std::numbers::sqrt2, inner_tol);

    // far part: beta >= d + 2, no cancellation in cosh beta - cosh d
    auto g_far = [d, inv4t](double beta) {
        const double s = 2.0 * std::sinh(0.5 * (beta + d)) * std::sinh(0.5 * (beta - d));
        return beta * std::exp(-beta * beta * inv4t) / std::sqrt(s);
    };
    const double scale = std::clamp(std::sqrt(2.0 * t), 0.05, 10.0);
    quad::QuadResult far =
        quad::integrate_halfline_decaying(g_far, d + 2.0, scale, inner_tol);

    const double value = pref * (near.value + far.value);
    const double err = pref * (near.abs_error_estimate + far.abs_error_estimate);
    return {std::max(value, 0.0), err};
}

KernelValue hyperbolic2_kernel_spectral(double d, double t, double tol) {
    if (!(d >= 0.0)) throw std::domain_error("hyperbolic2_kernel_spectral: requires d >= 0");
    check_time(t, "hyperbolic2_kernel_spectral");
    if (!(tol > 0.0)) throw std::domain_error("hyperbolic2_kernel_spectral: requires tol > 0");

    const double conical_tol = std::max(tol, 1e-13);
    auto f = [d, t, conical_tol](double v) {
        const double damp = std::exp(-(0.25 + v * v) * t);
        if (damp == 0.0) return 0.0;
        return damp * specfun::conical_p(v, d, conical_tol) * v * std::tanh(kPi * v);
    };
    quad::HalflineOptions opts;
    opts.first_width = std::min(1.0 / std::sqrt(t), 2.0);
    opts.growth = 1.5;
    if (d > 0.3) opts.max_panel_width = kPi / d;  // half oscillation period of P in v
    const double inner_tol = kPi * tol;  // absorbed by the 1/2pi prefactor
    quad::QuadResult q =
        quad::integrate_halfline_decaying(f, 0.0, std::min(1.0 / std::sqrt(t), 2.0),
                                          inner_tol, opts);

    // conical_p contributes at most conical_tol * int v e^{-v^2 t} dv
    const double propagated = conical_tol / (2.0 * t);
    const double value = q.value / (2.0 * kPi);
    const double err = (q.abs_error_estimate + propagated) / (2.0 * kPi);
    return {std::max(value, 0.0), err};
}

KernelValue hyperbolic3_kernel(double d, double t) {
    if (!(d >= 0.0)) throw std::domain_error("hyperbolic3_kernel: requires d >= 0");
    check_time(t, "hyperbolic3_kernel");
    const double v = std::pow(4.0 * kPi * t, -1.5) * sinhc_ratio(d) *
                     std::exp(-t - d * d / (4.0 * t));
    return {v, 0.0};
}

double torus_t_switch(double aspect) {
    return 0.2 * std::max(1.0, aspect * aspect) / (4.0 * kPi * kPi);
}

KernelValue torus_kernel_image(double aspect, double x, double y, double t, double tol) {
    if (!(aspect >= 1.0)) throw std::domain_error("torus_kernel: requires aspect >= 1");
    check_time(t, "torus_kernel");
    const double cut = std::clamp(tol * 1e-3, 1e-22, 1e-12);
    const double xr = reduce_period(x, 1.0);
    const double yr = reduce_period(y, aspect);
    const double v = theta_image(xr, 1.0, t, cut) * theta_image(yr, aspect, t, cut);
    return {v, v * (8.0 * cut + 1e-15)};
}

KernelValue torus_kernel_fourier(double aspect, double x, double y, double t, double tol) {
    if (!(aspect >= 1.0)) throw std::domain_error("torus_kernel: requires aspect >= 1");
    check_time(t, "torus_kernel");
    const double cut = std::clamp(tol * 1e-3, 1e-22, 1e-12);
    const double xr = reduce_period(x, 1.0);
    const double yr = reduce_period(y, aspect);
    const double v = theta_fourier(xr, 1.0, t, cut) * theta_fourier(yr, aspect, t, cut);
    return {std::max(v, 0.0), std::abs(v) * (8.0 * cut + 1e-15)};
}

KernelValue torus_kernel(double aspect, double x, double y, double t, double tol) {
    return t <= torus_t_switch(aspect) ? torus_kernel_image(aspect, x, y, t, tol)
                                       : torus_kernel_fourier(aspect, x, y, t, tol);
}

KernelValue kernel_value(const ModelManifold& model, double d, double t, double tol) {
    switch (model.kind) {
        case ModelManifold::Kind::Euclidean:
            return euclidean_kernel(model.dim, d, t);
        case ModelManifold::Kind::Sphere: {
            // fold the distance evenly through 0 and the antipode
            double theta = std::fmod(std::abs(d), 2.0 * kPi);
            if (theta > kPi) theta = 2.0 * kPi - theta;
            return sphere_kernel(model.dim, theta, t, tol);
        }
        case ModelManifold::Kind::HyperbolicPlane:
            return hyperbolic2_kernel_integral(d, t, tol);
        case ModelManifold::Kind::Hyperbolic3:
            return hyperbolic3_kernel(d, t);
        case ModelManifold::Kind::FlatTorus:
            throw std::invalid_argument(
                "kernel_value: flat torus needs a point, use torus_kernel");
        case ModelManifold::Kind::Revolution:
            throw std::invalid_argument(
                "kernel_value: revolution profiles are evaluated by the radial solver");
    }
    throw std::logic_error("kernel_value: unreachable");
}

double radial_derivative(const ModelManifold& model, double d, double t, double h,
                         double tol) {
    if (h <= 0.0) h = 1e-4 * std::max(1.0, d);
    if (model.kind != ModelManifold::Kind::Sphere && !(d - h > 0.0))
        throw std::domain_error("radial_derivative: requires d - h > 0");
    const double up = kernel_value(model, d + h, t, tol).value;
    const double dn = kernel_value(model, d - h, t, tol).value;
    return (up - dn) / (2.0 * h);
}

double total_mass(const ModelManifold& model, double t, double tol, bool spectral) {
    switch (model.kind) {
        case ModelManifold::Kind::Euclidean: {
            const int n = model.dim;
            auto f = [n, t](double d) {
                return euclidean_kernel(n, d, t).value * sphere_volume(n - 1) *
                       std::pow(d, n - 1);
            };
            if (n == 1) {
                auto f1 = [t](double d) { return 2.0 * euclidean_kernel(1, d, t).value; };
                return quad::integrate_halfline_decaying(f1, 0.0, std::sqrt(2.0 * t), tol).value;
            }
            return quad::integrate_halfline_decaying(f, 0.0, std::sqrt(2.0 * t), tol).value;
        }
        case ModelManifold::Kind::Sphere: {
            const int n = model.dim;
            auto f = [n, t, tol](double theta) {
                return sphere_kernel(n, theta, t, tol * 0.01).value * sphere_volume(n - 1) *
                       std::pow(std::sin(theta), n - 1);
            };
            return quad::integrate_finite(f, 0.0, kPi, tol).value;
        }
        case ModelManifold::Kind::HyperbolicPlane: {
            // integrand ~ e^{-d^2/4t + d/2}: truncation point from the tail
            // exponent, kernel tolerances weighted down by the volume factor
            const double D = 2.0 * std::sqrt(22.0 * t) + 2.0 * t + 2.0;
            auto f = [t, tol, spectral, D](double d) {
                const double weight = 2.0 * kPi * std::sinh(d);
                const double tol_k =
                    std::clamp(tol / (30.0 * D * std::max(1.0, weight)), 1e-16, tol);
                const KernelValue k = spectral
                                          ? hyperbolic2_kernel_spectral(d, t, tol_k)
                                          : hyperbolic2_kernel_integral(d, t, tol_k);
                return k.value * weight;
            };
            return quad::integrate_finite(f, 0.0, D, tol / 3.0).value;
        }
        case ModelManifold::Kind::Hyperbolic3: {
            auto f = [t](double d) {
                const double s = std::sinh(d);
                return hyperbolic3_kernel(d, t).value * 4.0 * kPi * s * s;
            };
            return quad::integrate_halfline_decaying(f, 0.0, std::max(std::sqrt(t), 0.5), tol)
                .value;
        }
        case ModelManifold::Kind::FlatTorus: {
            const double l = model.aspect;
            auto fx = [t, tol, l](double x) { return torus_kernel(l, x, 0.0, t, tol).value; };
            auto fy = [t, tol, l](double y) { return torus_kernel(l, 0.0, y, t, tol).value; };
            // the kernel is a product of 1D factors; dividing by the value at
            // the origin of the complementary factor isolates each factor
            const double g00 = torus_kernel(l, 0.0, 0.0, t, tol).value;
            const double ix = quad::integrate_finite(fx, 0.0, 1.0, tol).value;
            const double iy = quad::integrate_finite(fy, 0.0, l, tol).value;
            return ix * iy / g00;
        }
        case ModelManifold::Kind::Revolution:
            throw std::invalid_argument("total_mass: use the radial solver for profiles");
    }
    throw std::logic_error("total_mass: unreachable");
}

}  // namespace heatkern::kernels
