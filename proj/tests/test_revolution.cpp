#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "heatkern/kernels.hpp"
#include "heatkern/quad.hpp"
#include "heatkern/revolution.hpp"
#include "heatkern/specfun.hpp"

using namespace heatkern;
using revolution::BoundaryKind;

namespace {

constexpr double kPi = std::numbers::pi;

revolution::RadialProfile unit_circle_curve_profile(BoundaryKind bc = BoundaryKind::Closed,
                                                    double angle = kPi) {
    return revolution::profile_from_curve([](double s) { return std::sin(s); },
                                          [](double s) { return std::cos(s); }, angle, 3,
                                          bc);
}

revolution::RadialProfile ellipsoid_profile() {
    // prolate ellipsoid, semi-axes (1,1,2): generating curve (sin u, 2 cos u)
    return revolution::profile_from_curve([](double u) { return std::sin(u); },
                                          [](double u) { return 2.0 * std::cos(u); }, kPi,
                                          3, BoundaryKind::Closed);
}

// independent spectral oracle on S^2: expand the mollifier in the zonal
// eigenbasis by quadrature and evolve the coefficients exactly
std::vector<double> spectral_mollifier_solution(const revolution::RadialProfile& prof,
                                                const revolution::Mollifier& chi, double t,
                                                const std::vector<double>& thetas) {
    std::vector<double> coeff;
    for (int k = 0;; ++k) {
        auto f = [&](double rho) {
            return chi(rho) * specfun::legendre_p(k, std::cos(rho)) * prof.surface(rho);
        };
        const double hat = quad::integrate_finite(f, 0.0, chi.eps, 1e-13).value;
        coeff.push_back(hat);
        if (k > 3 && (2 * k + 1) * std::exp(-k * (k + 1.0) * t) < 1e-16) break;
    }
    std::vector<double> out;
    for (double theta : thetas) {
        double sum = 0.0;
        for (std::size_t k = 0; k < coeff.size(); ++k) {
            sum += coeff[k] * (2.0 * k + 1.0) / (4.0 * kPi) *
                   std::exp(-static_cast<double>(k) * (k + 1.0) * t) *
                   specfun::legendre_p(static_cast<int>(k), std::cos(theta));
        }
        out.push_back(sum);
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("revolution");

TEST_CASE("sphere_profile: surface, length, curvature sign") {
    auto p = revolution::sphere_profile(1.0, 3);
    CHECK(p.length == doctest::Approx(kPi));
    CHECK(p.dim == 2);
    CHECK(p.origin_exponent == 1);
    for (double rho : {0.3, 1.0, 2.2}) {
        CHECK(p.surface(rho) == doctest::Approx(2.0 * kPi * std::sin(rho)).epsilon(1e-14));
        CHECK(p.curvature(rho) ==
              doctest::Approx(-1.0 / std::pow(std::sin(rho), 2)).epsilon(1e-12));
        CHECK(p.curvature(rho) < 0.0);
    }
    CHECK(revolution::sphere_profile(2.0, 3).length == doctest::Approx(2.0 * kPi));
    CHECK_THROWS_AS(revolution::sphere_profile(1.0, 1), std::domain_error);
}

TEST_CASE("profile_from_curve: unit circle reproduces the sphere profile") {
    auto p = unit_circle_curve_profile();
    auto q = revolution::sphere_profile(1.0, 3);
    CHECK(p.length == doctest::Approx(kPi).epsilon(1e-10));
    for (double rho : {0.2, 0.9, 1.7, 2.8}) {
        CHECK(p.surface(rho) == doctest::Approx(q.surface(rho)).epsilon(1e-10));
        CHECK(p.drift(rho) == doctest::Approx(q.drift(rho)).epsilon(1e-7));
    }
}

TEST_CASE("profile_from_curve: ellipsoid accepted, q bounded above") {
    auto p = ellipsoid_profile();
    CHECK(p.dim == 2);
    double sup_q = -1e300;
    for (int i = 1; i < 128; ++i) {
        const double rho = p.length * i / 128.0;
        sup_q = std::max(sup_q, p.curvature(rho));
    }
    CHECK(sup_q < 1e6);
    CHECK(sup_q < 0.0);  // log S stays concave on the prolate ellipsoid
}

TEST_CASE("profile_from_curve: spherical cap keeps its boundary and length") {
    auto p = unit_circle_curve_profile(BoundaryKind::Dirichlet, 2.0 * kPi / 3.0);
    CHECK(p.length == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-10));
    CHECK(p.boundary == BoundaryKind::Dirichlet);
}

TEST_CASE("profile_from_curve: mirror drift near the antipode of a closed profile") {
    auto p = unit_circle_curve_profile();
    const int m = p.origin_exponent;
    for (double delta : {0.02, 0.01}) {
        const double rho = p.length - delta;
        CHECK(p.drift(rho) * delta / (-static_cast<double>(m)) ==
              doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("profile_from_curve: rejections") {
    // negative r
    CHECK_THROWS_AS(revolution::profile_from_curve(
                        [](double s) { return std::sin(s) - 0.2; },
                        [](double s) { return std::cos(s); }, kPi, 3, BoundaryKind::Closed),
                    std::invalid_argument);
    // does not start on the axis
    CHECK_THROWS_AS(revolution::profile_from_curve(
                        [](double s) { return 0.5 + s; }, [](double s) { return s; }, 1.0,
                        3, BoundaryKind::Closed),
                    std::invalid_argument);
    // closed profile that misses the axis at the far end
    CHECK_THROWS_AS(revolution::profile_from_curve(
                        [](double s) { return std::sin(s); },
                        [](double s) { return std::cos(s); }, 0.8 * kPi, 3,
                        BoundaryKind::Closed),
                    std::invalid_argument);
}

TEST_CASE("model_profile: Euclidean plane and H^3; sin rejected past pi") {
    auto plane = revolution::model_profile([](double r) { return r; }, 2, 20.0);
    CHECK(plane.dim == 2);
    CHECK(plane.origin_exponent == 1);
    CHECK(plane.surface(1.5) == doctest::Approx(2.0 * kPi * 1.5).epsilon(1e-12));
    CHECK(plane.noncompact);

    auto h3 = revolution::model_profile([](double r) { return std::sinh(r); }, 3, 15.0);
    CHECK(h3.surface(1.0) ==
          doctest::Approx(4.0 * kPi * std::pow(std::sinh(1.0), 2)).epsilon(1e-10));
    CHECK(h3.drift(1.0) == doctest::Approx(2.0 / std::tanh(1.0)).epsilon(1e-8));

    CHECK_THROWS_AS(revolution::model_profile([](double r) { return std::sin(r); }, 2, 3.5),
                    std::invalid_argument);
}

TEST_CASE("near-pole curvature approximation q ~ -m/rho^2") {
    auto sph = revolution::sphere_profile(1.0, 3);
    auto ell = ellipsoid_profile();
    for (const auto& p : {sph, ell}) {
        for (double frac : {0.002, 0.005, 0.01}) {
            const double rho = frac * p.length;
            const double expected = -p.origin_exponent / (rho * rho);
            CHECK(p.curvature(rho) / expected == doctest::Approx(1.0).epsilon(0.05));
        }
    }
}

TEST_CASE("mollifier: unit mass, monotone, compact support") {
    auto p = revolution::sphere_profile(1.0, 3);
    auto chi = revolution::mollifier(p, 0.1);
    auto f = [&](double rho) { return chi(rho) * p.surface(rho); };
    CHECK(quad::integrate_finite(f, 0.0, 0.1, 1e-14).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i + 1 <= 50; ++i) {
        CHECK(chi(0.1 * i / 50.0) >= chi(0.1 * (i + 1) / 50.0));
    }
    CHECK(chi(0.1) == 0.0);
    CHECK(chi(0.2) == 0.0);
    CHECK_THROWS_AS(revolution::mollifier(p, kPi / 2.0), std::domain_error);
}

TEST_CASE("solve_heat on the sphere: conservation, positivity, defect, oracle") {
    auto p = revolution::sphere_profile(1.0, 3);
    auto chi = revolution::mollifier(p, 0.08);
    revolution::SolverOptions opts;
    opts.n_cells = 512;
    auto traj = revolution::solve_heat(p, chi, 0.1, opts);

    // closed solve conserves the discrete mass to roundoff (<= 1e-6 required)
    CHECK(std::abs(traj.final_mass - traj.initial_mass) < 1e-10);
    // discrete maximum principle
    CHECK(traj.min_value >= 0.0);
    // monotonicity defect within discretization noise
    double fmax = 0.0;
    for (const auto& st : traj.snapshots) {
        for (double v : st.values) fmax = std::max(fmax, v);
    }
    CHECK(traj.max_defect <= 1e-8 * fmax);

    // independent spectral oracle for the same mollified data
    const auto& fin = traj.final_state();
    std::vector<double> probe_theta;
    std::vector<double> got;
    for (std::size_t i = 0; i < fin.grid.size(); i += 32) {
        probe_theta.push_back(fin.grid[i]);
        got.push_back(fin.values[i]);
    }
    const auto want = spectral_mollifier_solution(p, chi, 0.1, probe_theta);
    double sup_err = 0.0, sup_val = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        sup_err = std::max(sup_err, std::abs(got[i] - want[i]));
        sup_val = std::max(sup_val, std::abs(want[i]));
    }
    CHECK(sup_err <= 2e-4 * sup_val);
}

TEST_CASE("solve_heat: second-order convergence against the spectral oracle") {
    auto p = revolution::sphere_profile(1.0, 3);
    auto chi = revolution::mollifier(p, 0.15);

    auto sup_error = [&](int N, double dt) {
        revolution::SolverOptions opts;
        opts.n_cells = N;
        opts.dt = dt;
        auto traj = revolution::solve_heat(p, chi, 0.05, opts);
        const auto& fin = traj.final_state();
        std::vector<double> thetas;
        std::vector<double> got;
        for (std::size_t i = 0; i < fin.grid.size();
             i += std::max<std::size_t>(1, static_cast<std::size_t>(N) / 64)) {
            thetas.push_back(fin.grid[i]);
            got.push_back(fin.values[i]);
        }
        auto want = spectral_mollifier_solution(p, chi, 0.05, thetas);
        double sup = 0.0;
        for (std::size_t i = 0; i < got.size(); ++i)
            sup = std::max(sup, std::abs(got[i] - want[i]));
        return sup;
    };

    const double dt0 = 0.2 * revolution::solver_dt_max(p, 128);
    const double coarse = sup_error(128, dt0);
    const double fine = sup_error(256, 0.5 * dt0);
    CHECK(coarse / fine >= 3.0);
}

TEST_CASE("solve_heat: Dirichlet cap loses mass through the boundary at every step") {
    auto cap = unit_circle_curve_profile(BoundaryKind::Dirichlet, 2.0 * kPi / 3.0);
    auto chi = revolution::mollifier(cap, 0.3);
    revolution::SolverOptions opts;
    opts.n_cells = 128;
    auto traj = revolution::solve_heat(cap, chi, 0.3, opts);

    CHECK(traj.final_mass < traj.initial_mass);
    // strict decrease, tracked through the accumulated outflux (adding the
    // per-step loss to a unit mass would round away below ~1e-16)
    for (std::size_t i = 1; i < traj.series.size(); ++i) {
        CHECK(traj.series[i].boundary_flux > 0.0);
        CHECK(traj.series[i].outflux_total > traj.series[i - 1].outflux_total);
        // the recomputed mass itself moves below double resolution early on
        CHECK(traj.series[i].mass <=
              traj.series[i - 1].mass + 1e-13 * traj.initial_mass);
    }
    double fmax = 0.0;
    for (const auto& st : traj.snapshots)
        for (double v : st.values) fmax = std::max(fmax, v);
    CHECK(traj.max_defect <= 1e-8 * fmax);
}

TEST_CASE("solve_heat: Neumann cap conserves mass, defect stays negative") {
    auto cap = unit_circle_curve_profile(BoundaryKind::Neumann, 2.0 * kPi / 3.0);
    auto chi = revolution::mollifier(cap, 0.3);
    revolution::SolverOptions opts;
    opts.n_cells = 128;
    auto traj = revolution::solve_heat(cap, chi, 0.3, opts);
    CHECK(std::abs(traj.final_mass - traj.initial_mass) < 1e-6);
    CHECK(traj.min_value >= 0.0);
    double fmax = 0.0;
    for (const auto& st : traj.snapshots)
        for (double v : st.values) fmax = std::max(fmax, v);
    CHECK(traj.max_defect <= 1e-8 * fmax);
}

TEST_CASE("solve_heat: deliberately non-monotone two-bump data is flagged") {
    auto p = revolution::sphere_profile(1.0, 3);
    const int N = 128;
    std::vector<double> init(N + 1);
    for (int i = 0; i <= N; ++i) {
        const double rho = kPi * i / N;
        auto bump = [](double x, double c, double w) {
            const double u = (x - c) / w;
            return std::exp(-u * u);
        };
        init[i] = bump(rho, 0.35 * kPi, 0.08 * kPi) + 0.8 * bump(rho, 0.7 * kPi, 0.08 * kPi);
    }
    revolution::SolverOptions opts;
    opts.n_cells = N;
    auto traj = revolution::solve_heat(p, init, 0.01, opts);
    CHECK(traj.series.front().defect > 0.0);
    CHECK(revolution::monotonicity_defect(traj.snapshots.front()) > 0.0);
}

TEST_CASE("solve_heat rejections") {
    auto p = revolution::sphere_profile(1.0, 3);
    auto chi = revolution::mollifier(p, 0.1);
    revolution::SolverOptions opts;
    opts.n_cells = 32;  // below the minimum
    CHECK_THROWS_AS(revolution::solve_heat(p, chi, 0.1, opts), std::invalid_argument);

    opts.n_cells = 128;
    opts.dt = 10.0 * revolution::solver_dt_max(p, 128);
    CHECK_THROWS_AS(revolution::solve_heat(p, chi, 0.1, opts), std::invalid_argument);

    auto cap = unit_circle_curve_profile(BoundaryKind::Dirichlet, 2.0 * kPi / 3.0);
    std::vector<double> bad(65, 1.0);  // nonzero at the Dirichlet boundary
    revolution::SolverOptions o2;
    o2.n_cells = 64;
    CHECK_THROWS_AS(revolution::solve_heat(cap, bad, 0.1, o2), std::invalid_argument);
}

TEST_CASE("circle profile (n = 2) solves against the S^1 spectral kernel") {
    // S(rho) = vol(S^0) = 2: the plain heat equation on a half-period
    auto p = revolution::sphere_profile(1.0, 2);
    CHECK(p.surface(1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(p.origin_exponent == 0);
    revolution::SolverOptions opts;
    opts.n_cells = 256;
    auto est = revolution::heat_kernel_estimate(p, 1.0, 0.2, {0.15, 0.075}, opts);
    const double want = kernels::sphere_kernel(1, 1.0, 0.2, 1e-13).value;
    CHECK(est.value == doctest::Approx(want).epsilon(1e-3));
}

TEST_CASE("model profiles reproduce the closed-form kernels") {
    revolution::SolverOptions opts;
    opts.n_cells = 512;

    auto plane = revolution::model_profile([](double r) { return r; }, 2, 16.0);
    auto est = revolution::heat_kernel_estimate(plane, 1.0, 0.25, {0.2, 0.1, 0.05}, opts);
    const double exact = kernels::euclidean_kernel(2, 1.0, 0.25).value;
    CHECK(std::abs(est.value - exact) <= 1e-4);

    auto h3 = revolution::model_profile([](double r) { return std::sinh(r); }, 3, 12.0);
    auto est3 = revolution::heat_kernel_estimate(h3, 1.0, 0.25, {0.2, 0.1, 0.05}, opts);
    const double exact3 = kernels::hyperbolic3_kernel(1.0, 0.25).value;
    CHECK(std::abs(est3.value - exact3) <= 1e-3);
}

TEST_CASE("noncompact solve: far-boundary flux stays below 1e-10 of the mass") {
    auto plane = revolution::model_profile([](double r) { return r; }, 2, 16.0);
    auto chi = revolution::mollifier(plane, 0.2);
    revolution::SolverOptions opts;
    opts.n_cells = 256;
    auto traj = revolution::solve_heat(plane, chi, 0.5, opts);
    double worst = 0.0;
    for (const auto& pt : traj.series) worst = std::max(worst, pt.boundary_flux);
    CHECK(worst < 1e-10 * traj.initial_mass);
    CHECK(std::abs(traj.final_mass - traj.initial_mass) < 1e-10);
}

TEST_CASE("heat_kernel_estimate matches the sphere spectral oracle") {
    auto p = revolution::sphere_profile(1.0, 3);
    revolution::SolverOptions opts;
    opts.n_cells = 512;
    const double sup = kernels::sphere_kernel(2, 0.0, 0.1, 1e-12).value;
    for (double d : {0.5, 1.0, 2.0}) {
        auto est = revolution::heat_kernel_estimate(p, d, 0.1, {0.1, 0.05, 0.025}, opts);
        const double want = kernels::sphere_kernel(2, d, 0.1, 1e-12).value;
        CHECK(std::abs(est.value - want) <= 2e-3 * sup);
    }
    // d -> 0 short-time parametrix check on the plane profile
    revolution::SolverOptions o2;
    o2.n_cells = 512;
    auto p2 = revolution::model_profile([](double r) { return r; }, 2, 4.0);
    auto est0 =
        revolution::heat_kernel_estimate(p2, p2.length / 512.0, 1e-3, {0.05, 0.025}, o2);
    const double para = std::pow(4.0 * kPi * 1e-3, -1.0);
    CHECK(est0.value / para == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("curve CSV import round-trips the circle profile") {
    std::ostringstream csv;
    csv << "s,r,z\n";
    const int M = 200;
    for (int i = 0; i <= M; ++i) {
        const double s = kPi * i / M;
        char line[96];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", s, std::sin(s),
                      std::cos(s));
        csv << line;
    }
    std::istringstream in(csv.str());
    auto samples = revolution::read_curve_csv(in);
    CHECK(samples.s.size() == M + 1);
    auto p = revolution::profile_from_samples(samples, 3, BoundaryKind::Closed);
    auto q = revolution::sphere_profile(1.0, 3);
    for (double rho : {0.5, 1.2, 2.4}) {
        CHECK(p.surface(rho) == doctest::Approx(q.surface(rho)).epsilon(1e-6));
    }

    std::istringstream bad("s,r\n0,0\n");
    CHECK_THROWS_AS(revolution::read_curve_csv(bad), std::runtime_error);
}

TEST_CASE("trajectory CSV export: header, shape, determinism") {
    auto p = revolution::sphere_profile(1.0, 3);
    auto chi = revolution::mollifier(p, 0.2);
    revolution::SolverOptions opts;
    opts.n_cells = 64;
    opts.snapshot_stride = 10;
    auto traj = revolution::solve_heat(p, chi, 0.02, opts);
    std::ostringstream a, b;
    revolution::write_trajectory_csv(a, traj);
    revolution::write_trajectory_csv(b, traj);
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, 8) == "t,rho,f\n");
    CHECK(traj.snapshots.size() >= 3);
}

TEST_SUITE_END();
