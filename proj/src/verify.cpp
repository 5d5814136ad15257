#include "heatkern/verify.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "heatkern/fractional.hpp"
#include "heatkern/kernels.hpp"
#include "heatkern/quad.hpp"
#include "heatkern/revolution.hpp"
#include "heatkern/specfun.hpp"

namespace heatkern::verify {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// deterministic point stream for the random-point batteries
struct SplitMix64 {
    std::uint64_t s;
    std::uint64_t next() {
        s += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// index-sharded parallel loop: slot writes keep the aggregate deterministic
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    threads = std::min(threads, n);
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < n;) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

revolution::RadialProfile cap_profile(revolution::BoundaryKind bc) {
    return revolution::profile_from_curve([](double s) { return std::sin(s); },
                                          [](double s) { return std::cos(s); },
                                          2.0 * kPi / 3.0, 3, bc);
}

revolution::RadialProfile ellipsoid_profile() {
    return revolution::profile_from_curve([](double u) { return std::sin(u); },
                                          [](double u) { return 2.0 * std::cos(u); },
                                          kPi, 3, revolution::BoundaryKind::Closed);
}

// ---- suites -------------------------------------------------------------

CheckResult torus_duality(const Options&) {
    CheckResult res;
    res.name = "torus-duality";
    const double tol = 1e-12;
    double worst = 0.0;
    for (double l : {1.0, 2.0, 5.0}) {
        for (double t : {0.01, 0.1, 1.0, 10.0}) {
            SplitMix64 rng{0x5DEECE66DULL};
            for (int i = 0; i < 100; ++i) {
                const double x = rng.uniform();
                const double y = l * rng.uniform();
                const double a = kernels::torus_kernel_image(l, x, y, t, 1e-13).value;
                const double b = kernels::torus_kernel_fourier(l, x, y, t, 1e-13).value;
                worst = std::max(worst, std::abs(a - b));
            }
        }
    }
    res.worst_margin = tol - worst;
    res.pass = worst <= tol;
    res.detail = fmt("max |image - fourier| = %.3g (tol %.0e)", worst, tol);
    return res;
}

CheckResult mass_normalization(const Options&) {
    CheckResult res;
    res.name = "mass";
    const double tol = 1e-6;
    double worst = 0.0;
    auto push = [&](double mass) { worst = std::max(worst, std::abs(mass - 1.0)); };

    for (double t : {0.1, 1.0})
        push(kernels::total_mass(kernels::ModelManifold::sphere(2), t, 1e-8));
    for (double t : {0.5, 2.0}) {
        push(kernels::total_mass(kernels::ModelManifold::hyperbolic_plane(), t, 1e-7,
                                 false));
        push(kernels::total_mass(kernels::ModelManifold::hyperbolic_plane(), t, 1e-7,
                                 true));
    }
    push(kernels::total_mass(kernels::ModelManifold::hyperbolic3(), 1.0, 1e-9));
    for (double t : {0.1, 1.0})
        push(kernels::total_mass(kernels::ModelManifold::flat_torus(2.0), t, 1e-9));

    res.worst_margin = tol - worst;
    res.pass = worst <= tol;
    res.detail = fmt("max |mass - 1| = %.3g (tol %.0e)", worst, tol);
    return res;
}

CheckResult hyperbolic_dual(const Options& opts) {
    CheckResult res;
    res.name = "hyperbolic-dual";
    const double tol = 1e-8;
    const std::vector<double> ds{0.25, 0.5, 1.0, 2.0, 4.0};
    const std::vector<double> ts{0.5, 1.0, 2.0};
    std::vector<double> diffs(ds.size() * ts.size(), 0.0);
    parallel_for(static_cast<int>(diffs.size()), opts.threads, [&](int idx) {
        const double d = ds[static_cast<std::size_t>(idx) % ds.size()];
        const double t = ts[static_cast<std::size_t>(idx) / ds.size()];
        const double a = kernels::hyperbolic2_kernel_integral(d, t, 1e-10).value;
        const double b = kernels::hyperbolic2_kernel_spectral(d, t, 1e-10).value;
        diffs[static_cast<std::size_t>(idx)] = std::abs(a - b);
    });
    const double worst = *std::max_element(diffs.begin(), diffs.end());
    res.worst_margin = tol - worst;
    res.pass = worst <= tol;
    res.detail = fmt("max |integral - spectral| = %.3g (tol %.0e)", worst, tol);
    return res;
}

CheckResult monotonicity(const Options& opts) {
    CheckResult res;
    res.name = "monotonicity";
    struct Model {
        kernels::ModelManifold m;
        double length;
    };
    const std::vector<Model> models{
        {kernels::ModelManifold::euclidean(2), 6.0},
        {kernels::ModelManifold::euclidean(3), 6.0},
        {kernels::ModelManifold::sphere(2), kPi},
        {kernels::ModelManifold::sphere(3), kPi},
        {kernels::ModelManifold::hyperbolic_plane(), 5.0},
        {kernels::ModelManifold::hyperbolic3(), 6.0},
    };
    const int n = 256;
    double margin = std::numeric_limits<double>::infinity();
    double worst_ratio = -std::numeric_limits<double>::infinity();
    for (const auto& model : models) {
        for (double t : {0.01, 0.1, 1.0, 10.0}) {
            std::vector<double> g(n);
            parallel_for(n, opts.threads, [&](int i) {
                const double d = model.length * (i + 1.0) / n;
                g[static_cast<std::size_t>(i)] =
                    kernels::kernel_value(model.m, d, t, 1e-11).value;
            });
            const double sup = *std::max_element(g.begin(), g.end());
            double max_rise = -std::numeric_limits<double>::infinity();
            for (int i = 0; i + 1 < n; ++i) max_rise = std::max(max_rise, g[i + 1] - g[i]);
            margin = std::min(margin, 1e-8 * sup - max_rise);
            worst_ratio = std::max(worst_ratio, max_rise / sup);
        }
    }
    res.worst_margin = margin;
    res.pass = margin >= 0.0;
    res.detail = fmt("max positive rise / sup G = %.3g (tol 1e-8)", worst_ratio);
    return res;
}

CheckResult solver_oracle(const Options&) {
    CheckResult res;
    res.name = "solver-oracle";
    const auto start = std::chrono::steady_clock::now();

    auto prof = revolution::sphere_profile(1.0, 3);
    revolution::SolverOptions sopts;
    sopts.n_cells = 1024;
    auto curve = revolution::heat_kernel_curve(prof, 0.1, {0.1, 0.05, 0.025}, sopts);

    double sup_diff = 0.0, sup_g = 0.0;
    for (std::size_t i = 0; i < curve.state.grid.size(); i += 8) {
        const double want =
            kernels::sphere_kernel(2, curve.state.grid[i], 0.1, 1e-12).value;
        sup_diff = std::max(sup_diff, std::abs(curve.state.values[i] - want));
        sup_g = std::max(sup_g, want);
    }
    const double rel = sup_diff / sup_g;
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    res.worst_margin = 1e-3 - rel;
    res.pass = rel <= 1e-3 && seconds <= 60.0;
    res.detail = fmt("sup|solver - spectral| / sup G = %.3g (tol 1e-3, runtime capped)",
                     rel);
    return res;
}

struct SolveCase {
    std::string label;
    revolution::RadialProfile profile;
    double eps;
};

std::vector<SolveCase> defect_battery() {
    std::vector<SolveCase> cases;
    cases.push_back({"sphere", revolution::sphere_profile(1.0, 3), 0.1});
    cases.push_back({"ellipsoid", ellipsoid_profile(), 0.15});
    cases.push_back(
        {"euclid-model", revolution::model_profile([](double r) { return r; }, 2, 8.0),
         0.2});
    cases.push_back({"hyp3-model",
                     revolution::model_profile([](double r) { return std::sinh(r); }, 3,
                                               8.0),
                     0.2});
    cases.push_back({"cap-dirichlet", cap_profile(revolution::BoundaryKind::Dirichlet),
                     0.3});
    cases.push_back({"cap-neumann", cap_profile(revolution::BoundaryKind::Neumann), 0.3});
    return cases;
}

CheckResult solver_defect(const Options& opts) {
    CheckResult res;
    res.name = "solver-defect";
    auto battery = defect_battery();
    std::vector<double> margins(battery.size());
    std::vector<double> ratios(battery.size());
    parallel_for(static_cast<int>(battery.size()), opts.threads, [&](int i) {
        const auto& c = battery[static_cast<std::size_t>(i)];
        revolution::SolverOptions sopts;
        sopts.n_cells = 256;
        auto traj =
            revolution::solve_heat(c.profile, revolution::mollifier(c.profile, c.eps),
                                   0.5, sopts);
        margins[static_cast<std::size_t>(i)] = 1e-8 * traj.max_value - traj.max_defect;
        ratios[static_cast<std::size_t>(i)] = traj.max_defect / traj.max_value;
    });
    res.worst_margin = *std::min_element(margins.begin(), margins.end());
    res.pass = res.worst_margin >= 0.0;
    res.detail = fmt("max defect / max f = %.3g over 6 profiles (tol 1e-8)",
                     *std::max_element(ratios.begin(), ratios.end()));
    return res;
}

CheckResult solver_mass(const Options& opts) {
    CheckResult res;
    res.name = "solver-mass";
    auto battery = defect_battery();
    std::vector<double> drifts(battery.size(), 0.0);
    std::atomic<bool> dirichlet_ok{true};
    std::atomic<bool> dirichlet_seen{false};
    parallel_for(static_cast<int>(battery.size()), opts.threads, [&](int i) {
        const auto& c = battery[static_cast<std::size_t>(i)];
        revolution::SolverOptions sopts;
        sopts.n_cells = 256;
        auto traj =
            revolution::solve_heat(c.profile, revolution::mollifier(c.profile, c.eps),
                                   0.5, sopts);
        if (c.profile.boundary == revolution::BoundaryKind::Dirichlet) {
            dirichlet_seen = true;
            bool ok = traj.final_mass < traj.initial_mass;
            for (std::size_t j = 1; j < traj.series.size(); ++j) {
                ok = ok && traj.series[j].boundary_flux > 0.0 &&
                     traj.series[j].outflux_total > traj.series[j - 1].outflux_total;
            }
            if (!ok) dirichlet_ok = false;
        } else {
            drifts[static_cast<std::size_t>(i)] =
                std::abs(traj.final_mass - traj.initial_mass);
        }
    });
    const double worst_drift = *std::max_element(drifts.begin(), drifts.end());
    res.worst_margin = 1e-6 - worst_drift;
    res.pass = worst_drift <= 1e-6 && dirichlet_ok && dirichlet_seen;
    res.detail = fmt("max conserved-mass drift = %.3g (tol 1e-6); Dirichlet outflux ",
                     worst_drift);
    res.detail += dirichlet_ok ? "strictly increasing" : "NOT strictly increasing";
    return res;
}

// brute-force log-spaced Riemann oracle for the subordination integral
double subordinate_oracle(double d, double alpha) {
    const long nodes = 100000;
    const double lo = std::log(1e-6), hi = std::log(1e3);
    const double dl = (hi - lo) / static_cast<double>(nodes);
    double sum = 0.0;
    for (long j = 0; j < nodes; ++j) {
        const double t = std::exp(lo + (j + 0.5) * dl);
        sum += kernels::sphere_kernel_series(2, d, t, 1e-10).value * std::pow(t, -alpha) *
               dl;
    }
    sum += std::pow(1e3, -alpha) / (alpha * 4.0 * kPi);
    return sum;
}

CheckResult frac_kernel(const Options& opts) {
    CheckResult res;
    res.name = "frac-kernel";
    bool ok = true;
    double min_value = std::numeric_limits<double>::infinity();
    for (double alpha : {0.25, 0.5, 0.75}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 64; ++i) {
            const double d = 0.05 + (3.1 - 0.05) * i / 63.0;
            const auto v = fractional::subordinate_kernel(2, alpha, d, 1e-7);
            min_value = std::min(min_value, v.K);
            ok = ok && v.K > 0.0 && v.K < prev;
            prev = v.K;
        }
    }

    const std::vector<double> spots{0.05, 0.3, 1.0, 2.0, 3.0};
    std::vector<double> rels(spots.size());
    parallel_for(static_cast<int>(spots.size()), opts.threads, [&](int i) {
        const double d = spots[static_cast<std::size_t>(i)];
        const double got = fractional::subordinate_kernel(2, 0.5, d, 1e-8).K;
        const double want = subordinate_oracle(d, 0.5);
        rels[static_cast<std::size_t>(i)] = std::abs(got - want) / std::abs(want);
    });
    const double worst_rel = *std::max_element(rels.begin(), rels.end());

    res.worst_margin = std::min(min_value, 1e-5 - worst_rel);
    res.pass = ok && worst_rel <= 1e-5;
    res.detail = std::string("K positive+decreasing: ") + (ok ? "yes" : "NO") +
                 fmt("; max rel err vs oracle = %.3g (tol 1e-5)", worst_rel);
    return res;
}

CheckResult frac_heat(const Options&) {
    CheckResult res;
    res.name = "frac-heat";
    double margin = std::numeric_limits<double>::infinity();
    for (double alpha : {0.3, 0.5, 0.9}) {
        for (double t : {0.1, 1.0}) {
            double prev = std::numeric_limits<double>::infinity();
            for (int i = 0; i < 256; ++i) {
                const double theta = kPi * i / 255.0;
                const double v = fractional::frac_heat_kernel(alpha, theta, t, 1e-12).value;
                if (i > 0) margin = std::min(margin, prev - v);
                prev = v;
            }
        }
    }
    res.worst_margin = margin;
    res.pass = margin >= -1e-12;
    res.detail = fmt("min consecutive drop = %.3g (>= -1e-12)", margin);
    return res;
}

CheckResult fejer(const Options& opts) {
    CheckResult res;
    res.name = "fejer";
    double min_v = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) {
        const double x = -0.999 + 1.998 * i / 999.0;
        min_v = std::min(min_v, fractional::fejer_sum(opts.fejer_n, x));
    }
    res.worst_margin = min_v;
    res.pass = min_v > 0.0;
    res.detail = fmt("min partial sum (N=%g) = %.3g", static_cast<double>(opts.fejer_n),
                     min_v);
    return res;
}

CheckResult legendre_cm(const Options& opts) {
    CheckResult res;
    res.name = "legendre-cm";
    fractional::CMFunction exp_sqrt{
        [](double x) { return std::exp(-std::sqrt(x)); }, 4.0, 8, "exp-sqrt"};
    fractional::CMFunction inv_cube{
        [](double x) { return std::pow(1.0 + x, -3.0); }, 3.0, 8, "inv-cube"};
    std::vector<double> mins(2, std::numeric_limits<double>::infinity());
    const fractional::CMFunction* fams[2] = {&exp_sqrt, &inv_cube};
    parallel_for(2, opts.threads, [&](int which) {
        double min_v = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 1000; ++i) {
            const double x = -0.999 + 1.998 * i / 999.0;
            min_v = std::min(min_v, fractional::legendre_cm_sum(
                                        *fams[which], x, 40000, 1e-8));
        }
        mins[static_cast<std::size_t>(which)] = min_v;
    });
    res.worst_margin = std::min(mins[0], mins[1]);
    res.pass = res.worst_margin > 0.0;
    res.detail = fmt("min sum: exp-sqrt %.3g, inv-cube %.3g", mins[0], mins[1]);
    return res;
}

CheckResult mehler_cm(const Options& opts) {
    CheckResult res;
    res.name = "mehler-cm";
    fractional::CMFunction quarter_sq{
        [](double x) { return std::pow(0.25 + x, -2.0); }, 2.0, 8, "quarter-sq"};
    const std::vector<double> rs{0.5, 1.0, 2.0};
    std::vector<double> vals(rs.size());
    parallel_for(static_cast<int>(rs.size()), opts.threads, [&](int i) {
        vals[static_cast<std::size_t>(i)] =
            fractional::mehler_cm_integral(quarter_sq, rs[static_cast<std::size_t>(i)],
                                           1e-4);
    });
    res.worst_margin = *std::min_element(vals.begin(), vals.end());
    res.pass = res.worst_margin > 0.0;
    res.detail = fmt("values at r=0.5,1,2: %.3g, %.3g, %.3g", vals[0], vals[1], vals[2]);
    return res;
}

CheckResult pointwise(const Options&) {
    CheckResult res;
    res.name = "pointwise";
    std::vector<double> grid;
    for (int i = 0; i <= 1000; ++i) grid.push_back(kPi * i / 1000.0);
    fractional::ZonalFunction p1{{0.0, 1.0}};
    fractional::ZonalFunction mix{{0.0, 0.7, 0.0, 0.0, 0.3}};

    double margin = std::numeric_limits<double>::infinity();
    for (const auto& f : {p1, mix}) {
        for (double alpha : {0.25, 0.5, 0.75}) {
            margin = std::min(margin,
                              fractional::cordoba_check(f, alpha, grid).worst_margin);
            margin = std::min(
                margin, fractional::max_principle_check(f, alpha).worst_margin);
        }
    }
    res.worst_margin = margin;
    res.pass = margin >= -1e-10;
    res.detail = fmt("worst Cordoba/max-principle margin = %.3g (>= -1e-10)", margin);
    return res;
}

CheckResult specfun_suite(const Options&) {
    CheckResult res;
    res.name = "specfun";
    double margin = std::numeric_limits<double>::infinity();
    std::string worst_part = "none";
    auto note = [&](double m, const char* part) {
        if (m < margin) {
            margin = m;
            worst_part = part;
        }
    };

    // three-term recurrence, 1e-12 relative
    for (int n = 1; n <= 200; ++n) {
        for (int i = 0; i <= 24; ++i) {
            const double x = -1.0 + 2.0 * i / 24.0;
            const double lhs = (n + 1.0) * specfun::legendre_p(n + 1, x);
            const double rhs = (2.0 * n + 1.0) * x * specfun::legendre_p(n, x) -
                               n * specfun::legendre_p(n - 1, x);
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
            note(1e-12 - std::abs(lhs - rhs) / scale, "recurrence");
        }
    }
    // endpoint exactness, bit-exact
    for (int n = 0; n <= 200; ++n) {
        note(specfun::legendre_p(n, 1.0) == 1.0 ? 0.0 : -1.0, "endpoint+1");
        note(specfun::legendre_p(n, -1.0) == (n % 2 ? -1.0 : 1.0) ? 0.0 : -1.0,
             "endpoint-1");
    }
    // derivative bound
    for (int n = 1; n <= 200; ++n) {
        const double bound = 0.5 * n * (n + 1.0);
        for (int i = 0; i <= 24; ++i) {
            const double x = -1.0 + 2.0 * i / 24.0;
            note(bound * (1.0 + 1e-14) - std::abs(specfun::legendre_p_prime(n, x)),
                 "derivative-bound");
        }
    }
    // Gegenbauer-Legendre identity, 1e-12 absolute
    for (int k = 0; k <= 100; ++k) {
        for (int i = 0; i <= 16; ++i) {
            const double x = -1.0 + 2.0 * i / 16.0;
            note(1e-12 - std::abs(specfun::gegenbauer_c(k, 0.5, x) -
                                  specfun::legendre_p(k, x)),
                 "gegenbauer");
        }
    }
    // (1-x^2)(2n+1) P_n' identity, 1e-11
    for (int n = 1; n <= 100; ++n) {
        for (int i = 1; i < 16; ++i) {
            const double x = -1.0 + 2.0 * i / 16.0;
            const double lhs =
                (1.0 - x * x) * (2.0 * n + 1.0) * specfun::legendre_p_prime(n, x);
            const double rhs = n * (n + 1.0) * (specfun::legendre_p(n - 1, x) -
                                                specfun::legendre_p(n + 1, x));
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
            note(1e-11 - std::abs(lhs - rhs) / scale, "prime-identity");
        }
    }
    res.worst_margin = margin;
    res.pass = margin >= 0.0;
    res.detail = "tightest part: " + worst_part + fmt(" (margin %.3g)", margin);
    return res;
}

CheckResult short_time(const Options&) {
    CheckResult res;
    res.name = "short-time";
    const double t = 1e-3;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double d : {0.02, 0.04, 0.06, 0.08, 0.1}) {
        const double sphere = kernels::sphere_kernel(2, d, t, 1e-12).value;
        const double hyp = kernels::hyperbolic2_kernel_integral(d, t, 1e-12).value;
        for (double v : {sphere, hyp}) {
            const double factor = v * 4.0 * kPi * t * std::exp(d * d / (4.0 * t));
            lo = std::min(lo, factor);
            hi = std::max(hi, factor);
        }
    }
    res.worst_margin = std::min(lo - 0.95, 1.05 - hi);
    res.pass = lo >= 0.95 && hi <= 1.05;
    res.detail = fmt("Euclidean factor range [%.4f, %.4f] (within 5%% of 1)", lo, hi);
    return res;
}

using SuiteFn = CheckResult (*)(const Options&);
struct Suite {
    const char* name;
    SuiteFn fn;
};

const Suite kSuites[] = {
    {"torus-duality", torus_duality},
    {"mass", mass_normalization},
    {"hyperbolic-dual", hyperbolic_dual},
    {"monotonicity", monotonicity},
    {"solver-oracle", solver_oracle},
    {"solver-defect", solver_defect},
    {"solver-mass", solver_mass},
    {"frac-kernel", frac_kernel},
    {"frac-heat", frac_heat},
    {"fejer", fejer},
    {"legendre-cm", legendre_cm},
    {"mehler-cm", mehler_cm},
    {"pointwise", pointwise},
    {"specfun", specfun_suite},
    {"short-time", short_time},
};

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& s : kSuites) names.emplace_back(s.name);
    return names;
}

CheckResult run_suite(const std::string& name, const Options& opts) {
    for (const auto& s : kSuites) {
        if (name == s.name) {
            const auto start = std::chrono::steady_clock::now();
            CheckResult res = s.fn(opts);
            res.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
            return res;
        }
    }
    throw std::invalid_argument("unknown verify suite: " + name);
}

std::vector<CheckResult> run_all(const Options& opts) {
    std::vector<CheckResult> out;
    for (const auto& s : kSuites) out.push_back(run_suite(s.name, opts));
    return out;
}

std::string results_json(const std::vector<CheckResult>& results) {
    nlohmann::json suites = nlohmann::json::array();
    bool all = true;
    for (const auto& r : results) {
        suites.push_back({{"check", r.name},
                          {"parameters", r.detail},
                          {"worst_margin", r.worst_margin},
                          {"pass", r.pass}});
        all = all && r.pass;
    }
    nlohmann::json root{{"suites", suites}, {"pass", all}};
    return root.dump(2);
}

int thread_cap_from_env() {
    if (const char* env = std::getenv("HEATKERN_THREADS")) {
        return std::atoi(env);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace heatkern::verify
