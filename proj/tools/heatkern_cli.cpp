// Command-line front end: kernel evaluation, mass checks, monotonicity
// scans, radial heat-equation solves, fractional computations, positivity
// sums, and the verification suite. CSV output uses 17-significant-digit
// decimals so doubles round-trip; JSON objects have sorted keys. Every run
// is deterministic: the config fully determines the output bytes.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heatkern/fractional.hpp"
#include "heatkern/kernels.hpp"
#include "heatkern/quad.hpp"
#include "heatkern/revolution.hpp"
#include "heatkern/verify.hpp"

namespace {

using namespace heatkern;
constexpr double kPi = std::numbers::pi;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitScanFail = 4;
constexpr int kExitVerifyFail = 5;

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// "start:stop:count" (endpoints inclusive) or a single value
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    const auto c1 = spec.find(':');
    if (c1 == std::string::npos) {
        out.push_back(std::stod(spec));
        return out;
    }
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw CLI::ValidationError("grid", "expected start:stop:count, got " + spec);
    const double start = std::stod(spec.substr(0, c1));
    const double stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    const long count = std::stol(spec.substr(c2 + 1));
    if (count < 1) throw CLI::ValidationError("grid", "count must be >= 1");
    if (count == 1) {
        out.push_back(start);
        return out;
    }
    for (long i = 0; i < count; ++i)
        out.push_back(start + (stop - start) * static_cast<double>(i) /
                                  static_cast<double>(count - 1));
    return out;
}

// kernels are singular at t = 0: drop nonpositive times
std::vector<double> parse_time_grid(const std::string& spec) {
    std::vector<double> all = parse_grid(spec);
    std::vector<double> out;
    for (double t : all)
        if (t > 0.0) out.push_back(t);
    if (out.empty()) throw CLI::ValidationError("t", "time grid has no t > 0 entries");
    return out;
}

std::pair<double, double> parse_pair(const std::string& spec) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("pair", "expected x,y, got " + spec);
    return {std::stod(spec.substr(0, comma)), std::stod(spec.substr(comma + 1))};
}

// output sink: --out file or stdout
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw CLI::ValidationError("out", "cannot open " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

struct ModelArgs {
    std::string model;
    int dim = 2;
    double aspect = 2.0;
    std::string rep = "auto";
};

void add_model_flags(CLI::App* cmd, ModelArgs& args) {
    cmd->add_option("--model", args.model,
                    "euclid | sphere | sphere2 | sphere3 | hyp2 | hyp3 | torus")
        ->required();
    cmd->add_option("--dim", args.dim, "dimension for euclid/sphere");
    cmd->add_option("--aspect", args.aspect, "torus second period (>= 1)");
    cmd->add_option("--rep", args.rep,
                    "hyp2: integral|spectral; torus: image|fourier|auto");
}

kernels::ModelManifold make_model(const ModelArgs& args) {
    const std::string& m = args.model;
    if (m == "euclid") return kernels::ModelManifold::euclidean(args.dim);
    if (m == "sphere") return kernels::ModelManifold::sphere(args.dim);
    if (m == "sphere2") return kernels::ModelManifold::sphere(2);
    if (m == "sphere3") return kernels::ModelManifold::sphere(3);
    if (m == "hyp2") return kernels::ModelManifold::hyperbolic_plane();
    if (m == "hyp3") return kernels::ModelManifold::hyperbolic3();
    if (m == "torus") return kernels::ModelManifold::flat_torus(args.aspect);
    throw CLI::ValidationError("model", "unknown model " + m);
}

kernels::KernelValue eval_model(const kernels::ModelManifold& model,
                                const std::string& rep, double d, double t, double tol) {
    if (model.kind == kernels::ModelManifold::Kind::HyperbolicPlane && rep == "spectral")
        return kernels::hyperbolic2_kernel_spectral(d, t, tol);
    return kernels::kernel_value(model, d, t, tol);
}

double model_scan_length(const kernels::ModelManifold& model, double dmax) {
    return model.kind == kernels::ModelManifold::Kind::Sphere ? kPi : dmax;
}

// named CM function families for `sum`
fractional::CMFunction make_cm(const std::string& name, double t0) {
    if (name == "exp") {
        return {[t0](double x) { return std::exp(-t0 * x); }, 8.0, 8, "exp"};
    }
    if (name == "exp-sqrt") {
        return {[](double x) { return std::exp(-std::sqrt(x)); }, 4.0, 8, "exp-sqrt"};
    }
    if (name == "inv-cube") {
        return {[](double x) { return std::pow(1.0 + x, -3.0); }, 3.0, 8, "inv-cube"};
    }
    if (name == "quarter-sq") {
        return {[](double x) { return std::pow(0.25 + x, -2.0); }, 2.0, 8, "quarter-sq"};
    }
    throw CLI::ValidationError("F", "unknown family " + name +
                                        " (exp, exp-sqrt, inv-cube, quarter-sq)");
}

// profile selection shared by solve and scan --profile
struct ProfileArgs {
    std::string profile;
    double radius = 1.0;
    int dim = 3;
    double angle = 2.0 * kPi / 3.0;
    std::string bc = "closed";
    double rwork = 8.0;
    std::string curve_csv;
};

void add_profile_flags(CLI::App* cmd, ProfileArgs& args) {
    cmd->add_option("--profile", args.profile,
                    "sphere | cap | ellipsoid | euclid-model | hyp3-model | curve | twobump")
        ->required();
    cmd->add_option("--R", args.radius, "sphere radius");
    cmd->add_option("--dim", args.dim, "ambient dimension (hypersurfaces) / model dimension");
    cmd->add_option("--angle", args.angle, "cap polar angle");
    cmd->add_option("--bc", args.bc, "closed | dirichlet | neumann");
    cmd->add_option("--rwork", args.rwork, "working radius for model profiles");
    cmd->add_option("--curve", args.curve_csv, "CSV with columns s,r,z (header row)");
}

revolution::BoundaryKind parse_bc(const std::string& bc) {
    if (bc == "closed") return revolution::BoundaryKind::Closed;
    if (bc == "dirichlet") return revolution::BoundaryKind::Dirichlet;
    if (bc == "neumann") return revolution::BoundaryKind::Neumann;
    throw CLI::ValidationError("bc", "unknown boundary kind " + bc);
}

revolution::RadialProfile make_profile(const ProfileArgs& args) {
    const std::string& p = args.profile;
    if (p == "sphere" || p == "twobump") return revolution::sphere_profile(args.radius, args.dim);
    if (p == "cap") {
        return revolution::profile_from_curve(
            [](double s) { return std::sin(s); }, [](double s) { return std::cos(s); },
            args.angle, args.dim, parse_bc(args.bc));
    }
    if (p == "ellipsoid") {
        return revolution::profile_from_curve(
            [](double u) { return std::sin(u); },
            [](double u) { return 2.0 * std::cos(u); }, kPi, args.dim,
            revolution::BoundaryKind::Closed);
    }
    if (p == "euclid-model") {
        return revolution::model_profile([](double r) { return r; }, args.dim, args.rwork);
    }
    if (p == "hyp3-model") {
        return revolution::model_profile([](double r) { return std::sinh(r); }, 3,
                                         args.rwork);
    }
    if (p == "curve") {
        std::ifstream in(args.curve_csv);
        if (!in) throw CLI::ValidationError("curve", "cannot open " + args.curve_csv);
        auto samples = revolution::read_curve_csv(in);
        return revolution::profile_from_samples(samples, args.dim, parse_bc(args.bc));
    }
    throw CLI::ValidationError("profile", "unknown profile " + p);
}

std::vector<double> two_bump_init(const revolution::RadialProfile& prof, int n_cells) {
    std::vector<double> init(static_cast<std::size_t>(n_cells) + 1);
    for (int i = 0; i <= n_cells; ++i) {
        const double rho = prof.length * i / n_cells;
        auto bump = [&](double c, double w) {
            const double u = (rho - c) / w;
            return std::exp(-u * u);
        };
        init[static_cast<std::size_t>(i)] =
            bump(0.35 * prof.length, 0.08 * prof.length) +
            0.8 * bump(0.7 * prof.length, 0.08 * prof.length);
    }
    if (prof.boundary == revolution::BoundaryKind::Dirichlet) init.back() = 0.0;
    return init;
}

// ---- commands ------------------------------------------------------------

int cmd_eval(const ModelArgs& margs, const std::string& d_spec,
             const std::string& theta_spec, const std::string& t_spec,
             const std::string& xy_spec, bool both_reps, double tol,
             const std::string& out_path) {
    auto model = make_model(margs);
    Sink sink(out_path);
    std::ostream& out = sink.stream();
    out << "model,d_or_theta,t,value,abs_err\n";

    const std::vector<double> times = parse_time_grid(t_spec);

    if (model.kind == kernels::ModelManifold::Kind::FlatTorus) {
        if (xy_spec.empty())
            throw CLI::ValidationError("xy", "torus evaluation needs --xy x,y");
        const auto [x, y] = parse_pair(xy_spec);
        const double dist = std::hypot(x, y);
        for (double t : times) {
            if (both_reps) {
                const auto a = kernels::torus_kernel_image(margs.aspect, x, y, t, tol);
                const auto b = kernels::torus_kernel_fourier(margs.aspect, x, y, t, tol);
                out << "torus:image," << num17(dist) << ',' << num17(t) << ','
                    << num17(a.value) << ',' << num17(a.abs_error_estimate) << '\n';
                out << "torus:fourier," << num17(dist) << ',' << num17(t) << ','
                    << num17(b.value) << ',' << num17(b.abs_error_estimate) << '\n';
            } else {
                kernels::KernelValue v;
                if (margs.rep == "image")
                    v = kernels::torus_kernel_image(margs.aspect, x, y, t, tol);
                else if (margs.rep == "fourier")
                    v = kernels::torus_kernel_fourier(margs.aspect, x, y, t, tol);
                else
                    v = kernels::torus_kernel(margs.aspect, x, y, t, tol);
                out << "torus," << num17(dist) << ',' << num17(t) << ',' << num17(v.value)
                    << ',' << num17(v.abs_error_estimate) << '\n';
            }
        }
        return 0;
    }

    const std::string grid_spec = !theta_spec.empty() ? theta_spec : d_spec;
    if (grid_spec.empty())
        throw CLI::ValidationError("d", "need --d or --theta grid for this model");
    const std::vector<double> ds = parse_grid(grid_spec);
    for (double t : times) {
        for (double d : ds) {
            const auto v = eval_model(model, margs.rep, d, t, tol);
            out << model.name() << ',' << num17(d) << ',' << num17(t) << ','
                << num17(v.value) << ',' << num17(v.abs_error_estimate) << '\n';
        }
    }
    return 0;
}

int cmd_mass(const ModelArgs& margs, const std::string& t_spec, double tol,
             const std::string& out_path) {
    auto model = make_model(margs);
    Sink sink(out_path);
    std::ostream& out = sink.stream();
    out << "model,t,mass\n";
    for (double t : parse_time_grid(t_spec)) {
        const double mass = kernels::total_mass(model, t, tol, margs.rep == "spectral");
        out << model.name() << ',' << num17(t) << ',' << num17(mass) << '\n';
    }
    return 0;
}

int cmd_scan_model(const ModelArgs& margs, const std::string& t_spec, int points,
                   double dmax, const std::string& dir_spec, double tol,
                   const std::string& out_path) {
    auto model = make_model(margs);
    const std::vector<double> times = parse_time_grid(t_spec);
    const double threshold = 1e-8;

    nlohmann::json scans = nlohmann::json::array();
    bool all_pass = true;
    const int threads = verify::thread_cap_from_env();

    for (double t : times) {
        std::vector<double> g(static_cast<std::size_t>(points));
        if (model.kind == kernels::ModelManifold::Kind::FlatTorus) {
            if (dir_spec.empty())
                throw CLI::ValidationError("dir", "torus scan needs --dir dx,dy");
            auto [ux, uy] = parse_pair(dir_spec);
            const double norm = std::hypot(ux, uy);
            if (!(norm > 0.0)) throw CLI::ValidationError("dir", "zero direction");
            ux /= norm;
            uy /= norm;
            // ray from the origin to the fundamental-domain boundary
            const double sx = ux != 0.0 ? 0.5 / std::abs(ux) : 1e300;
            const double sy = uy != 0.0 ? 0.5 * margs.aspect / std::abs(uy) : 1e300;
            const double smax = std::min(sx, sy);
            for (int i = 0; i < points; ++i) {
                const double s = smax * (i + 1.0) / points;
                g[static_cast<std::size_t>(i)] =
                    kernels::torus_kernel(margs.aspect, s * ux, s * uy, t, tol).value;
            }
        } else {
            const double L = model_scan_length(model, dmax);
            std::atomic<int> next{0};
            auto worker = [&]() {
                for (int i; (i = next.fetch_add(1)) < points;) {
                    const double d = L * (i + 1.0) / points;
                    g[static_cast<std::size_t>(i)] =
                        eval_model(model, margs.rep, d, t, tol).value;
                }
            };
            if (threads <= 1) {
                worker();
            } else {
                std::vector<std::thread> pool;
                for (int w = 0; w < std::min(threads, points); ++w)
                    pool.emplace_back(worker);
                for (auto& th : pool) th.join();
            }
        }
        const double sup = *std::max_element(g.begin(), g.end());
        double max_rise = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < g.size(); ++i)
            max_rise = std::max(max_rise, g[i + 1] - g[i]);
        const bool pass = max_rise <= threshold * sup;
        all_pass = all_pass && pass;
        scans.push_back({{"check", "monotonicity"},
                         {"model", model.name()},
                         {"t", t},
                         {"points", points},
                         {"sup", sup},
                         {"max_positive_difference", max_rise},
                         {"threshold", threshold},
                         {"pass", pass}});
    }

    Sink sink(out_path);
    sink.stream() << nlohmann::json{{"scans", scans}, {"pass", all_pass}}.dump(2) << '\n';
    return all_pass ? 0 : kExitScanFail;
}

int cmd_scan_profile(const ProfileArgs& pargs, double t, int n_cells, double eps,
                     const std::string& out_path) {
    auto prof = make_profile(pargs);
    revolution::SolverOptions opts;
    opts.n_cells = n_cells;
    revolution::Trajectory traj;
    if (pargs.profile == "twobump") {
        auto init = two_bump_init(prof, n_cells);
        if (t > 0.0) {
            traj = revolution::solve_heat(prof, init, t, opts);
        } else {
            // t = 0 diagnostic: report the defect of the data itself
            revolution::SolverState st;
            st.grid.resize(static_cast<std::size_t>(n_cells) + 1);
            for (int i = 0; i <= n_cells; ++i)
                st.grid[static_cast<std::size_t>(i)] = prof.length * i / n_cells;
            st.values = init;
            traj.snapshots = {st, st};
            traj.max_defect = revolution::monotonicity_defect(st);
            traj.max_value = *std::max_element(init.begin(), init.end());
            traj.series.push_back({0.0, 0.0, traj.max_defect, 0.0, 0.0});
        }
    } else {
        traj = revolution::solve_heat(prof, revolution::mollifier(prof, eps), t, opts);
    }
    const double threshold = 1e-8 * traj.max_value;
    const bool pass = traj.max_defect <= threshold;
    nlohmann::json j{{"check", "solver-monotonicity"},
                     {"profile", pargs.profile},
                     {"t", t},
                     {"max_defect", traj.max_defect},
                     {"max_value", traj.max_value},
                     {"threshold", threshold},
                     {"pass", pass}};
    Sink sink(out_path);
    sink.stream() << j.dump(2) << '\n';
    return pass ? 0 : kExitScanFail;
}

int cmd_solve(const ProfileArgs& pargs, double eps, double t_end, int n_cells, double dt,
              int snapshots, const std::string& out_prefix) {
    auto prof = make_profile(pargs);
    revolution::SolverOptions opts;
    opts.n_cells = n_cells;
    opts.dt = dt;
    const double dt_eff = dt > 0.0 ? dt : 0.5 * revolution::solver_dt_max(prof, n_cells);
    const long steps = std::max<long>(1, std::lround(std::ceil(t_end / dt_eff - 1e-12)));
    opts.snapshot_stride =
        snapshots > 0 ? std::max<int>(1, static_cast<int>(steps / snapshots)) : 0;

    revolution::Trajectory traj;
    if (pargs.profile == "twobump") {
        traj = revolution::solve_heat(prof, two_bump_init(prof, n_cells), t_end, opts);
    } else {
        traj = revolution::solve_heat(prof, revolution::mollifier(prof, eps), t_end, opts);
    }

    const std::string traj_path = out_prefix + "_trajectory.csv";
    std::ofstream traj_file(traj_path, std::ios::binary);
    if (!traj_file) throw CLI::ValidationError("out-prefix", "cannot open " + traj_path);
    revolution::write_trajectory_csv(traj_file, traj);

    nlohmann::json summary{
        {"boundary_kind", revolution::to_string(prof.boundary)},
        {"mass_drift", traj.final_mass - traj.initial_mass},
        {"max_defect", traj.max_defect},
        {"max_value", traj.max_value},
        {"min_value", traj.min_value},
        {"outflux_total", traj.outflux_total},
        {"dt", traj.dt},
        {"steps", static_cast<long>(traj.series.size()) - 1},
        {"n_cells", n_cells},
        {"t_end", t_end},
    };
    const std::string sum_path = out_prefix + "_summary.json";
    std::ofstream sum_file(sum_path, std::ios::binary);
    if (!sum_file) throw CLI::ValidationError("out-prefix", "cannot open " + sum_path);
    sum_file << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_frac(const std::string& kind, const std::string& alpha_spec,
             const std::string& d_spec, const std::string& theta_spec,
             const std::string& t_spec, double tol, const std::string& out_path) {
    Sink sink(out_path);
    std::ostream& out = sink.stream();
    const std::vector<double> alphas = parse_grid(alpha_spec);
    if (kind == "subordinate") {
        out << "alpha,d,K,k_norm,abs_err\n";
        for (double alpha : alphas) {
            for (double d : parse_grid(d_spec)) {
                const auto v = fractional::subordinate_kernel(2, alpha, d, tol);
                out << num17(alpha) << ',' << num17(d) << ',' << num17(v.K) << ','
                    << num17(v.k_norm) << ',' << num17(v.abs_error_estimate) << '\n';
            }
        }
        return 0;
    }
    if (kind == "heat") {
        out << "alpha,theta,t,value,abs_err\n";
        for (double alpha : alphas) {
            for (double t : parse_time_grid(t_spec)) {
                for (double theta : parse_grid(theta_spec)) {
                    const auto v = fractional::frac_heat_kernel(alpha, theta, t, tol);
                    out << num17(alpha) << ',' << num17(theta) << ',' << num17(t) << ','
                        << num17(v.value) << ',' << num17(v.abs_error_estimate) << '\n';
                }
            }
        }
        return 0;
    }
    throw CLI::ValidationError("kind", "unknown frac kind " + kind);
}

int cmd_sum(const std::string& kind, int N, const std::string& x_spec,
            const std::string& r_spec, const std::string& family, double t0, double tol,
            const std::string& out_path) {
    Sink sink(out_path);
    std::ostream& out = sink.stream();
    if (kind == "fejer") {
        out << "N,x,value\n";
        for (double x : parse_grid(x_spec)) {
            out << N << ',' << num17(x) << ',' << num17(fractional::fejer_sum(N, x))
                << '\n';
        }
        return 0;
    }
    if (kind == "legendre-cm") {
        auto F = make_cm(family, t0);
        out << "F,x,value\n";
        for (double x : parse_grid(x_spec)) {
            out << F.name << ',' << num17(x) << ','
                << num17(fractional::legendre_cm_sum(F, x, 40000, tol)) << '\n';
        }
        return 0;
    }
    if (kind == "mehler-cm") {
        auto F = make_cm(family, t0);
        out << "F,r,value\n";
        for (double r : parse_grid(r_spec)) {
            out << F.name << ',' << num17(r) << ','
                << num17(fractional::mehler_cm_integral(F, r, tol)) << '\n';
        }
        return 0;
    }
    throw CLI::ValidationError("kind", "unknown sum kind " + kind);
}

int cmd_verify(const std::string& only, int fejer_n, const std::string& out_path) {
    verify::Options opts;
    opts.threads = verify::thread_cap_from_env();
    opts.fejer_n = fejer_n;
    std::vector<verify::CheckResult> results;
    if (only.empty()) {
        results = verify::run_all(opts);
    } else {
        results.push_back(verify::run_suite(only, opts));
    }
    Sink sink(out_path);
    sink.stream() << verify::results_json(results) << '\n';
    for (const auto& r : results)
        if (!r.pass) return kExitVerifyFail;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heatkern: heat kernels on model manifolds, radial solves, and the "
                 "monotonicity verification suite"};
    app.require_subcommand(1);

    // eval
    ModelArgs eval_model_args;
    std::string eval_d, eval_theta, eval_t = "1", eval_xy, eval_out;
    bool eval_both = false;
    double eval_tol = 1e-10;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a kernel on a grid (CSV)");
    add_model_flags(eval_cmd, eval_model_args);
    eval_cmd->add_option("--d", eval_d, "distance grid start:stop:count");
    eval_cmd->add_option("--theta", eval_theta, "sphere angle grid");
    eval_cmd->add_option("--t", eval_t, "time grid (t = 0 dropped)");
    eval_cmd->add_option("--xy", eval_xy, "torus point x,y");
    eval_cmd->add_flag("--both-reps", eval_both, "emit image and Fourier rows (torus)");
    eval_cmd->add_option("--tol", eval_tol, "evaluation tolerance");
    eval_cmd->add_option("--out", eval_out, "output file (default stdout)");

    // mass
    ModelArgs mass_args;
    std::string mass_t = "1", mass_out;
    double mass_tol = 1e-8;
    auto* mass_cmd = app.add_subcommand("mass", "total kernel mass (CSV)");
    add_model_flags(mass_cmd, mass_args);
    mass_cmd->add_option("--t", mass_t, "time grid");
    mass_cmd->add_option("--tol", mass_tol, "quadrature tolerance");
    mass_cmd->add_option("--out", mass_out, "output file");

    // scan
    ModelArgs scan_margs;
    ProfileArgs scan_pargs;
    std::string scan_t = "0.1", scan_dir, scan_out;
    int scan_points = 256, scan_cells = 256;
    double scan_dmax = 6.0, scan_tol = 1e-10, scan_eps = 0.1;
    auto* scan_cmd = app.add_subcommand("scan", "radial monotonicity scan (JSON)");
    scan_cmd->add_option("--model", scan_margs.model, "kernel scan model");
    scan_cmd->add_option("--dim", scan_margs.dim, "dimension");
    scan_cmd->add_option("--aspect", scan_margs.aspect, "torus aspect");
    scan_cmd->add_option("--rep", scan_margs.rep, "hyp2 representation");
    scan_cmd->add_option("--profile", scan_pargs.profile,
                         "solver-profile scan (sphere|cap|ellipsoid|...|twobump)");
    scan_cmd->add_option("--R", scan_pargs.radius, "sphere radius");
    scan_cmd->add_option("--angle", scan_pargs.angle, "cap angle");
    scan_cmd->add_option("--bc", scan_pargs.bc, "cap boundary kind");
    scan_cmd->add_option("--rwork", scan_pargs.rwork, "model working radius");
    scan_cmd->add_option("--curve", scan_pargs.curve_csv, "curve CSV path");
    scan_cmd->add_option("--t", scan_t, "time grid (kernel scan) or single t (profile)");
    scan_cmd->add_option("--points", scan_points, "grid points");
    scan_cmd->add_option("--N", scan_cells, "solver cells (profile scan)");
    scan_cmd->add_option("--eps", scan_eps, "mollifier width (profile scan)");
    scan_cmd->add_option("--dmax", scan_dmax, "scan range for noncompact models");
    scan_cmd->add_option("--dir", scan_dir, "torus ray direction dx,dy");
    scan_cmd->add_option("--tol", scan_tol, "evaluation tolerance");
    scan_cmd->add_option("--out", scan_out, "output file");

    // solve
    ProfileArgs solve_pargs;
    double solve_eps = 0.05, solve_t = 0.1, solve_dt = 0.0;
    int solve_cells = 256, solve_snapshots = 10;
    std::string solve_prefix = "heatkern_solve";
    auto* solve_cmd =
        app.add_subcommand("solve", "radial heat solve: trajectory CSV + summary JSON");
    add_profile_flags(solve_cmd, solve_pargs);
    solve_cmd->add_option("--eps", solve_eps, "mollifier width");
    solve_cmd->add_option("--t", solve_t, "final time");
    solve_cmd->add_option("--N", solve_cells, "grid cells (>= 64)");
    solve_cmd->add_option("--dt", solve_dt, "timestep (0 = auto)");
    solve_cmd->add_option("--snapshots", solve_snapshots, "snapshot count in the CSV");
    solve_cmd->add_option("--out-prefix", solve_prefix, "output path prefix");

    // frac
    std::string frac_kind = "subordinate", frac_alpha = "0.5", frac_d = "0.05:3.1:64";
    std::string frac_theta = "0:3.14159:64", frac_t = "0.5", frac_out;
    double frac_tol = 1e-7;
    auto* frac_cmd = app.add_subcommand("frac", "fractional kernels (CSV)");
    frac_cmd->add_option("--kind", frac_kind, "subordinate | heat");
    frac_cmd->add_option("--alpha", frac_alpha, "alpha grid");
    frac_cmd->add_option("--d", frac_d, "distance grid (subordinate)");
    frac_cmd->add_option("--theta", frac_theta, "angle grid (heat)");
    frac_cmd->add_option("--t", frac_t, "time grid (heat)");
    frac_cmd->add_option("--tol", frac_tol, "tolerance");
    frac_cmd->add_option("--out", frac_out, "output file");

    // sum
    std::string sum_kind = "fejer", sum_x = "-0.99:0.99:99", sum_r = "0.5:2:4";
    std::string sum_family = "exp-sqrt", sum_out;
    int sum_n = 200;
    double sum_t0 = 1.0, sum_tol = 1e-8;
    auto* sum_cmd = app.add_subcommand("sum", "positivity sums and transforms (CSV)");
    sum_cmd->add_option("--kind", sum_kind, "fejer | legendre-cm | mehler-cm");
    sum_cmd->add_option("--N", sum_n, "Fejer partial-sum order");
    sum_cmd->add_option("--x", sum_x, "x grid in (-1,1)");
    sum_cmd->add_option("--r", sum_r, "r grid (mehler-cm)");
    sum_cmd->add_option("--F", sum_family, "CM family: exp|exp-sqrt|inv-cube|quarter-sq");
    sum_cmd->add_option("--t0", sum_t0, "rate for the exp family");
    sum_cmd->add_option("--tol", sum_tol, "truncation tolerance");
    sum_cmd->add_option("--out", sum_out, "output file");

    // verify
    std::string verify_only, verify_out;
    int verify_fejer_n = 200;
    auto* verify_cmd =
        app.add_subcommand("verify", "run property suites (JSON), exit 5 on failure");
    verify_cmd->add_option("--only", verify_only, "run a single suite by name");
    verify_cmd->add_option("--N", verify_fejer_n, "Fejer order for the fejer suite");
    verify_cmd->add_option("--out", verify_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (eval_cmd->parsed())
            return cmd_eval(eval_model_args, eval_d, eval_theta, eval_t, eval_xy,
                            eval_both, eval_tol, eval_out);
        if (mass_cmd->parsed()) return cmd_mass(mass_args, mass_t, mass_tol, mass_out);
        if (scan_cmd->parsed()) {
            if (!scan_pargs.profile.empty())
                return cmd_scan_profile(scan_pargs, parse_grid(scan_t).front(),
                                        scan_cells, scan_eps, scan_out);
            if (scan_margs.model.empty())
                throw CLI::ValidationError("scan", "need --model or --profile");
            return cmd_scan_model(scan_margs, scan_t, scan_points, scan_dmax, scan_dir,
                                  scan_tol, scan_out);
        }
        if (solve_cmd->parsed())
            return cmd_solve(solve_pargs, solve_eps, solve_t, solve_cells, solve_dt,
                             solve_snapshots, solve_prefix);
        if (frac_cmd->parsed())
            return cmd_frac(frac_kind, frac_alpha, frac_d, frac_theta, frac_t, frac_tol,
                            frac_out);
        if (sum_cmd->parsed())
            return cmd_sum(sum_kind, sum_n, sum_x, sum_r, sum_family, sum_t0, sum_tol,
                           sum_out);
        if (verify_cmd->parsed()) return cmd_verify(verify_only, verify_fejer_n, verify_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        // solver/profile rejection during a solve is a numerical outcome
        std::cerr << (solve_cmd->parsed() ? "solver rejection: " : "config error: ")
                  << e.what() << '\n';
        return solve_cmd->parsed() ? kExitNumerical : kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << (solve_cmd->parsed() ? "solver rejection: " : "config error: ")
                  << e.what() << '\n';
        return solve_cmd->parsed() ? kExitNumerical : kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
