#ifndef HEATKERN_REVOLUTION_HPP
#define HEATKERN_REVOLUTION_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "heatkern/kernels.hpp"

namespace heatkern::revolution {

enum class BoundaryKind { Closed, Dirichlet, Neumann };

std::string to_string(BoundaryKind k);

/// Radial geometry of a revolution hypersurface or a spherically
/// symmetric model manifold. surface is S(rho), the volume of the
/// geodesic sphere of radius rho about the pole; drift and curvature are
/// (log S)' and (log S)''. S(rho) ~ c rho^origin_exponent near the pole.
struct RadialProfile {
    int dim = 2;               // intrinsic dimension of the manifold
    int origin_exponent = 1;   // m = dim - 1
    double length = 0.0;       // geodesic diameter, or the working radius
    BoundaryKind boundary = BoundaryKind::Closed;
    bool noncompact = false;   // far end truncated at a working radius
    std::function<double(double)> surface;
    std::function<double(double)> drift;
    std::function<double(double)> curvature;
    std::string name;
};

/// Geodesic sphere of radius R in R^n (the round S^{n-1} scaled by R):
/// S(rho) = vol(S^{n-2}) (R sin(rho/R))^{n-2}, L = pi R, Closed.
RadialProfile sphere_profile(double R, int n);

/// Optional analytic derivatives of a generating curve. When absent,
/// fourth-order finite differences of the callables are used.
struct CurveDerivatives {
    std::function<double(double)> r1, z1;  // first derivatives
    std::function<double(double)> r2, z2;  // second derivatives
};

/// Hypersurface of revolution in R^n generated by the curve
/// (r(s), z(s)), s in [0, s_max], starting on the axis with the curve
/// leaving it perpendicular (dr/drho = 1 at the pole). The curve is
/// reparametrized by arc length, so the geodesic radius rho from the pole
/// is arc length along the meridian. Rejects curves with r < 0, curves
/// that miss the axis as declared, and profiles whose sampled (log S)''
/// exceeds q_max.
RadialProfile profile_from_curve(const std::function<double(double)>& r,
                                 const std::function<double(double)>& z,
                                 double s_max, int n, BoundaryKind boundary,
                                 const CurveDerivatives* derivs = nullptr,
                                 double q_max = 1e6);

/// Spherically symmetric model manifold of dimension n with metric
/// drho^2 + A^2(rho) dsigma^2, truncated at the working radius R_work
/// with a homogeneous Neumann far boundary (admissible while the
/// monitored boundary flux stays negligible).
RadialProfile model_profile(const std::function<double(double)>& A, int n,
                            double R_work,
                            const std::function<double(double)>& A1 = {},
                            const std::function<double(double)>& A2 = {},
                            double q_max = 1e6);

/// Columns s,r,z with a header row.
struct CurveSamples {
    std::vector<double> s, r, z;
};
CurveSamples read_curve_csv(std::istream& in);
RadialProfile profile_from_samples(const CurveSamples& samples, int n,
                                   BoundaryKind boundary, double q_max = 1e6);

/// Smooth bump c(eps) exp(-1/(1-(rho/eps)^2)) on [0, eps), unit mass
/// against S(rho) drho.
struct Mollifier {
    double eps = 0.0;
    double normalization = 0.0;
    double operator()(double rho) const;
};
Mollifier mollifier(const RadialProfile& profile, double eps);

/// Discretized radial solution.
struct SolverState {
    std::vector<double> grid;
    std::vector<double> values;
    double time = 0.0;
    double mass = 0.0;
    double defect = 0.0;  // max_i (f_{i+1} - f_i)
};

/// max_i (f_{i+1} - f_i): the discrete analog of the radial-monotonicity
/// defect sup dF/drho. Theorems 2-4 predict <= 0 up to discretization
/// error for mollified initial data.
double monotonicity_defect(const SolverState& state);

struct TrajectoryPoint {
    double t = 0.0;
    double mass = 0.0;
    double defect = 0.0;
    double boundary_flux = 0.0;   // instantaneous flux at the far boundary
    double outflux_total = 0.0;   // accumulated Dirichlet outflux
};

struct SolverOptions {
    int n_cells = 256;        // grid nodes 0..N, N >= 64
    double dt = 0.0;          // 0 -> 0.5 * dt_max(N)
    int snapshot_stride = 0;  // 0 -> initial + final snapshots only
};

struct Trajectory {
    std::vector<TrajectoryPoint> series;   // one point per step, plus t = 0
    std::vector<SolverState> snapshots;    // first = initial, last = final
    double dt = 0.0;
    double max_defect = 0.0;               // over every recorded step
    double min_value = 0.0;                // over every step (max principle)
    double max_value = 0.0;                // over every step
    double initial_mass = 0.0;
    double final_mass = 0.0;
    double outflux_total = 0.0;
    const SolverState& final_state() const { return snapshots.back(); }
};

/// Timestep ceiling for grid size N on this profile: keeps the
/// Crank-Nicolson update a positive (M-matrix / nonnegative explicit
/// half) scheme, so the discrete maximum principle holds.
double solver_dt_max(const RadialProfile& profile, int n_cells);

/// Crank-Nicolson time stepping of f_t = (1/S) (S f')' = f'' + (log S)' f'
/// on the uniform rho-grid, discretized in flux form so Closed/Neumann
/// solves conserve the discrete mass exactly and the pole rows reproduce
/// the regularized operator (1+m) f'' at rho = 0. Dirichlet imposes
/// f(L) = 0; Neumann imposes zero flux at L.
Trajectory solve_heat(const RadialProfile& profile, const Mollifier& init,
                      double t_end, const SolverOptions& opts = {});
Trajectory solve_heat(const RadialProfile& profile, const std::vector<double>& init,
                      double t_end, const SolverOptions& opts = {});

/// Kernel estimate on the whole grid: one solve per eps in the decreasing
/// list, Richardson-extrapolated nodewise in eps^2. The residual is the
/// largest last-level extrapolation correction over the grid.
struct KernelCurve {
    SolverState state;
    double extrapolation_residual = 0.0;
};
KernelCurve heat_kernel_curve(const RadialProfile& profile, double t,
                              const std::vector<double>& eps_list,
                              const SolverOptions& opts = {});

/// G(d, t) estimated from heat_kernel_curve by interpolation at d; the
/// error estimate is the extrapolation residual.
kernels::KernelValue heat_kernel_estimate(const RadialProfile& profile, double d,
                                          double t, const std::vector<double>& eps_list,
                                          const SolverOptions& opts = {});

/// Trajectory CSV with columns t,rho,f over the recorded snapshots.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace heatkern::revolution

#endif
