#include "heatkern/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "heatkern/quad.hpp"

namespace heatkern::revolution {

namespace {

constexpr double kPi = std::numbers::pi;

// 5-point Gauss-Legendre on [a,b].
double gauss5(const std::function<double(double)>& f, double a, double b) {
    static constexpr double x[5] = {-0.906179845938663992797626878299,
                                    -0.538469310105683091036314420700,
                                    0.0,
                                    0.538469310105683091036314420700,
                                    0.906179845938663992797626878299};
    static constexpr double w[5] = {0.236926885056189087514264040720,
                                    0.478628670499366468041291514836,
                                    0.568888888888888888888888888889,
                                    0.478628670499366468041291514836,
                                    0.236926885056189087514264040720};
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += w[i] * f(c + h * x[i]);
    return s * h;
}

// 2-point Gauss-Legendre on [a,b] (used for the arc-length table).
double gauss2(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double d = h / std::numbers::sqrt3;
    return h * (f(c - d) + f(c + d));
}

// Fourth-order first derivative; falls back to one-sided stencils near the
// ends of [lo, hi].
double fd1(const std::function<double(double)>& f, double x, double h, double lo,
           double hi) {
    if (x - 2 * h >= lo && x + 2 * h <= hi) {
        return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
    }
    if (x + 4 * h <= hi) {
        return (-25 * f(x) + 48 * f(x + h) - 36 * f(x + 2 * h) + 16 * f(x + 3 * h) -
                3 * f(x + 4 * h)) /
               (12 * h);
    }
    return (25 * f(x) - 48 * f(x - h) + 36 * f(x - 2 * h) - 16 * f(x - 3 * h) +
            3 * f(x - 4 * h)) /
           (12 * h);
}

// Natural cubic spline through strictly increasing nodes.
class CubicSpline {
  public:
    CubicSpline(std::vector<double> xs, std::vector<double> ys)
        : x_(std::move(xs)), y_(std::move(ys)) {
        const std::size_t n = x_.size();
        if (n < 3) throw std::invalid_argument("CubicSpline: needs >= 3 samples");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw std::invalid_argument("CubicSpline: abscissae must increase");
        m_.assign(n, 0.0);
        std::vector<double> a(n, 0.0), b(n, 1.0), c(n, 0.0), d(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double hl = x_[i] - x_[i - 1];
            const double hr = x_[i + 1] - x_[i];
            a[i] = hl / 6.0;
            b[i] = (hl + hr) / 3.0;
            c[i] = hr / 6.0;
            d[i] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
        }
        // Thomas solve with natural end conditions m_0 = m_{n-1} = 0
        for (std::size_t i = 2; i + 1 < n; ++i) {
            const double w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            d[i] -= w * d[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m_[i] = (d[i] - c[i] * (i + 2 < n ? m_[i + 1] : 0.0)) / b[i];
            if (i == 1) break;
        }
    }

    double operator()(double x) const {
        const std::size_t n = x_.size();
        std::size_t j = static_cast<std::size_t>(
            std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
        j = std::clamp<std::size_t>(j, 1, n - 1);
        const std::size_t i = j - 1;
        const double h = x_[j] - x_[i];
        const double u = (x_[j] - x) / h;
        const double v = (x - x_[i]) / h;
        return u * y_[i] + v * y_[j] +
               ((u * u * u - u) * m_[i] + (v * v * v - v) * m_[j]) * h * h / 6.0;
    }

  private:
    std::vector<double> x_, y_, m_;
};

struct CurveFuncs {
    std::function<double(double)> r, z, r1, z1;
    double s_max = 0.0;
    double sigma(double s) const { return std::hypot(r1(s), z1(s)); }
};

// Arc-length table and its inverse for a generating curve.
class ArcLength {
  public:
    ArcLength(const CurveFuncs& curve, int table_size) : curve_(curve) {
        const int M = table_size;
        s_.resize(M + 1);
        rho_.resize(M + 1);
        const double h = curve.s_max / M;
        auto sig = [this](double s) { return curve_.sigma(s); };
        s_[0] = 0.0;
        rho_[0] = 0.0;
        for (int j = 0; j < M; ++j) {
            s_[j + 1] = (j + 1) * h;
            rho_[j + 1] = rho_[j] + gauss2(sig, s_[j], s_[j + 1]);
        }
    }

    double length() const { return rho_.back(); }

    double s_of_rho(double rho) const {
        rho = std::clamp(rho, 0.0, rho_.back());
        std::size_t j = static_cast<std::size_t>(
            std::upper_bound(rho_.begin(), rho_.end(), rho) - rho_.begin());
        j = std::clamp<std::size_t>(j, 1, rho_.size() - 1);
        const std::size_t i = j - 1;
        double frac = (rho - rho_[i]) / (rho_[j] - rho_[i]);
        double s = s_[i] + frac * (s_[j] - s_[i]);
        auto sig = [this](double u) { return curve_.sigma(u); };
        for (int it = 0; it < 6; ++it) {
            const double res = rho_[i] + gauss2(sig, s_[i], s) - rho;
            const double der = curve_.sigma(s);
            if (!(der > 0.0)) break;
            const double step = res / der;
            s -= step;
            s = std::clamp(s, s_[i] - 1e-12, s_[j] + 1e-12);
            if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(s))) break;
        }
        return std::clamp(s, 0.0, curve_.s_max);
    }

  private:
    CurveFuncs curve_;
    std::vector<double> s_, rho_;
};

void verify_q_bounded(const RadialProfile& profile, double q_max) {
    const double L = profile.length;
    const double delta = L / 400.0;
    double sup_q = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 400; ++i) {
        const double rho = delta + (L - 2 * delta) * i / 400.0;
        sup_q = std::max(sup_q, profile.curvature(rho));
    }
    if (!(sup_q < q_max)) {
        std::ostringstream msg;
        msg << "profile '" << profile.name << "': sampled (log S)'' reaches " << sup_q
            << ", above the allowed bound " << q_max;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

std::string to_string(BoundaryKind k) {
    switch (k) {
        case BoundaryKind::Closed: return "closed";
        case BoundaryKind::Dirichlet: return "dirichlet";
        case BoundaryKind::Neumann: return "neumann";
    }
    return "unknown";
}

RadialProfile sphere_profile(double R, int n) {
    if (!(R > 0.0)) throw std::domain_error("sphere_profile: requires R > 0");
    if (n < 2) throw std::domain_error("sphere_profile: requires n >= 2");
    const double vol = kernels::sphere_volume(n - 2);
    const int m = n - 2;
    RadialProfile p;
    p.dim = n - 1;
    p.origin_exponent = m;
    p.length = kPi * R;
    p.boundary = BoundaryKind::Closed;
    p.surface = [vol, R, m](double rho) {
        return vol * std::pow(R * std::sin(rho / R), m);
    };
    p.drift = [R, m](double rho) { return m / (R * std::tan(rho / R)); };
    p.curvature = [R, m](double rho) {
        const double s = R * std::sin(rho / R);
        return -m / (s * s);
    };
    p.name = "sphere(R=" + std::to_string(R) + ",n=" + std::to_string(n) + ")";
    return p;
}

RadialProfile profile_from_curve(const std::function<double(double)>& r,
                                 const std::function<double(double)>& z,
                                 double s_max, int n, BoundaryKind boundary,
                                 const CurveDerivatives* derivs, double q_max) {
    if (!(s_max > 0.0)) throw std::domain_error("profile_from_curve: requires s_max > 0");
    if (n < 2) throw std::domain_error("profile_from_curve: requires n >= 2");

    const double h = 7.5e-4 * s_max;
    CurveFuncs curve;
    curve.r = r;
    curve.z = z;
    curve.s_max = s_max;
    if (derivs && derivs->r1 && derivs->z1) {
        curve.r1 = derivs->r1;
        curve.z1 = derivs->z1;
    } else {
        curve.r1 = [r, h, s_max](double s) { return fd1(r, s, h, 0.0, s_max); };
        curve.z1 = [z, h, s_max](double s) { return fd1(z, s, h, 0.0, s_max); };
    }

    // sanity of the generating curve
    double r_scale = 0.0;
    for (int i = 0; i <= 256; ++i) {
        const double s = s_max * i / 256.0;
        const double ri = r(s);
        if (ri < -1e-12) {
            throw std::invalid_argument("profile_from_curve: generating curve has r < 0");
        }
        r_scale = std::max(r_scale, ri);
    }
    if (!(std::abs(r(0.0)) <= 1e-9 * std::max(1.0, r_scale)))
        throw std::invalid_argument("profile_from_curve: curve does not start on the axis");
    const double sig0 = curve.sigma(0.0);
    if (!(sig0 > 0.0) || std::abs(curve.r1(0.0) / sig0 - 1.0) > 2e-4)
        throw std::invalid_argument(
            "profile_from_curve: curve must leave the axis perpendicular (dr/drho = 1)");
    if (boundary == BoundaryKind::Closed &&
        !(std::abs(r(s_max)) <= 1e-6 * std::max(1.0, r_scale)))
        throw std::invalid_argument(
            "profile_from_curve: closed profile requires the curve to return to the axis");

    auto arcs = std::make_shared<ArcLength>(curve, 4096);
    auto curve_ptr = std::make_shared<CurveFuncs>(curve);
    const double L = arcs->length();
    const double vol = kernels::sphere_volume(n - 2);
    const int m = n - 2;

    // b(rho) = m r'(s) / (sigma(s) r(s)); q = db/drho = g'(s)/sigma(s)
    auto g = [curve_ptr, m](double s) {
        return m * curve_ptr->r1(s) / (curve_ptr->sigma(s) * curve_ptr->r(s));
    };

    RadialProfile p;
    p.dim = n - 1;
    p.origin_exponent = m;
    p.length = L;
    p.boundary = boundary;
    p.surface = [arcs, curve_ptr, vol, m](double rho) {
        const double s = arcs->s_of_rho(rho);
        return vol * std::pow(curve_ptr->r(s), m);
    };
    p.drift = [arcs, g](double rho) { return g(arcs->s_of_rho(rho)); };
    if (derivs && derivs->r1 && derivs->z1 && derivs->r2 && derivs->z2) {
        const CurveDerivatives dv = *derivs;
        auto rr = r;
        p.curvature = [arcs, curve_ptr, dv, rr, m](double rho) {
            const double s = arcs->s_of_rho(rho);
            const double r0 = rr(s), r1 = dv.r1(s), r2 = dv.r2(s);
            const double z1 = dv.z1(s), z2 = dv.z2(s);
            const double sig = std::hypot(r1, z1);
            const double sig1 = (r1 * r2 + z1 * z2) / sig;
            const double gp = m * (r2 / (sig * r0) - r1 * sig1 / (sig * sig * r0) -
                                   r1 * r1 / (sig * r0 * r0));
            return gp / sig;
        };
    } else {
        // b carries first-order poles at the axis (and at the antipode of a
        // closed profile); differentiating the regular products rho*b and
        // (L-rho)*b keeps the stencil well conditioned next to the poles
        const double hq = 2.0 * h;
        const bool closed = boundary == BoundaryKind::Closed;
        const int mm = m;
        auto b_of = [arcs, g](double x) { return g(arcs->s_of_rho(x)); };
        p.curvature = [b_of, hq, L, closed, mm](double rho) {
            if (closed && rho > 0.5 * L) {
                auto w = [&](double x) {
                    return x >= L ? -static_cast<double>(mm) : (L - x) * b_of(x);
                };
                const double wp = fd1(w, rho, hq, 0.0, L);
                return (wp + b_of(rho)) / (L - rho);
            }
            auto u = [&](double x) {
                return x <= 0.0 ? static_cast<double>(mm) : x * b_of(x);
            };
            const double up = fd1(u, rho, hq, 0.0, L);
            return (up - b_of(rho)) / rho;
        };
    }
    p.name = "curve(n=" + std::to_string(n) + ")";
    verify_q_bounded(p, q_max);
    return p;
}

RadialProfile model_profile(const std::function<double(double)>& A, int n,
                            double R_work, const std::function<double(double)>& A1,
                            const std::function<double(double)>& A2, double q_max) {
    if (n < 2) throw std::domain_error("model_profile: requires n >= 2");
    if (!(R_work > 0.0)) throw std::domain_error("model_profile: requires R_work > 0");

    for (int i = 1; i <= 256; ++i) {
        const double rho = R_work * i / 256.0;
        if (!(A(rho) > 0.0))
            throw std::invalid_argument("model_profile: A must be positive on (0, R_work]");
    }
    for (double rho : {1e-6 * R_work, 1e-5 * R_work}) {
        if (std::abs(A(rho) / rho - 1.0) > 1e-3)
            throw std::invalid_argument("model_profile: requires A(rho)/rho -> 1 at the pole");
    }

    const double h0 = 1e-3 * std::min(R_work, 1.0);
    std::function<double(double)> d1 = A1, d2 = A2;
    if (!d1) {
        d1 = [A, h0](double rho) {
            const double h = std::min(h0, 0.25 * rho);
            return fd1(A, rho, h, 0.0, std::numeric_limits<double>::infinity());
        };
    }
    if (!d2) {
        const auto d1c = d1;
        d2 = [d1c, h0](double rho) {
            const double h = std::min(h0, 0.25 * rho);
            return fd1(d1c, rho, h, 0.0, std::numeric_limits<double>::infinity());
        };
    }

    const double vol = kernels::sphere_volume(n - 1);
    const int m = n - 1;
    RadialProfile p;
    p.dim = n;
    p.origin_exponent = m;
    p.length = R_work;
    p.boundary = BoundaryKind::Neumann;
    p.noncompact = true;
    p.surface = [A, vol, m](double rho) { return vol * std::pow(A(rho), m); };
    p.drift = [A, d1, m](double rho) { return m * d1(rho) / A(rho); };
    p.curvature = [A, d1, d2, m](double rho) {
        const double a = A(rho), ap = d1(rho);
        return m * (d2(rho) / a - (ap / a) * (ap / a));
    };
    p.name = "model(n=" + std::to_string(n) + ")";
    verify_q_bounded(p, q_max);
    return p;
}

CurveSamples read_curve_csv(std::istream& in) {
    CurveSamples out;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("curve CSV: empty input (header row required)");
    // header row required; columns s,r,z
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double s, r, z;
        if (!(ss >> s >> r >> z))
            throw std::runtime_error("curve CSV: malformed row " + std::to_string(row));
        out.s.push_back(s);
        out.r.push_back(r);
        out.z.push_back(z);
    }
    if (out.s.size() < 3) throw std::runtime_error("curve CSV: needs at least 3 rows");
    return out;
}

RadialProfile profile_from_samples(const CurveSamples& samples, int n,
                                   BoundaryKind boundary, double q_max) {
    auto rs = std::make_shared<CubicSpline>(samples.s, samples.r);
    auto zs = std::make_shared<CubicSpline>(samples.s, samples.z);
    const double s_max = samples.s.back();
    return profile_from_curve([rs](double s) { return (*rs)(s); },
                              [zs](double s) { return (*zs)(s); }, s_max, n, boundary,
                              nullptr, q_max);
}

double Mollifier::operator()(double rho) const {
    if (rho >= eps || rho < 0.0) return 0.0;
    const double u = rho / eps;
    return normalization * std::exp(-1.0 / (1.0 - u * u));
}

Mollifier mollifier(const RadialProfile& profile, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("mollifier: requires eps > 0");
    if (!(eps < profile.length / 4.0))
        throw std::domain_error("mollifier: requires eps < L/4");
    auto shape = [eps, &profile](double rho) {
        const double u = rho / eps;
        if (u >= 1.0) return 0.0;
        return std::exp(-1.0 / (1.0 - u * u)) * profile.surface(rho);
    };
    // two-pass tolerance: rough value first, then 1e-14 relative
    const double rough = quad::integrate_finite(shape, 0.0, eps, 1e-6).value;
    const double mass = quad::integrate_finite(shape, 0.0, eps, 1e-14 * rough).value;
    Mollifier m;
    m.eps = eps;
    m.normalization = 1.0 / mass;
    return m;
}

double monotonicity_defect(const SolverState& state) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < state.values.size(); ++i)
        worst = std::max(worst, state.values[i + 1] - state.values[i]);
    return worst;
}

namespace {

struct Operator {
    std::vector<double> sub, diag, sup;  // tridiagonal A
    std::vector<double> volume;          // cell volumes
    std::vector<double> face;            // S at rho_i + delta/2
    double delta = 0.0;
};

Operator assemble(const RadialProfile& profile, int N) {
    if (N < 64) throw std::invalid_argument("solve_heat: requires N >= 64");
    const double L = profile.length;
    const double delta = L / N;
    Operator op;
    op.delta = delta;
    op.sub.assign(N + 1, 0.0);
    op.diag.assign(N + 1, 0.0);
    op.sup.assign(N + 1, 0.0);
    op.volume.resize(N + 1);
    op.face.resize(N);
    for (int i = 0; i < N; ++i) op.face[i] = profile.surface((i + 0.5) * delta);
    for (int i = 0; i <= N; ++i) {
        const double lo = std::max(0.0, (i - 0.5) * delta);
        const double hi = std::min(L, (i + 0.5) * delta);
        op.volume[i] = gauss5(profile.surface, lo, hi);
        if (!(op.volume[i] > 0.0))
            throw std::invalid_argument("solve_heat: nonpositive cell volume (bad S)");
    }

    // flux form: (A f)_i = [S_{i+1/2}(f_{i+1}-f_i) - S_{i-1/2}(f_i-f_{i-1})] / (V_i delta)
    for (int i = 1; i < N; ++i) {
        op.sub[i] = op.face[i - 1] / (op.volume[i] * delta);
        op.sup[i] = op.face[i] / (op.volume[i] * delta);
        op.diag[i] = -(op.sub[i] + op.sup[i]);
    }
    op.sup[0] = op.face[0] / (op.volume[0] * delta);
    op.diag[0] = -op.sup[0];
    if (profile.boundary == BoundaryKind::Dirichlet) {
        // row N pinned to zero
    } else {
        op.sub[N] = op.face[N - 1] / (op.volume[N] * delta);
        op.diag[N] = -op.sub[N];
    }
    return op;
}

double dt_ceiling(const Operator& op) {
    double worst = 0.0;
    for (double d : op.diag) worst = std::max(worst, std::abs(d));
    return 2.0 / worst;
}

Trajectory run_solver(const RadialProfile& profile, std::vector<double> f,
                      double t_end, const SolverOptions& opts) {
    const int N = opts.n_cells;
    if (static_cast<int>(f.size()) != N + 1)
        throw std::invalid_argument("solve_heat: init size must be N+1");
    if (!(t_end > 0.0)) throw std::invalid_argument("solve_heat: requires t_end > 0");
    Operator op = assemble(profile, N);
    const double dt_max = dt_ceiling(op);
    double dt = opts.dt > 0.0 ? opts.dt : 0.5 * dt_max;
    if (dt > dt_max * (1.0 + 1e-12))
        throw std::invalid_argument(
            "solve_heat: dt exceeds the positivity ceiling dt_max(N), rejected");
    if (profile.boundary == BoundaryKind::Dirichlet && std::abs(f[N]) > 0.0)
        throw std::invalid_argument("solve_heat: Dirichlet init must vanish at the boundary");

    const long steps = std::max<long>(1, std::lround(std::ceil(t_end / dt - 1e-12)));
    dt = t_end / static_cast<double>(steps);

    // Crank-Nicolson LHS factorization (constant in time)
    std::vector<double> lw(N + 1), dw(N + 1), uw(N + 1), cp(N + 1), y(N + 1), fp(N + 1);
    for (int i = 0; i <= N; ++i) {
        lw[i] = -0.5 * dt * op.sub[i];
        dw[i] = 1.0 - 0.5 * dt * op.diag[i];
        uw[i] = -0.5 * dt * op.sup[i];
    }
    cp[0] = uw[0] / dw[0];
    std::vector<double> denom(N + 1);
    denom[0] = dw[0];
    for (int i = 1; i <= N; ++i) {
        denom[i] = dw[i] - lw[i] * cp[i - 1];
        cp[i] = uw[i] / denom[i];
    }

    auto mass_of = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (int i = 0; i <= N; ++i) s += op.volume[i] * v[i];
        return s;
    };
    auto defect_of = [&](const std::vector<double>& v) {
        double worst = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < N; ++i) worst = std::max(worst, v[i + 1] - v[i]);
        return worst;
    };

    Trajectory traj;
    traj.dt = dt;
    traj.initial_mass = mass_of(f);
    traj.max_defect = defect_of(f);
    traj.min_value = *std::min_element(f.begin(), f.end());
    traj.max_value = *std::max_element(f.begin(), f.end());
    traj.series.reserve(static_cast<std::size_t>(steps) + 1);
    traj.series.push_back({0.0, traj.initial_mass, traj.max_defect, 0.0, 0.0});

    std::vector<double> grid(N + 1);
    for (int i = 0; i <= N; ++i) grid[i] = i * op.delta;
    auto snapshot = [&](double t, const std::vector<double>& v) {
        traj.snapshots.push_back(SolverState{grid, v, t, mass_of(v), defect_of(v)});
    };
    snapshot(0.0, f);

    double outflux = 0.0, outflux_c = 0.0;  // Kahan-compensated accumulator
    const bool dirichlet = profile.boundary == BoundaryKind::Dirichlet;

    for (long k = 1; k <= steps; ++k) {
        // RHS y = (I + dt/2 A) f
        y[0] = f[0] + 0.5 * dt * (op.diag[0] * f[0] + op.sup[0] * f[1]);
        for (int i = 1; i < N; ++i) {
            y[i] = f[i] + 0.5 * dt *
                              (op.sub[i] * f[i - 1] + op.diag[i] * f[i] +
                               op.sup[i] * f[i + 1]);
        }
        y[N] = f[N] + 0.5 * dt * (op.sub[N] * f[N - 1] + op.diag[N] * f[N]);

        // Thomas solve (I - dt/2 A) fp = y
        fp[0] = y[0] / denom[0];
        for (int i = 1; i <= N; ++i) fp[i] = (y[i] - lw[i] * fp[i - 1]) / denom[i];
        for (int i = N - 1; i >= 0; --i) fp[i] -= cp[i] * fp[i + 1];

        double flux = 0.0;
        if (dirichlet) {
            flux = op.face[N - 1] * 0.5 * (f[N - 1] + fp[N - 1]) / op.delta;
            const double add = dt * flux;
            const double yk = add - outflux_c;
            const double tk = outflux + yk;
            outflux_c = (tk - outflux) - yk;
            outflux = tk;
        } else if (profile.boundary == BoundaryKind::Neumann) {
            flux = op.face[N - 1] *
                   std::abs(0.5 * (f[N - 1] + fp[N - 1]) - 0.5 * (f[N] + fp[N])) /
                   op.delta;
        }

        f.swap(fp);
        const double t = static_cast<double>(k) * dt;
        const double mass = mass_of(f);
        const double defect = defect_of(f);
        traj.max_defect = std::max(traj.max_defect, defect);
        traj.min_value = std::min(traj.min_value, *std::min_element(f.begin(), f.end()));
        traj.max_value = std::max(traj.max_value, *std::max_element(f.begin(), f.end()));
        traj.series.push_back({t, mass, defect, flux, outflux});

        if (opts.snapshot_stride > 0 && k % opts.snapshot_stride == 0 && k != steps)
            snapshot(t, f);
    }

    snapshot(t_end, f);
    traj.final_mass = traj.snapshots.back().mass;
    traj.outflux_total = outflux;
    return traj;
}

}  // namespace

double solver_dt_max(const RadialProfile& profile, int n_cells) {
    return dt_ceiling(assemble(profile, n_cells));
}

Trajectory solve_heat(const RadialProfile& profile, const Mollifier& init, double t_end,
                      const SolverOptions& opts) {
    const int N = opts.n_cells;
    Operator op = assemble(profile, N);
    std::vector<double> f(N + 1, 0.0);
    // cell averages of the mollifier, then exact discrete renormalization
    for (int i = 0; i <= N; ++i) {
        const double lo = std::max(0.0, (i - 0.5) * op.delta);
        const double hi = std::min(profile.length, (i + 0.5) * op.delta);
        if (lo >= init.eps) continue;
        auto g = [&](double rho) { return init(rho) * profile.surface(rho); };
        f[i] = gauss5(g, lo, std::min(hi, init.eps)) / op.volume[i];
    }
    double mass = 0.0;
    for (int i = 0; i <= N; ++i) mass += op.volume[i] * f[i];
    for (double& v : f) v /= mass;
    return run_solver(profile, std::move(f), t_end, opts);
}

Trajectory solve_heat(const RadialProfile& profile, const std::vector<double>& init,
                      double t_end, const SolverOptions& opts) {
    return run_solver(profile, init, t_end, opts);
}

namespace {

// 4-point Lagrange interpolation on the uniform solver grid.
double interp_at(const SolverState& st, double d) {
    const std::size_t n = st.grid.size();
    const double delta = st.grid[1] - st.grid[0];
    if (d <= st.grid.front()) return st.values.front();
    if (d >= st.grid.back()) return st.values.back();
    std::size_t j = static_cast<std::size_t>(d / delta);
    std::size_t i0 = (j == 0) ? 0 : j - 1;
    i0 = std::min(i0, n - 4);
    double num = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
        double term = st.values[i0 + a];
        for (std::size_t b = 0; b < 4; ++b) {
            if (a == b) continue;
            term *= (d - st.grid[i0 + b]) / (st.grid[i0 + a] - st.grid[i0 + b]);
        }
        num += term;
    }
    return num;
}

}  // namespace

KernelCurve heat_kernel_curve(const RadialProfile& profile, double t,
                              const std::vector<double>& eps_list,
                              const SolverOptions& opts) {
    if (eps_list.size() < 2)
        throw std::invalid_argument("heat_kernel_curve: needs >= 2 epsilons");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("heat_kernel_curve: eps_list must decrease");

    std::vector<double> x;
    std::vector<SolverState> finals;
    for (double eps : eps_list) {
        Trajectory traj = solve_heat(profile, mollifier(profile, eps), t, opts);
        x.push_back(eps * eps);
        finals.push_back(traj.snapshots.back());
    }

    // nodewise Neville extrapolation to eps^2 = 0
    const std::size_t m = finals.size();
    KernelCurve out;
    out.state = finals.back();
    double residual = 0.0;
    for (std::size_t node = 0; node < out.state.values.size(); ++node) {
        std::vector<double> T(m);
        for (std::size_t j = 0; j < m; ++j) T[j] = finals[j].values[node];
        double prev = T.back();
        for (std::size_t k = 1; k < m; ++k) {
            for (std::size_t j = m - 1; j >= k; --j) {
                T[j] = (x[j - k] * T[j] - x[j] * T[j - 1]) / (x[j - k] - x[j]);
                if (j == k) break;
            }
            if (k + 1 < m) prev = T.back();
        }
        residual = std::max(residual, std::abs(T.back() - prev));
        out.state.values[node] = T.back();
    }
    out.state.defect = monotonicity_defect(out.state);
    out.extrapolation_residual = residual;
    return out;
}

kernels::KernelValue heat_kernel_estimate(const RadialProfile& profile, double d,
                                          double t, const std::vector<double>& eps_list,
                                          const SolverOptions& opts) {
    KernelCurve curve = heat_kernel_curve(profile, t, eps_list, opts);
    const double value = interp_at(curve.state, d);
    return {value, curve.extrapolation_residual + 1e-14 * std::abs(value)};
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,rho,f\n";
    char buf[3][32];
    for (const SolverState& st : traj.snapshots) {
        for (std::size_t i = 0; i < st.grid.size(); ++i) {
            std::snprintf(buf[0], sizeof buf[0], "%.17g", st.time);
            std::snprintf(buf[1], sizeof buf[1], "%.17g", st.grid[i]);
            std::snprintf(buf[2], sizeof buf[2], "%.17g", st.values[i]);
            out << buf[0] << ',' << buf[1] << ',' << buf[2] << '\n';
        }
    }
}

}  // namespace heatkern::revolution
