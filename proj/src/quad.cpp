#include "heatkern/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace heatkern::quad {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1] (QUADPACK dqk15).
constexpr double kXk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double integral;
    double error;
};

// One G7/K15 pass over [a,b]; error is the raw |K15 - G7| discrepancy,
// a deliberately conservative per-panel estimate.
Panel gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXk[i]);
        fv[14 - i] = f(c + h * kXk[i]);
    }
    fv[7] = f(c);
    double kron = kWk[7] * fv[7];
    double gauss = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kron += kWk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

// Worst-error-first with positional tie-breaks: the refinement sequence is
// a pure function of the inputs.
struct PanelLess {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.error != q.error) return p.error < q.error;
        if (p.a != q.a) return p.a > q.a;
        return p.b > q.b;
    }
};

// Sums panel integrals in left-to-right order so the result does not
// depend on the heap's internal layout.
QuadResult assemble(std::vector<Panel> panels, std::int64_t evals) {
    std::sort(panels.begin(), panels.end(),
              [](const Panel& p, const Panel& q) { return p.a < q.a; });
    double value = 0.0, err = 0.0;
    for (const Panel& p : panels) {
        value += p.integral;
        err += p.error;
    }
    return {value, err, evals};
}

}  // namespace

QuadResult integrate_finite(const Integrand& f, double a, double b, double tol,
                            int max_panels) {
    if (!(a < b)) throw std::domain_error("integrate_finite: requires a < b");
    if (!(tol > 0.0)) throw std::domain_error("integrate_finite: requires tol > 0");

    std::priority_queue<Panel, std::vector<Panel>, PanelLess> heap;
    std::int64_t evals = 0;
    double total_err = 0.0;

    auto push = [&](double lo, double hi) {
        Panel p = gk15(f, lo, hi);
        evals += 15;
        total_err += p.error;
        heap.push(p);
    };
    push(a, b);

    const double min_width = 64.0 * std::numeric_limits<double>::epsilon() *
                             std::max({std::abs(a), std::abs(b), 1.0});
    int panels = 1;
    bool stuck = false;

    while (total_err > tol) {
        const Panel worst = heap.top();
        if (panels >= max_panels || worst.b - worst.a <= min_width) {
            stuck = true;
            break;
        }
        heap.pop();
        total_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        push(worst.a, mid);
        push(mid, worst.b);
        ++panels;
    }

    std::vector<Panel> all;
    all.reserve(static_cast<std::size_t>(panels));
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    QuadResult res = assemble(std::move(all), evals);
    if (stuck && res.abs_error_estimate > tol) {
        throw QuadratureError("integrate_finite: tolerance not reached within budget", res);
    }
    return res;
}

QuadResult integrate_halfline_decaying(const Integrand& f, double a,
                                       double decay_scale, double tol,
                                       const HalflineOptions& opts) {
    if (!(decay_scale > 0.0))
        throw std::domain_error("integrate_halfline_decaying: requires decay_scale > 0");
    if (!(tol > 0.0))
        throw std::domain_error("integrate_halfline_decaying: requires tol > 0");

    double width = opts.first_width > 0.0 ? opts.first_width : decay_scale;
    if (opts.max_panel_width > 0.0) width = std::min(width, opts.max_panel_width);

    const double cutoff = tol / 10.0;
    double value = 0.0;
    double err = 0.0;
    std::int64_t evals = 0;
    double lo = a;
    int small_run = 0;
    double last_contribution = 0.0;

    // per-panel tolerance: the sum over all panels stays below tol/2
    const double panel_tol = 0.5 * tol / opts.max_panels;
    for (int k = 0; k < opts.max_panels; ++k) {
        const double hi = lo + width;
        QuadResult part;
        try {
            part = integrate_finite(f, lo, hi, panel_tol);
        } catch (const QuadratureError& e) {
            part = e.best();
        }
        value += part.value;
        err += part.abs_error_estimate;
        evals += part.evaluations;
        last_contribution = std::abs(part.value);

        if (last_contribution < cutoff) {
            if (++small_run >= opts.consecutive_small) {
                err += last_contribution;  // tail bound: the terminating panel
                return {value, err, evals};
            }
        } else {
            small_run = 0;
        }
        lo = hi;
        width *= opts.growth;
        if (opts.max_panel_width > 0.0) width = std::min(width, opts.max_panel_width);
    }
    QuadResult best{value, err + last_contribution, evals};
    throw QuadratureError("integrate_halfline_decaying: panel budget exhausted", best);
}

QuadResult integrate_endpoint_invsqrt(const Integrand& f, double a, double b,
                                      double tol, int max_panels) {
    if (!(a < b)) throw std::domain_error("integrate_endpoint_invsqrt: requires a < b");
    auto g = [&f, a](double w) { return 2.0 * w * f(a + w * w); };
    return integrate_finite(g, 0.0, std::sqrt(b - a), tol, max_panels);
}

}  // namespace heatkern::quad
