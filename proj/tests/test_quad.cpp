#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "heatkern/quad.hpp"

using namespace heatkern;

namespace {

constexpr double kPi = std::numbers::pi;

// brute-force midpoint Riemann oracle
double riemann_midpoint(const std::function<double(double)>& f, double a, double b,
                        long n) {
    const double h = (b - a) / static_cast<double>(n);
    double sum = 0.0;
    for (long i = 0; i < n; ++i) sum += f(a + (i + 0.5) * h);
    return sum * h;
}

}  // namespace

TEST_SUITE_BEGIN("quad");

TEST_CASE("finite: trivial closed forms") {
    auto r1 = quad::integrate_finite([](double x) { return x; }, 0.0, 1.0, 1e-12);
    CHECK(r1.value == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r1.abs_error_estimate <= 1e-12);

    auto r2 = quad::integrate_finite([](double x) { return std::cos(x); }, 0.0, kPi / 2, 1e-12);
    CHECK(r2.value == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("finite: Gaussian matches the Riemann oracle") {
    auto f = [](double x) { return std::exp(-x * x); };
    const double oracle = riemann_midpoint(f, -3.0, 3.0, 1000000);
    auto r = quad::integrate_finite(f, -3.0, 3.0, 1e-10);
    CHECK(std::abs(r.value - oracle) < 1e-8);
}

TEST_CASE("halfline: trivial closed forms") {
    auto r1 = quad::integrate_halfline_decaying([](double x) { return std::exp(-x); }, 0.0,
                                                1.0, 1e-12);
    CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-12));

    auto r2 = quad::integrate_halfline_decaying(
        [](double x) { return x * std::exp(-x * x); }, 0.0, 1.0, 1e-12);
    CHECK(r2.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("halfline: Lorentzian-damped exponential vs Riemann oracle") {
    auto f = [](double x) { return std::exp(-x) / (1.0 + x * x); };
    const double oracle = riemann_midpoint(f, 0.0, 40.0, 1000000);
    auto r = quad::integrate_halfline_decaying(f, 0.0, 1.0, 1e-10);
    CHECK(std::abs(r.value - oracle) < 1e-8);
}

TEST_CASE("endpoint_invsqrt: trivial closed forms") {
    auto r1 = quad::integrate_endpoint_invsqrt(
        [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-12);
    CHECK(r1.value == doctest::Approx(2.0).epsilon(1e-12));

    auto r2 = quad::integrate_endpoint_invsqrt(
        [](double x) { return 1.0 / std::sqrt(x - 1.0); }, 1.0, 4.0, 1e-12);
    CHECK(r2.value == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("endpoint_invsqrt: e^{-x}/sqrt(x) vs excised adaptive oracle") {
    auto f = [](double x) { return std::exp(-x) / std::sqrt(x); };
    // oracle: adaptive on [delta, 8] without the substitution, plus the
    // closed-form mass 2 sqrt(delta) (1 + O(delta)) of the excised sliver
    const double delta = 1e-12;
    auto oracle = quad::integrate_finite(f, delta, 8.0, 1e-10, 20000);
    const double excised = 2.0 * std::sqrt(delta);
    auto r = quad::integrate_endpoint_invsqrt(f, 0.0, 8.0, 1e-10);
    CHECK(std::abs(r.value - (oracle.value + excised)) < 1e-7);
}

TEST_CASE("linearity on test pairs") {
    const double tol = 1e-10;
    std::vector<std::pair<quad::Integrand, quad::Integrand>> pairs = {
        {[](double x) { return std::sin(3 * x); }, [](double x) { return std::exp(-x); }},
        {[](double x) { return x * x; }, [](double x) { return std::cos(5 * x); }},
        {[](double x) { return 1.0 / (1.0 + x * x); },
         [](double x) { return std::log(1.0 + x); }},
    };
    for (auto& [f, g] : pairs) {
        auto fg = quad::integrate_finite(
            [&](double x) { return f(x) + g(x); }, 0.0, 2.0, tol);
        auto fr = quad::integrate_finite(f, 0.0, 2.0, tol);
        auto gr = quad::integrate_finite(g, 0.0, 2.0, tol);
        CHECK(std::abs(fg.value - fr.value - gr.value) <= 3.0 * tol);
    }
}

TEST_CASE("error estimate bounds the true error on a closed-form battery") {
    struct Case {
        quad::Integrand f;
        double a, b, truth;
    };
    const double e1 = std::exp(1.0);
    std::vector<Case> battery = {
        {[](double x) { return x; }, 0, 1, 0.5},
        {[](double x) { return x * x; }, 0, 1, 1.0 / 3.0},
        {[](double x) { return std::sin(x); }, 0, kPi, 2.0},
        {[](double x) { return std::cos(x); }, 0, kPi / 2, 1.0},
        {[](double x) { return std::exp(x); }, 0, 1, e1 - 1.0},
        {[](double x) { return 1.0 / x; }, 1, 2, std::log(2.0)},
        {[](double x) { return 1.0 / (1.0 + x * x); }, 0, 1, kPi / 4.0},
        {[](double x) { return std::exp(-x * x); }, -1, 1, std::sqrt(kPi) * std::erf(1.0)},
        {[](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3.0},
        {[](double x) { return std::pow(x, 10); }, 0, 1, 1.0 / 11.0},
        {[](double x) { return std::sin(x) * std::sin(x); }, 0, 2 * kPi, kPi},
        {[](double x) { return std::cosh(x); }, 0, 1, std::sinh(1.0)},
        {[](double x) { return 1.0 / (0.01 + x * x); }, 0, 3, 10.0 * std::atan(30.0)},
        {[](double x) { return std::log(1.0 + x); }, 0, 1, 2.0 * std::log(2.0) - 1.0},
        {[](double x) { return std::sin(10.0 * x); }, 0, 1, (1.0 - std::cos(10.0)) / 10.0},
        {[](double x) { return std::exp(-5.0 * x); }, 0, 1, (1.0 - std::exp(-5.0)) / 5.0},
        {[](double x) { return std::abs(x); }, -2, 2, 4.0},
        {[](double x) { return x * std::exp(x); }, 0, 1, 1.0},
        {[](double x) { return std::pow(x, 1.5); }, 0, 4, 12.8},
        {[](double x) { return 1.0 / (1.0 + x); }, 0, 1, std::log(2.0)},
        {[](double x) { return x * std::sin(x); }, 0, kPi, kPi},
        {[](double x) { return std::atan(x); }, 0, 1, kPi / 4.0 - 0.5 * std::log(2.0)},
    };
    REQUIRE(battery.size() >= 20);
    for (double tol : {1e-6, 1e-10}) {
        for (const auto& c : battery) {
            auto r = quad::integrate_finite(c.f, c.a, c.b, tol);
            CHECK(std::abs(r.value - c.truth) <=
                  r.abs_error_estimate + 1e-14 * std::abs(c.truth) + 1e-16);
            CHECK(r.abs_error_estimate <= tol);
        }
    }
}

TEST_CASE("determinism: identical inputs give identical results") {
    auto f = [](double x) { return std::sin(7.0 * x) / (1.0 + x * x); };
    auto a = quad::integrate_finite(f, 0.0, 5.0, 1e-11);
    auto b = quad::integrate_finite(f, 0.0, 5.0, 1e-11);
    CHECK(a.value == b.value);
    CHECK(a.abs_error_estimate == b.abs_error_estimate);
    CHECK(a.evaluations == b.evaluations);

    auto g = [](double x) { return std::exp(-0.3 * x) * std::cos(x); };
    auto c = quad::integrate_halfline_decaying(g, 0.0, 3.0, 1e-11);
    auto d = quad::integrate_halfline_decaying(g, 0.0, 3.0, 1e-11);
    CHECK(c.value == d.value);
    CHECK(c.evaluations == d.evaluations);
}

TEST_CASE("nonconvergence raises with the best estimate attached") {
    // genuinely hard integrand with a tiny budget
    auto f = [](double x) { return std::sin(1.0 / (x + 1e-4)); };
    CHECK_THROWS_AS(quad::integrate_finite(f, 0.0, 1.0, 1e-14, 8), quad::QuadratureError);
    try {
        quad::integrate_finite(f, 0.0, 1.0, 1e-14, 8);
    } catch (const quad::QuadratureError& e) {
        CHECK(e.best().abs_error_estimate > 0.0);
        CHECK(e.best().evaluations > 0);
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(quad::integrate_finite([](double) { return 0.0; }, 1.0, 0.0, 1e-6),
                    std::domain_error);
    CHECK_THROWS_AS(quad::integrate_finite([](double) { return 0.0; }, 0.0, 1.0, 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(quad::integrate_halfline_decaying([](double) { return 0.0; }, 0.0,
                                                      -1.0, 1e-6),
                    std::domain_error);
}

TEST_SUITE_END();
