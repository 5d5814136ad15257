#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "heatkern/specfun.hpp"

using namespace heatkern;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent series oracle: P_n(x) = 2^{-n} sum_k C(n,k)^2 (x-1)^{n-k} (x+1)^k.
double legendre_series_oracle(int n, double x) {
    double binom = 1.0;  // C(n,0)
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        sum += binom * binom * std::pow(x - 1.0, n - k) * std::pow(x + 1.0, k);
        binom *= static_cast<double>(n - k) / (k + 1.0);
    }
    return std::ldexp(sum, -n);
}

// Independent Gauss-series oracle for the conical function:
//   P_{-1/2+iv}(cosh r) = 2F1(1/2-iv, 1/2+iv; 1; w),  w = -sinh^2(r/2).
// For |w| close to / above 1, Pfaff-transform to z = w/(w-1) in (0,1):
//   (1-w)^{-(1/2-iv)} 2F1(1/2-iv, 1/2-iv; 1; z)  (complex arithmetic).
double conical_oracle(double v, double r) {
    const double w = -std::pow(std::sinh(0.5 * r), 2);
    if (std::abs(w) < 0.7) {
        double term = 1.0, sum = 1.0;
        for (int k = 0; k < 500; ++k) {
            const double num = (k + 0.5) * (k + 0.5) + v * v;
            term *= num * w / ((k + 1.0) * (k + 1.0));
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    using C = std::complex<double>;
    const C a(0.5, -v);
    const double z = w / (w - 1.0);
    C term(1.0, 0.0), sum(1.0, 0.0);
    for (int k = 0; k < 4000; ++k) {
        const C ak = a + static_cast<double>(k);
        term *= ak * ak * z / ((k + 1.0) * (k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    const C pref = std::pow(C(1.0 - w, 0.0), -a);
    const C val = pref * sum;
    REQUIRE(std::abs(val.imag()) < 1e-10 * std::max(1.0, std::abs(val.real())));
    return val.real();
}

}  // namespace

TEST_SUITE_BEGIN("specfun");

TEST_CASE("legendre_p: named values") {
    CHECK(specfun::legendre_p(0, 0.3) == 1.0);
    CHECK(specfun::legendre_p(2, 0.5) == doctest::Approx(-0.125).epsilon(1e-15));
    // frozen from the series oracle
    CHECK(specfun::legendre_p(10, 0.9) ==
          doctest::Approx(-0.263145617855859375).epsilon(1e-13));
    CHECK(specfun::legendre_p(10, 0.9) ==
          doctest::Approx(legendre_series_oracle(10, 0.9)).epsilon(1e-13));
    CHECK(specfun::legendre_p(6, 0.3) == doctest::Approx(0.1291811875).epsilon(1e-14));
}

TEST_CASE("legendre_p agrees with the series oracle on a sweep") {
    for (int n : {3, 7, 12, 15}) {
        for (double x : {-0.95, -0.4, 0.0, 0.31, 0.77, 0.999}) {
            const double got = specfun::legendre_p(n, x);
            const double want = legendre_series_oracle(n, x);
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("legendre_p_prime: named values and the endpoint identity") {
    CHECK(specfun::legendre_p_prime(1, 0.7) == 1.0);
    CHECK(specfun::legendre_p_prime(2, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
    for (int n = 1; n <= 20; ++n) {
        CHECK(specfun::legendre_p_prime(n, 1.0) == 0.5 * n * (n + 1));
    }
    CHECK(specfun::legendre_p_prime(10, 0.9) ==
          doctest::Approx(-6.9831278898046875).epsilon(1e-13));
}

TEST_CASE("endpoint exactness is bit-exact up to n = 200") {
    for (int n = 0; n <= 200; ++n) {
        CHECK(specfun::legendre_p(n, 1.0) == 1.0);
        CHECK(specfun::legendre_p(n, -1.0) == (n % 2 == 0 ? 1.0 : -1.0));
    }
}

TEST_CASE("three-term recurrence consistency to n = 200") {
    for (int n = 1; n <= 200; n += (n < 20 ? 1 : 13)) {
        for (int i = 0; i <= 40; ++i) {
            const double x = -1.0 + 2.0 * i / 40.0;
            const double lhs = (n + 1.0) * specfun::legendre_p(n + 1, x);
            const double rhs = (2.0 * n + 1.0) * x * specfun::legendre_p(n, x) -
                               n * specfun::legendre_p(n - 1, x);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("derivative bound |P_n'| <= n(n+1)/2 to n = 200") {
    for (int n = 1; n <= 200; n += (n < 20 ? 1 : 13)) {
        const double bound = 0.5 * n * (n + 1.0);
        for (int i = 0; i <= 64; ++i) {
            const double x = -1.0 + 2.0 * i / 64.0;
            CHECK(std::abs(specfun::legendre_p_prime(n, x)) <= bound * (1.0 + 1e-14));
        }
    }
}

TEST_CASE("derivative identity (1-x^2)(2n+1) P_n' = n(n+1)(P_{n-1} - P_{n+1})") {
    for (int n = 1; n <= 100; n += (n < 10 ? 1 : 7)) {
        for (int i = 1; i < 32; ++i) {
            const double x = -1.0 + 2.0 * i / 32.0;
            const double lhs = (1.0 - x * x) * (2.0 * n + 1.0) * specfun::legendre_p_prime(n, x);
            const double rhs = n * (n + 1.0) *
                               (specfun::legendre_p(n - 1, x) - specfun::legendre_p(n + 1, x));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
        }
    }
}

TEST_CASE("gegenbauer: named values and the Legendre identity") {
    CHECK(specfun::gegenbauer_c(0, 2.0, 0.4) == 1.0);
    CHECK(specfun::gegenbauer_c(1, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(specfun::gegenbauer_c(3, 0.5, 0.2) == doctest::Approx(-0.28).epsilon(1e-14));
    CHECK(specfun::gegenbauer_c(4, 1.5, 0.3) == doctest::Approx(-0.1685625).epsilon(1e-13));
    CHECK(specfun::gegenbauer_c(5, 2.0, -0.4) == doctest::Approx(-1.32608).epsilon(1e-12));

    for (int k = 0; k <= 100; k += (k < 10 ? 1 : 9)) {
        for (int i = 0; i <= 20; ++i) {
            const double x = -1.0 + 2.0 * i / 20.0;
            CHECK(std::abs(specfun::gegenbauer_c(k, 0.5, x) - specfun::legendre_p(k, x)) <=
                  1e-12);
        }
    }
}

TEST_CASE("conical_p: value 1 at r = 0 and the independent Gauss-series oracle") {
    for (double v : {0.0, 1.0, 5.0, 20.0}) CHECK(specfun::conical_p(v, 0.0) == 1.0);

    // frozen oracle values
    CHECK(specfun::conical_p(0.0, 1.0) ==
          doctest::Approx(0.94086215924934982).epsilon(1e-11));
    CHECK(specfun::conical_p(2.0, 3.0) ==
          doctest::Approx(0.075714214738357959).epsilon(1e-10));
    CHECK(specfun::conical_p(1.0, 2.0) ==
          doctest::Approx(0.19728188012250963).epsilon(1e-10));
    CHECK(specfun::conical_p(0.5, 0.7) ==
          doctest::Approx(0.94086814945921157).epsilon(1e-11));

    for (double v : {0.0, 0.3, 1.0, 2.5, 7.0}) {
        for (double r : {0.2, 1.0, 2.0, 3.5}) {
            const double got = specfun::conical_p(v, r, 1e-12);
            const double want = conical_oracle(v, r);
            CHECK(got == doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("conical_p_prime: finite-difference cross-check and frozen values") {
    auto fd = [](double v, double r) {
        const double s = std::cosh(r);
        const double h = 1e-5;
        const double rp = std::acosh(s + h);
        const double rm = std::acosh(s - h);
        return (specfun::conical_p(v, rp, 1e-13) - specfun::conical_p(v, rm, 1e-13)) /
               (rp > rm ? (std::cosh(rp) - std::cosh(rm)) : 2 * h);
    };
    CHECK(specfun::conical_p_prime(0.0, 1.0) ==
          doctest::Approx(-0.095267698212009441).epsilon(1e-9));
    CHECK(specfun::conical_p_prime(1.0, 2.0) ==
          doctest::Approx(-0.13027864463068838).epsilon(1e-9));
    CHECK(specfun::conical_p_prime(2.0, 3.0) ==
          doctest::Approx(0.028424609447478992).epsilon(1e-9));
    CHECK(specfun::conical_p_prime(0.0, 1.0) ==
          doctest::Approx(fd(0.0, 1.0)).epsilon(1e-6));
    CHECK(specfun::conical_p_prime(1.0, 2.0) ==
          doctest::Approx(fd(1.0, 2.0)).epsilon(1e-6));
}

TEST_CASE("conical_p_prime: O(sqrt(v)) growth at fixed r") {
    const double a = std::abs(specfun::conical_p_prime(5.0, 1.0));
    const double b = std::abs(specfun::conical_p_prime(20.0, 1.0));
    CHECK(b / a <= 2.0 * std::sqrt(20.0 / 5.0));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(specfun::legendre_p(-1, 0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::legendre_p(3, 1.5), std::domain_error);
    CHECK_THROWS_AS(specfun::legendre_p_prime(2, -1.01), std::domain_error);
    CHECK_THROWS_AS(specfun::gegenbauer_c(2, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(specfun::gegenbauer_c(2, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(specfun::conical_p(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::conical_p(1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::conical_p_prime(1.0, 0.0), std::domain_error);
}

TEST_CASE("determinism: identical inputs, identical bits") {
    CHECK(specfun::legendre_p(57, 0.123456) == specfun::legendre_p(57, 0.123456));
    CHECK(specfun::conical_p(1.5, 2.5) == specfun::conical_p(1.5, 2.5));
}

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
    auto rule = specfun::gauss_legendre(8);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));

    // degree 15 polynomial: x^15 + 2 x^8 integrates to 2*2/9 over [-1,1]
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        acc += rule.weights[i] * (std::pow(x, 15) + 2.0 * std::pow(x, 8));
    }
    CHECK(acc == doctest::Approx(4.0 / 9.0).epsilon(1e-13));
}

TEST_SUITE_END();
