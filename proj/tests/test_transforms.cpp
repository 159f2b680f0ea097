#include <catch2/catch_amalgamated.hpp>

#include <pscat/transforms.hpp>

using namespace pscat;

TEST_CASE("TestFunction: evenness, derivative, strip bound") {
    const TestFunction h(1.0);
    CHECK(mag(h.h({0.0, 0.0}) - 1.0) == 0.0);
    CHECK(mag(h.hprime({0.0, 0.0})) == 0.0);
    const cplx rho{2.3, -0.4};
    CHECK(mag(h.h(rho) - h.h(-rho)) == 0.0);
    // |h(5 - i sigma)| <= e^{sigma^2} e^{-25} at a = 1
    CHECK(mag(h.h({5.0, -1.0})) <= std::exp(1.0) * std::exp(-25.0) * (1.0 + 1e-12));
    // finite-difference check of the analytic derivative
    const double eps = 1e-6;
    const cplx fd = (h.h(rho + eps) - h.h(rho - eps)) / (2.0 * eps);
    CHECK(mag(fd - h.hprime(rho)) < 1e-8);
    // strip bound certifies the decay condition
    const double C = h.strip_bound(1.0, 1.0);
    for (double x : {0.0, 1.0, 3.0, 7.0})
        CHECK(mag(h.h({x, -1.0})) <= C * std::pow(1.0 + x, -3.0) * (1.0 + 1e-12));
    CHECK_THROWS_AS(TestFunction(0.0), domain_error);
    CHECK_THROWS_AS(TestFunction(-2.0), domain_error);
}

TEST_CASE("find_nu") {
    // beta = 0: denominator is identically 1
    CHECK(find_nu(0.0, 1, 2.0).nu == 0.0);
    // tiny beta: |m beta psi| < 1 on the segment
    CHECK(find_nu(1e-3, 1, 2.0).nu == 0.0);
    CHECK_FALSE(find_nu(1e-3, 1, 2.0).zero_location.has_value());
    // planted zero: solve beta from 1 + m beta psi(1/2 + v) = 0 at v = 0.3
    const int m = 1;
    const double v = 0.3;
    const double beta = -1.0 / (m * psi_paper(cplx(0.8, 0.0)).real());
    const NuChoice nu = find_nu(beta, m, 2.0);
    REQUIRE(nu.zero_location.has_value());
    CHECK(std::abs(*nu.zero_location - v) < 1e-10);
    CHECK(nu.nu > *nu.zero_location);
    // denominator bounded away from zero along the chosen contour
    CHECK(denominator_margin(beta, m, nu.nu) > 0.01);
}

TEST_CASE("g_transform: reality, contour independence, linearity, decay") {
    const TestFunction h(1.0);
    const double beta = 0.2;
    const int m = 1;
    const NuChoice nu0; // nu = 0 valid for this beta

    const cplx g1 = g_transform_c(beta, 1, 2.0, h, nu0, m);
    CHECK(std::abs(g1.imag()) < 1e-10);

    NuChoice nu1;
    nu1.nu = 0.1;
    const cplx g1s = g_transform_c(beta, 1, 2.0, h, nu1, m);
    CHECK(mag(g1 - g1s) < 1e-8);

    // linearity in h at t = 1.5
    const TestFunction h2(1.0, {0.5, 0.25});
    const TestFunction hsum = h + h2;
    const double t = 1.5;
    CHECK(std::abs(g_transform(beta, 1, t, h, nu0, m) +
                   g_transform(beta, 1, t, h2, nu0, m) -
                   g_transform(beta, 1, t, hsum, nu0, m)) < 1e-10);

    // decay in t for k = 1, 2
    for (int k : {1, 2}) {
        CHECK(std::abs(g_transform(beta, k, 4.0, h, nu0, m)) <
              std::abs(g_transform(beta, k, 1.0, h, nu0, m)));
    }

    // contract violation: contour through the denominator zero
    NuChoice bad;
    bad.zero_location = 0.3;
    bad.nu = 0.2;
    CHECK_THROWS_AS(g_transform(beta, 1, 1.0, h, bad, m), domain_error);
}

TEST_CASE("smooth_term: zero coupling, contour independence, by-parts route") {
    const TestFunction h(1.0);
    CHECK(smooth_term(h, 0.0, 1, NuChoice{}) == 0.0);

    const double beta = 0.35;
    NuChoice nu0, nu1;
    nu1.nu = 0.1;
    const double s0 = smooth_term(h, beta, 1, nu0);
    const double s1 = smooth_term(h, beta, 1, nu1);
    CHECK(std::abs(s0 - s1) < 1e-8);

    const double sbp = smooth_term_by_parts(h, beta, 1, nu0);
    CHECK(std::abs(s0 - sbp) < 1e-8);
}

TEST_CASE("scattering_term tail bookkeeping on a model argument") {
    // arg S modeled by a smooth bounded odd-ish profile
    const TestFunction h(1.0);
    auto arg_model = [](double rho) { return std::atan(rho) + 0.3 * std::sin(rho); };
    const auto full = scattering_term_generic(h, arg_model, 9.0, {});
    const auto trunc = scattering_term_generic(h, arg_model, 4.5, {});
    CHECK(std::abs(full.value - trunc.value) <= trunc.error_est);
    CHECK(std::abs(full.value) < PI); // |arg| <= pi forces |term| <= pi
}
