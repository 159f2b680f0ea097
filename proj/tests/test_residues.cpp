#include <catch2/catch_amalgamated.hpp>

#include <pscat/residues.hpp>

using namespace pscat;

TEST_CASE("box integral: simple planted cases") {
    const TestFunction h(1.0);

    // F(rho) = rho: box around 0 gives h(0)
    SyntheticSpectralFunction F1;
    F1.zeros.push_back({{0.0, 0.0}, 1});
    const auto r1 =
        contour_log_derivative_integral(F1, h, {-1.0, -1.0}, {1.0, 1.0});
    CHECK(mag(r1.integral - h.h({0.0, 0.0})) < 1e-10);
    CHECK(r1.residual < 1e-10);

    // F(rho) = rho^2 - 1, box around both roots, even h: 2 h(1)
    SyntheticSpectralFunction F2;
    F2.zeros.push_back({{1.0, 0.0}, 1});
    F2.zeros.push_back({{-1.0, 0.0}, 1});
    const auto r2 =
        contour_log_derivative_integral(F2, h, {-2.0, -1.0}, {2.0, 1.0});
    CHECK(mag(r2.integral - 2.0 * h.h({1.0, 0.0})) < 1e-10);
    CHECK(r2.residual < 1e-10);
}

TEST_CASE("box integral: random planted spectra with orders <= 3") {
    std::mt19937_64 rng(123456u);
    auto u = [&](double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(rng);
    };
    const TestFunction h(1.5);
    for (int trial = 0; trial < 12; ++trial) {
        SyntheticSpectralFunction F;
        for (int i = 0; i < 5; ++i)
            F.zeros.push_back({{u(-2.5, 2.5), u(-1.4, 1.4)},
                               std::uniform_int_distribution<int>(1, 3)(rng)});
        for (int i = 0; i < 3; ++i)
            F.poles.push_back({{u(-2.5, 2.5), u(-1.4, 1.4)},
                               std::uniform_int_distribution<int>(1, 3)(rng)});
        F.entire_poly = {3.0, 0.0, 0.2}; // nonvanishing on real-ish boxes
        const cplx lo{-3.0, -1.6}, hi{3.0, 1.6};
        bool clash = false;
        for (const auto& z : F.zeros)
            if (std::abs(std::abs(z.location.imag()) - 1.6) < 0.08 ||
                std::abs(std::abs(z.location.real()) - 3.0) < 0.08)
                clash = true;
        for (const auto& p : F.poles)
            if (std::abs(std::abs(p.location.imag()) - 1.6) < 0.08 ||
                std::abs(std::abs(p.location.real()) - 3.0) < 0.08)
                clash = true;
        if (clash) continue;
        const auto rep = contour_log_derivative_integral(F, h, lo, hi, 1e-12);
        INFO("trial " << trial);
        CHECK(rep.residual < 1e-8);
        // argument principle: integer winding equals zeros - poles with order
        long expect = 0;
        for (const auto& z : F.zeros)
            if (inside_box(z.location, lo, hi)) expect += z.order;
        for (const auto& p : F.poles)
            if (inside_box(p.location, lo, hi)) expect -= p.order;
        CHECK(winding_number(F, lo, hi) == expect);
    }
}

TEST_CASE("contour deformation invariance between homotopic boxes") {
    SyntheticSpectralFunction F;
    F.zeros.push_back({{0.4, 0.3}, 2});
    F.poles.push_back({{-0.7, -0.2}, 1});
    const TestFunction h(1.0);
    const auto a = contour_log_derivative_integral(F, h, {-2.0, -1.0}, {2.0, 1.0});
    const auto b =
        contour_log_derivative_integral(F, h, {-1.5, -0.8}, {1.7, 1.3});
    CHECK(mag(a.integral - b.integral) < 1e-9);
}

TEST_CASE("resonance identity on planted spectra") {
    const TestFunction h(1.0);
    const double sigma = 1.0, T = 4.0;

    // no planted resonances: both sides vanish
    SyntheticSpectralFunction empty;
    empty.entire_poly = {1.0};
    const auto r0 = verify_resonance_lemma(empty, h, sigma, T);
    CHECK(mag(r0.integral) < 1e-9);
    CHECK(r0.residual < 1e-9);

    // one unperturbed resonance: left side is -h(r_1)
    SyntheticSpectralFunction S1;
    S1.poles.push_back({{1.3, 0.45}, 1});
    const auto r1 = verify_resonance_lemma(S1, h, sigma, T);
    CHECK(mag(r1.predicted + h.h({1.3, 0.45})) < 1e-14);
    CHECK(r1.residual < 1e-8);

    // full mix: 2 perturbed + 2 unperturbed resonances + 1 small eigenvalue
    SyntheticSpectralFunction S2;
    S2.poles.push_back({{0.8, 0.31}, 1});
    S2.poles.push_back({{-2.2, 0.62}, 1});
    S2.zeros.push_back({{1.7, 0.52}, 1});
    S2.zeros.push_back({{-0.9, 0.24}, 1});
    S2.zeros.push_back({{0.0, -0.37}, 1});
    const auto r2 = verify_resonance_lemma(S2, h, sigma, T);
    CHECK(r2.residual < 1e-8);
}

TEST_CASE("truncated trace identity on planted spectra") {
    const TestFunction h(1.0);
    const double sigma = 1.0, T = 4.0;

    // one perturbed/unperturbed eigenvalue pair on the real axis
    SyntheticSpectralFunction S;
    S.zeros.push_back({{1.1, 0.0}, 1});
    S.zeros.push_back({{-1.1, 0.0}, 1});
    S.poles.push_back({{1.9, 0.0}, 1});
    S.poles.push_back({{-1.9, 0.0}, 1});
    const auto r = verify_truncated_formula(S, h, sigma, T);
    CHECK(r.residual < 1e-8);

    // delta bookkeeping: simple vs double pole at 0 differ by h(0)/2
    SyntheticSpectralFunction Sd = S;
    Sd.poles.push_back({{0.0, 0.0}, 1});
    const auto rd = verify_truncated_formula(Sd, h, sigma, T);
    CHECK(rd.residual < 1e-8);
    SyntheticSpectralFunction Sdd = S;
    Sdd.poles.push_back({{0.0, 0.0}, 2});
    const auto rdd = verify_truncated_formula(Sdd, h, sigma, T);
    CHECK(rdd.residual < 1e-8);
    // the two bookkeepings differ by exactly h(0)/2 on the formula side
    const double lhs_shift = mag(rd.predicted - rdd.predicted);
    CHECK(std::abs(lhs_shift - h.h({0.0, 0.0}).real()) < 1e-12);

    // linearity under rescaling h
    const TestFunction h3(1.0, {3.0});
    const auto r3 = verify_truncated_formula(S, h3, sigma, T);
    CHECK(mag(r3.predicted - 3.0 * r.predicted) < 1e-12);
    CHECK(r3.residual < 3e-8);

    // randomized mixes including resonances and small eigenvalues
    for (std::uint64_t seed : {7u, 8u, 9u, 10u}) {
        const auto Sr = random_synthetic(seed, sigma, T, 2, 2, 1, 1);
        const auto rr = verify_truncated_formula(Sr, h, sigma, T);
        INFO("seed " << seed);
        CHECK(rr.residual < 1e-8);
        const auto rl = verify_resonance_lemma(Sr, h, sigma, T);
        CHECK(rl.residual < 1e-8);
    }
}
