#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "belldepth/witness.hpp"

using namespace belldepth;

TEST_CASE("parity expression bound exponents") {
    // local bounds alternate with parity
    CHECK(depth_bounds(4, 1, GhzFamily::Svetlichny).local.exponent == 0);
    CHECK(depth_bounds(5, 1, GhzFamily::Svetlichny).local.exponent == 1);
    CHECK(depth_bounds(4, 1, GhzFamily::Mermin).local.exponent == 1);
    CHECK(depth_bounds(5, 1, GhzFamily::Mermin).local.exponent == 0);
    // k = N collapses onto the nosignaling value for the Svetlichny family
    auto r = depth_bounds(3, 3, GhzFamily::Svetlichny);
    CHECK(r.k_nonlocal.exponent == 3);
    CHECK(r.nosignaling.exponent == 3);
    // k = 1 reduces to the local bound in both families
    for (int N : {3, 4, 5, 6}) {
        for (auto fam : {GhzFamily::Svetlichny, GhzFamily::Mermin}) {
            auto row = depth_bounds(N, 1, fam);
            CHECK(row.k_nonlocal.exponent == row.local.exponent);
        }
    }
}

TEST_CASE("bound ordering: local <= k-nonlocal <= quantum <= nosignaling") {
    for (int N = 2; N <= 12; ++N)
        for (int k = 1; k < N; ++k)
            for (auto fam : {GhzFamily::Svetlichny, GhzFamily::Mermin}) {
                auto r = depth_bounds(N, k, fam);
                CHECK(r.local.exponent <= r.k_nonlocal.exponent);
                CHECK(r.k_nonlocal.exponent <= r.quantum.exponent);
                CHECK(r.quantum.exponent <= r.nosignaling.exponent);
            }
}

TEST_CASE("witness threshold is the smaller of the two family bounds") {
    for (int N = 2; N <= 12; ++N)
        for (int k = 1; k <= N; ++k) {
            GhzWitnessInput in{N, 1.0, N * N / 4.0};
            auto w = ghz_witness(in, k);
            int e_s = depth_bounds(N, k, GhzFamily::Svetlichny).k_nonlocal.exponent;
            int e_m = depth_bounds(N, k, GhzFamily::Mermin).k_nonlocal.exponent;
            CHECK(w.threshold == Catch::Approx(std::pow(2.0, std::min(e_s, e_m) / 2.0)));
        }
}

TEST_CASE("ideal GHZ input saturates the quantum bound and beats every k < N") {
    for (int N : {3, 4, 7, 10}) {
        GhzWitnessInput in{N, 1.0, N * N / 4.0};
        for (int k = 1; k < N; ++k) {
            auto r = ghz_witness(in, k);
            CHECK(r.value == Catch::Approx(std::pow(2.0, (N - 1) / 2.0)));
            CHECK(r.violated);
            CHECK(r.depth_at_least == k + 1);
        }
        auto top = ghz_witness(in, N);
        CHECK(top.value == Catch::Approx(top.threshold));
        CHECK_FALSE(top.violated);  // equality is not a strict crossing
    }
}

TEST_CASE("maximally mixed input violates nothing") {
    int N = 6;
    GhzWitnessInput in{N, 0.0, N / 4.0};
    for (int k = 1; k <= N; ++k) CHECK_FALSE(ghz_witness(in, k).violated);
}

TEST_CASE("witness arithmetic example: N=4, k=2") {
    GhzWitnessInput in{4, 1.0, 4.0};
    auto r = ghz_witness(in, 2);
    CHECK(r.threshold == Catch::Approx(2.0));
    CHECK(r.value == Catch::Approx(std::pow(2.0, 1.5)));
    CHECK(r.violated);
    CHECK(r.depth_at_least == 3);
}

TEST_CASE("pair-correlation shift operator is positive semidefinite") {
    for (int N = 2; N <= 12; ++N) {
        double lo = chi_min_eigenvalue(N);
        CHECK(lo >= -1e-9);
        CHECK(lo == Catch::Approx(0.0).margin(1e-12));  // the zero mode is always attained
    }
    for (int N = 2; N <= 8; ++N)
        CHECK(std::abs(chi_min_eigenvalue(N) - chi_min_eigenvalue_dense(N)) < 1e-9);
}

TEST_CASE("parity bell operator values on symmetric states") {
    for (int N : {3, 6, 9}) {
        std::vector<double> ghzp(N + 1, 0.0), ghzm(N + 1, 0.0), zero(N + 1, 0.0);
        ghzp[0] = ghzp[N] = 1 / std::sqrt(2.0);
        ghzm[0] = 1 / std::sqrt(2.0);
        ghzm[N] = -1 / std::sqrt(2.0);
        zero[0] = 1.0;
        CHECK(parity_bell_value(N, ghzp) == Catch::Approx(std::pow(2.0, (N - 1) / 2.0)));
        CHECK(parity_bell_value(N, ghzm) == Catch::Approx(-std::pow(2.0, (N - 1) / 2.0)));
        CHECK(parity_bell_value(N, zero) == 0.0);
    }
}

TEST_CASE("second-moment threshold closed form") {
    CHECK(two_body_threshold(1.0, 10, 1) == Catch::Approx(0.5));
    CHECK(two_body_threshold(1.0, 480, 1) == Catch::Approx(0.5));
    // zero contrast never certifies anything
    for (int k = 1; k <= 6; ++k) CHECK(two_body_threshold(0.0, 480, k) <= 0.0);
    // k=6 at full contrast for N=480
    double b = rat_double(closed_form_bound(6, 480)) / 960.0;
    double want = (2 - b - std::sqrt(b * b - 1)) / 2;
    CHECK(two_body_threshold(1.0, 480, 6) == Catch::Approx(want));
    CHECK(want == Catch::Approx(0.332).margin(5e-4));
    CHECK_THROWS_AS(two_body_threshold(1.2, 480, 4), std::domain_error);
}

TEST_CASE("threshold monotone: decreasing in k, increasing in contrast") {
    for (double c : {0.2, 0.6, 0.9, 1.0}) {
        for (int k = 1; k < 6; ++k)
            CHECK(two_body_threshold(c, 480, k + 1) <= two_body_threshold(c, 480, k) + 1e-15);
    }
    for (int k = 1; k <= 6; ++k)
        for (double c = 0.0; c < 0.99; c += 0.05)
            CHECK(two_body_threshold(c, 480, k) <= two_body_threshold(c + 0.01, 480, k) + 1e-15);
}

TEST_CASE("closed form equals the 1-d maximization at Ca=0") {
    for (int k : {1, 3, 5}) {
        for (double c : {0.3, 0.8, 0.97}) {
            double b = rat_double(closed_form_bound(k, 480)) / 960.0;
            double numeric = witness_rhs_max_theta(c, 0.0, b);
            CHECK(numeric == Catch::Approx(two_body_threshold(c, 480, k)).margin(1e-5));
        }
    }
}

TEST_CASE("general witness expression never beats the maximized bound") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> U(-1, 1), T(0, M_PI), P(0, 2 * M_PI);
    int checked = 0;
    for (int n = 0; n < 1000; ++n) {
        double Ca = U(rng), Cb = U(rng), Cc = U(rng);
        double t = T(rng), p = P(rng);
        double b = rat_double(closed_form_bound(1 + (int)(rng() % 6), 480)) / 960.0;
        double c = std::cos(t);
        if (std::abs(c) < 1e-3) continue;
        double rhs = (Ca * c + Cb * std::sin(t) * std::cos(p) + Cc * std::sin(t) * std::sin(p) - b +
                      c * c) /
                     (c * c);
        double Cbc = std::sqrt(Cb * Cb + Cc * Cc);
        double zmax = witness_rhs_max_theta(Cbc, Ca, b);
        CHECK(rhs <= zmax + 1e-6);
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("depth classification") {
    // clearly squeezed, high-contrast record
    WitnessRecord good{480, 0.98, 0.05};
    auto d = classify_depth(good);
    CHECK(d.depth_lower_bound >= 2);
    // monotone in zeta^2
    int prev = 8;
    for (double z2 : {0.05, 0.15, 0.25, 0.35, 0.45, 0.55}) {
        auto c = classify_depth(WitnessRecord{480, 0.99, z2});
        CHECK(c.depth_lower_bound <= prev);
        prev = c.depth_lower_bound;
    }
    // boundary: exactly on the threshold is not a violation
    double thr = two_body_threshold(0.9, 480, 1);
    auto onb = classify_depth(WitnessRecord{480, 0.9, thr});
    CHECK(onb.depth_lower_bound == 1);
    // ideal record caps out at the deepest tabulated witness
    auto ideal = classify_depth(WitnessRecord{480, 1.0, 1e-6});
    CHECK(ideal.depth_lower_bound == 7);
    CHECK(ideal.capped);
    // symmetric in the sign of the contrast
    auto neg = classify_depth(WitnessRecord{480, -0.98, 0.05});
    CHECK(neg.depth_lower_bound == classify_depth(WitnessRecord{480, 0.98, 0.05}).depth_lower_bound);
}

TEST_CASE("depth curve emission") {
    std::vector<double> grid;
    for (double c = 0; c <= 1.0 + 1e-12; c += 0.25) grid.push_back(c);
    std::string csv = emit_depth_curves(480, grid);
    CHECK(csv.find("C_b,thr_k1") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == (long)grid.size() + 1);
    // at zero contrast every threshold is non-positive
    auto second_line = csv.substr(csv.find('\n') + 1);
    CHECK(second_line.substr(0, 8) == "0.000000");
}

TEST_CASE("gaussian likelihood: zero covariance reproduces the deterministic classifier") {
    WitnessRecord deep{480, 0.98, 0.05};
    double p = gaussian_depth_likelihood(deep, {0, 0, 0, 0}, 1, 1000, 1);
    CHECK(p == 1.0);
    WitnessRecord shallow{480, 0.2, 0.9};
    CHECK(gaussian_depth_likelihood(shallow, {0, 0, 0, 0}, 1, 1000, 1) == 0.0);
}

TEST_CASE("gaussian likelihood: boundary mean gives about one half") {
    int k = 2;
    double cb = 0.95;
    WitnessRecord boundary{480, cb, two_body_threshold(cb, 480, k)};
    double p = gaussian_depth_likelihood(boundary, {1e-8, 0, 0, 1e-8}, k, 100000, 12345);
    CHECK(p == Catch::Approx(0.5).margin(0.05));
}

TEST_CASE("gaussian likelihood: seeded and reproducible") {
    WitnessRecord rec{480, 0.9, 0.3};
    std::array<double, 4> cov{1e-4, 0, 0, 1e-4};
    CHECK(gaussian_depth_likelihood(rec, cov, 1, 20000, 77) ==
          gaussian_depth_likelihood(rec, cov, 1, 20000, 77));
    CHECK_THROWS(gaussian_depth_likelihood(rec, {1, 2, 2, 1}, 1, 10, 1));  // not PSD
}
