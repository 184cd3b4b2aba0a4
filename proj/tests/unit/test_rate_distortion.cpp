#include "gaussrd/rate_distortion.hpp"
#include "gaussrd/state_spec.hpp"
#include "gaussrd/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace gaussrd;

TEST_SUITE("ratedist") {

TEST_CASE("zero-distortion endpoint is the source entropy") {
    for (double ns : {0.0, 0.1, 0.25, 1.0, 5.0}) {
        const RatePoint p = rate_distortion(state_thermal(ns), 0.0);
        CHECK(std::abs(p.r_i - bosonic_entropy(ns)) <= 1e-9);
        CHECK(p.delta == 0.0);
        CHECK(p.tau == 0.0);
    }
    // squeezed mixed input: same endpoint through the optimizer path
    const CovMat sq = state_from_cm(4.0, 0.0, 1.0);
    CHECK(std::abs(rate_distortion(sq, 0.0).r_i - bosonic_entropy(0.5)) <= 1e-9);
}

TEST_CASE("thermal spot values") {
    // clipped negative coherent information
    const RatePoint clipped = rate_distortion(thermal_cm(3.0), 0.5);
    CHECK(clipped.r_i == 0.0);
    CHECK(coherent_info(NoiseParams{1.0, 0.25, clipped.tau}) ==
          doctest::Approx(-0.277805151).epsilon(1e-8));

    const RatePoint spot = rate_distortion(state_family(3.0, 0.25), 0.1);
    CHECK(spot.r_i == doctest::Approx(0.368709513).epsilon(1e-8));
    CHECK(std::abs(spot.r_i - 0.36873) <= 1e-4);
    CHECK(spot.delta == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(spot.tau == doctest::Approx(0.1 * 23.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("pure-state reduction") {
    // N_s = 0: identically zero
    for (double nn : {0.0, 0.2, 1.0, 3.0}) CHECK(pure_state_rate(0.0, nn) == 0.0);
    // N_n = 0: source entropy
    for (double ns : {0.0, 0.4, 2.0})
        CHECK(pure_state_rate(ns, 0.0) == doctest::Approx(bosonic_entropy(ns)).epsilon(1e-12));
    // matches the general closed form at Omega = 2
    for (double ns : {0.3, 1.0})
        for (double nn : {0.1, 0.3, 0.9}) {
            const double ic = coherent_info(NoiseParams{ns, nn * nn, 2.0 * nn});
            CHECK(pure_state_rate(ns, nn) ==
                  doctest::Approx(std::max(0.0, ic)).epsilon(1e-12));
        }
    CHECK_THROWS_AS(pure_state_rate(-0.1, 0.0), std::domain_error);
}

TEST_CASE("pure inputs give exactly zero rate") {
    for (double trace : {2.0, 3.0, 10.0}) {
        const CovMat g = state_family(trace, 0.0);
        for (const RatePoint& p : rd_curve(g, linspace(0.0, 2.0, 201))) CHECK(p.r_i == 0.0);
    }
}

TEST_CASE("brute-force grid oracle") {
    // corner row at delta = N_n^2 is t-independent and equals the closed form
    const CovMat g3 = thermal_cm(3.0);
    const SourceSummary src = analyze_source(g3);
    CHECK(src.thermal);
    CHECK(src.omega == doctest::Approx(26.0 / 9.0).epsilon(1e-14));
    const double nn = 0.3;
    const double corner =
        coherent_info(NoiseParams{src.n_s, nn * nn, tau_from_t(nn, nn * nn, src.omega, 0.0)});

    const BruteForceResult b = brute_force_rate(g3, nn);
    CHECK(b.i_min <= corner + 1e-12);
    // the family minimum sits on the t = 1 edge one step inside the corner
    CHECK(b.t_star == 1.0);
    CHECK(b.delta_star == doctest::Approx(nn * nn * 199.0 / 200.0).epsilon(1e-12));
    CHECK(b.i_min == doctest::Approx(0.0896787017).epsilon(1e-8));
    CHECK(corner == doctest::Approx(0.0912132800).epsilon(1e-8));

    // pure input: every grid value is exactly zero
    const BruteForceResult pure = brute_force_rate(state_family(3.0, 0.0), 0.7);
    CHECK(pure.i_min == 0.0);

    // N_n = 0 degenerates to the single zero-noise point
    const BruteForceResult none = brute_force_rate(g3, 0.0);
    CHECK(none.i_min == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(GridSpec(2, 81), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_rate(g3, -0.1), std::domain_error);
}

// The closed form is not the family minimum away from weak signals: an
// explicit channel on the t = 1 edge undercuts it. Pinned here so the gap is
// visible and stable.
TEST_CASE("family minimum undercuts the corner value for moderate signals") {
    const double gs = 2.0, ns = 0.5, nn = 0.1;
    const CovMat g = thermal_cm(gs);
    const double corner = coherent_info(
        NoiseParams{ns, nn * nn, tau_from_t(nn, nn * nn, thermal_omega(gs), 0.0)});
    CHECK(corner == doctest::Approx(0.577325379).epsilon(1e-8));

    const Matrix2d noise = verify::detail::explicit_noise(nn, 0.00676, 1.0);
    const GaussianChannel ch{thermal_m_star(gs), noise};
    CHECK(validate_channel(ch).valid);
    CHECK(average_distortion(ch, g) - thermal_dbar_min(gs) ==
          doctest::Approx(nn).epsilon(1e-12));
    const double oracle = coherent_info_from_cm(joint_cm(ch, g));
    CHECK(oracle == doctest::Approx(0.537682).epsilon(1e-5));
    CHECK(oracle < corner - 0.03);

    const BruteForceResult b = brute_force_rate(g, nn);
    CHECK(b.i_min < corner - 0.03);
}

TEST_CASE("weak-signal cases keep the corner as the grid argmin") {
    for (double ns : {0.001, 0.005, 0.01}) {
        const CovMat g = state_thermal(ns);
        const SourceSummary src = analyze_source(g);
        const double nn = 0.2;
        const double corner =
            coherent_info(NoiseParams{src.n_s, nn * nn, tau_from_t(nn, nn * nn, src.omega, 0.0)});
        const BruteForceResult b = brute_force_rate(g, nn);
        CHECK(b.delta_star == doctest::Approx(nn * nn).epsilon(1e-12));
        CHECK(std::abs(b.i_min - corner) <= 1e-12);
    }
}

TEST_CASE("curves") {
    const auto c3 = rd_curve(thermal_cm(3.0), linspace(0.0, 3.0, 301));
    CHECK(c3.front().r_i == doctest::Approx(2.0).epsilon(1e-12));
    for (size_t i = 1; i < c3.size(); ++i) CHECK(c3[i].r_i <= c3[i - 1].r_i + 1e-12);
    // reaches zero at or before 2 sinh 2r_s
    const double clip = 2.0 * std::sqrt(std::pow(thermal_cosh_2rs(3.0), 2) - 1.0);
    CHECK(clip == doctest::Approx(2.0846298).epsilon(1e-6));
    for (const RatePoint& p : c3)
        if (p.n_n >= clip) CHECK(p.r_i == 0.0);

    const auto family = rd_curve(state_family(3.0, 0.25), linspace(0.0, 2.0, 201));
    CHECK(family.front().r_i == doctest::Approx(0.902410118609).epsilon(1e-10));
    CHECK(family.back().r_i == 0.0);
    for (size_t i = 1; i < family.size(); ++i) CHECK(family[i].r_i <= family[i - 1].r_i + 1e-12);

    CHECK_THROWS_AS(rd_curve(thermal_cm(2.0), {0.5, 0.2}), std::domain_error);
    CHECK_THROWS_AS(rd_curve(thermal_cm(2.0), {-0.1, 0.2}), std::domain_error);
}

TEST_CASE("clipping points for the stated sources") {
    for (double ns : {0.05, 0.25, 1.0}) {
        const double gs = 2.0 * ns + 1.0;
        const double c2 = thermal_cosh_2rs(gs);
        const double nn = 2.0 * std::sqrt(c2 * c2 - 1.0);
        CHECK(rate_distortion(thermal_cm(gs), nn).r_i == 0.0);
    }
}

TEST_CASE("zero crossing located by bisection") {
    CHECK(find_zero_crossing(thermal_cm(3.0)) == doctest::Approx(0.340341917).epsilon(1e-6));
    CHECK(find_zero_crossing(state_family(3.0, 0.0)) == 0.0);
}

TEST_CASE("omega-2 reduction for near-pure squeezed inputs") {
    for (double eps : {1e-9, 1e-7}) {
        const double gs = 1.0 + eps;
        const CovMat g = CovMat(Matrix2d((Matrix2d() << gs * 1.4, 0.0, 0.0, gs / 1.4).finished()));
        const WilliamsonResult w = williamson_one_mode(g);
        for (double nn : {0.0, 0.2, 0.8})
            CHECK(std::abs(rate_distortion(g, nn).r_i - pure_state_rate(w.n_s, nn)) <= 1e-6);
    }
}

}  // TEST_SUITE
