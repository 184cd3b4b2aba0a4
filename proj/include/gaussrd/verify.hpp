#pragma once

// Named, seeded self-verification checks. Every draw is addressed through the
// counter-based generator, so reports are byte-identical for equal inputs and
// independent of evaluation order.

#include "gaussrd/channel.hpp"
#include "gaussrd/coherent_info.hpp"
#include "gaussrd/csv.hpp"
#include "gaussrd/distortion.hpp"
#include "gaussrd/rate_distortion.hpp"
#include "gaussrd/rng.hpp"
#include "gaussrd/state_spec.hpp"
#include "gaussrd/symplectic.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace gaussrd::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    double tolerance = 0.0;
    double worst_error = 0.0;
    long cases = 0;
};

namespace detail {

using gaussrd::detail::rot;

// stream ids, one per check family
enum Stream : std::uint64_t {
    kGamma = 1,
    kWilliamson,
    kQuadratic,
    kChannelEq,
    kApply,
    kJointRef,
    kGainCongruence,
    kBridge,
    kRotationInv,
    kFloor,
    kIdentities,
    kOracle,
    kMonotone,
    kCurves,
    kGrid,
};

inline CovMat random_gamma(const CounterRng& rng, std::uint64_t stream, std::uint64_t i,
                           double gs_lo = 1.0, double gs_hi = 4.0, double squeeze = 0.6) {
    const double gs = rng.uniform(stream, 3 * i, gs_lo, gs_hi);
    const double u = rng.uniform(stream, 3 * i + 1, -squeeze, squeeze);
    const double th = rng.uniform(stream, 3 * i + 2, 0.0, 3.14159265358979323846);
    Matrix2d d = Matrix2d::Zero();
    d(0, 0) = gs * std::exp(2.0 * u);
    d(1, 1) = gs * std::exp(-2.0 * u);
    const Matrix2d r = rot(th);
    return CovMat(Matrix2d(r * d * r.transpose()));
}

inline Matrix2d random_sl2(const CounterRng& rng, std::uint64_t stream, std::uint64_t i) {
    const double t1 = rng.uniform(stream, 3 * i, 0.0, 6.283185307179586);
    const double u = rng.uniform(stream, 3 * i + 1, -0.7, 0.7);
    const double t2 = rng.uniform(stream, 3 * i + 2, 0.0, 6.283185307179586);
    Matrix2d z = Matrix2d::Zero();
    z(0, 0) = std::exp(u);
    z(1, 1) = std::exp(-u);
    return rot(t1) * z * rot(t2);
}

inline Matrix2d rotated_diag(double n1, double n2, double phi) {
    Matrix2d d = Matrix2d::Zero();
    d(0, 0) = n1;
    d(1, 1) = n2;
    const Matrix2d r = rot(phi);
    return r * d * r.transpose();
}

inline Matrix2d random_psd_noise(const CounterRng& rng, std::uint64_t stream, std::uint64_t i) {
    return rotated_diag(rng.uniform(stream, 3 * i, 0.0, 1.5),
                        rng.uniform(stream, 3 * i + 1, 0.0, 1.5),
                        rng.uniform(stream, 3 * i + 2, 0.0, 3.141592653589793));
}

// Noise with at most one negative eigenvalue, kept away from the decision
// boundary. The determinant-based Simon form cannot see two simultaneous
// violations, so the three-way equivalence check draws from this ensemble.
inline Matrix2d random_signed_noise(const CounterRng& rng, std::uint64_t stream, std::uint64_t i) {
    const double pick = rng.u01(stream, 4 * i);
    const double n1 = pick < 0.45 ? rng.uniform(stream, 4 * i + 1, -0.4, -0.01)
                                  : rng.uniform(stream, 4 * i + 1, 0.01, 1.6);
    const double n2 = rng.uniform(stream, 4 * i + 2, 0.05, 1.6);
    return rotated_diag(n1, n2, rng.uniform(stream, 4 * i + 3, 0.0, 3.141592653589793));
}

// Noise matrix with Tr N = 4 Nn, det N = 4 delta whose transformed trace under
// the thermal optimizer M*(0) realizes tau_from_t at parameter t.
inline Matrix2d explicit_noise(double nn, double delta, double t) {
    const double w = std::sqrt(std::max(0.0, nn * nn - delta));
    const double off = -2.0 * t * w;
    const double bulge = 2.0 * std::sqrt(std::max(0.0, 1.0 - t * t)) * w;
    return (Matrix2d() << 2.0 * nn + bulge, off, off, 2.0 * nn - bulge).finished();
}

}  // namespace detail

// --- symcore ---------------------------------------------------------------

inline CheckResult check_sympl_eigs_ge_one(const CounterRng& rng, long cases) {
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        const CovMat g = detail::random_gamma(rng, detail::kGamma, static_cast<std::uint64_t>(i));
        if (!check_uncertainty(g, SymplecticForm::standard(1)).physical) continue;
        for (double nu : symplectic_eigenvalues(g, SymplecticForm::standard(1)))
            worst = std::max(worst, 1.0 - nu);
    }
    return {"sympl_eigs_ge_one_for_valid_cm", worst <= 1e-9, 1e-9, worst, cases};
}

inline CheckResult check_purification_pure(const CounterRng& rng, long cases) {
    double worst = 0.0;
    bool blocks_exact = true;
    for (long i = 0; i < cases; ++i) {
        const CovMat g = detail::random_gamma(rng, detail::kGamma, 100000 + static_cast<std::uint64_t>(i));
        const CovMat psi = purification_cm(g);
        blocks_exact = blocks_exact && psi.m.topLeftCorner(2, 2) == g.m &&
                       psi.m.bottomRightCorner(2, 2) == g.m;
        for (double nu : symplectic_eigenvalues(psi, SymplecticForm::mixed()))
            worst = std::max(worst, std::abs(nu - 1.0));
    }
    return {"purification_blocks_exact_and_pure", blocks_exact && worst <= 1e-9, 1e-9, worst, cases};
}

inline CheckResult check_thermal_entropy_identity(const CounterRng& rng, long cases) {
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        const double gs = rng.uniform(detail::kGamma, 200000 + static_cast<std::uint64_t>(i), 1.0, 8.0);
        const double lhs = gaussian_entropy(thermal_cm(gs), SymplecticForm::standard(1));
        const double rhs = bosonic_entropy(0.5 * (gs - 1.0));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return {"thermal_entropy_identity", worst <= 1e-12, 1e-12, worst, cases};
}

inline CheckResult check_williamson_residuals(const CounterRng& rng, long cases) {
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        const CovMat g = detail::random_gamma(rng, detail::kWilliamson, static_cast<std::uint64_t>(i));
        const WilliamsonResult w = williamson_one_mode(g);
        const Matrix2d residual =
            w.s.transpose() * g.m * w.s - w.gamma_s * Matrix2d::Identity();
        worst = std::max({worst, residual.cwiseAbs().maxCoeff(),
                          std::abs(w.s.determinant() - 1.0),
                          std::abs(w.gamma_s - std::sqrt(Matrix2d(g.m).determinant()))});
    }
    return {"williamson_residuals", worst <= 1e-12, 1e-12, worst, cases};
}

inline CheckResult check_quadratic_expectation_linear(const CounterRng& rng, long cases) {
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        const Matrix2d q1 = detail::random_psd_noise(rng, detail::kQuadratic, 4 * u);
        const Matrix2d q2 = detail::random_psd_noise(rng, detail::kQuadratic, 4 * u + 1);
        const CovMat g1 = detail::random_gamma(rng, detail::kQuadratic, 4 * u + 2);
        const CovMat g2 = detail::random_gamma(rng, detail::kQuadratic, 4 * u + 3);
        const double a = rng.u01(detail::kQuadratic, 1000000 + u);
        const double lhs = quadratic_expectation(MatrixXd(a * q1 + (1.0 - a) * q2), g1);
        const double rhs = a * quadratic_expectation(MatrixXd(q1), g1) +
                           (1.0 - a) * quadratic_expectation(MatrixXd(q2), g1);
        const double lhs2 = quadratic_expectation(
            MatrixXd(q1), MatrixXd(a * g1.m + (1.0 - a) * g2.m));
        const double rhs2 = a * quadratic_expectation(MatrixXd(q1), g1) +
                            (1.0 - a) * quadratic_expectation(MatrixXd(q1), g2);
        worst = std::max({worst, std::abs(lhs - rhs), std::abs(lhs2 - rhs2)});
    }
    return {"quadratic_expectation_linear", worst <= 1e-12, 1e-12, worst, cases};
}

// --- channel ---------------------------------------------------------------

inline CheckResult check_channel_validity_equivalence(const CounterRng& rng, long cases) {
    long mismatches = 0;
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        const CovMat g = detail::random_gamma(rng, detail::kChannelEq, 3 * u, 1.1, 3.0, 0.4);
        const Matrix2d m = detail::random_sl2(rng, detail::kChannelEq, 3 * u + 1);
        const Matrix2d n = detail::random_signed_noise(rng, detail::kChannelEq, 3 * u + 2);
        const GaussianChannel ch{m, n};
        const bool flag = validate_channel(ch).valid;
        const JointCM joint = joint_cm(ch, g);
        const bool physical = check_uncertainty(MatrixXd(joint.m), SymplecticForm::mixed()).physical;
        const double simon = simon_condition(joint.m);
        const bool simon_ok = simon >= -1e-9;
        if (flag != physical || flag != simon_ok) {
            ++mismatches;
            worst = std::max(worst, std::abs(simon));
        }
    }
    return {"channel_validity_equivalence", mismatches == 0, 1e-9,
            static_cast<double>(mismatches), cases};
}

inline CheckResult check_apply_preserves_physicality(const CounterRng& rng, long cases) {
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        const CovMat g = detail::random_gamma(rng, detail::kApply, 3 * u);
        const Matrix2d m = detail::random_sl2(rng, detail::kApply, 3 * u + 1);
        const Matrix2d n = detail::random_psd_noise(rng, detail::kApply, 3 * u + 2);
        const CovMat out = apply(GaussianChannel{m, n}, g);
        const UncertaintyReport rep = check_uncertainty(out, SymplecticForm::standard(1));
        worst = std::max(worst, -rep.min_eig);
    }
    return {"apply_output_physical", worst <= kPhysicalTol, kPhysicalTol, worst, cases};
}

inline CheckResult check_joint_reference_block(const CounterRng& rng, long cases) {
    long bad = 0;
    for (long i = 0; i < cases; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        const CovMat g = detail::random_gamma(rng, detail::kJointRef, 2 * u);
        const Matrix2d m = detail::random_sl2(rng, detail::kJointRef, 2 * u + 1);
        const JointCM joint = joint_cm(GaussianChannel{m, Matrix2d::Identity()}, g);
        if (!(joint.reference_block() == Matrix2d(g.m))) ++bad;
    }
    return {"joint_reference_block_bit_exact", bad == 0, 0.0, static_cast<double>(bad), cases};
}

// True convergence of the finite-squeezing construction to the
// trace-preserving joint CM: errors shrink as e^{-r}.
inline CheckResult check_finite_r_convergence(const CounterRng&, long) {
    const CovMat g = thermal_cm(3.0);
    const Matrix2d noise = Matrix2d::Identity();
    const Matrix4d target = joint_cm(GaussianChannel{Matrix2d::Identity(), noise}, g).m;
    std::vector<double> errs;
    for (double r : {5.0, 10.0, 15.0, 20.0}) {
        const Matrix4d approx = general_joint_cm(finite_r_op(Matrix2d::Identity(), noise, r), g);
        errs.push_back((approx - target).cwiseAbs().maxCoeff());
    }
    bool ok = errs.back() <= 1e-7;
    for (size_t i = 0; i + 1 < errs.size(); ++i) {
        const double slope = std::log(errs[i] / errs[i + 1]) / 5.0;
        ok = ok && errs[i + 1] < errs[i] && std::abs(slope - 1.0) <= 0.05;
    }
    return {"finite_r_joint_cm_convergence", ok, 1e-7, errs.back(), 4};
}

inline CheckResult check_normalize_gain_congruence(const CounterRng& rng, long cases) {
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        const CovMat g = detail::random_gamma(rng, detail::kGainCongruence, 3 * u);
        Matrix2d m = detail::random_sl2(rng, detail::kGainCongruence, 3 * u + 1);
        m *= rng.uniform(detail::kGainCongruence, 3 * u + 2, 0.4, 1.8);
        const GaussianChannel ch{m, Matrix2d::Identity()};
        const NormalizedChannel norm = normalize_gain(ch);
        const Matrix2d lhs = ch.m.transpose() * g.m * ch.m;
        const Matrix2d rhs = ch.gain() * (norm.channel.m.transpose() * g.m * norm.channel.m);
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::abs(norm.channel.gain() - 1.0));
        worst = std::max(worst, (norm.channel.n - ch.n).cwiseAbs().maxCoeff());
    }
    return {"normalize_gain_congruence", worst <= 1e-12, 1e-12, worst, cases};
}

// --- distortion ------------------------------------------------------------

inline CheckResult check_distortion_bridge(const CounterRng& rng, long cases) {
    const DistortionForm form = build_form(1);
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        const CovMat g = detail::random_gamma(rng, detail::kBridge, 3 * u);
        const Matrix2d m = detail::random_sl2(rng, detail::kBridge, 3 * u + 1);
        const Matrix2d n = detail::random_psd_noise(rng, detail::kBridge, 3 * u + 2);
        const GaussianChannel ch{m, n};
        const double closed = average_distortion(ch, g);
        const double quad = quadratic_expectation(form.q, MatrixXd(joint_cm(ch, g).m));
        worst = std::max(worst, std::abs(closed - quad));
    }
    return {"average_distortion_bridge", worst <= 1e-12, 1e-12, worst, cases};
}

inline CheckResult check_rotation_invariance(const CounterRng& rng, long cases) {
    const long n = std::clamp<long>(cases / 25, 4, 40);
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        const CovMat g = detail::random_gamma(rng, detail::kRotationInv, 2 * u, 1.0, 3.5, 0.5);
        const double th = rng.uniform(detail::kRotationInv, 2 * u + 1, 0.0, 6.283185307179586);
        const Matrix2d r = detail::rot(th);
        const CovMat g_rot = CovMat(Matrix2d(r.transpose() * g.m * r));
        const MinimalDistortion a = minimal_distortion(g);
        const MinimalDistortion b = minimal_distortion(g_rot);
        worst = std::max({worst, std::abs(a.dbar_min - b.dbar_min), std::abs(a.omega - b.omega)});
    }
    return {"minimal_distortion_rotation_invariant", worst <= 1e-6, 1e-6, worst, n};
}

inline CheckResult check_thermal_closed_forms(const CounterRng&, long) {
    double worst = 0.0;
    for (double gs : {1.0, 1.5, 3.0, 11.0}) {
        const MinimalDistortion md = minimal_distortion(thermal_cm(gs));
        worst = std::max({worst, std::abs(md.dbar_min - thermal_dbar_min(gs)),
                          std::abs(md.omega - thermal_omega(gs))});
    }
    return {"thermal_minimization_closed_forms", worst <= 1e-8, 1e-8, worst, 4};
}

inline CheckResult check_dbar_above_floor(const CounterRng& rng, long cases) {
    const CovMat g = detail::random_gamma(rng, detail::kFloor, 999);
    const double floor = minimal_distortion(g).dbar_min;
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        const Matrix2d m = detail::random_sl2(rng, detail::kFloor, 2 * u);
        const Matrix2d n = detail::random_psd_noise(rng, detail::kFloor, 2 * u + 1);
        const double dbar = average_distortion(GaussianChannel{m, n}, g);
        worst = std::max(worst, floor - dbar);
    }
    return {"average_distortion_above_floor", worst <= 1e-9, 1e-9, worst, cases};
}

inline CheckResult check_kappa_degeneracy(const CounterRng&, long) {
    double worst = 0.0;
    long n = 0;
    for (double gs : {1.0, 1.3, 2.0, 3.0, 7.0}) {
        const double expected = thermal_dbar_min(gs);
        const double reach = std::sqrt(1.0 + thermal_sinh_rs(gs) * thermal_sinh_rs(gs));
        for (double f : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
            const GaussianChannel ch{thermal_m_star(gs, f * reach), Matrix2d::Zero()};
            const double err = std::abs(average_distortion(ch, thermal_cm(gs)) - expected);
            if (!(err <= worst)) worst = err;  // NaN-propagating max
            ++n;
        }
    }
    return {"kappa_family_degenerate", worst <= 1e-10, 1e-10, worst, n};
}

// --- coherent --------------------------------------------------------------

inline NoiseParams random_noise_params(const CounterRng& rng, std::uint64_t stream,
                                       std::uint64_t i, double* t_out = nullptr,
                                       double* nn_out = nullptr) {
    const double ns = rng.uniform(stream, 4 * i, 0.0, 2.5);
    const double nn = rng.uniform(stream, 4 * i + 1, 0.01, 1.5);
    const double delta = nn * nn * rng.u01(stream, 4 * i + 2);
    const double t = rng.uniform(stream, 4 * i + 3, -1.0, 1.0);
    const double gs = 2.0 * ns + 1.0;
    const double tau = tau_from_t(nn, delta, thermal_omega(gs), t);
    if (t_out) *t_out = t;
    if (nn_out) *nn_out = nn;
    return NoiseParams{ns, delta, tau};
}

inline CheckResult check_d_identities(const CounterRng& rng, long cases) {
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        const NoiseParams p = random_noise_params(rng, detail::kIdentities, static_cast<std::uint64_t>(i));
        const DValues d = d_values(p);
        const double lhs = d.d0 * d.d0 - 0.5 * (d.d1 * d.d1 + d.d2 * d.d2);
        const double rhs = p.n_s * (p.n_s + 1.0) + 0.5 * p.x();
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return {"d0_sum_identity", worst <= 1e-12, 1e-12, worst, cases};
}

inline CheckResult check_joint_det_identity(const CounterRng& rng, long cases) {
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        double t = 0.0, nn = 0.0;
        const NoiseParams p =
            random_noise_params(rng, detail::kIdentities, 500000 + static_cast<std::uint64_t>(i), &t, &nn);
        const double gs = 2.0 * p.n_s + 1.0;
        const JointCM joint = joint_cm(
            GaussianChannel{thermal_m_star(gs), detail::explicit_noise(nn, p.delta, t)},
            thermal_cm(gs));
        const DValues d = d_values(p);
        const double lhs = 16.0 * d.d1 * d.d1 * d.d2 * d.d2;
        const double det = joint.m.determinant();
        worst = std::max(worst, std::abs(lhs - det) / std::max(1.0, std::abs(det)));
    }
    return {"joint_det_identity", worst <= 1e-9, 1e-9, worst, cases};
}

inline CheckResult check_coherent_oracle(const CounterRng& rng, long cases) {
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        double t = 0.0, nn = 0.0;
        const NoiseParams p =
            random_noise_params(rng, detail::kOracle, static_cast<std::uint64_t>(i), &t, &nn);
        const double gs = 2.0 * p.n_s + 1.0;
        const JointCM joint = joint_cm(
            GaussianChannel{thermal_m_star(gs), detail::explicit_noise(nn, p.delta, t)},
            thermal_cm(gs));
        worst = std::max(worst, std::abs(coherent_info(p) - coherent_info_from_cm(joint)));
    }
    return {"coherent_info_closed_vs_cm_oracle", worst <= 1e-9, 1e-9, worst, cases};
}

inline CheckResult check_d_values_vs_spectrum(const CounterRng& rng, long cases) {
    double worst = 0.0;
    for (long i = 0; i < cases; ++i) {
        double t = 0.0, nn = 0.0;
        const NoiseParams p =
            random_noise_params(rng, detail::kOracle, 700000 + static_cast<std::uint64_t>(i), &t, &nn);
        const double gs = 2.0 * p.n_s + 1.0;
        const JointCM joint = joint_cm(
            GaussianChannel{thermal_m_star(gs), detail::explicit_noise(nn, p.delta, t)},
            thermal_cm(gs));
        const DValues d = d_values(p);
        const auto nu_joint = symplectic_eigenvalues(MatrixXd(joint.m), SymplecticForm::mixed());
        const auto nu_out =
            symplectic_eigenvalues(MatrixXd(joint.output_block()), SymplecticForm::standard(1));
        worst = std::max({worst, std::abs(2.0 * d.d0 - nu_out[0]),
                          std::abs(2.0 * d.d1 - nu_joint[0]), std::abs(2.0 * d.d2 - nu_joint[1])});
    }
    return {"d_values_match_cm_spectrum", worst <= 1e-9, 1e-9, worst, cases};
}

inline CheckResult check_delta_monotonicity(const CounterRng& rng, long cases) {
    const double h = 1e-6;
    double worst = -1.0;
    for (long i = 0; i < cases; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        const double ns = rng.uniform(detail::kMonotone, 3 * u, 0.05, 2.0);
        const double delta = rng.uniform(detail::kMonotone, 3 * u + 1, 0.01, 1.0);
        const double tau = 2.0 * std::sqrt(delta) * rng.uniform(detail::kMonotone, 3 * u + 2, 1.3, 3.0);
        const double x = delta + (ns + 0.5) * tau;
        auto ic_at = [&](double dd) {
            return coherent_info(NoiseParams{ns, dd, (x - dd) / (ns + 0.5)});
        };
        const double deriv = (ic_at(delta + h) - ic_at(delta - h)) / (2.0 * h);
        worst = std::max(worst, deriv);
    }
    return {"ic_decreasing_in_delta_at_fixed_x", worst <= 1e-10, 1e-10, worst, cases};
}

inline CheckResult check_slope_function(const CounterRng&, long) {
    const int n = 200;
    double worst = 0.0;
    double prev = 0.0;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
        const double a = 0.01 * std::pow(50.0 / 0.01, static_cast<double>(i) / (n - 1));
        const double f = bosonic_rate_slope(a);
        if (i > 0 && f >= prev) ok = false;
        prev = f;
    }
    for (int i = 0; i < n; ++i) {
        const double a = 0.01 * std::pow(50.0 / 0.01, static_cast<double>(i) / (n - 1));
        const double b = a * 1.8;
        const double mid = bosonic_rate_slope(0.5 * (a + b));
        const double chord = 0.5 * (bosonic_rate_slope(a) + bosonic_rate_slope(b));
        worst = std::max(worst, mid - chord);
        if (mid > chord + 1e-12) ok = false;
    }
    return {"rate_slope_decreasing_convex", ok, 1e-12, worst, 2 * n};
}

// --- ratedist --------------------------------------------------------------

inline CheckResult check_zero_distortion_endpoint(const CounterRng&, long) {
    double worst = 0.0;
    for (double ns : {0.0, 0.1, 0.25, 1.0, 5.0}) {
        const RatePoint p = rate_distortion(state_thermal(ns), 0.0);
        worst = std::max(worst, std::abs(p.r_i - bosonic_entropy(ns)));
    }
    return {"rate_at_zero_distortion_is_source_entropy", worst <= 1e-9, 1e-9, worst, 5};
}

inline CheckResult check_curves_nonincreasing(const CounterRng& rng, long cases) {
    const long n = std::clamp<long>(cases / 50, 3, 20);
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const CovMat g = detail::random_gamma(rng, detail::kCurves, static_cast<std::uint64_t>(i));
        const auto pts = rd_curve(g, linspace(0.0, 2.5, 201));
        for (size_t k = 1; k < pts.size(); ++k)
            worst = std::max(worst, pts[k].r_i - pts[k - 1].r_i);
    }
    return {"rate_curve_nonincreasing", worst <= 1e-12, 1e-12, worst, n * 201};
}

// What is actually true of the grid oracle: the corner row delta = N_n^2
// reproduces the closed form exactly, and the grid minimum never exceeds it.
inline CheckResult check_grid_corner_consistency(const CounterRng& rng, long cases) {
    const long n = std::clamp<long>(cases / 100, 3, 12);
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        const CovMat g = detail::random_gamma(rng, detail::kGrid, 2 * u, 1.0, 3.0, 0.4);
        const double nn = rng.uniform(detail::kGrid, 2 * u + 1, 0.05, 1.5);
        const SourceSummary src = analyze_source(g);
        const double corner =
            coherent_info(NoiseParams{src.n_s, nn * nn, tau_from_t(nn, nn * nn, src.omega, 0.0)});
        const BruteForceResult b = brute_force_rate(g, nn, GridSpec{41, 21});
        const double corner_row =
            coherent_info(NoiseParams{src.n_s, nn * nn, tau_from_t(nn, nn * nn, src.omega, 1.0)});
        worst = std::max({worst, std::abs(corner_row - corner), b.i_min - corner});
    }
    return {"grid_corner_row_matches_closed_form", worst <= 1e-12, 1e-12, worst, n};
}

inline CheckResult check_omega2_reduction(const CounterRng&, long) {
    double worst = 0.0;
    long n = 0;
    for (double eps : {1e-9, 1e-7}) {
        const double gs = 1.0 + eps;
        const CovMat g = CovMat(Matrix2d((Matrix2d() << gs * 1.4, 0.0, 0.0, gs / 1.4).finished()));
        const WilliamsonResult w = williamson_one_mode(g);
        // 1e-9 stays inside the positive-rate region, the rest is clipped
        for (double nn : {0.0, 1e-9, 0.2, 0.8}) {
            const double a = rate_distortion(g, nn).r_i;
            const double b = pure_state_rate(w.n_s, nn);
            worst = std::max(worst, std::abs(a - b));
            ++n;
        }
    }
    return {"omega_2_reduction_matches_pure_rate", worst <= 1e-6, 1e-6, worst, n};
}

inline CheckResult check_clipping_point(const CounterRng&, long) {
    double worst = 0.0;
    for (double ns : {0.05, 0.25, 1.0}) {
        const double gs = 2.0 * ns + 1.0;
        const double c = thermal_cosh_2rs(gs);
        const double nn = 2.0 * std::sqrt(c * c - 1.0);
        worst = std::max(worst, rate_distortion(thermal_cm(gs), nn).r_i);
    }
    return {"clipped_rate_zero_at_clipping_point", worst == 0.0, 0.0, worst, 3};
}

inline CheckResult check_pure_state_rate_zero(const CounterRng&, long) {
    double worst = 0.0;
    for (double trace : {2.0, 3.0, 10.0}) {
        const CovMat g = state_family(trace, 0.0);
        for (const RatePoint& p : rd_curve(g, linspace(0.0, 2.0, 201)))
            worst = std::max(worst, p.r_i);
    }
    return {"pure_state_rate_identically_zero", worst == 0.0, 0.0, worst, 3 * 201};
}

inline CheckResult check_desk_spot_value(const CounterRng&, long) {
    const double r = rate_distortion(state_family(3.0, 0.25), 0.1).r_i;
    const double err = std::abs(r - 0.36873);
    return {"thermal_trace3_spot_value", err <= 1e-4, 1e-4, err, 1};
}

inline std::vector<CheckResult> run_all(std::uint64_t seed, long cases) {
    const CounterRng rng{seed};
    std::vector<CheckResult> out;
    out.push_back(check_sympl_eigs_ge_one(rng, cases));
    out.push_back(check_purification_pure(rng, std::min<long>(cases, 500)));
    out.push_back(check_thermal_entropy_identity(rng, cases));
    out.push_back(check_williamson_residuals(rng, std::min<long>(cases, 500)));
    out.push_back(check_quadratic_expectation_linear(rng, cases));
    out.push_back(check_channel_validity_equivalence(rng, std::min<long>(cases, 500)));
    out.push_back(check_apply_preserves_physicality(rng, cases));
    out.push_back(check_joint_reference_block(rng, cases));
    out.push_back(check_finite_r_convergence(rng, cases));
    out.push_back(check_normalize_gain_congruence(rng, cases));
    out.push_back(check_distortion_bridge(rng, cases));
    out.push_back(check_rotation_invariance(rng, cases));
    out.push_back(check_thermal_closed_forms(rng, cases));
    out.push_back(check_dbar_above_floor(rng, cases));
    out.push_back(check_kappa_degeneracy(rng, cases));
    out.push_back(check_d_identities(rng, cases));
    out.push_back(check_joint_det_identity(rng, cases));
    out.push_back(check_coherent_oracle(rng, cases));
    out.push_back(check_d_values_vs_spectrum(rng, cases));
    out.push_back(check_delta_monotonicity(rng, cases));
    out.push_back(check_slope_function(rng, cases));
    out.push_back(check_zero_distortion_endpoint(rng, cases));
    out.push_back(check_curves_nonincreasing(rng, cases));
    out.push_back(check_grid_corner_consistency(rng, cases));
    out.push_back(check_omega2_reduction(rng, cases));
    out.push_back(check_clipping_point(rng, cases));
    out.push_back(check_pure_state_rate_zero(rng, cases));
    out.push_back(check_desk_spot_value(rng, cases));
    return out;
}

inline nlohmann::ordered_json report_json(const std::vector<CheckResult>& results,
                                          std::uint64_t seed, long cases) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    bool all = true;
    for (const CheckResult& r : results) {
        all = all && r.passed;
        checks.push_back({{"name", r.name},
                          {"passed", r.passed},
                          {"tolerance", r.tolerance},
                          {"worst_error", r.worst_error},
                          {"cases", r.cases}});
    }
    return nlohmann::ordered_json{
        {"seed", seed}, {"cases", cases}, {"all_passed", all}, {"checks", checks}};
}

}  // namespace gaussrd::verify
