#pragma once

// The quadratic distortion observable d(A,B) = 1/2 sum[(X_A - X_B)^2 + (P_A + P_B)^2],
// its Gaussian average, and its minimization over one-mode symplectic maps.

#include "gaussrd/channel.hpp"
#include "gaussrd/simplex.hpp"
#include "gaussrd/symplectic.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gaussrd {

struct DistortionGains {
    double a_x = 1.0, b_x = 1.0, a_p = 1.0, b_p = 1.0;
};

struct DistortionForm {
    int n_modes = 1;
    DistortionGains gains;
    MatrixXd q;  // 4n x 4n coefficient matrix, B modes first, then A modes
};

// Coefficient matrix of 1/2 sum_i [(a_x X_Ai - b_x X_Bi)^2 + (a_p P_Ai + b_p P_Bi)^2].
// Note the + sign on momenta: the EPR convention induced by the purification.
// Gains (1/k, 1, 1/k, k) and (1, k, 1, k) give the damping-compensated variants.
inline DistortionForm build_form(int n_modes, DistortionGains gains = {}) {
    if (n_modes <= 0) throw std::invalid_argument("build_form: n_modes must be positive");
    if (!(gains.a_x > 0.0 && gains.b_x > 0.0 && gains.a_p > 0.0 && gains.b_p > 0.0))
        throw std::invalid_argument("build_form: gains must be positive");
    MatrixXd q = MatrixXd::Zero(4 * n_modes, 4 * n_modes);
    for (int i = 0; i < n_modes; ++i) {
        const int bx = 2 * i, bp = 2 * i + 1;
        const int ax = 2 * n_modes + 2 * i, ap = 2 * n_modes + 2 * i + 1;
        q(bx, bx) = gains.b_x * gains.b_x;
        q(bp, bp) = gains.b_p * gains.b_p;
        q(ax, ax) = gains.a_x * gains.a_x;
        q(ap, ap) = gains.a_p * gains.a_p;
        q(bx, ax) = q(ax, bx) = -gains.a_x * gains.b_x;
        q(bp, ap) = q(ap, bp) = gains.a_p * gains.b_p;
    }
    return DistortionForm{n_modes, gains, std::move(q)};
}

// Closed-form average distortion of Eq-type (M, N) channels:
// (1/4)[Tr N + Tr M^T gamma M + Tr gamma - 2 Tr M beta Lambda].
// Must coincide with the quadratic-form expectation over joint_cm.
inline double average_distortion(const GaussianChannel& ch, const CovMat& gamma) {
    if (std::abs(ch.gain() - 1.0) > kGainTol)
        throw std::domain_error("average_distortion: det M must be 1; call normalize_gain first");
    require_valid_one_mode(gamma, "average_distortion");
    const Matrix2d beta = purification_beta(gamma);
    return 0.25 * (ch.n.trace() + (ch.m.transpose() * gamma.m * ch.m).trace() + gamma.m.trace() -
                   2.0 * (ch.m * beta * lambda_block()).trace());
}

struct MinimalDistortion {
    double dbar_min = 0.0;
    Matrix2d m_star = Matrix2d::Identity();
    double omega = 2.0;  // Tr(M*^T gamma M*) / gamma_s, >= 2
};

namespace detail {

inline Matrix2d rot(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return (Matrix2d() << c, -s, s, c).finished();
}

// M(theta1, u, theta2) = R(theta1) diag(e^u, e^-u) R(theta2)
inline Matrix2d sl2_from_params(const std::vector<double>& p) {
    Matrix2d z = Matrix2d::Zero();
    z(0, 0) = std::exp(p[1]);
    z(1, 1) = std::exp(-p[1]);
    return rot(p[0]) * z * rot(p[2]);
}

// dbar over the squeeze-rotation parametrization, with gamma fixed and N = 0:
// (1/4)[e^{2u} A11 + e^{-2u} A22 + Tr gamma - 2c (e^u C11 + e^{-u} C22)],
// A = R1^T gamma R1, C = R2 sigma_x R1, c = sqrt(det gamma - 1).
struct DistortionObjective {
    Matrix2d gamma;
    double c;
    double trace;

    explicit DistortionObjective(const Matrix2d& g)
        : gamma(g), c(std::sqrt(std::max(0.0, g.determinant() - 1.0))), trace(g.trace()) {}

    double value(const std::vector<double>& p) const {
        const Matrix2d r1 = rot(p[0]), r2 = rot(p[2]);
        const Matrix2d a = r1.transpose() * gamma * r1;
        const Matrix2d sx = j_block() * lambda_block();
        const Matrix2d cm = r2 * sx * r1;
        const double eu = std::exp(p[1]), ed = std::exp(-p[1]);
        return 0.25 * (eu * eu * a(0, 0) + ed * ed * a(1, 1) + trace -
                       2.0 * c * (eu * cm(0, 0) + ed * cm(1, 1)));
    }

    std::array<double, 3> gradient(const std::vector<double>& p) const {
        const Matrix2d r1 = rot(p[0]), r2 = rot(p[2]);
        const Matrix2d& j = j_block();
        const Matrix2d sx = j * lambda_block();
        const Matrix2d a = r1.transpose() * gamma * r1;
        const Matrix2d a_t1 = a * j - j * a;
        const Matrix2d cm = r2 * sx * r1;
        const Matrix2d c_t1 = cm * j;
        const Matrix2d c_t2 = r2 * j * sx * r1;
        const double eu = std::exp(p[1]), ed = std::exp(-p[1]);
        return {
            0.25 * (eu * eu * a_t1(0, 0) + ed * ed * a_t1(1, 1) -
                    2.0 * c * (eu * c_t1(0, 0) + ed * c_t1(1, 1))),
            0.25 * (2.0 * eu * eu * a(0, 0) - 2.0 * ed * ed * a(1, 1) -
                    2.0 * c * (eu * cm(0, 0) - ed * cm(1, 1))),
            0.25 * (-2.0 * c * (eu * c_t2(0, 0) + ed * c_t2(1, 1))),
        };
    }
};

// Damped Newton on the analytic gradient; the finite-difference Hessian is
// regularized because the thermal minimizer family is flat along one direction.
inline void newton_polish(const DistortionObjective& obj, std::vector<double>& p, double& f) {
    const double h = 1e-6;
    for (int iter = 0; iter < 80; ++iter) {
        const auto g = obj.gradient(p);
        const double gnorm = std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
        if (gnorm <= 1e-14 * std::max(1.0, std::abs(f))) break;

        Eigen::Matrix3d hess;
        for (int d = 0; d < 3; ++d) {
            std::vector<double> pp = p, pm = p;
            pp[static_cast<size_t>(d)] += h;
            pm[static_cast<size_t>(d)] -= h;
            const auto gp = obj.gradient(pp);
            const auto gm = obj.gradient(pm);
            for (int e = 0; e < 3; ++e) hess(e, d) = (gp[static_cast<size_t>(e)] - gm[static_cast<size_t>(e)]) / (2.0 * h);
        }
        hess = 0.5 * (hess + hess.transpose().eval());

        double damping = 1e-9 * std::max(1.0, hess.trace());
        bool stepped = false;
        for (int attempt = 0; attempt < 12 && !stepped; ++attempt) {
            Eigen::Matrix3d reg = hess + damping * Eigen::Matrix3d::Identity();
            Eigen::Vector3d step = reg.ldlt().solve(-Eigen::Vector3d(g[0], g[1], g[2]));
            std::vector<double> cand = p;
            for (int d = 0; d < 3; ++d) cand[static_cast<size_t>(d)] += step(d);
            const double fc = obj.value(cand);
            const auto gc = obj.gradient(cand);
            const double gcnorm = std::max({std::abs(gc[0]), std::abs(gc[1]), std::abs(gc[2])});
            if (fc <= f + 1e-15 * std::max(1.0, std::abs(f)) || gcnorm < gnorm) {
                p = std::move(cand);
                f = fc;
                stepped = true;
            } else {
                damping *= 10.0;
            }
        }
        if (!stepped) break;
    }
}

}  // namespace detail

// Numeric minimization of the average distortion over det-1 maps M with N = 0.
// Simplex multi-start on the rotation-squeeze-rotation factorization, then a
// Newton polish so the reported M* (and hence Omega) carries no simplex noise.
inline MinimalDistortion minimal_distortion(const CovMat& gamma) {
    require_valid_one_mode(gamma, "minimal_distortion");
    const detail::DistortionObjective obj{Matrix2d(gamma.m)};
    auto fn = [&obj](const std::vector<double>& p) { return obj.value(p); };

    constexpr double kPi = 3.14159265358979323846;
    const std::array<std::array<double, 3>, 8> starts = {{
        {0.0, 0.0, 0.0},
        {kPi / 4.0, 0.3, -kPi / 4.0},
        {-kPi / 4.0, 0.3, kPi / 4.0},
        {kPi / 2.0, 0.2, 0.0},
        {0.0, 0.5, 0.0},
        {kPi / 8.0, -0.3, kPi / 8.0},
        {3.0 * kPi / 8.0, 0.4, -kPi / 8.0},
        {kPi / 4.0, 0.0, kPi / 4.0},
    }};

    bool have_best = false;
    std::vector<double> best_p;
    double best_f = 0.0;
    for (const auto& s : starts) {
        SimplexResult r = nelder_mead(fn, {s[0], s[1], s[2]}, 0.25, 1e-12, 2000);
        detail::newton_polish(obj, r.x, r.f);
        // deterministic reduction: lexicographic on (dbar, theta1, z, theta2)
        const std::array<double, 4> key = {r.f, r.x[0], std::exp(r.x[1]), r.x[2]};
        const std::array<double, 4> best_key =
            have_best ? std::array<double, 4>{best_f, best_p[0], std::exp(best_p[1]), best_p[2]}
                      : std::array<double, 4>{};
        if (!have_best || key < best_key) {
            have_best = true;
            best_p = r.x;
            best_f = r.f;
        }
    }

    const auto g = obj.gradient(best_p);
    const double gnorm = std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
    if (gnorm > 1e-8 * std::max(1.0, std::abs(best_f))) {
        std::ostringstream msg;
        msg << "minimal_distortion: optimizer did not converge (|grad|=" << gnorm
            << ", dbar=" << best_f << ", params=" << best_p[0] << "," << best_p[1] << ","
            << best_p[2] << ")";
        throw std::runtime_error(msg.str());
    }

    const Matrix2d m_star = detail::sl2_from_params(best_p);
    const double gamma_s = std::sqrt(Matrix2d(gamma.m).determinant());
    const double omega = (m_star.transpose() * gamma.m * m_star).trace() / gamma_s;
    return MinimalDistortion{best_f, m_star, omega};
}

// Closed forms for thermal input gamma_s I (gamma_s = 2 N_s + 1).
inline double thermal_sinh_rs(double gamma_s) {
    return std::sqrt(std::max(0.0, gamma_s * gamma_s - 1.0)) / (2.0 * gamma_s);
}

inline double thermal_cosh_2rs(double gamma_s) {
    const double s = thermal_sinh_rs(gamma_s);
    return 1.0 + 2.0 * s * s;
}

inline double thermal_omega(double gamma_s) { return 2.0 * thermal_cosh_2rs(gamma_s); }

inline double thermal_dbar_min(double gamma_s) {
    return 0.25 * (1.0 / gamma_s + 3.0 * gamma_s);
}

// The optimal thermal map; every kappa in (-sqrt(1+s^2), sqrt(1+s^2)) gives
// the same distortion, kappa = 0 is the canonical representative.
inline Matrix2d thermal_m_star(double gamma_s, double kappa = 0.0) {
    const double s = thermal_sinh_rs(gamma_s);
    const double arg = 1.0 + s * s - kappa * kappa;
    if (arg < 0.0)
        throw std::domain_error("thermal_m_star: |kappa| exceeds sqrt(1 + sinh^2 r_s)");
    return (Matrix2d() << std::sqrt(arg), s + kappa, s - kappa, std::sqrt(arg)).finished();
}

struct DistortionReport {
    double dbar = 0.0;
    double dbar_min = 0.0;
    double n_n = 0.0;  // canonical distortion dbar - dbar_min, in noise photons
    double omega = 2.0;
    Matrix2d m_star = Matrix2d::Identity();
};

// Average distortion above the input-dependent floor. At M = M* the canonical
// distortion equals the noise photon number (1/4) Tr N.
inline DistortionReport canonical_distortion(const GaussianChannel& ch, const CovMat& gamma) {
    if (!validate_channel(ch).valid)
        throw std::domain_error("canonical_distortion: channel violates det N - (1-K)^2 >= 0");
    const double dbar = average_distortion(ch, gamma);
    const MinimalDistortion base = minimal_distortion(gamma);
    return DistortionReport{dbar, base.dbar_min, dbar - base.dbar_min, base.omega, base.m_star};
}

}  // namespace gaussrd
