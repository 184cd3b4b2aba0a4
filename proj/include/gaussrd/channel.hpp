#pragma once

// Trace-preserving Gaussian CP maps at the covariance-matrix level:
// gamma -> M^T gamma M + N, joint reference(+)output states, validity.

#include "gaussrd/symplectic.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace gaussrd {

inline constexpr double kGainTol = 1e-10;

struct GaussianChannel {
    Matrix2d m;  // phase-space linear map
    Matrix2d n;  // additive noise, symmetric

    GaussianChannel(Matrix2d map, Matrix2d noise) : m(std::move(map)), n(std::move(noise)) {
        if ((n - n.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol)
            throw std::domain_error("GaussianChannel: noise matrix is not symmetric");
    }

    double gain() const { return m.determinant(); }
};

struct ChannelReport {
    bool valid = false;
    double slack = 0.0;       // det N - (1 - K)^2
    double noise_min_eig = 0.0;
};

// Validity of a trace-preserving Gaussian CP map: N PSD and
// det N - (1 - K)^2 >= 0. For K = 1 the slack reduces to det N.
inline ChannelReport validate_channel(const GaussianChannel& ch) {
    Eigen::SelfAdjointEigenSolver<Matrix2d> es(ch.n, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    const double k = ch.gain();
    const double slack = ch.n.determinant() - (1.0 - k) * (1.0 - k);
    return ChannelReport{min_eig >= -kPhysicalTol && slack >= -kPhysicalTol, slack, min_eig};
}

inline Matrix2d apply_raw(const Matrix2d& m, const Matrix2d& n, const Matrix2d& gamma) {
    return m.transpose() * gamma * m + n;
}

inline CovMat apply(const GaussianChannel& ch, const CovMat& gamma) {
    require_valid_one_mode(gamma, "apply");
    return CovMat(apply_raw(ch.m, ch.n, Matrix2d(gamma.m)));
}

// 4x4 CM of the joint reference(+)output state rho^{RQ'}, output mode first.
// Physicality of these matrices is always judged against the mixed form
// J (+) (-J) induced by the purely off-diagonal purification block.
struct JointCM {
    Matrix4d m;

    Matrix2d output_block() const { return m.topLeftCorner<2, 2>(); }
    Matrix2d reference_block() const { return m.bottomRightCorner<2, 2>(); }
};

// Joint CM of a trace-preserving map on the Schmidt purification:
// [[M^T gamma M + N, M^T beta], [beta^T M, gamma]]. The reference block keeps
// the input CM exactly.
inline JointCM joint_cm(const GaussianChannel& ch, const CovMat& gamma) {
    if (std::abs(ch.gain() - 1.0) > kGainTol)
        throw std::domain_error("joint_cm: det M must be 1; call normalize_gain first");
    require_valid_one_mode(gamma, "joint_cm");
    const Matrix2d beta = purification_beta(gamma);
    Matrix4d j;
    j.topLeftCorner<2, 2>() = ch.m.transpose() * gamma.m * ch.m + ch.n;
    j.topRightCorner<2, 2>() = ch.m.transpose() * beta;
    j.bottomLeftCorner<2, 2>() = beta.transpose() * ch.m;
    j.bottomRightCorner<2, 2>() = gamma.m;
    return JointCM{j};
}

// CM of the Gaussian operator isomorphic to (M, N) at finite two-mode
// squeezing r; the trace-preserving joint CM is its r -> infinity limit.
struct OperatorCM {
    Matrix4d m;
    double r = 0.0;

    Matrix2d block1() const { return m.topLeftCorner<2, 2>(); }
    Matrix2d block12() const { return m.topRightCorner<2, 2>(); }
    Matrix2d block2() const { return m.bottomRightCorner<2, 2>(); }
};

inline OperatorCM finite_r_op(const Matrix2d& m, const Matrix2d& n, double r) {
    if (!(r > 0.0)) throw std::domain_error("finite_r_op: r must be positive");
    if ((n - n.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol)
        throw std::domain_error("finite_r_op: noise matrix is not symmetric");
    const Matrix2d a_r = std::cosh(r) * Matrix2d::Identity();
    const Matrix2d c_r = std::sinh(r) * lambda_block();
    Matrix4d g;
    g.topLeftCorner<2, 2>() = m.transpose() * a_r * m + n;
    g.topRightCorner<2, 2>() = m.transpose() * c_r;
    g.bottomLeftCorner<2, 2>() = c_r * m;
    g.bottomRightCorner<2, 2>() = a_r;
    return OperatorCM{g, r};
}

// Joint CM of a general Gaussian CP map given by its operator CM; the second
// part of the operator meets the input through the phase-space transposition
// Gamma~ = (I (+) Lambda) Gamma (I (+) Lambda).
inline Matrix4d general_joint_cm(const OperatorCM& op, const CovMat& gamma) {
    require_valid_one_mode(gamma, "general_joint_cm");
    const Matrix2d lam = lambda_block();
    const Matrix2d g1 = op.block1();
    const Matrix2d g12 = op.block12() * lam;
    const Matrix2d g2 = lam * op.block2() * lam;
    const Matrix2d s = g2 + Matrix2d(gamma.m);
    if (std::abs(s.determinant()) < 1e-12)
        throw std::runtime_error("general_joint_cm: singular Gamma~2 + gamma");
    const Matrix2d s_inv = s.inverse();
    const Matrix2d beta = purification_beta(gamma);
    Matrix4d j;
    j.topLeftCorner<2, 2>() = g1 - g12 * s_inv * g12.transpose();
    j.topRightCorner<2, 2>() = g12 * s_inv * beta;
    j.bottomLeftCorner<2, 2>() = beta.transpose() * s_inv * g12.transpose();
    j.bottomRightCorner<2, 2>() = Matrix2d(gamma.m) - beta.transpose() * s_inv * beta;
    return j;
}

// Determinant form of the two-mode uncertainty relation adapted to J (+) (-J):
// det G1 det G2 - det G1 - det G2 + (1 + det G12)^2 - Tr(J G1 J G12 J G2 J G12^T).
// Nonnegative for physical joint CMs; a negative value certifies unphysicality.
inline double simon_condition(const Matrix4d& gamma) {
    if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol)
        throw std::domain_error("simon_condition: matrix is not symmetric");
    const Matrix2d g1 = gamma.topLeftCorner<2, 2>();
    const Matrix2d g12 = gamma.topRightCorner<2, 2>();
    const Matrix2d g2 = gamma.bottomRightCorner<2, 2>();
    const Matrix2d& j = j_block();
    const double cross = (j * g1 * j * g12 * j * g2 * j * g12.transpose()).trace();
    return g1.determinant() * g2.determinant() - g1.determinant() - g2.determinant() +
           (1.0 + g12.determinant()) * (1.0 + g12.determinant()) - cross;
}

struct NormalizedChannel {
    GaussianChannel channel;
    double k = 1.0;  // sqrt of the original gain
};

// Rescale M to det 1, reporting the damping/amplification factor k = sqrt(K).
// N is left untouched; the distortion module owns the gain-modified forms.
inline NormalizedChannel normalize_gain(const GaussianChannel& ch) {
    const double gain = ch.gain();
    if (gain <= 0.0)
        throw std::domain_error("normalize_gain: nonpositive gain (phase-space reflection) unsupported");
    const double k = std::sqrt(gain);
    return NormalizedChannel{GaussianChannel(ch.m / k, ch.n), k};
}

}  // namespace gaussrd
