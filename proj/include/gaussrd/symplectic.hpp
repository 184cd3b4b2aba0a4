#pragma once

// Symplectic linear algebra over covariance matrices.
//
// Conventions: CM entries are <R_i R_j + R_j R_i> in hbar-units, vacuum = I,
// mode ordering (X1, P1, ..., Xn, Pn). A one-mode CM gamma is physical iff
// gamma - iJ >= 0, equivalently det gamma >= 1.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gaussrd {

using Eigen::Matrix2d;
using Eigen::Matrix4d;
using Eigen::MatrixXd;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPhysicalTol = 1e-10;
inline constexpr double kPurityTol = 1e-9;

enum class EntropyBase { bits, nats };

inline double log_in_base(double v, EntropyBase base) {
    return base == EntropyBase::bits ? std::log2(v) : std::log(v);
}

// g(x) = (x+1)log(x+1) - x log x, the entropy of a thermal mode with mean
// photon number x. Values in (-1e-12, 0] are clamped to zero.
inline double bosonic_entropy(double x, EntropyBase base = EntropyBase::bits) {
    if (x < -1e-12)
        throw std::domain_error("bosonic_entropy: negative photon number " + std::to_string(x));
    if (x <= 0.0) return 0.0;
    double nats = (x + 1.0) * std::log1p(x) - x * std::log(x);
    return base == EntropyBase::bits ? nats / std::log(2.0) : nats;
}

inline const Matrix2d& j_block() {
    static const Matrix2d j = (Matrix2d() << 0.0, -1.0, 1.0, 0.0).finished();
    return j;
}

inline const Matrix2d& lambda_block() {
    static const Matrix2d l = (Matrix2d() << 1.0, 0.0, 0.0, -1.0).finished();
    return l;
}

// Block-diagonal symplectic form (+) s_k J. The mixed two-mode form J (+) (-J)
// arises from the Schmidt purification's phase-space transposition and must be
// used for all joint-state spectra.
struct SymplecticForm {
    std::vector<int> signs;

    static SymplecticForm standard(int n_modes) {
        if (n_modes <= 0) throw std::invalid_argument("SymplecticForm: n_modes must be positive");
        return SymplecticForm{std::vector<int>(static_cast<size_t>(n_modes), 1)};
    }

    static SymplecticForm mixed() { return SymplecticForm{{1, -1}}; }

    int modes() const { return static_cast<int>(signs.size()); }
    int dim() const { return 2 * modes(); }

    MatrixXd matrix() const {
        MatrixXd f = MatrixXd::Zero(dim(), dim());
        for (int k = 0; k < modes(); ++k)
            f.block<2, 2>(2 * k, 2 * k) = static_cast<double>(signs[static_cast<size_t>(k)]) * j_block();
        return f;
    }

    // Conjugation (+)(sign<0 ? Lambda : I) mapping this form to the standard one:
    // Lambda J Lambda = -J.
    MatrixXd mode_flip() const {
        MatrixXd t = MatrixXd::Identity(dim(), dim());
        for (int k = 0; k < modes(); ++k)
            if (signs[static_cast<size_t>(k)] < 0) t.block<2, 2>(2 * k, 2 * k) = lambda_block();
        return t;
    }
};

namespace detail {

inline void require_symmetric(const MatrixXd& m, const char* who) {
    if (m.rows() != m.cols())
        throw std::domain_error(std::string(who) + ": matrix is not square");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol)
        throw std::domain_error(std::string(who) + ": matrix is not symmetric");
}

inline void require_form_match(const MatrixXd& m, const SymplecticForm& form, const char* who) {
    if (m.rows() != form.dim())
        throw std::domain_error(std::string(who) + ": dimension does not match symplectic form");
}

}  // namespace detail

// Covariance matrix of an n-mode Gaussian state. Construction enforces the
// type invariants (symmetry, positive definiteness); physicality against the
// uncertainty relation is a separate check.
struct CovMat {
    MatrixXd m;

    explicit CovMat(MatrixXd entries) : m(std::move(entries)) {
        detail::require_symmetric(m, "CovMat");
        if (m.rows() == 0 || m.rows() % 2 != 0)
            throw std::invalid_argument("CovMat: dimension must be a positive multiple of 2");
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() <= 0.0)
            throw std::domain_error("CovMat: matrix is not positive definite");
    }

    int modes() const { return static_cast<int>(m.rows() / 2); }
};

inline CovMat thermal_cm(double gamma_s) {
    return CovMat(gamma_s * Matrix2d::Identity());
}

namespace detail {

// Square root of a PSD symmetric matrix; eigenvalues in [-clip, 0] are set to
// zero, anything below -clip is a domain error.
inline MatrixXd psd_sqrt(const MatrixXd& a, double clip = 1e-12) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
    VectorXd lam = es.eigenvalues();
    for (int i = 0; i < lam.size(); ++i) {
        if (lam(i) < -clip)
            throw std::domain_error("psd_sqrt: indefinite argument, eigenvalue " +
                                    std::to_string(lam(i)));
        lam(i) = std::sqrt(std::max(0.0, lam(i)));
    }
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace detail

// Moduli of the eigenvalues of i form^-1 Gamma, each doubly degenerate;
// returned once per mode, descending. Computed as the paired singular values
// of G^{1/2} J G^{1/2} after conjugating negative-sign modes to standard form.
inline std::vector<double> symplectic_eigenvalues(const MatrixXd& gamma, const SymplecticForm& form) {
    detail::require_symmetric(gamma, "symplectic_eigenvalues");
    detail::require_form_match(gamma, form, "symplectic_eigenvalues");
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(gamma, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::domain_error("symplectic_eigenvalues: matrix is not positive definite");

    MatrixXd t = form.mode_flip();
    MatrixXd g = t * gamma * t;
    MatrixXd root = detail::psd_sqrt(g, 0.0);
    MatrixXd w = root * SymplecticForm::standard(form.modes()).matrix() * root;
    Eigen::JacobiSVD<MatrixXd> svd(w);
    const VectorXd& sv = svd.singularValues();  // descending, in pairs
    std::vector<double> nu(static_cast<size_t>(form.modes()));
    for (int k = 0; k < form.modes(); ++k)
        nu[static_cast<size_t>(k)] = 0.5 * (sv(2 * k) + sv(2 * k + 1));
    return nu;
}

inline std::vector<double> symplectic_eigenvalues(const CovMat& gamma, const SymplecticForm& form) {
    return symplectic_eigenvalues(gamma.m, form);
}

struct UncertaintyReport {
    bool physical = false;
    double min_eig = 0.0;  // smallest eigenvalue of the Hermitian matrix Gamma - i form
};

// Uncertainty relation Gamma - i form >= 0; for one mode equivalent to det >= 1.
inline UncertaintyReport check_uncertainty(const MatrixXd& gamma, const SymplecticForm& form) {
    detail::require_symmetric(gamma, "check_uncertainty");
    detail::require_form_match(gamma, form, "check_uncertainty");
    MatrixXcd h = gamma.cast<std::complex<double>>() -
                  std::complex<double>(0.0, 1.0) * form.matrix().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    double min_eig = es.eigenvalues().minCoeff();
    return UncertaintyReport{min_eig >= -kPhysicalTol, min_eig};
}

inline UncertaintyReport check_uncertainty(const CovMat& gamma, const SymplecticForm& form) {
    return check_uncertainty(gamma.m, form);
}

inline void require_valid_one_mode(const CovMat& gamma, const char* who) {
    if (gamma.modes() != 1)
        throw std::domain_error(std::string(who) + ": expected a one-mode CM");
    if (!check_uncertainty(gamma, SymplecticForm::standard(1)).physical)
        throw std::domain_error(std::string(who) + ": CM violates the uncertainty relation");
}

struct WilliamsonResult {
    Matrix2d s;        // symplectic congruence, S^T gamma S = gamma_s I, det S = 1
    double gamma_s;    // symplectic eigenvalue, sqrt(det gamma)
    double n_s;        // mean photon number (gamma_s - 1) / 2
};

// One-mode Williamson normal form, built rotation-then-squeeze. Any S obeying
// the postcondition is acceptable (gauge freedom).
inline WilliamsonResult williamson_one_mode(const CovMat& gamma) {
    require_valid_one_mode(gamma, "williamson_one_mode");
    Eigen::SelfAdjointEigenSolver<Matrix2d> es(Matrix2d(gamma.m));
    Matrix2d r = es.eigenvectors();
    if (r.determinant() < 0.0) r.col(1) *= -1.0;
    const double d1 = es.eigenvalues()(0), d2 = es.eigenvalues()(1);
    double gamma_s = std::sqrt(d1 * d2);
    // States within rounding of purity are treated as pure.
    if (std::abs(gamma_s - 1.0) <= 1e-12) gamma_s = 1.0;
    Matrix2d z = Matrix2d::Zero();
    z(0, 0) = std::sqrt(gamma_s / d1);
    z(1, 1) = std::sqrt(gamma_s / d2);
    return WilliamsonResult{r * z, gamma_s, std::max(0.0, 0.5 * (gamma_s - 1.0))};
}

// CM of the Schmidt purification, [[gamma, beta], [beta^T, gamma]] with
// beta = J sqrt(-(J^-1 gamma)^2 - I), purely off-diagonal. Pure under the
// mixed form J (+) (-J).
inline CovMat purification_cm(const CovMat& gamma) {
    const int n = gamma.modes();
    const MatrixXd jn = SymplecticForm::standard(n).matrix();
    const MatrixXd jg = jn.transpose() * gamma.m;  // J^-1 = J^T
    MatrixXd arg = -(jg * jg) - MatrixXd::Identity(2 * n, 2 * n);
    arg = 0.5 * (arg + arg.transpose());
    MatrixXd beta = jn * detail::psd_sqrt(arg);

    MatrixXd psi(4 * n, 4 * n);
    psi.topLeftCorner(2 * n, 2 * n) = gamma.m;
    psi.topRightCorner(2 * n, 2 * n) = beta;
    psi.bottomLeftCorner(2 * n, 2 * n) = beta.transpose();
    psi.bottomRightCorner(2 * n, 2 * n) = gamma.m;
    return CovMat(psi);
}

// Off-diagonal block of purification_cm without forming the full matrix.
inline MatrixXd purification_beta(const CovMat& gamma) {
    const int n = gamma.modes();
    const MatrixXd jn = SymplecticForm::standard(n).matrix();
    const MatrixXd jg = jn.transpose() * gamma.m;
    MatrixXd arg = -(jg * jg) - MatrixXd::Identity(2 * n, 2 * n);
    arg = 0.5 * (arg + arg.transpose());
    return jn * detail::psd_sqrt(arg);
}

// Von Neumann entropy of a Gaussian state: sum of g((nu_k - 1)/2).
inline double gaussian_entropy(const MatrixXd& gamma, const SymplecticForm& form,
                               EntropyBase base = EntropyBase::bits) {
    double total = 0.0;
    for (double nu : symplectic_eigenvalues(gamma, form)) {
        if (nu < 1.0 - kPurityTol)
            throw std::domain_error("gaussian_entropy: unphysical symplectic eigenvalue " +
                                    std::to_string(nu));
        total += bosonic_entropy(std::max(0.0, 0.5 * (nu - 1.0)), base);
    }
    return total;
}

inline double gaussian_entropy(const CovMat& gamma, const SymplecticForm& form,
                               EntropyBase base = EntropyBase::bits) {
    return gaussian_entropy(gamma.m, form, base);
}

// Expectation of (1/2) r^T Q r under a zero-mean Gaussian state: (1/4) Tr(Q Gamma).
inline double quadratic_expectation(const MatrixXd& q, const MatrixXd& gamma) {
    detail::require_symmetric(q, "quadratic_expectation");
    if (q.rows() != gamma.rows())
        throw std::domain_error("quadratic_expectation: dimension mismatch");
    return 0.25 * (q * gamma).trace();
}

inline double quadratic_expectation(const MatrixXd& q, const CovMat& gamma) {
    return quadratic_expectation(q, gamma.m);
}

}  // namespace gaussrd
