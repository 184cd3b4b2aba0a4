#include "gaussrd/rng.hpp"
#include "gaussrd/symplectic.hpp"
#include "gaussrd/verify.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

using namespace gaussrd;

namespace {

// Independent route: moduli of the eigenvalues of i form^-1 Gamma via the
// dense complex eigensolver.
std::vector<double> sympl_eigs_direct(const MatrixXd& gamma, const SymplecticForm& form) {
    const MatrixXd f = form.matrix();
    MatrixXcd a = std::complex<double>(0.0, 1.0) * f.transpose().cast<std::complex<double>>() *
                  gamma.cast<std::complex<double>>();  // form^-1 = form^T
    Eigen::ComplexEigenSolver<MatrixXcd> es(a);
    std::vector<double> mods;
    for (int i = 0; i < es.eigenvalues().size(); ++i) mods.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(mods.begin(), mods.end(), std::greater<>());
    std::vector<double> nu;
    for (size_t k = 0; k < mods.size(); k += 2) nu.push_back(0.5 * (mods[k] + mods[k + 1]));
    return nu;
}

Matrix2d rot2(double th) {
    return (Matrix2d() << std::cos(th), -std::sin(th), std::sin(th), std::cos(th)).finished();
}

}  // namespace

TEST_SUITE("symplectic") {

TEST_CASE("bosonic entropy values and edge cases") {
    CHECK(bosonic_entropy(0.0) == 0.0);
    CHECK(bosonic_entropy(-5e-13) == 0.0);
    CHECK(bosonic_entropy(1.0) == doctest::Approx(2.0).epsilon(1e-14));
    // direct evaluation in log2
    const double direct = 1.25 * std::log2(1.25) - 0.25 * std::log2(0.25);
    CHECK(bosonic_entropy(0.25) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(bosonic_entropy(0.25) == doctest::Approx(0.902410118609).epsilon(1e-11));
    CHECK(bosonic_entropy(0.25, EntropyBase::nats) ==
          doctest::Approx(0.902410118609 * std::log(2.0)).epsilon(1e-11));
    CHECK_THROWS_AS(bosonic_entropy(-1e-6), std::domain_error);

    // strictly increasing and concave on a grid
    double prev = bosonic_entropy(0.01);
    double prev_slope = 1e300;
    for (int i = 1; i <= 40; ++i) {
        const double x = 0.01 + 0.25 * i;
        const double g = bosonic_entropy(x);
        CHECK(g > prev);
        const double slope = (g - prev) / 0.25;
        CHECK(slope < prev_slope);
        prev_slope = slope;
        prev = g;
    }
}

TEST_CASE("symplectic form matrices") {
    const SymplecticForm std1 = SymplecticForm::standard(1);
    const MatrixXd j = std1.matrix();
    CHECK((j + j.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((j * j + MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    const SymplecticForm mixed = SymplecticForm::mixed();
    const MatrixXd jm = mixed.matrix();
    CHECK((jm * jm + MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(jm.block<2, 2>(2, 2) == (-j_block()).eval());
    CHECK_THROWS_AS(SymplecticForm::standard(0), std::invalid_argument);
}

TEST_CASE("covariance matrix construction enforces invariants") {
    CHECK_THROWS_AS(CovMat((Eigen::Matrix2d() << 1.0, 0.5, 0.0, 1.0).finished()),
                    std::domain_error);
    CHECK_THROWS_AS(CovMat((Eigen::Matrix2d() << 1.0, 2.0, 2.0, 1.0).finished()),
                    std::domain_error);  // indefinite
    CHECK_THROWS_AS(CovMat(Eigen::MatrixXd::Identity(3, 3)), std::invalid_argument);
    CHECK_NOTHROW(CovMat(0.5 * Eigen::Matrix2d::Identity()));  // PD though unphysical
}

TEST_CASE("symplectic eigenvalues: vacuum, squeezed, purification") {
    CHECK(symplectic_eigenvalues(thermal_cm(1.0), SymplecticForm::standard(1))[0] ==
          doctest::Approx(1.0).epsilon(1e-14));

    const CovMat squeezed((Eigen::Matrix2d() << 4.0, 0.0, 0.0, 1.0).finished());
    CHECK(symplectic_eigenvalues(squeezed, SymplecticForm::standard(1))[0] ==
          doctest::Approx(2.0).epsilon(1e-13));

    const CovMat psi = purification_cm(thermal_cm(3.0));
    const auto nu = symplectic_eigenvalues(psi, SymplecticForm::mixed());
    CHECK(nu[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(nu[1] == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(
        symplectic_eigenvalues((Eigen::Matrix2d() << 1.0, 2.0, 2.0, 1.0).finished().eval(),
                               SymplecticForm::standard(1)),
        std::domain_error);
}

TEST_CASE("symplectic eigenvalues agree with the direct eigen-decomposition") {
    const CounterRng rng{7};
    for (int i = 0; i < 200; ++i) {
        const CovMat g = verify::detail::random_gamma(rng, 11, static_cast<std::uint64_t>(i));
        const auto a = symplectic_eigenvalues(g, SymplecticForm::standard(1));
        const auto b = sympl_eigs_direct(g.m, SymplecticForm::standard(1));
        CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-10));
        CHECK(a[0] == doctest::Approx(std::sqrt(Matrix2d(g.m).determinant())).epsilon(1e-12));
    }
    // mixed form on a joint matrix
    const CovMat psi = purification_cm(verify::detail::random_gamma(rng, 12, 3));
    const auto a = symplectic_eigenvalues(psi, SymplecticForm::mixed());
    const auto b = sympl_eigs_direct(psi.m, SymplecticForm::mixed());
    CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-9));
    CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-9));
}

TEST_CASE("uncertainty check") {
    CHECK(check_uncertainty(thermal_cm(1.0), SymplecticForm::standard(1)).physical);
    CHECK_FALSE(check_uncertainty(MatrixXd(0.5 * Matrix2d::Identity()),
                                  SymplecticForm::standard(1))
                    .physical);
    const CovMat corr((Eigen::Matrix2d() << 1.25, 0.5, 0.5, 1.25).finished());
    CHECK(check_uncertainty(corr, SymplecticForm::standard(1)).physical);
    CHECK(Matrix2d(corr.m).determinant() == doctest::Approx(1.3125));
    CHECK_THROWS_AS(check_uncertainty((Eigen::Matrix2d() << 1.0, 0.5, 0.0, 1.0).finished().eval(),
                                      SymplecticForm::standard(1)),
                    std::domain_error);

    // vacuum saturates: min eigenvalue ~ 0
    CHECK(std::abs(check_uncertainty(thermal_cm(1.0), SymplecticForm::standard(1)).min_eig) <=
          1e-12);
}

TEST_CASE("williamson normal form") {
    // already diagonal
    const WilliamsonResult w0 = williamson_one_mode(thermal_cm(2.5));
    CHECK(w0.gamma_s == doctest::Approx(2.5).epsilon(1e-14));
    CHECK((w0.s.transpose() * thermal_cm(2.5).m * w0.s - 2.5 * Matrix2d::Identity())
              .cwiseAbs()
              .maxCoeff() <= 1e-12);

    // squeezed
    const CovMat sq((Eigen::Matrix2d() << 4.0, 0.0, 0.0, 1.0).finished());
    const WilliamsonResult w1 = williamson_one_mode(sq);
    CHECK(w1.gamma_s == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(w1.n_s == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(w1.s.determinant() - 1.0) <= 1e-12);
    CHECK((w1.s.transpose() * sq.m * w1.s - 2.0 * Matrix2d::Identity()).cwiseAbs().maxCoeff() <=
          1e-12);

    // rotated squeezed: same gamma_s, postcondition holds
    const Matrix2d r = rot2(3.14159265358979323846 / 6.0);
    const CovMat rotated(Matrix2d(r.transpose() * sq.m * r));
    const WilliamsonResult w2 = williamson_one_mode(rotated);
    CHECK(w2.gamma_s == doctest::Approx(2.0).epsilon(1e-13));
    CHECK((w2.s.transpose() * rotated.m * w2.s - w2.gamma_s * Matrix2d::Identity())
              .cwiseAbs()
              .maxCoeff() <= 1e-12);

    CHECK_THROWS_AS(williamson_one_mode(CovMat(0.5 * Matrix2d::Identity())), std::domain_error);
}

TEST_CASE("purification: blocks, antisymmetry, purity") {
    // vacuum purifies trivially
    const CovMat psi_vac = purification_cm(thermal_cm(1.0));
    CHECK((psi_vac.m - MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    // thermal 3I: beta = 2 sqrt(2) J
    const CovMat psi = purification_cm(thermal_cm(3.0));
    const MatrixXd beta = psi.m.topRightCorner(2, 2);
    const double b = 2.0 * std::sqrt(2.0);
    CHECK(beta(0, 1) == doctest::Approx(-b).epsilon(1e-13));
    CHECK(beta(1, 0) == doctest::Approx(b).epsilon(1e-13));
    CHECK(std::abs(beta(0, 0)) <= 1e-12);
    CHECK(std::abs(beta(1, 1)) <= 1e-12);
    CHECK((beta + beta.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(psi.m.topLeftCorner(2, 2) == thermal_cm(3.0).m);
    CHECK(psi.m.bottomRightCorner(2, 2) == thermal_cm(3.0).m);

    // squeezed input stays pure under the mixed form
    const CovMat sq((Eigen::Matrix2d() << 4.0, 0.0, 0.0, 1.0).finished());
    for (double nu : symplectic_eigenvalues(purification_cm(sq), SymplecticForm::mixed()))
        CHECK(nu == doctest::Approx(1.0).epsilon(1e-9));

    // unphysical input: sqrt argument indefinite
    CHECK_THROWS_AS(purification_cm(CovMat(0.5 * Matrix2d::Identity())), std::domain_error);
}

TEST_CASE("gaussian entropy") {
    CHECK(gaussian_entropy(thermal_cm(1.0), SymplecticForm::standard(1)) == 0.0);
    CHECK(gaussian_entropy(thermal_cm(3.0), SymplecticForm::standard(1)) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(gaussian_entropy(purification_cm(thermal_cm(3.0)), SymplecticForm::mixed()) ==
          doctest::Approx(0.0).epsilon(1e-9));
    CHECK(gaussian_entropy(thermal_cm(3.0), SymplecticForm::standard(1), EntropyBase::nats) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(gaussian_entropy(MatrixXd(0.5 * Matrix2d::Identity()),
                                     SymplecticForm::standard(1)),
                    std::domain_error);
}

TEST_CASE("quadratic expectation") {
    CHECK(quadratic_expectation(MatrixXd(2.0 * Matrix2d::Identity()), thermal_cm(1.0)) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(quadratic_expectation(MatrixXd(2.0 * Matrix2d::Identity()), thermal_cm(3.0)) ==
          doctest::Approx(3.0).epsilon(1e-15));

    // X_A X_B cross block only: beta couples X to P, so the expectation vanishes
    MatrixXd q = MatrixXd::Zero(4, 4);
    q(0, 2) = q(2, 0) = 1.0;
    CHECK(quadratic_expectation(q, purification_cm(thermal_cm(3.0))) ==
          doctest::Approx(0.0).epsilon(1e-13));

    CHECK_THROWS_AS(quadratic_expectation(MatrixXd::Identity(4, 4), thermal_cm(1.0)),
                    std::domain_error);
    MatrixXd asym = MatrixXd::Zero(2, 2);
    asym(0, 1) = 1.0;
    CHECK_THROWS_AS(quadratic_expectation(asym, thermal_cm(1.0)), std::domain_error);
}

}  // TEST_SUITE
