#pragma once

// Closed-form coherent information of the noisy joint state, plus the
// CM-level entropy oracle it is checked against.

#include "gaussrd/channel.hpp"
#include "gaussrd/symplectic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gaussrd {

// Scalar invariants feeding the closed form: source photon number N_s,
// delta = (1/4) det of the transformed noise, tau = (1/2) trace of it.
struct NoiseParams {
    double n_s = 0.0;
    double delta = 0.0;
    double tau = 0.0;

    NoiseParams(double ns, double d, double t) : n_s(ns), delta(d), tau(t) {
        if (n_s < 0.0) throw std::domain_error("NoiseParams: N_s must be nonnegative");
        if (delta < 0.0) {
            if (delta < -1e-15) throw std::domain_error("NoiseParams: delta must be nonnegative");
            delta = 0.0;
        }
        // AM-GM on the noise eigenvalues
        if (tau < 2.0 * std::sqrt(delta) - 1e-9)
            throw std::domain_error("NoiseParams: tau < 2 sqrt(delta) is unphysical");
    }

    double x() const { return delta + (n_s + 0.5) * tau; }
};

// Halved symplectic eigenvalues of the output CM (d0) and joint CM (d1, d2).
struct DValues {
    double d0 = 0.5, d1 = 0.5, d2 = 0.5;
};

inline DValues d_values(const NoiseParams& p) {
    const double x = p.x();
    // N_s = 0 collapses the discriminant: d1 = d0, d2 = 1/2 for any noise.
    if (p.n_s == 0.0) {
        const double d = std::sqrt(x + 0.25);
        return DValues{d, d, 0.5};
    }
    if (x == 0.0) return DValues{p.n_s + 0.5, 0.5, 0.5};
    double disc = x * x - 4.0 * p.n_s * (p.n_s + 1.0) * p.delta;
    if (disc < -1e-12)
        throw std::domain_error("d_values: negative discriminant " + std::to_string(disc) +
                                " signals unphysical (delta, tau)");
    const double root = std::sqrt(std::max(0.0, disc));
    return DValues{std::sqrt(x + (p.n_s + 0.5) * (p.n_s + 0.5)),
                   std::sqrt(0.5 * (x + 0.5 + root)),
                   std::sqrt(0.5 * (x + 0.5 - root))};
}

// I_c = g(d0 - 1/2) - g(d1 - 1/2) - g(d2 - 1/2); may be negative, the
// rate-distortion layer does the clipping.
inline double coherent_info(const NoiseParams& p, EntropyBase base = EntropyBase::bits) {
    const DValues d = d_values(p);
    return bosonic_entropy(std::max(0.0, d.d0 - 0.5), base) -
           bosonic_entropy(std::max(0.0, d.d1 - 0.5), base) -
           bosonic_entropy(std::max(0.0, d.d2 - 0.5), base);
}

// Independent oracle: S(output block) - S(joint CM under J (+) (-J)).
inline double coherent_info_from_cm(const JointCM& joint, EntropyBase base = EntropyBase::bits) {
    const double s_out = gaussian_entropy(MatrixXd(joint.output_block()),
                                          SymplecticForm::standard(1), base);
    const double s_joint = gaussian_entropy(MatrixXd(joint.m), SymplecticForm::mixed(), base);
    return s_out - s_joint;
}

// The noise freedom left after fixing (Tr N, det N) and the kappa family of
// optimal maps combine into one parameter t in [-1, 1]:
// tau = N_n Omega + t sqrt(N_n^2 - delta) sqrt(Omega^2 - 4).
inline double tau_from_t(double n_n, double delta, double omega, double t) {
    if (n_n < 0.0) throw std::domain_error("tau_from_t: N_n must be nonnegative");
    if (delta < 0.0 || delta > n_n * n_n + 1e-12)
        throw std::domain_error("tau_from_t: delta must lie in [0, N_n^2]");
    if (omega < 2.0 - 1e-7) throw std::domain_error("tau_from_t: Omega must be >= 2");
    if (std::abs(t) > 1.0 + 1e-12) throw std::domain_error("tau_from_t: t must lie in [-1, 1]");
    const double spread = std::sqrt(std::max(0.0, n_n * n_n - delta)) *
                          std::sqrt(std::max(0.0, omega * omega - 4.0));
    return n_n * omega + t * spread;
}

// f(a) = log((a+1)/a) / (2a+1), the decreasing convex slope function behind
// the delta-monotonicity of I_c.
inline double bosonic_rate_slope(double a, EntropyBase base = EntropyBase::bits) {
    if (a <= 0.0) throw std::domain_error("bosonic_rate_slope: a must be positive");
    const double nats = std::log((a + 1.0) / a) / (2.0 * a + 1.0);
    return base == EntropyBase::bits ? nats / std::log(2.0) : nats;
}

}  // namespace gaussrd
