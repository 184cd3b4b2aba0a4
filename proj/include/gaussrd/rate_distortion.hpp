#pragma once

// The entanglement information rate-distortion function
// R^I(N_n) = max{0, I_c(delta = N_n^2, tau = N_n Omega)} and its brute-force
// grid oracle.

#include "gaussrd/coherent_info.hpp"
#include "gaussrd/distortion.hpp"
#include "gaussrd/symplectic.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gaussrd {

struct RatePoint {
    double n_n = 0.0;
    double r_i = 0.0;
    double delta = 0.0;  // witness: N_n^2
    double tau = 0.0;    // witness: N_n Omega
    double d0 = 0.5, d1 = 0.5, d2 = 0.5;
};

struct GridSpec {
    int delta_points = 201;
    int t_points = 81;

    GridSpec(int dp = 201, int tp = 81) : delta_points(dp), t_points(tp) {
        if (delta_points < 3 || t_points < 3)
            throw std::invalid_argument("GridSpec: resolutions must be >= 3");
    }
};

// Per-source invariants shared by every point of a curve. Omega depends only
// on the input CM, so it is computed once: closed form when the input is
// thermal, the numeric optimizer otherwise.
struct SourceSummary {
    double gamma_s = 1.0;
    double n_s = 0.0;
    double omega = 2.0;
    bool thermal = false;
};

inline SourceSummary analyze_source(const CovMat& gamma) {
    const WilliamsonResult w = williamson_one_mode(gamma);
    SourceSummary src;
    src.gamma_s = w.gamma_s;
    src.n_s = w.n_s;
    src.thermal =
        (gamma.m - w.gamma_s * MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <=
        1e-12 * std::max(1.0, w.gamma_s);
    // Omega >= 2 analytically; the max() strips optimizer noise below the floor
    src.omega = src.thermal ? thermal_omega(w.gamma_s)
                            : std::max(2.0, minimal_distortion(gamma).omega);
    return src;
}

inline RatePoint rate_point(const SourceSummary& src, double n_n,
                            EntropyBase base = EntropyBase::bits) {
    if (n_n < 0.0) throw std::domain_error("rate_point: N_n must be nonnegative");
    const double delta = n_n * n_n;
    const double tau = tau_from_t(n_n, delta, src.omega, 0.0);
    const NoiseParams p{src.n_s, delta, tau};
    const DValues d = d_values(p);
    const double ic = coherent_info(p, base);
    return RatePoint{n_n, std::max(0.0, ic), delta, tau, d.d0, d.d1, d.d2};
}

inline RatePoint rate_distortion(const CovMat& gamma, double n_n,
                                 EntropyBase base = EntropyBase::bits) {
    return rate_point(analyze_source(gamma), n_n, base);
}

// Omega = 2 reduction valid for pure inputs:
// R^I = max{0, g(N_s + N_n) - g(N_sn1) - g(N_sn2)} with
// N_sn1,2 = (sqrt((N_n+1)^2 + 4 N_n N_s) - 1 +- N_n) / 2.
inline double pure_state_rate(double n_s, double n_n, EntropyBase base = EntropyBase::bits) {
    if (n_s < 0.0 || n_n < 0.0)
        throw std::domain_error("pure_state_rate: arguments must be nonnegative");
    // N_s = 0 gives N_sn1 = N_n, N_sn2 = 0 identically
    if (n_s == 0.0) return 0.0;
    const double w = std::sqrt((n_n + 1.0) * (n_n + 1.0) + 4.0 * n_n * n_s);
    const double nsn1 = 0.5 * (w - 1.0 + n_n);
    const double nsn2 = 0.5 * (w - 1.0 - n_n);
    const double ic = bosonic_entropy(n_s + n_n, base) - bosonic_entropy(std::max(0.0, nsn1), base) -
                      bosonic_entropy(std::max(0.0, nsn2), base);
    return std::max(0.0, ic);
}

struct BruteForceResult {
    double i_min = 0.0;   // grid minimum of the (unclipped) coherent information
    double delta_star = 0.0;
    double t_star = 0.0;
};

// Exhaustive sweep of I_c over the admissible (delta, t) rectangle
// [0, N_n^2] x [-1, 1]. The closed form claims the minimum at delta = N_n^2;
// this oracle checks that claim rather than assuming it. Ties keep the first
// grid point in index order, so results are independent of any scheduling.
inline BruteForceResult brute_force_rate(const CovMat& gamma, double n_n,
                                         const GridSpec& grid = {},
                                         EntropyBase base = EntropyBase::bits) {
    if (n_n < 0.0) throw std::domain_error("brute_force_rate: N_n must be nonnegative");
    const SourceSummary src = analyze_source(gamma);
    const double dmax = n_n * n_n;
    BruteForceResult best;
    bool have = false;
    for (int i = 0; i < grid.delta_points; ++i) {
        const double delta = (i == grid.delta_points - 1)
                                 ? dmax
                                 : dmax * static_cast<double>(i) / (grid.delta_points - 1);
        for (int j = 0; j < grid.t_points; ++j) {
            const double t = (j == grid.t_points - 1)
                                 ? 1.0
                                 : -1.0 + 2.0 * static_cast<double>(j) / (grid.t_points - 1);
            const double tau = tau_from_t(n_n, delta, src.omega, t);
            const double ic = coherent_info(NoiseParams{src.n_s, delta, tau}, base);
            if (!have || ic < best.i_min) {
                have = true;
                best = BruteForceResult{ic, delta, t};
            }
        }
    }
    return best;
}

// Pointwise curve with (gamma_s, N_s, Omega) computed once.
inline std::vector<RatePoint> rd_curve(const CovMat& gamma, const std::vector<double>& n_n_values,
                                       EntropyBase base = EntropyBase::bits) {
    for (size_t i = 0; i < n_n_values.size(); ++i) {
        if (n_n_values[i] < 0.0)
            throw std::domain_error("rd_curve: N_n values must be nonnegative");
        if (i > 0 && n_n_values[i] < n_n_values[i - 1])
            throw std::domain_error("rd_curve: N_n values must be ascending");
    }
    const SourceSummary src = analyze_source(gamma);
    std::vector<RatePoint> out;
    out.reserve(n_n_values.size());
    for (double n_n : n_n_values) out.push_back(rate_point(src, n_n, base));
    return out;
}

inline std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 2) throw std::invalid_argument("linspace: need at least 2 points");
    std::vector<double> v(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        v[static_cast<size_t>(i)] =
            (i == count - 1) ? hi : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return v;
}

// Smallest N_n with R^I = 0, located by bisection; no closed form is known
// for the zero crossing.
inline double find_zero_crossing(const CovMat& gamma, EntropyBase base = EntropyBase::bits,
                                 double tol = 1e-10) {
    const SourceSummary src = analyze_source(gamma);
    if (rate_point(src, 0.0, base).r_i <= 0.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (rate_point(src, hi, base).r_i > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 60) throw std::runtime_error("find_zero_crossing: rate never reaches zero");
    }
    while (hi - lo > tol * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (rate_point(src, mid, base).r_i > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace gaussrd
