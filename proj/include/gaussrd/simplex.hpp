#pragma once

// Small dense Nelder-Mead for low-dimensional smooth objectives.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace gaussrd {

struct SimplexResult {
    std::vector<double> x;
    double f = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Standard reflect/expand/contract/shrink iteration. Stops when the value
// spread across the simplex falls below ftol * max(1, |f_best|) or the
// evaluation budget runs out.
inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> start, double step, double ftol,
                                 int max_evals) {
    const size_t n = start.size();
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> xs(n + 1, start);
    for (size_t i = 0; i < n; ++i) xs[i + 1][i] += step;
    std::vector<double> fs(n + 1);
    int evals = 0;
    for (size_t i = 0; i <= n; ++i) { fs[i] = f(xs[i]); ++evals; }

    std::vector<size_t> order(n + 1);
    auto sort_order = [&] {
        for (size_t i = 0; i <= n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return fs[a] < fs[b]; });
    };

    bool converged = false;
    while (evals < max_evals) {
        sort_order();
        const size_t best = order[0], worst = order[n], second = order[n - 1];
        if (fs[worst] - fs[best] <= ftol * std::max(1.0, std::abs(fs[best]))) {
            converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i <= n; ++i)
            if (i != worst)
                for (size_t d = 0; d < n; ++d) centroid[d] += xs[i][d];
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](const std::vector<double>& from, double scale) {
            std::vector<double> p(n);
            for (size_t d = 0; d < n; ++d) p[d] = centroid[d] + scale * (centroid[d] - from[d]);
            return p;
        };

        std::vector<double> xr = blend(xs[worst], alpha);
        double fr = f(xr);
        ++evals;
        if (fr < fs[best]) {
            std::vector<double> xe = blend(xs[worst], alpha * gamma);
            double fe = f(xe);
            ++evals;
            if (fe < fr) { xs[worst] = std::move(xe); fs[worst] = fe; }
            else         { xs[worst] = std::move(xr); fs[worst] = fr; }
        } else if (fr < fs[second]) {
            xs[worst] = std::move(xr);
            fs[worst] = fr;
        } else {
            const bool outside = fr < fs[worst];
            std::vector<double> xc(n);
            for (size_t d = 0; d < n; ++d) {
                const double target = outside ? xr[d] : xs[worst][d];
                xc[d] = centroid[d] + rho * (target - centroid[d]);
            }
            double fc = f(xc);
            ++evals;
            if (fc < (outside ? fr : fs[worst])) {
                xs[worst] = std::move(xc);
                fs[worst] = fc;
            } else {
                for (size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (size_t d = 0; d < n; ++d)
                        xs[i][d] = xs[best][d] + sigma * (xs[i][d] - xs[best][d]);
                    fs[i] = f(xs[i]);
                    ++evals;
                }
            }
        }
    }

    sort_order();
    return SimplexResult{xs[order[0]], fs[order[0]], evals, converged};
}

}  // namespace gaussrd
