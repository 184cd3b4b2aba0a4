#pragma once

// Six-curve family at fixed input trace 3: N_s = 0 (pure) through N_s = 0.25
// (thermal, the maximum the trace allows), 201 points on N_n in [0, 2].

#include "gaussrd/csv.hpp"
#include "gaussrd/rate_distortion.hpp"
#include "gaussrd/state_spec.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaussrd {

inline const std::vector<double>& figure1_ns_values() {
    static const std::vector<double> v = {0.0, 0.05, 0.10, 0.15, 0.20, 0.25};
    return v;
}

inline std::string figure1_filename(double n_s) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "figure1_ns%.2f.csv", n_s);
    return std::string(buf);
}

// Writes the six CSV curves into `dir`, returns the file paths.
inline std::vector<std::string> figure1_write(const std::string& dir, int steps = 201,
                                              double nn_max = 2.0,
                                              EntropyBase base = EntropyBase::bits) {
    std::vector<std::string> paths;
    const std::vector<double> grid = linspace(0.0, nn_max, steps);
    for (double ns : figure1_ns_values()) {
        const auto points = rd_curve(state_family(3.0, ns), grid, base);
        const std::string path = dir.empty() ? figure1_filename(ns)
                                             : dir + "/" + figure1_filename(ns);
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("figure1_write: cannot open " + path);
        write_rate_csv(os, points);
        if (!os) throw std::runtime_error("figure1_write: write failed for " + path);
        paths.push_back(path);
    }
    return paths;
}

}  // namespace gaussrd
