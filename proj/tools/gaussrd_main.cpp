// gaussrd: rate-distortion curves for one-mode Gaussian sources from
// covariance-matrix data.
//
// Exit codes: 0 success, 1 verification/physicality failure, 2 usage or
// state-spec error, 3 I/O error.

#include "gaussrd/gaussrd.hpp"
#include "gaussrd/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gaussrd;

std::vector<double> parse_doubles(const std::string& text, size_t count, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument(std::string(what) + ": bad number '" + item + "'");
    }
    if (out.size() != count)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(count) +
                                    " comma-separated numbers");
    return out;
}

struct StateOptions {
    std::string cm;         // "a,c,b" for [[a,c],[c,b]]
    double thermal_ns = -1.0;
    double family_trace = -1.0;
    double ns = -1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--cm", cm, "explicit CM entries a,c,b for [[a,c],[c,b]]");
        cmd->add_option("--thermal-ns", thermal_ns, "thermal state with mean photon number N_s");
        cmd->add_option("--family-trace", family_trace,
                        "fixed-trace family: diag CM with given trace (use with --ns)");
        cmd->add_option("--ns", ns, "mean photon number N_s for --family-trace");
    }

    CovMat resolve() const {
        const int picked = (!cm.empty()) + (thermal_ns >= 0.0) + (family_trace >= 0.0);
        if (picked != 1)
            throw std::invalid_argument(
                "specify exactly one of --cm, --thermal-ns, --family-trace");
        if (!cm.empty()) {
            const auto v = parse_doubles(cm, 3, "--cm");
            return state_from_cm(v[0], v[1], v[2]);
        }
        if (thermal_ns >= 0.0) return state_thermal(thermal_ns);
        if (ns < 0.0) throw std::invalid_argument("--family-trace requires --ns");
        return state_family(family_trace, ns);
    }
};

EntropyBase parse_base(const std::string& s) {
    if (s == "bits") return EntropyBase::bits;
    if (s == "nats") return EntropyBase::nats;
    throw std::invalid_argument("--base must be 'bits' or 'nats'");
}

// Writes to the path, "-" meaning stdout. I/O failures exit 3.
int with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return std::cout ? 0 : 3;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return 3;
    }
    fn(os);
    if (!os) {
        std::cerr << "error: write to '" << path << "' failed\n";
        return 3;
    }
    return 0;
}

int run_state_check(const StateOptions& st, bool as_json) {
    const CovMat gamma = st.resolve();
    const UncertaintyReport rep = check_uncertainty(gamma, SymplecticForm::standard(1));
    const double det = Matrix2d(gamma.m).determinant();
    const double gamma_s = std::sqrt(std::max(0.0, det));
    if (as_json) {
        nlohmann::ordered_json j{{"modes", gamma.modes()},
                                 {"det", det},
                                 {"symplectic_eigenvalue", gamma_s},
                                 {"n_s", std::max(0.0, 0.5 * (gamma_s - 1.0))},
                                 {"min_eig", rep.min_eig},
                                 {"physical", rep.physical}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "cm: [[" << format_sig12(gamma.m(0, 0)) << ", " << format_sig12(gamma.m(0, 1))
                  << "], [" << format_sig12(gamma.m(1, 0)) << ", " << format_sig12(gamma.m(1, 1))
                  << "]]\n"
                  << "det: " << format_sig12(det) << '\n'
                  << "symplectic eigenvalue: " << format_sig12(gamma_s) << '\n'
                  << "mean photons N_s: " << format_sig12(std::max(0.0, 0.5 * (gamma_s - 1.0)))
                  << '\n'
                  << "min eig(Gamma - iJ): " << format_sig12(rep.min_eig) << '\n'
                  << "physical: " << (rep.physical ? "yes" : "no") << '\n';
    }
    return rep.physical ? 0 : 1;
}

int run_channel_apply(const StateOptions& st, const std::string& m_text,
                      const std::string& n_text, bool as_json) {
    const CovMat gamma = st.resolve();
    const auto mv = parse_doubles(m_text, 4, "--m");
    const auto nv = parse_doubles(n_text, 3, "--n");
    const Matrix2d m = (Matrix2d() << mv[0], mv[1], mv[2], mv[3]).finished();
    const Matrix2d n = (Matrix2d() << nv[0], nv[1], nv[1], nv[2]).finished();
    const GaussianChannel ch{m, n};
    const ChannelReport rep = validate_channel(ch);
    const Matrix2d out = apply_raw(m, n, Matrix2d(gamma.m));
    const double out_det = out.determinant();
    if (as_json) {
        nlohmann::ordered_json j{
            {"gain", ch.gain()},
            {"k", ch.gain() > 0.0 ? std::sqrt(ch.gain()) : 0.0},
            {"valid", rep.valid},
            {"slack", rep.slack},
            {"output", {out(0, 0), out(0, 1), out(1, 1)}},
            {"output_det", out_det},
            {"output_physical", out_det >= 1.0 - kPhysicalTol && out(0, 0) > 0.0}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "gain K: " << format_sig12(ch.gain()) << '\n'
                  << "valid: " << (rep.valid ? "yes" : "no") << " (slack "
                  << format_sig12(rep.slack) << ")\n"
                  << "output cm: [[" << format_sig12(out(0, 0)) << ", " << format_sig12(out(0, 1))
                  << "], [" << format_sig12(out(1, 0)) << ", " << format_sig12(out(1, 1))
                  << "]]\n"
                  << "output det: " << format_sig12(out_det) << '\n';
    }
    return 0;
}

int run_rd_point(const StateOptions& st, double nn, EntropyBase base, bool as_json) {
    if (nn < 0.0) throw std::invalid_argument("--nn must be nonnegative");
    const RatePoint p = rate_distortion(st.resolve(), nn, base);
    if (as_json) {
        nlohmann::ordered_json j{{"n_n", p.n_n}, {"r_i", p.r_i},   {"delta", p.delta},
                                 {"tau", p.tau}, {"d0", p.d0},     {"d1", p.d1},
                                 {"d2", p.d2}};
        std::cout << j.dump(2) << '\n';
    } else {
        write_rate_csv(std::cout, {p});
    }
    return 0;
}

int run_rd_curve(const StateOptions& st, double nn_max, int steps, EntropyBase base,
                 const std::string& out) {
    if (steps < 2) throw std::invalid_argument("--steps must be >= 2");
    if (nn_max <= 0.0) throw std::invalid_argument("--nn-max must be positive");
    const auto points = rd_curve(st.resolve(), linspace(0.0, nn_max, steps), base);
    return with_output(out, [&](std::ostream& os) { write_rate_csv(os, points); });
}

int run_figure1(const std::string& out_dir) {
    try {
        for (const std::string& path : figure1_write(out_dir))
            std::cout << path << '\n';
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

int run_verify(std::uint64_t seed, long cases, const std::string& out) {
    if (cases < 1) throw std::invalid_argument("--cases must be >= 1");
    const auto results = verify::run_all(seed, cases);
    const auto report = verify::report_json(results, seed, cases);
    const int io = with_output(out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    if (io != 0) return io;
    for (const auto& r : results)
        if (!r.passed) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement information rate-distortion of one-mode Gaussian sources"};
    app.require_subcommand(1);

    // state check
    auto* state = app.add_subcommand("state", "state inspection");
    state->require_subcommand(1);
    auto* state_check = state->add_subcommand("check", "validate a covariance matrix");
    StateOptions st_check;
    st_check.attach(state_check);
    bool check_json = false;
    state_check->add_flag("--json", check_json, "emit JSON");

    // channel apply
    auto* channel = app.add_subcommand("channel", "channel operations");
    channel->require_subcommand(1);
    auto* channel_apply = channel->add_subcommand("apply", "apply (M, N) to a state");
    StateOptions st_apply;
    st_apply.attach(channel_apply);
    std::string m_text, n_text;
    bool apply_json = false;
    channel_apply->add_option("--m", m_text, "map M as m11,m12,m21,m22")->required();
    channel_apply->add_option("--n", n_text, "noise N as n11,n12,n22")->required();
    channel_apply->add_flag("--json", apply_json, "emit JSON");

    // rd point / curve
    auto* rd = app.add_subcommand("rd", "rate-distortion evaluation");
    rd->require_subcommand(1);
    auto* rd_point = rd->add_subcommand("point", "R^I at one canonical distortion");
    StateOptions st_point;
    st_point.attach(rd_point);
    double nn = 0.0;
    std::string base_point = "bits";
    bool point_json = false;
    rd_point->add_option("--nn", nn, "canonical distortion N_n")->required();
    rd_point->add_option("--base", base_point, "entropy base: bits|nats");
    rd_point->add_flag("--json", point_json, "emit JSON");

    auto* rd_curve_cmd = rd->add_subcommand("curve", "R^I curve as CSV");
    StateOptions st_curve;
    st_curve.attach(rd_curve_cmd);
    double nn_max = 2.0;
    int steps = 201;
    std::string base_curve = "bits";
    std::string curve_out = "-";
    rd_curve_cmd->add_option("--nn-max", nn_max, "largest N_n on the grid");
    rd_curve_cmd->add_option("--steps", steps, "number of grid points");
    rd_curve_cmd->add_option("--base", base_curve, "entropy base: bits|nats");
    rd_curve_cmd->add_option("--out", curve_out, "output path ('-' = stdout)");

    // figure1
    auto* fig = app.add_subcommand("figure1", "six fixed-trace curves (trace 3)");
    std::string fig_out = ".";
    fig->add_option("--out", fig_out, "output directory");

    // verify
    auto* ver = app.add_subcommand("verify", "run the seeded self-verification suite");
    std::uint64_t seed = 42;
    long cases = 1000;
    std::string ver_out = "-";
    ver->add_option("--seed", seed, "generator seed");
    ver->add_option("--cases", cases, "random cases per check");
    ver->add_option("--out", ver_out, "report path ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (state_check->parsed()) return run_state_check(st_check, check_json);
        if (channel_apply->parsed()) return run_channel_apply(st_apply, m_text, n_text, apply_json);
        if (rd_point->parsed()) return run_rd_point(st_point, nn, parse_base(base_point), point_json);
        if (rd_curve_cmd->parsed())
            return run_rd_curve(st_curve, nn_max, steps, parse_base(base_curve), curve_out);
        if (fig->parsed()) return run_figure1(fig_out);
        if (ver->parsed()) return run_verify(seed, cases, ver_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
