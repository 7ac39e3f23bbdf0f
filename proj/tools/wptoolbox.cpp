// wptoolbox: experiment runner for the wave-particle toolbox simulator.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wpt/cli.hpp"
#include "wpt/errors.hpp"
#include "wpt/hardware.hpp"
#include "wpt/verify.hpp"

namespace {

struct Flags {
    double alpha_deg = 45.0;
    double phi1_deg = 0.0, phi1p_deg = 0.0;
    double phi2_deg = 0.0, phi2p_deg = 0.0;
    double beta_deg = 22.5, betap_deg = 22.5;
    double visibility = 1.0, dephase = 0.0;
    long long shots = 0;
    std::uint64_t seed = 1;
    bool mixed = false;
    std::string format = "csv";
    std::string out;
    std::string sweep;
    double sweep_from = 0.0, sweep_to = 0.0;
    std::size_t steps = 0;
    std::size_t photons = 3;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--alpha-deg", f.alpha_deg, "polarization preparation angle alpha (deg)");
    cmd->add_option("--phi1-deg", f.phi1_deg, "phase phi1 of photon A (deg)");
    cmd->add_option("--phi2-deg", f.phi2_deg, "phase phi2 of photon A (deg)");
    cmd->add_option("--beta-deg", f.beta_deg, "final wave-plate angle beta (deg); 0 removes BS4/BS5");
    cmd->add_option("--visibility", f.visibility, "interference visibility in [0, 1]");
    cmd->add_option("--dephase", f.dephase, "wave/particle dephasing in [0, 1]");
    cmd->add_flag("--mixed", f.mixed, "use the incoherent wave/particle mixture");
    cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", f.out, "output file (default: stdout or $WPT_OUTPUT_DIR/<command>.<format>)");
}

void add_photon_b(CLI::App* cmd, Flags& f) {
    cmd->add_option("--phi1p-deg", f.phi1p_deg, "phase phi1' of photon B (deg)");
    cmd->add_option("--phi2p-deg", f.phi2p_deg, "phase phi2' of photon B (deg)");
    cmd->add_option("--betap-deg", f.betap_deg, "final wave-plate angle beta' of photon B (deg)");
}

void add_sampling(CLI::App* cmd, Flags& f) {
    cmd->add_option("--shots", f.shots, "shots per row; 0 gives analytic values");
    cmd->add_option("--seed", f.seed, "64-bit RNG seed");
}

void add_sweep(CLI::App* cmd, Flags& f) {
    cmd->add_option("--sweep", f.sweep, "parameter to sweep")
        ->check(CLI::IsMember({"alpha", "phi1", "phi1_prime", "phi2", "phi2_prime", "beta", "visibility", "dephase"}));
    cmd->add_option("--sweep-from", f.sweep_from, "sweep start (deg for angles)");
    cmd->add_option("--sweep-to", f.sweep_to, "sweep stop (deg for angles)");
    cmd->add_option("--steps", f.steps, "number of sweep points (>= 2)");
}

wpt::SweepSpec to_spec(const Flags& f, std::optional<wpt::Sweep> default_sweep) {
    if (f.shots < 0) throw wpt::range_error("--shots must be >= 0");
    wpt::SweepSpec s;
    s.fixed = {wpt::radians(f.alpha_deg), wpt::radians(f.phi1_deg), wpt::radians(f.phi1p_deg),
               wpt::radians(f.phi2_deg),  wpt::radians(f.phi2p_deg), wpt::radians(f.beta_deg),
               wpt::radians(f.betap_deg), f.visibility,              f.dephase};
    s.shots = static_cast<std::uint64_t>(f.shots);
    s.seed = f.seed;
    s.mixed = f.mixed;
    s.photons = f.photons;
    if (!f.sweep.empty()) {
        const bool angle = wpt::is_angle_parameter(f.sweep);
        const auto conv = [&](double x) { return angle ? wpt::radians(x) : x; };
        s.sweep = wpt::Sweep{f.sweep, conv(f.sweep_from), conv(f.sweep_to), f.steps};
    } else {
        s.sweep = default_sweep;
        if (s.sweep && f.steps != 0) s.sweep->steps = f.steps;
    }
    if (s.fixed.alpha < 0.0 || s.fixed.alpha > wpt::pi / 2 + 1e-15)
        std::cerr << "warning: alpha = " << f.alpha_deg << " deg lies outside [0, 90] deg\n";
    return s;
}

int emit(const wpt::Table& t, const Flags& f, const std::string& command) {
    const auto format = f.format == "json" ? wpt::OutputFormat::json : wpt::OutputFormat::csv;
    std::string path = f.out;
    if (path.empty()) {
        if (const char* dir = std::getenv("WPT_OUTPUT_DIR"); dir && *dir)
            path = (std::filesystem::path(dir) / (command + "." + f.format)).string();
    }
    if (path.empty()) {
        wpt::write_table(t, format, std::cout);
        return wpt::exit_ok;
    }
    std::ofstream os(path);
    if (!os) {
        std::cerr << "error: cannot write " << path << '\n';
        return wpt::exit_io_error;
    }
    wpt::write_table(t, format, os);
    os.close();
    if (!os) {
        std::cerr << "error: failed writing " << path << '\n';
        return wpt::exit_io_error;
    }
    return wpt::exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wave-particle toolbox simulator"};
    app.require_subcommand(1);

    Flags f;
    auto* single = app.add_subcommand("single-sweep", "single-photon detection probabilities P1..P4");
    auto* wc = app.add_subcommand("witness-coherence", "coherence witness W_C = |P1 - P2| over alpha");
    auto* two = app.add_subcommand("two-photon", "sixteen coincidence probabilities P_nn'");
    auto* we = app.add_subcommand("witness-entanglement", "entanglement witness W_E = P_22' - P_21'");
    auto* ghz = app.add_subcommand("ghz", "wave/particle sector probabilities for N parallel toolboxes");
    auto* verify = app.add_subcommand("verify", "closed-form, propagation and hardware equivalence checks");
    auto* layout = app.add_subcommand("layout", "print the bulk-optics layout");

    for (auto* c : {single, wc, two, we, ghz}) add_common(c, f);
    for (auto* c : {two, we}) add_photon_b(c, f);
    for (auto* c : {single, wc, two, we}) {
        add_sampling(c, f);
        add_sweep(c, f);
    }
    ghz->add_option("--photons", f.photons, "number of photons N (1..8)");
    auto* ghz_beta = ghz->get_option("--beta-deg");

    wpt::VerifyOptions vo;
    verify->add_option("--hardware-points", vo.hardware_points, "random points for the hardware check");
    verify->add_option("--seed", vo.seed, "seed for the random hardware grid");
    layout->add_option("--phi1-deg", f.phi1_deg, "phase phi1 (deg)");
    layout->add_option("--phi2-deg", f.phi2_deg, "phase phi2 (deg)");
    layout->add_option("--beta-deg", f.beta_deg, "final wave-plate angle (deg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? wpt::exit_ok : wpt::exit_spec_error;
    }

    try {
        if (*single) return emit(wpt::single_sweep_table(to_spec(f, wpt::default_phase_sweep())), f, "single-sweep");
        if (*wc) return emit(wpt::witness_coherence_table(to_spec(f, wpt::default_alpha_sweep())), f, "witness-coherence");
        if (*two) {
            const bool explicit_point = two->count("--phi1-deg") || two->count("--phi1p-deg") ||
                                        two->count("--beta-deg") || two->count("--betap-deg");
            return emit(wpt::two_photon_table(to_spec(f, std::nullopt), !explicit_point), f, "two-photon");
        }
        if (*we) return emit(wpt::witness_entanglement_table(to_spec(f, wpt::default_phase_sweep())), f,
                             "witness-entanglement");
        if (*ghz) {
            if (ghz_beta->count() == 0) f.beta_deg = 0.0;
            return emit(wpt::ghz_table(to_spec(f, std::nullopt)), f, "ghz");
        }
        if (*verify) {
            const wpt::VerifyReport r = wpt::run_verification(vo);
            r.print(std::cout);
            return r.passed() ? wpt::exit_ok : wpt::exit_verify_failed;
        }
        if (*layout) {
            std::cout << wpt::build_hardware_layout({wpt::radians(f.phi1_deg), wpt::radians(f.phi2_deg)},
                                                    {wpt::radians(f.beta_deg)})
                             .describe();
            return wpt::exit_ok;
        }
    } catch (const wpt::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return wpt::exit_spec_error;
    }
    return wpt::exit_spec_error;
}
