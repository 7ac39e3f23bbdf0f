#include "wpt/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "wpt/entangle.hpp"
#include "wpt/hardware.hpp"
#include "wpt/parallel.hpp"
#include "wpt/toolbox.hpp"

namespace wpt {

namespace {

constexpr double closed_form_tol = 1e-12;
constexpr double hardware_tol = 1e-10;

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

double table_distance(const CoincidenceTable& a, const CoincidenceTable& b) {
    double worst = 0.0;
    for (int n = 0; n < 4; ++n) {
        for (int m = 0; m < 4; ++m) worst = std::max(worst, std::abs(a.p[n][m] - b.p[n][m]));
    }
    return worst;
}

// The eight pairwise equalities of the sixteen probabilities.
double symmetry_defect(const CoincidenceTable& t) {
    static constexpr int pairs[8][4] = {{0, 0, 1, 1}, {0, 1, 1, 0}, {0, 2, 1, 3}, {0, 3, 1, 2},
                                        {2, 0, 3, 1}, {2, 1, 3, 0}, {2, 2, 3, 3}, {2, 3, 3, 2}};
    double worst = 0.0;
    for (const auto& q : pairs) worst = std::max(worst, std::abs(t.p[q[0]][q[1]] - t.p[q[2]][q[3]]));
    return worst;
}

VerifyCheck single_photon_check(const VerifyOptions& o, const MeasurementSetting& beta, const std::string& name) {
    const auto alphas = linspace(0.0, pi / 2, o.single_grid);
    const auto phases = linspace(0.0, 2 * pi, o.single_grid);
    std::vector<double> worst(alphas.size(), 0.0);
    parallel_for(alphas.size(), [&](std::size_t i) {
        const PreparationAngle a{alphas[i]};
        for (double f1 : phases) {
            for (double f2 : phases) {
                const ToolboxPhases ph{f1, f2};
                const auto closed = detection_probabilities(a, ph, beta).p;
                const auto state = as_array(measure_distribution(output_state(a, ph, beta)));
                const auto prop = as_array(measure_distribution(propagate_toolbox(a, ph, beta)));
                for (std::size_t k = 0; k < 4; ++k) {
                    worst[i] = std::max({worst[i], std::abs(closed[k] - state[k]), std::abs(closed[k] - prop[k])});
                }
                worst[i] = std::max(worst[i], std::abs(closed[0] + closed[1] + closed[2] + closed[3] - 1.0));
            }
        }
    });
    return {name, alphas.size() * phases.size() * phases.size(), max_of(worst), closed_form_tol};
}

std::vector<TwoPhotonSettings> two_photon_grid(const VerifyOptions& o, const MeasurementSetting& ba,
                                               const MeasurementSetting& bb) {
    std::vector<double> alphas{pi / 4};
    for (double a : linspace(0.0, pi / 2, o.two_photon_alphas)) alphas.push_back(a);
    const auto outer = linspace(0.0, 2 * pi, o.phase_grid);
    const auto inner = linspace(0.0, 2 * pi, o.inner_phase_grid);
    std::vector<TwoPhotonSettings> grid;
    for (double a : alphas)
        for (double f1 : outer)
            for (double f1p : outer)
                for (double f2 : inner)
                    for (double f2p : inner) grid.push_back({{a}, {f1, f2}, {f1p, f2p}, ba, bb});
    return grid;
}

void two_photon_checks(const VerifyOptions& o, std::vector<VerifyCheck>& out) {
    struct Case {
        MeasurementSetting a, b;
        std::string name;
    };
    const std::vector<Case> cases = {
        {MeasurementSetting::present(), MeasurementSetting::present(), "two-photon sixteen-probability closed form"},
        {MeasurementSetting::absent(), MeasurementSetting::absent(), "two-photon beta=0 closed form"},
        {MeasurementSetting::present(), MeasurementSetting::absent(), "two-photon mixed settings"},
    };
    for (const auto& c : cases) {
        const auto grid = two_photon_grid(o, c.a, c.b);
        std::vector<double> worst(grid.size()), sym(grid.size());
        parallel_for(grid.size(), [&](std::size_t i) {
            const CoincidenceTable closed = coincidence_probabilities(grid[i]);
            const CoincidenceTable prop = coincidence_table(propagate_two_photon(grid[i]));
            worst[i] = std::max(table_distance(closed, prop), std::abs(closed.sum() - 1.0));
            sym[i] = symmetry_defect(prop);
        });
        out.push_back({c.name, grid.size(), max_of(worst), closed_form_tol});
        if (c.a.is_present() && c.b.is_present())
            out.push_back({"two-photon pairwise symmetries", grid.size(), max_of(sym), closed_form_tol});
    }
}

void hardware_checks(const VerifyOptions& o, std::vector<VerifyCheck>& out) {
    const auto grid = random_grid(o.hardware_points, o.seed);
    for (const auto& [beta, label] : {std::pair{MeasurementSetting::absent(), "beta=0"},
                                      std::pair{MeasurementSetting::present(), "beta=22.5deg"}}) {
        const EquivalenceReport r = equivalence_check(grid, beta, {.strict = true, .amplitudes = true});
        out.push_back({std::string("hardware distributions ") + label, r.points, r.max_distribution_deviation,
                       hardware_tol});
        out.push_back({std::string("hardware amplitudes ") + label, r.points, r.max_amplitude_deviation,
                       hardware_tol});
        out.push_back({std::string("hardware unitarity ") + label, r.points, r.max_unitarity_defect, closed_form_tol});
    }
}

void ghz_checks(const VerifyOptions& o, std::vector<VerifyCheck>& out) {
    double worst = 0.0;
    std::size_t points = 0;
    for (std::size_t n = 1; n <= o.ghz_max_photons; ++n) {
        for (double f1 : {0.0, pi / 2}) {
            for (const auto& beta : {MeasurementSetting::absent(), MeasurementSetting::present()}) {
                const PreparationAngle a{pi / 4};
                const PureState closed = ghz_output(n, a, {f1, 0.3}, beta);
                const PureState prop = propagate_ghz(n, a, {f1, 0.3}, beta);
                worst = std::max(worst, (closed.amplitudes() - prop.amplitudes()).cwiseAbs().maxCoeff());
                ++points;
            }
        }
    }
    out.push_back({"GHZ closed form vs propagation", points, worst, closed_form_tol});

    double sector = 0.0;
    for (double f1 : {0.0, pi / 2}) {
        const GhzSectorTable t = ghz_sector_probabilities(3, {pi / 4}, {f1, 0.0}, MeasurementSetting::absent());
        sector = std::max({sector, t.crossed(), std::abs(t.all_wave() - 0.5), std::abs(t.all_particle() - 0.5)});
    }
    out.push_back({"GHZ n=3 beta=0 sectors", 2, sector, closed_form_tol});
}

}  // namespace

std::vector<double> linspace(double from, double to, std::size_t steps) {
    if (steps == 0) return {};
    if (steps == 1) return {from};
    std::vector<double> v(steps);
    for (std::size_t i = 0; i < steps; ++i)
        v[i] = (i + 1 == steps) ? to : from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return v;
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed(); });
}

void VerifyReport::print(std::ostream& os) const {
    for (const auto& c : checks) {
        os << (c.passed() ? "ok    " : "FAIL  ") << std::left << std::setw(46) << c.name << std::right
           << " points=" << std::setw(6) << c.points << "  max_dev=" << std::scientific << std::setprecision(3)
           << c.max_deviation << "  tol=" << c.tolerance << std::defaultfloat << '\n';
    }
    os << (passed() ? "verify: all checks passed" : "verify: FAILED") << " in " << std::fixed << std::setprecision(2)
       << seconds << " s" << std::defaultfloat << '\n';
}

VerifyReport run_verification(const VerifyOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    VerifyReport r;
    r.checks.push_back(single_photon_check(options, MeasurementSetting::present(), "single-photon beta=22.5deg"));
    r.checks.push_back(single_photon_check(options, MeasurementSetting::absent(), "single-photon beta=0"));
    two_photon_checks(options, r.checks);
    hardware_checks(options, r.checks);
    ghz_checks(options, r.checks);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace wpt
