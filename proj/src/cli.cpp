#include "wpt/cli.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "wpt/entangle.hpp"
#include "wpt/errors.hpp"
#include "wpt/parallel.hpp"
#include "wpt/shots.hpp"
#include "wpt/toolbox.hpp"
#include "wpt/verify.hpp"

namespace wpt {

namespace {

const std::vector<std::string> sweepable = {"alpha",      "phi1", "phi1_prime", "phi2",
                                            "phi2_prime", "beta", "visibility", "dephase"};

double& slot(ParameterValues& v, const std::string& name) {
    if (name == "alpha") return v.alpha;
    if (name == "phi1") return v.phi1;
    if (name == "phi1_prime") return v.phi1_prime;
    if (name == "phi2") return v.phi2;
    if (name == "phi2_prime") return v.phi2_prime;
    if (name == "beta") return v.beta;
    if (name == "visibility") return v.visibility;
    if (name == "dephase") return v.dephase;
    throw range_error("unknown sweep parameter '" + name + "'");
}

NoiseModel noise_of(const ParameterValues& v, bool mixed) {
    NoiseModel m{v.visibility, mixed ? 1.0 : v.dephase};
    m.validate();
    return m;
}

TwoPhotonSettings two_photon_of(const ParameterValues& v) {
    return {{v.alpha}, {v.phi1, v.phi2}, {v.phi1_prime, v.phi2_prime}, {v.beta}, {v.beta_prime}};
}

std::string pair_column(const char* prefix, int n, int m) {
    return std::string(prefix) + std::to_string(n) + std::to_string(m) + "p";
}

// Rows computed in parallel, stored by index so the output order is fixed.
template <class RowFn>
Table build(std::vector<std::string> columns, std::size_t n_rows, RowFn row) {
    Table t{std::move(columns), std::vector<std::vector<Cell>>(n_rows)};
    parallel_for(n_rows, [&](std::size_t i) { t.rows[i] = row(i); });
    return t;
}

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* u = std::get_if<std::uint64_t>(&c)) return std::to_string(*u);
    return std::get<std::string>(c);
}

}  // namespace

bool is_angle_parameter(const std::string& name) {
    return name != "visibility" && name != "dephase";
}

void validate(const SweepSpec& spec) {
    const ParameterValues& f = spec.fixed;
    for (double v : {f.alpha, f.phi1, f.phi1_prime, f.phi2, f.phi2_prime, f.beta, f.beta_prime, f.visibility,
                     f.dephase}) {
        if (!std::isfinite(v)) throw range_error("parameter values must be finite");
    }
    noise_of(f, false);
    if (spec.sweep) {
        const Sweep& s = *spec.sweep;
        if (std::find(sweepable.begin(), sweepable.end(), s.parameter) == sweepable.end())
            throw range_error("unknown sweep parameter '" + s.parameter + "'");
        if (s.steps < 2) throw range_error("a sweep needs at least 2 steps");
        if (!std::isfinite(s.from) || !std::isfinite(s.to)) throw range_error("sweep bounds must be finite");
        if (!is_angle_parameter(s.parameter)) {
            for (double v : {s.from, s.to}) {
                if (v < 0.0 || v > 1.0) throw range_error(s.parameter + " must lie in [0, 1]");
            }
        }
    }
    if (spec.photons < 1 || spec.photons > max_ghz_photons)
        throw range_error("photon count must lie in [1, " + std::to_string(max_ghz_photons) + "]");
}

std::vector<ParameterValues> expand(const SweepSpec& spec) {
    validate(spec);
    if (!spec.sweep) return {spec.fixed};
    std::vector<ParameterValues> rows;
    for (double v : linspace(spec.sweep->from, spec.sweep->to, spec.sweep->steps)) {
        ParameterValues p = spec.fixed;
        slot(p, spec.sweep->parameter) = v;
        rows.push_back(p);
    }
    return rows;
}

Sweep default_phase_sweep() { return {"phi1", 0.0, 2 * pi, 25}; }
Sweep default_alpha_sweep() { return {"alpha", 0.0, pi / 2, 13}; }

Table single_sweep_table(const SweepSpec& spec) {
    const auto params = expand(spec);
    std::vector<std::string> cols = {"alpha", "phi1", "phi2", "beta", "p1", "p2", "p3", "p4"};
    if (spec.shots > 0) {
        for (const char* p : {"c", "e"})
            for (int n = 1; n <= 4; ++n) cols.push_back(p + std::to_string(n));
    }
    return build(std::move(cols), params.size(), [&](std::size_t i) {
        const ParameterValues& v = params[i];
        const SingleProbabilities p =
            noisy_detection_probabilities({v.alpha}, {v.phi1, v.phi2}, {v.beta}, noise_of(v, spec.mixed));
        std::vector<Cell> row = {v.alpha, v.phi1, v.phi2, v.beta, p.p[0], p.p[1], p.p[2], p.p[3]};
        if (spec.shots > 0) {
            const CountTable c = sample_counts(p, spec.shots, derive_seed(spec.seed, i));
            const auto e = poisson_error(c);
            for (auto k : c.counts) row.emplace_back(k);
            for (double x : e) row.emplace_back(x);
        }
        return row;
    });
}

Table witness_coherence_table(const SweepSpec& spec) {
    const auto params = expand(spec);
    std::vector<std::string> cols = {"alpha", "phi1", "wc"};
    if (spec.shots > 0) {
        cols.push_back("wc_est");
        cols.push_back("wc_err");
    }
    return build(std::move(cols), params.size(), [&](std::size_t i) {
        const ParameterValues& v = params[i];
        const SingleProbabilities p =
            noisy_detection_probabilities({v.alpha}, {v.phi1, v.phi2}, {v.beta}, noise_of(v, spec.mixed));
        std::vector<Cell> row = {v.alpha, v.phi1, coherence_witness(p)};
        if (spec.shots > 0) {
            const Estimate e =
                estimate_witness(sample_counts(p, spec.shots, derive_seed(spec.seed, i)), Witness::coherence);
            row.emplace_back(e.value);
            row.emplace_back(e.error);
        }
        return row;
    });
}

Table two_photon_table(const SweepSpec& spec, bool default_grid) {
    std::vector<ParameterValues> params;
    if (!spec.sweep && default_grid) {
        validate(spec);
        for (double b : {0.0, pi / 8}) {
            for (double f1 : {0.0, pi}) {
                for (double f1p : {0.0, pi}) {
                    ParameterValues v = spec.fixed;
                    v.beta = v.beta_prime = b;
                    v.phi1 = f1;
                    v.phi1_prime = f1p;
                    params.push_back(v);
                }
            }
        }
    } else {
        params = expand(spec);
    }

    std::vector<std::string> cols = {"phi1", "phi1p", "beta", "betap"};
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m) cols.push_back(pair_column("p_", n, m));
    if (spec.shots > 0) {
        for (int n = 1; n <= 4; ++n)
            for (int m = 1; m <= 4; ++m) cols.push_back(pair_column("c_", n, m));
    }
    return build(std::move(cols), params.size(), [&](std::size_t i) {
        const ParameterValues& v = params[i];
        const CoincidenceTable t = noisy_coincidence_probabilities(two_photon_of(v), noise_of(v, spec.mixed));
        std::vector<Cell> row = {v.phi1, v.phi1_prime, v.beta, v.beta_prime};
        for (double p : t.flattened()) row.emplace_back(p);
        if (spec.shots > 0) {
            for (auto k : sample_counts(t, spec.shots, derive_seed(spec.seed, i)).counts) row.emplace_back(k);
        }
        return row;
    });
}

Table witness_entanglement_table(const SweepSpec& spec) {
    const auto params = expand(spec);
    std::vector<std::string> cols = {"phi1", "p_22p", "p_21p", "we"};
    if (spec.shots > 0) cols.push_back("we_err");
    return build(std::move(cols), params.size(), [&](std::size_t i) {
        const ParameterValues& v = params[i];
        const CoincidenceTable t = noisy_coincidence_probabilities(two_photon_of(v), noise_of(v, spec.mixed));
        if (spec.shots == 0) {
            return std::vector<Cell>{v.phi1, t.at(2, 2), t.at(2, 1), entanglement_witness(t)};
        }
        const CountTable c = sample_counts(t, spec.shots, derive_seed(spec.seed, i));
        const Estimate e = estimate_witness(c, Witness::entanglement);
        return std::vector<Cell>{v.phi1, c.frequency(5), c.frequency(4), e.value, e.error};
    });
}

Table ghz_table(const SweepSpec& spec) {
    validate(spec);
    if (spec.sweep) throw range_error("ghz does not take a sweep");
    const ParameterValues& v = spec.fixed;
    const GhzSectorTable g = ghz_sector_probabilities(spec.photons, {v.alpha}, {v.phi1, v.phi2}, {v.beta});
    Table t{{"sector", "probability"}, {}};
    for (std::size_t k = 0; k < g.by_pattern.size(); ++k) t.rows.push_back({g.pattern_name(k), g.by_pattern[k]});
    t.rows.push_back({std::string("all_wave"), g.all_wave()});
    t.rows.push_back({std::string("all_particle"), g.all_particle()});
    t.rows.push_back({std::string("crossed"), g.crossed()});
    return t;
}

std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void write_table(const Table& t, OutputFormat format, std::ostream& os) {
    if (format == OutputFormat::csv) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell_text(row[c]);
            os << '\n';
        }
        return;
    }
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::visit([&](const auto& x) { obj[t.columns[c]] = x; }, row[c]);
        }
        out.push_back(std::move(obj));
    }
    os << out.dump(2) << '\n';
}

}  // namespace wpt
