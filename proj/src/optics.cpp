#include "wpt/optics.hpp"

#include <cmath>

namespace wpt {

namespace {

const amplitude I{0.0, 1.0};

std::vector<std::string> rename_positions(const ModeBasis& basis, const ElementUnitary& e) {
    std::vector<std::string> labels = basis.labels();
    for (std::size_t k = 0; k < e.in_modes().size(); ++k) {
        auto pos = basis.find(e.in_modes()[k]);
        if (!pos) throw mode_error(e.name() + ": unknown mode '" + e.in_modes()[k] + "'");
        labels[*pos] = e.out_modes()[k];
    }
    return labels;
}

}  // namespace

std::string path_label(int path, std::string_view suffix) {
    return std::to_string(path) + std::string(suffix);
}

ModeBasis path_basis(std::string_view suffix) {
    return ModeBasis({path_label(1, suffix), path_label(2, suffix), path_label(3, suffix),
                      path_label(4, suffix)});
}

ModeBasis polarization_basis(std::string_view suffix) {
    return ModeBasis({"V" + std::string(suffix), "H" + std::string(suffix)});
}

cmatrix symmetric_bs_matrix() {
    cmatrix s(2, 2);
    s << 1.0, I, I, 1.0;
    return s / std::sqrt(2.0);
}

cmatrix balanced_bs_matrix() {
    cmatrix d = cmatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -I;
    return d * symmetric_bs_matrix() * d;
}

ElementUnitary polarizing_bs(std::string_view suffix) {
    const std::string s(suffix);
    return ElementUnitary("PBS+HWP" + s, {"V" + s, "H" + s}, {path_label(1, s), path_label(2, s)},
                          cmatrix::Identity(2, 2));
}

ElementUnitary balanced_bs(const std::string& first, const std::string& second, std::string name) {
    if (first == second) throw mode_error(name + ": beam splitter needs two distinct modes");
    return ElementUnitary(std::move(name), {first, second}, balanced_bs_matrix());
}

ElementUnitary phase_shifter(const std::string& mode, double phi, std::string name) {
    if (!std::isfinite(phi)) throw range_error(name + ": phase must be finite");
    cmatrix m(1, 1);
    m(0, 0) = std::polar(1.0, phi);
    return ElementUnitary(std::move(name), {mode}, m);
}

ElementUnitary identity_element(std::vector<std::string> modes, std::string name) {
    const auto n = static_cast<Eigen::Index>(modes.size());
    return ElementUnitary(std::move(name), std::move(modes), cmatrix::Identity(n, n));
}

ElementUnitary variable_bs(const std::string& first, const std::string& second, double beta,
                           std::string name) {
    if (first == second) throw mode_error(name + ": beam splitter needs two distinct modes");
    if (!std::isfinite(beta)) throw range_error(name + ": angle must be finite");
    const double c = std::cos(2 * beta), s = std::sin(2 * beta);
    cmatrix m(2, 2);
    m << c, s, s, -c;
    return ElementUnitary(std::move(name), {first, second}, m);
}

// ---------------------------------------------------------------------------

Circuit::Circuit(ModeBasis input_basis)
    : input_basis_(input_basis), output_basis_(std::move(input_basis)) {}

Circuit Circuit::compose(const ElementUnitary& e) const {
    Circuit next = *this;
    if (e.relabels()) {
        next.output_basis_ = ModeBasis(rename_positions(output_basis_, e));
    } else {
        for (const auto& m : e.in_modes()) {
            if (!output_basis_.contains(m)) throw mode_error(e.name() + ": unknown mode '" + m + "'");
        }
    }
    next.elements_.push_back(e);
    return next;
}

PureState Circuit::propagate(const PureState& s) const {
    PureState state = (s.basis() == input_basis_) ? s : embed(s, input_basis_);
    for (const auto& e : elements_) state = apply_unitary(e, state);
    return state;
}

ElementUnitary Circuit::transfer() const {
    const auto d = static_cast<Eigen::Index>(input_basis_.dimension());
    cmatrix t(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        t.col(j) = propagate(PureState::ket(input_basis_, input_basis_.label(static_cast<std::size_t>(j))))
                       .amplitudes();
    }
    return ElementUnitary("circuit", input_basis_.labels(), output_basis_.labels(), t);
}

Circuit compose(const Circuit& c, const ElementUnitary& e) { return c.compose(e); }

PureState propagate(const Circuit& c, const PureState& s) { return c.propagate(s); }

// ---------------------------------------------------------------------------

Circuit toolbox_stage_circuit(const ToolboxPhases& phases, std::string_view suffix) {
    const std::string s(suffix);
    const auto p = [&](int n) { return path_label(n, s); };
    Circuit c(ModeBasis({"V" + s, "H" + s, p(3), p(4)}));
    return c.compose(polarizing_bs(s))
        .compose(balanced_bs(p(1), p(3), "BS1" + s))
        .compose(balanced_bs(p(2), p(4), "BS2" + s))
        .compose(phase_shifter(p(3), phases.phi1, "PS1" + s))
        .compose(phase_shifter(p(4), phases.phi2, "PS2" + s))
        .compose(balanced_bs(p(1), p(3), "BS3" + s));
}

Circuit toolbox_circuit(const ToolboxPhases& phases, const MeasurementSetting& setting,
                        std::string_view suffix) {
    const std::string s(suffix);
    const auto p = [&](int n) { return path_label(n, s); };
    Circuit c = toolbox_stage_circuit(phases, suffix);
    if (setting.is_absent()) {
        return c.compose(identity_element({p(1), p(2)}, "BS4" + s))
            .compose(identity_element({p(3), p(4)}, "BS5" + s));
    }
    if (setting.is_present()) {
        return c.compose(balanced_bs(p(1), p(2), "BS4" + s)).compose(balanced_bs(p(3), p(4), "BS5" + s));
    }
    return c.compose(variable_bs(p(1), p(2), setting.beta, "BS4" + s))
        .compose(variable_bs(p(3), p(4), setting.beta, "BS5" + s));
}

}  // namespace wpt
