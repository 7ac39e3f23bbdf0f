// optics.hpp
// Optical elements of the conceptual toolbox network and circuit propagation.
//
// Beam-splitter convention. Internally every balanced splitter starts from the
// symmetric matrix S = (1/sqrt2)[[1, i], [i, 1]] and carries fixed port phase
// corrections D = diag(1, -i) on both sides:
//
//     B = D S D = (1/sqrt2)[[1, 1], [1, -1]]
//
// With this choice BS1..BS5 reproduce the intermediate and final toolbox
// states amplitude-for-amplitude, including the e^{i phi1/2} global phase of
// the wave component. Phase shifters sit on path 3 (phi1) and path 4 (phi2).

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wpt/parameters.hpp"
#include "wpt/qcore.hpp"

namespace wpt {

// "1".."4" for photon A, "1'".."4'" for photon B, and so on.
std::string path_label(int path, std::string_view suffix = "");
ModeBasis path_basis(std::string_view suffix = "");
ModeBasis polarization_basis(std::string_view suffix = "");

cmatrix symmetric_bs_matrix();
cmatrix balanced_bs_matrix();

// PBS followed by the 45 deg HWP on one output, modeled as a single map from
// the polarization rails onto paths: |V> -> |1>, |H> -> |2>.
ElementUnitary polarizing_bs(std::string_view suffix = "");

// Throws mode_error when both modes coincide.
ElementUnitary balanced_bs(const std::string& first, const std::string& second,
                           std::string name = "BS");

ElementUnitary phase_shifter(const std::string& mode, double phi, std::string name = "PS");

ElementUnitary identity_element(std::vector<std::string> modes, std::string name = "I");

// Partial recombination [[cos 2b, sin 2b], [sin 2b, -cos 2b]]; equals
// balanced_bs at b = pi/8.
ElementUnitary variable_bs(const std::string& first, const std::string& second, double beta,
                           std::string name = "VBS");

class Circuit {
public:
    explicit Circuit(ModeBasis input_basis);

    const ModeBasis& input_basis() const { return input_basis_; }
    const ModeBasis& output_basis() const { return output_basis_; }
    const std::vector<ElementUnitary>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

    // Throws mode_error when e references modes absent from the current basis.
    Circuit compose(const ElementUnitary& e) const;

    // Input labels not present in s are taken as empty modes.
    PureState propagate(const PureState& s) const;

    // The whole circuit as one element from input_basis to output_basis.
    ElementUnitary transfer() const;

private:
    ModeBasis input_basis_;
    ModeBasis output_basis_;
    std::vector<ElementUnitary> elements_;
};

Circuit compose(const Circuit& c, const ElementUnitary& e);
PureState propagate(const Circuit& c, const PureState& s);

// Conceptual toolbox network up to and including BS3 (BS4/BS5 absent).
Circuit toolbox_stage_circuit(const ToolboxPhases& phases, std::string_view suffix = "");

// Full network. beta = 0 substitutes identity elements for BS4/BS5,
// beta = pi/8 inserts balanced splitters, other values use variable_bs.
Circuit toolbox_circuit(const ToolboxPhases& phases, const MeasurementSetting& setting,
                        std::string_view suffix = "");

}  // namespace wpt
