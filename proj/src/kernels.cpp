#include "rydpol/kernels.hpp"

namespace rydpol {

std::string to_string(Potential p) { return p == Potential::VanDerWaals ? "vdw" : "dd"; }

std::string to_string(InteractionSign s) {
    return s == InteractionSign::Attractive ? "attractive" : "repulsive";
}

Potential parse_potential(std::string_view text) {
    if (text == "vdw") return Potential::VanDerWaals;
    if (text == "dd") return Potential::DipoleDipole;
    throw std::invalid_argument("unknown potential '" + std::string(text) + "' (expected vdw|dd)");
}

InteractionSign parse_sign(std::string_view text) {
    if (text == "attractive") return InteractionSign::Attractive;
    if (text == "repulsive") return InteractionSign::Repulsive;
    throw std::invalid_argument("unknown sign '" + std::string(text) + "' (expected attractive|repulsive)");
}

}  // namespace rydpol
