#ifndef POLYCONF_REPR_CHEM_TABLES_HPP
#define POLYCONF_REPR_CHEM_TABLES_HPP

#include <string>

namespace polyconf::repr {

// Single-bond covalent radius in Angstrom; 0.77 for unknown elements.
double covalent_radius(const std::string& element);

// Ideal bond length: sum of covalent radii.
double ideal_bond_length(const std::string& elem_a, const std::string& elem_b);

// Ideal angle at a center atom by a degree-based hybridization heuristic:
// 3 neighbours -> trigonal (120 deg), otherwise tetrahedral (109.47 deg).
// Low-degree centers default to tetrahedral so that idealized backbones
// never go collinear.
double ideal_bond_angle(int center_degree);

} // namespace polyconf::repr

#endif
