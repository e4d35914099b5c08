#include "polyconf/repr/chem_tables.hpp"

#include <unordered_map>

namespace polyconf::repr {

double covalent_radius(const std::string& element) {
    static const std::unordered_map<std::string, double> radii = {
        {"H", 0.31},  {"B", 0.84},  {"C", 0.76},  {"N", 0.71},  {"O", 0.66},
        {"F", 0.57},  {"Si", 1.11}, {"P", 1.07},  {"S", 1.05},  {"Cl", 1.02},
        {"Br", 1.20}, {"I", 1.39},  {"Se", 1.20},
    };
    auto it = radii.find(element);
    return it == radii.end() ? 0.77 : it->second;
}

double ideal_bond_length(const std::string& elem_a, const std::string& elem_b) {
    return covalent_radius(elem_a) + covalent_radius(elem_b);
}

double ideal_bond_angle(int center_degree) {
    constexpr double tetrahedral = 1.9106332362490186; // acos(-1/3)
    constexpr double trigonal = 2.0943951023931953;    // 120 deg
    return center_degree == 3 ? trigonal : tetrahedral;
}

} // namespace polyconf::repr
