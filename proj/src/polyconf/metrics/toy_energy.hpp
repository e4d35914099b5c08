#ifndef POLYCONF_METRICS_TOY_ENERGY_HPP
#define POLYCONF_METRICS_TOY_ENERGY_HPP

#include <string>

#include "polyconf/repr/conformation.hpp"

namespace polyconf::metrics {

// Deterministic potential energy of a conformation.
class EnergyOracle {
public:
    virtual ~EnergyOracle() = default;
    virtual double energy(const repr::PolymerConformation& conf,
                          const repr::PolymerGraph& graph) const = 0;
    // Identifier recorded in reports so energies are never compared across oracles.
    virtual std::string id() const = 0;
};

// Harmonic bonds and angles plus a Lennard-Jones term over atom pairs at
// least 4 bonds apart:
//   E = sum_bonds k_b (l - l0)^2 + sum_angles k_a (theta - theta0)^2
//     + sum_nb 4 eps [ (s/r)^12 - (s/r)^6 ]
// with k_b = 300, l0 from the covalent-radius table, k_a = 50, theta0 from
// the hybridization heuristic, eps = 0.1, s = 3.4 A.
class ToyEnergyOracle : public EnergyOracle {
public:
    double energy(const repr::PolymerConformation& conf,
                  const repr::PolymerGraph& graph) const override;
    std::string id() const override { return "toy"; }
};

inline constexpr double kToyBondK = 300.0;
inline constexpr double kToyAngleK = 50.0;
inline constexpr double kToyLjEpsilon = 0.1;
inline constexpr double kToyLjSigma = 3.4;
inline constexpr int kToyLjMinSeparation = 4; // bonds

} // namespace polyconf::metrics

#endif
