#ifndef POLYCONF_GEN_TORSION_DIFFUSION_HPP
#define POLYCONF_GEN_TORSION_DIFFUSION_HPP

#include <span>
#include <vector>

#include "polyconf/gen/oracles.hpp"
#include "polyconf/gen/schedule.hpp"
#include "polyconf/repr/torsion.hpp"

namespace polyconf::gen {

// Forward noising on the torus: phi_t = wrap(phi_0 + sigma(t) * eps) with
// sigma(t) = sqrt(1 - alpha_bar_t) * sigma_max. Exact identity at t = 0.
std::vector<double> torsion_forward(std::span<const double> torsions, int t,
                                    const DiffusionSchedule& sched, Rng& rng);

// Reverse walk over the unit's torsion coordinates from t = T down to 0,
// applying denoiser noise predictions with schedule-weighted steps plus
// annealed noise (none on the final step). The torsions start from the
// uniform prior and are applied to the unit's idealized template, so bond
// lengths and angles stay fixed throughout. Output is standardized.
repr::UnitConformation torsion_reverse_sample(const repr::UnitTopology& topo,
                                              const TorsionDenoiser& denoiser,
                                              std::span<const double> condition, int unit_index,
                                              const DiffusionSchedule& sched, Rng& rng);

} // namespace polyconf::gen

#endif
