#ifndef POLYCONF_GEN_SO3_DIFFUSION_HPP
#define POLYCONF_GEN_SO3_DIFFUSION_HPP

#include <vector>

#include "polyconf/gen/oracles.hpp"
#include "polyconf/gen/schedule.hpp"
#include "polyconf/geom/igso3.hpp"

namespace polyconf::gen {

// Forward noising on SO(3): r_t = r_0 * IGSO3(sigma_rot[t]); exact identity
// at t = 0.
geom::Rotation so3_forward(const geom::Rotation& r0, int t, const DiffusionSchedule& sched, Rng& rng);

// Reverse sampler over all unit rotations. Each step pairs the current
// rotations with overlap-derived translations (via derive_translations on the
// rotated units), asks the denoiser for clean rotations, then takes a
// schedule-weighted geodesic step toward them plus IGSO3 noise; the final
// step outputs the projected clean prediction. Unit count must be >= 2.
std::vector<geom::Rotation> so3_reverse_sample(const RotationDenoiser& denoiser,
                                               const EmbeddingMatrix& condition,
                                               const std::vector<repr::UnitConformation>& std_units,
                                               const repr::PolymerGraph& graph,
                                               const DiffusionSchedule& sched, Rng& rng);

} // namespace polyconf::gen

#endif
