#ifndef POLYCONF_GEN_PIPELINE_HPP
#define POLYCONF_GEN_PIPELINE_HPP

#include <cstdint>

#include "polyconf/gen/so3_diffusion.hpp"
#include "polyconf/gen/torsion_diffusion.hpp"

namespace polyconf::gen {

struct GenerationConfig {
    std::uint64_t seed = 0;
    int timesteps = 1000;
    ScheduleKind schedule = ScheduleKind::Cosine;
    int k_steps = 0; // 0 means one unit subset per autoregressive step (K = n_units)
};

// End-to-end conformation generation: units are produced subset-by-subset in
// the MAR order (each step re-encodes the graph with all units generated so
// far as the condition), then the unit rotations are sampled on SO(3), and
// the chain is assembled. Deterministic given the config seed; independent
// random substreams per unit keep the result invariant to how the MAR steps
// partition the units when the denoisers are exact.
repr::PolymerConformation generate_conformation(const repr::PolymerGraph& graph,
                                                const EncoderOracle& encoder,
                                                const TorsionDenoiser& torsion_denoiser,
                                                const RotationDenoiser& rotation_denoiser,
                                                const GenerationConfig& config);

// The same pipeline, also exposing the generated standardized units and
// rotations (used by tile/doubling tooling).
struct GenerationResult {
    repr::PolymerConformation conformation;
    std::vector<repr::UnitConformation> std_units;
    std::vector<geom::Rotation> rotations;
};

GenerationResult generate_decomposed(const repr::PolymerGraph& graph, const EncoderOracle& encoder,
                                     const TorsionDenoiser& torsion_denoiser,
                                     const RotationDenoiser& rotation_denoiser,
                                     const GenerationConfig& config);

// The MAR plan the pipeline would use for this seed (same substream).
MarSchedule pipeline_mar_schedule(int n_units, int k_steps, std::uint64_t seed);

} // namespace polyconf::gen

#endif
