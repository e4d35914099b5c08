#include "polyconf/gen/pipeline.hpp"

#include "polyconf/assembly/assembly.hpp"
#include "polyconf/error.hpp"

namespace polyconf::gen {

namespace {

constexpr std::uint64_t kMarStream = 0x6d617221ULL;
constexpr std::uint64_t kSo3Stream = 0x736f3321ULL;
constexpr std::uint64_t kUnitStreamBase = 0x756e6974ULL;

} // namespace

GenerationResult generate_decomposed(const repr::PolymerGraph& graph, const EncoderOracle& encoder,
                                     const TorsionDenoiser& torsion_denoiser,
                                     const RotationDenoiser& rotation_denoiser,
                                     const GenerationConfig& config) {
    const int n = graph.n_units();
    DiffusionSchedule sched = make_schedule(config.schedule, config.timesteps);
    int k_steps = config.k_steps == 0 ? n : config.k_steps;

    Rng base(config.seed);
    Rng mar_rng = base.fork(kMarStream);
    MarSchedule mar = mar_schedule(n, k_steps, mar_rng);

    // Phase 1: masked-autoregressive unit generation. Each step conditions on
    // the units generated so far through the encoder.
    std::vector<std::optional<repr::UnitConformation>> known(static_cast<std::size_t>(n));
    for (const std::vector<int>& subset : mar.subsets) {
        EmbeddingMatrix condition = encoder.encode(graph, known);
        for (int unit : subset) {
            Rng unit_rng = base.fork(kUnitStreamBase + static_cast<std::uint64_t>(unit));
            known[static_cast<std::size_t>(unit)] =
                torsion_reverse_sample(graph.unit(unit), torsion_denoiser, condition.row(unit), unit,
                                       sched, unit_rng);
        }
    }

    GenerationResult out;
    out.std_units.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.std_units.push_back(*known[static_cast<std::size_t>(i)]);

    // Phase 2: rotations conditioned on the fully generated units.
    EmbeddingMatrix full_condition = encoder.encode(graph, known);
    Rng so3_rng = base.fork(kSo3Stream);
    out.rotations = so3_reverse_sample(rotation_denoiser, full_condition, out.std_units, graph,
                                       sched, so3_rng);

    assembly::AssemblyInput input;
    input.std_units = out.std_units;
    input.rotations = out.rotations;
    input.graph = &graph;
    out.conformation = assembly::assemble(input);
    return out;
}

repr::PolymerConformation generate_conformation(const repr::PolymerGraph& graph,
                                                const EncoderOracle& encoder,
                                                const TorsionDenoiser& torsion_denoiser,
                                                const RotationDenoiser& rotation_denoiser,
                                                const GenerationConfig& config) {
    return generate_decomposed(graph, encoder, torsion_denoiser, rotation_denoiser, config)
        .conformation;
}

MarSchedule pipeline_mar_schedule(int n_units, int k_steps, std::uint64_t seed) {
    Rng mar_rng = Rng(seed).fork(kMarStream);
    return mar_schedule(n_units, k_steps == 0 ? n_units : k_steps, mar_rng);
}

} // namespace polyconf::gen
