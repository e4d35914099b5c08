#include "polyconf/gen/so3_diffusion.hpp"

#include <cmath>

#include "polyconf/assembly/assembly.hpp"
#include "polyconf/error.hpp"
#include "polyconf/geom/kabsch.hpp"

namespace polyconf::gen {

using geom::Rotation;

Rotation so3_forward(const Rotation& r0, int t, const DiffusionSchedule& sched, Rng& rng) {
    if (t < 0 || t > sched.timesteps)
        throw InvalidArgumentError("timestep out of range");
    if (t == 0)
        return r0;
    return r0 * geom::igso3_sample(sched.sigma_rot[static_cast<std::size_t>(t)], rng);
}

std::vector<Rotation> so3_reverse_sample(const RotationDenoiser& denoiser,
                                         const EmbeddingMatrix& condition,
                                         const std::vector<repr::UnitConformation>& std_units,
                                         const repr::PolymerGraph& graph,
                                         const DiffusionSchedule& sched, Rng& rng) {
    const int n = graph.n_units();
    if (n < 2)
        throw InvalidArgumentError("so3 reverse sampling needs at least 2 units");
    if (static_cast<int>(std_units.size()) != n)
        throw SizeMismatchError("unit count does not match the graph");

    std::vector<Rotation> rotations;
    rotations.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        rotations.push_back(geom::uniform_rotation(rng));

    std::vector<repr::UnitConformation> rotated(std_units.size());

    for (int t = sched.timesteps; t >= 1; --t) {
        // Orientations at this step: current rotations with the translations
        // implied by overlap alignment of the currently-rotated units.
        for (int i = 0; i < n; ++i)
            rotated[static_cast<std::size_t>(i)] = assembly::apply_rotation(
                std_units[static_cast<std::size_t>(i)], rotations[static_cast<std::size_t>(i)],
                graph.unit(i));
        std::vector<geom::Vec3> translations = assembly::derive_translations(rotated, graph);

        std::vector<geom::RigidTransform> orientations(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            orientations[static_cast<std::size_t>(i)] = {rotations[static_cast<std::size_t>(i)],
                                                         translations[static_cast<std::size_t>(i)]};

        std::vector<geom::Mat3> raw = denoiser.predict(orientations, t, condition);
        if (static_cast<int>(raw.size()) != n)
            throw OracleFailureError("rotation denoiser returned a wrong-sized prediction");

        std::vector<Rotation> clean;
        clean.reserve(raw.size());
        for (const geom::Mat3& m : raw)
            clean.push_back(geom::nearest_rotation(m));

        if (t == 1) {
            rotations = std::move(clean);
            break;
        }

        double sigma_t = sched.sigma_rot[static_cast<std::size_t>(t)];
        double sigma_prev = sched.sigma_rot[static_cast<std::size_t>(t - 1)];
        double ratio = sigma_prev / sigma_t;
        double weight = 1.0 - ratio * ratio; // geodesic pull toward the clean prediction
        double step_noise = sigma_prev * std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
        for (int i = 0; i < n; ++i) {
            Rotation stepped = geom::geodesic_interpolate(rotations[static_cast<std::size_t>(i)],
                                                          clean[static_cast<std::size_t>(i)], weight);
            rotations[static_cast<std::size_t>(i)] =
                stepped * geom::igso3_sample(step_noise, rng);
        }
    }
    return rotations;
}

} // namespace polyconf::gen
