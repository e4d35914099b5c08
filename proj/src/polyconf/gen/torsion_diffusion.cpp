#include "polyconf/gen/torsion_diffusion.hpp"

#include <cmath>

#include "polyconf/error.hpp"
#include "polyconf/repr/frames.hpp"
#include "polyconf/repr/template_unit.hpp"

namespace polyconf::gen {

std::vector<double> torsion_forward(std::span<const double> torsions, int t,
                                    const DiffusionSchedule& sched, Rng& rng) {
    if (t < 0 || t > sched.timesteps)
        throw InvalidArgumentError("timestep out of range");
    std::vector<double> out(torsions.begin(), torsions.end());
    if (t == 0)
        return out;
    double sigma = sched.sigma_torsion(t);
    for (double& phi : out)
        phi = repr::wrap_angle(phi + sigma * rng.normal());
    return out;
}

repr::UnitConformation torsion_reverse_sample(const repr::UnitTopology& topo,
                                              const TorsionDenoiser& denoiser,
                                              std::span<const double> condition, int unit_index,
                                              const DiffusionSchedule& sched, Rng& rng) {
    repr::UnitConformation unit = repr::make_template_unit(topo, unit_index);
    std::vector<repr::RotatableBond> bonds = repr::list_rotatable_bonds(topo);
    if (bonds.empty())
        return unit;

    // Start from the uniform prior on the torus.
    std::vector<double> phi(bonds.size());
    for (double& p : phi)
        p = repr::wrap_angle((2.0 * rng.uniform() - 1.0) * geom::kPi);

    for (int t = sched.timesteps; t >= 1; --t) {
        double sigma_t = sched.sigma_torsion(t);
        double sigma_prev = sched.sigma_torsion(t - 1);
        std::vector<double> eps = denoiser.predict(phi, t, condition, unit_index);
        if (eps.size() != phi.size())
            throw OracleFailureError("torsion denoiser returned a wrong-sized prediction");

        if (t == 1) {
            // Final step: output the clean prediction (sigma(0) = 0).
            for (std::size_t i = 0; i < phi.size(); ++i)
                phi[i] = repr::wrap_angle(phi[i] - sigma_t * eps[i]);
            break;
        }

        // Marginal-preserving step: move to the clean prediction, then re-noise
        // to the previous level, split between the predicted direction and
        // fresh noise.
        double ratio = sigma_prev / sigma_t;
        double step_noise = sigma_prev * std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
        double retained = std::sqrt(std::max(0.0, sigma_prev * sigma_prev - step_noise * step_noise));
        for (std::size_t i = 0; i < phi.size(); ++i) {
            double clean = phi[i] - sigma_t * eps[i];
            phi[i] = repr::wrap_angle(clean + retained * eps[i] + step_noise * rng.normal());
        }
    }

    repr::UnitConformation shaped = repr::apply_torsions(unit, bonds, phi);
    return repr::to_standard(shaped, repr::extract_frame(shaped, topo));
}

} // namespace polyconf::gen
