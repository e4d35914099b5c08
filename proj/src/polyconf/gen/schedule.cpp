#include "polyconf/gen/schedule.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "polyconf/error.hpp"

namespace polyconf::gen {

ScheduleKind schedule_kind_from_string(const std::string& s) {
    if (s == "cosine")
        return ScheduleKind::Cosine;
    if (s == "linear")
        return ScheduleKind::Linear;
    throw InvalidArgumentError("unknown schedule kind '" + s + "' (expected cosine or linear)");
}

const char* to_string(ScheduleKind kind) {
    return kind == ScheduleKind::Cosine ? "cosine" : "linear";
}

double DiffusionSchedule::sigma_torsion(int t) const {
    return std::sqrt(1.0 - alpha_bar[static_cast<std::size_t>(t)]) * sigma_max_torsion;
}

DiffusionSchedule make_schedule(ScheduleKind kind, int timesteps, double sigma_max_torsion,
                                double sigma_rot_min, double sigma_rot_max) {
    if (timesteps < 1)
        throw InvalidTimestepsError("schedule needs at least 1 timestep");

    DiffusionSchedule sched;
    sched.timesteps = timesteps;
    sched.sigma_max_torsion = sigma_max_torsion;
    sched.alpha_bar.resize(static_cast<std::size_t>(timesteps) + 1);
    sched.sigma_rot.resize(static_cast<std::size_t>(timesteps) + 1);

    if (kind == ScheduleKind::Cosine) {
        constexpr double s = 0.008;
        constexpr double half_pi = 1.5707963267948966;
        auto f = [&](double t) {
            double x = (t / timesteps + s) / (1.0 + s) * half_pi;
            double c = std::cos(x);
            return c * c;
        };
        double f0 = f(0.0);
        for (int t = 0; t <= timesteps; ++t)
            sched.alpha_bar[static_cast<std::size_t>(t)] = f(static_cast<double>(t)) / f0;
    } else {
        constexpr double beta_start = 1e-4;
        constexpr double beta_end = 0.02;
        double acc = 1.0;
        sched.alpha_bar[0] = 1.0;
        for (int t = 1; t <= timesteps; ++t) {
            double beta = timesteps == 1
                              ? beta_end
                              : beta_start + (beta_end - beta_start) * (t - 1) / (timesteps - 1.0);
            acc *= 1.0 - beta;
            sched.alpha_bar[static_cast<std::size_t>(t)] = acc;
        }
    }
    sched.alpha_bar[0] = 1.0;

    for (int t = 0; t <= timesteps; ++t) {
        double frac = static_cast<double>(t) / timesteps;
        sched.sigma_rot[static_cast<std::size_t>(t)] =
            sigma_rot_min * std::pow(sigma_rot_max / sigma_rot_min, frac);
    }

    // Invariants hold for every constructed schedule.
    for (int t = 1; t <= timesteps; ++t) {
        bool ok = sched.alpha_bar[static_cast<std::size_t>(t)] <
                      sched.alpha_bar[static_cast<std::size_t>(t - 1)] &&
                  sched.alpha_bar[static_cast<std::size_t>(t)] > 0.0 &&
                  sched.sigma_rot[static_cast<std::size_t>(t)] >
                      sched.sigma_rot[static_cast<std::size_t>(t - 1)];
        if (!ok)
            throw InvalidTimestepsError("schedule invariants violated at step " + std::to_string(t));
    }
    return sched;
}

MarSchedule mar_schedule(int n_units, int k_steps, Rng& rng) {
    if (k_steps < 1 || k_steps > n_units)
        throw InvalidKError("k_steps must satisfy 1 <= K <= n_units (got K=" +
                            std::to_string(k_steps) + ", n_units=" + std::to_string(n_units) + ")");

    MarSchedule out;
    out.k_steps = k_steps;
    out.permutation.resize(static_cast<std::size_t>(n_units));
    std::iota(out.permutation.begin(), out.permutation.end(), 0);
    rng.shuffle(out.permutation);

    int m = n_units / k_steps;
    out.subsets.resize(static_cast<std::size_t>(k_steps));
    int pos = 0;
    for (int k = 0; k < k_steps; ++k) {
        int count = (k == k_steps - 1) ? n_units - pos : m;
        for (int j = 0; j < count; ++j)
            out.subsets[static_cast<std::size_t>(k)].push_back(
                out.permutation[static_cast<std::size_t>(pos++)]);
    }
    return out;
}

} // namespace polyconf::gen
