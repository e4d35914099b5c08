#ifndef POLYCONF_GEN_SCHEDULE_HPP
#define POLYCONF_GEN_SCHEDULE_HPP

#include <vector>

#include "polyconf/rng.hpp"

namespace polyconf::gen {

enum class ScheduleKind { Cosine, Linear };

ScheduleKind schedule_kind_from_string(const std::string& s);
const char* to_string(ScheduleKind kind);

// Noise schedule shared by both diffusion branches. alpha_bar drives the
// torsion branch (sigma_torsion(t) = sqrt(1 - alpha_bar_t) * sigma_max_torsion),
// sigma_rot drives the SO(3) branch (log-linear from sigma_rot_min to
// sigma_rot_max).
struct DiffusionSchedule {
    int timesteps = 0;                 // T
    std::vector<double> alpha_bar;     // T+1 values, alpha_bar[0] = 1, strictly decreasing
    std::vector<double> sigma_rot;     // T+1 values, strictly increasing from ~0
    double sigma_max_torsion = 0.0;

    double sigma_torsion(int t) const;
};

inline constexpr double kDefaultSigmaMaxTorsion = 1.5707963267948966; // pi/2
inline constexpr double kDefaultSigmaRotMin = 0.01;
inline constexpr double kDefaultSigmaRotMax = 1.5;

// Throws InvalidTimestepsError when timesteps < 1.
DiffusionSchedule make_schedule(ScheduleKind kind, int timesteps,
                                double sigma_max_torsion = kDefaultSigmaMaxTorsion,
                                double sigma_rot_min = kDefaultSigmaRotMin,
                                double sigma_rot_max = kDefaultSigmaRotMax);

// Random-order generation plan: permutation pi over the units and K ordered
// subsets; subset k holds pi((k-1)m+1 .. km) with m = floor(n_units / K) and
// the final subset absorbing the remainder.
struct MarSchedule {
    std::vector<int> permutation;           // 0-based unit indices
    int k_steps = 0;
    std::vector<std::vector<int>> subsets;
};

// Throws InvalidKError unless 1 <= k_steps <= n_units.
MarSchedule mar_schedule(int n_units, int k_steps, Rng& rng);

} // namespace polyconf::gen

#endif
