#ifndef POLYCONF_GEOM_IGSO3_HPP
#define POLYCONF_GEOM_IGSO3_HPP

#include <memory>
#include <vector>

#include "polyconf/geom/rotation.hpp"
#include "polyconf/rng.hpp"

namespace polyconf::geom {

// Angle density of the isotropic Gaussian on SO(3) with scale sigma,
// truncated character series:
//   f(theta) = (1 - cos theta)/pi * sum_{l=0..L} (2l+1) e^{-l(l+1) sigma^2}
//              * sin((l+1/2) theta) / sin(theta/2)
// The number of series terms adapts to sigma (small scales need terms up to
// l ~ 1/sigma for the partial sum to resolve the concentration).
double igso3_angle_density(double theta, double sigma);

// E[theta^2] under the angle density, by Simpson quadrature on a fine grid.
double igso3_second_moment(double sigma, int grid_points = 16385);

// Tabulated inverse CDF of the angle density for one sigma (4096-point grid).
class Igso3Table {
public:
    explicit Igso3Table(double sigma, int grid_points = 4096);

    double sample_angle(double u) const; // u in [0,1)
    double sigma() const { return sigma_; }

private:
    double sigma_;
    double step_;
    std::vector<double> cdf_;
};

// Rotation drawn from IGSO3(sigma): axis uniform on the sphere, angle from
// the tabulated inverse CDF. Below sigma = 0.05 the series would need
// thousands of terms, so the exact small-scale limit is used instead: an
// axis-angle vector drawn from N(0, 2 sigma^2 I) (heat-kernel time 2 sigma^2),
// resampled in the vanishing tail beyond pi.
Rotation igso3_sample(double sigma, Rng& rng);

// Shared per-process cache of angle tables keyed by sigma.
const Igso3Table& igso3_table(double sigma);

inline constexpr double kIgso3GaussianCutoff = 0.05;

} // namespace polyconf::geom

#endif
