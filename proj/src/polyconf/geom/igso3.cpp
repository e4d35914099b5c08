#include "polyconf/geom/igso3.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "polyconf/error.hpp"

namespace polyconf::geom {

namespace {

int series_terms(double sigma) {
    double needed = std::ceil(8.0 / sigma);
    return static_cast<int>(std::clamp(needed, 100.0, 4096.0));
}

double character_sum(double theta, double sigma, int terms) {
    double s = 0.0;
    double half = 0.5 * theta;
    double sin_half = std::sin(half);
    for (int l = 0; l <= terms; ++l) {
        double weight = (2.0 * l + 1.0) * std::exp(-static_cast<double>(l) * (l + 1.0) * sigma * sigma);
        double character;
        if (std::fabs(sin_half) < 1e-9)
            character = 2.0 * l + 1.0;
        else
            character = std::sin((l + 0.5) * theta) / sin_half;
        s += weight * character;
    }
    return s;
}

} // namespace

double igso3_angle_density(double theta, double sigma) {
    double haar = (1.0 - std::cos(theta)) / kPi;
    double val = haar * character_sum(theta, sigma, series_terms(sigma));
    return std::max(val, 0.0); // clip truncation ringing
}

double igso3_second_moment(double sigma, int grid_points) {
    if (grid_points % 2 == 0)
        ++grid_points;
    double h = kPi / (grid_points - 1);
    double norm = 0.0, moment = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        double theta = i * h;
        double w = (i == 0 || i == grid_points - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        double f = igso3_angle_density(theta, sigma);
        norm += w * f;
        moment += w * f * theta * theta;
    }
    return moment / norm;
}

Igso3Table::Igso3Table(double sigma, int grid_points) : sigma_(sigma) {
    if (!(sigma > 0.0))
        throw InvalidArgumentError("igso3 sigma must be positive");
    step_ = kPi / (grid_points - 1);
    std::vector<double> density(static_cast<std::size_t>(grid_points));
    int terms = series_terms(sigma);
    for (int i = 0; i < grid_points; ++i)
        density[static_cast<std::size_t>(i)] =
            std::max(0.0, (1.0 - std::cos(i * step_)) / kPi * character_sum(i * step_, sigma, terms));

    cdf_.assign(static_cast<std::size_t>(grid_points), 0.0);
    for (int i = 1; i < grid_points; ++i)
        cdf_[static_cast<std::size_t>(i)] =
            cdf_[static_cast<std::size_t>(i - 1)] +
            0.5 * (density[static_cast<std::size_t>(i - 1)] + density[static_cast<std::size_t>(i)]) * step_;
    double total = cdf_.back();
    if (!(total > 0.0))
        throw InvalidArgumentError("igso3 density vanished on the grid");
    for (double& c : cdf_)
        c /= total;
}

double Igso3Table::sample_angle(double u) const {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.begin())
        return 0.0;
    if (it == cdf_.end())
        return kPi;
    std::size_t hi = static_cast<std::size_t>(it - cdf_.begin());
    double c0 = cdf_[hi - 1], c1 = cdf_[hi];
    double frac = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.0;
    return (static_cast<double>(hi - 1) + frac) * step_;
}

const Igso3Table& igso3_table(double sigma) {
    static std::mutex mu;
    static std::map<double, std::unique_ptr<Igso3Table>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(sigma);
    if (it == cache.end())
        it = cache.emplace(sigma, std::make_unique<Igso3Table>(sigma)).first;
    return *it->second;
}

Rotation igso3_sample(double sigma, Rng& rng) {
    if (!(sigma > 0.0))
        throw InvalidArgumentError("igso3 sigma must be positive");

    if (sigma < kIgso3GaussianCutoff) {
        double s = sigma * std::sqrt(2.0);
        for (;;) {
            Vec3 w{s * rng.normal(), s * rng.normal(), s * rng.normal()};
            if (w.norm() <= kPi)
                return so3_exp(w);
        }
    }

    const Igso3Table& table = igso3_table(sigma);
    double theta = table.sample_angle(rng.uniform());

    double z = 1.0 - 2.0 * rng.uniform();
    double phi = 2.0 * kPi * rng.uniform();
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    Vec3 axis{r * std::cos(phi), r * std::sin(phi), z};
    return so3_exp(axis * theta);
}

} // namespace polyconf::geom
