#include "polyconf/gen/oracles.hpp"

#include <string>

#include "polyconf/error.hpp"
#include "polyconf/repr/torsion.hpp"
#include "polyconf/rng.hpp"

namespace polyconf::gen {

ToyEncoderOracle::ToyEncoderOracle(int dim, std::uint64_t seed) : dim_(dim) {
    Rng rng(seed);
    projection_.resize(4 * static_cast<std::size_t>(dim));
    for (double& v : projection_)
        v = rng.normal();
}

EmbeddingMatrix ToyEncoderOracle::encode(
    const repr::PolymerGraph& graph,
    const std::vector<std::optional<repr::UnitConformation>>& units) const {
    if (static_cast<int>(units.size()) != graph.n_units())
        throw OracleFailureError("encoder input length does not match the graph");

    EmbeddingMatrix out(graph.n_units(), dim_);
    for (int i = 0; i < graph.n_units(); ++i) {
        const repr::UnitTopology& topo = graph.unit(i);
        double features[4] = {
            static_cast<double>(topo.atom_count()),
            static_cast<double>(topo.bonds.size()),
            units[static_cast<std::size_t>(i)].has_value() ? 1.0 : 0.0,
            static_cast<double>(i + 1) / graph.n_units(),
        };
        for (int c = 0; c < dim_; ++c) {
            double acc = 0.0;
            for (int f = 0; f < 4; ++f)
                acc += features[f] *
                       projection_[static_cast<std::size_t>(f) * static_cast<std::size_t>(dim_) +
                                   static_cast<std::size_t>(c)];
            out.at(i, c) = acc;
        }
    }
    return out;
}

std::vector<double> PriorTorsionDenoiser::predict(std::span<const double> noisy_torsions, int,
                                                  std::span<const double>, int) const {
    return std::vector<double>(noisy_torsions.size(), 0.0);
}

std::vector<geom::Mat3> PriorRotationDenoiser::predict(
    const std::vector<geom::RigidTransform>& noisy_orientations, int, const EmbeddingMatrix&) const {
    std::vector<geom::Mat3> out;
    out.reserve(noisy_orientations.size());
    for (const geom::RigidTransform& o : noisy_orientations)
        out.push_back(o.rotation.matrix());
    return out;
}

std::vector<geom::Mat3> ConstantRotationDenoiser::predict(
    const std::vector<geom::RigidTransform>& noisy_orientations, int, const EmbeddingMatrix&) const {
    return std::vector<geom::Mat3>(noisy_orientations.size(), value_.matrix());
}

std::vector<double> GroundTruthTorsionDenoiser::predict(std::span<const double> noisy_torsions,
                                                        int timestep, std::span<const double>,
                                                        int unit_index) const {
    if (unit_index < 0 || unit_index >= static_cast<int>(targets_.size()))
        throw OracleFailureError("ground-truth torsion oracle has no unit " +
                                 std::to_string(unit_index + 1));
    const std::vector<double>& target = targets_[static_cast<std::size_t>(unit_index)];
    if (target.size() != noisy_torsions.size())
        throw OracleFailureError("torsion dimension mismatch in ground-truth oracle");
    double sigma = sigmas_[static_cast<std::size_t>(timestep)];
    std::vector<double> out(noisy_torsions.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double diff = repr::wrap_angle(noisy_torsions[i] - target[i]);
        out[i] = sigma > 0.0 ? diff / sigma : 0.0;
    }
    return out;
}

std::vector<geom::Mat3> GroundTruthRotationDenoiser::predict(
    const std::vector<geom::RigidTransform>& noisy_orientations, int, const EmbeddingMatrix&) const {
    if (noisy_orientations.size() != targets_.size())
        throw OracleFailureError("rotation count mismatch in ground-truth oracle");
    std::vector<geom::Mat3> out;
    out.reserve(targets_.size());
    for (const geom::Rotation& r : targets_)
        out.push_back(r.matrix());
    return out;
}

} // namespace polyconf::gen
