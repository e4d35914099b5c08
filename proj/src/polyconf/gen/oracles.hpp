#ifndef POLYCONF_GEN_ORACLES_HPP
#define POLYCONF_GEN_ORACLES_HPP

#include <optional>
#include <span>
#include <vector>

#include "polyconf/gen/embedding.hpp"
#include "polyconf/geom/mat3.hpp"
#include "polyconf/geom/rotation.hpp"
#include "polyconf/repr/conformation.hpp"

namespace polyconf::gen {

// Pluggable stand-ins for the trained networks. Implementations must be
// deterministic functions of their inputs and safe to call concurrently.

// Produces per-unit condition embeddings from the graph and the currently
// known unit conformations (nullopt rows are masked units; their embeddings
// must be computed without access to any coordinates).
class EncoderOracle {
public:
    virtual ~EncoderOracle() = default;
    virtual EmbeddingMatrix encode(const repr::PolymerGraph& graph,
                                   const std::vector<std::optional<repr::UnitConformation>>& units) const = 0;
};

// Predicts the noise component of a unit's noisy torsion vector.
class TorsionDenoiser {
public:
    virtual ~TorsionDenoiser() = default;
    virtual std::vector<double> predict(std::span<const double> noisy_torsions, int timestep,
                                        std::span<const double> condition, int unit_index) const = 0;
};

// Predicts clean rotations for every unit from the noisy orientations
// (rotations paired with overlap-derived translations).
class RotationDenoiser {
public:
    virtual ~RotationDenoiser() = default;
    virtual std::vector<geom::Mat3> predict(const std::vector<geom::RigidTransform>& noisy_orientations,
                                            int timestep, const EmbeddingMatrix& condition) const = 0;
};

// Deterministic featurization encoder: per-unit raw features (atom count,
// bond count, known-coordinates flag, chain position) expanded to a fixed
// width by a seeded random projection. Exercises the conditioning plumbing
// without any training.
class ToyEncoderOracle : public EncoderOracle {
public:
    explicit ToyEncoderOracle(int dim = 32, std::uint64_t seed = 0x706f6c79636f6e66ULL);
    EmbeddingMatrix encode(const repr::PolymerGraph& graph,
                           const std::vector<std::optional<repr::UnitConformation>>& units) const override;

private:
    int dim_;
    std::vector<double> projection_; // 4 x dim
};

// Noise-free prior denoisers: the torsion one predicts zero noise, the
// rotation one returns the current rotation unchanged. Reverse sampling with
// these draws from the annealed noise prior.
class PriorTorsionDenoiser : public TorsionDenoiser {
public:
    std::vector<double> predict(std::span<const double> noisy_torsions, int timestep,
                                std::span<const double> condition, int unit_index) const override;
};

class PriorRotationDenoiser : public RotationDenoiser {
public:
    std::vector<geom::Mat3> predict(const std::vector<geom::RigidTransform>& noisy_orientations,
                                    int timestep, const EmbeddingMatrix& condition) const override;
};

// Constant rotation prediction (identity by default).
class ConstantRotationDenoiser : public RotationDenoiser {
public:
    explicit ConstantRotationDenoiser(geom::Rotation value = geom::Rotation::identity())
        : value_(value) {}
    std::vector<geom::Mat3> predict(const std::vector<geom::RigidTransform>& noisy_orientations,
                                    int timestep, const EmbeddingMatrix& condition) const override;

private:
    geom::Rotation value_;
};

// Teacher oracles wrapping known targets; used to verify that the reverse
// samplers converge onto a perfectly denoised signal.
class GroundTruthTorsionDenoiser : public TorsionDenoiser {
public:
    // `sigmas` indexed by timestep: sigma_torsion(t) of the driving schedule.
    GroundTruthTorsionDenoiser(std::vector<std::vector<double>> targets, std::vector<double> sigmas)
        : targets_(std::move(targets)), sigmas_(std::move(sigmas)) {}
    std::vector<double> predict(std::span<const double> noisy_torsions, int timestep,
                                std::span<const double> condition, int unit_index) const override;

private:
    std::vector<std::vector<double>> targets_; // per unit
    std::vector<double> sigmas_;
};

class GroundTruthRotationDenoiser : public RotationDenoiser {
public:
    explicit GroundTruthRotationDenoiser(std::vector<geom::Rotation> targets)
        : targets_(std::move(targets)) {}
    std::vector<geom::Mat3> predict(const std::vector<geom::RigidTransform>& noisy_orientations,
                                    int timestep, const EmbeddingMatrix& condition) const override;

private:
    std::vector<geom::Rotation> targets_;
};

} // namespace polyconf::gen

#endif
