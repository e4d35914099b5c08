#ifndef POLYCONF_IO_EXTERNAL_ORACLES_HPP
#define POLYCONF_IO_EXTERNAL_ORACLES_HPP

#include <string>

#include "polyconf/gen/oracles.hpp"
#include "polyconf/metrics/toy_energy.hpp"

namespace polyconf::io {

// Energy oracle backed by an external command. The command is invoked once
// per conformation with the path of a conformation file as its single
// argument and must print exactly one real number on stdout.
class ExternalEnergyOracle : public metrics::EnergyOracle {
public:
    explicit ExternalEnergyOracle(std::string command) : command_(std::move(command)) {}
    double energy(const repr::PolymerConformation& conf,
                  const repr::PolymerGraph& graph) const override;
    std::string id() const override { return "external:" + command_; }

private:
    std::string command_;
};

// Denoiser adapters for plugging in trained models as subprocesses. Each
// call writes a JSON request file and invokes `command <request> <response>`;
// the command must write the JSON response and exit 0.
//
// Torsion request:  {"kind": "torsion_denoise", "timestep": t,
//                    "unit_index": i (1-based), "noisy_torsions": [...],
//                    "condition": [...]}
// Torsion response: {"noise": [...]}
//
// Rotation request:  {"kind": "rotation_denoise", "timestep": t,
//                     "orientations": [{"rotation": [[..3x3..]],
//                                       "translation": [x, y, z]}, ...],
//                     "condition": [[...], ...]}
// Rotation response: {"rotations": [[[..3x3..]], ...]}
class SubprocessTorsionDenoiser : public gen::TorsionDenoiser {
public:
    explicit SubprocessTorsionDenoiser(std::string command) : command_(std::move(command)) {}
    std::vector<double> predict(std::span<const double> noisy_torsions, int timestep,
                                std::span<const double> condition, int unit_index) const override;

private:
    std::string command_;
};

class SubprocessRotationDenoiser : public gen::RotationDenoiser {
public:
    explicit SubprocessRotationDenoiser(std::string command) : command_(std::move(command)) {}
    std::vector<geom::Mat3> predict(const std::vector<geom::RigidTransform>& noisy_orientations,
                                    int timestep, const gen::EmbeddingMatrix& condition) const override;

private:
    std::string command_;
};

// Encoder adapter.
//
// Request:  {"kind": "encode", "spec_hash": "<hex16>", "n_units": Nu,
//            "units": [null | {"unit": i (1-based), "coords": [[x,y,z], ...]},
//                      ...]}   (null marks a masked unit)
// Response: {"embedding": [[...], ...]}  (one row per unit, constant width)
class SubprocessEncoderOracle : public gen::EncoderOracle {
public:
    explicit SubprocessEncoderOracle(std::string command) : command_(std::move(command)) {}
    gen::EmbeddingMatrix encode(
        const repr::PolymerGraph& graph,
        const std::vector<std::optional<repr::UnitConformation>>& units) const override;

private:
    std::string command_;
};

} // namespace polyconf::io

#endif
