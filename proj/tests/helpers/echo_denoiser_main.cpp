// Denoiser-protocol test helper. Implements the subprocess exchange with the
// builtin prior behaviour: zero noise for torsions, echoed rotations for
// orientations. Sampling through this adapter must match the builtin priors
// bit for bit.

#include <fstream>
#include <json.hpp>

using nlohmann::json;

int main(int argc, char** argv) {
    if (argc != 3)
        return 1;
    std::ifstream in(argv[1]);
    if (!in)
        return 1;
    json request = json::parse(in, nullptr, false);
    if (request.is_discarded())
        return 1;

    json response;
    std::string kind = request.value("kind", "");
    if (kind == "torsion_denoise") {
        response["noise"] = std::vector<double>(request.at("noisy_torsions").size(), 0.0);
    } else if (kind == "rotation_denoise") {
        json rotations = json::array();
        for (const json& o : request.at("orientations"))
            rotations.push_back(o.at("rotation"));
        response["rotations"] = rotations;
    } else if (kind == "encode") {
        // Row per unit: [1-based index, known flag, atom count or 0].
        json rows = json::array();
        int index = 1;
        for (const json& u : request.at("units")) {
            double known = u.is_null() ? 0.0 : 1.0;
            double atoms = u.is_null() ? 0.0 : static_cast<double>(u.at("coords").size());
            rows.push_back({static_cast<double>(index), known, atoms});
            ++index;
        }
        response["embedding"] = rows;
    } else {
        return 1;
    }

    std::ofstream out(argv[2]);
    out << response.dump();
    return out ? 0 : 1;
}
