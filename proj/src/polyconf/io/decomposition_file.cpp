#include "polyconf/io/decomposition_file.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "polyconf/error.hpp"
#include "polyconf/io/text_format.hpp"

namespace polyconf::io {

using nlohmann::json;

std::string serialize_decompositions(const std::vector<repr::DecompositionResult>& entries,
                                     const repr::PolymerGraph& graph) {
    json j;
    j["format"] = "polyconf-decomposition";
    j["version"] = 1;
    j["spec_hash"] = graph.spec_hash_hex();
    json jentries = json::array();
    for (const repr::DecompositionResult& dec : entries) {
        if (static_cast<int>(dec.units.size()) != graph.n_units() ||
            static_cast<int>(dec.frames.size()) != graph.n_units())
            throw SizeMismatchError("decomposition entry does not match the graph");
        json je;
        json units = json::array();
        for (const repr::UnitConformation& u : dec.units) {
            json coords = json::array();
            for (const geom::Vec3& c : u.coords)
                coords.push_back({round_real(c.x), round_real(c.y), round_real(c.z)});
            units.push_back({{"unit", u.unit_index + 1}, {"coords", coords}});
        }
        je["units"] = units;
        json frames = json::array();
        for (const geom::RigidTransform& f : dec.frames) {
            json rot = json::array();
            for (int r = 0; r < 3; ++r)
                rot.push_back({round_real(f.rotation.matrix()(r, 0)),
                               round_real(f.rotation.matrix()(r, 1)),
                               round_real(f.rotation.matrix()(r, 2))});
            frames.push_back({{"rotation", rot},
                              {"translation",
                               {round_real(f.translation.x), round_real(f.translation.y),
                                round_real(f.translation.z)}}});
        }
        je["frames"] = frames;
        jentries.push_back(je);
    }
    j["entries"] = jentries;
    return j.dump(1) + "\n";
}

void write_decompositions(const std::vector<repr::DecompositionResult>& entries,
                          const repr::PolymerGraph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write decomposition file '" + path + "'");
    out << serialize_decompositions(entries, graph);
}

std::vector<repr::DecompositionResult> parse_decompositions(const std::string& text,
                                                            const repr::PolymerGraph& graph,
                                                            const std::string& filename) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw polyconf::ParseError(filename + ": " + e.what());
    }
    if (j.value("format", "") != "polyconf-decomposition" || j.value("version", 0) != 1)
        throw polyconf::ParseError(filename + ": expected a polyconf-decomposition v1 document");
    if (j.value("spec_hash", "") != graph.spec_hash_hex())
        throw HashMismatchError(filename + ": decomposition was written for spec hash " +
                                j.value("spec_hash", "?") + " but the supplied graph has " +
                                graph.spec_hash_hex());

    std::vector<repr::DecompositionResult> out;
    for (const json& je : j.at("entries")) {
        repr::DecompositionResult dec;
        const json& units = je.at("units");
        const json& frames = je.at("frames");
        if (static_cast<int>(units.size()) != graph.n_units() ||
            static_cast<int>(frames.size()) != graph.n_units())
            throw MalformedRecordError(filename + ": entry unit/frame count does not match the graph");
        for (int i = 0; i < graph.n_units(); ++i) {
            const json& ju = units[static_cast<std::size_t>(i)];
            repr::UnitConformation u;
            u.unit_index = ju.at("unit").get<int>() - 1;
            if (u.unit_index != i)
                throw MalformedRecordError(filename + ": unit entries out of order");
            for (const json& c : ju.at("coords"))
                u.coords.push_back({c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>()});
            if (u.atom_count() != graph.unit(i).atom_count())
                throw MalformedRecordError(filename + ": unit " + std::to_string(i + 1) +
                                           " has a wrong atom count");
            dec.units.push_back(std::move(u));

            const json& jf = frames[static_cast<std::size_t>(i)];
            geom::Mat3 m;
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    m(r, c) = jf.at("rotation").at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>();
            geom::RigidTransform f;
            // Serialized rotations are rounded to 12 digits; re-validate loosely
            // and project is unnecessary at this tolerance.
            f.rotation = geom::Rotation::from_matrix(m, 1e-6);
            const json& t = jf.at("translation");
            f.translation = {t.at(0).get<double>(), t.at(1).get<double>(), t.at(2).get<double>()};
            dec.frames.push_back(f);
        }
        out.push_back(std::move(dec));
    }
    return out;
}

std::vector<repr::DecompositionResult> read_decompositions(const std::string& path,
                                                           const repr::PolymerGraph& graph) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open decomposition file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_decompositions(buf.str(), graph, path);
}

} // namespace polyconf::io
