#include "polyconf/io/spec_file.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "polyconf/error.hpp"

namespace polyconf::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& filename, const std::string& where, const std::string& rule) {
    throw polyconf::ParseError(filename + ": " + where + ": " + rule);
}

int line_of_byte(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n')
            ++line;
    return line;
}

repr::UnitTopology parse_unit(const json& j, const std::string& filename, const std::string& field) {
    repr::UnitTopology topo;
    if (!j.is_object())
        fail(filename, field, "must be an object");
    if (!j.contains("elements") || !j["elements"].is_array() || j["elements"].empty())
        fail(filename, field + ".elements", "required non-empty array of element symbols");
    for (const auto& e : j["elements"]) {
        if (!e.is_string())
            fail(filename, field + ".elements", "element symbols must be strings");
        topo.elements.push_back(e.get<std::string>());
    }
    if (!j.contains("bonds") || !j["bonds"].is_array())
        fail(filename, field + ".bonds", "required array of [i, j, order] triples");
    for (const auto& b : j["bonds"]) {
        if (!b.is_array() || b.size() < 2 || b.size() > 3 || !b[0].is_number_integer() ||
            !b[1].is_number_integer())
            fail(filename, field + ".bonds", "each bond must be [i, j] or [i, j, order]");
        repr::Bond bond;
        bond.a = b[0].get<int>();
        bond.b = b[1].get<int>();
        bond.order = b.size() == 3 ? b[2].get<int>() : 1;
        topo.bonds.push_back(bond);
    }
    if (!j.contains("key_atoms") || !j["key_atoms"].is_object())
        fail(filename, field + ".key_atoms", "required object with roles atom1..atom4");
    static const char* roles[4] = {"atom1", "atom2", "atom3", "atom4"};
    for (int r = 0; r < 4; ++r) {
        const auto& ka = j["key_atoms"];
        if (!ka.contains(roles[r]) || !ka[roles[r]].is_number_integer())
            fail(filename, field + ".key_atoms." + roles[r], "required key-atom role is missing");
        topo.key_atoms[static_cast<std::size_t>(r)] = ka[roles[r]].get<int>();
    }
    try {
        topo.validate();
    } catch (const Error& e) {
        throw InvalidUnitSpecError(filename + ": " + field + ": " + e.what());
    }
    return topo;
}

} // namespace

PolymerSpec parse_polymer_spec_text(const std::string& text, const std::string& filename) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(filename, "line " + std::to_string(line_of_byte(text, e.byte)), e.what());
    }
    if (!j.is_object() || j.value("format", "") != "polyconf-spec")
        fail(filename, "format", "expected a polyconf-spec document");
    if (j.value("version", 0) != 1)
        fail(filename, "version", "unsupported spec version");

    PolymerSpec spec;
    spec.name = j.value("name", "polymer");
    if (!j.contains("n_units") || !j["n_units"].is_number_integer())
        fail(filename, "n_units", "required integer");
    spec.n_units = j["n_units"].get<int>();
    if (spec.n_units < 2)
        throw InvalidUnitSpecError(filename + ": n_units: a chain needs at least 2 repeating units");
    spec.junction_threshold = j.value("junction_threshold", 2.0);
    if (!j.contains("unit"))
        fail(filename, "unit", "required repeating-unit block");
    spec.unit = parse_unit(j["unit"], filename, "unit");
    if (j.contains("head_unit"))
        spec.head = parse_unit(j["head_unit"], filename, "head_unit");
    if (j.contains("tail_unit"))
        spec.tail = parse_unit(j["tail_unit"], filename, "tail_unit");

    try {
        spec.build_graph();
    } catch (const Error& e) {
        throw InvalidUnitSpecError(filename + ": " + e.what());
    }
    return spec;
}

PolymerSpec parse_polymer_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_polymer_spec_text(buf.str(), path);
}

namespace {

json unit_to_json(const repr::UnitTopology& topo) {
    json j;
    j["elements"] = topo.elements;
    json bonds = json::array();
    for (const repr::Bond& b : topo.bonds)
        bonds.push_back({b.a, b.b, b.order});
    j["bonds"] = bonds;
    j["key_atoms"] = {{"atom1", topo.key(repr::kAtom1)},
                      {"atom2", topo.key(repr::kAtom2)},
                      {"atom3", topo.key(repr::kAtom3)},
                      {"atom4", topo.key(repr::kAtom4)}};
    return j;
}

} // namespace

std::string serialize_polymer_spec(const PolymerSpec& spec) {
    json j;
    j["format"] = "polyconf-spec";
    j["version"] = 1;
    j["name"] = spec.name;
    j["n_units"] = spec.n_units;
    j["junction_threshold"] = spec.junction_threshold;
    j["unit"] = unit_to_json(spec.unit);
    if (spec.head)
        j["head_unit"] = unit_to_json(*spec.head);
    if (spec.tail)
        j["tail_unit"] = unit_to_json(*spec.tail);
    return j.dump(2) + "\n";
}

void write_polymer_spec(const PolymerSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write spec file '" + path + "'");
    out << serialize_polymer_spec(spec);
}

} // namespace polyconf::io
