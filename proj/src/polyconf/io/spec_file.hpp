#ifndef POLYCONF_IO_SPEC_FILE_HPP
#define POLYCONF_IO_SPEC_FILE_HPP

#include <optional>
#include <string>

#include "polyconf/repr/topology.hpp"

namespace polyconf::io {

// Parsed polymer spec document: the interior unit topology, the chain length,
// and optional head/tail overrides.
struct PolymerSpec {
    std::string name = "polymer";
    int n_units = 2;
    double junction_threshold = 2.0;
    repr::UnitTopology unit;
    std::optional<repr::UnitTopology> head;
    std::optional<repr::UnitTopology> tail;

    repr::PolymerGraph build_graph() const {
        return repr::PolymerGraph::build(unit, n_units, head ? &*head : nullptr,
                                         tail ? &*tail : nullptr, junction_threshold);
    }
};

// Parses the JSON spec document. Diagnostics name the file, the line (for
// syntax errors) or field path (for rule violations), and the violated rule.
PolymerSpec parse_polymer_spec_text(const std::string& text, const std::string& filename);
PolymerSpec parse_polymer_spec(const std::string& path);

std::string serialize_polymer_spec(const PolymerSpec& spec);
void write_polymer_spec(const PolymerSpec& spec, const std::string& path);

} // namespace polyconf::io

#endif
