#ifndef POLYCONF_IO_CONFORMATION_FILE_HPP
#define POLYCONF_IO_CONFORMATION_FILE_HPP

#include <string>
#include <vector>

#include "polyconf/repr/conformation.hpp"

namespace polyconf::io {

// Line-oriented multi-conformation text format:
//
//   polyconf-conformations 1
//   spec_hash <hex16>
//   n_units <Nu>
//   n_atoms <N>
//   conformation <1-based index>
//   <unit (1-based)> <local (0-based)> <element> <x> <y> <z>
//   ...
//   end
//
// Atoms appear in global index order; each row carries the owning unit and
// the atom's local index inside it. Coordinates use 12 significant digits.

std::string serialize_conformations(const std::vector<repr::PolymerConformation>& confs,
                                    const repr::PolymerGraph& graph);

void write_conformations(const std::vector<repr::PolymerConformation>& confs,
                         const repr::PolymerGraph& graph, const std::string& path);

// Throws HashMismatchError when the header hash does not match `graph`,
// MalformedRecordError (with a line number) on structural violations.
std::vector<repr::PolymerConformation> parse_conformations(const std::string& text,
                                                           const repr::PolymerGraph& graph,
                                                           const std::string& filename);

std::vector<repr::PolymerConformation> read_conformations(const std::string& path,
                                                          const repr::PolymerGraph& graph);

} // namespace polyconf::io

#endif
