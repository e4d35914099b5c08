#ifndef POLYCONF_IO_DECOMPOSITION_FILE_HPP
#define POLYCONF_IO_DECOMPOSITION_FILE_HPP

#include <string>
#include <vector>

#include "polyconf/repr/conformation.hpp"

namespace polyconf::io {

// JSON document holding one decomposition (standardized units + frames) per
// input conformation, hash-bound to its polymer spec.
std::string serialize_decompositions(const std::vector<repr::DecompositionResult>& entries,
                                     const repr::PolymerGraph& graph);

void write_decompositions(const std::vector<repr::DecompositionResult>& entries,
                          const repr::PolymerGraph& graph, const std::string& path);

std::vector<repr::DecompositionResult> parse_decompositions(const std::string& text,
                                                            const repr::PolymerGraph& graph,
                                                            const std::string& filename);

std::vector<repr::DecompositionResult> read_decompositions(const std::string& path,
                                                           const repr::PolymerGraph& graph);

} // namespace polyconf::io

#endif
