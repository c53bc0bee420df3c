#pragma once

#include <iosfwd>
#include <string>

#include "bmatch/csr_graph.hpp"
#include "bmatch/parse_error.hpp"

namespace bmatch {

// Reads a Matrix Market coordinate stream into a bipartite graph: matrix
// rows become row vertices, matrix columns become column vertices, 1-based
// indices become 0-based. pattern/real/integer fields are accepted (values
// discarded); general and symmetric symmetries are accepted, with symmetric
// off-diagonal entries mirrored. Throws ParseError on malformed input.
BipartiteCsr read_matrix_market(std::istream& in);

// read_matrix_market on a file; the graph name is the file stem.
BipartiteCsr load_matrix_market(const std::string& path);

// Writes the graph as coordinate pattern general, one entry per edge.
void write_matrix_market(const BipartiteCsr& g, std::ostream& out);

}  // namespace bmatch
