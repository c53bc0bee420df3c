#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bmatch {

// An edge as a (column vertex, row vertex) pair.
using Edge = std::pair<int, int>;

// Bipartite graph over nc column vertices and nr row vertices in compressed
// sparse column form: the rows adjacent to column c are
// cadj[cxadj[c] .. cxadj[c+1]), sorted ascending and duplicate-free.
// Immutable after construction.
struct BipartiteCsr {
  int nc = 0;
  int nr = 0;
  std::vector<std::int64_t> cxadj;  // length nc + 1
  std::vector<int> cadj;
  std::string name;

  std::int64_t num_edges() const { return cxadj.empty() ? 0 : cxadj.back(); }

  std::span<const int> column(int c) const {
    return {cadj.data() + cxadj[c],
            static_cast<std::size_t>(cxadj[c + 1] - cxadj[c])};
  }
};

// Builds a graph from an arbitrary edge list; per-column slices come out
// sorted and deduplicated. Throws std::out_of_range naming the offending
// edge when an index is outside [0, nc) x [0, nr).
BipartiteCsr from_edge_list(int nc, int nr, std::vector<Edge> edges,
                            std::string name = {});

// Walks the CSR invariants and throws std::logic_error on any violation.
void check_csr(const BipartiteCsr& g);

// Relabels columns and rows by independent uniform random permutations
// drawn from a generator seeded with seed. The result is isomorphic to g.
BipartiteCsr permute_random(const BipartiteCsr& g, std::uint64_t seed);

// Draws round(nc * avg_degree) candidate edges uniformly with replacement
// and deduplicates. Deterministic in seed.
BipartiteCsr generate_random_bipartite(int nc, int nr, double avg_degree,
                                       std::uint64_t seed);

}  // namespace bmatch
