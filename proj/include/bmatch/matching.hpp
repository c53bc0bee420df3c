#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bmatch/csr_graph.hpp"

namespace bmatch {

// Matching over a bipartite graph. rmatch[r] is the column matched to row r,
// -1 when r is unmatched, -2 while r is a pending augmenting-path endpoint
// inside a kernel phase. cmatch[c] is the row matched to column c or -1.
// In a clean state no -2 remains and the two arrays are mutually consistent.
struct MatchingState {
  std::vector<int> rmatch;
  std::vector<int> cmatch;

  static MatchingState unmatched(int nc, int nr) {
    MatchingState m;
    m.rmatch.assign(nr, -1);
    m.cmatch.assign(nc, -1);
    return m;
  }
};

// Greedy first-fit initialization: each column, in ascending index order,
// takes its first currently unmatched neighbor row.
MatchingState cheap_matching(const BipartiteCsr& g);

// Number of matched rows. Requires a clean state.
long long cardinality(const MatchingState& m);

struct Violation {
  enum Kind { PendingFlag, Asymmetry, NonEdge, OutOfRange } kind;
  int row = -1;
  int col = -1;
  std::string describe() const;
};

struct ValidityReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

// Lists every violated matching invariant; an empty report means valid.
// Violations are data, not faults.
ValidityReport validate(const BipartiteCsr& g, const MatchingState& m);

// True iff no augmenting path exists (one alternating BFS from all unmatched
// columns). Throws std::invalid_argument when the state is invalid.
bool is_maximum(const BipartiteCsr& g, const MatchingState& m);

// Maximum matching cardinality by repeated depth-first augmentation from
// each unmatched column. Independent oracle for small instances.
long long brute_force_maximum(const BipartiteCsr& g);

// Matching dump format: one line `r <row> <col>` per matched pair.
void write_matching(const MatchingState& m, std::ostream& out);
MatchingState read_matching(int nc, int nr, std::istream& in);

}  // namespace bmatch
