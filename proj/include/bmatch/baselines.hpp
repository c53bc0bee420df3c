#pragma once

#include "bmatch/csr_graph.hpp"
#include "bmatch/matching.hpp"

namespace bmatch {

// Hopcroft-Karp from a supplied initial matching: phases of layered BFS from
// all unmatched columns followed by layered DFS along a maximal set of
// vertex-disjoint shortest augmenting paths.
MatchingState hopcroft_karp(const BipartiteCsr& g, MatchingState init);

// Pothen-Fan from a supplied initial matching: depth-first augmentation from
// each unmatched column with one-step lookahead for an adjacent unmatched
// row and a rotating adjacency start pointer across searches.
MatchingState pfp(const BipartiteCsr& g, MatchingState init);

}  // namespace bmatch
