#include "bmatch/csr_graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bmatch {

BipartiteCsr from_edge_list(int nc, int nr, std::vector<Edge> edges,
                            std::string name) {
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [c, r] = edges[k];
    if (c < 0 || c >= nc)
      throw std::out_of_range("edge " + std::to_string(k) + " (c=" +
                              std::to_string(c) + ", r=" + std::to_string(r) +
                              "): column index outside [0, " +
                              std::to_string(nc) + ")");
    if (r < 0 || r >= nr)
      throw std::out_of_range("edge " + std::to_string(k) + " (c=" +
                              std::to_string(c) + ", r=" + std::to_string(r) +
                              "): row index outside [0, " +
                              std::to_string(nr) + ")");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  BipartiteCsr g;
  g.nc = nc;
  g.nr = nr;
  g.name = std::move(name);
  g.cxadj.assign(nc + 1, 0);
  g.cadj.reserve(edges.size());
  std::size_t pos = 0;
  for (int c = 0; c < nc; ++c) {
    while (pos < edges.size() && edges[pos].first == c) {
      g.cadj.push_back(edges[pos].second);
      ++pos;
    }
    g.cxadj[c + 1] = static_cast<std::int64_t>(g.cadj.size());
  }
  return g;
}

void check_csr(const BipartiteCsr& g) {
  if (g.nc < 0 || g.nr < 0) throw std::logic_error("negative vertex count");
  if (g.cxadj.size() != static_cast<std::size_t>(g.nc) + 1)
    throw std::logic_error("cxadj length is not nc + 1");
  if (g.cxadj.front() != 0) throw std::logic_error("cxadj[0] is not 0");
  if (g.cxadj.back() != static_cast<std::int64_t>(g.cadj.size()))
    throw std::logic_error("cxadj[nc] does not match cadj length");
  for (int c = 0; c < g.nc; ++c) {
    if (g.cxadj[c] > g.cxadj[c + 1])
      throw std::logic_error("cxadj decreases at column " + std::to_string(c));
    for (auto j = g.cxadj[c]; j < g.cxadj[c + 1]; ++j) {
      if (g.cadj[j] < 0 || g.cadj[j] >= g.nr)
        throw std::logic_error("row index out of range in column " +
                               std::to_string(c));
      if (j > g.cxadj[c] && g.cadj[j - 1] >= g.cadj[j])
        throw std::logic_error("column " + std::to_string(c) +
                               " slice is not strictly ascending");
    }
  }
}

namespace {

std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(perm[i], perm[pick(rng)]);
  }
  return perm;
}

}  // namespace

BipartiteCsr permute_random(const BipartiteCsr& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<int> cperm = random_permutation(g.nc, rng);
  const std::vector<int> rperm = random_permutation(g.nr, rng);
  std::vector<Edge> edges;
  edges.reserve(g.cadj.size());
  for (int c = 0; c < g.nc; ++c)
    for (auto j = g.cxadj[c]; j < g.cxadj[c + 1]; ++j)
      edges.emplace_back(cperm[c], rperm[g.cadj[j]]);
  return from_edge_list(g.nc, g.nr, std::move(edges), g.name);
}

BipartiteCsr generate_random_bipartite(int nc, int nr, double avg_degree,
                                       std::uint64_t seed) {
  BipartiteCsr empty;
  empty.nc = nc;
  empty.nr = nr;
  empty.cxadj.assign(std::max(nc, 0) + 1, 0);
  if (nc <= 0 || nr <= 0 || avg_degree <= 0) return empty;

  const long long candidates = std::llround(nc * avg_degree);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> col_pick(0, nc - 1);
  std::uniform_int_distribution<int> row_pick(0, nr - 1);
  std::vector<Edge> edges;
  edges.reserve(candidates);
  for (long long k = 0; k < candidates; ++k) {
    const int c = col_pick(rng);
    const int r = row_pick(rng);
    edges.emplace_back(c, r);
  }
  return from_edge_list(nc, nr, std::move(edges));
}

}  // namespace bmatch
