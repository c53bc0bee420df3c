#include "bmatch/baselines.hpp"

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

namespace bmatch {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

// Layered DFS from c0 along dist layers; dead-end columns get dist = inf so
// later searches of the same phase skip them. iter[] keeps per-column scan
// positions across searches, Dinic style.
bool hk_augment(const BipartiteCsr& g, int c0, MatchingState& m,
                std::vector<int>& dist, std::vector<std::int64_t>& iter,
                std::vector<int>& stack, std::vector<int>& rows) {
  stack.clear();
  rows.clear();
  stack.push_back(c0);
  while (!stack.empty()) {
    const int c = stack.back();
    bool advanced = false;
    while (iter[c] < g.cxadj[c + 1]) {
      const auto j = iter[c]++;
      const int r = g.cadj[j];
      const int next = m.rmatch[r];
      if (next < 0) {
        rows.push_back(r);
        for (std::size_t k = 0; k < stack.size(); ++k) {
          m.cmatch[stack[k]] = rows[k];
          m.rmatch[rows[k]] = stack[k];
        }
        return true;
      }
      if (dist[next] == dist[c] + 1) {
        rows.push_back(r);
        stack.push_back(next);
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      dist[c] = kInf;
      stack.pop_back();
      if (!rows.empty()) rows.pop_back();
    }
  }
  return false;
}

}  // namespace

MatchingState hopcroft_karp(const BipartiteCsr& g, MatchingState init) {
  MatchingState m = std::move(init);
  std::vector<int> dist(g.nc);
  std::vector<std::int64_t> iter(g.nc);
  std::vector<int> queue, stack, rows;
  queue.reserve(g.nc);

  for (;;) {
    // Layered BFS over columns; stops layering past the first free row.
    std::fill(dist.begin(), dist.end(), kInf);
    queue.clear();
    for (int c = 0; c < g.nc; ++c)
      if (m.cmatch[c] < 0) {
        dist[c] = 0;
        queue.push_back(c);
      }
    bool found_free_row = false;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int c = queue[qi];
      for (auto j = g.cxadj[c]; j < g.cxadj[c + 1]; ++j) {
        const int next = m.rmatch[g.cadj[j]];
        if (next < 0) {
          found_free_row = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[c] + 1;
          queue.push_back(next);
        }
      }
    }
    if (!found_free_row) break;

    for (int c = 0; c < g.nc; ++c) iter[c] = g.cxadj[c];
    for (int c = 0; c < g.nc; ++c)
      if (m.cmatch[c] < 0 && dist[c] == 0)
        hk_augment(g, c, m, dist, iter, stack, rows);
  }
  return m;
}

namespace {

struct PfFrame {
  int col;
  std::int64_t degree;
  std::int64_t base;  // rotating start offset into the column slice
  std::int64_t step;
};

// One search with shared visited stamps. look[] is the lookahead cursor; a
// row it skips is matched and stays matched, so the cursor never revisits.
bool pf_search(const BipartiteCsr& g, int c0, MatchingState& m,
               std::vector<std::int64_t>& look, std::vector<std::int64_t>& fair,
               std::vector<int>& visited, int stamp,
               std::vector<PfFrame>& stack, std::vector<int>& rows) {
  stack.clear();
  rows.clear();
  visited[c0] = stamp;
  stack.push_back({c0, g.cxadj[c0 + 1] - g.cxadj[c0], fair[c0], 0});
  while (!stack.empty()) {
    PfFrame& f = stack.back();
    if (f.step == 0) {
      // Lookahead: take a directly adjacent unmatched row if one remains.
      while (look[f.col] < g.cxadj[f.col + 1]) {
        const int r = g.cadj[look[f.col]];
        if (m.rmatch[r] < 0) {
          rows.push_back(r);
          for (std::size_t k = 0; k < stack.size(); ++k) {
            m.cmatch[stack[k].col] = rows[k];
            m.rmatch[rows[k]] = stack[k].col;
          }
          return true;
        }
        ++look[f.col];
      }
    }
    bool advanced = false;
    while (f.step < f.degree) {
      const auto pos = g.cxadj[f.col] + (f.base + f.step) % f.degree;
      ++f.step;
      const int r = g.cadj[pos];
      const int next = m.rmatch[r];  // matched: the lookahead ran dry
      if (visited[next] == stamp) continue;
      visited[next] = stamp;
      fair[f.col] = (f.base + f.step) % f.degree;
      rows.push_back(r);
      stack.push_back({next, g.cxadj[next + 1] - g.cxadj[next], fair[next], 0});
      advanced = true;
      break;
    }
    if (!advanced) {
      stack.pop_back();
      if (!rows.empty()) rows.pop_back();
    }
  }
  return false;
}

}  // namespace

MatchingState pfp(const BipartiteCsr& g, MatchingState init) {
  MatchingState m = std::move(init);
  std::vector<std::int64_t> look(g.nc);
  std::vector<std::int64_t> fair(g.nc, 0);
  for (int c = 0; c < g.nc; ++c) look[c] = g.cxadj[c];
  std::vector<int> visited(g.nc, 0);
  std::vector<PfFrame> stack;
  std::vector<int> rows;

  int stamp = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    ++stamp;
    for (int c = 0; c < g.nc; ++c) {
      if (m.cmatch[c] >= 0 || visited[c] == stamp) continue;
      if (pf_search(g, c, m, look, fair, visited, stamp, stack, rows))
        progress = true;
    }
  }
  return m;
}

}  // namespace bmatch
