#include "bmatch/matching.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bmatch/parse_error.hpp"

namespace bmatch {

MatchingState cheap_matching(const BipartiteCsr& g) {
  MatchingState m = MatchingState::unmatched(g.nc, g.nr);
  for (int c = 0; c < g.nc; ++c) {
    for (auto j = g.cxadj[c]; j < g.cxadj[c + 1]; ++j) {
      const int r = g.cadj[j];
      if (m.rmatch[r] < 0) {
        m.rmatch[r] = c;
        m.cmatch[c] = r;
        break;
      }
    }
  }
  return m;
}

long long cardinality(const MatchingState& m) {
  return std::count_if(m.rmatch.begin(), m.rmatch.end(),
                       [](int c) { return c >= 0; });
}

std::string Violation::describe() const {
  switch (kind) {
    case PendingFlag:
      return "row " + std::to_string(row) + " still flagged -2";
    case Asymmetry:
      return "pair (r" + std::to_string(row) + ", c" + std::to_string(col) +
             ") recorded on one side only";
    case NonEdge:
      return "pair (r" + std::to_string(row) + ", c" + std::to_string(col) +
             ") is not an edge";
    case OutOfRange:
      return "entry for " +
             (row >= 0 ? "row " + std::to_string(row)
                       : "column " + std::to_string(col)) +
             " is out of range";
  }
  return "unknown violation";
}

std::string ValidityReport::describe() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.describe();
  }
  return out;
}

namespace {

bool has_edge(const BipartiteCsr& g, int c, int r) {
  const auto slice = g.column(c);
  return std::binary_search(slice.begin(), slice.end(), r);
}

}  // namespace

ValidityReport validate(const BipartiteCsr& g, const MatchingState& m) {
  if (m.rmatch.size() != static_cast<std::size_t>(g.nr) ||
      m.cmatch.size() != static_cast<std::size_t>(g.nc))
    throw std::invalid_argument("matching arrays do not fit the graph");
  ValidityReport report;
  for (int r = 0; r < g.nr; ++r) {
    const int c = m.rmatch[r];
    if (c == -2) {
      report.violations.push_back({Violation::PendingFlag, r, -1});
      continue;
    }
    if (c == -1) continue;
    if (c < 0 || c >= g.nc) {
      report.violations.push_back({Violation::OutOfRange, r, -1});
      continue;
    }
    if (m.cmatch[c] != r) {
      report.violations.push_back({Violation::Asymmetry, r, c});
      continue;
    }
    if (!has_edge(g, c, r))
      report.violations.push_back({Violation::NonEdge, r, c});
  }
  for (int c = 0; c < g.nc; ++c) {
    const int r = m.cmatch[c];
    if (r == -1) continue;
    if (r < 0 || r >= g.nr) {
      report.violations.push_back({Violation::OutOfRange, -1, c});
      continue;
    }
    if (m.rmatch[r] != c)
      report.violations.push_back({Violation::Asymmetry, r, c});
  }
  return report;
}

bool is_maximum(const BipartiteCsr& g, const MatchingState& m) {
  const ValidityReport report = validate(g, m);
  if (!report.ok())
    throw std::invalid_argument("invalid matching state: " +
                                report.describe());
  std::vector<char> visited(g.nc, 0);
  std::vector<int> queue;
  queue.reserve(g.nc);
  for (int c = 0; c < g.nc; ++c)
    if (m.cmatch[c] < 0) {
      visited[c] = 1;
      queue.push_back(c);
    }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int c = queue[qi];
    for (auto j = g.cxadj[c]; j < g.cxadj[c + 1]; ++j) {
      const int next = m.rmatch[g.cadj[j]];
      if (next < 0) return false;  // augmenting path reaches an unmatched row
      if (!visited[next]) {
        visited[next] = 1;
        queue.push_back(next);
      }
    }
  }
  return true;
}

namespace {

bool try_augment(const BipartiteCsr& g, int c, std::vector<int>& rmatch,
                 std::vector<int>& cmatch, std::vector<char>& visited) {
  visited[c] = 1;
  for (auto j = g.cxadj[c]; j < g.cxadj[c + 1]; ++j) {
    const int r = g.cadj[j];
    if (rmatch[r] < 0) {
      rmatch[r] = c;
      cmatch[c] = r;
      return true;
    }
  }
  for (auto j = g.cxadj[c]; j < g.cxadj[c + 1]; ++j) {
    const int r = g.cadj[j];
    const int holder = rmatch[r];
    if (!visited[holder] &&
        try_augment(g, holder, rmatch, cmatch, visited)) {
      rmatch[r] = c;
      cmatch[c] = r;
      return true;
    }
  }
  return false;
}

}  // namespace

long long brute_force_maximum(const BipartiteCsr& g) {
  std::vector<int> rmatch(g.nr, -1);
  std::vector<int> cmatch(g.nc, -1);
  std::vector<char> visited(g.nc, 0);
  long long matched = 0;
  for (int c = 0; c < g.nc; ++c) {
    if (cmatch[c] >= 0) continue;
    std::fill(visited.begin(), visited.end(), 0);
    if (try_augment(g, c, rmatch, cmatch, visited)) ++matched;
  }
  return matched;
}

void write_matching(const MatchingState& m, std::ostream& out) {
  for (int r = 0; r < static_cast<int>(m.rmatch.size()); ++r)
    if (m.rmatch[r] >= 0) out << "r " << r << ' ' << m.rmatch[r] << '\n';
}

MatchingState read_matching(int nc, int nr, std::istream& in) {
  MatchingState m = MatchingState::unmatched(nc, nr);
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream entry(line);
    std::string tag;
    int r = -1, c = -1;
    if (!(entry >> tag >> r >> c) || tag != "r")
      throw ParseError(lineno, "expected `r <row> <col>`");
    if (r < 0 || r >= nr)
      throw ParseError(lineno, "row index " + std::to_string(r) +
                                   " outside [0, " + std::to_string(nr) + ")");
    if (c < 0 || c >= nc)
      throw ParseError(lineno, "column index " + std::to_string(c) +
                                   " outside [0, " + std::to_string(nc) + ")");
    m.rmatch[r] = c;
    m.cmatch[c] = r;
  }
  return m;
}

}  // namespace bmatch
