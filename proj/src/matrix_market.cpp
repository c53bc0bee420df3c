#include "bmatch/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace bmatch {

namespace {

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

BipartiteCsr read_matrix_market(std::istream& in) {
  std::string line;
  long long lineno = 0;

  if (!std::getline(in, line)) throw ParseError(1, "empty stream");
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket")
    throw ParseError(lineno, "missing %%MatrixMarket banner");
  object = to_lower(object);
  format = to_lower(format);
  field = to_lower(field);
  symmetry = to_lower(symmetry);
  if (object != "matrix")
    throw ParseError(lineno, "unsupported object '" + object + "'");
  if (format != "coordinate")
    throw ParseError(lineno, "unsupported format '" + format + "'");
  if (field != "pattern" && field != "real" && field != "integer")
    throw ParseError(lineno, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    throw ParseError(lineno, "unsupported symmetry '" + symmetry + "'");
  const bool mirror = symmetry == "symmetric";

  // Size line: rows cols entries. Comments and blank lines may precede it.
  long long rows = -1, cols = -1, entries = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%' || is_blank(line)) continue;
    std::istringstream sizes(line);
    if (!(sizes >> rows >> cols >> entries))
      throw ParseError(lineno, "malformed size line");
    break;
  }
  if (rows < 0)
    throw ParseError(lineno + 1, "missing size line");
  if (rows > std::numeric_limits<int>::max() ||
      cols > std::numeric_limits<int>::max())
    throw ParseError(lineno, "dimensions too large");

  std::vector<Edge> edges;
  edges.reserve(mirror ? 2 * entries : entries);
  long long seen = 0;
  while (seen < entries && std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%' || is_blank(line)) continue;
    std::istringstream entry(line);
    long long i = 0, j = 0;
    if (!(entry >> i >> j))
      throw ParseError(lineno, "malformed entry");
    if (i < 1 || i > rows)
      throw ParseError(lineno, "row index " + std::to_string(i) +
                                   " outside [1, " + std::to_string(rows) +
                                   "]");
    if (j < 1 || j > cols)
      throw ParseError(lineno, "column index " + std::to_string(j) +
                                   " outside [1, " + std::to_string(cols) +
                                   "]");
    ++seen;
    edges.emplace_back(static_cast<int>(j - 1), static_cast<int>(i - 1));
    if (mirror && i != j)
      edges.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1));
  }
  if (seen < entries)
    throw ParseError(lineno + 1, "entry count mismatch: expected " +
                                     std::to_string(entries) + ", found " +
                                     std::to_string(seen));
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%' || is_blank(line)) continue;
    throw ParseError(lineno, "entry count mismatch: data after the declared " +
                                 std::to_string(entries) + " entries");
  }

  return from_edge_list(static_cast<int>(cols), static_cast<int>(rows),
                        std::move(edges));
}

BipartiteCsr load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  BipartiteCsr g = read_matrix_market(in);
  g.name = std::filesystem::path(path).stem().string();
  return g;
}

void write_matrix_market(const BipartiteCsr& g, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate pattern general\n";
  out << g.nr << ' ' << g.nc << ' ' << g.num_edges() << '\n';
  for (int c = 0; c < g.nc; ++c)
    for (auto j = g.cxadj[c]; j < g.cxadj[c + 1]; ++j)
      out << g.cadj[j] + 1 << ' ' << c + 1 << '\n';
}

}  // namespace bmatch
