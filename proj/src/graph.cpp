#include "lapeig/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

namespace lapeig {

InputError::InputError(InputErrorKind kind, std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      kind_(kind),
      line_(line) {}

namespace {

struct SourcedEdge {
  Edge edge;
  std::size_t line;
};

bool pair_less(const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; }

void check_edge(const Edge& e, Index n, std::size_t line) {
  if (e.i >= n || e.j >= n) {
    throw InputError(InputErrorKind::index_out_of_range, line,
                     "node index out of range (" + std::to_string(e.i) + "," +
                         std::to_string(e.j) + ") for n=" + std::to_string(n));
  }
  if (e.i == e.j) {
    throw InputError(InputErrorKind::self_loop, line, "self-loop on node " + std::to_string(e.i));
  }
  if (!(e.w > 0.0) || !std::isfinite(e.w)) {
    throw InputError(InputErrorKind::nonpositive_weight, line,
                     "edge weight must be positive and finite");
  }
}

// Orients every pair as i < j and sorts; duplicates either throw or are
// merged by max weight.
std::vector<Edge> canonicalize(Index n, std::vector<SourcedEdge> raw, bool merge_max) {
  for (auto& s : raw) {
    check_edge(s.edge, n, s.line);
    if (s.edge.i > s.edge.j) std::swap(s.edge.i, s.edge.j);
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const SourcedEdge& a, const SourcedEdge& b) { return pair_less(a.edge, b.edge); });
  std::vector<Edge> out;
  out.reserve(raw.size());
  for (const auto& s : raw) {
    if (!out.empty() && out.back().i == s.edge.i && out.back().j == s.edge.j) {
      if (!merge_max) {
        throw InputError(InputErrorKind::duplicate_edge, s.line,
                         "duplicate edge (" + std::to_string(s.edge.i) + "," +
                             std::to_string(s.edge.j) + ")");
      }
      out.back().w = std::max(out.back().w, s.edge.w);
      continue;
    }
    out.push_back(s.edge);
  }
  return out;
}

std::vector<SourcedEdge> unsourced(std::vector<Edge> edges) {
  std::vector<SourcedEdge> raw;
  raw.reserve(edges.size());
  for (const auto& e : edges) raw.push_back({e, 0});
  return raw;
}

std::string strip_comment(const std::string& line, char marker) {
  const auto pos = line.find(marker);
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// Parses exactly the listed fields from a line; trailing garbage is an error.
template <typename... Ts>
bool parse_fields(const std::string& line, Ts&... fields) {
  std::istringstream ss(line);
  ss.imbue(std::locale::classic());
  if (!(ss >> ... >> fields)) return false;
  std::string rest;
  return !(ss >> rest);
}

// Indices are parsed as signed so that "-1" is reported instead of wrapping.
Index to_index(long long v, std::size_t line) {
  if (v < 0) throw InputError(InputErrorKind::index_out_of_range, line, "negative node index");
  return static_cast<Index>(v);
}

EdgeList finish(Index n, std::vector<SourcedEdge> raw, bool symmetrize) {
  auto edges = canonicalize(n, std::move(raw), symmetrize);
  return EdgeList(n, std::move(edges));
}

EdgeList load_plain(std::istream& in, bool symmetrize) {
  std::string line;
  std::size_t lineno = 0;
  long long n = -1;
  std::vector<SourcedEdge> raw;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line, '#');
    if (blank(body)) continue;
    if (n < 0) {
      if (!parse_fields(body, n) || n < 0) {
        throw InputError(InputErrorKind::parse, lineno, "expected node count");
      }
      continue;
    }
    long long i = 0;
    long long j = 0;
    double w = 0.0;
    if (!parse_fields(body, i, j, w)) {
      throw InputError(InputErrorKind::parse, lineno, "expected 'i j w'");
    }
    raw.push_back({{to_index(i, lineno), to_index(j, lineno), w}, lineno});
  }
  if (n < 0) throw InputError(InputErrorKind::parse, lineno, "missing node count");
  return finish(static_cast<Index>(n), std::move(raw), symmetrize);
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

EdgeList load_mtx(std::istream& in, bool symmetrize) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw InputError(InputErrorKind::parse, 1, "empty input");
  ++lineno;
  std::istringstream header(lowercase(line));
  std::string banner, object, layout, field, symmetry;
  header >> banner >> object >> layout >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix" || layout != "coordinate") {
    throw InputError(InputErrorKind::parse, lineno,
                     "expected '%%MatrixMarket matrix coordinate' header");
  }
  if (field != "real" && field != "integer" && field != "pattern") {
    throw InputError(InputErrorKind::parse, lineno, "unsupported field '" + field + "'");
  }
  if (symmetry != "symmetric" && symmetry != "general") {
    throw InputError(InputErrorKind::parse, lineno, "unsupported symmetry '" + symmetry + "'");
  }
  const bool pattern = field == "pattern";

  long long rows = -1, cols = -1, entries = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line.front() == '%') continue;
    if (!parse_fields(line, rows, cols, entries) || rows < 0 || entries < 0) {
      throw InputError(InputErrorKind::parse, lineno, "expected 'rows cols entries'");
    }
    break;
  }
  if (rows < 0) throw InputError(InputErrorKind::parse, lineno, "missing size line");
  if (rows != cols) throw InputError(InputErrorKind::parse, lineno, "matrix must be square");

  std::vector<SourcedEdge> raw;
  long long seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line.front() == '%') continue;
    long long i = 0, j = 0;
    double v = 1.0;
    const bool ok = pattern ? parse_fields(line, i, j) : parse_fields(line, i, j, v);
    if (!ok) throw InputError(InputErrorKind::parse, lineno, "malformed entry");
    ++seen;
    if (i < 1 || j < 1 || i > rows || j > rows) {
      throw InputError(InputErrorKind::index_out_of_range, lineno, "entry index out of range");
    }
    if (i == j) continue;  // Laplacian diagonal or adjacency self-weight: not an edge
    raw.push_back({{to_index(i - 1, lineno), to_index(j - 1, lineno), std::abs(v)}, lineno});
  }
  if (seen != entries) {
    throw InputError(InputErrorKind::parse, lineno,
                     "expected " + std::to_string(entries) + " entries, found " +
                         std::to_string(seen));
  }
  return finish(static_cast<Index>(rows), std::move(raw), symmetrize);
}

}  // namespace

EdgeList::EdgeList(Index n_nodes, std::vector<Edge> edges)
    : n_nodes_(n_nodes), edges_(canonicalize(n_nodes, unsourced(std::move(edges)), false)) {}

EdgeList EdgeList::symmetrized(Index n_nodes, std::vector<Edge> edges) {
  return EdgeList(n_nodes, canonicalize(n_nodes, unsourced(std::move(edges)), true));
}

EdgeList load_edge_list(std::istream& in, GraphFormat format, bool symmetrize) {
  return format == GraphFormat::edge_list ? load_plain(in, symmetrize) : load_mtx(in, symmetrize);
}

EdgeList load_edge_list_file(const std::string& path, GraphFormat format, bool symmetrize) {
  std::ifstream in(path);
  if (!in) throw InputError(InputErrorKind::parse, 0, "cannot open '" + path + "'");
  return load_edge_list(in, format, symmetrize);
}

void write_matrix_market(std::ostream& out, const CsrMatrix& a) {
  const CsrMatrix low = a.lower();
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << a.n() << ' ' << a.n() << ' ' << low.nnz() << '\n';
  const auto old = out.precision(17);
  for (Index i = 0; i < low.n(); ++i) {
    for (Index p = low.row_ptr()[i]; p < low.row_ptr()[i + 1]; ++p) {
      out << i + 1 << ' ' << low.col_idx()[p] + 1 << ' ' << low.values()[p] << '\n';
    }
  }
  out.precision(old);
}

CsrMatrix build_laplacian(const EdgeList& g) {
  const Index n = g.n_nodes();
  Vector degree(n, 0.0);
  for (const auto& e : g.edges()) {
    degree[e.i] += e.w;
    degree[e.j] += e.w;
  }
  std::vector<Triplet> t;
  t.reserve(n + 2 * g.n_edges());
  for (Index i = 0; i < n; ++i) t.push_back({i, i, degree[i]});
  for (const auto& e : g.edges()) {
    t.push_back({e.i, e.j, -e.w});
    t.push_back({e.j, e.i, -e.w});
  }
  return CsrMatrix::from_triplets(n, std::move(t), true);
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Index{0}); }

  Index find(Index x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<Index> parent_;
};

Components label(DisjointSets& sets, Index n) {
  Components c;
  c.labels.assign(n, 0);
  std::vector<Index> root_label(n, n);
  for (Index v = 0; v < n; ++v) {
    const Index r = sets.find(v);
    if (root_label[r] == n) root_label[r] = c.count++;
    c.labels[v] = root_label[r];
  }
  return c;
}

}  // namespace

Components connected_components(const EdgeList& g) {
  DisjointSets sets(g.n_nodes());
  for (const auto& e : g.edges()) sets.unite(e.i, e.j);
  return label(sets, g.n_nodes());
}

Components connected_components(const CsrMatrix& a) {
  DisjointSets sets(a.n());
  for (Index i = 0; i < a.n(); ++i)
    for (Index p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p)
      if (a.col_idx()[p] != i && a.values()[p] != 0.0) sets.unite(i, a.col_idx()[p]);
  return label(sets, a.n());
}

GraphStats stats(const EdgeList& g) {
  GraphStats s;
  s.n = g.n_nodes();
  s.nnz = g.n_nodes() + 2 * g.n_edges();
  s.anzr = s.n > 0 ? static_cast<double>(s.nnz) / static_cast<double>(s.n) : 0.0;
  s.components = connected_components(g).count;
  return s;
}

Subgraph largest_component(const EdgeList& g) {
  if (g.n_nodes() == 0) return {};
  const Components comps = connected_components(g);
  std::vector<Index> sizes(comps.count, 0);
  for (Index l : comps.labels) ++sizes[l];
  const Index best = static_cast<Index>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  Subgraph sub;
  std::vector<Index> new_index(g.n_nodes(), g.n_nodes());
  for (Index v = 0; v < g.n_nodes(); ++v) {
    if (comps.labels[v] == best) {
      new_index[v] = sub.original_index.size();
      sub.original_index.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (comps.labels[e.i] == best) edges.push_back({new_index[e.i], new_index[e.j], e.w});
  }
  sub.graph = EdgeList(sub.original_index.size(), std::move(edges));
  return sub;
}

}  // namespace lapeig
