#pragma once

// Weighted undirected graphs: ingestion, Laplacian assembly, structure.

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lapeig/csr_matrix.hpp"
#include "lapeig/types.hpp"

namespace lapeig {

struct Edge {
  Index i;
  Index j;
  double w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class InputErrorKind { parse, self_loop, nonpositive_weight, duplicate_edge, index_out_of_range };

// Raised for malformed or invalid graph input. line() is 1-based, 0 when the
// error does not originate from a text line.
class InputError : public std::runtime_error {
 public:
  InputError(InputErrorKind kind, std::size_t line, const std::string& what);

  InputErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  InputErrorKind kind_;
  std::size_t line_;
};

// Simple weighted undirected graph. Edges are stored canonically (i < j),
// sorted, with strictly positive weights and no repeated pair.
class EdgeList {
 public:
  EdgeList() = default;
  // Canonicalizes and validates; throws InputError.
  EdgeList(Index n_nodes, std::vector<Edge> edges);

  // Like the constructor, but repeated pairs (in either orientation) are
  // merged by keeping the largest weight instead of being rejected.
  static EdgeList symmetrized(Index n_nodes, std::vector<Edge> edges);

  Index n_nodes() const { return n_nodes_; }
  Index n_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

 private:
  Index n_nodes_ = 0;
  std::vector<Edge> edges_;
};

enum class GraphFormat { edge_list, matrix_market };

// Edge-list text: first non-comment line holds n, then "i j w" per line,
// 0-based, '#' starts a comment. Matrix Market: coordinate real/integer/
// pattern, symmetric or general, 1-based; diagonal entries are ignored and
// off-diagonal weights are taken as |value|.
EdgeList load_edge_list(std::istream& in, GraphFormat format, bool symmetrize = false);
EdgeList load_edge_list_file(const std::string& path, GraphFormat format, bool symmetrize = false);

// Writes the lower triangle (with diagonal) as a symmetric coordinate file.
void write_matrix_market(std::ostream& out, const CsrMatrix& a);

// G = D - A with D the generalized degrees.
CsrMatrix build_laplacian(const EdgeList& g);

struct Components {
  Index count = 0;
  std::vector<Index> labels;  // labels numbered in order of first appearance
};

Components connected_components(const EdgeList& g);
// Uses the off-diagonal sparsity pattern of a symmetric matrix.
Components connected_components(const CsrMatrix& a);

struct GraphStats {
  Index n = 0;
  Index nnz = 0;
  double anzr = 0.0;
  Index components = 0;
};

// nnz counts the Laplacian nonzeros n + 2m; anzr = nnz / n.
GraphStats stats(const EdgeList& g);

struct Subgraph {
  EdgeList graph;
  std::vector<Index> original_index;  // new node -> node in the source graph
};

// Induced subgraph on the largest connected component (lowest label wins ties).
Subgraph largest_component(const EdgeList& g);

}  // namespace lapeig
