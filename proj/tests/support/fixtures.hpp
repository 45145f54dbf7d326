#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lapeig/csr_matrix.hpp"
#include "lapeig/graph.hpp"

namespace fixtures {

using lapeig::EdgeList;
using lapeig::Index;

EdgeList path(Index n);
EdgeList cycle(Index n);
EdgeList complete(Index n);
EdgeList star(Index leaves);

// Random spanning tree plus `extra` random edges, weights uniform in [0.5, 2].
EdgeList random_connected(Index n, Index extra, std::uint64_t seed);

// Points uniform in the unit square joined within `radius`; components are
// then chained through their closest point pairs. Weights 1 / (0.1 + d).
EdgeList random_geometric(Index n, double radius, std::uint64_t seed);

// The pinned n = 1000 clustered-spectrum fixture.
EdgeList clustered_1000();

struct Named {
  std::string name;
  EdgeList graph;
};

// P3, P4, C4, K3, S4, random n=50 and n=200, geometric n=1000.
std::vector<Named> corpus();

lapeig::CsrMatrix laplacian(const EdgeList& g);

}  // namespace fixtures
