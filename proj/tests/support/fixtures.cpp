#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "lapeig/rng.hpp"

namespace fixtures {

using lapeig::Edge;
using lapeig::Rng;

EdgeList path(Index n) {
  std::vector<Edge> e;
  for (Index i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
  return EdgeList(n, e);
}

EdgeList cycle(Index n) {
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1.0});
  return EdgeList(n, e);
}

EdgeList complete(Index n) {
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) e.push_back({i, j, 1.0});
  return EdgeList(n, e);
}

EdgeList star(Index leaves) {
  std::vector<Edge> e;
  for (Index i = 1; i <= leaves; ++i) e.push_back({0, i, 1.0});
  return EdgeList(leaves + 1, e);
}

EdgeList random_connected(Index n, Index extra, std::uint64_t seed) {
  Rng rng(seed);
  std::set<std::pair<Index, Index>> seen;
  std::vector<Edge> e;
  auto add = [&](Index i, Index j) {
    if (i == j) return false;
    auto key = std::minmax(i, j);
    if (!seen.insert(key).second) return false;
    e.push_back({key.first, key.second, 0.5 + 1.5 * rng.uniform()});
    return true;
  };
  for (Index i = 1; i < n; ++i) add(i, static_cast<Index>(rng.below(i)));
  const Index max_edges = n * (n - 1) / 2;
  for (Index k = 0; k < extra && e.size() < max_edges;) {
    if (add(static_cast<Index>(rng.below(n)), static_cast<Index>(rng.below(n)))) ++k;
  }
  return EdgeList(n, e);
}

EdgeList random_geometric(Index n, double radius, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n), y(n);
  for (Index i = 0; i < n; ++i) {
    x[i] = rng.uniform();
    y[i] = rng.uniform();
  }
  auto dist = [&](Index i, Index j) { return std::hypot(x[i] - x[j], y[i] - y[j]); };
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (dist(i, j) <= radius) e.push_back({i, j, 1.0 / (0.1 + dist(i, j))});

  while (true) {
    const auto comps = lapeig::connected_components(EdgeList(n, e));
    if (comps.count == 1) break;
    // Join component 0 to its nearest outside point.
    double best = std::numeric_limits<double>::infinity();
    Index bi = 0, bj = 0;
    for (Index i = 0; i < n; ++i) {
      if (comps.labels[i] != 0) continue;
      for (Index j = 0; j < n; ++j) {
        if (comps.labels[j] == 0) continue;
        if (dist(i, j) < best) {
          best = dist(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    e.push_back({bi, bj, 1.0 / (0.1 + best)});
  }
  return EdgeList(n, e);
}

EdgeList clustered_1000() { return random_geometric(1000, 0.06, 2011); }

std::vector<Named> corpus() {
  return {
      {"P3", path(3)},
      {"P4", path(4)},
      {"C4", cycle(4)},
      {"K3", complete(3)},
      {"S4", star(3)},
      {"random50", random_connected(50, 75, 7)},
      {"random200", random_connected(200, 400, 11)},
      {"geometric1000", clustered_1000()},
  };
}

lapeig::CsrMatrix laplacian(const EdgeList& g) { return lapeig::build_laplacian(g); }

}  // namespace fixtures
