#pragma once

// Independent reference implementations used only by the tests. Formulas
// are evaluated term by term in long double; graph helpers build small
// named graphs and rescan subsets without the library's Gray-code scanner.

#include <cmath>
#include <cstdint>
#include <vector>

#include "stardecomp/graph.hpp"
#include "stardecomp/rng.hpp"

namespace oracle {

using LD = long double;

inline LD h(LD x) { return x <= 0 ? 0.0L : -x * std::log(x); }

inline LD phi(int d, LD a) {
  return h(a) + LD(d) / 2 * h(1 - 2 * a) - LD(d - 1) * h(1 - a);
}

inline LD phi_hat(int d, LD a, LD b, LD t) {
  const LD edge = 2 * h(b) + 2 * b * (h(t) + h(1 - t)) + 2 * h(a - t * b) +
                  2 * h(1 - 2 * a - (1 - t) * b) - h(1 - 2 * a);
  const LD vertex = h(a) + h(b) + h(1 - a - b);
  return LD(d) / 2 * edge - LD(d - 1) * vertex;
}

inline LD subset_rate(int d, LD x, LD t) {
  return h(t * x) + 2 * h((1 - t) * x) + h(1 - (2 - t) * x) - (2 - LD(2) / d) * (h(x) + h(1 - x));
}

using stardecomp::graph::Edge;
using stardecomp::graph::Graph;

inline Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

inline Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, e);
}

inline Graph petersen() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5});
    e.push_back({i, i + 5});
    e.push_back({5 + i, 5 + (i + 2) % 5});
  }
  return Graph(10, e);
}

/// K_4 plus `isolated` vertices with no edges.
inline Graph k4_plus_isolated(int isolated) {
  std::vector<Edge> e;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) e.push_back({i, j});
  return Graph(4 + isolated, e);
}

/// Uniform random multigraph: each of m edges picks two endpoints
/// independently (loops allowed).
inline Graph random_multigraph(stardecomp::Rng& rng, int n, int m) {
  std::vector<Edge> e;
  for (int i = 0; i < m; ++i) {
    e.push_back({static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n))});
  }
  return Graph(n, e);
}

/// Edges with both ends in the mask, straight from the edge list.
inline int induced(const Graph& g, std::uint64_t mask) {
  int c = 0;
  for (const Edge& e : g.edges()) c += ((mask >> e.u) & 1) && ((mask >> e.v) & 1);
  return c;
}

inline int crossing(const Graph& g, std::uint64_t mask) {
  int c = 0;
  for (const Edge& e : g.edges()) c += ((mask >> e.u) & 1) != ((mask >> e.v) & 1);
  return c;
}

inline int independence_number(const Graph& g) {
  const int n = g.num_vertices();
  int best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (induced(g, mask) == 0) best = std::max(best, __builtin_popcountll(mask));
  }
  return best;
}

}  // namespace oracle
