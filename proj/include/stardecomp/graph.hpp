#pragma once

// Undirected multigraphs with loops, configuration-model sampling, subset
// edge statistics and exhaustive small-instance checks.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stardecomp/rng.hpp"

namespace stardecomp::graph {

struct Edge {
  int u = 0;
  int v = 0;

  bool is_loop() const { return u == v; }
  int other(int x) const { return x == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One entry of a vertex's incidence list. Loops appear twice.
struct Incidence {
  int neighbor = 0;
  int edge = 0;
};

/// Immutable multigraph. Edge ids are positions in `edges()`.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }
  std::span<const Incidence> incident(int v) const;

  /// Loops count twice.
  int degree(int v) const { return static_cast<int>(incident(v).size()); }
  /// Common degree if every vertex has it.
  std::optional<int> regular_degree() const;
  int max_degree() const;
  bool has_edge(int u, int v) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;
  std::vector<Incidence> incidences_;
};

/// Subset of the vertices of a graph with O(1) membership.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : member_(n, 0) {}
  /// Throws PreconditionError on out-of-range or duplicate ids.
  VertexSet(int n, std::span<const int> ids);
  static VertexSet from_mask(int n, std::uint64_t mask);

  int universe() const { return static_cast<int>(member_.size()); }
  bool contains(int v) const { return member_[v] != 0; }
  int size() const { return count_; }
  bool empty() const { return count_ == 0; }
  void insert(int v);
  void erase(int v);
  /// Members in increasing order.
  std::vector<int> ids() const;
  VertexSet complement() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<char> member_;
  int count_ = 0;
};

/// e[U]: edges with both ends in U; loops at members count once.
long long induced_edges(const Graph& g, const VertexSet& u);
/// e[U, U^c].
long long cut_edges(const Graph& g, const VertexSet& u);
/// e[v, U]: edges joining v to a member of U other than v.
int edges_to(const Graph& g, int v, const VertexSet& u);

/// Uniform random pairing of n*d half-edges (Fisher-Yates shuffle).
Graph config_model_sample(int n, int d, std::uint64_t seed);
/// Draws successive configuration-model graphs from one generator stream.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  Graph next(int n, int d);

 private:
  Rng rng_;
};

bool is_simple(const Graph& g);

struct SimpleSample {
  Graph graph;
  int attempts = 0;
  double acceptance_rate() const { return 1.0 / attempts; }
};

/// Rejection sampling of the configuration model until simple.
/// Throws std::runtime_error("max tries exceeded").
SimpleSample sample_simple(int n, int d, std::uint64_t seed, int max_tries);

inline constexpr int kBruteForceMaxVertices = 24;

/// min e[U, U^c]/|U| over nonempty U with |U| <= x0*n, n <= 24.
double cheeger_bruteforce(const Graph& g, double x0);

struct AvgDegreeReport {
  bool exact = false;
  /// Only set in exact mode.
  std::optional<bool> satisfied;
  /// max over examined U of (average degree of g[U]) / d.
  double max_ratio = 0.0;
  std::vector<int> worst_set;
  long long subsets_examined = 0;
};

/// Exact mode (n <= 24) checks e[U] <= rho d |U| / 2 for every nonempty U
/// with |U| <= x0*n. Larger graphs are sampled with `samples` random
/// subsets per size and only measured. d is the maximum degree.
AvgDegreeReport induced_avg_degree_check(const Graph& g, double x0, double rho,
                                         std::uint64_t seed = 0, int samples = 1000);

/// Maximal independent set by min-degree greedy with a seeded random order
/// among ties. Vertices carrying loops are never chosen.
VertexSet greedy_independent_set(const Graph& g, std::uint64_t seed);

bool is_independent(const Graph& g, const VertexSet& a);

/// True iff every v outside A has at most d_hat edges into A. Throws
/// PreconditionError("not independent") if A spans an edge.
bool check_thin(const Graph& g, const VertexSet& a, int d_hat);

/// Induced subgraph on `keep` with vertices relabelled 0..|keep|-1.
struct InducedSubgraph {
  Graph graph;
  std::vector<int> parent_vertex;
  std::vector<int> parent_edge;
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep);

/// Text format: `N d` header, then one `u v` line per edge. Requires a
/// d-regular graph; reading validates regularity.
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);

}  // namespace stardecomp::graph
