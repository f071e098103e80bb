#include "stardecomp/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "stardecomp/errors.hpp"

namespace stardecomp::graph {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw PreconditionError("graph: negative vertex count");
  std::vector<int> deg(n, 0);
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw PreconditionError("graph: edge endpoint out of range");
    }
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  incidences_.resize(offsets_[n]);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
    const Edge& e = edges_[id];
    incidences_[fill[e.u]++] = Incidence{e.v, id};
    incidences_[fill[e.v]++] = Incidence{e.u, id};
  }
}

std::span<const Incidence> Graph::incident(int v) const {
  return std::span<const Incidence>(incidences_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::optional<int> Graph::regular_degree() const {
  if (n_ == 0) return 0;
  const int d = degree(0);
  for (int v = 1; v < n_; ++v) {
    if (degree(v) != d) return std::nullopt;
  }
  return d;
}

int Graph::max_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::has_edge(int u, int v) const {
  for (const Incidence& inc : incident(u)) {
    if (inc.neighbor == v) return true;
  }
  return false;
}

VertexSet::VertexSet(int n, std::span<const int> ids) : member_(n, 0) {
  for (int v : ids) {
    if (v < 0 || v >= n) throw PreconditionError("vertex set: id out of range");
    if (member_[v]) throw PreconditionError("vertex set: duplicate id");
    member_[v] = 1;
    ++count_;
  }
}

VertexSet VertexSet::from_mask(int n, std::uint64_t mask) {
  VertexSet s(n);
  for (int v = 0; v < n; ++v) {
    if ((mask >> v) & 1U) s.insert(v);
  }
  return s;
}

void VertexSet::insert(int v) {
  if (!member_[v]) {
    member_[v] = 1;
    ++count_;
  }
}

void VertexSet::erase(int v) {
  if (member_[v]) {
    member_[v] = 0;
    --count_;
  }
}

std::vector<int> VertexSet::ids() const {
  std::vector<int> out;
  out.reserve(count_);
  for (int v = 0; v < universe(); ++v) {
    if (member_[v]) out.push_back(v);
  }
  return out;
}

VertexSet VertexSet::complement() const {
  VertexSet out(universe());
  for (int v = 0; v < universe(); ++v) {
    if (!member_[v]) out.insert(v);
  }
  return out;
}

namespace {

void require_universe(const Graph& g, const VertexSet& u) {
  if (u.universe() != g.num_vertices()) throw PreconditionError("vertex set does not match graph");
}

}  // namespace

long long induced_edges(const Graph& g, const VertexSet& u) {
  require_universe(g, u);
  long long count = 0;
  for (const Edge& e : g.edges()) {
    if (u.contains(e.u) && u.contains(e.v)) ++count;
  }
  return count;
}

long long cut_edges(const Graph& g, const VertexSet& u) {
  require_universe(g, u);
  long long count = 0;
  for (const Edge& e : g.edges()) {
    if (u.contains(e.u) != u.contains(e.v)) ++count;
  }
  return count;
}

int edges_to(const Graph& g, int v, const VertexSet& u) {
  require_universe(g, u);
  int count = 0;
  for (const Incidence& inc : g.incident(v)) {
    if (inc.neighbor != v && u.contains(inc.neighbor)) ++count;
  }
  return count;
}

Graph Sampler::next(int n, int d) {
  if (n < 0 || d < 1) throw PreconditionError("config model: requires n >= 0 and d >= 1");
  const long long half_edges = static_cast<long long>(n) * d;
  if (half_edges % 2 != 0) throw PreconditionError("config model: n*d must be even");
  std::vector<int> owner(half_edges);
  for (long long i = 0; i < half_edges; ++i) owner[i] = static_cast<int>(i / d);
  rng_.shuffle(std::span<int>(owner));
  std::vector<Edge> edges;
  edges.reserve(half_edges / 2);
  for (long long i = 0; i < half_edges; i += 2) {
    edges.push_back(Edge{std::min(owner[i], owner[i + 1]), std::max(owner[i], owner[i + 1])});
  }
  return Graph(n, std::move(edges));
}

Graph config_model_sample(int n, int d, std::uint64_t seed) { return Sampler(seed).next(n, d); }

bool is_simple(const Graph& g) {
  std::vector<int> seen(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (const Incidence& inc : g.incident(v)) {
      if (inc.neighbor == v || seen[inc.neighbor] == v) return false;
      seen[inc.neighbor] = v;
    }
  }
  return true;
}

SimpleSample sample_simple(int n, int d, std::uint64_t seed, int max_tries) {
  if (max_tries < 1) throw PreconditionError("sample_simple: max_tries must be positive");
  Sampler sampler(seed);
  for (int attempt = 1; attempt <= max_tries; ++attempt) {
    Graph g = sampler.next(n, d);
    if (is_simple(g)) return SimpleSample{std::move(g), attempt};
  }
  throw std::runtime_error("max tries exceeded");
}

namespace {

// Non-loop neighbour lists (repeated by multiplicity) and loop counts, used by
// the Gray-code subset scans.
struct SubsetScanner {
  std::vector<std::vector<int>> neighbors;
  std::vector<int> loops;

  explicit SubsetScanner(const Graph& g) : neighbors(g.num_vertices()), loops(g.num_vertices(), 0) {
    for (const Edge& e : g.edges()) {
      if (e.is_loop()) {
        ++loops[e.u];
      } else {
        neighbors[e.u].push_back(e.v);
        neighbors[e.v].push_back(e.u);
      }
    }
  }

  int edges_into(int v, std::uint32_t mask) const {
    int count = 0;
    for (int w : neighbors[v]) count += static_cast<int>((mask >> w) & 1U);
    return count;
  }

  // Visits every nonempty subset once as (mask, |U|, e[U], e[U,U^c]).
  template <class Visit>
  void for_each_subset(int n, Visit&& visit) const {
    std::uint32_t mask = 0;
    long long inside = 0;
    long long cut = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
      const int v = std::countr_zero(i);
      const auto bit = std::uint32_t{1} << v;
      const int deg = static_cast<int>(neighbors[v].size());
      if (mask & bit) {
        mask ^= bit;
        const int into = edges_into(v, mask);
        inside -= loops[v] + into;
        cut -= deg - 2 * into;
      } else {
        const int into = edges_into(v, mask);
        inside += loops[v] + into;
        cut += deg - 2 * into;
        mask ^= bit;
      }
      visit(mask, std::popcount(mask), inside, cut);
    }
  }
};

int size_cap(double x0, int n) {
  return static_cast<int>(std::floor(x0 * n + 1e-9));
}

}  // namespace

double cheeger_bruteforce(const Graph& g, double x0) {
  const int n = g.num_vertices();
  if (n > kBruteForceMaxVertices) throw PreconditionError("cheeger_bruteforce: more than 24 vertices");
  const int cap = size_cap(x0, n);
  if (cap < 1) throw PreconditionError("cheeger_bruteforce: x0*n below 1");
  double best = std::numeric_limits<double>::infinity();
  SubsetScanner scanner(g);
  scanner.for_each_subset(n, [&](std::uint32_t, int size, long long, long long cut) {
    if (size <= cap) best = std::min(best, static_cast<double>(cut) / size);
  });
  return best;
}

AvgDegreeReport induced_avg_degree_check(const Graph& g, double x0, double rho, std::uint64_t seed,
                                         int samples) {
  const int n = g.num_vertices();
  const int d = g.max_degree();
  const int cap = std::min(n, size_cap(x0, n));
  AvgDegreeReport report;
  auto ratio_of = [d](long long inside, int size) {
    return d == 0 ? 0.0 : 2.0 * static_cast<double>(inside) / (static_cast<double>(size) * d);
  };
  if (n <= kBruteForceMaxVertices) {
    report.exact = true;
    bool ok = true;
    std::uint32_t worst_mask = 0;
    double worst = -1.0;
    SubsetScanner scanner(g);
    scanner.for_each_subset(n, [&](std::uint32_t mask, int size, long long inside, long long) {
      if (size > cap) return;
      ++report.subsets_examined;
      // e[U] <= rho d |U| / 2, compared without dividing.
      if (2.0 * static_cast<double>(inside) > rho * d * size) ok = false;
      const double r = ratio_of(inside, size);
      if (r > worst) {
        worst = r;
        worst_mask = mask;
      }
    });
    report.satisfied = ok;
    report.max_ratio = std::max(0.0, worst);
    if (report.subsets_examined > 0) report.worst_set = VertexSet::from_mask(n, worst_mask).ids();
    return report;
  }

  Rng rng(seed);
  std::vector<int> order(n);
  double worst = 0.0;
  for (int size = 1; size <= cap; ++size) {
    for (int s = 0; s < samples; ++s) {
      std::iota(order.begin(), order.end(), 0);
      // Partial Fisher-Yates: the first `size` entries are a uniform subset.
      for (int i = 0; i < size; ++i) {
        const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(order[i], order[j]);
      }
      VertexSet u(n, std::span<const int>(order.data(), size));
      const double r = ratio_of(induced_edges(g, u), size);
      ++report.subsets_examined;
      if (r > worst || report.worst_set.empty()) {
        worst = std::max(worst, r);
        report.worst_set = u.ids();
      }
    }
  }
  report.max_ratio = worst;
  return report;
}

VertexSet greedy_independent_set(const Graph& g, std::uint64_t seed) {
  const int n = g.num_vertices();
  std::vector<int> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<int>(rank));

  std::vector<char> alive(n, 1);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) alive[e.u] = 0;
  }
  std::vector<int> degree(n, 0);
  for (const Edge& e : g.edges()) {
    if (!e.is_loop() && alive[e.u] && alive[e.v]) {
      ++degree[e.u];
      ++degree[e.v];
    }
  }
  std::set<std::tuple<int, int, int>> queue;
  for (int v = 0; v < n; ++v) {
    if (alive[v]) queue.emplace(degree[v], rank[v], v);
  }

  VertexSet chosen(n);
  auto kill = [&](int v) {
    queue.erase({degree[v], rank[v], v});
    alive[v] = 0;
  };
  while (!queue.empty()) {
    const int v = std::get<2>(*queue.begin());
    chosen.insert(v);
    kill(v);
    std::vector<int> removed;
    for (const Incidence& inc : g.incident(v)) {
      if (alive[inc.neighbor]) {
        removed.push_back(inc.neighbor);
        kill(inc.neighbor);
      }
    }
    for (int w : removed) {
      for (const Incidence& inc : g.incident(w)) {
        const int x = inc.neighbor;
        if (x == w || !alive[x]) continue;
        queue.erase({degree[x], rank[x], x});
        --degree[x];
        queue.emplace(degree[x], rank[x], x);
      }
    }
  }
  return chosen;
}

bool is_independent(const Graph& g, const VertexSet& a) {
  require_universe(g, a);
  for (const Edge& e : g.edges()) {
    if (a.contains(e.u) && a.contains(e.v)) return false;
  }
  return true;
}

bool check_thin(const Graph& g, const VertexSet& a, int d_hat) {
  if (!is_independent(g, a)) throw PreconditionError("not independent");
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!a.contains(v) && edges_to(g, v, a) > d_hat) return false;
  }
  return true;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
  require_universe(g, keep);
  InducedSubgraph out;
  std::vector<int> local(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (keep.contains(v)) {
      local[v] = static_cast<int>(out.parent_vertex.size());
      out.parent_vertex.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (int id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    if (keep.contains(e.u) && keep.contains(e.v)) {
      edges.push_back(Edge{local[e.u], local[e.v]});
      out.parent_edge.push_back(id);
    }
  }
  out.graph = Graph(static_cast<int>(out.parent_vertex.size()), std::move(edges));
  return out;
}

void write_graph(std::ostream& out, const Graph& g) {
  const auto d = g.regular_degree();
  if (!d) throw PreconditionError("write_graph: graph is not regular");
  out << g.num_vertices() << ' ' << *d << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph read_graph(std::istream& in) {
  std::string line;
  long long n = -1;
  long long d = -1;
  while (std::getline(in, line)) {
    std::istringstream header(line);
    std::string probe;
    if (!(std::istringstream(line) >> probe)) continue;
    if (header >> n) {
      if (!(header >> d)) throw ParseError("graph: header must be 'N d'");
      std::string rest;
      if (header >> rest) throw ParseError("graph: trailing data in header");
      break;
    }
    throw ParseError("graph: header must be 'N d'");
  }
  if (n < 0 || d < 0 || n > std::numeric_limits<int>::max()) throw ParseError("graph: missing or invalid header");
  std::vector<Edge> edges;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    long long u = 0;
    long long v = 0;
    if (!(row >> u)) {
      std::string probe;
      std::istringstream blank(line);
      if (blank >> probe) throw ParseError("graph line " + std::to_string(line_no) + ": malformed edge");
      continue;
    }
    std::string rest;
    if (!(row >> v) || (row >> rest)) {
      throw ParseError("graph line " + std::to_string(line_no) + ": malformed edge");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParseError("graph line " + std::to_string(line_no) + ": vertex id out of range");
    }
    edges.push_back(Edge{static_cast<int>(u), static_cast<int>(v)});
  }
  Graph g(static_cast<int>(n), std::move(edges));
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) != d) throw ParseError("graph: vertex " + std::to_string(v) + " does not have degree d");
  }
  return g;
}

}  // namespace stardecomp::graph
