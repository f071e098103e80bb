#include "stardecomp/decomp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "stardecomp/errors.hpp"
#include "stardecomp/maxflow.hpp"

namespace stardecomp::decomp {

using graph::edges_to;
using graph::Incidence;
using graph::InducedSubgraph;

std::vector<int> Orientation::in_degrees(const Graph& g) const {
  if (static_cast<int>(head.size()) != g.num_edges()) {
    throw PreconditionError("orientation does not match graph");
  }
  std::vector<int> in(g.num_vertices(), 0);
  for (int id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    if (head[id] != e.u && head[id] != e.v) throw PreconditionError("orientation head is not an endpoint");
    ++in[head[id]];
  }
  return in;
}

ThinIndependentSet thin_down(const Graph& g, const VertexSet& a, int d_hat) {
  if (d_hat < 0) throw PreconditionError("thin_down: d_hat must be nonnegative");
  if (!graph::is_independent(g, a)) throw PreconditionError("thin_down: set is not independent");
  VertexSet current = a;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (a.contains(v)) continue;
    int into = edges_to(g, v, current);
    if (into <= d_hat) continue;
    std::vector<int> victims;
    for (const Incidence& inc : g.incident(v)) {
      if (inc.neighbor != v && current.contains(inc.neighbor)) victims.push_back(inc.neighbor);
    }
    std::sort(victims.begin(), victims.end());
    victims.erase(std::unique(victims.begin(), victims.end()), victims.end());
    for (int u : victims) {
      if (into <= d_hat) break;
      into -= edges_to(g, u, VertexSet(g.num_vertices(), std::span<const int>(&v, 1)));
      current.erase(u);
    }
  }
  ThinIndependentSet out{std::move(current), d_hat, false};
  out.verified = graph::check_thin(g, out.set, d_hat);
  return out;
}

ThinIndependentSet adjust_size(const Graph& g, const ThinIndependentSet& a, int target) {
  if (target < 0) throw PreconditionError("adjust_size: negative target");
  if (a.set.size() < target) {
    throw StageError("adjust_size", "set too small: have " + std::to_string(a.set.size()) + ", need " +
                                        std::to_string(target));
  }
  ThinIndependentSet out = a;
  for (int v = g.num_vertices() - 1; v >= 0 && out.set.size() > target; --v) {
    out.set.erase(v);
  }
  out.verified = graph::check_thin(g, out.set, out.d_hat);
  return out;
}

OrientationResult in_regular_orientation(const Graph& h, int ell, OrientationMode mode) {
  if (ell < 0) throw PreconditionError("in_regular_orientation: ell must be nonnegative");
  const long long n = h.num_vertices();
  const long long m = h.num_edges();
  if (mode == OrientationMode::exact && m != ell * n) {
    throw PreconditionError("in_regular_orientation: exact mode needs e(H) = ell |V(H)|");
  }
  if (mode == OrientationMode::at_most && m > ell * n) {
    throw PreconditionError("in_regular_orientation: at_most mode needs e(H) <= ell |V(H)|");
  }

  const int source = 0;
  const int sink = 1;
  const auto edge_node = [](int id) { return 2 + id; };
  const auto vertex_node = [m](int v) { return 2 + static_cast<int>(m) + v; };
  MaxFlow flow(static_cast<int>(2 + m + n));
  std::vector<std::pair<int, int>> to_endpoint(m, {-1, -1});
  for (int id = 0; id < m; ++id) {
    const Edge& e = h.edge(id);
    flow.add_arc(source, edge_node(id), 1);
    to_endpoint[id].first = flow.add_arc(edge_node(id), vertex_node(e.u), 1);
    if (!e.is_loop()) to_endpoint[id].second = flow.add_arc(edge_node(id), vertex_node(e.v), 1);
  }
  for (int v = 0; v < n; ++v) flow.add_arc(vertex_node(v), sink, ell);

  OrientationResult result;
  result.flow = flow.run(source, sink);
  result.feasible = result.flow == m;
  if (result.feasible) {
    Orientation o;
    o.ell = ell;
    o.mode = mode;
    o.head.resize(m);
    for (int id = 0; id < m; ++id) {
      const Edge& e = h.edge(id);
      o.head[id] = flow.flow_on(to_endpoint[id].first) > 0 ? e.u : e.v;
    }
    result.orientation = std::move(o);
    return result;
  }
  const std::vector<char> side = flow.source_side();
  VertexSet u(static_cast<int>(n));
  for (int v = 0; v < n; ++v) {
    if (side[vertex_node(v)]) u.insert(v);
  }
  if (!(graph::induced_edges(h, u) > static_cast<long long>(ell) * u.size())) {
    throw std::logic_error("in_regular_orientation: min cut does not give a violating set");
  }
  result.violating_set = std::move(u);
  return result;
}

namespace {

// e[mask] for every vertex subset of h, indexed by bitmask.
std::vector<int> induced_counts(const Graph& h) {
  const int n = h.num_vertices();
  std::vector<std::vector<int>> neighbors(n);
  std::vector<int> loops(n, 0);
  for (const Edge& e : h.edges()) {
    if (e.is_loop()) {
      ++loops[e.u];
    } else {
      neighbors[e.u].push_back(e.v);
      neighbors[e.v].push_back(e.u);
    }
  }
  const std::uint32_t total = std::uint32_t{1} << n;
  std::vector<int> count(total, 0);
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    const int v = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    int into = 0;
    for (int w : neighbors[v]) into += static_cast<int>((rest >> w) & 1U);
    count[mask] = count[rest] + loops[v] + into;
  }
  return count;
}

}  // namespace

BruteForceOrientation orientation_feasible_bruteforce(const Graph& h, int ell) {
  const int n = h.num_vertices();
  if (n > kOrientationBruteForceMaxVertices) {
    throw PreconditionError("orientation_feasible_bruteforce: more than 20 vertices");
  }
  if (ell < 0) throw PreconditionError("orientation_feasible_bruteforce: ell must be nonnegative");
  const std::vector<int> count = induced_counts(h);
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  const long long m = h.num_edges();
  const bool balanced = m == static_cast<long long>(ell) * n;

  BruteForceOrientation out;
  out.feasible = true;
  bool agrees = true;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    const int size = std::popcount(mask);
    const bool cond1 = count[mask] <= static_cast<long long>(ell) * size;
    const std::uint32_t rest = full & ~mask;
    const long long crossing = m - count[mask] - count[rest];
    // e[V\U] + e[U, V\U] >= ell |V\U|
    const bool cond2 = count[rest] + crossing >= static_cast<long long>(ell) * (n - size);
    if (cond1 != cond2) agrees = false;
    if (!cond1 && out.feasible) {
      out.feasible = false;
      out.witness = VertexSet::from_mask(n, mask);
    }
    if (mask == full) break;
  }
  if (balanced) out.complement_form_agrees = agrees;
  return out;
}

StarDecomposition stars_from_orientation(const Graph& g, const VertexSet& a, const InducedSubgraph& sub,
                                         const Orientation& inner, int k) {
  if (k < 1) throw PreconditionError("stars_from_orientation: k must be positive");
  if (static_cast<int>(inner.head.size()) != sub.graph.num_edges()) {
    throw PreconditionError("stars_from_orientation: orientation does not match subgraph");
  }
  std::vector<int> sub_edge(g.num_edges(), -1);
  for (int i = 0; i < static_cast<int>(sub.parent_edge.size()); ++i) sub_edge[sub.parent_edge[i]] = i;

  std::vector<std::vector<int>> out_edges(g.num_vertices());
  for (int id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    const bool in_u = a.contains(e.u);
    const bool in_v = a.contains(e.v);
    int tail = 0;
    if (in_u && in_v) {
      throw StageError("stars", "independent set spans an edge");
    } else if (in_u || in_v) {
      tail = in_u ? e.v : e.u;
    } else {
      const int local = sub_edge[id];
      if (local < 0) throw PreconditionError("stars_from_orientation: subgraph misses an edge");
      const int head = sub.parent_vertex[inner.head[local]];
      tail = e.other(head);
    }
    out_edges[tail].push_back(id);
  }

  StarDecomposition sd;
  sd.k = k;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (a.contains(v)) continue;
    const auto& outs = out_edges[v];
    if (static_cast<int>(outs.size()) < k) {
      throw StageError("stars", "vertex " + std::to_string(v) + " has out-degree " +
                                    std::to_string(outs.size()) + " < k");
    }
    Star star{v, {}};
    for (int i = 0; i < k; ++i) star.leaves.push_back(g.edge(outs[i]).other(v));
    for (std::size_t i = k; i < outs.size(); ++i) sd.leftover.push_back(g.edge(outs[i]));
    sd.stars.push_back(std::move(star));
  }
  return sd;
}

bool repair_swap(const Graph& g, VertexSet& a, const VertexSet& violating, int k) {
  if (a.empty()) return false;
  int add = -1;
  for (int w : violating.ids()) {
    if (a.contains(w) || edges_to(g, w, a) != 0) continue;
    bool stays_thin = true;
    for (const Incidence& inc : g.incident(w)) {
      if (inc.neighbor != w && edges_to(g, inc.neighbor, a) >= k) stays_thin = false;
    }
    if (stays_thin) {
      add = w;
      break;
    }
  }
  if (add < 0) return false;
  a.insert(add);

  int drop = -1;
  std::pair<int, int> best{-1, -1};
  for (int u : a.ids()) {
    if (u == add) continue;
    bool touches = false;
    int spare = std::numeric_limits<int>::max();
    for (const Incidence& inc : g.incident(u)) {
      touches = touches || violating.contains(inc.neighbor);
      spare = std::min(spare, edges_to(g, inc.neighbor, a));
    }
    const std::pair<int, int> score{touches ? 0 : 1, spare};
    if (score > best) {
      best = score;
      drop = u;
    }
  }
  if (drop >= 0) a.erase(drop);
  return true;
}

int required_independent_set_size(int n, int d, int k) {
  if (!(2LL * k > d)) throw PreconditionError("required size: needs k > d/2");
  return static_cast<int>(n - (static_cast<long long>(n) * d) / (2LL * k));
}

DecomposeOutcome decompose(const Graph& g, int k, const DecomposeOptions& options) {
  const auto degree = g.regular_degree();
  if (!degree) throw PreconditionError("decompose: graph is not regular");
  if (!graph::is_simple(g)) throw PreconditionError("decompose: graph is not simple");
  const int d = *degree;
  if (!(2LL * k > d)) throw PreconditionError("decompose: requires k > d/2");
  const int n = g.num_vertices();
  const long long edges = g.num_edges();

  DecomposeOutcome outcome;
  outcome.target_size = required_independent_set_size(n, d, k);
  outcome.mode = edges % k == 0 ? OrientationMode::exact : OrientationMode::at_most;
  const int attempts = std::max(1, options.max_retries);

  for (int attempt = 0; attempt < attempts; ++attempt) {
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(attempt);
    outcome.attempts = attempt + 1;
    outcome.seed_used = seed;
    try {
      const VertexSet greedy = graph::greedy_independent_set(g, seed);
      const ThinIndependentSet thin = thin_down(g, greedy, k);
      outcome.independent_set_size = thin.set.size();
      const ThinIndependentSet sized = adjust_size(g, thin, outcome.target_size);
      VertexSet a = sized.set;
      InducedSubgraph sub;
      OrientationResult oriented;
      int repairs = 0;
      for (;;) {
        sub = graph::induced_subgraph(g, a.complement());
        oriented = in_regular_orientation(sub.graph, d - k, outcome.mode);
        if (oriented.feasible || repairs >= options.repair_rounds) break;
        VertexSet violating(n);
        for (int v : oriented.violating_set->ids()) violating.insert(sub.parent_vertex[v]);
        if (!repair_swap(g, a, violating, k)) break;
        ++repairs;
      }
      outcome.repairs = repairs;
      if (!oriented.feasible) {
        std::vector<int> witness;
        for (int v : oriented.violating_set->ids()) witness.push_back(sub.parent_vertex[v]);
        outcome.failure = DecomposeFailure{"orientation",
                                           "no orientation of g[A^c] with in-degrees <= " +
                                               std::to_string(d - k) + " after " + std::to_string(repairs) +
                                               " repairs; violating set of size " +
                                               std::to_string(witness.size()),
                                           std::move(witness)};
        continue;
      }
      StarDecomposition sd = stars_from_orientation(g, a, sub, *oriented.orientation, k);
      const Verification check = verify_decomposition(g, sd);
      if (!check.valid) throw StageError("verify", check.diagnostics.front());
      outcome.success = true;
      outcome.decomposition = std::move(sd);
      outcome.failure.reset();
      return outcome;
    } catch (const StageError& e) {
      outcome.failure = DecomposeFailure{e.stage(), e.what(), {}};
    }
  }
  return outcome;
}

Verification verify_decomposition(const Graph& g, const StarDecomposition& sd, bool require_exact) {
  Verification out;
  auto& diag = out.diagnostics;
  const int n = g.num_vertices();
  const int k = sd.k;
  if (k < 1) diag.push_back("k must be positive");

  std::map<std::pair<int, int>, int> remaining;
  for (const Edge& e : g.edges()) ++remaining[{std::min(e.u, e.v), std::max(e.u, e.v)}];
  std::map<std::pair<int, int>, int> multiplicity = remaining;

  auto consume = [&](int u, int v) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      diag.push_back("vertex id out of range: " + std::to_string(u) + " " + std::to_string(v));
      return;
    }
    const std::pair<int, int> key{std::min(u, v), std::max(u, v)};
    auto it = remaining.find(key);
    if (it == remaining.end()) {
      diag.push_back("edge not in graph: " + std::to_string(u) + " " + std::to_string(v));
    } else if (it->second == 0) {
      diag.push_back("edge covered twice: " + std::to_string(u) + " " + std::to_string(v));
    } else {
      --it->second;
    }
  };

  for (std::size_t i = 0; i < sd.stars.size(); ++i) {
    const Star& star = sd.stars[i];
    if (static_cast<int>(star.leaves.size()) != k) {
      diag.push_back("star " + std::to_string(i) + " at " + std::to_string(star.center) + " has " +
                     std::to_string(star.leaves.size()) + " edges, expected " + std::to_string(k));
    }
    for (int leaf : star.leaves) consume(star.center, leaf);
  }
  for (const Edge& e : sd.leftover) consume(e.u, e.v);

  long long uncovered = 0;
  for (const auto& [key, count] : remaining) uncovered += count;
  if (uncovered > 0) diag.push_back("uncovered edges: " + std::to_string(uncovered));
  if (k >= 1 && static_cast<long long>(sd.leftover.size()) > k - 1) {
    diag.push_back("leftover has " + std::to_string(sd.leftover.size()) + " edges, more than k - 1");
  }
  if (require_exact) {
    if (!sd.leftover.empty()) diag.push_back("exact decomposition has leftover edges");
    if (k >= 1 && g.num_edges() % k != 0) diag.push_back("k does not divide e(G)");
  }
  out.valid = diag.empty();
  return out;
}

Lemma25Check check_lemma25(const Graph& g, const VertexSet& a, int d_hat, double c, int k) {
  const int n = g.num_vertices();
  if (n > kOrientationBruteForceMaxVertices) throw PreconditionError("check_lemma25: more than 20 vertices");
  const auto degree = g.regular_degree();
  if (!degree) throw PreconditionError("check_lemma25: graph is not regular");
  const int d = *degree;
  if (!(2LL * k > d)) throw PreconditionError("check_lemma25: requires k > d/2");
  if (!(d_hat >= 1 && d_hat < k)) throw PreconditionError("check_lemma25: requires 1 <= d_hat < k");
  if (!(c > 0.0 && c < 1.0)) throw PreconditionError("check_lemma25: requires 0 < c < 1");

  Lemma25Check out;
  // |A| = (1 - d/(2k)) N  <=>  2k|A| = (2k - d) N
  const bool density = 2LL * k * a.size() == (2LL * k - d) * n;
  out.thin_with_density = graph::is_independent(g, a) && graph::check_thin(g, a, d_hat) && density;

  const InducedSubgraph sub = graph::induced_subgraph(g, a.complement());
  const std::vector<int> count = induced_counts(sub.graph);
  const double alpha = 1.0 - static_cast<double>(d) / (2.0 * k);
  const double small_cap = c * n;
  const double large_cap = (1.0 - alpha - c) * n;
  out.small_sets_sparse = true;
  out.large_sets_sparse = true;
  for (std::uint32_t mask = 0; mask < count.size(); ++mask) {
    const int size = std::popcount(mask);
    if (size <= small_cap + 1e-9 && count[mask] > static_cast<long long>(d - k) * size) {
      out.small_sets_sparse = false;
    }
    if (size < large_cap - 1e-9 && count[mask] > static_cast<long long>(k - d_hat) * size) {
      out.large_sets_sparse = false;
    }
  }
  return out;
}

void write_decomposition(std::ostream& out, const StarDecomposition& sd) {
  out << sd.k << ' ' << sd.leftover.size() << '\n';
  for (const Star& star : sd.stars) {
    out << star.center;
    for (int leaf : star.leaves) out << ' ' << leaf;
    out << '\n';
  }
  for (const Edge& e : sd.leftover) out << e.u << ' ' << e.v << '\n';
}

StarDecomposition read_decomposition(std::istream& in) {
  std::vector<std::vector<long long>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::vector<long long> row;
    std::string token;
    while (tokens >> token) {
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        throw ParseError("decomposition line " + std::to_string(line_no) + ": not an integer");
      }
      row.push_back(value);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().size() != 2) throw ParseError("decomposition: header must be 'k r'");
  const long long k = rows.front()[0];
  const long long r = rows.front()[1];
  if (k < 1 || r < 0 || r > static_cast<long long>(rows.size()) - 1) {
    throw ParseError("decomposition: invalid header values");
  }
  StarDecomposition sd;
  sd.k = static_cast<int>(k);
  const std::size_t first_leftover = rows.size() - static_cast<std::size_t>(r);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (i >= first_leftover) {
      if (row.size() != 2) throw ParseError("decomposition: leftover line must be 'u v'");
      sd.leftover.push_back(Edge{static_cast<int>(row[0]), static_cast<int>(row[1])});
    } else {
      if (row.size() < 2) throw ParseError("decomposition: star line needs a centre and leaves");
      Star star{static_cast<int>(row[0]), {}};
      for (std::size_t j = 1; j < row.size(); ++j) star.leaves.push_back(static_cast<int>(row[j]));
      sd.stars.push_back(std::move(star));
    }
  }
  return sd;
}

}  // namespace stardecomp::decomp
