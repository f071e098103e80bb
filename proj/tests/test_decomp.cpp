#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "stardecomp/decomp.hpp"
#include "stardecomp/errors.hpp"

using namespace stardecomp::decomp;
using stardecomp::PreconditionError;
using stardecomp::Rng;
namespace gr = stardecomp::graph;

namespace {

VertexSet set_of(int n, std::initializer_list<int> ids) {
  std::vector<int> v(ids);
  return VertexSet(n, v);
}

// Restatement of the thinning rule without the library helpers.
int expected_removals(const Graph& g, const VertexSet& a, int d_hat) {
  std::vector<char> in(g.num_vertices());
  for (int v : a.ids()) in[v] = 1;
  int removed = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (a.contains(v)) continue;
    std::vector<int> nbrs;
    for (const Edge& e : g.edges()) {
      if (e.u == v && in[e.v]) nbrs.push_back(e.v);
      if (e.v == v && in[e.u]) nbrs.push_back(e.u);
    }
    std::sort(nbrs.begin(), nbrs.end());
    std::size_t count = nbrs.size();
    for (std::size_t i = 0; count > static_cast<std::size_t>(d_hat); ++i) {
      in[nbrs[i]] = 0;
      --count;
      ++removed;
    }
  }
  return removed;
}

Graph sample(int n, int d, std::uint64_t seed) { return gr::sample_simple(n, d, seed, 1000000).graph; }

}  // namespace

TEST_CASE("thin_down") {
  SUBCASE("already thin") {
    const Graph c6 = oracle::cycle(6);
    const auto a = set_of(6, {0, 2, 4});
    const auto t = thin_down(c6, a, 2);
    CHECK(t.set == a);
    CHECK(t.verified);
  }
  SUBCASE("one overfull vertex loses its lowest neighbour") {
    const Graph g(4, {{0, 1}, {0, 2}, {0, 3}});
    const auto t = thin_down(g, set_of(4, {1, 2, 3}), 2);
    CHECK(t.set == set_of(4, {2, 3}));
    CHECK(t.verified);
  }
  SUBCASE("sampled G(200, 8) against a recount") {
    const Graph g = gr::config_model_sample(200, 8, 21);
    const auto a = gr::greedy_independent_set(g, 3);
    const auto t = thin_down(g, a, 5);
    CHECK(t.verified);
    CHECK(gr::check_thin(g, t.set, 5));
    CHECK(a.size() - t.set.size() == expected_removals(g, a, 5));
  }
  CHECK_THROWS_AS(thin_down(oracle::cycle(4), set_of(4, {0, 1}), 1), PreconditionError);
}

TEST_CASE("adjust_size") {
  const Graph g = oracle::cycle(12);
  const ThinIndependentSet a{set_of(12, {0, 2, 4, 6, 8, 10}), 2, true};
  CHECK(adjust_size(g, a, 6).set == a.set);
  const auto smaller = adjust_size(g, a, 3);
  CHECK(smaller.set == set_of(12, {0, 2, 4}));
  CHECK(smaller.verified);
  try {
    adjust_size(g, a, 7);
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "adjust_size");
  }
}

TEST_CASE("in_regular_orientation") {
  SUBCASE("cycles and triangle") {
    for (int n : {3, 4, 9}) {
      const Graph c = oracle::cycle(n);
      const auto r = in_regular_orientation(c, 1, OrientationMode::exact);
      REQUIRE(r.feasible);
      for (int in : r.orientation->in_degrees(c)) CHECK(in == 1);
    }
  }
  SUBCASE("K4 plus two isolated vertices") {
    const Graph g = oracle::k4_plus_isolated(2);
    const auto r = in_regular_orientation(g, 1, OrientationMode::exact);
    CHECK_FALSE(r.feasible);
    CHECK(r.flow == 4);
    REQUIRE(r.violating_set);
    CHECK(*r.violating_set == set_of(6, {0, 1, 2, 3}));
    CHECK(gr::induced_edges(g, *r.violating_set) > 1LL * r.violating_set->size());
  }
  SUBCASE("at most") {
    const Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 3}});
    const auto r = in_regular_orientation(g, 1, OrientationMode::at_most);
    REQUIRE(r.feasible);
    for (int in : r.orientation->in_degrees(g)) CHECK(in <= 1);
  }
  SUBCASE("edgeless") {
    CHECK(in_regular_orientation(Graph(3, {}), 0, OrientationMode::exact).feasible);
  }
  CHECK_THROWS_AS(in_regular_orientation(oracle::cycle(4), 2, OrientationMode::exact), PreconditionError);
  CHECK_THROWS_AS(in_regular_orientation(oracle::complete(4), 1, OrientationMode::at_most), PreconditionError);
}

TEST_CASE("orientation_feasible_bruteforce") {
  CHECK(orientation_feasible_bruteforce(Graph(4, {}), 0).feasible);
  const auto k4 = orientation_feasible_bruteforce(oracle::k4_plus_isolated(2), 1);
  CHECK_FALSE(k4.feasible);
  REQUIRE(k4.witness);
  CHECK(*k4.witness == set_of(6, {0, 1, 2, 3}));
  CHECK(k4.complement_form_agrees == true);
  CHECK_FALSE(orientation_feasible_bruteforce(oracle::complete(4), 2).complement_form_agrees.has_value());
}

TEST_CASE("max-flow feasibility agrees with exhaustive checking") {
  Rng rng(31337);
  int infeasible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(14));
    const int ell = static_cast<int>(rng.below(4));
    const int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(ell) * n + 1));
    const Graph h = oracle::random_multigraph(rng, n, m);
    const auto flow = in_regular_orientation(h, ell, OrientationMode::at_most);
    const auto brute = orientation_feasible_bruteforce(h, ell);
    CHECK(flow.feasible == brute.feasible);
    if (!flow.feasible) {
      ++infeasible;
      CHECK(gr::induced_edges(h, *flow.violating_set) > 1LL * ell * flow.violating_set->size());
    } else {
      for (int in : flow.orientation->in_degrees(h)) CHECK(in <= ell);
    }
    if (brute.complement_form_agrees) CHECK(*brute.complement_form_agrees);
  }
  CHECK(infeasible > 0);
}

TEST_CASE("stars_from_orientation") {
  SUBCASE("C4 with k = 2") {
    const Graph c4 = oracle::cycle(4);
    const auto a = set_of(4, {0, 2});
    const auto sub = gr::induced_subgraph(c4, a.complement());
    const auto r = in_regular_orientation(sub.graph, 0, OrientationMode::exact);
    REQUIRE(r.feasible);
    const auto sd = stars_from_orientation(c4, a, sub, *r.orientation, 2);
    REQUIRE(sd.stars.size() == 2);
    CHECK(sd.stars[0].center == 1);
    CHECK(sd.stars[1].center == 3);
    for (const auto& s : sd.stars) {
      auto leaves = s.leaves;
      std::sort(leaves.begin(), leaves.end());
      CHECK(leaves == std::vector<int>{0, 2});
    }
    CHECK(sd.leftover.empty());
  }
  SUBCASE("exact mode on G(120, 6), k = 4") {
    const Graph g = sample(120, 6, 5);
    const auto outcome = decompose(g, 4, {5, 10});
    REQUIRE(outcome.success);
    CHECK(outcome.mode == OrientationMode::exact);
    const auto& sd = *outcome.decomposition;
    CHECK(sd.stars.size() == 120 * 6 / 8);
    CHECK(sd.leftover.empty());
    CHECK(verify_decomposition(g, sd, true).valid);
  }
}

TEST_CASE("decompose") {
  SUBCASE("C4, k = 2") {
    const auto outcome = decompose(oracle::cycle(4), 2);
    REQUIRE(outcome.success);
    CHECK(outcome.decomposition->stars.size() == 2);
  }
  SUBCASE("Petersen, k = 3") {
    const Graph p = oracle::petersen();
    CHECK(oracle::independence_number(p) == 4);
    CHECK(required_independent_set_size(10, 3, 3) == 5);
    const auto outcome = decompose(p, 3);
    CHECK_FALSE(outcome.success);
    REQUIRE(outcome.failure);
    CHECK(outcome.failure->stage == "adjust_size");
    CHECK(outcome.attempts == 10);
  }
  SUBCASE("near decomposition") {
    const Graph g = sample(102, 6, 3);
    const auto outcome = decompose(g, 4, {1, 10});
    REQUIRE(outcome.success);
    CHECK(outcome.mode == OrientationMode::at_most);
    CHECK(outcome.decomposition->leftover.size() == 306 % 4);
    CHECK(verify_decomposition(g, *outcome.decomposition).valid);
  }
  CHECK_THROWS_AS(decompose(oracle::cycle(4), 1), PreconditionError);
  CHECK_THROWS_AS(decompose(Graph(3, {{0, 1}}), 1), PreconditionError);
  CHECK_THROWS_AS(decompose(Graph(2, {{0, 1}, {0, 1}}), 2), PreconditionError);
}

TEST_CASE("repair_swap keeps size, independence and thinness") {
  Rng rng(4242);
  int swaps = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = sample(200, 6, rng.next());
    const auto thin = thin_down(g, gr::greedy_independent_set(g, rng.next()), 4);
    auto a = adjust_size(g, thin, 50).set;
    const auto sub = gr::induced_subgraph(g, a.complement());
    const auto r = in_regular_orientation(sub.graph, 2, OrientationMode::at_most);
    if (r.feasible) continue;
    VertexSet u(200);
    for (int v : r.violating_set->ids()) u.insert(sub.parent_vertex[v]);
    const auto before = a;
    if (!repair_swap(g, a, u, 4)) continue;
    ++swaps;
    CHECK(a.size() == before.size());
    CHECK(gr::is_independent(g, a));
    CHECK(gr::check_thin(g, a, 4));
    int added = 0;
    for (int v : a.ids()) added += !before.contains(v);
    CHECK(added == 1);
  }
  CHECK(swaps > 0);
  VertexSet none(4);
  CHECK_FALSE(repair_swap(oracle::cycle(4), none, VertexSet(4), 2));
}

TEST_CASE("plain pipeline without repairs") {
  const Graph g = sample(120, 6, 5);
  DecomposeOptions plain{5, 10, 0};
  const auto outcome = decompose(g, 4, plain);
  CHECK(outcome.repairs == 0);
  if (outcome.success) CHECK(verify_decomposition(g, *outcome.decomposition, true).valid);
}

TEST_CASE("verify_decomposition diagnostics") {
  const Graph g = sample(40, 3, 2);
  const auto outcome = decompose(g, 2, {1, 10});
  REQUIRE(outcome.success);
  const auto good = *outcome.decomposition;
  CHECK(verify_decomposition(g, good).valid);

  auto has = [](const Verification& v, const std::string& needle) {
    return std::any_of(v.diagnostics.begin(), v.diagnostics.end(),
                       [&](const std::string& s) { return s.find(needle) != std::string::npos; });
  };
  auto missing = good;
  missing.stars.pop_back();
  const auto v1 = verify_decomposition(g, missing);
  CHECK_FALSE(v1.valid);
  CHECK(has(v1, "uncovered edges"));

  auto doubled = good;
  doubled.stars[1].leaves.push_back(doubled.stars[0].leaves[0]);
  doubled.stars[1].center = doubled.stars[0].center;
  const auto v2 = verify_decomposition(g, doubled);
  CHECK_FALSE(v2.valid);
  CHECK(has(v2, "edge covered twice"));

  auto extra = good;
  extra.stars.pop_back();
  for (int leaf : good.stars.back().leaves) extra.leftover.push_back({good.stars.back().center, leaf});
  const auto v3 = verify_decomposition(g, extra);
  CHECK_FALSE(v3.valid);
  CHECK(has(v3, "leftover"));
}

TEST_CASE("check_lemma25") {
  const Graph c4 = oracle::cycle(4);
  CHECK_FALSE(check_lemma25(c4, VertexSet(4), 1, 0.5, 2).thin_with_density);

  Rng rng(99);
  int all_true = 0;
  int checked = 0;
  const struct {
    int n, d, k;
  } shapes[] = {{16, 3, 2}, {12, 4, 3}, {18, 4, 3}, {18, 5, 3}, {16, 6, 4}};
  for (int trial = 0; trial < 200; ++trial) {
    const auto& s = shapes[trial % 5];
    const Graph g = gr::sample_simple(s.n, s.d, rng.next(), 1000000).graph;
    const int d_hat = 1 + static_cast<int>(rng.below(s.k - 1));
    const double c = 0.05 + 0.9 * rng.uniform();
    const int target = required_independent_set_size(s.n, s.d, s.k);
    const auto thin = thin_down(g, gr::greedy_independent_set(g, rng.next()), d_hat);
    if (thin.set.size() < target) continue;
    const auto a = adjust_size(g, thin, target);
    const auto lemma = check_lemma25(g, a.set, d_hat, c, s.k);
    ++checked;
    CHECK(lemma.thin_with_density);
    if (!lemma.all()) continue;
    ++all_true;
    const auto sub = gr::induced_subgraph(g, a.set.complement());
    CHECK(in_regular_orientation(sub.graph, s.d - s.k, OrientationMode::exact).feasible);
  }
  MESSAGE("lemma conditions held on " << all_true << " of " << checked << " sized instances");
  CHECK(checked > 0);
}
