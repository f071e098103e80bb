#pragma once

// Constructive k-star decompositions: thin independent sets, max-flow
// in-regular orientations, star extraction and verification.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stardecomp/graph.hpp"

namespace stardecomp::decomp {

using graph::Edge;
using graph::Graph;
using graph::VertexSet;

/// Failure of one pipeline stage, tagged with the stage name.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

enum class OrientationMode { exact, at_most };

/// Head endpoint for every edge of a graph (loops point at their vertex).
struct Orientation {
  std::vector<int> head;
  int ell = 0;
  OrientationMode mode = OrientationMode::exact;

  std::vector<int> in_degrees(const Graph& g) const;
};

struct ThinIndependentSet {
  VertexSet set;
  int d_hat = 0;
  bool verified = false;
};

struct Star {
  int center = 0;
  /// Other endpoint of each star edge, in edge-id order.
  std::vector<int> leaves;
};

struct StarDecomposition {
  int k = 0;
  std::vector<Star> stars;
  std::vector<Edge> leftover;
};

/// Removes, for each v outside A in increasing order with more than d_hat
/// edges into the current set, the lowest-id neighbours of v until it has
/// at most d_hat.
ThinIndependentSet thin_down(const Graph& g, const VertexSet& a, int d_hat);

/// Drops the highest-id members until |A| = target. Throws
/// StageError("adjust_size", "set too small") when |A| < target.
ThinIndependentSet adjust_size(const Graph& g, const ThinIndependentSet& a, int target);

struct OrientationResult {
  bool feasible = false;
  long long flow = 0;
  std::optional<Orientation> orientation;
  /// Source side of the minimum cut restricted to vertices; e[U] > ell |U|.
  std::optional<VertexSet> violating_set;
};

/// exact: every in-degree equals ell (requires e(H) = ell |V(H)|).
/// at_most: every in-degree at most ell (requires e(H) <= ell |V(H)|).
OrientationResult in_regular_orientation(const Graph& h, int ell, OrientationMode mode);

inline constexpr int kOrientationBruteForceMaxVertices = 20;

struct BruteForceOrientation {
  bool feasible = false;
  /// First U (in increasing bitmask order) with e[U] > ell |U|.
  std::optional<VertexSet> witness;
  /// Whether the complement form e[V\U] + e[U, V\U] >= ell |V\U| agreed with
  /// e[U] <= ell |U| on every subset. Only meaningful when e(H) = ell |V(H)|.
  std::optional<bool> complement_form_agrees;
};

/// Exhaustive check of e[U] <= ell |U| over all subsets (n <= 20).
BruteForceOrientation orientation_feasible_bruteforce(const Graph& h, int ell);

/// Orients g: edges into A point at A, edges inside A^c follow `inner`
/// (an orientation of `sub`, the induced subgraph on A^c). Each vertex of
/// A^c becomes the centre of one star built from its first k out-edges in
/// edge-id order; surplus out-edges go to the leftover list.
StarDecomposition stars_from_orientation(const Graph& g, const VertexSet& a,
                                         const graph::InducedSubgraph& sub, const Orientation& inner,
                                         int k);

/// One swap guided by an infeasibility witness U (parent ids): adds the
/// lowest-id w in U with no neighbour in A whose addition keeps A k-thin,
/// then drops the member of A whose neighbours can best spare it (members
/// touching U last; ties to the lowest id). |A| is unchanged. Returns false
/// when no w qualifies.
bool repair_swap(const Graph& g, VertexSet& a, const VertexSet& violating, int k);

struct DecomposeOptions {
  std::uint64_t seed = 1;
  int max_retries = 10;
  /// Witness-guided swaps per attempt after an infeasible orientation;
  /// 0 runs the plain greedy/thin/trim pipeline.
  int repair_rounds = 20;
};

struct DecomposeFailure {
  std::string stage;
  std::string message;
  std::vector<int> witness;
};

struct DecomposeOutcome {
  bool success = false;
  int attempts = 0;
  std::uint64_t seed_used = 0;
  int independent_set_size = 0;
  int target_size = 0;
  /// Swaps made in the returned attempt.
  int repairs = 0;
  OrientationMode mode = OrientationMode::exact;
  std::optional<StarDecomposition> decomposition;
  std::optional<DecomposeFailure> failure;
};

/// Size ceil(alpha_dk N) of the independent set a k-star decomposition of
/// a d-regular N-vertex graph needs (exactly N - floor(N d / (2k))).
int required_independent_set_size(int n, int d, int k);

/// greedy_independent_set -> thin_down(k) -> adjust_size -> orientation of
/// g[A^c] with ell = d - k (with up to repair_rounds swaps on failure) ->
/// stars. Attempt i uses seed + i.
DecomposeOutcome decompose(const Graph& g, int k, const DecomposeOptions& options = {});

struct Verification {
  bool valid = false;
  std::vector<std::string> diagnostics;
};

/// Checks that stars and leftover partition the edge multiset of g, every
/// star has k edges at its centre and |leftover| <= k - 1. With
/// require_exact the leftover must be empty.
Verification verify_decomposition(const Graph& g, const StarDecomposition& sd,
                                  bool require_exact = false);

struct Lemma25Check {
  bool thin_with_density = false;
  bool small_sets_sparse = false;
  bool large_sets_sparse = false;
  bool all() const { return thin_with_density && small_sets_sparse && large_sets_sparse; }
};

/// Evaluates the three sufficient conditions separately by exhaustive
/// subset scans (n <= 20):
///  (i)   A is d_hat-thin with |A| = alpha_dk N exactly;
///  (ii)  e[U] <= (d-k)|U| for U in A^c, |U| <= cN;
///  (iii) e[W] <= (k-d_hat)|W| for W in A^c, |W| < (1 - alpha_dk - c)N.
Lemma25Check check_lemma25(const Graph& g, const VertexSet& a, int d_hat, double c, int k);

/// Text format: `k r`, one `center leaf_1 ... leaf_k` line per star, then r
/// `u v` leftover lines.
void write_decomposition(std::ostream& out, const StarDecomposition& sd);
StarDecomposition read_decomposition(std::istream& in);

}  // namespace stardecomp::decomp
