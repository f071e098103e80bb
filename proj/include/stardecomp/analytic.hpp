#pragma once

// Entropy functions and analytic thresholds for k-star decompositions of
// random d-regular graphs. Everything here is pure; natural logarithms
// throughout.

#include <map>
#include <span>
#include <string_view>
#include <utility>

namespace stardecomp::analytic {

/// Arguments of h in [-kClampTolerance, 0] are treated as 0.
inline constexpr double kClampTolerance = 1e-12;
/// Absolute tolerance of every bisection root finder in this module.
inline constexpr double kRootTolerance = 1e-12;
inline constexpr int kMaxBisectionSteps = 200;

/// h(x) = -x log x with h(0) = 0.
double h(double x);

/// Sum of h over a probability vector.
double shannon_entropy(std::span<const double> dist);

/// Joint vertex/edge label statistics of a labelled regular graph.
/// `edge_probs` is over ordered label pairs and must be symmetric with both
/// marginals equal to `vertex_probs`.
struct LabelDistribution {
  std::map<int, double> vertex_probs;
  std::map<std::pair<int, int>, double> edge_probs;

  /// Throws DomainError when an invariant fails.
  void validate() const;

  /// The {0,1} labelling describing an independent set of density alpha
  /// (label 0 = inside the set).
  static LabelDistribution independent_set(double alpha);
};

/// Exponential growth rate (d/2) H(edge) - (d-1) H(vertex) of the expected
/// number of labellings with the given local statistics.
double first_moment_rate(const LabelDistribution& dist, int d);

/// Independent-set entropy h(a) + (d/2) h(1-2a) - (d-1) h(1-a), a in [0,1/2].
double phi(int d, double alpha);

/// Entropy of an independent set A of density alpha together with a set B
/// of density beta whose vertices send on average tau*d edges into A.
double phi_hat(int d, double alpha, double beta, double tau);

/// True when every h-argument of phi_hat is >= -kClampTolerance.
bool phi_hat_in_domain(double alpha, double beta, double tau);

/// Entropy deficit of a symmetric 2x2 coupling with row sums a1, a2 and
/// off-diagonal mass p12 relative to the independent coupling. Never
/// negative; zero at p12 = a1 a2 / (a1 + a2).
double coupling_entropy_gap(double a1, double a2, double p12);

/// Growth rate (up to the factor d/2) of subsets of density x whose induced
/// subgraph has average degree t*d. Requires 0 <= x <= t <= 1.
double subset_rate(int d, double x, double t);

/// First moment bound: unique root of phi(d, .) on (0, 1/2).
double alpha_fm(int d);

/// alpha_fm(d) - (2/e * log d / d)^2. Uncontrolled error; d >= 20.
double alpha_fc_estimate(int d);

/// (2/d)(log d - log log d + 1 - log 2). Reference value only.
double alpha_lower_ref(int d);

/// Root in t of subset_rate(d, x, .) on [x, 1], x in (0,1). Maps (0,1)
/// increasingly onto (2/d, 1).
double g(int d, double x);

/// Inverse of g(d, .), t in (2/d, 1).
double g_inv(int d, double t);

/// Density 1 - d/(2k) of the non-centre vertices of a k-star decomposition.
double alpha_dk(int d, int k);

/// d / (2(1 - alpha)); inverse of k -> alpha_dk(d, k).
double kappa(int d, double alpha);

enum class AlphaSource { table, estimate, first_moment };

std::string_view to_string(AlphaSource source);

struct ThresholdReport {
  int d = 0;
  double alpha_fm = 0.0;
  AlphaSource alpha_source = AlphaSource::estimate;
  double alpha_star = 0.0;
  double kappa_star = 0.0;
  int k_ind = 0;
  double frac_part = 0.0;
  double frac_threshold = 0.0;  // (log d)^3 / d
  bool frac_cond_met = false;
  double alpha_lower_ref = 0.0;
};

/// Summary for degree d under the assumption alpha_star = asymptotic
/// independence ratio.
ThresholdReport threshold_report(int d, double alpha_star, AlphaSource source);

/// Bisection for a sign change of f on [lo, hi]. Requires f(lo) and f(hi)
/// to have opposite strict signs. Stops when hi - lo < tol.
template <class F>
double bisect(F&& f, double lo, double hi, double tol = kRootTolerance);

}  // namespace stardecomp::analytic

#include "stardecomp/errors.hpp"

namespace stardecomp::analytic {

template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo > 0.0 && fhi < 0.0) && !(flo < 0.0 && fhi > 0.0)) {
    throw DomainError("bisect: no sign change on bracket");
  }
  const bool lo_positive = flo > 0.0;
  for (int i = 0; i < kMaxBisectionSteps && hi - lo >= tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace stardecomp::analytic
