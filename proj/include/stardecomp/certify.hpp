#pragma once

// Decides, for a triple (d, k, alpha), whether a k-star decomposition of the
// random d-regular graph follows from the existence of an independent set
// of density alpha, and sweeps that decision across degree ranges.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stardecomp/alpha_table.hpp"
#include "stardecomp/analytic.hpp"

namespace stardecomp::certify {

enum class FailureKind {
  k_too_large,
  x2_nonpositive,
  dhat_underflow,
  no_sign_change,
  invalid_input,
  nothing_certified,
};

std::string_view to_string(FailureKind kind);

class CertifyError : public std::runtime_error {
 public:
  CertifyError(FailureKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  FailureKind kind() const { return kind_; }

 private:
  FailureKind kind_;
};

struct GridOptions {
  double beta_step = 1e-6;
  double tau_step = 1e-3;
  /// Extra additive margin; the effective margin is never below one grid
  /// cell's Lipschitz bound.
  double safety_margin = 0.0;
  /// Number of x10 local refinements before a margin-only violation is
  /// declared inconclusive.
  int max_refinements = 3;
};

struct CertifyInput {
  int d = 0;
  int k = 0;
  double alpha = 0.0;
  GridOptions grid;

  /// Throws CertifyError(invalid_input) unless d >= 3, d/2 < k < d - 1,
  /// 0 < alpha < 1/2 and both grid steps are positive.
  void validate() const;
};

struct Witness {
  double beta = 0.0;
  double tau = 0.0;
  /// (alpha - alpha_dk) - (tau d - d_hat) beta at the witness.
  double slack = 0.0;
};

enum class Condition { strong, weak, failed };

std::string_view to_string(Condition c);

struct CertifyResult {
  int d = 0;
  int k = 0;
  double alpha = 0.0;
  bool certified = false;
  double t1 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double t2 = 0.0;
  int d_hat = 0;
  double tau_plus = 0.0;
  double beta_max = 0.0;
  bool strong_condition_met = false;
  bool weak_condition_met = false;
  /// Some refined cell stayed within the Lipschitz margin of the bound.
  bool inconclusive = false;
  std::optional<Witness> worst_witness;
  /// Set when a stage of the procedure refused the input.
  std::optional<FailureKind> failure;
  std::string message;

  Condition condition() const;
};

/// First three steps of the procedure: t1, x1, x2, t2 and d_hat.
/// Throws CertifyError for k too large, x2 <= 0 or d_hat < 1.
CertifyResult derive_dhat(const CertifyInput& input);

/// Smallest beta > 0 with phi_hat(d, alpha, beta, tau_plus) < 0, rounded up
/// by one bisection tolerance. Zero when phi(d, alpha) < 0.
double beta_max(int d, double alpha, double tau_plus, double beta_step = 1e-6);

inline constexpr double kBetaTolerance = 1e-10;

struct ConditionCheck {
  bool strong = false;
  bool weak = false;
  bool inconclusive = false;
  std::optional<Witness> worst_witness;
};

/// Verifies the strong and weak thinning conditions on a (beta, tau) grid.
/// Never reports weak = true when some grid point with phi_hat >= 0
/// violates the bound.
ConditionCheck check_condition(int d, int k, int d_hat, double alpha, double beta_max,
                               const GridOptions& grid);

/// Runs the whole procedure for one (d, k, alpha).
CertifyResult certify(const CertifyInput& input);

struct DegreeOutcome {
  int d = 0;
  double alpha = 0.0;
  analytic::AlphaSource alpha_source = analytic::AlphaSource::estimate;
  int k_ind = 0;
  /// 0 when nothing in (d/2, k_ind] certifies.
  int k_certified = 0;
  bool exceptional = false;
  std::vector<CertifyResult> results;
  std::string error;

  const CertifyResult* certified_result() const;
};

/// Tries k = floor(kappa(d, alpha)), then decreasing k while k > d/2, and
/// stops at the first certified k.
DegreeOutcome certify_degree(int d, double alpha, const GridOptions& grid = {});

struct AlphaProvider {
  const AlphaTable* table = nullptr;
  bool allow_estimate = true;
};

struct SweepReport {
  int d_min = 0;
  int d_max = 0;
  std::vector<DegreeOutcome> degrees;

  std::vector<int> exceptional() const;
};

/// Per-degree certification over [d_min, d_max]. Degrees are processed by
/// up to `threads` workers; the report is ordered by degree and does not
/// depend on the schedule. Degrees without an alpha value carry an error.
SweepReport sweep(int d_min, int d_max, const AlphaProvider& alphas, const GridOptions& grid = {},
                  int threads = 1);

}  // namespace stardecomp::certify
