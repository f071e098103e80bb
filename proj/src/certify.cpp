#include "stardecomp/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "stardecomp/errors.hpp"

namespace stardecomp::certify {

using analytic::alpha_dk;
using analytic::phi_hat;
using analytic::phi_hat_in_domain;

std::string_view to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::k_too_large: return "k too large";
    case FailureKind::x2_nonpositive: return "x2 nonpositive";
    case FailureKind::dhat_underflow: return "d_hat underflow";
    case FailureKind::no_sign_change: return "no sign change";
    case FailureKind::invalid_input: return "invalid input";
    case FailureKind::nothing_certified: return "nothing certified";
  }
  return "unknown";
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::strong: return "strong";
    case Condition::weak: return "weak";
    case Condition::failed: return "failed";
  }
  return "failed";
}

void CertifyInput::validate() const {
  auto fail = [](const std::string& msg) { throw CertifyError(FailureKind::invalid_input, msg); };
  if (d < 3) fail("d must be at least 3");
  if (!(2 * static_cast<long long>(k) > d)) fail("k must exceed d/2");
  if (!(alpha > 0.0 && alpha < 0.5)) fail("alpha must lie in (0, 1/2)");
  if (!(grid.beta_step > 0.0 && grid.tau_step > 0.0)) fail("grid steps must be positive");
  if (grid.safety_margin < 0.0) fail("safety margin must be nonnegative");
}

Condition CertifyResult::condition() const {
  if (!certified) return Condition::failed;
  return strong_condition_met ? Condition::strong : Condition::weak;
}

CertifyResult derive_dhat(const CertifyInput& input) {
  input.validate();
  const int d = input.d;
  const int k = input.k;
  CertifyResult r;
  r.d = d;
  r.k = k;
  r.alpha = input.alpha;
  r.t1 = 2.0 * (d - k) / d;
  if (d - k < 2) {
    throw CertifyError(FailureKind::k_too_large, "t1 = 2(d-k)/d is not above 2/d");
  }
  const double adk = alpha_dk(d, k);
  r.x1 = analytic::g_inv(d, r.t1);
  r.x2 = 1.0 - adk - r.x1;
  if (!(r.x2 > 0.0)) {
    throw CertifyError(FailureKind::x2_nonpositive, "x1 >= 1 - alpha_dk");
  }
  r.t2 = analytic::g(d, r.x2);
  r.d_hat = static_cast<int>(std::floor(k - r.t2 * d / 2.0));
  if (r.d_hat < 1) {
    throw CertifyError(FailureKind::dhat_underflow, "d_hat = floor(k - t2 d/2) < 1");
  }
  r.tau_plus = static_cast<double>(r.d_hat + 1) / d;
  return r;
}

double beta_max(int d, double alpha, double tau_plus, double beta_step) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw PreconditionError("beta_max: alpha outside (0,1/2)");
  if (!(tau_plus > 0.0 && tau_plus <= 1.0)) throw PreconditionError("beta_max: tau_plus outside (0,1]");
  if (!(beta_step > 0.0)) throw PreconditionError("beta_max: step must be positive");
  if (analytic::phi(d, alpha) < 0.0) return 0.0;

  const double beta_limit = std::min(1.0 - 2.0 * alpha, alpha / tau_plus);
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
  for (long long j = 1;; ++j) {
    const double beta = static_cast<double>(j) * beta_step;
    if (beta > beta_limit) break;
    if (phi_hat(d, alpha, beta, tau_plus) < 0.0) {
      hi = beta;
      found = true;
      break;
    }
    lo = beta;
  }
  if (!found) {
    throw CertifyError(FailureKind::no_sign_change, "phi_hat stays nonnegative up to beta = 1 - 2 alpha");
  }
  while (hi - lo > kBetaTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (phi_hat(d, alpha, mid, tau_plus) < 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi + kBetaTolerance;
}

namespace {

bool feasible_point(int d, double alpha, double beta, double tau) {
  return phi_hat_in_domain(alpha, beta, tau) && phi_hat(d, alpha, beta, tau) >= 0.0;
}

// Largest beta on the grid {j * step} U {beta_max} with phi_hat >= 0.
// beta = 0 always qualifies once phi(alpha) >= 0.
double coarse_top(int d, double alpha, double tau, double beta_max, double step) {
  if (feasible_point(d, alpha, beta_max, tau)) return beta_max;
  auto j = static_cast<long long>(std::floor(beta_max / step));
  if (static_cast<double>(j) * step >= beta_max) --j;
  for (; j > 0; --j) {
    const double beta = static_cast<double>(j) * step;
    if (feasible_point(d, alpha, beta, tau)) return beta;
  }
  return 0.0;
}

// Refines the top inside the coarse cell just above `top` at the finer step.
double refined_top(int d, double alpha, double tau, double beta_max, double coarse_step,
                   double fine_step, double top) {
  const double cell_end = std::min(top + coarse_step, beta_max);
  const auto count = static_cast<long long>(std::ceil((cell_end - top) / fine_step));
  for (long long j = count - 1; j > 0; --j) {
    const double beta = top + static_cast<double>(j) * fine_step;
    if (beta >= cell_end) continue;
    if (feasible_point(d, alpha, beta, tau)) return beta;
  }
  return top;
}

struct Row {
  long long index = 0;
  double tau = 0.0;
  double top = 0.0;
  double value = 0.0;
};

}  // namespace

ConditionCheck check_condition(int d, int k, int d_hat, double alpha, double beta_max_value,
                               const GridOptions& grid) {
  if (!(d_hat >= 1 && d_hat < k)) throw PreconditionError("check_condition: requires 1 <= d_hat < k");
  if (!(grid.beta_step > 0.0 && grid.tau_step > 0.0)) {
    throw PreconditionError("check_condition: grid steps must be positive");
  }
  ConditionCheck out;
  const double slack = alpha - alpha_dk(d, k);
  const double tau_plus = static_cast<double>(d_hat + 1) / d;
  if (!(slack > 0.0)) return out;

  const double strong_bound = (d - d_hat) * beta_max_value;
  out.strong = strong_bound < slack;
  if (beta_max_value == 0.0) {
    out.weak = true;
    out.worst_witness = Witness{0.0, tau_plus, slack};
    return out;
  }

  double worst_value = -1.0;
  auto note_witness = [&](const Row& row) {
    if (row.value > worst_value) {
      worst_value = row.value;
      out.worst_witness = Witness{row.top, row.tau, slack - row.value};
    }
  };

  bool violated = false;
  std::vector<Row> ambiguous;
  double beta_step = grid.beta_step;
  double tau_step = grid.tau_step;

  // Level 0: the full grid.
  {
    const double margin = std::max(grid.safety_margin, d * beta_step + d * beta_max_value * tau_step);
    std::vector<double> taus;
    for (long long i = 0;; ++i) {
      const double tau = tau_plus + static_cast<double>(i) * tau_step;
      if (tau >= 1.0 - 1e-12) break;
      taus.push_back(tau);
    }
    taus.push_back(1.0);
    for (std::size_t i = 0; i < taus.size(); ++i) {
      const double tau = taus[i];
      const double coeff = tau * d - d_hat;
      Row row{static_cast<long long>(i), tau, 0.0, 0.0};
      if (coeff <= 0.0) {
        note_witness(row);
        continue;
      }
      row.top = coarse_top(d, alpha, tau, beta_max_value, beta_step);
      row.value = coeff * row.top;
      note_witness(row);
      if (row.value >= slack) {
        violated = true;
      } else if (row.value + margin >= slack) {
        ambiguous.push_back(row);
      }
    }
  }

  // Local x10 refinements around rows that only fail through the margin.
  const double coarse_step = grid.beta_step;
  for (int level = 1; level <= grid.max_refinements && !violated && !ambiguous.empty() && !out.strong;
       ++level) {
    const double parent_tau_step = tau_step;
    beta_step /= 10.0;
    tau_step /= 10.0;
    const double margin = std::max(grid.safety_margin, d * beta_step + d * beta_max_value * tau_step);
    std::set<long long> visited;
    std::vector<Row> next;
    for (const Row& parent : ambiguous) {
      const auto centre = std::llround((parent.tau - tau_plus) / tau_step);
      const auto half = std::llround(parent_tau_step / tau_step);
      for (long long n = centre - half; n <= centre + half; ++n) {
        const double tau = tau_plus + static_cast<double>(n) * tau_step;
        if (n < 0 || tau > 1.0 + 1e-12) continue;
        if (!visited.insert(n).second) continue;
        const double t = std::min(tau, 1.0);
        const double coeff = t * d - d_hat;
        if (coeff <= 0.0) continue;
        Row row{n, t, 0.0, 0.0};
        const double top = coarse_top(d, alpha, t, beta_max_value, coarse_step);
        row.top = refined_top(d, alpha, t, beta_max_value, coarse_step, beta_step, top);
        row.value = coeff * row.top;
        note_witness(row);
        if (row.value >= slack) {
          violated = true;
        } else if (row.value + margin >= slack) {
          next.push_back(row);
        }
      }
    }
    ambiguous = std::move(next);
  }

  if (out.strong) {
    out.weak = true;
  } else if (violated) {
    out.weak = false;
  } else if (!ambiguous.empty()) {
    out.weak = false;
    out.inconclusive = true;
  } else {
    out.weak = true;
  }
  return out;
}

CertifyResult certify(const CertifyInput& input) {
  CertifyResult r;
  try {
    r = derive_dhat(input);
    r.beta_max = beta_max(input.d, input.alpha, r.tau_plus, input.grid.beta_step);
    const ConditionCheck check =
        check_condition(input.d, input.k, r.d_hat, input.alpha, r.beta_max, input.grid);
    r.strong_condition_met = check.strong;
    r.weak_condition_met = check.weak;
    r.inconclusive = check.inconclusive;
    r.worst_witness = check.worst_witness;
    r.certified = check.weak;
  } catch (const CertifyError& e) {
    r.d = input.d;
    r.k = input.k;
    r.alpha = input.alpha;
    r.certified = false;
    r.failure = e.kind();
    r.message = e.what();
  }
  return r;
}

const CertifyResult* DegreeOutcome::certified_result() const {
  for (const auto& r : results) {
    if (r.certified) return &r;
  }
  return nullptr;
}

DegreeOutcome certify_degree(int d, double alpha, const GridOptions& grid) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw PreconditionError("certify_degree: alpha outside (0,1/2)");
  if (d < 3) throw PreconditionError("certify_degree: d must be at least 3");
  DegreeOutcome out;
  out.d = d;
  out.alpha = alpha;
  out.k_ind = static_cast<int>(std::floor(analytic::kappa(d, alpha)));
  for (int k = out.k_ind; 2 * k > d; --k) {
    CertifyResult r = certify(CertifyInput{d, k, alpha, grid});
    const bool ok = r.certified;
    out.results.push_back(std::move(r));
    if (ok) {
      out.k_certified = k;
      break;
    }
  }
  if (out.k_certified == 0) {
    out.error = std::string(to_string(FailureKind::nothing_certified));
  }
  out.exceptional = out.k_certified < out.k_ind;
  return out;
}

std::vector<int> SweepReport::exceptional() const {
  std::vector<int> out;
  for (const auto& deg : degrees) {
    if (deg.exceptional) out.push_back(deg.d);
  }
  return out;
}

namespace {

DegreeOutcome run_degree(int d, const AlphaProvider& alphas, const GridOptions& grid) {
  DegreeOutcome out;
  out.d = d;
  try {
    double alpha = 0.0;
    analytic::AlphaSource source = analytic::AlphaSource::table;
    const auto from_table = alphas.table ? alphas.table->lookup(d) : std::nullopt;
    if (from_table) {
      alpha = *from_table;
    } else if (alphas.allow_estimate && d >= 20) {
      alpha = analytic::alpha_fc_estimate(d);
      source = analytic::AlphaSource::estimate;
    } else {
      out.error = "no alpha value for degree " + std::to_string(d);
      return out;
    }
    out = certify_degree(d, alpha, grid);
    out.alpha_source = source;
  } catch (const std::exception& e) {
    out = DegreeOutcome{};
    out.d = d;
    out.error = e.what();
  }
  return out;
}

}  // namespace

SweepReport sweep(int d_min, int d_max, const AlphaProvider& alphas, const GridOptions& grid,
                  int threads) {
  SweepReport report;
  report.d_min = d_min;
  report.d_max = d_max;
  if (d_max < d_min) return report;
  const int count = d_max - d_min + 1;
  report.degrees.resize(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      report.degrees[i] = run_degree(d_min + i, alphas, grid);
    }
  };
  const int workers = std::clamp(threads, 1, count);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  return report;
}

}  // namespace stardecomp::certify
