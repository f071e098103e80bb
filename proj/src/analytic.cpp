#include "stardecomp/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stardecomp/errors.hpp"

namespace stardecomp::analytic {

namespace {

constexpr double kSumTolerance = 1e-12;

void require_degree(int d, int min_d, const char* where) {
  if (d < min_d) {
    throw PreconditionError(std::string(where) + ": degree " + std::to_string(d) +
                            " below minimum " + std::to_string(min_d));
  }
}

}  // namespace

double h(double x) {
  if (std::isnan(x) || x < -kClampTolerance || x > 1.0 + kClampTolerance) {
    throw DomainError("h: argument " + std::to_string(x) + " outside [0,1]");
  }
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log(x);
}

double shannon_entropy(std::span<const double> dist) {
  double sum = 0.0;
  double entropy = 0.0;
  for (double p : dist) {
    if (p < -kClampTolerance) throw DomainError("shannon_entropy: negative probability");
    sum += p;
    entropy += h(p);
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DomainError("shannon_entropy: probabilities do not sum to 1");
  }
  return entropy;
}

void LabelDistribution::validate() const {
  double vsum = 0.0;
  for (const auto& [label, p] : vertex_probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("vertex probability outside [0,1]");
    vsum += p;
  }
  if (std::abs(vsum - 1.0) > kSumTolerance) throw DomainError("vertex probabilities do not sum to 1");

  double esum = 0.0;
  std::map<int, double> row_sums;
  for (const auto& [pair, p] : edge_probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability outside [0,1]");
    const auto mirror = edge_probs.find({pair.second, pair.first});
    const double q = mirror == edge_probs.end() ? 0.0 : mirror->second;
    if (p != q) throw DomainError("edge distribution is not symmetric");
    if (!vertex_probs.contains(pair.first) || !vertex_probs.contains(pair.second)) {
      throw DomainError("edge distribution uses an unknown label");
    }
    esum += p;
    row_sums[pair.first] += p;
  }
  if (std::abs(esum - 1.0) > kSumTolerance) throw DomainError("edge probabilities do not sum to 1");
  for (const auto& [label, p] : vertex_probs) {
    const auto it = row_sums.find(label);
    const double marginal = it == row_sums.end() ? 0.0 : it->second;
    if (std::abs(marginal - p) > kSumTolerance) {
      throw DomainError("edge marginal differs from vertex distribution");
    }
  }
}

LabelDistribution LabelDistribution::independent_set(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw DomainError("independent_set: density outside [0,1/2]");
  LabelDistribution dist;
  dist.vertex_probs = {{0, alpha}, {1, 1.0 - alpha}};
  dist.edge_probs = {{{0, 0}, 0.0}, {{0, 1}, alpha}, {{1, 0}, alpha}, {{1, 1}, 1.0 - 2.0 * alpha}};
  return dist;
}

double first_moment_rate(const LabelDistribution& dist, int d) {
  require_degree(d, 3, "first_moment_rate");
  dist.validate();
  double h_vertex = 0.0;
  for (const auto& [label, p] : dist.vertex_probs) h_vertex += h(p);
  double h_edge = 0.0;
  for (const auto& [pair, p] : dist.edge_probs) h_edge += h(p);
  return 0.5 * d * h_edge - (d - 1) * h_vertex;
}

double phi(int d, double alpha) {
  require_degree(d, 1, "phi");
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw DomainError("phi: alpha outside [0,1/2]");
  return h(alpha) + 0.5 * d * h(1.0 - 2.0 * alpha) - (d - 1) * h(1.0 - alpha);
}

bool phi_hat_in_domain(double alpha, double beta, double tau) {
  return alpha >= 0.0 && alpha <= 0.5 && beta >= 0.0 && tau >= 0.0 && tau <= 1.0 &&
         alpha - tau * beta >= -kClampTolerance &&
         1.0 - 2.0 * alpha - (1.0 - tau) * beta >= -kClampTolerance &&
         1.0 - alpha - beta >= -kClampTolerance;
}

double phi_hat(int d, double alpha, double beta, double tau) {
  require_degree(d, 1, "phi_hat");
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw DomainError("phi_hat: alpha outside [0,1/2]");
  if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("phi_hat: tau outside [0,1]");
  if (!(beta >= 0.0 && beta <= 1.0 - 2.0 * alpha + kClampTolerance)) {
    throw DomainError("phi_hat: beta outside [0, 1-2 alpha]");
  }
  // h rejects arguments below -kClampTolerance.
  const double edge = 2.0 * h(beta) + 2.0 * beta * (h(tau) + h(1.0 - tau)) +
                      2.0 * h(alpha - tau * beta) +
                      2.0 * h(1.0 - 2.0 * alpha - (1.0 - tau) * beta) - h(1.0 - 2.0 * alpha);
  const double vertex = h(alpha) + h(beta) + h(1.0 - alpha - beta);
  return 0.5 * d * edge - (d - 1) * vertex;
}

double coupling_entropy_gap(double a1, double a2, double p12) {
  if (!(a1 > 0.0 && a2 > 0.0)) throw DomainError("coupling_entropy_gap: row sums must be positive");
  if (!(p12 >= 0.0 && p12 <= std::min(a1, a2))) {
    throw DomainError("coupling_entropy_gap: p12 outside [0, min(a1,a2)]");
  }
  const double independent = 2.0 * h(a1) + 2.0 * h(a2) - h(a1 + a2);
  const double actual = h(a1 - p12) + 2.0 * h(p12) + h(a2 - p12);
  return independent - actual;
}

double subset_rate(int d, double x, double t) {
  require_degree(d, 1, "subset_rate");
  if (!(x >= 0.0 && x <= t && t <= 1.0)) throw DomainError("subset_rate: requires 0 <= x <= t <= 1");
  return h(t * x) + 2.0 * h((1.0 - t) * x) + h(1.0 - (2.0 - t) * x) -
         (2.0 - 2.0 / d) * (h(x) + h(1.0 - x));
}

double alpha_fm(int d) {
  require_degree(d, 3, "alpha_fm");
  return bisect([d](double a) { return phi(d, a); }, 1e-300, 0.5);
}

double alpha_fc_estimate(int d) {
  require_degree(d, 20, "alpha_fc_estimate");
  const double correction = 2.0 / std::numbers::e * std::log(d) / d;
  return alpha_fm(d) - correction * correction;
}

double alpha_lower_ref(int d) {
  require_degree(d, 3, "alpha_lower_ref");
  const double ld = std::log(static_cast<double>(d));
  return 2.0 / d * (ld - std::log(ld) + 1.0 - std::numbers::ln2);
}

double g(int d, double x) {
  require_degree(d, 3, "g");
  if (!(x > 0.0 && x < 1.0)) throw DomainError("g: x outside (0,1)");
  return bisect([d, x](double t) { return subset_rate(d, x, t); }, x, 1.0);
}

double g_inv(int d, double t) {
  require_degree(d, 3, "g_inv");
  if (!(t > 2.0 / d && t < 1.0)) throw DomainError("g_inv: t outside (2/d, 1)");
  return bisect([d, t](double x) { return g(d, x) - t; }, 1e-15, 1.0 - 1e-15);
}

double alpha_dk(int d, int k) {
  if (!(2 * static_cast<long long>(k) > d)) throw PreconditionError("alpha_dk: requires k > d/2");
  return 1.0 - static_cast<double>(d) / (2.0 * k);
}

double kappa(int d, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw PreconditionError("kappa: alpha outside [0,1)");
  return static_cast<double>(d) / (2.0 * (1.0 - alpha));
}

std::string_view to_string(AlphaSource source) {
  switch (source) {
    case AlphaSource::table: return "table";
    case AlphaSource::estimate: return "estimate";
    case AlphaSource::first_moment: return "first_moment";
  }
  return "unknown";
}

ThresholdReport threshold_report(int d, double alpha_star, AlphaSource source) {
  require_degree(d, 3, "threshold_report");
  if (!(alpha_star > 0.0 && alpha_star < 0.5)) {
    throw PreconditionError("threshold_report: alpha_star outside (0,1/2)");
  }
  ThresholdReport r;
  r.d = d;
  r.alpha_fm = alpha_fm(d);
  r.alpha_source = source;
  r.alpha_star = alpha_star;
  r.kappa_star = kappa(d, alpha_star);
  r.k_ind = static_cast<int>(std::floor(r.kappa_star));
  r.frac_part = r.kappa_star - r.k_ind;
  const double ld = std::log(static_cast<double>(d));
  r.frac_threshold = ld * ld * ld / d;
  // An integral kappa_star gives frac_part == 0, which never passes.
  r.frac_cond_met = r.frac_part > r.frac_threshold;
  r.alpha_lower_ref = alpha_lower_ref(d);
  return r;
}

}  // namespace stardecomp::analytic
