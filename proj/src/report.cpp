#include "stardecomp/report.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace stardecomp::report {

namespace {

json optional_double(bool present, double value) { return present ? json(value) : json(nullptr); }

std::string csv_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string_view to_string(decomp::OrientationMode mode) {
  return mode == decomp::OrientationMode::exact ? "exact" : "at_most";
}

// The attempt whose numbers describe a degree: the certified one, else the
// first (k = k_ind).
const certify::CertifyResult* representative(const certify::DegreeOutcome& o) {
  if (const auto* r = o.certified_result()) return r;
  return o.results.empty() ? nullptr : &o.results.front();
}

}  // namespace

json to_json(const analytic::ThresholdReport& r) {
  return {
      {"d", r.d},
      {"alpha_fm", r.alpha_fm},
      {"alpha_fc_estimate", optional_double(r.d >= 20, r.d >= 20 ? analytic::alpha_fc_estimate(r.d) : 0.0)},
      {"alpha_lower_ref", r.alpha_lower_ref},
      {"alpha_source", analytic::to_string(r.alpha_source)},
      {"alpha_star", r.alpha_star},
      {"kappa_star", r.kappa_star},
      {"k_ind", r.k_ind},
      {"frac_part", r.frac_part},
      {"frac_threshold", r.frac_threshold},
      {"frac_condition_met", r.frac_cond_met},
  };
}

json to_json(const certify::GridOptions& grid) {
  return {{"beta_step", grid.beta_step},
          {"tau_step", grid.tau_step},
          {"safety_margin", grid.safety_margin},
          {"max_refinements", grid.max_refinements}};
}

json to_json(const certify::CertifyResult& r) {
  json j = {
      {"k", r.k},
      {"certified", r.certified},
      {"condition", certify::to_string(r.condition())},
      {"inconclusive", r.inconclusive},
      {"t1", r.t1},
      {"x1", r.x1},
      {"x2", r.x2},
      {"t2", r.t2},
      {"d_hat", r.d_hat},
      {"tau_plus", r.tau_plus},
      {"beta_max", r.beta_max},
      {"strong", r.strong_condition_met},
      {"weak", r.weak_condition_met},
  };
  if (r.worst_witness) {
    j["worst_witness"] = {{"beta", r.worst_witness->beta},
                          {"tau", r.worst_witness->tau},
                          {"slack", r.worst_witness->slack}};
  } else {
    j["worst_witness"] = nullptr;
  }
  j["failure"] = r.failure ? json(certify::to_string(*r.failure)) : json(nullptr);
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

json to_json(const certify::DegreeOutcome& o) {
  json j = {
      {"d", o.d},
      {"alpha", o.alpha},
      {"alpha_source", analytic::to_string(o.alpha_source)},
      {"k_ind", o.k_ind},
      {"k_certified", o.k_certified},
      {"exceptional", o.exceptional},
  };
  if (const auto* r = representative(o)) {
    j["t1"] = r->t1;
    j["x1"] = r->x1;
    j["x2"] = r->x2;
    j["t2"] = r->t2;
    j["d_hat"] = r->d_hat;
    j["beta_max"] = r->beta_max;
    j["condition"] = certify::to_string(r->condition());
  } else {
    for (const char* key : {"t1", "x1", "x2", "t2", "d_hat", "beta_max"}) j[key] = nullptr;
    j["condition"] = "failed";
  }
  json attempts = json::array();
  for (const auto& r : o.results) attempts.push_back(to_json(r));
  j["attempts"] = std::move(attempts);
  j["error"] = o.error.empty() ? json(nullptr) : json(o.error);
  return j;
}

json to_json(const certify::SweepReport& sweep) {
  json degrees = json::array();
  for (const auto& o : sweep.degrees) degrees.push_back(to_json(o));
  return {{"d_min", sweep.d_min},
          {"d_max", sweep.d_max},
          {"exceptional", sweep.exceptional()},
          {"degrees", std::move(degrees)}};
}

json to_json(const decomp::DecomposeOutcome& o) {
  json j = {
      {"success", o.success},
      {"attempts", o.attempts},
      {"seed_used", o.seed_used},
      {"independent_set_size", o.independent_set_size},
      {"target_size", o.target_size},
      {"repairs", o.repairs},
      {"mode", to_string(o.mode)},
  };
  if (o.decomposition) {
    j["stars"] = o.decomposition->stars.size();
    j["leftover"] = o.decomposition->leftover.size();
  } else {
    j["stars"] = nullptr;
    j["leftover"] = nullptr;
  }
  if (o.failure) {
    j["failure"] = {{"stage", o.failure->stage},
                    {"message", o.failure->message},
                    {"witness", o.failure->witness}};
  } else {
    j["failure"] = nullptr;
  }
  return j;
}

json to_json(const decomp::Verification& v) {
  return {{"valid", v.valid}, {"diagnostics", v.diagnostics}};
}

json envelope(std::string_view command, json config, json payload) {
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"command", command},
          {"config", std::move(config)},
          {"payload", std::move(payload)}};
}

void write_sweep_csv(std::ostream& out, const certify::SweepReport& sweep) {
  out << "d,alpha,alpha_source,k_ind,k_certified,exceptional,t1,x1,x2,t2,d_hat,beta_max,condition\n";
  for (const auto& o : sweep.degrees) {
    out << o.d << ',' << csv_double(o.alpha) << ',' << analytic::to_string(o.alpha_source) << ','
        << o.k_ind << ',' << o.k_certified << ',' << (o.exceptional ? 1 : 0);
    if (const auto* r = representative(o)) {
      out << ',' << csv_double(r->t1) << ',' << csv_double(r->x1) << ',' << csv_double(r->x2) << ','
          << csv_double(r->t2) << ',' << r->d_hat << ',' << csv_double(r->beta_max) << ','
          << certify::to_string(r->condition());
    } else {
      out << ",,,,,,,failed";
    }
    out << '\n';
  }
}

void write_exceptional_csv(std::ostream& out, const certify::SweepReport& sweep) {
  out << "d,k_ind,k_certified\n";
  for (const auto& o : sweep.degrees) {
    if (o.exceptional) out << o.d << ',' << o.k_ind << ',' << o.k_certified << '\n';
  }
}

}  // namespace stardecomp::report
