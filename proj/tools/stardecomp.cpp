// stardecomp command-line front end.
//
// Exit codes: 0 ok; 1 negative verdict (verify, decompose, or sample
// --simple running out of tries); 2 bad arguments; 3 alpha table lacks a
// degree and no fallback was allowed; 4 I/O or parse error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "stardecomp/alpha_table.hpp"
#include "stardecomp/analytic.hpp"
#include "stardecomp/certify.hpp"
#include "stardecomp/decomp.hpp"
#include "stardecomp/errors.hpp"
#include "stardecomp/graph.hpp"
#include "stardecomp/report.hpp"

namespace sd = stardecomp;
using nlohmann::json;

namespace {

constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMissingAlpha = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingAlpha : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_threads() {
  if (const char* env = std::getenv("STARDECOMP_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
    std::cerr << "ignoring invalid STARDECOMP_THREADS=" << env << '\n';
  }
  return 1;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return in;
}

// Writes to `path`, or stdout when it is empty.
template <class Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  auto out = open_out(path);
  write(out);
  if (!out) throw IoError("failed writing " + path);
}

std::optional<sd::AlphaTable> load_table(const std::string& path) {
  if (path.empty()) return std::nullopt;
  auto in = open_in(path);
  return sd::AlphaTable::parse(in);
}

json null_or(const std::string& s) { return s.empty() ? json(nullptr) : json(s); }

struct Options {
  int d = 0;
  int d_min = 0;
  int d_max = 0;
  int k = 0;
  int n = 0;
  std::uint64_t seed = 1;
  std::string alpha_table;
  std::string out;
  std::string format = "json";
  int threads = 1;
  bool simple = false;
  int max_retries = 10;
  int repair_rounds = sd::decomp::DecomposeOptions{}.repair_rounds;
  double beta_step = sd::certify::GridOptions{}.beta_step;
  double tau_step = sd::certify::GridOptions{}.tau_step;
  bool allow_estimate = false;
  std::string graph;
  std::string decomposition;
  bool exact = false;
};

int run_thresholds(const Options& o) {
  const auto table = load_table(o.alpha_table);
  double alpha = 0.0;
  auto source = sd::analytic::AlphaSource::first_moment;
  if (table && table->lookup(o.d)) {
    alpha = *table->lookup(o.d);
    source = sd::analytic::AlphaSource::table;
  } else if (o.d >= 20) {
    alpha = sd::analytic::alpha_fc_estimate(o.d);
    source = sd::analytic::AlphaSource::estimate;
  } else {
    alpha = sd::analytic::alpha_fm(o.d);
  }
  const auto r = sd::analytic::threshold_report(o.d, alpha, source);
  const json payload = sd::report::to_json(r);
  emit(o.out, [&](std::ostream& out) {
    if (o.format == "csv") {
      bool first = true;
      for (const auto& [key, value] : payload.items()) {
        out << (first ? "" : ",") << key;
        first = false;
      }
      out << '\n';
      first = true;
      for (const auto& [key, value] : payload.items()) {
        out << (first ? "" : ",") << (value.is_string() ? value.get<std::string>() : value.dump());
        first = false;
      }
      out << '\n';
    } else {
      const json config = {{"d", o.d}, {"alpha_table", null_or(o.alpha_table)}, {"seed", 0}};
      out << sd::report::envelope("thresholds", config, payload).dump(2) << '\n';
    }
  });
  return 0;
}

int run_certify(const Options& o) {
  const auto table = load_table(o.alpha_table);
  sd::certify::AlphaProvider provider;
  provider.table = table ? &*table : nullptr;
  provider.allow_estimate = !table || o.allow_estimate;
  if (table && !o.allow_estimate) {
    for (int d = o.d_min; d <= o.d_max; ++d) {
      if (!table->lookup(d)) throw MissingAlpha("alpha table has no entry for d = " + std::to_string(d));
    }
  }
  sd::certify::GridOptions grid;
  grid.beta_step = o.beta_step;
  grid.tau_step = o.tau_step;

  const auto sweep = sd::certify::sweep(o.d_min, o.d_max, provider, grid, o.threads);

  if (!o.out.empty()) {
    emit(o.out, [&](std::ostream& out) {
      if (o.format == "csv") {
        sd::report::write_sweep_csv(out, sweep);
      } else {
        // Thread count is left out on purpose: it never changes the payload.
        const json config = {{"d_min", o.d_min},
                             {"d_max", o.d_max},
                             {"alpha_table", null_or(o.alpha_table)},
                             {"allow_estimate", provider.allow_estimate},
                             {"grid", sd::report::to_json(grid)},
                             {"seed", 0}};
        out << sd::report::envelope("certify", config, sd::report::to_json(sweep)).dump(2) << '\n';
      }
    });
  }
  sd::report::write_exceptional_csv(std::cout, sweep);
  return 0;
}

int run_sample(const Options& o) {
  if (static_cast<long long>(o.n) * o.d % 2 != 0) throw sd::PreconditionError("n * d must be even");
  sd::graph::Graph g;
  int attempts = 1;
  if (o.simple) {
    std::optional<sd::graph::SimpleSample> s;
    try {
      s = sd::graph::sample_simple(o.n, o.d, o.seed, o.max_retries);
    } catch (const std::runtime_error& e) {
      std::cerr << "no simple graph: " << e.what() << '\n';
      return kExitVerdict;
    }
    g = std::move(s->graph);
    attempts = s->attempts;
  } else {
    g = sd::graph::config_model_sample(o.n, o.d, o.seed);
  }
  emit(o.out, [&](std::ostream& out) { sd::graph::write_graph(out, g); });
  const json config = {{"n", o.n}, {"d", o.d}, {"seed", o.seed}, {"simple", o.simple},
                       {"max_retries", o.max_retries}, {"rng", sd::Rng::kName}};
  const json payload = {{"edges", g.num_edges()}, {"simple", sd::graph::is_simple(g)}, {"attempts", attempts}};
  std::ostream& log = o.out.empty() ? std::cerr : std::cout;
  log << sd::report::envelope("sample", config, payload).dump(2) << '\n';
  return 0;
}

sd::graph::Graph read_graph_file(const std::string& path) {
  auto in = open_in(path);
  return sd::graph::read_graph(in);
}

int run_decompose(const Options& o) {
  const auto g = read_graph_file(o.graph);
  sd::decomp::DecomposeOptions options;
  options.seed = o.seed;
  options.max_retries = o.max_retries;
  options.repair_rounds = o.repair_rounds;
  const auto outcome = sd::decomp::decompose(g, o.k, options);
  if (outcome.decomposition && !o.out.empty()) {
    emit(o.out, [&](std::ostream& out) { sd::decomp::write_decomposition(out, *outcome.decomposition); });
  }
  const json config = {{"graph", o.graph}, {"k", o.k}, {"seed", o.seed}, {"max_retries", o.max_retries},
                       {"repair_rounds", o.repair_rounds}};
  std::cout << sd::report::envelope("decompose", config, sd::report::to_json(outcome)).dump(2) << '\n';
  return outcome.success ? 0 : kExitVerdict;
}

int run_verify(const Options& o) {
  const auto g = read_graph_file(o.graph);
  auto in = open_in(o.decomposition);
  const auto decomposition = sd::decomp::read_decomposition(in);
  const auto v = sd::decomp::verify_decomposition(g, decomposition, o.exact);
  std::cout << (v.valid ? "valid" : "invalid") << '\n';
  for (const auto& line : v.diagnostics) std::cout << line << '\n';
  return v.valid ? 0 : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-star decomposition thresholds, certification and constructions", "stardecomp"};
  app.set_version_flag("--version", std::string(sd::report::kToolVersion));
  app.require_subcommand(1);

  Options o;
  o.threads = default_threads();
  const auto positive = CLI::PositiveNumber;

  auto* thresholds = app.add_subcommand("thresholds", "analytic thresholds for one degree");
  thresholds->add_option("--d", o.d, "degree")->required()->check(CLI::Range(3, 1 << 30));
  thresholds->add_option("--alpha-table", o.alpha_table, "CSV with header d,alpha");
  thresholds->add_option("--out", o.out, "output file (default stdout)");
  thresholds->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

  auto* certify = app.add_subcommand("certify", "certification sweep over a degree range");
  certify->add_option("--d-min", o.d_min)->required()->check(CLI::Range(3, 1 << 30));
  certify->add_option("--d-max", o.d_max)->required()->check(CLI::Range(0, 1 << 30));
  certify->add_option("--alpha-table", o.alpha_table, "CSV with header d,alpha");
  certify->add_flag("--allow-estimate", o.allow_estimate,
                    "fall back to the closed-form estimate for degrees missing from the table");
  certify->add_option("--out", o.out, "sweep report file");
  certify->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  certify->add_option("--threads", o.threads, "worker threads (env STARDECOMP_THREADS)")->check(positive);
  certify->add_option("--beta-step", o.beta_step)->check(positive);
  certify->add_option("--tau-step", o.tau_step)->check(positive);

  auto* sample = app.add_subcommand("sample", "configuration-model random regular graph");
  sample->add_option("--n", o.n)->required()->check(CLI::Range(1, 1 << 28));
  sample->add_option("--d", o.d)->required()->check(CLI::Range(1, 1 << 20));
  sample->add_option("--seed", o.seed);
  sample->add_flag("--simple", o.simple, "reject until simple");
  sample->add_option("--max-retries", o.max_retries, "rejection budget with --simple")->check(positive);
  sample->add_option("--out", o.out, "graph file (default stdout)");

  auto* decompose = app.add_subcommand("decompose", "k-star decomposition of a regular graph");
  decompose->add_option("--graph", o.graph)->required();
  decompose->add_option("--k", o.k)->required()->check(positive);
  decompose->add_option("--seed", o.seed);
  decompose->add_option("--max-retries", o.max_retries, "seeds to try")->check(positive);
  decompose->add_option("--repair-rounds", o.repair_rounds, "witness-guided swaps per attempt (0 = none)")
      ->check(CLI::NonNegativeNumber);
  decompose->add_option("--out", o.out, "decomposition file");

  auto* verify = app.add_subcommand("verify", "check a decomposition against its graph");
  verify->add_option("--graph", o.graph)->required();
  verify->add_option("--decomposition", o.decomposition)->required();
  verify->add_flag("--exact", o.exact, "require an empty leftover");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*thresholds) return run_thresholds(o);
    if (*certify) return run_certify(o);
    if (*sample) return run_sample(o);
    if (*decompose) return run_decompose(o);
    if (*verify) return run_verify(o);
  } catch (const MissingAlpha& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMissingAlpha;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const sd::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitIo;
  } catch (const sd::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sd::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
