// girylab: verify property suites, evolve Markov chains, render reports.
//
// Exit codes: 0 everything passed, 1 a property failed, 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "girylab.hpp"

namespace fs = std::filesystem;
using namespace girylab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct VerifyFlags {
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials, max_carrier, max_arity, max_hull_dim;
  std::string config_path, junit_path, space_path, functional_path;
  bool timing = false;
};

std::uint64_t parse_count(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!value.empty() && value[0] == '-') throw std::invalid_argument(value);
    v = std::stoull(value, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw UsageError(key + ": expected a non-negative integer, got '" + value + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

/// key = value lines; '#' starts a comment. Unknown keys are rejected.
void apply_config_file(const std::string& path, harness::SuiteConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    const auto n = parse_count(key, value);
    if (key == "seed") cfg.seed = n;
    else if (key == "trials") cfg.trials = n;
    else if (key == "max_carrier") cfg.max_carrier = n;
    else if (key == "max_arity") cfg.max_arity = n;
    else if (key == "max_hull_dim") cfg.max_hull_dim = n;
    else throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
}

/// flags > config file > GIRYLAB_SEED > defaults
harness::SuiteConfig resolve_config(const VerifyFlags& f) {
  harness::SuiteConfig cfg;
  if (const char* env = std::getenv("GIRYLAB_SEED"); env && *env) cfg.seed = parse_count("GIRYLAB_SEED", env);
  if (!f.config_path.empty()) apply_config_file(f.config_path, cfg);
  if (f.seed) cfg.seed = *f.seed;
  if (f.trials) cfg.trials = *f.trials;
  if (f.max_carrier) cfg.max_carrier = *f.max_carrier;
  if (f.max_arity) cfg.max_arity = *f.max_arity;
  if (f.max_hull_dim) cfg.max_hull_dim = *f.max_hull_dim;
  cfg.validate();
  return cfg;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << body;
}

int run_verify(const VerifyFlags& f) {
  const auto cfg = resolve_config(f);
  if (!f.space_path.empty() || !f.functional_path.empty()) {
    if (f.suite != "naturality") throw UsageError("--space and --functional only apply to 'verify naturality'");
    if (f.functional_path.empty()) throw UsageError("--space needs --functional");
    const fs::path phi_path = f.functional_path;
    Json phi_json = io::load_file(phi_path);
    fs::path base = phi_path.parent_path();
    if (!f.space_path.empty()) {
      phi_json["space"] = fs::absolute(f.space_path).string();
      base.clear();
    }
    const auto phi = io::functional_from_json(phi_json, base);
    const auto verdicts = harness::naturality_stream(phi, cfg.trials, cfg.seed, cfg.max_arity);
    bool all = true;
    for (const auto& v : verdicts) {
      all = all && v.passed;
      std::cout << to_json(v).dump() << "\n";
    }
    return all ? 0 : kExitFail;
  }
  const auto report = harness::run_suite(f.suite, cfg);
  std::cout << report.to_json(f.timing).dump(2) << "\n";
  if (!f.junit_path.empty()) write_file(f.junit_path, report.to_junit());
  return report.passed() ? 0 : kExitFail;
}

int run_markov(const std::string& kernel_path, const std::string& init_path, std::size_t steps, bool trace) {
  const auto k = io::kernel_from_json(io::load_file(kernel_path), fs::path(kernel_path).parent_path());
  require_endo(k);
  const auto init = io::measure_from_json(io::load_file(init_path), fs::path(init_path).parent_path());
  if (!(init.space() == k.dom())) throw IngestionError("initial distribution lives on a different space than the kernel");
  auto line = [](std::size_t step, const Measure& m) {
    return Json{{"step", step}, {"weights", io::weights_json(m.weights())}}.dump();
  };
  if (trace) {
    // Streams one line per step rather than collecting the trajectory.
    Measure current = init;
    std::cout << line(0, current) << "\n";
    for (std::size_t n = 1; n <= steps; ++n) {
      current = bind(current, k);
      std::cout << line(n, current) << std::endl;
    }
  } else {
    std::cout << line(steps, n_step(k, init, steps)) << "\n";
  }
  return 0;
}

int run_report(const std::vector<std::string>& files, const std::string& format) {
  bool all = true;
  Json combined = Json::array();
  for (const auto& path : files) {
    const auto report = io::ingest("report " + path, [&] { return harness::Report::from_json(io::load_file(path)); });
    all = all && report.passed();
    if (format == "text") std::cout << report.to_text();
    else if (format == "junit") std::cout << report.to_junit();
    else combined.push_back(report.to_json(false));
  }
  if (format == "json") std::cout << (combined.size() == 1 ? combined[0] : combined).dump(2) << "\n";
  return all ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite-space Giry monad toolkit"};
  app.require_subcommand(1);

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "run a property suite and print a JSON report");
  verify->add_option("suite", vf.suite, "monad-laws | duality | change-of-variables | naturality | monoid-reduction | convex-bound | counterexample | all")
      ->required();
  verify->add_option("--seed", vf.seed, "64-bit seed (default: $GIRYLAB_SEED, else 0)");
  verify->add_option("--trials", vf.trials, "trials per property");
  verify->add_option("--max-carrier", vf.max_carrier, "largest generated carrier");
  verify->add_option("--max-arity", vf.max_arity, "largest affine map arity");
  verify->add_option("--max-hull-dim", vf.max_hull_dim, "largest polytope dimension");
  verify->add_option("--config", vf.config_path, "key=value config file");
  verify->add_option("--junit", vf.junit_path, "also write a JUnit XML report");
  verify->add_option("--space", vf.space_path, "space file for the functional (naturality only)");
  verify->add_option("--functional", vf.functional_path, "functional to check (naturality only)");
  verify->add_flag("--timing", vf.timing, "include per-property durations");

  std::string kernel_path, init_path;
  std::size_t steps = 1;
  bool trace = false;
  auto* markov = app.add_subcommand("markov", "evolve an initial distribution under a kernel");
  markov->add_option("--kernel", kernel_path, "kernel JSON")->required();
  markov->add_option("--init", init_path, "initial measure JSON")->required();
  markov->add_option("--steps", steps, "number of steps")->required();
  markov->add_flag("--trace", trace, "print every step as a JSON line");

  std::vector<std::string> report_files;
  std::string format = "text";
  auto* report = app.add_subcommand("report", "render saved verify reports");
  report->add_option("files", report_files, "report JSON files")->required();
  report->add_option("--format", format, "text | json | junit")->check(CLI::IsMember({"text", "json", "junit"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify) return run_verify(vf);
    if (*markov) return run_markov(kernel_path, init_path, steps, trace);
    if (*report) return run_report(report_files, format);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IngestionError& e) {
    std::cerr << "ingestion error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
