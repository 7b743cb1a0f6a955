// Command-line front end: Schmidt spectra, rate curves, conversion experiments
// and the randomized verification suites.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infoconv/convert.hpp"
#include "infoconv/infospec.hpp"
#include "infoconv/io.hpp"
#include "infoconv/verify.hpp"

namespace {

using namespace infoconv;
using nlohmann::json;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct RunConfig {
  std::uint64_t seed = 7;
  std::vector<std::uint32_t> n_grid{10, 20, 50, 100, 200, 400};
  std::vector<double> eps_grid{0.1};
  std::string units = "nats";
  std::string format;
  std::string out;
  std::size_t trials = 0;
  Budgets budgets;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write '" + cfg.out + "'");
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

bool want_json(const RunConfig& cfg, bool json_default) {
  return cfg.format.empty() ? json_default : cfg.format == "json";
}

void check_grids(const RunConfig& cfg) {
  if (cfg.n_grid.empty()) throw InvalidArgument("--n grid is empty");
  for (std::uint32_t n : cfg.n_grid) {
    if (n == 0) throw InvalidArgument("--n values must be positive");
  }
  for (double e : cfg.eps_grid) {
    if (!(e >= 0.0 && e <= 1.0)) throw InvalidArgument("--eps values must lie in [0,1]");
  }
}

int cmd_schmidt(const RunConfig& cfg, const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed amplitude JSON: ") + e.what());
  }
  const Spectrum s = schmidt_from_amplitudes(io::amplitudes_from_json(j));
  emit(cfg, io::to_json(s).dump() + "\n");
  std::cerr << "entropy " << io::format_number(entropy(s) * io::unit_scale(cfg.units)) << ' '
            << cfg.units << '\n';
  return 0;
}

int cmd_rates(const RunConfig& cfg, const std::string& model_spec) {
  check_grids(cfg);
  if (cfg.eps_grid.empty()) throw InvalidArgument("--eps grid is empty");
  const SequenceModel model = io::parse_model(model_spec);
  std::vector<RateCurve> curves;
  for (double eps : cfg.eps_grid) curves.push_back({eps, {}});
  int status = 0;
  for (std::uint32_t n : cfg.n_grid) {
    Spectrum s;
    try {
      s = model.generate(n, cfg.budgets);
    } catch (const BudgetExceeded& e) {
      std::cerr << "warning: stopping at n=" << n << ": " << e.what() << '\n';
      status = kExitBudget;
      break;
    }
    for (RateCurve& c : curves) {
      const EntropyProxies p = entropy_proxies(s, n, c.epsilon);
      c.points.push_back({n, p.underline, p.overline});
    }
  }
  const double scale = io::unit_scale(cfg.units);
  if (want_json(cfg, false)) {
    json out = json::array();
    for (const RateCurve& c : curves) out.push_back(io::to_json(c, scale));
    emit(cfg, dump({{"units", cfg.units}, {"curves", out}}));
  } else {
    emit(cfg, io::rates_csv(curves, scale));
  }
  return status;
}

int cmd_convert(const RunConfig& cfg, const std::string& source_spec,
                const std::string& target_spec) {
  check_grids(cfg);
  const SequenceModel source = io::parse_model(source_spec);
  const SequenceModel target = io::parse_model(target_spec);
  std::vector<ConversionReport> reports;
  for (std::uint32_t n : cfg.n_grid) {
    reports.push_back(direct_convert(source.generate(n, cfg.budgets),
                                     target.generate(n, cfg.budgets), n, cfg.budgets));
  }
  if (want_json(cfg, true)) {
    json out = json::array();
    for (const ConversionReport& r : reports) out.push_back(io::to_json(r));
    emit(cfg, dump(out));
  } else {
    emit(cfg, io::experiment_csv(reports));
  }
  return 0;
}

int cmd_experiment(const RunConfig& cfg, Task task, const std::string& model_spec, double rate) {
  check_grids(cfg);
  if (!(rate >= 0.0)) throw InvalidArgument("--rate must be non-negative");
  const SequenceModel model = io::parse_model(model_spec);
  const RateVerdict verdict = task == Task::concentration
                                  ? concentration_experiment(model, rate, cfg.n_grid, cfg.budgets)
                                  : dilution_experiment(model, rate, cfg.n_grid, cfg.budgets);
  if (want_json(cfg, false)) {
    emit(cfg, dump(io::to_json(verdict, io::unit_scale(cfg.units))));
  } else {
    emit(cfg, io::experiment_csv(verdict.series));
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::vector<std::string> names) {
  if (names.empty() || (names.size() == 1 && names.front() == "all")) names = suite_names();
  for (const std::string& name : names) {
    if (!is_suite(name)) throw InvalidArgument("unknown suite '" + name + "'");
  }
  SuiteConfig sc;
  sc.seed = cfg.seed;
  sc.trials = cfg.trials;
  json reports = json::array();
  bool passed = true;
  for (const std::string& name : names) {
    const SuiteReport r = run_suite(name, sc);
    passed = passed && r.ok();
    reports.push_back(io::to_json(r));
  }
  emit(cfg, dump({{"seed", cfg.seed}, {"passed", passed}, {"suites", reports}}));
  return passed ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement conversion and information-spectrum toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  double max_type_classes = cfg.budgets.max_type_classes;
  double max_expanded_dim = cfg.budgets.max_expanded_dim;
  double brute_force_cap = cfg.budgets.brute_force_cap;

  app.add_option("--seed", cfg.seed, "Master seed for randomized suites");
  app.add_option("--n", cfg.n_grid, "Blocklength grid, comma separated")->delimiter(',');
  app.add_option("--eps", cfg.eps_grid, "Error levels, comma separated")->delimiter(',');
  app.add_option("--units", cfg.units, "Rate units")->check(CLI::IsMember({"nats", "bits"}));
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "Output file (default standard output)");
  app.add_option("--budget-type-classes", max_type_classes, "Type-class enumeration limit")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-expanded-dim", max_expanded_dim, "Expanded-vector size limit")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-brute-force", brute_force_cap, "Exhaustive map search limit")
      ->check(CLI::PositiveNumber);
  app.fallthrough();

  std::string path, model, source, target;
  double rate = 0.0;
  std::vector<std::string> suites;

  auto* schmidt = app.add_subcommand("schmidt", "Schmidt spectrum of an amplitude matrix");
  schmidt->add_option("input", path, "Amplitude matrix JSON file")->required();
  auto* rates = app.add_subcommand("rates", "Entropy proxy curves of a source model");
  rates->add_option("model", model, "Model spec")->required();
  auto* convert = app.add_subcommand("convert", "Direct conversion between two models");
  convert->add_option("source", source, "Source model spec")->required();
  convert->add_option("target", target, "Target model spec")->required();
  auto* concentrate = app.add_subcommand("concentrate", "Entanglement concentration experiment");
  concentrate->add_option("model", model, "Source model spec")->required();
  concentrate->add_option("--rate", rate, "Target rate in nats per copy")->required();
  auto* dilute = app.add_subcommand("dilute", "Entanglement dilution experiment");
  dilute->add_option("model", model, "Target model spec")->required();
  dilute->add_option("--rate", rate, "Source rate in nats per copy")->required();
  auto* verify = app.add_subcommand("verify", "Randomized inequality suites");
  verify->add_option("suites", suites, "Suite names or 'all'");
  verify->add_option("--trials", cfg.trials, "Instances per suite (default: suite default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  cfg.budgets.max_type_classes = max_type_classes;
  cfg.budgets.max_expanded_dim = max_expanded_dim;
  cfg.budgets.brute_force_cap = brute_force_cap;

  try {
    if (*schmidt) return cmd_schmidt(cfg, path);
    if (*rates) return cmd_rates(cfg, model);
    if (*convert) return cmd_convert(cfg, source, target);
    if (*concentrate) return cmd_experiment(cfg, Task::concentration, model, rate);
    if (*dilute) return cmd_experiment(cfg, Task::dilution, model, rate);
    return cmd_verify(cfg, suites);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
