#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kcenter/experiment.hpp"
#include "kcenter/generator.hpp"
#include "kcenter/instance_io.hpp"

namespace {

using namespace kcenter;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0') {
    throw Error(ErrorCode::InvalidParams, std::string(name) + " must be an integer");
  }
  return static_cast<std::size_t>(value);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

// --partition takes round-robin, random, or file:PATH.
void parse_partition_flag(const std::string& flag, std::string& strategy, std::string& file) {
  if (flag == "round-robin" || flag == "random") {
    strategy = flag;
    return;
  }
  if (flag.rfind("file:", 0) == 0) {
    strategy = "file";
    file = flag.substr(5);
    if (file.empty()) throw Error(ErrorCode::InvalidParams, "empty path in --partition file:");
    return;
  }
  throw Error(ErrorCode::InvalidParams,
              "--partition must be round-robin, random, or file:PATH, got '" + flag + "'");
}

struct GenerateArgs {
  std::string kind = "uniform-random-euclidean";
  GeneratorParams params;
  std::uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateArgs& args) {
  const auto kind = generator_from_name(args.kind);
  if (!kind) throw Error(ErrorCode::InvalidParams, "unknown generator kind '" + args.kind + "'");
  const MetricInstance instance = generate_instance(*kind, args.params, args.seed);
  write_instance(instance, args.out);
  return kExitOk;
}

struct SolveArgs {
  std::string instance_path;
  std::string algorithm = "alg2";
  experiment::RunRequest request;
  std::string partition_flag = "round-robin";
  std::string out;
};

int run_solve(SolveArgs args) {
  const auto algorithm = algorithm_from_name(args.algorithm);
  if (!algorithm) throw Error(ErrorCode::InvalidParams, "unknown algorithm '" + args.algorithm + "'");
  args.request.algorithm = *algorithm;
  parse_partition_flag(args.partition_flag, args.request.partition, args.request.partition_file);

  const MetricInstance instance = load_instance(args.instance_path);
  const Ordering phi = Ordering::identity(instance.size());
  const auto result = experiment::solve_report(instance, args.instance_path, phi, args.request);
  emit(result.json, args.out);
  return result.outcome.feasible ? kExitOk : kExitInfeasible;
}

struct CompareArgs {
  std::string instance_path;
  experiment::CompareRequest request;
  std::string partition_flag = "round-robin";
  std::vector<std::uint64_t> seeds;
  std::string out;
};

int run_compare(CompareArgs args) {
  parse_partition_flag(args.partition_flag, args.request.partition, args.request.partition_file);
  if (!args.seeds.empty()) args.request.seeds = args.seeds;

  const MetricInstance instance = load_instance(args.instance_path);
  const Ordering phi = Ordering::identity(instance.size());
  const auto result = experiment::compare_report(instance, args.instance_path, phi, args.request);
  emit(result.json, args.out);
  if (result.any_infeasible) return kExitInfeasible;
  return result.bounds_ok ? kExitOk : kExitError;
}

struct ValidateArgs {
  std::string instance_path;
  std::string out;
};

int run_validate(const ValidateArgs& args) {
  const MetricInstance instance = load_instance(args.instance_path);
  emit(experiment::validate_report(instance, args.instance_path), args.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed metric k-center toolkit"};
  app.require_subcommand(1);

  GenerateArgs generate_args;
  auto* generate = app.add_subcommand("generate", "Write a synthetic instance file");
  generate->add_option("--kind", generate_args.kind,
                       "uniform-random-euclidean | clustered-euclidean | random-metric-matrix");
  generate->add_option("--n", generate_args.params.n, "point count")->required();
  generate->add_option("--dim", generate_args.params.dimension, "dimension (Euclidean kinds)");
  generate->add_option("--low", generate_args.params.low, "uniform: low coordinate bound");
  generate->add_option("--high", generate_args.params.high, "uniform: high coordinate bound");
  generate->add_option("--clusters", generate_args.params.clusters, "clustered: group count");
  generate->add_option("--separation", generate_args.params.separation,
                       "clustered: distance between group centers");
  generate->add_option("--spread", generate_args.params.spread,
                       "clustered: noise box side around each center");
  generate->add_option("--seed", generate_args.seed, "generator seed");
  generate->add_option("--out", generate_args.out, "output file")->required();

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Run one algorithm and report JSON");
  solve->add_option("instance", solve_args.instance_path, "instance file")->required();
  solve->add_option("--alg", solve_args.algorithm, "exact | gonzalez | pruning | baseline4 | alg2");
  solve->add_option("--k", solve_args.request.k, "center count")->required();
  solve->add_option("--L", solve_args.request.machines, "machine count");
  solve->add_option("--memory", solve_args.request.memory, "per-machine point budget (default n)");
  solve->add_option("--partition", solve_args.partition_flag, "round-robin | random | file:PATH");
  solve->add_option("--seed", solve_args.request.seed, "partition seed");
  solve->add_flag("--compat-literal-alg1", solve_args.request.literal_alg1,
                  "pseudocode-faithful pruning recorder");
  solve->add_flag("--compat-literal-select", solve_args.request.literal_select,
                  "pseudocode-faithful max-kappa selection");
  solve->add_flag("--no-timing", [&](std::size_t) { solve_args.request.include_timing = false; },
                  "omit wall-clock fields for byte-stable output");
  solve->add_option("--out", solve_args.out, "report path (default stdout)");

  CompareArgs compare_args;
  auto* compare = app.add_subcommand("compare", "Run all algorithms against the exact oracle");
  compare->add_option("instance", compare_args.instance_path, "instance file")->required();
  compare->add_option("--k", compare_args.request.k, "center count")->required();
  compare->add_option("--L", compare_args.request.machines, "machine count");
  compare->add_option("--memory", compare_args.request.memory, "per-machine point budget (default n)");
  compare->add_option("--partition", compare_args.partition_flag, "round-robin | random | file:PATH");
  compare->add_option("--seed", compare_args.seeds, "partition seed (repeatable)");
  compare->add_flag("--compat-literal-alg1", compare_args.request.literal_alg1,
                    "pseudocode-faithful pruning recorder");
  compare->add_flag("--compat-literal-select", compare_args.request.literal_select,
                    "pseudocode-faithful max-kappa selection");
  compare->add_flag("--no-timing", [&](std::size_t) { compare_args.request.include_timing = false; },
                    "omit wall-clock fields for byte-stable output");
  compare->add_option("--out", compare_args.out, "report path (default stdout)");

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Check a points file's metric properties");
  validate->add_option("instance", validate_args.instance_path, "instance file")->required();
  validate->add_option("--out", validate_args.out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*generate) return run_generate(generate_args);
    if (*solve) {
      solve_args.request.memory = solve_args.request.memory == 0
                                      ? env_size("KCENTER_MEMORY", 0)
                                      : solve_args.request.memory;
      solve_args.request.round_limit =
          static_cast<std::uint32_t>(env_size("KCENTER_ROUND_LIMIT", 4));
      return run_solve(std::move(solve_args));
    }
    if (*compare) {
      compare_args.request.memory = compare_args.request.memory == 0
                                        ? env_size("KCENTER_MEMORY", 0)
                                        : compare_args.request.memory;
      return run_compare(std::move(compare_args));
    }
    if (*validate) return run_validate(validate_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";  // what() carries the code name
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
