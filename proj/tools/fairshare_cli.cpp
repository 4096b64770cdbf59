// fairshare: command-line front end for the fair-division solver.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "fairshare/enumerate.hpp"
#include "fairshare/improve.hpp"
#include "fairshare/instances.hpp"
#include "fairshare/json_io.hpp"
#include "fairshare/oracle.hpp"
#include "fairshare/solver.hpp"

using namespace fairshare;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoFairAllocation = 2;
constexpr int kExitBudget = 3;

struct Budgets {
  std::uint64_t oracle_supports = oracle::kDefaultSupportBudget;
  std::size_t degeneracy = EnumerationOptions{}.degeneracy_budget;
};

// FAIRDIV_BUDGET=N sets the oracle support budget; FAIRDIV_BUDGET=N,K also sets the
// enumeration degeneracy budget.
Budgets budgets_from_environment() {
  Budgets budgets;
  const char* env = std::getenv("FAIRDIV_BUDGET");
  if (!env || !*env) return budgets;
  std::string text(env);
  const auto comma = text.find(',');
  try {
    budgets.oracle_supports = std::stoull(text.substr(0, comma));
    if (comma != std::string::npos) budgets.degeneracy = std::stoull(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("FAIRDIV_BUDGET must be N or N,K with nonnegative integers");
  }
  return budgets;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) values.push_back(parse_rational(item));
  return values;
}

std::vector<long> parse_integer_list(const std::string& text) {
  std::vector<long> values;
  for (const auto& r : parse_rational_list(text)) {
    if (r.get_den() != 1 || !r.get_num().fits_slong_p()) throw std::invalid_argument("expected integers: " + text);
    values.push_back(r.get_num().get_si());
  }
  return values;
}

FairnessSpec fairness_from(const std::string& kind, const std::string& weights) {
  FairnessSpec spec{kind == "prop" ? FairnessKind::Proportional : FairnessKind::EnvyFree, std::nullopt};
  if (!weights.empty()) spec.weights = parse_rational_list(weights);
  return spec;
}

Objective objective_from(const std::string& name) {
  if (name == "shared-objects") return Objective::SharedObjects;
  if (name == "shared-value") return Objective::SharedValue;
  if (name == "feasible") return Objective::AnyFeasible;
  return Objective::Sharings;
}

Instance load_instance(const std::string& path) { return io::instance_from_json(io::read_json_file(path)); }

void emit(json doc, const std::string& path, bool decimal) {
  if (decimal) io::add_decimal_approximations(doc);
  io::write_json(doc, path);
}

std::string consumers_text(const Instance& inst, const ConsumptionGraph& g, ObjectIndex o) {
  std::string text = "{";
  bool first = true;
  for (std::size_t i = 0; i < g.agents(); ++i) {
    if (!g.consumes(i, o)) continue;
    if (!first) text += ", ";
    text += inst.agent_labels()[i];
    first = false;
  }
  return text + "}";
}

// Fisher-Yates with rejection-sampled indices so a seed means the same thing everywhere.
std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const std::uint64_t span = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
      x = engine();
    } while (x >= limit);
    std::swap(p[i - 1], p[x % span]);
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact fair division with minimal sharing"};
  app.require_subcommand(1);

  std::string input, output, alloc_path, fairness = "ef", weights, objective = "sharings";
  bool decimal = false;
  std::size_t threads = 1;

  auto add_fairness = [&](CLI::App* cmd) {
    cmd->add_option("--fairness", fairness, "ef or prop")->check(CLI::IsMember({"ef", "prop"}));
    cmd->add_option("--weights", weights, "entitlements p/q,... summing to 1");
  };
  auto add_objective = [&](CLI::App* cmd) {
    cmd->add_option("--objective", objective)
        ->check(CLI::IsMember({"sharings", "shared-objects", "shared-value", "feasible"}));
  };

  auto* solve = app.add_subcommand("solve", "fair fPO allocation with minimal sharing");
  bool fast = false;
  solve->add_option("-i", input, "instance JSON")->required();
  solve->add_option("-o", output, "output file (default stdout)");
  add_fairness(solve);
  add_objective(solve);
  solve->add_flag("--fast-2agent", fast, "two-agent pure-goods non-degenerate fast path");
  solve->add_option("--threads", threads)->check(CLI::PositiveNumber);
  solve->add_flag("--decimal", decimal, "add approximate decimal values");

  auto* check = app.add_subcommand("check", "fairness, fPO and sharing report for an allocation");
  check->add_option("-i", input)->required();
  check->add_option("-a", alloc_path, "allocation JSON")->required();
  add_fairness(check);
  check->add_flag("--decimal", decimal);

  auto* enumerate = app.add_subcommand("enumerate", "list all fPO consumption graphs");
  std::optional<std::size_t> max_sharings;
  bool count_only = false;
  enumerate->add_option("-i", input)->required();
  enumerate->add_option("--max-sharings", max_sharings);
  enumerate->add_flag("--count-only", count_only);
  enumerate->add_option("--threads", threads)->check(CLI::PositiveNumber);

  auto* consensus = app.add_subcommand("consensus", "consensus allocation with at most n(n-1) sharings");
  std::optional<std::uint64_t> permute_seed;
  consensus->add_option("-i", input)->required();
  consensus->add_option("-o", output);
  consensus->add_option("--permute-seed", permute_seed, "randomly reassign bundles");
  consensus->add_flag("--decimal", decimal);

  auto* improve = app.add_subcommand("improve", "Pareto-improve an allocation to fPO with at most n-1 sharings");
  improve->add_option("-i", input)->required();
  improve->add_option("-a", alloc_path)->required();
  improve->add_option("-o", output);
  improve->add_flag("--decimal", decimal);

  auto* degen = app.add_subcommand("degeneracy", "print the degree of degeneracy");
  degen->add_option("-i", input)->required();

  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string family, numbers;
  std::size_t gen_n = 3, gen_m = 0;
  std::uint64_t seed = 0;
  long low = 1, high = 100;
  std::string alloc_out;
  gen->add_option("family", family)
      ->required()
      ->check(CLI::IsMember({"identical-partition", "perturbed-partition", "degeneracy-family",
                             "consensus-tightness", "fig1-left", "fig1-right", "identical-goods", "random"}));
  gen->add_option("--numbers", numbers, "comma-separated positive integers");
  gen->add_option("-n", gen_n, "agents");
  gen->add_option("-m", gen_m, "objects");
  gen->add_option("--seed", seed);
  gen->add_option("--low", low);
  gen->add_option("--high", high);
  gen->add_option("-o", output);
  gen->add_option("--alloc-out", alloc_out, "also write the fixture allocation (fig1 fixtures)");

  auto* orc = app.add_subcommand("oracle", "brute-force minimum (small instances only)");
  orc->add_option("-i", input)->required();
  add_fairness(orc);
  add_objective(orc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Budgets budgets = budgets_from_environment();
    EnumerationOptions enumeration;
    enumeration.degeneracy_budget = budgets.degeneracy;
    enumeration.threads = threads;

    if (*solve) {
      const Instance inst = load_instance(input);
      const FairnessSpec spec = fairness_from(fairness, weights);
      const SolveResult result = fast ? solve_two_agents_fast(inst, spec)
                                      : solve_min_sharing(inst, spec, objective_from(objective), SolveOptions{enumeration});
      emit(io::solve_result_to_json(inst, result), output, decimal);
    } else if (*check) {
      const Instance inst = load_instance(input);
      const Allocation alloc = io::allocation_from_json(io::read_json_file(alloc_path));
      emit(io::check_report_to_json(inst, check_allocation(inst, alloc, fairness_from(fairness, weights))), "", decimal);
    } else if (*enumerate) {
      const Instance inst = load_instance(input);
      enumeration.max_sharings = max_sharings;
      const FpoGraphSet graphs = enumerate_fpo_graphs(inst, enumeration);
      if (!count_only) {
        std::size_t index = 0;
        for (const auto& g : graphs) {
          std::cout << "graph " << ++index << " (" << g.num_sharings() << " sharings)\n";
          for (std::size_t o = 0; o < g.objects(); ++o) {
            std::cout << "  " << inst.object_labels()[o] << " -> " << consumers_text(inst, g, o) << '\n';
          }
        }
      }
      std::cout << "total: " << graphs.size() << '\n';
    } else if (*consensus) {
      const Instance inst = load_instance(input);
      Allocation alloc = solve_consensus(inst);
      if (permute_seed) {
        const auto p = permutation(inst.agents(), *permute_seed);
        RationalMatrix z(inst.agents(), inst.objects());
        for (std::size_t i = 0; i < inst.agents(); ++i) {
          for (std::size_t o = 0; o < inst.objects(); ++o) z(i, o) = alloc.share(p[i], o);
        }
        alloc = Allocation(std::move(z));
      }
      emit(io::allocation_to_json(inst, alloc), output, decimal);
    } else if (*improve) {
      const Instance inst = load_instance(input);
      const Allocation alloc = io::allocation_from_json(io::read_json_file(alloc_path));
      emit(io::allocation_to_json(inst, eliminate_cycles(inst, alloc)), output, decimal);
    } else if (*degen) {
      std::cout << degeneracy(load_instance(input)) << '\n';
    } else if (*gen) {
      std::optional<Allocation> fixture_alloc;
      auto instance = [&]() -> Instance {
        if (family == "identical-partition") return instances::identical_partition(parse_integer_list(numbers));
        if (family == "perturbed-partition") return instances::perturbed_partition(parse_integer_list(numbers));
        if (family == "degeneracy-family") return instances::degeneracy_family(parse_integer_list(numbers), gen_m);
        if (family == "consensus-tightness") return instances::consensus_tightness(gen_n);
        if (family == "identical-goods") return instances::identical_goods(gen_n);
        if (family == "random") {
          if (gen_m == 0) throw std::invalid_argument("random instances need -m");
          return instances::random(gen_n, gen_m, seed, low, high);
        }
        fixture_alloc = instances::fig1_allocation();
        return family == "fig1-left" ? instances::fig1_left() : instances::fig1_right();
      }();
      io::write_json(io::instance_to_json(instance), output);
      if (!alloc_out.empty()) {
        if (!fixture_alloc) throw std::invalid_argument("--alloc-out is only available for fig1 fixtures");
        io::write_json(io::allocation_to_json(instance, *fixture_alloc), alloc_out);
      }
    } else if (*orc) {
      const Instance inst = load_instance(input);
      const auto result = oracle::brute_min_objective(inst, fairness_from(fairness, weights), objective_from(objective),
                                                      budgets.oracle_supports);
      io::write_json(json{{"objective", objective},
                          {"min_objective", io::rational_to_json(result.value)},
                          {"fpo_graphs", result.fpo_graphs}},
                     "");
    }
  } catch (const NoFairAllocationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoFairAllocation;
  } catch (const DegeneracyTooHighError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const oracle::BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
