// Command-line surface: exact laws, Monte Carlo simulation, brute-force
// enumeration, and the cross-check suite, emitted as plot-ready CSV/JSON.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gwlc/enumerate.hpp"
#include "gwlc/errors.hpp"
#include "gwlc/exact_laws.hpp"
#include "gwlc/io.hpp"
#include "gwlc/monte_carlo.hpp"
#include "gwlc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  std::string dist;
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--dist", opts.dist, "built-in name (binary, p1demo) or JSON file")
      ->required();
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out, "write the table to this path instead of stdout");
}

void emit(const CommonOpts& opts, const std::string& payload) {
  if (opts.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(opts.out, std::ios::binary);
  if (!file) {
    gwlc::raise(gwlc::errc::invalid_argument, "cannot open output file: " + opts.out);
  }
  file << payload;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GWLC_SEED")) {
    std::string text(env);
    std::size_t used = 0;
    try {
      const unsigned long long value = std::stoull(text, &used);
      if (used == text.size()) return value;
    } catch (const std::exception&) {
    }
    gwlc::raise(gwlc::errc::invalid_argument, "GWLC_SEED is not an unsigned integer: " + text);
  }
  return 0;
}

bool is_binary_law(const gwlc::OffspringDistribution& d) {
  return d.probs == gwlc::OffspringDistribution::binary().probs;
}

gwlc::ConditionalLaw binary_closed_law(std::size_t ell) {
  gwlc::ConditionalLaw law;
  law.ell = ell;
  law.kind = gwlc::LawKind::exact_binary;
  law.exact = true;
  law.masses.reserve(ell);
  law.masses_f64.reserve(ell);
  for (std::size_t t = 1; t <= ell; ++t) {
    law.masses.push_back(gwlc::binary_subtree_law(ell, t));
    law.masses_f64.push_back(gwlc::to_double(law.masses.back()));
  }
  return law;
}

std::vector<std::size_t> parse_ell_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || value == 0) {
      gwlc::raise(gwlc::errc::invalid_argument, "--ell-grid entries must be positive integers");
    }
    grid.push_back(value);
  }
  if (grid.empty()) {
    gwlc::raise(gwlc::errc::invalid_argument, "--ell-grid must list at least one value");
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subtree leaf-count laws of critical branching trees: exact series, "
               "closed forms, enumeration, and Monte Carlo"};
  app.require_subcommand(1);

  // leaf-law ----------------------------------------------------------------
  auto* leaf_cmd = app.add_subcommand(
      "leaf-law", "exact P(L = ell) with both asymptotic forms and their ratios");
  CommonOpts leaf_opts;
  std::size_t leaf_max_ell = 0;
  add_common(leaf_cmd, leaf_opts);
  leaf_cmd->add_option("--max-ell", leaf_max_ell, "largest ell in the table")
      ->required()
      ->check(CLI::PositiveNumber);

  // subtree-law ---------------------------------------------------------------
  auto* law_cmd = app.add_subcommand(
      "subtree-law", "conditional law of the leaf count of a uniform random subtree");
  CommonOpts law_opts;
  std::size_t law_ell = 0;
  std::string law_mode;
  std::size_t law_accepted = 10000;
  std::optional<std::uint64_t> law_seed;
  unsigned law_workers = 1;
  std::optional<std::size_t> law_cap;
  add_common(law_cmd, law_opts);
  law_cmd->add_option("--ell", law_ell, "conditioning leaf count")
      ->required()
      ->check(CLI::PositiveNumber);
  law_cmd->add_option("--mode", law_mode,
                      "exact-binary | plugin | oracle | mc (default: exact-binary for the "
                      "binary law, plugin otherwise)")
      ->check(CLI::IsMember({"exact-binary", "plugin", "oracle", "mc"}));
  auto* law_acc_opt =
      law_cmd->add_option("--accepted", law_accepted, "mc mode: accepted-tree target");
  auto* law_seed_opt = law_cmd->add_option("--seed", law_seed, "mc mode: RNG seed");
  auto* law_workers_opt = law_cmd->add_option("--workers", law_workers, "mc mode: threads");
  law_cmd->add_option("--node-cap", law_cap, "oracle/mc mode: vertex-count cap");

  // v-moments -----------------------------------------------------------------
  auto* vm_cmd = app.add_subcommand(
      "v-moments", "exact mean/variance of the vertex count given the leaf count");
  CommonOpts vm_opts;
  std::size_t vm_ell = 0;
  add_common(vm_cmd, vm_opts);
  vm_cmd->add_option("--ell", vm_ell, "conditioning leaf count")
      ->required()
      ->check(CLI::PositiveNumber);

  // simulate ------------------------------------------------------------------
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo estimates of the conditional law with error bars");
  CommonOpts sim_opts;
  std::size_t sim_ell = 0;
  std::size_t sim_accepted = 10000;
  std::optional<std::uint64_t> sim_seed;
  unsigned sim_workers = 1;
  std::size_t sim_cap = 1000000;
  add_common(sim_cmd, sim_opts);
  sim_cmd->add_option("--ell", sim_ell, "conditioning leaf count")
      ->required()
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--accepted", sim_accepted, "accepted-tree target")
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim_seed, "RNG seed (default: GWLC_SEED env var, then 0)");
  sim_cmd->add_option("--workers", sim_workers, "worker threads")->capture_default_str();
  sim_cmd->add_option("--node-cap", sim_cap, "discard trees above this vertex count")
      ->capture_default_str();

  // enumerate -------------------------------------------------------------------
  auto* enum_cmd = app.add_subcommand(
      "enumerate", "brute-force oracle law from exhaustive weighted enumeration");
  CommonOpts enum_opts;
  std::size_t enum_ell = 0;
  std::size_t enum_cap = 0;
  std::string enum_dump;
  add_common(enum_cmd, enum_opts);
  enum_cmd->add_option("--ell", enum_ell, "leaf count")->required()->check(CLI::PositiveNumber);
  enum_cmd->add_option("--node-cap", enum_cap, "vertex-count cap for the enumeration")
      ->required()
      ->check(CLI::PositiveNumber);
  enum_cmd->add_option("--dump-trees", enum_dump,
                       "also write (degrees, weight) per tree as JSON lines to this path");

  // verify ----------------------------------------------------------------------
  auto* verify_cmd =
      app.add_subcommand("verify", "run the cross-check suite and print a pass/fail report");
  CommonOpts verify_opts;
  std::string verify_level = "quick";
  std::optional<std::uint64_t> verify_seed;
  verify_cmd->add_option("--dist", verify_opts.dist, "built-in name or JSON file")->required();
  verify_cmd->add_option("--level", verify_level, "quick | full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed, "seed for the sampling checks");

  // tail ---------------------------------------------------------------------
  auto* tail_cmd = app.add_subcommand(
      "tail", "plug-in mass deficit beyond the sqrt(ell)/log^2(ell) cutoff, per ell");
  CommonOpts tail_opts;
  std::string tail_grid = "100,1000,10000";
  add_common(tail_cmd, tail_opts);
  tail_cmd->add_option("--ell-grid", tail_grid, "comma-separated ell values")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*leaf_cmd) {
      gwlc::LawContext ctx(gwlc::load_distribution(leaf_opts.dist));
      const auto rows = gwlc::build_leaf_table(ctx, leaf_max_ell);
      emit(leaf_opts, leaf_opts.format == "csv" ? gwlc::csv_leaf_table(rows)
                                                : gwlc::json_leaf_table(rows));
    } else if (*law_cmd) {
      const gwlc::OffspringDistribution dist = gwlc::load_distribution(law_opts.dist);
      if (law_mode.empty()) law_mode = is_binary_law(dist) ? "exact-binary" : "plugin";
      if (law_mode != "mc" &&
          (law_acc_opt->count() > 0 || law_seed_opt->count() > 0 ||
           law_workers_opt->count() > 0)) {
        gwlc::raise(gwlc::errc::invalid_argument,
                    "--accepted/--seed/--workers apply only to --mode mc");
      }
      gwlc::ConditionalLaw law;
      if (law_mode == "exact-binary") {
        if (!is_binary_law(dist)) {
          gwlc::raise(gwlc::errc::invalid_argument,
                      "--mode exact-binary requires the binary distribution");
        }
        law = binary_closed_law(law_ell);
      } else if (law_mode == "plugin") {
        gwlc::LawContext ctx(dist);
        law = ctx.plugin_conditional_law(law_ell);
      } else if (law_mode == "oracle") {
        const std::size_t cap = law_cap.value_or(gwlc::default_enumeration_cap(dist, law_ell));
        law = gwlc::oracle_conditional_law(dist, law_ell, cap);
      } else {
        gwlc::McOptions mc;
        mc.target_accepted = law_accepted;
        mc.seed = resolve_seed(law_seed);
        mc.workers = law_workers;
        if (law_cap) mc.node_cap = *law_cap;
        law = gwlc::mc_conditional_law(dist, law_ell, mc).as_law();
      }
      if (law_opts.format == "csv" && law.kind != gwlc::LawKind::monte_carlo) {
        std::cerr << "residual: " << gwlc::format_double(law.residual_f64) << "\n";
      }
      emit(law_opts, law_opts.format == "csv" ? gwlc::csv_conditional_law(law)
                                              : gwlc::json_conditional_law(law));
    } else if (*vm_cmd) {
      gwlc::LawContext ctx(gwlc::load_distribution(vm_opts.dist));
      const std::vector<gwlc::VMomentRow> rows{gwlc::build_vmoment_row(ctx, vm_ell)};
      emit(vm_opts, vm_opts.format == "csv" ? gwlc::csv_vmoments(rows)
                                            : gwlc::json_vmoments(rows));
    } else if (*sim_cmd) {
      gwlc::McOptions mc;
      mc.target_accepted = sim_accepted;
      mc.seed = resolve_seed(sim_seed);
      mc.workers = sim_workers;
      mc.node_cap = sim_cap;
      const gwlc::McResult result =
          gwlc::mc_conditional_law(gwlc::load_distribution(sim_opts.dist), sim_ell, mc);
      emit(sim_opts, sim_opts.format == "csv" ? gwlc::csv_estimates(result)
                                              : gwlc::json_estimates(result));
    } else if (*enum_cmd) {
      const gwlc::OffspringDistribution dist = gwlc::load_distribution(enum_opts.dist);
      if (!enum_dump.empty()) {
        std::ofstream dump(enum_dump, std::ios::binary);
        if (!dump) {
          gwlc::raise(gwlc::errc::invalid_argument, "cannot open dump file: " + enum_dump);
        }
        gwlc::enumerate_trees(dist, enum_ell, enum_cap,
                              [&](const gwlc::GWTree& tree, const gwlc::Rational& weight) {
                                dump << "{\"degrees\":[";
                                for (std::size_t i = 0; i < tree.degrees.size(); ++i) {
                                  if (i) dump << ',';
                                  dump << tree.degrees[i];
                                }
                                dump << "],\"weight\":\"" << gwlc::numerator_string(weight)
                                     << '/' << gwlc::denominator_string(weight) << "\"}\n";
                              });
      }
      const gwlc::ConditionalLaw law = gwlc::oracle_conditional_law(dist, enum_ell, enum_cap);
      if (enum_opts.format == "csv") {
        std::cerr << "residual: " << gwlc::numerator_string(law.residual) << "/"
                  << gwlc::denominator_string(law.residual) << "\n";
      }
      emit(enum_opts, enum_opts.format == "csv" ? gwlc::csv_conditional_law(law)
                                                : gwlc::json_conditional_law(law));
    } else if (*verify_cmd) {
      const gwlc::VerifyLevel level =
          verify_level == "full" ? gwlc::VerifyLevel::full : gwlc::VerifyLevel::quick;
      const gwlc::VerifyReport report = gwlc::run_verification(
          gwlc::load_distribution(verify_opts.dist), level, resolve_seed(verify_seed));
      for (const gwlc::VerifyCheck& check : report.checks) {
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << ": "
                  << check.detail << "\n";
      }
      std::cout << (report.all_passed() ? "all checks passed\n" : "some checks FAILED\n");
      return report.all_passed() ? kExitOk : kExitVerifyFailed;
    } else if (*tail_cmd) {
      gwlc::LawContext ctx(gwlc::load_distribution(tail_opts.dist));
      const auto rows = gwlc::build_tail_rows(ctx, parse_ell_grid(tail_grid));
      const double limit = gwlc::to_double(ctx.dist().prob(1));
      emit(tail_opts, tail_opts.format == "csv" ? gwlc::csv_tail(rows, limit)
                                                : gwlc::json_tail(rows, limit));
    }
  } catch (const gwlc::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
