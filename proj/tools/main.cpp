// trusskit - command-line surface for truss decomposition of simplicial
// complexes: decompose | topn | generate | stats | filtration | oracle

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "trusskit/analysis.hpp"
#include "trusskit/complex.hpp"
#include "trusskit/engine.hpp"
#include "trusskit/errors.hpp"
#include "trusskit/generators.hpp"
#include "trusskit/io.hpp"
#include "trusskit/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitBudget = 3;
constexpr int kExitMismatch = 4;

struct RunConfig {
  std::string input;
  std::string output;  // empty: stdout
  std::size_t max_size = SIZE_MAX;
  std::uint64_t budget_records = 0;  // 0: unlimited
  std::uint64_t budget_bytes = 0;    // alias, 16 bytes per record
  std::uint32_t chunks = 8;
  std::string workdir;
  bool keep_workdir = false;
  bool nontrivial_only = false;
  unsigned parallel_components = 1;
  bool quiet = false;
  // subcommand parameters
  std::uint64_t n = 1;
  std::size_t q = 2;
  std::size_t d = 2;
  std::size_t s = 1;
  double p = 0.5;
  std::size_t gen_max_size = SIZE_MAX;
  std::uint64_t seed = 0;
};

std::uint64_t effective_budget(const RunConfig& cfg) {
  if (cfg.budget_bytes > 0) {
    std::uint64_t records = cfg.budget_bytes / 16;
    if (records == 0)
      throw std::invalid_argument(
          "--memory-budget-bytes must cover at least one 16-byte record");
    return records;
  }
  if (cfg.budget_records > 0) return cfg.budget_records;
  return trusskit::CandidateStore::kUnlimited;
}

trusskit::DecomposeOptions decompose_options(const RunConfig& cfg) {
  trusskit::DecomposeOptions opt;
  opt.max_size = cfg.max_size;
  opt.memory_budget = effective_budget(cfg);
  opt.chunk_count = cfg.chunks;
  opt.workdir = cfg.workdir;
  opt.keep_workdir = cfg.keep_workdir;
  opt.parallel_components = cfg.parallel_components;
  if (!cfg.quiet) {
    opt.progress = [](const trusskit::LevelLog& log) {
      std::fprintf(stderr,
                   "component=%u level=%zu simplices=%llu candidates=%llu "
                   "validated=%llu batches=%llu spilled=%d short_circuit=%d\n",
                   log.component, log.level,
                   static_cast<unsigned long long>(log.simplices),
                   static_cast<unsigned long long>(log.candidate_records),
                   static_cast<unsigned long long>(log.validated_joists),
                   static_cast<unsigned long long>(log.batches),
                   log.spilled ? 1 : 0, log.short_circuit ? 1 : 0);
    };
  }
  return opt;
}

trusskit::SimplicialComplex load_complex(const RunConfig& cfg) {
  return trusskit::parse_complex(trusskit::read_file(cfg.input));
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  } else {
    trusskit::write_file(cfg.output, text);
  }
}

int run_decompose(const RunConfig& cfg) {
  auto K = load_complex(cfg);
  auto R = trusskit::decompose(K, decompose_options(cfg));
  emit(cfg, trusskit::format_trussness_tsv(R.trussness, !cfg.nontrivial_only));
  return kExitOk;
}

int run_topn(const RunConfig& cfg) {
  auto K = load_complex(cfg);
  trusskit::TopnOptions opt;
  opt.memory_budget = effective_budget(cfg);
  opt.chunk_count = cfg.chunks;
  opt.workdir = cfg.workdir;
  opt.keep_workdir = cfg.keep_workdir;
  auto R = trusskit::top_n(K, cfg.n, cfg.q, opt);
  if (R.truncated && !cfg.quiet)
    std::fprintf(stderr,
                 "warning: only %zu simplices of size %zu exist, "
                 "requested n=%llu\n",
                 R.rows.size(), cfg.q,
                 static_cast<unsigned long long>(cfg.n));
  emit(cfg, trusskit::format_topn_tsv(R.rows));
  return kExitOk;
}

int run_generate_manifold(const RunConfig& cfg) {
  auto K = trusskit::gen_manifold(cfg.d, cfg.s, cfg.seed);
  emit(cfg, trusskit::format_complex(K));
  return kExitOk;
}

int run_generate_flag(const RunConfig& cfg) {
  auto K = trusskit::gen_flag_complex(cfg.n, cfg.p, cfg.gen_max_size, cfg.seed);
  emit(cfg, trusskit::format_complex(K));
  return kExitOk;
}

int run_stats(const RunConfig& cfg) {
  auto K = load_complex(cfg);
  auto R = trusskit::decompose(K, decompose_options(cfg));
  emit(cfg, trusskit::format_stats_tsv(
                trusskit::joist_stats(K, R.trussness, R.joists)));
  return kExitOk;
}

int run_filtration(const RunConfig& cfg) {
  auto K = load_complex(cfg);
  auto R = trusskit::decompose(K, decompose_options(cfg));
  emit(cfg, trusskit::format_filtration(
                trusskit::export_filtration(K, R.trussness)));
  return kExitOk;
}

int run_oracle(const RunConfig& cfg) {
  auto K = load_complex(cfg);
  auto R = trusskit::decompose(K, decompose_options(cfg));
  auto B = trusskit::brute_trussness(K, cfg.max_size);

  std::uint64_t mismatches = 0;
  auto report = [&](const std::string& line) {
    ++mismatches;
    std::fprintf(stderr, "%s\n", line.c_str());
  };

  for (const auto& [s, row] : B) {
    auto it = R.trussness.find(s);
    if (it == R.trussness.end()) {
      report("mismatch simplex=" + s.str() + " engine=absent");
      continue;
    }
    if (it->second.trussness != row.trussness ||
        it->second.lower_bound != row.lower_bound)
      report("mismatch simplex=" + s.str() +
             " engine=" + std::to_string(it->second.trussness) + "/" +
             std::to_string(it->second.lower_bound) +
             " oracle=" + std::to_string(row.trussness) + "/" +
             std::to_string(row.lower_bound));
  }
  for (const auto& [s, info] : R.trussness)
    if (!B.count(s)) report("mismatch simplex=" + s.str() + " oracle=absent");

  std::size_t level_cap = std::min(cfg.max_size, K.max_simplex_size());
  for (std::size_t q = 2; q <= level_cap; ++q) {
    auto brute = trusskit::brute_joists(K.simplices_of_size(q));
    std::map<trusskit::Simplex, std::vector<trusskit::VertexId>> engine;
    for (const auto& [s, apexes] : R.joists)
      if (s.size() == q && !apexes.empty()) engine.emplace(s, apexes);
    if (engine != brute)
      report("mismatch joists at level " + std::to_string(q));
  }

  if (mismatches > 0) {
    std::fprintf(stderr, "oracle=mismatch count=%llu\n",
                 static_cast<unsigned long long>(mismatches));
    return kExitMismatch;
  }
  if (!cfg.quiet)
    std::fprintf(stderr, "oracle=ok simplices=%zu\n", R.trussness.size());
  return kExitOk;
}

void add_io_flags(CLI::App* cmd, RunConfig& cfg, bool needs_input) {
  auto* in = cmd->add_option("--input,-i", cfg.input, "complex file to read");
  if (needs_input) in->required();
  cmd->add_option("--output,-o", cfg.output,
                  "output file (default: stdout)");
  cmd->add_flag("--quiet", cfg.quiet, "suppress progress lines on stderr");
}

void add_engine_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--max-size", cfg.max_size,
                  "largest simplex size to decompose")
      ->check(CLI::Range(std::size_t{2}, SIZE_MAX));
  auto* rec = cmd->add_option("--memory-budget", cfg.budget_records,
                              "candidate records held in memory per store")
                  ->check(CLI::PositiveNumber);
  cmd->add_option("--memory-budget-bytes", cfg.budget_bytes,
                  "budget in bytes, 16 per record")
      ->check(CLI::PositiveNumber)
      ->excludes(rec);
  cmd->add_option("--chunks", cfg.chunks, "spill chunk count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workdir", cfg.workdir, "spill directory");
  cmd->add_flag("--keep-workdir", cfg.keep_workdir,
                "keep spill files after the run");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"truss decomposition of simplicial complexes"};
  app.require_subcommand(1);

  auto* decompose = app.add_subcommand(
      "decompose", "compute trussness and lower bounds, write a TSV table");
  add_io_flags(decompose, cfg, true);
  add_engine_flags(decompose, cfg);
  decompose->add_flag("--nontrivial-only", cfg.nontrivial_only,
                      "write only rows with trussness above the lower bound");
  decompose->add_option("--parallel-components", cfg.parallel_components,
                        "components decomposed concurrently")
      ->check(CLI::PositiveNumber);

  auto* topn = app.add_subcommand(
      "topn", "rank the n simplices of size q with the highest trussness");
  add_io_flags(topn, cfg, true);
  add_engine_flags(topn, cfg);
  topn->add_option("--n", cfg.n, "rows to keep")
      ->required()
      ->check(CLI::PositiveNumber);
  topn->add_option("--q", cfg.q, "simplex size to rank")
      ->required()
      ->check(CLI::Range(std::size_t{2}, SIZE_MAX));

  auto* generate =
      app.add_subcommand("generate", "write a synthetic complex");
  generate->require_subcommand(1);
  auto* manifold = generate->add_subcommand(
      "manifold", "grow a d-manifold by gluing cells along free faces");
  add_io_flags(manifold, cfg, false);
  manifold->add_option("--d", cfg.d, "cell dimension")
      ->required()
      ->check(CLI::PositiveNumber);
  manifold->add_option("--s", cfg.s, "cell count")
      ->required()
      ->check(CLI::PositiveNumber);
  manifold->add_option("--seed", cfg.seed, "generator seed");
  auto* flag = generate->add_subcommand(
      "flag", "clique complex of an Erdos-Renyi graph");
  add_io_flags(flag, cfg, false);
  flag->add_option("--n", cfg.n, "vertex count")
      ->required()
      ->check(CLI::PositiveNumber);
  flag->add_option("--p", cfg.p, "edge probability")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  flag->add_option("--max-size", cfg.gen_max_size, "clique size cap")
      ->check(CLI::Range(std::size_t{2}, SIZE_MAX));
  flag->add_option("--seed", cfg.seed, "generator seed");

  auto* stats = app.add_subcommand(
      "stats", "decompose and report joist and trussness statistics");
  add_io_flags(stats, cfg, true);
  add_engine_flags(stats, cfg);

  auto* filtration = app.add_subcommand(
      "filtration", "decompose and export the trussness filtration");
  add_io_flags(filtration, cfg, true);
  add_engine_flags(filtration, cfg);

  auto* oracle = app.add_subcommand(
      "oracle", "diff the engine against the brute-force oracle");
  add_io_flags(oracle, cfg, true);
  add_engine_flags(oracle, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // normalize CLI11's per-error exit codes: help is success,
    // everything else is a usage error
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(decompose)) return run_decompose(cfg);
    if (app.got_subcommand(topn)) return run_topn(cfg);
    if (app.got_subcommand(generate)) {
      if (generate->got_subcommand(manifold))
        return run_generate_manifold(cfg);
      return run_generate_flag(cfg);
    }
    if (app.got_subcommand(stats)) return run_stats(cfg);
    if (app.got_subcommand(filtration)) return run_filtration(cfg);
    if (app.got_subcommand(oracle)) return run_oracle(cfg);
  } catch (const trusskit::BudgetError& e) {
    std::fprintf(stderr, "budget error: %s\n", e.what());
    return kExitBudget;
  } catch (const trusskit::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitIo;
  } catch (const trusskit::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;  // unreachable with require_subcommand(1)
}
