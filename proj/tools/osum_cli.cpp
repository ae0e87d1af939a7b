// Command-line front end: mine / verify / gen / bench over temporal
// quantitative sequence datasets.
//
// Exit codes: 0 success, 1 usage error, 2 invalid input, 3 time/memory
// limit reached, 4 oracle budget refusal, 5 verification mismatch.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "osum/ingest.hpp"
#include "osum/miner.hpp"
#include "osum/oracle.hpp"
#include "osum/summary.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitLimit = 3;
constexpr int kExitBudget = 4;
constexpr int kExitMismatch = 5;

struct CommonInputs {
  std::string db_path;
  std::string utils_path;
  std::string shelf_path;  // empty = none
  bool relax_shelf = false;
};

osum::TemporalDatabase load(const CommonInputs& in) {
  osum::DatasetBundle bundle;
  bundle.database_path = in.db_path;
  bundle.utility_path = in.utils_path;
  if (!in.shelf_path.empty()) bundle.shelf_path = in.shelf_path;
  osum::ParseOptions options;
  options.relax_shelf = in.relax_shelf;
  options.warnings = &std::cerr;
  return osum::parse_database(bundle, options);
}

std::string format_our(const osum::MinedPattern& p) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", p.our());
  return buffer;
}

void write_patterns(std::ostream& out, const std::vector<osum::MinedPattern>& patterns) {
  for (const auto& p : patterns) {
    out << p.pattern.to_string() << '\t' << p.ou << '\t' << format_our(p) << '\t';
    for (std::size_t i = 0; i < p.ot.size(); ++i) {
      if (i != 0) out << ',';
      out << p.ot[i];
    }
    out << '\n';
  }
}

template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw osum::ValidationError("cannot write file: " + path);
  fn(out);
}

std::string flags_string(const std::string& algo, const osum::StrategyFlags& s, bool limited) {
  std::vector<std::string> parts;
  if (algo == "osums") {
    if (!s.ldp) parts.push_back("no-ldp");
    if (!s.lwp) parts.push_back("no-lwp");
    if (!s.arc) parts.push_back("no-arc");
  } else if (algo == "osums-plus") {
    if (!s.gdp) parts.push_back("no-gdp");
    if (!s.gwp) parts.push_back("no-gwp");
  }
  std::string out;
  if (parts.empty()) {
    out = "full";
  } else {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i != 0) out += '+';
      out += parts[i];
    }
  }
  if (limited) out += "+limit";
  return out;
}

struct MineConfig {
  CommonInputs inputs;
  std::string algo = "osums-plus";
  std::string threshold;
  std::string out_path;
  std::string stats_path;
  bool no_ldp = false, no_lwp = false, no_arc = false, no_gdp = false, no_gwp = false;
  std::uint32_t max_len = 0;
  double time_limit = 10000.0;
  std::uint64_t mem_limit = 0;
  std::uint64_t oracle_budget = 256;
  unsigned threads = 1;
};

// Returns nullopt when the combination is fine, otherwise the usage message.
std::optional<std::string> check_flag_combination(const MineConfig& cfg) {
  auto complain = [&](const char* flag) {
    return std::optional<std::string>("flag " + std::string(flag) + " does not apply to --algo " +
                                      cfg.algo);
  };
  if (cfg.algo == "osums") {
    if (cfg.no_gdp) return complain("--no-gdp");
    if (cfg.no_gwp) return complain("--no-gwp");
  } else if (cfg.algo == "osums-plus") {
    if (cfg.no_ldp) return complain("--no-ldp");
    if (cfg.no_lwp) return complain("--no-lwp");
    if (cfg.no_arc) return complain("--no-arc");
    if (cfg.threads > 1) return complain("--threads");
  } else {  // oracle
    if (cfg.no_ldp) return complain("--no-ldp");
    if (cfg.no_lwp) return complain("--no-lwp");
    if (cfg.no_arc) return complain("--no-arc");
    if (cfg.no_gdp) return complain("--no-gdp");
    if (cfg.no_gwp) return complain("--no-gwp");
    if (cfg.threads > 1) return complain("--threads");
  }
  return std::nullopt;
}

osum::MiningOptions mining_options(const MineConfig& cfg) {
  osum::MiningOptions options;
  options.xi = osum::Ratio::parse(cfg.threshold);
  options.strategies.ldp = !cfg.no_ldp;
  options.strategies.lwp = !cfg.no_lwp;
  options.strategies.arc = !cfg.no_arc;
  options.strategies.gdp = !cfg.no_gdp;
  options.strategies.gwp = !cfg.no_gwp;
  options.max_length = cfg.max_len;
  options.time_limit_sec = cfg.time_limit;
  options.memory_limit_bytes = cfg.mem_limit;
  options.threads = cfg.threads;
  return options;
}

int run_mine(const MineConfig& cfg) {
  if (auto usage = check_flag_combination(cfg)) {
    std::cerr << "usage error: " << *usage << "\n";
    return kExitUsage;
  }

  osum::TemporalDatabase db = load(cfg.inputs);
  osum::RunSummary summary;
  summary.algo = cfg.algo;
  summary.xi = cfg.threshold;

  std::vector<osum::MinedPattern> patterns;
  bool limited = false;
  osum::StrategyFlags strategies;

  if (cfg.algo == "oracle") {
    osum::oracle::OracleConfig oc;
    oc.xi = osum::Ratio::parse(cfg.threshold);
    oc.max_pattern_length = cfg.max_len;
    oc.budget = cfg.oracle_budget;
    oc.time_limit_sec = cfg.time_limit;
    auto start = std::chrono::steady_clock::now();
    osum::oracle::OracleReport report = osum::oracle::mine(db, oc);
    summary.time_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    summary.candidates = report.candidates;
    patterns = std::move(report.patterns);
  } else {
    osum::MiningOptions options = mining_options(cfg);
    strategies = options.strategies;
    osum::MiningReport report = cfg.algo == "osums" ? osum::mine_osums(db, options)
                                                    : osum::mine_osums_plus(db, options);
    summary.time_ms = report.wall_ms;
    summary.candidates = report.candidates_generated;
    summary.peak_mem_bytes = report.peak_struct_bytes;
    limited = report.aborted;
    if (report.aborted) {
      std::cerr << "limit: " << report.abort_reason << " (partial results)\n";
    }
    patterns = std::move(report.patterns);
  }

  summary.patterns = patterns.size();
  summary.flags = flags_string(cfg.algo, strategies, limited);

  with_output(cfg.out_path, [&](std::ostream& out) { write_patterns(out, patterns); });
  if (!cfg.stats_path.empty()) {
    std::ofstream stats(cfg.stats_path, std::ios::binary);
    if (!stats) throw osum::ValidationError("cannot write file: " + cfg.stats_path);
    stats << osum::kRunSummaryCsvHeader << '\n' << osum::to_csv_row(summary) << '\n';
  }
  return limited ? kExitLimit : kExitOk;
}

struct VerifyConfig {
  CommonInputs inputs;
  std::string threshold;
  std::uint32_t max_len = 0;
  std::uint64_t oracle_budget = 256;
};

int run_verify(const VerifyConfig& cfg) {
  osum::TemporalDatabase db = load(cfg.inputs);
  osum::MiningOptions options;
  options.xi = osum::Ratio::parse(cfg.threshold);
  options.max_length = cfg.max_len;

  osum::oracle::OracleConfig oc;
  oc.xi = options.xi;
  oc.max_pattern_length = cfg.max_len;
  oc.budget = cfg.oracle_budget;

  using ResultMap = std::map<osum::Pattern, osum::Utility, osum::PatternLess>;
  auto to_map = [](const std::vector<osum::MinedPattern>& patterns) {
    ResultMap m;
    for (const auto& p : patterns) m.emplace(p.pattern, p.ou);
    return m;
  };

  ResultMap by_algo[3] = {to_map(osum::mine_osums(db, options).patterns),
                          to_map(osum::mine_osums_plus(db, options).patterns),
                          to_map(osum::oracle::mine(db, oc).patterns)};
  const char* names[3] = {"osums", "osums-plus", "oracle"};

  bool identical = true;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      for (const auto& [pattern, ou] : by_algo[a]) {
        auto it = by_algo[b].find(pattern);
        if (it == by_algo[b].end()) {
          std::cout << "only " << names[a] << ": " << pattern.to_string() << " ou=" << ou << "\n";
          identical = false;
        } else if (it->second != ou && a < b) {
          std::cout << "utility mismatch " << pattern.to_string() << ": " << names[a] << "=" << ou
                    << " " << names[b] << "=" << it->second << "\n";
          identical = false;
        }
      }
    }
  }
  if (identical) {
    std::cout << "results identical across osums, osums-plus, oracle (" << by_algo[0].size()
              << " patterns)\n";
    return kExitOk;
  }
  return kExitMismatch;
}

struct GenConfig {
  std::string base_prefix;
  std::uint32_t scale = 1;
  std::uint32_t periods = 1;
  std::uint64_t seed = 0;
  std::string out_prefix;
  bool relax_shelf = false;
};

int run_gen(const GenConfig& cfg) {
  osum::ParseOptions parse_options;
  parse_options.relax_shelf = cfg.relax_shelf;
  parse_options.warnings = &std::cerr;
  osum::TemporalDatabase base = osum::read_dataset(cfg.base_prefix, parse_options);

  osum::GeneratorConfig gen;
  gen.scale = cfg.scale;
  gen.period_count = cfg.periods;
  gen.seed = cfg.seed;
  osum::TemporalDatabase scaled = osum::generate_scaled(base, gen);
  osum::write_dataset(scaled, cfg.out_prefix);
  std::cout << "wrote " << cfg.out_prefix << ".db/.utils/.shelf: " << scaled.sequences.size()
            << " q-sequences, " << scaled.periods.size() << " periods\n";
  return kExitOk;
}

struct BenchConfig {
  CommonInputs inputs;
  std::string thresholds;
  bool ablate = false;
  std::string out_path;
  std::uint32_t max_len = 0;
  double time_limit = 10000.0;
  std::uint64_t mem_limit = 0;
};

int run_bench(const BenchConfig& cfg) {
  osum::TemporalDatabase db = load(cfg.inputs);

  std::vector<std::string> thresholds;
  std::stringstream list(cfg.thresholds);
  std::string token;
  while (std::getline(list, token, ',')) {
    if (!token.empty()) thresholds.push_back(token);
  }
  if (thresholds.empty()) throw osum::ValidationError("--thresholds needs at least one value");
  for (const auto& t : thresholds) osum::Ratio::parse(t);  // validate up front

  struct Variant {
    const char* algo;
    osum::StrategyFlags strategies;
  };
  std::vector<Variant> variants;
  for (const char* algo : {"osums", "osums-plus"}) {
    variants.push_back({algo, {}});
    if (cfg.ablate) {
      if (std::string(algo) == "osums") {
        for (int which = 0; which < 3; ++which) {
          osum::StrategyFlags s;
          (which == 0 ? s.ldp : which == 1 ? s.lwp : s.arc) = false;
          variants.push_back({algo, s});
        }
      } else {
        for (int which = 0; which < 2; ++which) {
          osum::StrategyFlags s;
          (which == 0 ? s.gdp : s.gwp) = false;
          variants.push_back({algo, s});
        }
      }
    }
  }

  std::vector<std::string> rows;
  for (const auto& xi_text : thresholds) {
    for (const auto& variant : variants) {
      osum::MiningOptions options;
      options.xi = osum::Ratio::parse(xi_text);
      options.strategies = variant.strategies;
      options.max_length = cfg.max_len;
      options.time_limit_sec = cfg.time_limit;
      options.memory_limit_bytes = cfg.mem_limit;
      osum::MiningReport report = std::string(variant.algo) == "osums"
                                      ? osum::mine_osums(db, options)
                                      : osum::mine_osums_plus(db, options);
      osum::RunSummary summary;
      summary.algo = variant.algo;
      summary.xi = xi_text;
      summary.patterns = report.patterns.size();
      summary.candidates = report.candidates_generated;
      summary.time_ms = report.wall_ms;
      summary.peak_mem_bytes = report.peak_struct_bytes;
      summary.flags = flags_string(variant.algo, variant.strategies, report.aborted);
      rows.push_back(osum::to_csv_row(summary));
    }
  }

  with_output(cfg.out_path, [&](std::ostream& out) {
    out << osum::kRunSummaryCsvHeader << '\n';
    for (const auto& row : rows) out << row << '\n';
  });
  return kExitOk;
}

void add_common_inputs(CLI::App* cmd, CommonInputs& inputs) {
  cmd->add_option("--db", inputs.db_path, "q-sequence database file")->required();
  cmd->add_option("--utils", inputs.utils_path, "item utility file")->required();
  cmd->add_option("--shelf", inputs.shelf_path, "shelf period file (default: occurrence periods)");
  cmd->add_flag("--relax-shelf", inputs.relax_shelf,
                "widen shelf sets to cover stray occurrences instead of rejecting");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"on-shelf high-utility sequential pattern miner"};
  app.require_subcommand(1);

  MineConfig mine_cfg;
  CLI::App* mine = app.add_subcommand("mine", "mine on-shelf high-utility sequential patterns");
  add_common_inputs(mine, mine_cfg.inputs);
  mine->add_option("--algo", mine_cfg.algo, "osums | osums-plus | oracle")
      ->check(CLI::IsMember({"osums", "osums-plus", "oracle"}));
  mine->add_option("--threshold", mine_cfg.threshold, "utility ratio threshold in (0,1]")
      ->required();
  mine->add_option("--out", mine_cfg.out_path, "pattern output file (default: stdout)");
  mine->add_option("--stats", mine_cfg.stats_path, "write a one-row run summary CSV here");
  mine->add_flag("--no-ldp", mine_cfg.no_ldp, "disable the two-phase depth bound");
  mine->add_flag("--no-lwp", mine_cfg.no_lwp, "disable the two-phase width bound");
  mine->add_flag("--no-arc", mine_cfg.no_arc, "disable the phase-2 verification skip");
  mine->add_flag("--no-gdp", mine_cfg.no_gdp, "disable the one-phase depth bound");
  mine->add_flag("--no-gwp", mine_cfg.no_gwp, "disable the one-phase width bound");
  mine->add_option("--max-len", mine_cfg.max_len, "cap pattern length (0 = unlimited)");
  mine->add_option("--time-limit", mine_cfg.time_limit, "wall-clock limit in seconds")
      ->default_val(10000.0);
  mine->add_option("--mem-limit", mine_cfg.mem_limit,
                   "live mining-structure byte limit (0 = unlimited)");
  mine->add_option("--budget", mine_cfg.oracle_budget,
                   "oracle size budget: items x max sequence length")
      ->default_val(256);
  mine->add_option("--threads", mine_cfg.threads, "phase-1 worker threads (osums only)")
      ->default_val(1);

  VerifyConfig verify_cfg;
  CLI::App* verify = app.add_subcommand("verify", "cross-check both miners against the oracle");
  add_common_inputs(verify, verify_cfg.inputs);
  verify->add_option("--threshold", verify_cfg.threshold, "utility ratio threshold in (0,1]")
      ->required();
  verify->add_option("--max-len", verify_cfg.max_len, "cap pattern length (0 = unlimited)");
  verify->add_option("--budget", verify_cfg.oracle_budget,
                     "oracle size budget: items x max sequence length")
      ->default_val(256);

  GenConfig gen_cfg;
  CLI::App* gen = app.add_subcommand("gen", "scale a base dataset deterministically");
  gen->add_option("--base", gen_cfg.base_prefix,
                  "base dataset prefix (reads <prefix>.db/.utils[/.shelf])")
      ->required();
  gen->add_option("--scale", gen_cfg.scale, "number of copies of the base sequences")->required();
  gen->add_option("--periods", gen_cfg.periods, "periods drawn uniformly from 1..K")->required();
  gen->add_option("--seed", gen_cfg.seed, "random seed")->required();
  gen->add_option("--out-prefix", gen_cfg.out_prefix, "output prefix (writes .db/.utils/.shelf)")
      ->required();
  gen->add_flag("--relax-shelf", gen_cfg.relax_shelf, "relax shelf consistency of the base");

  BenchConfig bench_cfg;
  CLI::App* bench = app.add_subcommand("bench", "run both miners over a threshold sweep");
  add_common_inputs(bench, bench_cfg.inputs);
  bench->add_option("--thresholds", bench_cfg.thresholds, "comma-separated threshold list")
      ->required();
  bench->add_flag("--ablate", bench_cfg.ablate, "add one row per disabled pruning strategy");
  bench->add_option("--out", bench_cfg.out_path, "CSV output file (default: stdout)");
  bench->add_option("--max-len", bench_cfg.max_len, "cap pattern length (0 = unlimited)");
  bench->add_option("--time-limit", bench_cfg.time_limit, "per-run wall-clock limit in seconds")
      ->default_val(10000.0);
  bench->add_option("--mem-limit", bench_cfg.mem_limit,
                    "per-run live mining-structure byte limit (0 = unlimited)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (mine->parsed()) return run_mine(mine_cfg);
    if (verify->parsed()) return run_verify(verify_cfg);
    if (gen->parsed()) return run_gen(gen_cfg);
    if (bench->parsed()) return run_bench(bench_cfg);
  } catch (const osum::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const osum::LimitError& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return kExitLimit;
  } catch (const osum::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}
