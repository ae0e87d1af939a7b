#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "osum/oracle.hpp"
#include "support.hpp"

using namespace osum;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string cli_path() { return testsupport::env_or("OSUM_CLI", ""); }

RunResult run_cli(const std::string& args) {
  std::string out_file = testsupport::tmp_dir() + "/cli_stdout.txt";
  std::string err_file = testsupport::tmp_dir() + "/cli_stderr.txt";
  std::string cmd = cli_path() + " " + args + " >" + out_file + " 2>" + err_file;
  int status = std::system(cmd.c_str());
  RunResult result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

std::string fixture_args() {
  std::string d = testsupport::data_dir();
  return "--db " + d + "/running_example.db --utils " + d + "/running_example.utils --shelf " +
         d + "/running_example.shelf";
}

// The TSV contract, restated independently of the implementation.
std::string render_expected(const std::vector<MinedPattern>& patterns) {
  std::ostringstream out;
  for (const auto& p : patterns) {
    char ratio[32];
    std::snprintf(ratio, sizeof(ratio), "%.6f", p.our());
    out << p.pattern.to_string() << '\t' << p.ou << '\t' << ratio << '\t';
    for (std::size_t i = 0; i < p.ot.size(); ++i) {
      if (i != 0) out << ',';
      out << p.ot[i];
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, sep)) parts.push_back(token);
  return parts;
}

}  // namespace

TEST_CASE("mine prints the pattern table in canonical order") {
  REQUIRE(!cli_path().empty());
  auto result = run_cli("mine " + fixture_args() + " --threshold 0.3");
  CHECK(result.code == 0);
  CHECK(result.out.find("{1}{3}\t28\t0.368421\t2,3") != std::string::npos);

  oracle::OracleConfig config;
  config.xi = Ratio::parse("0.3");
  auto expected = oracle::mine(testsupport::running_example(), config);
  CHECK(result.out == render_expected(expected.patterns));

  for (const char* algo : {"osums", "oracle"}) {
    auto other = run_cli("mine " + fixture_args() + " --threshold 0.3 --algo " + algo);
    CHECK(other.code == 0);
    CHECK(other.out == result.out);
  }
}

TEST_CASE("mine writes to a file with --out") {
  std::string out_path = testsupport::tmp_dir() + "/mine_out.tsv";
  auto result = run_cli("mine " + fixture_args() + " --threshold 0.3 --out " + out_path);
  CHECK(result.code == 0);
  CHECK(result.out.empty());
  auto direct = run_cli("mine " + fixture_args() + " --threshold 0.3");
  CHECK(slurp(out_path) == direct.out);
}

TEST_CASE("mine reports run statistics as a CSV row") {
  std::string stats_path = testsupport::tmp_dir() + "/mine_stats.csv";
  auto result = run_cli("mine " + fixture_args() + " --threshold 0.3 --stats " + stats_path);
  CHECK(result.code == 0);

  auto lines = split(slurp(stats_path), '\n');
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "algo,xi,patterns,candidates,time_ms,peak_mem_bytes,flags");
  auto fields = split(lines[1], ',');
  REQUIRE(fields.size() == 7);
  CHECK(fields[0] == "osums-plus");
  CHECK(fields[1] == "0.3");
  CHECK(std::stoul(fields[2]) == split(result.out, '\n').size());
  CHECK(std::stoull(fields[3]) >= std::stoull(fields[2]));
  CHECK(std::stoull(fields[5]) > 0);
  CHECK(fields[6] == "full");
}

TEST_CASE("mine rejects strategy flags of the other algorithm") {
  auto result = run_cli("mine " + fixture_args() + " --threshold 0.3 --algo osums --no-gdp");
  CHECK(result.code == 1);
  CHECK(result.err.find("usage error") != std::string::npos);

  result = run_cli("mine " + fixture_args() + " --threshold 0.3 --no-ldp");
  CHECK(result.code == 1);

  result = run_cli("mine " + fixture_args() + " --threshold 0.3 --algo oracle --no-gwp");
  CHECK(result.code == 1);

  result = run_cli("mine " + fixture_args() + " --threshold 0.3 --algo nosuch");
  CHECK(result.code == 1);

  result = run_cli("mine " + fixture_args());
  CHECK(result.code == 1);
}

TEST_CASE("mine rejects invalid inputs with exit code 2") {
  auto result = run_cli("mine " + fixture_args() + " --threshold 0");
  CHECK(result.code == 2);
  result = run_cli("mine " + fixture_args() + " --threshold 1.5");
  CHECK(result.code == 2);
  std::string d = testsupport::data_dir();
  result = run_cli("mine --db " + d + "/missing.db --utils " + d +
                   "/running_example.utils --threshold 0.3");
  CHECK(result.code == 2);
  CHECK(result.err.find("error") != std::string::npos);
}

TEST_CASE("an inconsistent shelf is rejected unless relaxation is requested") {
  std::string d = testsupport::data_dir();
  std::string args = "--db " + d + "/running_example.db --utils " + d +
                     "/running_example.utils --shelf " + d + "/running_example_strict.shelf";
  auto result = run_cli("mine " + args + " --threshold 0.3");
  CHECK(result.code == 2);
  CHECK(result.err.find("not on shelf") != std::string::npos);

  auto relaxed = run_cli("mine " + args + " --relax-shelf --threshold 0.3");
  CHECK(relaxed.code == 0);
  CHECK(relaxed.err.find("warning: widened shelf of item 2 to cover period 2") !=
        std::string::npos);
  auto consistent = run_cli("mine " + fixture_args() + " --threshold 0.3");
  CHECK(relaxed.out == consistent.out);
}

TEST_CASE("the oracle budget refusal maps to exit code 4") {
  auto result = run_cli("mine " + fixture_args() + " --threshold 0.3 --algo oracle --budget 5");
  CHECK(result.code == 4);
  CHECK(result.err.find("error") != std::string::npos);
}

TEST_CASE("a zero time limit maps to exit code 3 and tags the stats row") {
  std::string stats_path = testsupport::tmp_dir() + "/limit_stats.csv";
  auto result = run_cli("mine " + fixture_args() +
                        " --threshold 0.05 --time-limit 0 --stats " + stats_path);
  CHECK(result.code == 3);
  CHECK(result.err.find("limit") != std::string::npos);
  auto lines = split(slurp(stats_path), '\n');
  REQUIRE(lines.size() >= 2);
  auto fields = split(lines[1], ',');
  REQUIRE(fields.size() == 7);
  CHECK(fields[6] == "full+limit");
}

TEST_CASE("verify confirms agreement across all three algorithms") {
  auto result = run_cli("verify " + fixture_args() + " --threshold 0.3");
  CHECK(result.code == 0);
  CHECK(result.out.find("results identical across osums, osums-plus, oracle") !=
        std::string::npos);
}

TEST_CASE("gen scales deterministically and the output verifies") {
  std::string d = testsupport::data_dir();
  std::string prefix_a = testsupport::tmp_dir() + "/gen_a";
  std::string prefix_b = testsupport::tmp_dir() + "/gen_b";

  auto a = run_cli("gen --base " + d + "/running_example --scale 3 --periods 2 --seed 9" +
                   " --out-prefix " + prefix_a);
  CHECK(a.code == 0);
  CHECK(a.out == "wrote " + prefix_a + ".db/.utils/.shelf: 15 q-sequences, 2 periods\n");

  auto b = run_cli("gen --base " + d + "/running_example --scale 3 --periods 2 --seed 9" +
                   " --out-prefix " + prefix_b);
  CHECK(b.code == 0);
  CHECK(slurp(prefix_a + ".db") == slurp(prefix_b + ".db"));
  CHECK(slurp(prefix_a + ".utils") == slurp(prefix_b + ".utils"));
  CHECK(slurp(prefix_a + ".shelf") == slurp(prefix_b + ".shelf"));

  auto differently = run_cli("gen --base " + d + "/running_example --scale 3 --periods 2" +
                             " --seed 10 --out-prefix " + prefix_b);
  CHECK(differently.code == 0);
  CHECK(slurp(prefix_a + ".db") != slurp(prefix_b + ".db"));

  auto verify = run_cli("verify --db " + prefix_a + ".db --utils " + prefix_a + ".utils" +
                        " --shelf " + prefix_a + ".shelf --threshold 0.25");
  CHECK(verify.code == 0);

  auto bad = run_cli("gen --base " + d + "/running_example --scale 0 --periods 2 --seed 1" +
                     " --out-prefix " + prefix_b);
  CHECK(bad.code == 2);
}

TEST_CASE("bench sweeps thresholds and ablations into one CSV") {
  auto result = run_cli("bench " + fixture_args() + " --thresholds 0.2,0.3");
  CHECK(result.code == 0);
  auto lines = split(result.out, '\n');
  REQUIRE(lines.size() >= 5);
  CHECK(lines[0] == "algo,xi,patterns,candidates,time_ms,peak_mem_bytes,flags");
  CHECK(lines.size() == 5);  // header + 2 thresholds x 2 algorithms

  auto ablated = run_cli("bench " + fixture_args() + " --thresholds 0.2,0.3 --ablate");
  CHECK(ablated.code == 0);
  auto ablated_lines = split(ablated.out, '\n');
  CHECK(ablated_lines.size() == 1 + 2 * 7);  // full + 3 and full + 2 variants per threshold

  // Patterns shrink (weakly) as the threshold grows, for each algorithm.
  std::uint64_t osums_02 = 0, osums_03 = 0;
  for (std::size_t i = 1; i < ablated_lines.size(); ++i) {
    auto fields = split(ablated_lines[i], ',');
    REQUIRE(fields.size() == 7);
    if (fields[0] == "osums" && fields[6] == "full") {
      if (fields[1] == "0.2") osums_02 = std::stoull(fields[2]);
      if (fields[1] == "0.3") osums_03 = std::stoull(fields[2]);
    }
    CHECK(std::stoull(fields[3]) >= std::stoull(fields[2]));
  }
  CHECK(osums_02 >= osums_03);

  auto bad = run_cli("bench " + fixture_args() + " --thresholds 0.2,,");
  CHECK(bad.code == 0);  // empty entries are skipped, one threshold remains

  auto invalid = run_cli("bench " + fixture_args() + " --thresholds nope");
  CHECK(invalid.code == 2);
}

TEST_CASE("top-level usage errors exit with code 1") {
  auto result = run_cli("");
  CHECK(result.code == 1);
  result = run_cli("frobnicate");
  CHECK(result.code == 1);
  auto help = run_cli("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("mine") != std::string::npos);
}

TEST_CASE("mine with a length cap matches the capped oracle") {
  auto result = run_cli("mine " + fixture_args() + " --threshold 0.2 --max-len 2");
  CHECK(result.code == 0);
  oracle::OracleConfig config;
  config.xi = Ratio::parse("0.2");
  config.max_pattern_length = 2;
  auto expected = oracle::mine(testsupport::running_example(), config);
  CHECK(result.out == render_expected(expected.patterns));
}
