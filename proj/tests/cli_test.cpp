#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "banditsweeper/actionspace.hpp"
#include "banditsweeper/cli.hpp"

using namespace banditsweeper;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "banditsweeper");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("banditsweeper_cli_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("train prints a summary and writes its outputs") {
  const auto table = temp("train.tsv");
  const auto report = temp("train.csv");
  const Run r = cli({"train", "--rows", "4", "--cols", "4", "--mines", "3", "--episodes", "400",
                     "--window", "100", "--seed", "5", "--table-out", table.string(),
                     "--report-out", report.string()});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("episodes 400 wins ", 0) == 0);
  CHECK(r.out.find(" keys ") != std::string::npos);
  CHECK(lines(slurp(report)) == 5);
  CHECK(slurp(table).rfind("banditsweeper-table\t1\nkind\tMAB\n", 0) == 0);

  // Same seed, same output.
  const Run again = cli({"train", "--rows", "4", "--cols", "4", "--mines", "3", "--episodes",
                         "400", "--window", "100", "--seed", "5"});
  CHECK(again.out == r.out);

  // Continuing a table keeps learning from it.
  const Run more = cli({"train", "--rows", "4", "--cols", "4", "--mines", "3", "--episodes",
                        "100", "--seed", "6", "--table-in", table.string()});
  CHECK(more.code == 0);
  std::filesystem::remove(table);
  std::filesystem::remove(report);
}

TEST_CASE("zero episodes report no win rate") {
  const Run r = cli({"train", "--episodes", "0"});
  CHECK(r.code == 0);
  CHECK(r.out == "episodes 0 wins 0 win_rate n/a keys 0 perfect 0\n");
}

TEST_CASE("bad arguments fail") {
  CHECK(cli({"train", "--rows", "8", "--cols", "8", "--mines", "64"}).code != 0);
  const Run policy = cli({"train", "--policy", "softmax", "--episodes", "1"});
  CHECK(policy.code != 0);
  CHECK(policy.err.find("error:") != std::string::npos);
  CHECK(cli({"train", "--mines", "3", "--density", "0.2"}).code != 0);
  CHECK(cli({"train", "--episodes", "10", "--window", "3"}).code != 0);
  CHECK(cli({"train", "--first-click", "corner", "--episodes", "1"}).code != 0);
  CHECK(cli({"train", "--policy", "egreedy", "--epsilon", "2", "--episodes", "1"}).code != 0);
  CHECK(cli({"frobnicate"}).code != 0);
  CHECK(cli({}).code != 0);
}

TEST_CASE("sa agent trains and evaluates") {
  const auto table = temp("sa.tsv");
  const Run r = cli({"train", "--agent", "sa", "--rows", "3", "--cols", "3", "--mines", "1",
                     "--episodes", "200", "--table-out", table.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find(" pairs ") != std::string::npos);
  const Run e = cli({"eval", "--table-in", table.string(), "--rows", "3", "--cols", "3",
                     "--mines", "1", "--episodes", "50"});
  CHECK(e.code == 0);
  CHECK(e.out.rfind("setting 3x3x1 episodes 50 wins ", 0) == 0);
  std::filesystem::remove(table);
}

TEST_CASE("eval of an empty table on a single tile board") {
  const auto table = temp("empty.tsv");
  REQUIRE(cli({"train", "--rows", "1", "--cols", "1", "--mines", "0", "--episodes", "0",
               "--table-out", table.string()})
              .code == 0);
  const Run e = cli({"eval", "--table-in", table.string(), "--rows", "1", "--cols", "1",
                     "--mines", "0", "--episodes", "25", "--threads", "2"});
  CHECK(e.code == 0);
  CHECK(e.out == "setting 1x1x0 episodes 25 wins 25 win_rate 1\n");

  const Run counts = cli({"export", "--table-in", table.string(), "--what", "ecdf"});
  CHECK(counts.out == "q,fraction\n");
  const Run keys = cli({"export", "--table-in", table.string(), "--what", "keys"});
  CHECK(keys.out == "key,q,n\n");
  std::filesystem::remove(table);
}

TEST_CASE("corrupt and missing tables are errors") {
  const auto table = temp("corrupt.tsv");
  {
    std::ofstream f(table);
    f << "banditsweeper-table\t1\nkind\tMAB\nnonsense\n";
  }
  const Run e = cli({"eval", "--table-in", table.string()});
  CHECK(e.code == 1);
  CHECK(e.err.find("error:") != std::string::npos);
  std::filesystem::remove(table);
  CHECK(cli({"patterns", "--table-in", table.string()}).code == 1);
  CHECK(cli({"eval"}).code != 0);
}

TEST_CASE("patterns list perfect motifs") {
  const auto table = temp("patterns.tsv");
  REQUIRE(cli({"train", "--rows", "5", "--cols", "5", "--mines", "4", "--episodes", "2000",
               "--table-out", table.string()})
              .code == 0);
  const Run all = cli({"patterns", "--table-in", table.string(), "--min-count", "20"});
  CHECK(all.code == 0);
  std::istringstream in(all.out);
  std::string line;
  std::uint64_t previous_n = ~0ULL;
  int entries = 0;
  while (std::getline(in, line)) {
    const auto gap = line.find("  ");
    REQUIRE(gap != std::string::npos);
    CHECK_NOTHROW(decode(line.substr(0, gap)));
    const std::uint64_t n = std::stoull(line.substr(line.find("n=") + 2));
    CHECK(n >= 20);
    CHECK(n <= previous_n);
    previous_n = n;
    for (int i = 0; i < 4; ++i) std::getline(in, line);  // 3 motif rows and a blank
    ++entries;
  }
  CHECK(entries > 0);
  const Run none = cli({"patterns", "--table-in", table.string(), "--min-count", "999999999"});
  CHECK(none.code == 0);
  CHECK(none.out.empty());
  std::filesystem::remove(table);
}

TEST_CASE("sweep covers the whole grid") {
  const Run r = cli({"sweep", "--rows", "3..10", "--cols", "3..10", "--episodes", "2",
                     "--threads", "1"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 65);
  CHECK(r.out.rfind("rows,cols,density,mines,win_rate,keys\n", 0) == 0);
  CHECK(cli({"sweep", "--rows", "5..3"}).code != 0);
}

TEST_CASE("seed from the environment") {
  const std::vector<std::string> args{"train", "--rows", "4", "--cols", "4", "--mines", "3",
                                      "--episodes", "200"};
  std::vector<std::string> seeded = args;
  seeded.insert(seeded.end(), {"--seed", "31"});
  const Run explicit_seed = cli(seeded);
  setenv("BANDITSWEEPER_SEED", "31", 1);
  const Run from_env = cli(args);
  unsetenv("BANDITSWEEPER_SEED");
  const Run unseeded = cli(args);
  CHECK(from_env.out == explicit_seed.out);
  CHECK(unseeded.out == cli(args).out);
}

TEST_CASE("mixed schedule") {
  const Run r = cli({"train", "--rows", "5", "--cols", "5", "--schedule", "6:100,3:100",
                     "--window", "100"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("episodes 200 ", 0) == 0);
  CHECK(cli({"train", "--schedule", "3:10", "--mines", "3"}).code != 0);
  CHECK(cli({"train", "--schedule", "3-10"}).code != 0);
}
