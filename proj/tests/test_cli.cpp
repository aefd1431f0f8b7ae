#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "cyclehopf/cli.hpp"
#include "support.hpp"

using namespace cyclehopf;
using namespace cyclehopf::cli;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = fs::temp_directory_path() / ("cyclehopf_test_" + std::to_string(rng()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string write(const std::string& name, const Digraph& g) const { return write(name, to_edge_list(g)); }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

struct CmdResult {
  int code;
  std::string out;
  std::string err;
};

CmdResult census(CensusArgs a) {
  std::ostringstream out, err;
  const int code = cmd_census(a, out, err);
  return {code, out.str(), err.str()};
}

CensusArgs census_args(const std::string& file, Method m = Method::Conv) {
  CensusArgs a;
  a.file = file;
  a.method = m;
  a.threads = 1;
  return a;
}

CmdResult check(const std::string& file) {
  CheckArgs a;
  a.file = file;
  a.threads = 1;
  std::ostringstream out, err;
  const int code = cmd_check(a, out, err);
  return {code, out.str(), err.str()};
}

CmdResult bench(BenchArgs a) {
  std::ostringstream out, err;
  const int code = cmd_bench(a, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

json counts_of(const std::string& out) { return json::parse(out).at("counts"); }

}  // namespace

TEST(CliCensus, TriangleConv) {
  TempDir dir;
  auto a = census_args(dir.write("tri.txt", triangle()));
  a.hamiltonian = true;
  const CmdResult r = census(a);
  ASSERT_EQ(r.code, kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("counts"), json::parse(R"({"2":"3","3":"2"})"));
  EXPECT_EQ(j.at("hamiltonian"), "2");
  EXPECT_EQ(j.at("n"), 3);
  EXPECT_EQ(j.at("edges"), 6);
  EXPECT_EQ(j.at("method"), "conv");
  EXPECT_TRUE(j.at("verified").is_null());
}

TEST(CliCensus, JsonKeysInSchemaOrder) {
  TempDir dir;
  const CmdResult r = census(census_args(dir.write("tri.txt", triangle())));
  const json j = json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"n", "edges", "method", "counts", "hamiltonian", "elapsed_ms", "verified"}));
}

TEST(CliCensus, EmptyFileGivesEmptyCounts) {
  TempDir dir;
  const CmdResult r = census(census_args(dir.write("empty.txt", "")));
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(counts_of(r.out), json::object());
}

TEST(CliCensus, EveryMethodAgreesWithConv) {
  TempDir dir;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::string file = dir.write("g" + std::to_string(seed), random_digraph(6, 0.4, seed));
    const json want = counts_of(census(census_args(file)).out);
    for (Method m : {Method::Brute, Method::HopfLog, Method::HopfDynkin, Method::ConvDetDPerm, Method::ConvPermDDet}) {
      const CmdResult r = census(census_args(file, m));
      ASSERT_EQ(r.code, kOk) << method_name(m) << ": " << r.err;
      EXPECT_EQ(counts_of(r.out), want) << method_name(m) << " seed " << seed;
    }
  }
}

TEST(CliCensus, TriangleHopfDynkinMatchesConv) {
  TempDir dir;
  const std::string file = dir.write("tri.txt", triangle());
  EXPECT_EQ(counts_of(census(census_args(file, Method::HopfDynkin)).out), counts_of(census(census_args(file)).out));
}

TEST(CliCensus, VerifySetsFlag) {
  TempDir dir;
  auto a = census_args(dir.write("g.txt", random_digraph(7, 0.5, 11)));
  a.verify = true;
  a.hamiltonian = true;
  const CmdResult r = census(a);
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(json::parse(r.out).at("verified"), true);
}

TEST(CliCensus, MaxLengthTruncates) {
  TempDir dir;
  const Digraph g = random_digraph(8, 0.5, 5);
  const std::string file = dir.write("g.txt", g);
  const json full = counts_of(census(census_args(file)).out);
  for (Method m : {Method::Conv, Method::Brute, Method::HopfLog}) {
    auto a = census_args(file, m);
    a.max_length = 4;
    json want = json::object();
    for (const auto& [len, c] : full.items())
      if (std::stoul(len) <= 4) want[len] = c;
    EXPECT_EQ(counts_of(census(a).out), want) << method_name(m);
  }
}

TEST(CliCensus, TsvFormat) {
  TempDir dir;
  auto a = census_args(dir.write("tri.txt", triangle()));
  a.format = "tsv";
  a.hamiltonian = true;
  const auto l = lines(census(a).out);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[0].rfind("# n=3 edges=6 method=conv", 0), 0u);
  EXPECT_EQ(l[1], "length\tcount");
  EXPECT_EQ(l[2], "2\t3");
  EXPECT_EQ(l[3], "3\t2");
  EXPECT_EQ(l[4], "hamiltonian\t2");
}

TEST(CliCensus, JsonRoundTripIsByteIdentical) {
  TempDir dir;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto a = census_args(dir.write("g.txt", random_digraph(9, 0.6, seed)));
    a.hamiltonian = seed % 2 == 0;
    a.verify = seed % 3 == 0;
    std::string out = census(a).out;
    out.pop_back();  // trailing newline
    const RunReport rep = report_from_json(json::parse(out));
    EXPECT_EQ(to_json(rep).dump(), out);
    EXPECT_EQ(to_json(report_from_json(to_json(rep))).dump(), out);
  }
}

TEST(CliCensus, BigCountsStayExactStrings) {
  RunReport r;
  r.n = 40;
  r.method = "conv";
  r.counts[40] = BigInt("815915283247897734345611269596115894272000000000");
  r.hamiltonian = r.counts[40];
  const std::string text = to_json(r).dump();
  EXPECT_NE(text.find("\"815915283247897734345611269596115894272000000000\""), std::string::npos);
  EXPECT_EQ(report_from_json(json::parse(text)), r);
}

TEST(CliCensus, ParseErrorExitsOne) {
  TempDir dir;
  EXPECT_EQ(census(census_args(dir.write("bad.txt", "0 1\n1 x\n"))).code, kParseFailure);
  EXPECT_EQ(census(census_args(dir.write("dup.txt", "0 1\n0 1\n"))).code, kParseFailure);
  EXPECT_EQ(census(census_args(dir.str() + "/missing.txt")).code, kParseFailure);
  const CmdResult r = census(census_args(dir.write("neg.txt", "n 3\n0 -1\n")));
  EXPECT_EQ(r.code, kParseFailure);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST(CliCensus, CapExceededExitsTwo) {
  TempDir dir;
  auto a = census_args(dir.write("big.txt", directed_cycle(10)));
  a.size_cap = 8;
  EXPECT_EQ(census(a).code, kCapExceeded);

  auto b = census_args(dir.write("k6.txt", bidirected_complete(6)), Method::Brute);
  b.budget = 10;
  EXPECT_EQ(census(b).code, kCapExceeded);

  auto h = census_args(dir.write("k6.txt", bidirected_complete(6)), Method::HopfLog);
  h.budget = 10;
  EXPECT_EQ(census(h).code, kCapExceeded);
}

TEST(CliCheck, TrianglePasses) {
  TempDir dir;
  const CmdResult r = check(dir.write("tri.txt", triangle()));
  EXPECT_EQ(r.code, kOk) << r.out << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(r.out.find("skipped"), std::string::npos);
  EXPECT_NE(r.out.find("ok    antipode"), std::string::npos);
}

TEST(CliCheck, WorkedExamplePasses) {
  TempDir dir;
  EXPECT_EQ(check(dir.write("w.txt", worked_example())).code, kOk);
}

TEST(CliCheck, ParseFailureExitsOne) {
  TempDir dir;
  EXPECT_EQ(check(dir.write("bad.txt", "n 2\n0 5\n")).code, kParseFailure);
}

TEST(CliCheck, LargeGraphSkipsHopfSuite) {
  TempDir dir;
  const CmdResult r = check(dir.write("r12.txt", random_digraph(12, 0.5, 2024)));
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("skipped hopf suite"), std::string::npos);
  EXPECT_NE(r.out.find("ok    det-perm inverse"), std::string::npos);
  EXPECT_EQ(r.out.find("antipode"), std::string::npos);
}

TEST(CliBench, EmptyDirectoryPrintsHeaderOnly) {
  TempDir dir;
  BenchArgs a;
  a.dir = dir.str();
  a.threads = 1;
  const auto l = lines(bench(a).out);
  ASSERT_EQ(l.size(), 1u);
  EXPECT_EQ(l[0].rfind("graph\tn\tedges\tstatus\tconv_ms", 0), 0u);
  EXPECT_EQ(l[0].substr(l[0].size() - 6), "\tagree");
}

TEST(CliBench, RandomCorpusAllMethodsAgree) {
  TempDir dir;
  for (int i = 0; i < 10; ++i) dir.write("g" + std::to_string(i) + ".txt", random_digraph(10, 0.25, 100 + i));
  BenchArgs a;
  a.dir = dir.str();
  a.threads = 1;
  const CmdResult r = bench(a);
  EXPECT_EQ(r.code, kOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 11u);
  for (std::size_t i = 1; i < l.size(); ++i) {
    EXPECT_EQ(l[i].substr(l[i].size() - 4), "\tyes") << l[i];
    EXPECT_NE(l[i].find("\t10\t"), std::string::npos);
  }
}

TEST(CliBench, OversizedGraphMarkedSkipped) {
  TempDir dir;
  dir.write("a_small.txt", triangle());
  dir.write("b_big.txt", directed_cycle(12));
  BenchArgs a;
  a.dir = dir.str();
  a.threads = 1;
  a.size_cap = 10;
  const auto l = lines(bench(a).out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[1].rfind("a_small.txt\t3\t6\tok", 0), 0u);
  EXPECT_EQ(l[2].rfind("b_big.txt\t12\t12\tskipped(cap)", 0), 0u);
}

TEST(CliBench, TimeoutKillsSlowRuns) {
  TempDir dir;
  dir.write("k9.txt", bidirected_complete(9));
  BenchArgs a;
  a.dir = dir.str();
  a.threads = 1;
  a.methods = {Method::Conv, Method::HopfLog};
  a.timeout_ms = 200;
  const auto l = lines(bench(a).out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_NE(l[1].find("\ttimeout\t"), std::string::npos) << l[1];
  EXPECT_EQ(l[1].substr(l[1].size() - 4), "\tyes");
}

namespace {

int run_binary(const std::string& args) {
  const std::string cmd = std::string(CYCLEHOPF_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(CliBinary, ExitCodes) {
  TempDir dir;
  const std::string tri = dir.write("tri.txt", triangle());
  EXPECT_EQ(run_binary("census " + tri), 0);
  EXPECT_EQ(run_binary("census " + tri + " --method nope"), 1);
  EXPECT_EQ(run_binary("frobnicate"), 1);
  EXPECT_EQ(run_binary("census " + dir.write("bad.txt", "x y\n")), 1);
  EXPECT_EQ(run_binary("census " + dir.write("c.txt", directed_cycle(9)) + " --size-cap 5"), 2);
  EXPECT_EQ(run_binary("check " + tri), 0);
}

TEST(CliBinary, EnvironmentOverridesSizeCap) {
  TempDir dir;
  const std::string file = dir.write("c.txt", directed_cycle(9));
  EXPECT_EQ(run_binary("census " + file), 0);
  const std::string cmd = "CYCLEHOPF_SIZE_CAP=5 " + std::string(CYCLEHOPF_CLI_PATH) + " census " + file + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}
