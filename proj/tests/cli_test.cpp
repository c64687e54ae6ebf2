// Copyright 2026 The besselid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace besselid::cli {
namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "besselid");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<Json> rows_of(const std::string& out) {
  std::vector<Json> rows;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) rows.push_back(Json::parse(line));
  return rows;
}

// Runs the built binary through the shell; stdout only.
Result run_binary(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + BESSELID_CLI_PATH + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, "", ""};
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

TEST(Parsing, IntegerRanges) {
  EXPECT_EQ(parse_int_range("2..4"), (std::vector<unsigned>{2, 3, 4}));
  EXPECT_EQ(parse_int_range("7"), (std::vector<unsigned>{7}));
  EXPECT_EQ(parse_int_range("1,3,5"), (std::vector<unsigned>{1, 3, 5}));
  EXPECT_THROW(parse_int_range("4..2"), ConfigError);
  EXPECT_THROW(parse_int_range("a"), ConfigError);
  EXPECT_THROW(parse_int_range("-1"), ConfigError);
  EXPECT_THROW(parse_int_range(""), ConfigError);
}

TEST(Parsing, RealGrids) {
  EXPECT_EQ(parse_real_grid("0.5,1,2"), (std::vector<double>{0.5, 1.0, 2.0}));
  const auto g = parse_real_grid("0:5:0.25");
  ASSERT_EQ(g.size(), 21u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 5.0);
  EXPECT_DOUBLE_EQ(g[3], 0.75);
  EXPECT_THROW(parse_real_grid("0:5:0"), ConfigError);
  EXPECT_THROW(parse_real_grid("0:5"), ConfigError);
  EXPECT_THROW(parse_real_grid("x"), ConfigError);
}

TEST(Verify, FamilyGrid) {
  const auto r = run_args({"verify", "--family", "f", "--m", "2..4", "--n", "0..8"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto rows = rows_of(r.out);
  ASSERT_EQ(rows.size(), 27u);
  EXPECT_EQ(rows[0]["params"]["m"], 2);
  EXPECT_EQ(rows[0]["params"]["n"], 0);
  EXPECT_EQ(rows[1]["params"]["n"], 1);
  EXPECT_EQ(rows.back()["params"]["m"], 4);
  for (const auto& row : rows) {
    EXPECT_EQ(row["status"], "pass");
    EXPECT_EQ(row["metric"], 0.0);
  }
}

TEST(Verify, Prudnikov) {
  const auto r = run_args({"verify", "--family", "prudnikov", "--n", "0..20"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(rows_of(r.out).size(), 21u);
}

TEST(Verify, SchemaKeysInOrder) {
  const auto r = run_args({"verify", "--family", "laguerre", "--m", "2", "--n", "1"});
  ASSERT_EQ(r.code, 0);
  const auto rows = rows_of(r.out);
  ASSERT_EQ(rows.size(), 1u);
  std::vector<std::string> keys;
  for (const auto& [k, v] : rows[0].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"identity", "params", "status", "metric", "tolerance"}));
}

TEST(Verify, ConfigErrors) {
  EXPECT_EQ(run_args({"verify", "--family", "general", "--m", "1", "--n", "0"}).code, 2);
  EXPECT_EQ(run_args({"verify", "--family", "nope", "--m", "2", "--n", "0"}).code, 2);
  EXPECT_EQ(run_args({"verify", "--family", "general", "--m", "6", "--n", "0"}).code, 2);
  EXPECT_EQ(run_args({"verify", "--family", "general", "--m", "2", "--n", "13"}).code, 2);
  EXPECT_EQ(run_args({"verify", "--family", "general", "--m", "2..x"}).code, 2);
  EXPECT_EQ(run_args({"bogus"}).code, 2);
  EXPECT_EQ(run_args({}).code, 2);
  EXPECT_EQ(run_args({"verify", "--family", "f", "--format", "xml"}).code, 2);
}

TEST(Verify, CeilingIsOverridable) {
  const auto r =
      run_args({"verify", "--family", "theta", "--m", "6", "--n", "2", "--max-m", "6"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Verify, Help) {
  const auto r = run_args({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Numeric, Examples) {
  const auto a = run_args({"numeric", "--identity", "brychkov", "--m", "2..4", "--n", "0..8",
                           "--z", "0.5,1,2"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(rows_of(a.out).size(), 81u);
  const auto b = run_args({"numeric", "--identity", "fk", "--m", "2", "--n", "3", "--z", "0.5,1.5"});
  EXPECT_EQ(b.code, 0) << b.err;
  const auto rows = rows_of(b.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0]["params"]["z"], (Json{0.5, 1.5}));
  EXPECT_EQ(rows[0]["tolerance"], 1e-9);
  EXPECT_EQ(run_args({"numeric", "--identity", "k", "--m", "5", "--n", "0", "--z", "1"}).code, 0);
}

TEST(Numeric, ToleranceAndErrors) {
  // an absurdly small tolerance turns rounding residue into a check failure
  const auto tight = run_args(
      {"numeric", "--identity", "brychkov", "--m", "3", "--n", "6", "--z", "2", "--tol", "1e-300"});
  EXPECT_EQ(tight.code, 1);
  EXPECT_NE(tight.err.find("failed"), std::string::npos);
  EXPECT_EQ(run_args({"numeric", "--identity", "k", "--m", "2", "--n", "0", "--z", "-1"}).code, 2);
  EXPECT_EQ(run_args({"numeric", "--identity", "x", "--m", "2", "--n", "0", "--z", "1"}).code, 2);
  EXPECT_EQ(run_args({"numeric", "--identity", "k", "--m", "2", "--n", "0"}).code, 2);
}

TEST(Sample, Examples) {
  const auto a = run_args({"sample", "--test", "lemma2", "--z", "1,1", "--count", "100000",
                           "--seed", "7"});
  EXPECT_EQ(a.code, 0) << a.err;
  const auto rows = rows_of(a.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0]["seed"], 7);
  EXPECT_LT(rows[0]["metric"].get<double>(), rows[0]["tolerance"].get<double>());

  EXPECT_EQ(run_args({"sample", "--test", "extension", "--z", "1,2,3", "--count", "100000",
                      "--seed", "11"})
                .code,
            0);

  const auto m = run_args({"sample", "--test", "moments", "--z", "1", "--n", "2", "--count",
                           "1000000", "--seed", "3"});
  EXPECT_EQ(m.code, 0) << m.err;
  const auto mrows = rows_of(m.out);
  ASSERT_EQ(mrows.size(), 1u);
  EXPECT_EQ(mrows[0]["params"]["target"], 7.0);
}

TEST(Sample, SeedIsReportedWhenRandom) {
  const auto r = run_args({"sample", "--test", "stability", "--z", "1,2", "--count", "2000"});
  EXPECT_NE(r.err.find("random seed"), std::string::npos);
  ASSERT_EQ(rows_of(r.out).size(), 1u);
  EXPECT_TRUE(rows_of(r.out)[0].contains("seed"));
}

TEST(Sample, ConfigErrors) {
  EXPECT_EQ(run_args({"sample", "--test", "lemma2", "--z", "1,1", "--count", "999"}).code, 2);
  EXPECT_EQ(run_args({"sample", "--test", "lemma2", "--z", "1", "--seed", "1"}).code, 2);
  EXPECT_EQ(run_args({"sample", "--test", "moments", "--z", "1", "--n", "5"}).code, 2);
  EXPECT_EQ(run_args({"sample", "--test", "extension", "--z", "1,0"}).code, 2);
  EXPECT_EQ(run_args({"sample", "--test", "other", "--z", "1,1"}).code, 2);
}

TEST(Inequality, Examples) {
  const auto t = run_args({"inequality", "--turan", "--x", "-0.2,0.5,1.5,3", "--y",
                           "-0.2,0.5,1.5,3", "--p", "1.5,2,4", "--z", "0.5,1,5"});
  EXPECT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(rows_of(t.out).size(), 144u);
  const auto l = run_args({"inequality", "--logconvex", "--nu", "0:5:0.25", "--z", "1"});
  EXPECT_EQ(l.code, 0) << l.err;
  const auto lrows = rows_of(l.out);
  ASSERT_EQ(lrows.size(), 1u);
  EXPECT_EQ(lrows[0]["params"]["triples"], 19);
  const auto e = run_args({"inequality", "--turan", "--x", "1", "--y", "1", "--p", "2", "--z", "1"});
  EXPECT_EQ(e.code, 0) << e.err;
  EXPECT_NEAR(rows_of(e.out)[0]["metric"].get<double>(), 1.0, 1e-12);
}

TEST(Inequality, ConfigErrors) {
  EXPECT_EQ(run_args({"inequality", "--turan", "--x", "-1", "--y", "1", "--p", "2", "--z", "1"})
                .code,
            2);
  EXPECT_EQ(run_args({"inequality", "--turan", "--x", "1", "--y", "1", "--p", "1", "--z", "1"})
                .code,
            2);
  EXPECT_EQ(run_args({"inequality", "--turan", "--logconvex", "--nu", "0:1:0.5", "--z", "1"})
                .code,
            2);
  EXPECT_EQ(run_args({"inequality", "--logconvex", "--nu", "0,1", "--z", "1"}).code, 2);
  EXPECT_EQ(run_args({"inequality", "--logconvex", "--nu", "1,0,2", "--z", "1"}).code, 2);
}

TEST(Output, CsvAndText) {
  const auto c = run_args({"verify", "--family", "theta", "--m", "2", "--n", "0..1", "--format",
                           "csv"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out.substr(0, c.out.find('\n')), "identity,params,status,metric,tolerance,seed,witness");
  EXPECT_EQ(std::count(c.out.begin(), c.out.end(), '\n'), 3);
  const auto t = run_args({"verify", "--family", "theta", "--m", "2", "--n", "0", "--format",
                           "text"});
  ASSERT_EQ(t.code, 0);
  EXPECT_EQ(t.out.rfind("PASS theta", 0), 0u);
}

TEST(Output, OutPath) {
  const auto path = std::filesystem::temp_directory_path() / "besselid_cli_out.jsonl";
  const auto r = run_args({"verify", "--family", "f", "--m", "2", "--n", "0..2", "--out",
                           path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(rows_of(buf.str()).size(), 3u);
  std::filesystem::remove(path);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("verify --family f --m 2..3 --n 0..4").code, 0);
  EXPECT_EQ(run_binary("verify --family general --m 1 --n 0").code, 2);
  EXPECT_EQ(run_binary("numeric --identity brychkov --m 3 --n 6 --z 2 --tol 1e-300").code, 1);
}

TEST(Binary, ByteIdenticalReruns) {
  const std::string args = "sample --test extension --z 0.5,1 --count 5000 --seed 99";
  const auto a = run_binary(args);
  const auto b = run_binary(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_FALSE(a.out.empty());
  EXPECT_EQ(a.out, b.out);
}

TEST(Binary, WorkerCountDoesNotChangeOutput) {
  const std::string args = "numeric --identity k --m 2..4 --n 0..5 --z 0.5,1,2";
  const auto one = run_binary(args, "BESSELID_WORKERS=1");
  const auto many = run_binary(args, "BESSELID_WORKERS=8");
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, many.out);
  const std::string moments = "sample --test moments --z 0.5,1 --n 0..3 --count 2000 --seed 5";
  EXPECT_EQ(run_binary(moments, "BESSELID_WORKERS=1").out,
            run_binary(moments, "BESSELID_WORKERS=4").out);
}

}  // namespace
}  // namespace besselid::cli
