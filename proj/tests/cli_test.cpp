// Copyright 2026 The cuckoo-inference Authors
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
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CUCKOO_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t k = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), k);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

class CliTest : public ::testing::Test {
 protected:
  std::filesystem::path write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path;
  }
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("cuckoo_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(CliTest, GenIsDeterministicAndUsesCapacityRule) {
  const auto a = run("gen --n 4 --eps 0.5 --seed 9 --trial 2");
  const auto b = run("gen --n 4 --eps 0.5 --seed 9 --trial 2");
  ASSERT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "4 6 1");
  const auto dsq = run("gen --n 4 --d 2 --eps 0.5 --capacity-rule dsq");
  ASSERT_EQ(dsq.status, 0) << dsq.out;
  EXPECT_EQ(dsq.out.substr(0, dsq.out.find('\n')), "4 24 2");
}

TEST_F(CliTest, CheckExitCodes) {
  const auto ok = write("ok.txt", "2 2 1\n0 1\n1 0\n");
  const auto full = write("full.txt", "3 1 1\n0 0\n0 0\n0 0\n");
  const auto r1 = run("check " + ok.string());
  EXPECT_EQ(r1.status, 0) << r1.out;
  EXPECT_NE(r1.out.find("feasible"), std::string::npos);
  const auto r2 = run("check --explain " + full.string());
  EXPECT_EQ(r2.status, 1) << r2.out;
  EXPECT_NE(r2.out.find("infeasible: item 0 is bad"), std::string::npos) << r2.out;
  EXPECT_NE(r2.out.find("->"), std::string::npos) << r2.out;
}

TEST_F(CliTest, CheckReadsStdin) {
  const auto ok = write("ok.txt", "2 2 1\n0 1\n1 0\n");
  const auto r = run("check - < " + ok.string());
  EXPECT_EQ(r.status, 0) << r.out;
}

TEST_F(CliTest, PlaceWritesPlacement) {
  const auto ok = write("ok.txt", "2 2 1\n0 1\n1 0\n");
  const auto out = dir_ / "placement.txt";
  const auto r = run("place " + ok.string() + " --out " + out.string());
  ASSERT_EQ(r.status, 0) << r.out;
  std::ifstream in(out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 2);
  const auto full = write("full.txt", "3 1 1\n0 0\n0 0\n0 0\n");
  EXPECT_EQ(run("place " + full.string()).status, 1);
}

TEST_F(CliTest, OracleAgrees) {
  const auto gen = run("gen --n 12 --m 10 --seed 4");
  ASSERT_EQ(gen.status, 0);
  const auto inst = write("i.txt", gen.out);
  const auto r = run("oracle " + inst.string());
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("agree"), std::string::npos);
}

TEST_F(CliTest, BoundsTable) {
  const auto r = run("bounds --n 1000 --eps 0.5");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("1500"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("0.036"), std::string::npos) << r.out;
}

TEST_F(CliTest, ExperimentCsv) {
  const auto r = run("experiment --n 20,40 --eps 0.5 --trials 50 --seed 1");
  ASSERT_EQ(r.status, 0) << r.out;
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 3) << r.out;
  EXPECT_EQ(r.out.rfind("n,", 0), 0u) << r.out;
  const auto file = dir_ / "sweep.csv";
  ASSERT_EQ(run("experiment --n 20,40 --eps 0.5 --trials 50 --seed 1 --out " + file.string()).status,
            0);
  std::ifstream in(file);
  const std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text, r.out);
}

TEST_F(CliTest, CensusCsv) {
  const auto r = run("census --n 50 --eps 0.1 --trials 30 --seed 1");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out.rfind("n,m,d,epsilon,path_len,count\n", 0), 0u) << r.out;
}

TEST_F(CliTest, ErrorsExitTwo) {
  const auto bad = write("bad.txt", "2 4 1\n0 9\n1 1\n");
  const auto r = run("check " + bad.string());
  EXPECT_EQ(r.status, 2) << r.out;
  EXPECT_NE(r.out.find("line 2"), std::string::npos) << r.out;
  EXPECT_EQ(run("check " + (dir_ / "missing.txt").string()).status, 2);
  EXPECT_EQ(run("experiment --n 10 --eps -1 --trials 5").status, 2);
  EXPECT_EQ(run("experiment --n 10 --trials 5 --out /nonexistent/dir/x.csv").status, 2);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_NE(run("").status, 0);
  EXPECT_NE(run("frobnicate").status, 0);
}

}  // namespace
