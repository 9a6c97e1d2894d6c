// Copyright 2026 The qfsample Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + QFS_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(QFS_TEST_DATA) + "/" + name; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("qfs_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

TEST(Cli, SpectrumWorkedExample) {
    const auto r = run("spectrum " + data("paper_n2_table.json"));
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "index_bits,coefficient\n00,0.5\n01,-0.5\n10,0.5\n11,0.5\n");
    const auto j = run("spectrum --format json " + data("paper_n2_table.json"));
    EXPECT_EQ(nlohmann::json::parse(j.out).at("coefficients"), nlohmann::json({0.5, -0.5, 0.5, 0.5}));
}

TEST(Cli, LearnParityFullTable) {
    const auto r = run("learn --parity 000101 --m full");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("identified"), "000101");
    EXPECT_EQ(j.at("estimate"), 1.0);
}

TEST(Cli, LearnWorkedTrainingSet) {
    const auto r = run("learn --table " + data("paper_n2.json") + " --budget 100 --seed 7");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out).at("identified"), "10");
}

TEST(Cli, LearnIsByteIdentical) {
    const std::string args = "learn --random 8 --terms 4 --width 3 --budget 300 --seed 11";
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, run("learn --random 8 --terms 4 --width 3 --budget 300 --seed 12").out);
}

TEST(Cli, GenDnfRoundTripsThroughSpectrum) {
    const auto dir = scratch("gen");
    const auto path = dir / "f.json";
    ASSERT_EQ(run("gen-dnf --n 6 --terms 3 --width 2 --seed 4 --out " + path.string()).status, 0);
    const auto j = nlohmann::json::parse(slurp(path));
    EXPECT_EQ(j.at("n"), 6);
    EXPECT_EQ(j.at("terms").size(), 3U);
    EXPECT_EQ(run("spectrum " + path.string()).status, 0);
    EXPECT_EQ(run("gen-dnf --n 6 --terms 3 --width 2 --seed 4").out, slurp(path));
}

TEST(Cli, ScaleOutputsAreByteIdentical) {
    const auto a = scratch("scale_a");
    const auto b = scratch("scale_b");
    const auto cfg = a / "cfg.json";
    std::ofstream(cfg) << R"({"n_values": [4, 6], "trials": 5, "policy": {"kind": "fixed_budget", "budget": 100},
                              "estimation_examples": 200, "seed": 3})";
    ASSERT_EQ(run("scale " + cfg.string() + " --out " + a.string()).status, 0);
    ASSERT_EQ(run("scale " + cfg.string() + " --workers 2 --out " + b.string()).status, 0);
    EXPECT_EQ(slurp(a / "records.csv"), slurp(b / "records.csv"));
    EXPECT_EQ(slurp(a / "summary.json"), slurp(b / "summary.json"));
    std::size_t lines = 0;
    for (char c : slurp(a / "records.csv")) lines += c == '\n' ? 1 : 0;
    EXPECT_EQ(lines, 11U);
}

TEST(Cli, SelftestPassesAndIsStable) {
    const auto a = run("selftest --seed 3");
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, run("selftest --seed 3").out);
    EXPECT_NE(a.out.find("PASS bridge"), std::string::npos);
}

TEST(Cli, ExitCodeUsage) {
    EXPECT_EQ(run("").status, 1);
    EXPECT_EQ(run("frobnicate").status, 1);
    EXPECT_EQ(run("learn --no-such-flag").status, 1);
    EXPECT_EQ(run("learn --parity 01 --random 4").status, 1);
    EXPECT_EQ(run("spectrum /nonexistent/file.json").status, 1);
}

TEST(Cli, ExitCodeResource) {
    EXPECT_EQ(run("spectrum --cap 1 " + data("paper_n2_table.json")).status, 2);
    EXPECT_EQ(run("spectrum " + data("paper_n2_table.json"), "QFS_MAX_N=1").status, 2);
    EXPECT_EQ(run("spectrum " + data("paper_n2_table.json"), "QFS_MAX_N=2").status, 0);
    const auto r = run("scale --preset n30");
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.out.find("\"projected_samples\""), std::string::npos);
}

TEST(Cli, ExitCodeNonConverged) {
    // The full table of the worked example has four equal coefficients.
    const auto r = run("learn --table " + data("paper_n2_table.json") +
                       " --m full --policy sequential --max-samples 2000 --seed 1");
    EXPECT_EQ(r.status, 3);
    EXPECT_EQ(nlohmann::json::parse(r.out).at("converged"), false);
}

TEST(Cli, ExitCodeSelftestFailure) {
    const auto r = run("selftest --inject-fwht-fault");
    EXPECT_EQ(r.status, 4);
    EXPECT_NE(r.out.find("FAIL bridge"), std::string::npos);
}

}  // namespace
