// Copyright 2026 The phasesynth Authors
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

// Drives the built executable end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "phasesynth/io.h"

namespace fs = std::filesystem;

namespace phasesynth {
namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(PHASESYNTH_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string config(const std::string& name) {
    return std::string(PHASESYNTH_CONFIG_DIR) + "/" + name;
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("phasesynth_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST_F(CliTest, StatesBinomial) {
    const auto r = run("states --binomial 3 --json");
    ASSERT_EQ(r.code, 0) << r.out;
    const Json j = Json::parse(r.out);
    const double s = 1 / std::sqrt(8.0);
    EXPECT_NEAR(j["amplitudes"][0]["re"].get<double>(), s, 1e-15);
    EXPECT_NEAR(j["amplitudes"][1]["re"].get<double>(), std::sqrt(3.0) * s, 1e-15);
    EXPECT_NEAR(j["mean_photon_number"].get<double>(), 1.5, 1e-14);
}

TEST_F(CliTest, StatesCoherentMean) {
    const auto r = run("states --coherent-mean 0.5 --json");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NEAR(Json::parse(r.out)["mean_photon_number"].get<double>(), 0.5, 1e-6);
}

TEST_F(CliTest, StatesSqueezedApproxPrintsRatioTable) {
    const auto text = run("states --squeezed-approx 3");
    ASSERT_EQ(text.code, 0) << text.out;
    EXPECT_NE(text.out.find("1.0146"), std::string::npos) << text.out;
    const Json j = Json::parse(run("states --squeezed-approx 3 --json").out);
    EXPECT_NEAR(j["ratios"][0]["ratio"].get<double>(), 1.0146, 5e-4);
    EXPECT_NEAR(j["ratios"][1]["ratio"].get<double>(), std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(j["quadrature_variance_ratio"].get<double>(), 1.0 / 3.0, 1e-9);
}

TEST_F(CliTest, StatesUsageErrors) {
    EXPECT_NE(run("states").code, 0);
    EXPECT_NE(run("states --binomial 3 --coherent-mean 1").code, 0);
    const auto r = run(R"(states --spec '{"kind":"laser"}' --json)");
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.out.find("\"path\":\"spec.kind\""), std::string::npos) << r.out;
    EXPECT_NE(run("states --spec 'not json'").code, 0);
}

TEST_F(CliTest, SimulateFig2WritesContractFiles) {
    const auto r = run("simulate --config " + config("fig2.json") + " --out " + dir_.string());
    ASSERT_EQ(r.code, 0) << r.out;
    std::ifstream points(dir_ / "points.csv");
    const auto parsed = read_csv(points);
    EXPECT_EQ(parsed.points.size(), 16u);
    EXPECT_EQ(parsed.source, DistributionSource::kExactSimulated);
    std::ifstream analytic(dir_ / "analytic.csv");
    const auto curve = read_csv(analytic);
    EXPECT_GE(curve.points.size(), 360u);
    EXPECT_NEAR(curve.periodic_trapezoid(), 1.0, 1e-9);
    const Json summary = Json::parse(slurp(dir_ / "summary.json"));
    const auto& manifest = summary["manifest"];
    EXPECT_EQ(manifest["seed"], 2);
    EXPECT_EQ(manifest["outputs"]["points"], (dir_ / "points.csv").string());
    EXPECT_EQ(manifest["outputs"]["analytic"], (dir_ / "analytic.csv").string());
    EXPECT_EQ(manifest["config"]["signal"]["mean_photon_number"], 0.076);
    EXPECT_TRUE(manifest.contains("version"));
    EXPECT_TRUE(manifest.contains("timestamp"));
    EXPECT_LT(summary["deviation_from_canonical"]["max_abs_deviation"].get<double>(), 5e-4);
}

TEST_F(CliTest, SimulateMonteCarloIsByteIdenticalUnderSeed) {
    const std::string base = "simulate --config " + config("fig4.json") + " --mode mc --seed 7 --out ";
    ASSERT_EQ(run(base + (dir_ / "a").string()).code, 0);
    ASSERT_EQ(run(base + (dir_ / "b").string()).code, 0);
    EXPECT_EQ(slurp(dir_ / "a" / "points.csv"), slurp(dir_ / "b" / "points.csv"));
    EXPECT_EQ(slurp(dir_ / "a" / "analytic.csv"), slurp(dir_ / "b" / "analytic.csv"));
    const Json summary = Json::parse(slurp(dir_ / "a" / "summary.json"));
    EXPECT_EQ(summary["manifest"]["seed"], 7);
    EXPECT_EQ(summary["source"], "monte-carlo");
}

TEST_F(CliTest, SimulateConfigErrorsAreStructured) {
    std::ofstream(dir_ / "bad.json") << R"({"signal":{"kind":"coherent"},"N":3})";
    const auto r = run("simulate --json --config " + (dir_ / "bad.json").string() + " --out " +
                       dir_.string());
    EXPECT_EQ(r.code, 2);
    const Json err = Json::parse(r.out);
    EXPECT_EQ(err["error"]["path"], "config.signal.mean_photon_number");
    EXPECT_EQ(run("simulate --config " + (dir_ / "missing.json").string()).code, 2);
    EXPECT_NE(run("simulate --config " + config("fig2.json") + " --mode fast").code, 0);
}

TEST_F(CliTest, SimulateReportsNumericalGuard) {
    std::ofstream(dir_ / "low.json")
        << R"({"signal":{"kind":"number","n":0},"detector":{"eta":0.2},"correct_efficiency":true})";
    const auto r = run("simulate --config " + (dir_ / "low.json").string() + " --out " + dir_.string());
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("too low"), std::string::npos) << r.out;
}

TEST_F(CliTest, ValidateJsonAndFaultInjection) {
    const auto ok = run("validate --json");
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_TRUE(Json::parse(ok.out)["passed"].get<bool>());
    const auto bad = run("validate --inject-fault dft");
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("FAIL dft_equivalence"), std::string::npos) << bad.out;
    EXPECT_EQ(run("validate --inject-fault nope").code, 2);
}

}  // namespace
}  // namespace phasesynth
