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

#include "phasesynth/validate.h"

#include <gtest/gtest.h>

namespace phasesynth {
namespace {

TEST(Validate, CleanRunPasses) {
    const auto report = run_validation();
    EXPECT_TRUE(report.passed());
    ASSERT_EQ(report.checks.size(), 6u);
    for (const auto& c : report.checks) {
        EXPECT_TRUE(c.passed) << c.name << " residual " << c.residual;
        EXPECT_LE(c.residual, c.tolerance);
    }
}

TEST(Validate, EachFaultTripsItsOwnCheck) {
    const auto names = fault_names();
    ASSERT_EQ(names.size(), 6u);
    for (size_t i = 0; i < names.size(); ++i) {
        const auto fault = parse_fault(names[i]);
        ASSERT_TRUE(fault.has_value());
        const auto report = run_validation(*fault);
        EXPECT_FALSE(report.passed()) << names[i];
        for (size_t j = 0; j < report.checks.size(); ++j) {
            EXPECT_EQ(report.checks[j].passed, i != j) << names[i] << " / " << report.checks[j].name;
        }
    }
    EXPECT_FALSE(parse_fault("gamma-ray").has_value());
}

TEST(Validate, JsonReport) {
    const Json j = report_to_json(run_validation(Fault::kBernoulli));
    EXPECT_FALSE(j["passed"].get<bool>());
    ASSERT_EQ(j["checks"].size(), 6u);
    EXPECT_EQ(j["checks"][4]["name"], "bernoulli_round_trip");
    EXPECT_FALSE(j["checks"][4]["passed"].get<bool>());
    EXPECT_GT(j["checks"][4]["residual"].get<double>(), 1e-9);
}

}  // namespace
}  // namespace phasesynth
