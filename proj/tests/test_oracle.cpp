/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "doctest.h"

#include "oracle_common.hpp"

using namespace tcsynth;
using namespace tcsynth::testing;

TEST_CASE("engine verdicts match the brute-force oracle on random environments") {
    // The acceptance suite runs the full 500; a slice keeps unit runs fast.
    OracleReport report = run_oracle_comparison(120, /*seed=*/1234);
    CHECK(report.mismatches.empty());
    for (const std::string& m : report.mismatches)
        MESSAGE(m);
    CHECK(report.goals_checked > 500);
    CHECK(report.successes > 50);     // both outcomes must actually occur
    CHECK(report.failures > 50);
}

TEST_CASE("tabled mode agrees with the oracle as well") {
    OracleReport report = run_oracle_comparison(60, /*seed=*/99, /*tabled=*/true);
    CHECK(report.mismatches.empty());
    for (const std::string& m : report.mismatches)
        MESSAGE(m);
}
