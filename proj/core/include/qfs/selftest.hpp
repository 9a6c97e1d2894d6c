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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qfs::harness {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelftestOptions {
    std::uint64_t seed = 0;
    /// Runs every suite under testing::ScopedFwhtSignFault.
    bool inject_fwht_sign_fault = false;
};

/// Cross-module property suites: bridge (amplitudes vs scaled approximate
/// coefficients), memorization, orthonormality, parseval, born.
std::vector<SuiteResult> run_selftest(const SelftestOptions& options = {});

/// One "PASS name: detail" / "FAIL name: detail" line per suite.
std::string format_report(const std::vector<SuiteResult>& results);

[[nodiscard]] bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace qfs::harness
