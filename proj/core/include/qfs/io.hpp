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

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "qfs/boolean_fn.hpp"
#include "qfs/learner.hpp"
#include "qfs/qstate.hpp"
#include "qfs/walsh.hpp"

namespace qfs::io {

/// Shortest round-trip decimal form; -0 is written as 0.
std::string format_double(double v);

// Function files.
//   DNF:         {"n": int, "terms": [[{"var": int, "neg": bool}, ...], ...]}
//   Truth table: {"n": int, "outputs": [+-1 x 2^n]} in index order
// Malformed content throws ParseError.
nlohmann::json to_json(const DnfFormula& f);
nlohmann::json to_json(const TruthTable& t);
nlohmann::json to_json(const BipolarFunction& f);
DnfFormula dnf_from_json(const nlohmann::json& j);
TruthTable truth_table_from_json(const nlohmann::json& j);
/// Dispatches on the presence of "terms" or "outputs".
BipolarFunction function_from_json(const nlohmann::json& j);

// Training sets: {"n": int, "examples": [{"x": "0110...", "y": +-1}, ...]}.
// Contradictory labels for one input throw ParseError.
nlohmann::json to_json(const TrainingSet& t);
TrainingSet training_set_from_json(const nlohmann::json& j);

/// "index_bits,coefficient" header then one row per index.
std::string spectrum_csv(const FourierSpectrum& s);
/// {"n": int, "coefficients": [...]} in index order.
nlohmann::json spectrum_json(const FourierSpectrum& s);

/// "index_bits,amplitude" header then one row per basis state.
std::string state_csv(const StateVector& s);

/// {"n", "m", "identified", "estimate", "samples_used", "converged",
///  "histogram_top": [{"index", "count"}, ... up to 16]}
nlohmann::json learner_result_json(const LearnerResult& r);

nlohmann::json read_json_file(const std::filesystem::path& path);
BipolarFunction load_function(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace qfs::io
