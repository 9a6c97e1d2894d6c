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

#include "qfs/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qfs/error.hpp"

namespace qfs::io {
namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw ParseError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

int read_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<int>();
}

int read_arity(const json& j) {
    const int n = read_int(field(j, "n"), "\"n\"");
    if (n < 0 || n > kMaxBitstringWidth) throw ParseError("\"n\" out of range");
    return n;
}

int read_label(const json& j) {
    const int y = read_int(j, "label");
    if (y != 1 && y != -1) throw ParseError("labels must be +1 or -1");
    return y;
}

template <class Fn>
auto reraise_as_parse(Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

std::string format_double(double v) {
    if (v == 0.0) return "0";
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

json to_json(const DnfFormula& f) {
    json terms = json::array();
    for (const auto& term : f.terms()) {
        json t = json::array();
        for (const auto& lit : term) t.push_back({{"var", lit.var}, {"neg", lit.negated}});
        terms.push_back(std::move(t));
    }
    return {{"n", f.arity()}, {"terms", std::move(terms)}};
}

json to_json(const TruthTable& t) {
    return {{"n", t.arity()}, {"outputs", json(std::vector<int>(t.outputs().begin(), t.outputs().end()))}};
}

json to_json(const BipolarFunction& f) {
    if (const auto* d = f.dnf()) return to_json(*d);
    return to_json(*f.table());
}

DnfFormula dnf_from_json(const json& j) {
    const int n = read_arity(j);
    const auto& terms = field(j, "terms");
    if (!terms.is_array()) throw ParseError("\"terms\" must be an array");
    std::vector<Term> out;
    for (const auto& t : terms) {
        if (!t.is_array()) throw ParseError("each term must be an array of literals");
        Term term;
        for (const auto& lit : t) {
            const int var = read_int(field(lit, "var"), "\"var\"");
            const auto& neg = field(lit, "neg");
            if (!neg.is_boolean()) throw ParseError("\"neg\" must be a boolean");
            term.push_back({var, neg.get<bool>()});
        }
        out.push_back(std::move(term));
    }
    return reraise_as_parse([&] { return DnfFormula(n, std::move(out)); });
}

TruthTable truth_table_from_json(const json& j) {
    const int n = read_arity(j);
    const auto& outputs = field(j, "outputs");
    if (!outputs.is_array()) throw ParseError("\"outputs\" must be an array");
    std::vector<int> values;
    values.reserve(outputs.size());
    for (const auto& y : outputs) values.push_back(read_label(y));
    return reraise_as_parse([&] { return TruthTable(n, std::move(values)); });
}

BipolarFunction function_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("function file must be a JSON object");
    const bool has_terms = j.contains("terms");
    const bool has_outputs = j.contains("outputs");
    if (has_terms == has_outputs) throw ParseError("function file needs exactly one of \"terms\" or \"outputs\"");
    if (has_terms) return dnf_from_json(j);
    return truth_table_from_json(j);
}

json to_json(const TrainingSet& t) {
    json examples = json::array();
    for (const auto& [x, y] : t.entries()) {
        examples.push_back({{"x", format_bits(x, t.arity())}, {"y", y}});
    }
    return {{"n", t.arity()}, {"examples", std::move(examples)}};
}

TrainingSet training_set_from_json(const json& j) {
    const int n = read_arity(j);
    const auto& examples = field(j, "examples");
    if (!examples.is_array() || examples.empty()) throw ParseError("\"examples\" must be a non-empty array");
    TrainingSet t(n);
    for (const auto& e : examples) {
        const auto& x = field(e, "x");
        if (!x.is_string()) throw ParseError("\"x\" must be a bitstring");
        const int y = read_label(field(e, "y"));
        reraise_as_parse([&] { return t.insert(Bitstring::parse(x.get<std::string>()), y); });
    }
    return t;
}

std::string spectrum_csv(const FourierSpectrum& s) {
    std::string out = "index_bits,coefficient\n";
    for (std::uint64_t a = 0; a < s.size(); ++a) {
        out += format_bits(a, s.arity());
        out += ',';
        out += format_double(s[a]);
        out += '\n';
    }
    return out;
}

json spectrum_json(const FourierSpectrum& s) {
    std::vector<double> c(s.coeffs().begin(), s.coeffs().end());
    for (double& v : c) {
        if (v == 0.0) v = 0.0;
    }
    return {{"n", s.arity()}, {"coefficients", std::move(c)}};
}

std::string state_csv(const StateVector& s) {
    std::string out = "index_bits,amplitude\n";
    const auto amps = s.amplitudes();
    for (std::uint64_t x = 0; x < amps.size(); ++x) {
        out += format_bits(x, s.arity());
        out += ',';
        out += format_double(amps[x]);
        out += '\n';
    }
    return out;
}

json learner_result_json(const LearnerResult& r) {
    json top = json::array();
    for (const auto& [index, count] : r.histogram.top(16)) {
        top.push_back({{"index", format_bits(index, r.n)}, {"count", count}});
    }
    return {
        {"n", r.n},
        {"m", r.m},
        {"identified", r.identified.to_string()},
        {"estimate", r.estimate},
        {"samples_used", r.samples_used},
        {"converged", r.converged},
        {"histogram_top", std::move(top)},
    };
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

BipolarFunction load_function(const std::filesystem::path& path) {
    return function_from_json(read_json_file(path));
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace qfs::io
