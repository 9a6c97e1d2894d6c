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

#include "qfs/boolean_fn.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "qfs/error.hpp"

namespace qfs {
namespace {

void require_label(int y) {
    if (y != 1 && y != -1) throw InputShapeError("label must be +1 or -1, got " + std::to_string(y));
}

void require_arity(int n) {
    if (n < 0 || n > kMaxBitstringWidth) throw InputShapeError("arity out of range: " + std::to_string(n));
}

}  // namespace

DnfFormula::DnfFormula(int n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {
    require_arity(n);
    compiled_.reserve(terms_.size());
    for (const auto& term : terms_) {
        CompiledTerm c{0, 0};
        for (const auto& lit : term) {
            if (lit.var < 0 || lit.var >= n) {
                throw InputShapeError("literal variable " + std::to_string(lit.var) +
                                      " outside [0, " + std::to_string(n) + ")");
            }
            const std::uint64_t bit = std::uint64_t{1} << (n - 1 - lit.var);
            if (c.mask & bit) {
                throw InputShapeError("term repeats variable " + std::to_string(lit.var));
            }
            c.mask |= bit;
            if (!lit.negated) c.want |= bit;
        }
        compiled_.push_back(c);
    }
}

TruthTable::TruthTable(int n, std::vector<int> outputs) : n_(n), outputs_(std::move(outputs)) {
    require_arity(n);
    if (outputs_.size() != dimension(n)) {
        throw InputShapeError("truth table for n = " + std::to_string(n) + " needs " +
                              std::to_string(dimension(n)) + " outputs, got " +
                              std::to_string(outputs_.size()));
    }
    for (int y : outputs_) require_label(y);
}

BipolarFunction::BipolarFunction(DnfFormula dnf) : backing_(std::move(dnf)) {}
BipolarFunction::BipolarFunction(TruthTable table) : backing_(std::move(table)) {}

BipolarFunction BipolarFunction::parity(const Bitstring& mask, const ResourceLimits& limits) {
    const int n = mask.width();
    limits.check(n, "parity table");
    std::vector<int> out(dimension(n));
    for (std::uint64_t x = 0; x < out.size(); ++x) {
        out[x] = (std::popcount(mask.value() & x) & 1) ? -1 : 1;
    }
    return TruthTable(n, std::move(out));
}

BipolarFunction BipolarFunction::constant(int n, int value, const ResourceLimits& limits) {
    require_label(value);
    limits.check(n, "constant table");
    return TruthTable(n, std::vector<int>(dimension(n), value));
}

int BipolarFunction::arity() const noexcept {
    return std::visit([](const auto& b) { return b.arity(); }, backing_);
}

int BipolarFunction::eval(const Bitstring& x) const {
    require_width(x, arity(), "eval");
    return eval_index(x.value());
}

TruthTable BipolarFunction::truth_table(const ResourceLimits& limits) const {
    if (const auto* t = table()) return *t;
    const int n = arity();
    limits.check(n, "truth table");
    std::vector<int> out(dimension(n));
    for (std::uint64_t x = 0; x < out.size(); ++x) out[x] = eval_index(x);
    return TruthTable(n, std::move(out));
}

DnfFormula random_dnf(int n, int terms, int literals_per_term, Rng& rng) {
    if (n < 1 || n > kMaxBitstringWidth) throw ParameterError("random_dnf: n out of range");
    if (terms < 1) throw ParameterError("random_dnf: need at least one term");
    if (literals_per_term < 1 || literals_per_term > n) {
        throw ParameterError("random_dnf: literals per term must lie in [1, n]");
    }
    std::vector<int> vars(static_cast<std::size_t>(n));
    std::vector<Term> out;
    out.reserve(static_cast<std::size_t>(terms));
    for (int t = 0; t < terms; ++t) {
        std::iota(vars.begin(), vars.end(), 0);
        Term term;
        for (int j = 0; j < literals_per_term; ++j) {
            // Partial Fisher-Yates: vars[j..n) are the unchosen variables.
            const auto pick = j + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - j)));
            std::swap(vars[static_cast<std::size_t>(j)], vars[static_cast<std::size_t>(pick)]);
            term.push_back({vars[static_cast<std::size_t>(j)], coin(rng)});
        }
        out.push_back(std::move(term));
    }
    return DnfFormula(n, std::move(out));
}

Example draw_example(const BipolarFunction& f, Rng& rng) {
    const int n = f.arity();
    const std::uint64_t x = n == 0 ? 0 : uniform_below(rng, dimension(n));
    return {Bitstring(x, n), f.eval_index(x)};
}

ExampleOracle::ExampleOracle(std::shared_ptr<const BipolarFunction> f) : f_(std::move(f)) {
    if (!f_) throw PreconditionError("example oracle needs a function");
}
ExampleOracle::ExampleOracle(BipolarFunction f)
    : ExampleOracle(std::make_shared<const BipolarFunction>(std::move(f))) {}

MembershipOracle::MembershipOracle(std::shared_ptr<const BipolarFunction> f) : f_(std::move(f)) {
    if (!f_) throw PreconditionError("membership oracle needs a function");
}
MembershipOracle::MembershipOracle(BipolarFunction f)
    : MembershipOracle(std::make_shared<const BipolarFunction>(std::move(f))) {}

TrainingSet::TrainingSet(int n) : n_(n) { require_arity(n); }

TrainingSet TrainingSet::from_examples(int n, std::span<const Example> examples) {
    if (examples.empty()) throw InputShapeError("training set needs at least one example");
    TrainingSet t(n);
    for (const auto& e : examples) t.insert(e.x, e.y);
    return t;
}

bool TrainingSet::insert(const Bitstring& x, int y) {
    require_width(x, n_, "training example");
    require_label(y);
    auto [it, inserted] = entries_.try_emplace(x.value(), y);
    if (!inserted && it->second != y) {
        throw PreconditionError("contradictory labels for input " + x.to_string());
    }
    return inserted;
}

std::optional<int> TrainingSet::label(const Bitstring& x) const {
    require_width(x, n_, "training lookup");
    if (auto it = entries_.find(x.value()); it != entries_.end()) return it->second;
    return std::nullopt;
}

TrainingSet build_training_set(const ExampleOracle& oracle, std::uint64_t target, Rng& rng) {
    if (target == 0) throw ParameterError("training set target must be >= 1");
    TrainingSet t(oracle.arity());
    for (std::uint64_t i = 0; i < target; ++i) {
        const auto e = oracle.draw(rng);
        t.insert(e.x, e.y);
    }
    return t;
}

CompleteTrainingSet build_complete_training_set(const ExampleOracle& oracle, Rng& rng,
                                                const ResourceLimits& limits) {
    const int n = oracle.arity();
    limits.check(n, "complete training set");
    std::vector<int> seen(dimension(n), 0);
    std::uint64_t missing = seen.size();
    std::uint64_t draws = 0;
    while (missing > 0) {
        const auto e = oracle.draw(rng);
        ++draws;
        int& slot = seen[e.x.value()];
        if (slot == 0) {
            slot = e.y;
            --missing;
        }
    }
    CompleteTrainingSet out{TrainingSet(n), draws};
    for (std::uint64_t x = 0; x < seen.size(); ++x) out.set.insert(Bitstring(x, n), seen[x]);
    return out;
}

}  // namespace qfs
