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

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qfs/bits.hpp"
#include "qfs/random.hpp"

namespace qfs {

struct Literal {
    int var = 0;
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

using Term = std::vector<Literal>;

/// Disjunction of conjunctive terms over n binary variables.
///
/// An empty term list is permitted and evaluates to false everywhere.
class DnfFormula {
  public:
    /// Throws InputShapeError if a literal names a variable >= n or a term
    /// repeats a variable.
    DnfFormula(int n, std::vector<Term> terms);

    [[nodiscard]] int arity() const noexcept { return n_; }
    [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }

    /// True iff some term has every literal satisfied by input index x.
    [[nodiscard]] bool satisfied_by(std::uint64_t x) const noexcept {
        for (const auto& t : compiled_) {
            if ((x & t.mask) == t.want) return true;
        }
        return false;
    }

    friend bool operator==(const DnfFormula& a, const DnfFormula& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

  private:
    struct CompiledTerm {
        std::uint64_t mask;
        std::uint64_t want;
    };

    int n_;
    std::vector<Term> terms_;
    std::vector<CompiledTerm> compiled_;
};

/// Explicit table of 2^n bipolar outputs in index order.
class TruthTable {
  public:
    /// Throws InputShapeError unless outputs has 2^n entries, all +1 or -1.
    TruthTable(int n, std::vector<int> outputs);

    [[nodiscard]] int arity() const noexcept { return n_; }
    [[nodiscard]] int at(std::uint64_t x) const noexcept { return outputs_[x]; }
    [[nodiscard]] std::span<const int> outputs() const noexcept { return outputs_; }

  private:
    int n_;
    std::vector<int> outputs_;
};

/// f : {0,1}^n -> {-1,+1}, boolean true mapped to +1 and false to -1.
class BipolarFunction {
  public:
    BipolarFunction(DnfFormula dnf);    // NOLINT(google-explicit-constructor)
    BipolarFunction(TruthTable table);  // NOLINT(google-explicit-constructor)

    /// Parity chi_a as an explicit truth table.
    static BipolarFunction parity(const Bitstring& mask, const ResourceLimits& limits = {});
    static BipolarFunction constant(int n, int value, const ResourceLimits& limits = {});

    [[nodiscard]] int arity() const noexcept;

    /// Throws InputShapeError on arity mismatch.
    [[nodiscard]] int eval(const Bitstring& x) const;

    /// Unchecked evaluation on a raw index in [0, 2^n).
    [[nodiscard]] int eval_index(std::uint64_t x) const noexcept {
        if (const auto* d = std::get_if<DnfFormula>(&backing_)) return d->satisfied_by(x) ? 1 : -1;
        return std::get<TruthTable>(backing_).at(x);
    }

    [[nodiscard]] const DnfFormula* dnf() const noexcept { return std::get_if<DnfFormula>(&backing_); }
    [[nodiscard]] const TruthTable* table() const noexcept { return std::get_if<TruthTable>(&backing_); }

    /// Full table of outputs; subject to the memory cap.
    [[nodiscard]] TruthTable truth_table(const ResourceLimits& limits = {}) const;

  private:
    std::variant<DnfFormula, TruthTable> backing_;
};

/// s terms of k distinct uniformly chosen variables with uniform polarities.
/// Throws ParameterError unless 1 <= k <= n and s >= 1.
DnfFormula random_dnf(int n, int terms, int literals_per_term, Rng& rng);

struct Example {
    Bitstring x;
    int y = 0;
};

/// Uniform x over {0,1}^n labelled with f(x).
Example draw_example(const BipolarFunction& f, Rng& rng);

/// Source of uniformly random labelled examples. This is the only access to
/// a target function that the learner accepts; it deliberately has no way of
/// evaluating a chosen input.
class ExampleOracle {
  public:
    explicit ExampleOracle(std::shared_ptr<const BipolarFunction> f);
    explicit ExampleOracle(BipolarFunction f);

    [[nodiscard]] int arity() const noexcept { return f_->arity(); }
    Example draw(Rng& rng) const { return draw_example(*f_, rng); }

  private:
    std::shared_ptr<const BipolarFunction> f_;
};

/// Black-box evaluation at chosen inputs. Verification only.
class MembershipOracle {
  public:
    explicit MembershipOracle(std::shared_ptr<const BipolarFunction> f);
    explicit MembershipOracle(BipolarFunction f);

    [[nodiscard]] int arity() const noexcept { return f_->arity(); }
    [[nodiscard]] int query(const Bitstring& x) const { return f_->eval(x); }

  private:
    std::shared_ptr<const BipolarFunction> f_;
};

/// Deduplicated labelled examples: at most one label per input.
class TrainingSet {
  public:
    explicit TrainingSet(int n);

    /// Throws InputShapeError on arity mismatch or empty input, and
    /// PreconditionError on contradictory labels.
    static TrainingSet from_examples(int n, std::span<const Example> examples);

    /// Adds x -> y. Returns false if x was already present with the same
    /// label; throws PreconditionError if present with the other label.
    bool insert(const Bitstring& x, int y);

    [[nodiscard]] int arity() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::optional<int> label(const Bitstring& x) const;

    /// Entries keyed by input index, ascending.
    [[nodiscard]] const std::map<std::uint64_t, int>& entries() const noexcept { return entries_; }

  private:
    int n_;
    std::map<std::uint64_t, int> entries_;
};

/// Draws `target` examples with replacement and deduplicates them, so the
/// resulting m is the number of distinct inputs seen. Throws ParameterError
/// when target is 0.
TrainingSet build_training_set(const ExampleOracle& oracle, std::uint64_t target, Rng& rng);

struct CompleteTrainingSet {
    TrainingSet set;
    std::uint64_t draws = 0;
};

/// Draws from the oracle until every one of the 2^n inputs has been seen.
CompleteTrainingSet build_complete_training_set(const ExampleOracle& oracle, Rng& rng,
                                                const ResourceLimits& limits = {});

}  // namespace qfs
