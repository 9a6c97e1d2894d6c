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


#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfs/boolean_fn.hpp"
#include "qfs/error.hpp"
#include "qfs/stats.hpp"

namespace qfs {
namespace {

TEST(Eval, WorkedExampleTable) {
    const auto f = oracle::worked_function();
    EXPECT_EQ(f.eval(Bitstring::parse("00")), 1);
    EXPECT_EQ(f.eval(Bitstring::parse("01")), 1);
    EXPECT_EQ(f.eval(Bitstring::parse("10")), -1);
    EXPECT_EQ(f.eval(Bitstring::parse("11")), 1);
}

TEST(Eval, EmptyDnfIsFalse) {
    const BipolarFunction f = DnfFormula(3, {});
    for (std::uint64_t x = 0; x < 8; ++x) EXPECT_EQ(f.eval(Bitstring(x, 3)), -1);
}

TEST(Eval, SingleTerm) {
    const BipolarFunction f = DnfFormula(2, {{{0, false}, {1, true}}});
    EXPECT_EQ(f.eval(Bitstring::parse("10")), 1);
    EXPECT_EQ(f.eval(Bitstring::parse("11")), -1);
    EXPECT_EQ(f.eval(Bitstring::parse("00")), -1);
}

TEST(Eval, ArityMismatch) {
    const auto f = oracle::worked_function();
    EXPECT_THROW((void)f.eval(Bitstring::parse("010")), InputShapeError);
}

TEST(Dnf, RejectsMalformedTerms) {
    EXPECT_THROW(DnfFormula(2, {{{2, false}}}), InputShapeError);
    EXPECT_THROW(DnfFormula(2, {{{0, false}, {0, true}}}), InputShapeError);
}

TEST(TruthTable, RejectsBadOutputs) {
    EXPECT_THROW(TruthTable(2, {1, 1, 1}), InputShapeError);
    EXPECT_THROW(TruthTable(2, {1, 0, 1, 1}), InputShapeError);
}

TEST(Parity, MatchesDefinition) {
    const auto mask = Bitstring::parse("0110");
    const auto f = BipolarFunction::parity(mask);
    for (std::uint64_t x = 0; x < 16; ++x) {
        EXPECT_EQ(f.eval_index(x), oracle::parity_sign(mask.value(), x, 4));
    }
}

TEST(RandomDnf, ShapeForcedByParameters) {
    Rng rng(11);
    const auto f = random_dnf(2, 1, 2, rng);
    ASSERT_EQ(f.terms().size(), 1U);
    EXPECT_EQ(f.terms()[0].size(), 2U);
}

TEST(RandomDnf, Deterministic) {
    Rng a(5);
    Rng b(5);
    EXPECT_EQ(random_dnf(10, 4, 3, a), random_dnf(10, 4, 3, b));
}

TEST(RandomDnf, WidthAboveArityRejected) {
    Rng rng(1);
    EXPECT_THROW(random_dnf(3, 2, 4, rng), ParameterError);
}

TEST(RandomDnf, MostlyNonConstant) {
    int non_constant = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng rng(seed);
        const BipolarFunction f = random_dnf(8, 4, 3, rng);
        std::set<int> seen;
        for (std::uint64_t x = 0; x < 256; ++x) seen.insert(oracle::dnf_eval_reference(*f.dnf(), Bitstring(x, 8)));
        if (seen.size() == 2) ++non_constant;
    }
    EXPECT_GE(non_constant, 990);
}

TEST(RandomDnf, AgreesWithTruthTableExhaustive) {
    Rng rng(99);
    for (int n = 1; n <= 12; ++n) {
        const int k = std::min(n, 3);
        const BipolarFunction f = random_dnf(n, 4, k, rng);
        const BipolarFunction table = f.truth_table();
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const Bitstring bx(x, n);
            const int expected = oracle::dnf_eval_reference(*f.dnf(), bx);
            ASSERT_EQ(f.eval(bx), expected);
            ASSERT_EQ(table.eval(bx), expected);
        }
    }
}

TEST(DrawExample, ConstantLabels) {
    const auto f = BipolarFunction::constant(5, 1);
    Rng rng(2);
    for (int i = 0; i < 200; ++i) EXPECT_EQ(draw_example(f, rng).y, 1);
}

TEST(DrawExample, LabelMatchesMembership) {
    Rng gen(4);
    auto f = std::make_shared<const BipolarFunction>(random_dnf(7, 3, 2, gen));
    const ExampleOracle ex(f);
    const MembershipOracle mq(f);
    Rng rng(8);
    for (int i = 0; i < 500; ++i) {
        const auto e = ex.draw(rng);
        EXPECT_EQ(e.y, mq.query(e.x));
    }
}

TEST(DrawExample, SingleBitFrequency) {
    const auto f = BipolarFunction::constant(1, 1);
    Rng rng(17);
    int ones = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ones += draw_example(f, rng).x.var(0) ? 1 : 0;
    EXPECT_NEAR(static_cast<double>(ones) / draws, 0.5, 0.02);
}

TEST(DrawExample, UniformByChiSquare) {
    for (int n = 1; n <= 6; ++n) {
        const auto f = BipolarFunction::constant(n, 1);
        Rng rng(1000 + n);
        const std::size_t cells = std::size_t{1} << n;
        std::vector<std::uint64_t> counts(cells, 0);
        for (int i = 0; i < 1000000; ++i) ++counts[draw_example(f, rng).x.value()];
        const std::vector<double> probs(cells, 1.0 / static_cast<double>(cells));
        const auto r = stats::chi_square_gof(counts, probs);
        EXPECT_GT(r.p_value, 0.001) << "n=" << n;
    }
}

TEST(TrainingSet, WorkedExampleDirect) {
    const auto t = oracle::worked_training_set();
    EXPECT_EQ(t.size(), 3U);
    EXPECT_EQ(t.label(Bitstring::parse("10")), -1);
    EXPECT_FALSE(t.label(Bitstring::parse("11")).has_value());
}

TEST(TrainingSet, ContradictoryLabelsRejected) {
    TrainingSet t(2);
    EXPECT_TRUE(t.insert(Bitstring::parse("01"), 1));
    EXPECT_FALSE(t.insert(Bitstring::parse("01"), 1));
    EXPECT_THROW(t.insert(Bitstring::parse("01"), -1), PreconditionError);
    const std::vector<Example> bad{{Bitstring::parse("1"), 1}, {Bitstring::parse("1"), -1}};
    EXPECT_THROW(TrainingSet::from_examples(1, bad), PreconditionError);
}

TEST(TrainingSet, RejectsBadInput) {
    TrainingSet t(2);
    EXPECT_THROW(t.insert(Bitstring::parse("011"), 1), InputShapeError);
    EXPECT_THROW(t.insert(Bitstring::parse("01"), 0), InputShapeError);
}

TEST(BuildTrainingSet, PigeonholeAndSingleDraw) {
    const ExampleOracle ex(oracle::worked_function());
    int full = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const auto t = build_training_set(ex, 16, rng);
        EXPECT_LE(t.size(), 4U);
        if (t.size() == 4) ++full;
    }
    EXPECT_GT(full, 150);
    Rng rng(1);
    EXPECT_EQ(build_training_set(ex, 1, rng).size(), 1U);
}

TEST(BuildTrainingSet, DeduplicatesLikeASet) {
    Rng gen(21);
    const BipolarFunction f = random_dnf(6, 3, 2, gen);
    const ExampleOracle ex(f);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng a(seed);
        Rng b(seed);
        const auto t = build_training_set(ex, 50, a);
        std::set<std::uint64_t> seen;
        for (int i = 0; i < 50; ++i) seen.insert(ex.draw(b).x.value());
        EXPECT_EQ(t.size(), seen.size());
        for (const auto& [x, y] : t.entries()) {
            EXPECT_TRUE(seen.count(x));
            EXPECT_EQ(y, f.eval_index(x));
        }
    }
}

TEST(BuildTrainingSet, CompleteSetSeesEveryInput) {
    Rng gen(3);
    const BipolarFunction f = random_dnf(5, 2, 2, gen);
    Rng rng(4);
    const auto c = build_complete_training_set(ExampleOracle(f), rng);
    EXPECT_EQ(c.set.size(), 32U);
    EXPECT_GE(c.draws, 32U);
}

}  // namespace
}  // namespace qfs
