// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace nlgames;

namespace {

const auto kXY = question_names(2);
const auto kXYZ = question_names(3);

std::vector<std::uint8_t> v(std::initializer_list<int> bits) {
    std::vector<std::uint8_t> out;
    for (int b : bits) out.push_back(static_cast<std::uint8_t>(b));
    return out;
}

} // namespace

TEST(TruthTable, EvaluateAnd) {
    const auto and2 = parse_expr("x*y", kXY);
    EXPECT_TRUE(evaluate(and2, v({1, 1})));
    EXPECT_FALSE(evaluate(and2, v({0, 1})));
    EXPECT_FALSE(evaluate(TruthTable::constant(3, false), v({1, 0, 1})));
}

TEST(TruthTable, EvaluateRejectsWrongLength) {
    EXPECT_THROW(evaluate(TruthTable::constant(2, true), v({1})), ArityError);
}

TEST(TruthTable, FirstVariableIsMostSignificant) {
    const auto x = TruthTable::projection(3, 0);
    EXPECT_EQ(x.bits(), 0b11110000u);
    EXPECT_TRUE(evaluate(x, v({1, 0, 0})));
    EXPECT_EQ(pack_bits(v({1, 0, 0})), 4u);
}

TEST(TruthTable, RejectsHighBitsAndBadArity) {
    EXPECT_THROW(TruthTable(2, 0x10), std::invalid_argument);
    EXPECT_THROW(TruthTable(5, 0), ArityError);
    EXPECT_THROW(TruthTable(0, 0), ArityError);
    EXPECT_EQ(TruthTable(2, 6), TruthTable(2, 6));
    EXPECT_NE(TruthTable(2, 6), TruthTable(3, 6));
}

TEST(TruthTable, EssentialExamples) {
    EXPECT_TRUE(is_essential(parse_expr("x*y", kXY), 0));
    EXPECT_FALSE(is_essential(TruthTable::projection(2, 0), 1));
    const auto parity = parse_expr("x^y^z", kXYZ);
    for (int i = 0; i < 3; ++i) EXPECT_TRUE(is_essential(parity, i));
    EXPECT_THROW(is_essential(parity, 3), IndexError);
}

TEST(TruthTable, EssentialCounts) {
    EXPECT_EQ(enumerate_essential(1).size(), 2u);
    EXPECT_EQ(enumerate_essential(2).size(), 10u);
    EXPECT_EQ(enumerate_essential(3).size(), 218u);
    EXPECT_THROW(enumerate_essential(5), ArityError);
}

TEST(TruthTable, EssentialCountMatchesInclusionExclusion) {
    // functions missing at least one essential variable, n = 3
    const int missing = 3 * 16 - 3 * 4 + 2;
    EXPECT_EQ(missing, 38);
    EXPECT_EQ(enumerate_essential(3).size(), 256u - missing);
    // and the n = 2 exclusions are exactly the constants and the four literals
    std::set<std::uint32_t> excluded;
    for (std::uint32_t b = 0; b < 16; ++b) excluded.insert(b);
    for (const auto &tt : enumerate_essential(2)) excluded.erase(tt.bits());
    const std::set<std::uint32_t> literals{0b0000, 0b1111, 0b1100, 0b0011, 0b1010, 0b0101};
    EXPECT_EQ(excluded, literals);
}

TEST(TruthTable, EssentialFilterAgreesWithOracle) {
    for (int n = 1; n <= 3; ++n) {
        std::vector<TruthTable> direct;
        for (std::uint32_t b = 0; b < (1u << (1u << n)); ++b) {
            TruthTable tt(n, b);
            bool all = true;
            for (int i = 0; i < n; ++i) all = all && oracle::depends_on(tt, i);
            if (all) direct.push_back(tt);
        }
        EXPECT_EQ(direct, enumerate_essential(n)) << "n=" << n;
    }
}

TEST(TruthTable, EnumerationIsAscending) {
    const auto fns = enumerate_essential(3);
    EXPECT_TRUE(std::is_sorted(fns.begin(), fns.end()));
}

TEST(TruthTable, Negation) {
    const auto xyz = parse_expr("x*y*z", kXYZ);
    EXPECT_EQ(negate(xyz), parse_expr("!(x*y*z)", kXYZ));
    EXPECT_EQ(negate(negate(xyz)), xyz);
    EXPECT_EQ(negate_variable(xyz, 0), parse_expr("!x*y*z", kXYZ));
    EXPECT_EQ(negate_variable(negate_variable(xyz, 0), 0), xyz);
    EXPECT_THROW(negate_variable(xyz, 3), IndexError);
}

TEST(TruthTable, NegationPreservesEssentiality) {
    for (std::uint32_t b = 0; b < 256; ++b) {
        const TruthTable tt(3, b);
        for (int var = 0; var < 3; ++var) {
            EXPECT_EQ(is_essential(negate(tt), var), is_essential(tt, var));
            for (int w = 0; w < 3; ++w) {
                EXPECT_EQ(is_essential(negate_variable(tt, w), var), is_essential(tt, var));
            }
        }
    }
}

TEST(Expr, ParsesFirstTypeQuestionSide) {
    const auto tt = parse_expr("x*y*z + !x*!y*!z", kXYZ);
    EXPECT_EQ(tt.bits(), (1u << 0) | (1u << 7));
}

TEST(Expr, ParsesParity) {
    const auto tt = parse_expr("a^b^c", answer_names(3));
    EXPECT_EQ(tt, TruthTable::from_predicate(3, [](std::uint32_t k) { return std::popcount(k) % 2 == 1; }));
}

TEST(Expr, PrecedenceNotAndXorOr) {
    // x + y ^ z * w  ==  x + (y ^ (z * w))
    const auto names = question_names(4);
    const auto tt = parse_expr("x + y ^ z * w", names);
    const auto expected = TruthTable::from_predicate(4, [](std::uint32_t k) {
        const bool x = k & 8, y = k & 4, z = k & 2, w = k & 1;
        return x || (y != (z && w));
    });
    EXPECT_EQ(tt, expected);
    EXPECT_EQ(parse_expr("!x*y", kXY), TruthTable::from_predicate(2, [](std::uint32_t k) { return k == 1; }));
    EXPECT_EQ(parse_expr("x*y + (x^y)*z", kXYZ), parse_expr("x*y + z*(x ^ y)", kXYZ));
}

TEST(Expr, Errors) {
    try {
        parse_expr("x * * y", kXY);
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.position(), 4u);
    }
    EXPECT_THROW(parse_expr("x*q", kXY), UnknownVariableError);
    EXPECT_THROW(parse_expr("(x", kXY), ParseError);
    EXPECT_THROW(parse_expr("", kXY), ParseError);
    EXPECT_THROW(parse_expr("x y", kXY), ParseError);
}

TEST(Expr, FormatIsCanonicalSumOfProducts) {
    EXPECT_EQ(format_expr(parse_expr("x*y", kXY), kXY), "x*y");
    EXPECT_EQ(format_expr(parse_expr("!(x+y)", kXY), kXY), "!x*!y");
    EXPECT_EQ(format_expr(TruthTable::constant(2, true), kXY), "x + !x");
    EXPECT_EQ(format_expr(TruthTable::constant(2, false), kXY), "x*!x");
}

TEST(Expr, RoundTripAllArity3Essential) {
    for (const auto &tt : enumerate_essential(3)) {
        EXPECT_EQ(parse_expr(format_expr(tt, kXYZ), kXYZ), tt) << format_expr(tt, kXYZ);
    }
}

TEST(Expr, RoundTripAllTablesUpToArity3) {
    for (int n = 1; n <= 3; ++n) {
        const auto names = question_names(n);
        for (std::uint32_t b = 0; b < (1u << (1u << n)); ++b) {
            const TruthTable tt(n, b);
            EXPECT_EQ(parse_expr(format_expr(tt, names), names), tt);
        }
    }
}

TEST(Expr, RoundTripRandomArity4) {
    std::mt19937 rng(7);
    const auto names = question_names(4);
    for (int i = 0; i < 300; ++i) {
        const TruthTable tt(4, rng() & 0xffffu);
        EXPECT_EQ(parse_expr(format_expr(tt, names), names), tt);
    }
}
