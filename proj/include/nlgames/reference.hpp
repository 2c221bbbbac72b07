// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Published games, witness strategies and reported values used by the
// verification suites. Equations are written in the expression grammar.

#include <numbers>
#include <string>
#include <vector>

#include "game.hpp"
#include "optimize.hpp"

namespace nlgames::reference {

inline constexpr double kPi = std::numbers::pi;

/// cos^2(pi/8) = (2 + sqrt 2) / 4
inline constexpr double kChshQuantum = (2.0 + std::numbers::sqrt2) / 4.0;

struct Equation {
    const char *question_side;
    const char *answer_side;
};

inline GameSpec game(const Equation &e, int n) { return parse_game(e.question_side, e.answer_side, n); }

inline GameSpec chsh() { return parse_game("x*y", "a^b", 2); }

/// The sixteen two-player equations reaching cos^2(pi/8) against a classical 3/4.
inline std::vector<Equation> two_player_max_gap() {
    return {
        {"x*y", "a^b"},   {"x*y", "!a^b"},   {"x*!y", "a^b"},   {"x*!y", "!a^b"},
        {"!x*y", "a^b"},  {"!x*y", "!a^b"},  {"!x*!y", "a^b"},  {"!x*!y", "!a^b"},
        {"x+y", "a^b"},   {"x+y", "!a^b"},   {"x+!y", "a^b"},   {"x+!y", "!a^b"},
        {"!x+y", "a^b"},  {"!x+y", "!a^b"},  {"!x+!y", "a^b"},  {"!x+!y", "!a^b"},
    };
}

/// First-type question side: a monomial OR-ed with its complement monomial.
inline GameSpec ghz_first_type_example() { return parse_game("x*y*z + !x*!y*!z", "a^b^c", 3); }

/// The sixteen first-type games: 4 monomial pairs, either polarity on each side.
inline std::vector<GameSpec> ghz_first_type_games() {
    const TruthTable parity = parse_expr("a^b^c", answer_names(3));
    std::vector<GameSpec> out;
    for (std::uint32_t m = 0; m < 4; ++m) {
        const TruthTable f(3, (1u << m) | (1u << (7 - m)));
        for (const auto &lhs : {f, negate(f)}) {
            for (const auto &rhs : {parity, negate(parity)}) {
                out.emplace_back(lhs, rhs);
            }
        }
    }
    return out;
}

inline GameSpec ghz_second_type_example() { return parse_game("x*y + (x^y)*z", "a^b^c", 3); }

/// Seeds of the second type; negating either side generates all 64.
inline std::vector<Equation> ghz_second_type_seeds() {
    return {
        {"x*y + (x^y)*z", "a^b^c"},   {"x*y + (x^y)*!z", "a^b^c"},
        {"x*!y + (x^z)*y", "a^b^c"},  {"x*!y + (!x^z)*y", "a^b^c"},
        {"!x*y + (y^z)*x", "a^b^c"},  {"!x*y + (!y^z)*x", "a^b^c"},
        {"x*y + (x^z)*!y", "a^b^c"},  {"x*!y + (!x^y)*z", "a^b^c"},
        {"!x*z + (y^z)*x", "a^b^c"},  {"!x*z + (!y^z)*x", "a^b^c"},
        {"x*y + (y^z)*!x", "a^b^c"},  {"x*z + (y^z)*!x", "a^b^c"},
        {"x*!z + (y^z)*!x", "a^b^c"}, {"x*!y + (y^z)*!x", "a^b^c"},
        {"!x*y + (!x^y)*z", "a^b^c"}, {"!x*y + (x^z)*!y", "a^b^c"},
    };
}

inline std::vector<GameSpec> ghz_second_type_games() {
    std::vector<GameSpec> out;
    for (const auto &e : ghz_second_type_seeds()) {
        for (const auto &g : negation_orbit(game(e, 3))) {
            out.push_back(g);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Every player uses the same pair (pi/2, 0, l0) / (pi/2, 0, l1).
inline AngleVector symmetric_angles(int players, double lambda0, double lambda1) {
    std::vector<double> v;
    for (int i = 0; i < players; ++i) {
        v.insert(v.end(), {kPi / 2, 0.0, lambda0, kPi / 2, 0.0, lambda1});
    }
    return AngleVector(std::move(v));
}

inline AngleVector ghz_first_type_witness() { return symmetric_angles(3, kPi / 12, 7 * kPi / 12); }
inline AngleVector ghz_second_type_witness() { return symmetric_angles(3, -kPi / 4, -3 * kPi / 4); }

/// Alice measures Z / X, Bob (Z+X)/√2 / (Z−X)/√2, each as U with U†ZU equal to that observable.
inline AngleVector chsh_witness() {
    return AngleVector({0.0, 0.0, 0.0, kPi / 2, 0.0, kPi, kPi / 4, 0.0, kPi, -kPi / 4, 0.0, kPi});
}

/// X basis on question 0 and Y basis on question 1 for every player.
inline AngleVector ghz_game_witness() { return symmetric_angles(3, kPi, kPi / 2); }

/// Mermin's GHZ game relation (played on odd-parity questions only).
inline GameSpec ghz_game() { return parse_game("x*y*z", "a^b^c", 3); }

/// The W-advantage game and its published strategy.
inline GameSpec w_witness_game() {
    return parse_game("x*y*z + !x*!y*!z", "!a*!b*c + !a*b*c + a*!b*!c + a*b*c", 3);
}

inline AngleVector w_witness() {
    const double t1 = 2.3177324, t2 = 0.8238602, t3 = 0.79655904;
    const double l = (kPi - 2.0) / 6.0;
    return AngleVector({t1, 0.0, (-5.0 * kPi - 2.0) / 6.0, t1, 0.0, l,
                        t2, 0.0, l, -t2, 0.0, l,
                        t3, 0.0, l, -t3, 0.0, l});
}

inline constexpr double kWWitnessValue = 0.78726;
inline constexpr double kT2OnW = 3.7922;

struct ResourceComparisonRow {
    Equation equation;
    double w_value;
    double ghz_value;
};

/// Games where the W resource beats the classical 3/4, with the reported W and GHZ optima.
inline std::vector<ResourceComparisonRow> w_vs_ghz_rows() {
    return {
        {{"y*z + x*!z", "!a*b*c + a*!b*c + a*b*!c"}, 0.75442, 0.69887},
        {{"(x^y)*z + x*y", "!a^b^c"}, 0.77216, 0.85355},
        {{"x*(y^z)", "(a^b)*c"}, 0.77523, 0.80177},
        {{"!x*y*z + x*!y*!z", "!a*!b*!c + !a*b*c + a*!b*c + a*b*!c + a*b*c"}, 0.77674, 0.70266},
        {{"(x^y)*z + x*y", "(a^b)*!c + a*c"}, 0.78726, 0.75},
        {{"!x*y*z + x*!y*!z", "a*(b^c)"}, 0.79219, 0.80177},
        {{"!x*y*z + x*!y*!z", "!a*b*c + a*!b*c + a*b*!c"}, 0.79665, 0.82766},
        {{"(x^y)*z + x*!z", "a^b^c"}, 0.80046, 0.85355},
    };
}

} // namespace nlgames::reference
