// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expr.hpp"
#include "truth_table.hpp"

namespace nlgames {

/// An n-player binary game: the players win on questions x and answers a
/// iff question_fn(x) == answer_fn(a).
class GameSpec {
  public:
    GameSpec(TruthTable question_fn, TruthTable answer_fn)
        : question_fn_(question_fn), answer_fn_(answer_fn) {
        if (question_fn.arity() != answer_fn.arity()) {
            throw ArityError("question and answer functions have different arities");
        }
    }

    /// Like the constructor but also requires every variable on both sides to be essential.
    static GameSpec searchable(TruthTable question_fn, TruthTable answer_fn) {
        GameSpec game(question_fn, answer_fn);
        if (!game.is_search_eligible()) {
            throw std::invalid_argument("game has a non-essential variable");
        }
        return game;
    }

    [[nodiscard]] int players() const noexcept { return question_fn_.arity(); }
    [[nodiscard]] const TruthTable &question_fn() const noexcept { return question_fn_; }
    [[nodiscard]] const TruthTable &answer_fn() const noexcept { return answer_fn_; }
    [[nodiscard]] bool is_search_eligible() const {
        return all_essential(question_fn_) && all_essential(answer_fn_);
    }

    /// Win test on packed question and answer indices.
    [[nodiscard]] bool wins(std::uint32_t question, std::uint32_t answer) const noexcept {
        return question_fn_.at(question) == answer_fn_.at(answer);
    }

    friend bool operator==(const GameSpec &, const GameSpec &) = default;
    friend auto operator<=>(const GameSpec &, const GameSpec &) = default;

  private:
    TruthTable question_fn_;
    TruthTable answer_fn_;
};

inline bool win(const GameSpec &game, std::span<const std::uint8_t> questions,
                std::span<const std::uint8_t> answers) {
    return evaluate(game.question_fn(), questions) == evaluate(game.answer_fn(), answers);
}

/// All ordered pairs of essential functions, ascending by (f.bits, g.bits).
inline std::vector<GameSpec> enumerate_games(int n) {
    if (n < 2 || n > kMaxArity) {
        throw ArityError("game enumeration supports 2 to 4 players");
    }
    const auto fns = enumerate_essential(n);
    std::vector<GameSpec> games;
    games.reserve(fns.size() * fns.size());
    for (const auto &f : fns) {
        for (const auto &g : fns) {
            games.emplace_back(f, g);
        }
    }
    return games;
}

/// {(f,g), (!f,g), (f,!g), (!f,!g)}, sorted.
inline std::vector<GameSpec> negation_orbit(const GameSpec &game) {
    const auto &f = game.question_fn();
    const auto &g = game.answer_fn();
    std::vector<GameSpec> orbit{{f, g}, {negate(f), g}, {f, negate(g)}, {negate(f), negate(g)}};
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
}

/// Compact storage form.
struct GameTriple {
    int n;
    std::uint32_t f_bits;
    std::uint32_t g_bits;

    friend bool operator==(const GameTriple &, const GameTriple &) = default;
};

inline GameTriple to_triple(const GameSpec &game) {
    return {game.players(), game.question_fn().bits(), game.answer_fn().bits()};
}

inline GameSpec from_triple(const GameTriple &t) {
    return {TruthTable(t.n, t.f_bits), TruthTable(t.n, t.g_bits)};
}

inline std::string format_question_side(const GameSpec &game) {
    return format_expr(game.question_fn(), question_names(game.players()));
}

inline std::string format_answer_side(const GameSpec &game) {
    return format_expr(game.answer_fn(), answer_names(game.players()));
}

/// "f = g" with the question side over x,y,z,w and the answer side over a,b,c,d.
inline std::string format_game(const GameSpec &game) {
    return format_question_side(game) + " = " + format_answer_side(game);
}

inline GameSpec parse_game(std::string_view f_text, std::string_view g_text, int n) {
    return {parse_expr(f_text, question_names(n)), parse_expr(g_text, answer_names(n))};
}

/// Parses "f = g". When `n` is 0 the arity is the highest variable letter used on either side.
inline GameSpec parse_game(std::string_view equation, int n = 0) {
    const auto eq = equation.find('=');
    if (eq == std::string_view::npos || equation.find('=', eq + 1) != std::string_view::npos) {
        throw ParseError("expected exactly one '=' in game equation", eq == std::string_view::npos ? 0 : eq);
    }
    const auto lhs = equation.substr(0, eq);
    const auto rhs = equation.substr(eq + 1);
    if (n == 0) {
        auto highest = [](std::string_view side, std::string_view letters) {
            int top = 0;
            for (std::size_t i = 0; i < side.size(); ++i) {
                const bool boundary_before = i == 0 || !std::isalnum(static_cast<unsigned char>(side[i - 1]));
                const bool boundary_after =
                    i + 1 == side.size() || !std::isalnum(static_cast<unsigned char>(side[i + 1]));
                const auto p = letters.find(side[i]);
                if (boundary_before && boundary_after && p != std::string_view::npos) {
                    top = std::max(top, static_cast<int>(p) + 1);
                }
            }
            return top;
        };
        n = std::max(highest(lhs, "xyzw"), highest(rhs, "abcd"));
        if (n == 0) {
            throw ParseError("game equation names no variables", 0);
        }
    }
    return parse_game(lhs, rhs, n);
}

} // namespace nlgames
