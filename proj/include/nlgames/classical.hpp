// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "game.hpp"

namespace nlgames {

/// Exact winning probability: wins / questions, questions = 2^n.
class WinFraction {
  public:
    constexpr WinFraction(std::uint32_t numerator, std::uint32_t denominator)
        : num_(numerator), den_(denominator) {
        if (denominator == 0 || numerator > denominator) {
            throw std::invalid_argument("win fraction must lie in [0, 1]");
        }
    }

    [[nodiscard]] constexpr std::uint32_t numerator() const noexcept { return num_; }
    [[nodiscard]] constexpr std::uint32_t denominator() const noexcept { return den_; }
    [[nodiscard]] constexpr double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// Reduced "p/q" form.
    [[nodiscard]] std::string to_string() const {
        const auto g = std::gcd(num_, den_);
        return std::to_string(num_ / (g == 0 ? 1 : g)) + "/" + std::to_string(den_ / (g == 0 ? 1 : g));
    }

    friend constexpr bool operator==(const WinFraction &a, const WinFraction &b) {
        return static_cast<std::uint64_t>(a.num_) * b.den_ == static_cast<std::uint64_t>(b.num_) * a.den_;
    }
    friend constexpr std::strong_ordering operator<=>(const WinFraction &a, const WinFraction &b) {
        return static_cast<std::uint64_t>(a.num_) * b.den_ <=> static_cast<std::uint64_t>(b.num_) * a.den_;
    }

  private:
    std::uint32_t num_;
    std::uint32_t den_;
};

inline std::ostream &operator<<(std::ostream &os, const WinFraction &f) { return os << f.to_string(); }

/// Each player i fixes answers (h_i(0), h_i(1)); stored as bit 2i + q of `code`.
class DeterministicStrategy {
  public:
    DeterministicStrategy(int players, std::uint32_t code) : players_(players), code_(code) {
        check_arity(players);
        if (code >= (1u << (2 * players))) {
            throw std::invalid_argument("strategy code out of range");
        }
    }

    /// Builds from per-player answer pairs {h_i(0), h_i(1)}.
    static DeterministicStrategy from_answers(const std::vector<std::array<std::uint8_t, 2>> &answers) {
        const int n = static_cast<int>(answers.size());
        check_arity(n);
        std::uint32_t code = 0;
        for (int i = 0; i < n; ++i) {
            for (int q = 0; q < 2; ++q) {
                if (answers[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)] != 0) {
                    code |= 1u << (2 * i + q);
                }
            }
        }
        return {n, code};
    }

    [[nodiscard]] int players() const noexcept { return players_; }
    [[nodiscard]] std::uint32_t code() const noexcept { return code_; }

    [[nodiscard]] std::uint8_t answer(int player, int question_bit) const {
        if (player < 0 || player >= players_ || question_bit < 0 || question_bit > 1) {
            throw IndexError("player or question bit out of range");
        }
        return static_cast<std::uint8_t>((code_ >> (2 * player + question_bit)) & 1u);
    }

    /// Packed answer vector for a packed question vector.
    [[nodiscard]] std::uint32_t respond(std::uint32_t question) const noexcept {
        std::uint32_t answer = 0;
        for (int i = 0; i < players_; ++i) {
            const std::uint32_t q = (question >> (players_ - 1 - i)) & 1u;
            answer = (answer << 1) | ((code_ >> (2 * i + q)) & 1u);
        }
        return answer;
    }

    friend bool operator==(const DeterministicStrategy &, const DeterministicStrategy &) = default;

  private:
    int players_;
    std::uint32_t code_;
};

inline WinFraction evaluate_classical(const GameSpec &game, const DeterministicStrategy &s) {
    if (s.players() != game.players()) {
        throw ArityError("strategy and game have different player counts");
    }
    const std::uint32_t questions = 1u << game.players();
    std::uint32_t wins = 0;
    for (std::uint32_t x = 0; x < questions; ++x) {
        wins += game.wins(x, s.respond(x)) ? 1u : 0u;
    }
    return {wins, questions};
}

struct ClassicalOptimum {
    WinFraction value;
    std::vector<DeterministicStrategy> witnesses; ///< ascending by code
};

/// Exhaustive search over all 2^(2n) deterministic strategies.
inline ClassicalOptimum best_classical(const GameSpec &game) {
    const int n = game.players();
    ClassicalOptimum best{WinFraction(0, 1u << n), {}};
    for (std::uint32_t code = 0; code < (1u << (2 * n)); ++code) {
        DeterministicStrategy s(n, code);
        const auto v = evaluate_classical(game, s);
        if (v > best.value) {
            best.value = v;
            best.witnesses.clear();
        }
        if (v == best.value) {
            best.witnesses.push_back(s);
        }
    }
    return best;
}

} // namespace nlgames
