// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Per-question win rates as CSV: "question,win_rate", one row per question
// bit-string, then an "average" row. Exact probabilities.

#include <cstdint>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "classical.hpp"
#include "game.hpp"
#include "quantum.hpp"

namespace nlgames {

struct Histogram {
    int players = 0;
    std::vector<double> rates; ///< indexed by question

    [[nodiscard]] double average() const {
        return rates.empty() ? 0.0 : std::accumulate(rates.begin(), rates.end(), 0.0) / static_cast<double>(rates.size());
    }
};

inline Histogram classical_histogram(const GameSpec &game, const DeterministicStrategy &s) {
    if (s.players() != game.players()) {
        throw ArityError("strategy and game disagree on the player count");
    }
    Histogram h{game.players(), {}};
    for (std::uint32_t x = 0; x < game.question_fn().rows(); ++x) {
        h.rates.push_back(game.wins(x, s.respond(x)) ? 1.0 : 0.0);
    }
    return h;
}

inline Histogram quantum_histogram(const GameSpec &game, const QuantumStrategy &strat) {
    return {game.players(), question_win_probabilities(game, strat)};
}

inline void write_histogram_csv(std::ostream &os, const Histogram &h) {
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12f", v);
        return std::string(buf);
    };
    os << "question,win_rate\n";
    for (std::uint32_t x = 0; x < h.rates.size(); ++x) {
        os << bit_string(x, h.players) << ',' << num(h.rates[x]) << '\n';
    }
    os << "average," << num(h.average()) << '\n';
}

} // namespace nlgames
