// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace nlgames;
using std::numbers::pi;

TEST(AngleVector, Invariants) {
    EXPECT_THROW(AngleVector(std::vector<double>(5)), ArityError);
    EXPECT_THROW(AngleVector(std::vector<double>{}), ArityError);
    EXPECT_THROW(AngleVector(std::vector<double>{0, 0, 0, 0, 0, NAN}), NumericError);
    const auto a = reference::chsh_witness();
    EXPECT_EQ(a.players(), 2);
    EXPECT_EQ(a.params(1, 0), (UnitaryParams{pi / 4, 0, pi}));
    EXPECT_THROW((void)a.params(2, 0), IndexError);
}

TEST(OptimizeConfig, Validation) {
    OptimizeConfig c;
    EXPECT_NO_THROW(c.validate());
    c.restarts = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.tolerance = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.max_evals = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Objective, Examples) {
    const double chsh = objective(reference::chsh(), make_epr(), reference::chsh_witness());
    EXPECT_NEAR(chsh, 1 - std::pow(std::cos(pi / 8), 2), 1e-12);
    EXPECT_NEAR(objective(reference::ghz_first_type_example(), make_ghz(3), AngleVector::zeros(3)), 0.5, 1e-15);

    std::mt19937_64 rng(1);
    const auto a = oracle::random_angles(rng, 3);
    auto shifted = a.values();
    for (std::size_t k = 0; k < shifted.size(); k += 3) shifted[k] += 2 * pi;
    EXPECT_NEAR(objective(reference::w_witness_game(), make_w(), AngleVector(shifted)),
                objective(reference::w_witness_game(), make_w(), a), 1e-12);
    EXPECT_THROW(objective(reference::chsh(), make_w(), a), ArityError);
}

TEST(Optimize, ChshReachesQuantumValue) {
    OptimizeConfig c;
    c.restarts = 20;
    const auto r = optimize_strategy(reference::chsh(), make_epr(), c);
    EXPECT_NEAR(r.best_value, reference::kChshQuantum, 1e-4);
    EXPECT_NEAR(1 - objective(reference::chsh(), make_epr(), r.best_angles), r.best_value, 1e-15);
}

TEST(Optimize, TableRows) {
    const auto game = parse_game("(x^y)*z + x*y", "(a^b)*!c + a*c", 3);
    EXPECT_NEAR(optimize_strategy(game, make_w(), {}).best_value, 0.78726, 2e-3);
    EXPECT_NEAR(optimize_strategy(game, make_ghz(3), {}).best_value, 0.75, 2e-3);
    const auto first = parse_game("y*z + x*!z", "!a*b*c + a*!b*c + a*b*!c", 3);
    EXPECT_NEAR(optimize_strategy(first, make_ghz(3), {}).best_value, 0.69887, 2e-3);
}

TEST(Optimize, PublishedWAnglesMeetPrintedValue) {
    EXPECT_GE(win_probability(reference::w_witness_game(), make_strategy(make_w(), reference::w_witness())),
              reference::kWWitnessValue - 1e-4);
}

TEST(Optimize, TraceContracts) {
    OptimizeConfig c;
    c.restarts = 12;
    c.witness = reference::ghz_first_type_witness();
    const auto game = reference::ghz_first_type_example();
    const auto r = optimize_strategy(game, make_ghz(3), c);
    ASSERT_EQ(r.trace.size(), 12u);
    EXPECT_EQ(r.trace[0].kind, StartKind::Witness);
    EXPECT_EQ(r.trace[1].kind, StartKind::Structured);
    EXPECT_EQ(r.trace[9].kind, StartKind::Screened);
    EXPECT_EQ(r.trace[10].kind, StartKind::Random);
    for (const auto &t : r.trace) {
        EXPECT_GE(t.final_value, t.start_value);
        EXPECT_GE(r.best_value, t.final_value);
    }
    EXPECT_GE(r.best_value, win_probability(game, make_strategy(make_ghz(3), *c.witness)));
    EXPECT_GE(r.best_value, r.screen_best);
    EXPECT_LE(r.best_value, 1.0);
}

TEST(Optimize, NeverBelowScreeningSamples) {
    OptimizeConfig c;
    c.restarts = 2;
    c.max_evals = 5;
    c.seed = 99;
    const auto game = reference::w_witness_game();
    const auto r = optimize_strategy(game, make_w(), c);
    double best = 0;
    for (const auto &a : screening_samples(c.seed, 3, c.screen_samples)) {
        best = std::max(best, 1 - objective(game, make_w(), a));
    }
    EXPECT_GE(r.best_value, best);
}

TEST(Optimize, Deterministic) {
    OptimizeConfig c;
    c.restarts = 6;
    c.seed = 1234;
    const auto game = reference::w_witness_game();
    const auto a = optimize_strategy(game, make_w(), c);
    const auto b = optimize_strategy(game, make_w(), c);
    EXPECT_EQ(a.best_value, b.best_value);
    EXPECT_EQ(a.best_angles, b.best_angles);
    c.threads = 3;
    const auto t = optimize_strategy(game, make_w(), c);
    EXPECT_EQ(a.best_value, t.best_value);
    EXPECT_EQ(a.best_angles, t.best_angles);
}

TEST(Optimize, LocalMethodsAllImprove) {
    for (auto m : {LocalMethod::NelderMead, LocalMethod::Bfgs, LocalMethod::NelderMeadThenBfgs}) {
        OptimizeConfig c;
        c.restarts = 10;
        c.method = m;
        EXPECT_GT(optimize_strategy(reference::chsh(), make_epr(), c).best_value, 0.85);
    }
}

TEST(Gradient, StationaryAtOptimizerOutput) {
    for (const auto &[game, res] : {std::pair{reference::chsh(), make_epr()},
                                    std::pair{reference::w_witness_game(), make_w()},
                                    std::pair{reference::ghz_second_type_example(), make_ghz(3)}}) {
        const auto r = optimize_strategy(game, res, {});
        const auto g = finite_diff_gradient(game, res, r.best_angles, 1e-5);
        double mx = 0;
        for (double x : g) mx = std::max(mx, std::abs(x));
        EXPECT_LT(mx, 1e-3) << format_game(game);
    }
}

TEST(Gradient, UnusedPhaseIsFlat) {
    // theta = 0 leaves |0> alone, so phi only multiplies a zero amplitude
    std::mt19937_64 rng(2);
    auto a = oracle::random_angles(rng, 3).values();
    a[0] = 0.0;
    const auto g = finite_diff_gradient(reference::ghz_first_type_example(), StateVector::basis(3, 0), AngleVector(a), 1e-5);
    EXPECT_NEAR(g[1], 0.0, 1e-8);
    EXPECT_THROW(finite_diff_gradient(reference::chsh(), make_epr(), reference::chsh_witness(), 0.0), std::invalid_argument);
}

TEST(Gradient, MatchesSymmetries) {
    // The first-type game and GHZ are invariant under player permutation, and
    // GHZ is real, so conjugating every unitary (phi, lambda -> -phi, -lambda)
    // leaves the objective unchanged.
    std::mt19937_64 rng(3);
    const auto game = reference::ghz_first_type_example();
    const auto ghz = make_ghz(3);
    const auto a = oracle::random_angles(rng, 3);
    const auto g = finite_diff_gradient(game, ghz, a, 1e-5);

    std::vector<double> swapped(18);
    for (int k = 0; k < 6; ++k) {
        swapped[k] = a[6 + k];
        swapped[6 + k] = a[k];
        swapped[12 + k] = a[12 + k];
    }
    const auto gs = finite_diff_gradient(game, ghz, AngleVector(swapped), 1e-5);
    for (int k = 0; k < 6; ++k) {
        EXPECT_NEAR(gs[k], g[6 + k], 1e-6);
        EXPECT_NEAR(gs[12 + k], g[12 + k], 1e-6);
    }

    auto conj = a.values();
    for (std::size_t k = 0; k < conj.size(); ++k) {
        if (k % 3 != 0) conj[k] = -conj[k];
    }
    const auto gc = finite_diff_gradient(game, ghz, AngleVector(conj), 1e-5);
    for (std::size_t k = 0; k < conj.size(); ++k) {
        EXPECT_NEAR(gc[k], k % 3 == 0 ? g[k] : -g[k], 1e-6);
    }
}
