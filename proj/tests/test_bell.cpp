// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace nlgames;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

double hermitian_defect(const oracle::Matrix &m) {
    double d = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) d = std::max(d, std::abs(m[i][j] - std::conj(m[j][i])));
    return d;
}

MerminOperator xy_m3() {
    using namespace observables;
    return build_m3({X(), X(), X()}, {Y(), Y(), Y()});
}

} // namespace

TEST(Observable, FromParams) {
    EXPECT_LT(max_abs_diff(observable_from_params({0, 0, 0}).matrix(), gates::Z), 1e-15);
    EXPECT_LT(max_abs_diff(observable_from_params({pi / 2, 0, pi}).matrix(), gates::X), 1e-15);
    EXPECT_LT(max_abs_diff(observable_from_params({pi / 4, 0, pi}).matrix(), observables::z_plus_x().matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(observable_from_params({-pi / 4, 0, pi}).matrix(), observables::z_minus_x().matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(observable_from_params({pi / 2, 0, pi / 2}).matrix(), gates::Y), 1e-15);
}

TEST(Observable, InvolutiveForRandomParams) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-pi, pi);
    for (int i = 0; i < 2000; ++i) {
        const auto o = observable_from_params({u(rng), u(rng), u(rng)});
        EXPECT_LT(max_abs_diff(o.matrix() * o.matrix(), gates::I), 1e-10);
    }
    EXPECT_THROW(Observable(gates::H * gates::Z, "bad"), NumericError);
    EXPECT_THROW(Observable(2.0 * gates::Z, "bad"), NumericError);
}

TEST(Bell, Operator) {
    const auto b = build_bell();
    ASSERT_EQ(b.terms().size(), 4u);
    const std::vector<double> coeffs{1, 1, 1, -1};
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(b.terms()[k].coeff, coeffs[k]);
    EXPECT_NEAR(expectation(b, make_epr()), 2 * sqrt2, 1e-10);
    EXPECT_NEAR(expectation(b, StateVector::basis(2, 0)), sqrt2, 1e-12);
    const auto r = local_realistic_range(b);
    EXPECT_EQ(r.max, 2.0);
    EXPECT_EQ(r.min, -2.0);
}

TEST(Bell, SimpleExpectations) {
    using namespace observables;
    const MerminOperator zz({{Z(), X()}, {Z(), X()}}, {{1.0, {0, 0}}});
    EXPECT_NEAR(expectation(zz, make_epr()), 1.0, 1e-15);
    EXPECT_THROW(expectation(zz, make_ghz(3)), ArityError);
}

TEST(Mermin, GhzPhaseExamples) {
    using namespace observables;
    const auto m3 = xy_m3();
    EXPECT_EQ(m3.to_string(), "+ X⊗X⊗Y + X⊗Y⊗X + Y⊗X⊗X − Y⊗Y⊗Y");
    const auto state = make_ghz_phase();
    EXPECT_NEAR(expectation(m3, state), 4.0, 1e-10);
    // |GHZ_j> is a +1 eigenvector of X⊗X⊗Y
    const auto xxy = apply_local(apply_local(apply_local(state, 0, gates::X), 1, gates::X), 2, gates::Y);
    for (std::size_t k = 0; k < 8; ++k) EXPECT_LT(std::abs(xxy.amplitude(k) - state.amplitude(k)), 1e-15);
    const MerminOperator yyy({{X(), Y()}, {X(), Y()}, {X(), Y()}}, {{1.0, {1, 1, 1}}});
    EXPECT_NEAR(expectation(yyy, state), -1.0, 1e-12);
    EXPECT_EQ(local_realistic_range(m3).max, 2.0);
}

TEST(Mermin, PrimeSwapsSettings) {
    using namespace observables;
    const auto p = build_m3_prime({X(), X(), X()}, {Y(), Y(), Y()});
    EXPECT_EQ(p.to_string(), "+ Y⊗Y⊗X + Y⊗X⊗Y + X⊗Y⊗Y − X⊗X⊗X");
    EXPECT_THROW(xy_m3() + build_m3({Z(), Z(), Z()}, {Y(), Y(), Y()}), std::invalid_argument);
}

TEST(T1, PublishedGhzAngles) {
    const auto t1 = build_t1(reference::ghz_second_type_witness());
    EXPECT_EQ(t1.terms().size(), 8u);
    EXPECT_NEAR(expectation(t1, make_ghz(3)), 4 * sqrt2, 1e-9);
    const auto zero = StateVector::basis(3, 0);
    const auto m = oracle::operator_matrix(t1);
    EXPECT_NEAR(expectation(t1, zero), oracle::expectation(m, zero.amplitudes()).real(), 1e-12);
}

TEST(T1, UpperBoundOverRandomStates) {
    const auto t1 = build_t1(reference::ghz_second_type_witness());
    std::mt19937_64 rng(2);
    double worst = -1e9;
    for (int i = 0; i < 100000; ++i) {
        worst = std::max(worst, expectation(t1, oracle::random_state(rng, 3)));
    }
    EXPECT_LE(worst, 4 * sqrt2 + 1e-6);
}

TEST(T1, ExhaustiveLocalRealisticRange) {
    // Reported for reference; the value is compared against the published bound in the acceptance suite.
    const auto r = local_realistic_range(build_t1(reference::ghz_second_type_witness()));
    EXPECT_EQ(r.max, 4.0);
    EXPECT_EQ(r.min, -4.0);
}

TEST(T2, WAnglesValue) {
    const auto t2 = build_t2(reference::w_witness());
    const double v = expectation(t2, make_w());
    const auto m = oracle::operator_matrix(t2);
    EXPECT_NEAR(v, oracle::expectation(m, make_w().amplitudes()).real(), 1e-12);
    EXPECT_GT(v, 0.0);
}

TEST(Operators, HermitianAndLinear) {
    std::mt19937_64 rng(3);
    const std::vector<MerminOperator> ops{build_bell(), xy_m3(), build_t1(reference::ghz_second_type_witness()),
                                          build_t2(reference::w_witness()), build_t1(oracle::random_angles(rng, 3))};
    for (const auto &op : ops) {
        const auto m = oracle::operator_matrix(op);
        EXPECT_LT(hermitian_defect(m), 1e-10);
        for (int i = 0; i < 20; ++i) {
            const auto s = oracle::random_state(rng, op.qubits());
            const auto ref = oracle::expectation(m, s.amplitudes());
            EXPECT_LT(std::abs(ref.imag()), 1e-10);
            EXPECT_NEAR(expectation(op, s), ref.real(), 1e-12);
        }
    }
    const auto a = oracle::random_angles(rng, 3);
    const auto [s0, s1] = strategy_observables(a);
    const auto m3 = build_m3(s0, s1), mp = build_m3_prime(s0, s1);
    for (int i = 0; i < 20; ++i) {
        const auto s = oracle::random_state(rng, 3);
        EXPECT_NEAR(expectation(m3 + mp, s), expectation(m3, s) + expectation(mp, s), 1e-12);
        EXPECT_NEAR(expectation(m3 - mp, s), expectation(m3, s) - expectation(mp, s), 1e-12);
    }
}

TEST(Correspondence, Chsh) {
    const auto report = game_monomial_consistency(reference::chsh(), make_strategy(make_epr(), reference::chsh_witness()));
    ASSERT_EQ(report.size(), 4u);
    for (const auto &q : report) EXPECT_TRUE(q.holds) << q.question;
    EXPECT_NEAR(report[0].correlator, kInvSqrt2, 1e-10);
}

TEST(Correspondence, GhzGame) {
    const auto report =
        game_monomial_consistency(reference::ghz_game(), make_strategy(make_ghz_phase(), reference::ghz_game_witness()));
    for (const auto &q : report) {
        EXPECT_TRUE(q.holds);
        if (std::popcount(q.question) % 2 == 1) {
            EXPECT_NEAR(q.win_probability, 1.0, 1e-10);
            EXPECT_NEAR(std::abs(q.monomial), 1.0, 1e-10);
        }
    }
}

TEST(Correspondence, RandomAnglesOnGhz) {
    std::mt19937_64 rng(4);
    const GameSpec negated(reference::ghz_first_type_example().question_fn(),
                           negate(reference::ghz_first_type_example().answer_fn()));
    for (const auto &game : {reference::ghz_first_type_example(), reference::ghz_second_type_example(), negated}) {
        for (int i = 0; i < 20; ++i) {
            for (const auto &q : game_monomial_consistency(game, make_strategy(make_ghz(3), oracle::random_angles(rng, 3)))) {
                EXPECT_TRUE(q.holds);
            }
        }
    }
    EXPECT_THROW(game_monomial_consistency(reference::w_witness_game(), make_strategy(make_w(), reference::w_witness())),
                 std::invalid_argument);
}
