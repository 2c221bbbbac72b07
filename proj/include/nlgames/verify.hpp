// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Reproduction checks against the published tables and operator values.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bell.hpp"
#include "circuit.hpp"
#include "classical.hpp"
#include "game.hpp"
#include "optimize.hpp"
#include "quantum.hpp"
#include "reference.hpp"
#include "search.hpp"

namespace nlgames {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
    bool discrepancy = false; ///< measured value differs from the printed one
};

inline void print_checks(std::ostream &os, const std::vector<Check> &checks) {
    for (const auto &c : checks) {
        const char *tag = c.discrepancy ? (c.passed ? "PASS (DISCREPANCY)" : "DISCREPANCY") : (c.passed ? "PASS" : "FAIL");
        os << tag << "  " << c.name;
        if (!c.detail.empty()) {
            os << "  [" << c.detail << "]";
        }
        os << '\n';
    }
}

inline bool all_passed(const std::vector<Check> &checks) {
    for (const auto &c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

struct VerifyOptions {
    OptimizeConfig optimize; ///< base optimizer settings for checks that search
};

namespace detail {

inline std::string fmt(double v, int digits = 9) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline Check near(std::string name, double value, double expected, double tol) {
    const bool ok = std::abs(value - expected) <= tol;
    char buf[96];
    std::snprintf(buf, sizeof buf, "got %.12g, want %.12g ± %.1g", value, expected, tol);
    return {std::move(name), ok, buf};
}

inline Check count(std::string name, std::size_t value, std::size_t expected) {
    return {std::move(name), value == expected, "got " + std::to_string(value) + ", want " + std::to_string(expected)};
}

inline std::set<GameSpec> as_set(const std::vector<GameSpec> &v) { return {v.begin(), v.end()}; }

} // namespace detail

inline std::vector<Check> verify_counts() {
    return {detail::count("essential functions, n=2", enumerate_essential(2).size(), 10),
            detail::count("essential functions, n=3", enumerate_essential(3).size(), 218),
            detail::count("games, n=2", enumerate_games(2).size(), 100),
            detail::count("games, n=3", enumerate_games(3).size(), 47524)};
}

/// Full two-player campaign on EPR against the 16 listed equations.
inline std::vector<Check> verify_table1(const VerifyOptions &opts = {}) {
    std::vector<SearchRecord> records;
    for (const auto &g : enumerate_games(2)) {
        records.push_back(evaluate_game(g, {"epr"}, opts.optimize));
    }
    const auto found = filter_max_gap(records, WinFraction(3, 4), kMaxGapFloor, "epr");
    std::set<GameSpec> found_set;
    for (const auto &r : found) {
        found_set.insert(r.game);
    }
    std::set<GameSpec> listed;
    for (const auto &e : reference::two_player_max_gap()) {
        listed.insert(reference::game(e, 2));
    }
    double max_gap_value = 0.0, max_any = 0.0;
    for (const auto &r : records) {
        const double v = r.resource("epr")->value;
        max_any = std::max(max_any, v);
        if (r.classical == WinFraction(3, 4)) {
            max_gap_value = std::max(max_gap_value, v);
        }
    }
    std::vector<Check> out;
    out.push_back(detail::count("campaign records, n=2", records.size(), 100));
    out.push_back(detail::count("max-gap games (classical 3/4, quantum >= 0.8530)", found.size(), 16));
    out.push_back({"max-gap set equals the 16 listed equations", found_set == listed,
                   std::to_string(found_set.size()) + " found, " + std::to_string(listed.size()) + " listed"});
    out.push_back({"no classical-3/4 game exceeds 0.8536 + 1e-3", max_gap_value <= 0.8536 + 1e-3,
                   "max " + detail::fmt(max_gap_value) + " (over all games " + detail::fmt(max_any) + ")"});
    return out;
}

/// Published GHZ angle sets on their example games.
inline std::vector<Check> verify_table2() {
    const StateVector ghz = make_ghz(3);
    const double want = reference::kChshQuantum;
    return {
        detail::near("first-type angles on x*y*z + !x*!y*!z = a^b^c",
                     win_probability(reference::ghz_first_type_example(),
                                     make_strategy(ghz, reference::ghz_first_type_witness())),
                     want, 1e-6),
        detail::near("second-type angles on x*y + (x^y)*z = a^b^c",
                     win_probability(reference::ghz_second_type_example(),
                                     make_strategy(ghz, reference::ghz_second_type_witness())),
                     want, 1e-6),
    };
}

/// The 16 first-type and 64 second-type games on GHZ, optimizer seeded with the published angles.
inline std::vector<Check> verify_table3(const VerifyOptions &opts = {}) {
    const auto first = reference::ghz_first_type_games();
    const auto second = reference::ghz_second_type_games();
    const StateVector ghz = make_ghz(3);
    std::vector<Check> out;
    out.push_back(detail::count("first-type games", detail::as_set(first).size(), 16));
    out.push_back(detail::count("second-type games (negation closure of 16 seeds)", detail::as_set(second).size(), 64));
    std::set<GameSpec> all = detail::as_set(first);
    all.insert(second.begin(), second.end());
    out.push_back(detail::count("first + second, disjoint", all.size(), 80));

    auto sweep = [&](const std::vector<GameSpec> &games, const AngleVector &witness, GameType type, const char *label) {
        int classical_ok = 0, quantum_ok = 0, type_ok = 0;
        double lo = 1.0, hi = 0.0;
        OptimizeConfig cfg = opts.optimize;
        cfg.witness = witness;
        for (const auto &g : games) {
            cfg.seed = game_seed(opts.optimize.seed, g);
            const double q = optimize_strategy(g, ghz, cfg).best_value;
            lo = std::min(lo, q);
            hi = std::max(hi, q);
            quantum_ok += std::abs(q - reference::kChshQuantum) <= 1e-3;
            classical_ok += best_classical(g).value == WinFraction(3, 4);
            type_ok += classify_game(g) == type;
        }
        const std::size_t n = games.size();
        out.push_back({std::string(label) + ": classical value exactly 3/4", classical_ok == static_cast<int>(n),
                       std::to_string(classical_ok) + "/" + std::to_string(n)});
        out.push_back({std::string(label) + ": GHZ value 0.853553 ± 1e-3", quantum_ok == static_cast<int>(n),
                       std::to_string(quantum_ok) + "/" + std::to_string(n) + ", range [" + detail::fmt(lo) + ", " +
                           detail::fmt(hi) + "]"});
        out.push_back({std::string(label) + ": classified as " + to_string(type), type_ok == static_cast<int>(n),
                       std::to_string(type_ok) + "/" + std::to_string(n)});
    };
    sweep(first, reference::ghz_first_type_witness(), GameType::First, "first type");
    sweep(second, reference::ghz_second_type_witness(), GameType::Second, "second type");
    return out;
}

/// The eight W-versus-GHZ rows: optimized values against the printed ones.
inline std::vector<Check> verify_table4(const VerifyOptions &opts = {}) {
    std::vector<Check> out;
    const StateVector w = make_w(), ghz = make_ghz(3);
    auto compare = [&](const std::string &name, double found, double printed) {
        Check c{name, found >= printed - 2e-3, "got " + detail::fmt(found, 6) + ", printed " + detail::fmt(printed, 5)};
        if (found > printed + 2e-3) {
            c.discrepancy = true;
        }
        out.push_back(std::move(c));
    };
    for (const auto &row : reference::w_vs_ghz_rows()) {
        const GameSpec g = reference::game(row.equation, 3);
        const std::string eq = std::string(row.equation.question_side) + " = " + row.equation.answer_side;
        OptimizeConfig cfg = opts.optimize;
        cfg.seed = game_seed(opts.optimize.seed, g);
        const auto cl = best_classical(g).value;
        out.push_back({eq + ": classical 3/4", cl == WinFraction(3, 4), "got " + cl.to_string()});
        compare(eq + ": W", optimize_strategy(g, w, cfg).best_value, row.w_value);
        compare(eq + ": GHZ", optimize_strategy(g, ghz, cfg).best_value, row.ghz_value);
    }
    return out;
}

/// Published W angle set on its game.
inline std::vector<Check> verify_table5() {
    const double v = win_probability(reference::w_witness_game(), make_strategy(make_w(), reference::w_witness()));
    return {{"W angles on x*y*z + !x*!y*!z = !a*!b*c + !a*b*c + a*!b*!c + a*b*c", v >= reference::kWWitnessValue - 1e-4,
             "got " + detail::fmt(v) + ", want >= " + detail::fmt(reference::kWWitnessValue - 1e-4, 5)}};
}

inline std::vector<Check> verify_bell() {
    using namespace observables;
    const auto m3 = build_m3({X(), X(), X()}, {Y(), Y(), Y()});
    return {detail::near("<B> on EPR = 2*sqrt2", expectation(build_bell(), make_epr()), 2.0 * std::numbers::sqrt2, 1e-10),
            detail::near("<M3> on GHZ_j with X/Y = 4", expectation(m3, make_ghz_phase()), 4.0, 1e-10),
            [&] {
                const auto r = local_realistic_range(m3);
                return Check{"M3 local-realistic bound = 2", r.max == 2.0 && r.min == -2.0,
                             "range [" + detail::fmt(r.min, 1) + ", " + detail::fmt(r.max, 1) + "]"};
            }()};
}

inline std::vector<Check> verify_t1() {
    const auto t1 = build_t1(reference::ghz_second_type_witness());
    const auto r = local_realistic_range(t1);
    return {detail::near("<T1> on GHZ = 4*sqrt2", expectation(t1, make_ghz(3)), 4.0 * std::numbers::sqrt2, 1e-9),
            {"T1 classical bound = 0 (exhaustive ±1)", r.max == 0.0,
             "max " + detail::fmt(r.max, 1) + ", min " + detail::fmt(r.min, 1)}};
}

inline std::vector<Check> verify_t2() {
    const auto t2 = build_t2(reference::w_witness());
    const double v = expectation(t2, make_w());
    Check c = detail::near("<T2> on W = 3.7922", v, reference::kT2OnW, 1e-3);
    c.discrepancy = !c.passed;
    const auto r = local_realistic_range(t2);
    return {c, {"T2 exhaustive ±1 range (reported)", true,
                "[" + detail::fmt(r.min, 1) + ", " + detail::fmt(r.max, 1) + "]"}};
}

/// 2p - 1 = <monomial> per question for CHSH on EPR and the GHZ game on GHZ_j.
inline std::vector<Check> verify_correspondence() {
    std::vector<Check> out;
    const auto chsh = game_monomial_consistency(reference::chsh(), make_strategy(make_epr(), reference::chsh_witness()));
    bool holds = true;
    for (const auto &q : chsh) {
        holds = holds && q.holds;
    }
    out.push_back({"CHSH on EPR: identity holds on all 4 questions", holds, ""});
    out.push_back(detail::near("CHSH on EPR: value at (0,0) = 1/sqrt2", chsh[0].monomial, kInvSqrt2, 1e-10));

    const auto ghz = game_monomial_consistency(reference::ghz_game(),
                                               make_strategy(make_ghz_phase(), reference::ghz_game_witness()));
    bool ghz_holds = true;
    double worst = 1.0;
    for (const auto &q : ghz) {
        ghz_holds = ghz_holds && q.holds;
        if (detail::popcount(q.question) % 2 == 1) {
            worst = std::min(worst, std::min(q.win_probability, std::abs(q.monomial)));
        }
    }
    out.push_back({"GHZ game on GHZ_j: identity holds on all 8 questions", ghz_holds, ""});
    out.push_back(detail::near("GHZ game on GHZ_j: win probability and |<monomial>| on odd-parity questions = 1", worst,
                               1.0, 1e-10));
    return out;
}

/// Preparation circuits replayed in the simulator, and exported QASM against direct evaluation.
inline std::vector<Check> verify_circuit() {
    std::vector<Check> out;
    auto diff = [](const StateVector &a, const StateVector &b) {
        double d = 0.0;
        for (std::size_t k = 0; k < a.dimension(); ++k) {
            d = std::max(d, std::abs(a.amplitude(k) - b.amplitude(k)));
        }
        return d;
    };
    out.push_back(detail::near("W preparation replay vs |W>", diff(replay(w_prep(), 3), make_w()), 0.0, 1e-12));
    out.push_back(detail::near("GHZ preparation replay vs |GHZ>", diff(replay(ghz_prep(3), 3), make_ghz(3)), 0.0, 1e-12));

    struct Case {
        GameSpec game;
        std::string resource;
        AngleVector angles;
    };
    const std::vector<Case> cases{
        {reference::w_witness_game(), "w", reference::w_witness()},
        {reference::ghz_first_type_example(), "ghz", reference::ghz_first_type_witness()},
        {reference::ghz_second_type_example(), "ghz", reference::ghz_second_type_witness()},
    };
    for (const auto &c : cases) {
        const auto direct = question_win_probabilities(c.game, make_strategy(make_resource(c.resource, 3), c.angles));
        double worst = 0.0;
        for (std::uint32_t x = 0; x < 8; ++x) {
            const auto prog = parse_qasm(to_qasm(strategy_circuit(c.resource, c.angles, x), 3));
            worst = std::max(worst, std::abs(replay_win_probability(c.game, prog.circuit, x) - direct[x]));
        }
        out.push_back(detail::near("exported QASM vs direct, " + c.resource + ", " + format_game(c.game), worst, 0.0, 1e-12));
    }
    return out;
}

inline const std::vector<std::string> &verify_ids() {
    static const std::vector<std::string> ids{"table1", "table2", "table3", "table4", "table5", "bell",
                                              "t1",     "t2",     "counts", "correspondence", "circuit"};
    return ids;
}

/// Runs one check group; throws std::invalid_argument on an unknown id.
inline std::vector<Check> run_verify(const std::string &id, const VerifyOptions &opts = {}) {
    if (id == "counts") return verify_counts();
    if (id == "table1") return verify_table1(opts);
    if (id == "table2") return verify_table2();
    if (id == "table3") return verify_table3(opts);
    if (id == "table4") return verify_table4(opts);
    if (id == "table5") return verify_table5();
    if (id == "bell") return verify_bell();
    if (id == "t1") return verify_t1();
    if (id == "t2") return verify_t2();
    if (id == "correspondence") return verify_correspondence();
    if (id == "circuit") return verify_circuit();
    throw std::invalid_argument("unknown verify id '" + id + "'");
}

} // namespace nlgames
