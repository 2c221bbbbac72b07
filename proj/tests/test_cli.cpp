// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "oracles.hpp"

using namespace nlgames;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Cli {
    fs::path dir = fs::temp_directory_path() / ("nlgames-cli-" + std::to_string(::getpid()));
    Cli() { fs::create_directories(dir); }
    ~Cli() { fs::remove_all(dir); }

    int run(const std::string &args) const {
        const std::string cmd = std::string(NLGAMES_CLI) + " " + args + " > " + (dir / "stdout").string() + " 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    std::string out() const { return slurp(dir / "stdout"); }
    std::string path(const std::string &name) const { return (dir / name).string(); }
};

double max_amp_diff(const StateVector &a, const StateVector &b) {
    double d = 0;
    for (std::size_t k = 0; k < a.dimension(); ++k) d = std::max(d, std::abs(a.amplitude(k) - b.amplitude(k)));
    return d;
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST(Angles, Expressions) {
    EXPECT_DOUBLE_EQ(parse_angle("pi/4"), pi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("-3*pi/4"), -3 * pi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("(pi-2)/6"), (pi - 2) / 6);
    EXPECT_DOUBLE_EQ(parse_angle("(-5*pi-2)/6"), (-5 * pi - 2) / 6);
    EXPECT_DOUBLE_EQ(parse_angle(" 2.3177324 "), 2.3177324);
    EXPECT_DOUBLE_EQ(parse_angle("1e-3"), 1e-3);
    EXPECT_THROW(parse_angle("pi/"), ParseError);
    EXPECT_THROW(parse_angle("tau"), ParseError);
    EXPECT_THROW(parse_angle("1/0"), NumericError);
    const auto list = parse_angle_list("0, pi/2 # comment\n pi\t-pi");
    EXPECT_EQ(list, (std::vector<double>{0, pi / 2, pi, -pi}));
}

TEST(Circuit, PreparationReplay) {
    const auto w = replay(w_prep(), 3);
    const double r = 1 / std::sqrt(3.0);
    for (std::size_t k = 0; k < 8; ++k) {
        EXPECT_NEAR(std::abs(w.amplitude(k) - Complex((k == 1 || k == 2 || k == 4) ? r : 0.0)), 0.0, 1e-12);
    }
    EXPECT_LT(max_amp_diff(replay(ghz_prep(3), 3), make_ghz(3)), 1e-12);
    EXPECT_LT(max_amp_diff(replay(ghz_prep(4), 4), make_ghz(4)), 1e-12);
    EXPECT_THROW(resource_prep("epr", 2), std::invalid_argument);
}

TEST(Circuit, ControlledHadamardDecomposition) {
    for (std::uint32_t basis = 0; basis < 4; ++basis) {
        Circuit c;
        append_controlled_h(c, 0, 1);
        const auto got = replay(c, 2);
        StateVector start = StateVector::basis(2, basis);
        const auto want = apply_controlled(start, 0, 1, gates::H);
        // replay starts from |00>, so prepare the basis state with X gates first
        Circuit prepared;
        if (basis & 2) prepared.push_back({GateKind::X, 0});
        if (basis & 1) prepared.push_back({GateKind::X, 1});
        prepared.insert(prepared.end(), c.begin(), c.end());
        EXPECT_LT(max_amp_diff(replay(prepared, 2), want), 1e-12) << basis;
        (void)got;
    }
}

TEST(Circuit, QasmLayout) {
    const auto angles = reference::w_witness();
    const std::string text = to_qasm(strategy_circuit("w", angles, 0b111), 3);
    EXPECT_EQ(text.rfind("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\n", 0), 0u);
    const auto prog = parse_qasm(text);
    EXPECT_EQ(prog.qubits, 3);
    std::vector<UnitaryParams> u3s;
    int measures = 0;
    for (const auto &g : prog.circuit) {
        if (g.kind == GateKind::U3) u3s.push_back(g.params);
        measures += g.kind == GateKind::Measure;
    }
    ASSERT_EQ(u3s.size(), 3u);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(u3s[static_cast<std::size_t>(i)], angles.params(i, 1));
    EXPECT_EQ(measures, 3);
    EXPECT_THROW(parse_qasm("OPENQASM 2.0;\nqreg q[2];\nccx q[0],q[1],q[2];\n"), ParseError);
    EXPECT_THROW(parse_qasm("OPENQASM 2.0;\nh q[0];\n"), ParseError);
}

TEST(Circuit, ExportedQasmMatchesDirectEvaluation) {
    std::mt19937_64 rng(1);
    for (const auto &res : {std::string("ghz"), std::string("w")}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto game = enumerate_games(3)[rng() % 47524];
            const auto angles = oracle::random_angles(rng, 3);
            const auto direct = question_win_probabilities(game, make_strategy(make_resource(res, 3), angles));
            for (std::uint32_t x = 0; x < 8; ++x) {
                const auto prog = parse_qasm(to_qasm(strategy_circuit(res, angles, x), 3));
                EXPECT_NEAR(replay_win_probability(game, prog.circuit, x), direct[x], 1e-12);
            }
        }
    }
}

TEST(Histogram, ClassicalAndQuantum) {
    const auto game = reference::ghz_second_type_example();
    const auto cl = classical_histogram(game, best_classical(game).witnesses.front());
    for (double r : cl.rates) EXPECT_TRUE(r == 0.0 || r == 1.0);
    EXPECT_DOUBLE_EQ(cl.average(), 0.75);

    const auto q = quantum_histogram(game, make_strategy(make_ghz(3), reference::ghz_second_type_witness()));
    for (double r : q.rates) EXPECT_GT(r, 0.75);
    EXPECT_NEAR(q.average(), reference::kChshQuantum, 1e-9);

    std::ostringstream os;
    write_histogram_csv(os, q);
    const auto rows = lines(os.str());
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[0], "question,win_rate");
    EXPECT_EQ(rows[1].substr(0, 4), "000,");
    EXPECT_EQ(rows[8].substr(0, 4), "111,");
    EXPECT_EQ(rows[9].substr(0, 8), "average,");
}

TEST(Histogram, WGameOnBothResources) {
    const auto game = reference::w_witness_game();
    const auto w = quantum_histogram(game, make_strategy(make_w(), reference::w_witness()));
    EXPECT_NEAR(w.average(), reference::kWWitnessValue, 1e-4);
    const auto ghz = optimize_strategy(game, make_ghz(3), {});
    EXPECT_NEAR(quantum_histogram(game, make_strategy(make_ghz(3), ghz.best_angles)).average(), 0.75, 2e-3);
}

TEST(CliBinary, ClassicalOptimizeAndExitCodes) {
    Cli cli;
    EXPECT_EQ(cli.run("classical --game \"x*y = a^b\""), 0);
    EXPECT_NE(cli.out().find("classical value 3/4"), std::string::npos);
    EXPECT_NE(cli.out().find("8 optimal strategies"), std::string::npos);
    EXPECT_EQ(cli.run("optimize --game \"x*y = a^b\" --resource epr --restarts 10"), 0);
    EXPECT_NE(cli.out().find("quantum 0.853553"), std::string::npos);
    EXPECT_EQ(cli.run("verify nosuchtable"), 2);
    EXPECT_EQ(cli.run("--no-such-flag"), 2);
    EXPECT_EQ(cli.run("optimize --game \"x*y = a^b\" --restarts 0"), 2);
    EXPECT_EQ(cli.run("classical --game \"x*q = a^b\""), 2);
    EXPECT_EQ(cli.run("verify counts"), 0);
    EXPECT_EQ(cli.run("verify t1"), 1);
}

TEST(CliBinary, SearchWritesRecordsAndIsReproducible) {
    Cli cli;
    ASSERT_EQ(cli.run("search --arity 2 --restarts 3 --seed 5 --out " + cli.path("a.jsonl")), 0);
    ASSERT_EQ(cli.run("search --arity 2 --restarts 3 --seed 5 --threads 2 --out " + cli.path("b.jsonl")), 0);
    const auto a = slurp(cli.path("a.jsonl"));
    EXPECT_EQ(lines(a).size(), 100u);
    EXPECT_EQ(a, slurp(cli.path("b.jsonl")));
}

TEST(CliBinary, ConfigFileAndOverride) {
    Cli cli;
    {
        std::ofstream cfg(cli.path("run.cfg"));
        cfg << "seed=5\nrestarts=3\narity=2\n";
    }
    ASSERT_EQ(cli.run("search --config " + cli.path("run.cfg") + " --out " + cli.path("c.jsonl")), 0);
    ASSERT_EQ(cli.run("search --arity 2 --restarts 3 --seed 5 --out " + cli.path("d.jsonl")), 0);
    EXPECT_EQ(slurp(cli.path("c.jsonl")), slurp(cli.path("d.jsonl")));
    ASSERT_EQ(cli.run("search --config " + cli.path("run.cfg") + " --restarts 4 --limit 3 --out " + cli.path("e.jsonl")), 0);
    const auto e = lines(slurp(cli.path("e.jsonl")));
    ASSERT_EQ(e.size(), 3u);
    EXPECT_NE(e[0].find("\"restarts\":4"), std::string::npos);
}

TEST(CliBinary, HistogramAndQasmFiles) {
    Cli cli;
    const std::string game = "--game \"x*y + (x^y)*z = a^b^c\"";
    ASSERT_EQ(cli.run("histogram " + game + " --source classical --out " + cli.path("c.csv")), 0);
    const auto rows = lines(slurp(cli.path("c.csv")));
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows.back(), "average,0.750000000000");
    ASSERT_EQ(cli.run("histogram " + game + " --source angles --angles ghz-second --resource ghz --out " + cli.path("q.csv")), 0);
    EXPECT_EQ(lines(slurp(cli.path("q.csv"))).back(), "average,0.853553390593");
    ASSERT_EQ(cli.run("histogram " + game + " --source optimize --resource ghz --restarts 4 --out " + cli.path("o1.csv")), 0);
    ASSERT_EQ(cli.run("histogram " + game + " --source optimize --resource ghz --restarts 4 --out " + cli.path("o2.csv")), 0);
    EXPECT_EQ(slurp(cli.path("o1.csv")), slurp(cli.path("o2.csv")));

    ASSERT_EQ(cli.run("export-qasm --resource w --angles w --question 111 --out " + cli.path("s.qasm")), 0);
    const auto prog = parse_qasm(slurp(cli.path("s.qasm")));
    const auto direct = question_win_probabilities(reference::w_witness_game(), make_strategy(make_w(), reference::w_witness()));
    EXPECT_NEAR(replay_win_probability(reference::w_witness_game(), prog.circuit, 7), direct[7], 1e-12);
    EXPECT_EQ(cli.run("export-qasm --resource epr --angles chsh --question 11"), 2);
    EXPECT_EQ(cli.run("export-qasm --resource w --angles w --question 12"), 2);
}

TEST(CliBinary, Bell) {
    Cli cli;
    ASSERT_EQ(cli.run("bell"), 0);
    EXPECT_NE(cli.out().find("<bell> on epr = 2.82842712475"), std::string::npos);
    ASSERT_EQ(cli.run("bell --operator m3"), 0);
    EXPECT_NE(cli.out().find("+ X⊗X⊗Y + X⊗Y⊗X + Y⊗X⊗X − Y⊗Y⊗Y"), std::string::npos);
}
