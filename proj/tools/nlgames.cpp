// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

// nlgames: command-line front end.
//
//   nlgames verify table1 table5 bell
//   nlgames search --arity 3 --resource ghz,w --out games.jsonl --threads 4
//   nlgames classical --game "x*y = a^b"
//   nlgames optimize --game "x*y = a^b" --resource epr
//   nlgames histogram --game "x*y + (x^y)*z = a^b^c" --resource ghz --angles ghz-second --out h.csv
//   nlgames export-qasm --resource w --angles w --question 111 --out s.qasm
//   nlgames bell --operator t1
//
// Exit status: 0 success / all checks pass, 1 a check failed, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nlgames/nlgames.hpp"

namespace {

using namespace nlgames;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int arity = 0; // 0: infer from the game
    std::vector<std::string> resources;
    std::uint64_t seed = 0;
    int restarts = 40;
    int max_evals = 2000;
    double tol = 1e-10;
    std::string out;
    unsigned threads = 1;

    std::vector<std::string> ids;
    std::string game;
    std::string angles;
    std::string source = "optimize";
    std::string question;
    std::string op = "bell";
    std::optional<std::size_t> limit;

    [[nodiscard]] OptimizeConfig optimize() const {
        OptimizeConfig c;
        c.restarts = restarts;
        c.max_evals = max_evals;
        c.tolerance = tol;
        c.seed = seed;
        c.threads = threads;
        c.validate();
        return c;
    }

    [[nodiscard]] std::string resource(const std::string &fallback) const {
        if (resources.size() > 1) {
            throw UsageError("this subcommand takes a single --resource");
        }
        return resources.empty() ? fallback : resources.front();
    }
};

/// Writes to --out, or stdout when --out is empty or "-".
void emit(const RunConfig &cfg, const std::string &text) {
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    f << text;
    if (!f) {
        throw std::runtime_error("cannot write " + cfg.out);
    }
}

GameSpec require_game(const RunConfig &cfg) {
    if (cfg.game.empty()) {
        throw UsageError("--game \"<f> = <g>\" is required");
    }
    return parse_game(cfg.game, cfg.arity);
}

/// A named published angle set, an angle file, or an inline list.
AngleVector resolve_angles(const std::string &text) {
    static const std::map<std::string, AngleVector (*)()> named{
        {"chsh", &reference::chsh_witness},
        {"ghz-first", &reference::ghz_first_type_witness},
        {"ghz-second", &reference::ghz_second_type_witness},
        {"ghz-game", &reference::ghz_game_witness},
        {"w", &reference::w_witness},
    };
    if (auto it = named.find(text); it != named.end()) {
        return it->second();
    }
    if (std::filesystem::is_regular_file(text)) {
        return load_angles(text);
    }
    return AngleVector(parse_angle_list(text));
}

std::string angle_text(const AngleVector &a) {
    std::ostringstream os;
    os.precision(17);
    for (int i = 0; i < a.players(); ++i) {
        for (int q = 0; q < 2; ++q) {
            const auto p = a.params(i, q);
            os << p.theta << ' ' << p.phi << ' ' << p.lambda << "  # U" << i + 1 << ',' << q << '\n';
        }
    }
    return os.str();
}

int cmd_verify(const RunConfig &cfg) {
    std::vector<std::string> ids = cfg.ids;
    if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) {
        ids = verify_ids();
    }
    VerifyOptions opts;
    opts.optimize = cfg.optimize();
    opts.optimize.threads = cfg.threads;
    bool ok = true;
    std::ostringstream os;
    for (const auto &id : ids) {
        std::vector<Check> checks;
        try {
            checks = run_verify(id, opts);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        os << "== " << id << '\n';
        print_checks(os, checks);
        ok = ok && all_passed(checks);
    }
    emit(cfg, os.str());
    return ok ? 0 : 1;
}

int cmd_search(const RunConfig &cfg) {
    if (cfg.out.empty() || cfg.out == "-") {
        throw UsageError("search needs --out <sink.jsonl>");
    }
    CampaignOptions opts;
    opts.arity = cfg.arity == 0 ? 2 : cfg.arity;
    opts.resources = cfg.resources.empty() ? std::vector<std::string>{opts.arity == 2 ? "epr" : "ghz"} : cfg.resources;
    opts.optimize = cfg.optimize();
    opts.optimize.threads = 1;
    opts.threads = cfg.threads;
    opts.limit = cfg.limit;
    std::size_t advantage = 0;
    const auto summary = run_campaign(opts, cfg.out, [&](const SearchRecord &r) {
        advantage += r.classification != "none";
    });
    const auto records = load_records(cfg.out);
    const auto gap = filter_max_gap(records, WinFraction(3, 4), kMaxGapFloor);
    std::cout << "games " << summary.total << ", skipped " << summary.skipped << ", written " << summary.written
              << ", with advantage (new) " << advantage << '\n';
    std::cout << "max-gap games (classical 3/4, quantum >= " << kMaxGapFloor << "): " << gap.size() << '\n';
    if (opts.arity == 3) {
        const auto types = classify_types(gap);
        std::cout << "first type " << types.first.size() << ", second type " << types.second.size()
                  << ", unclassified " << types.unclassified.size() << '\n';
        const auto rows = resource_comparison(records);
        if (!rows.empty()) {
            std::cout << "W beats classical on " << rows.size() << " games\n";
        }
    }
    return 0;
}

int cmd_classical(const RunConfig &cfg) {
    const GameSpec game = require_game(cfg);
    const auto best = best_classical(game);
    std::ostringstream os;
    os << format_game(game) << '\n';
    os << "classical value " << best.value << " (" << best.value.to_double() << ")\n";
    os << best.witnesses.size() << " optimal strategies\n";
    for (const auto &s : best.witnesses) {
        os << "  ";
        for (int i = 0; i < s.players(); ++i) {
            os << (i ? " " : "") << char('a' + i) << "=(" << int(s.answer(i, 0)) << ',' << int(s.answer(i, 1)) << ')';
        }
        os << '\n';
    }
    emit(cfg, os.str());
    return 0;
}

int cmd_optimize(const RunConfig &cfg) {
    const GameSpec game = require_game(cfg);
    const std::string resource = cfg.resource(game.players() == 2 ? "epr" : "ghz");
    OptimizeConfig oc = cfg.optimize();
    if (!cfg.angles.empty()) {
        oc.witness = resolve_angles(cfg.angles);
    }
    const auto res = optimize_strategy(game, make_resource(resource, game.players()), oc);
    std::printf("%s\nresource %s\nclassical %s\nquantum %.6f\n", format_game(game).c_str(), resource.c_str(),
                best_classical(game).value.to_string().c_str(), res.best_value);
    emit(cfg, angle_text(res.best_angles));
    return 0;
}

int cmd_histogram(const RunConfig &cfg) {
    const GameSpec game = require_game(cfg);
    Histogram h;
    if (cfg.source == "classical") {
        h = classical_histogram(game, best_classical(game).witnesses.front());
    } else {
        const std::string resource = cfg.resource(game.players() == 2 ? "epr" : "ghz");
        const StateVector state = make_resource(resource, game.players());
        AngleVector angles;
        if (cfg.source == "angles") {
            if (cfg.angles.empty()) {
                throw UsageError("--source angles needs --angles");
            }
            angles = resolve_angles(cfg.angles);
        } else if (cfg.source == "optimize") {
            angles = optimize_strategy(game, state, cfg.optimize()).best_angles;
        } else {
            throw UsageError("--source must be classical, optimize or angles");
        }
        h = quantum_histogram(game, make_strategy(state, angles));
    }
    std::ostringstream os;
    write_histogram_csv(os, h);
    emit(cfg, os.str());
    return 0;
}

int cmd_export_qasm(const RunConfig &cfg) {
    const std::string resource = cfg.resource("ghz");
    if (cfg.angles.empty()) {
        throw UsageError("export-qasm needs --angles");
    }
    const AngleVector angles = resolve_angles(cfg.angles);
    const int n = angles.players();
    if (cfg.question.size() != static_cast<std::size_t>(n) ||
        cfg.question.find_first_not_of("01") != std::string::npos) {
        throw UsageError("--question must be " + std::to_string(n) + " bits, e.g. 101");
    }
    const auto question = static_cast<std::uint32_t>(std::stoul(cfg.question, nullptr, 2));
    emit(cfg, to_qasm(strategy_circuit(resource, angles, question), n));
    return 0;
}

int cmd_bell(const RunConfig &cfg) {
    std::optional<MerminOperator> op;
    std::string state_name;
    if (cfg.op == "bell") {
        op = build_bell();
        state_name = "epr";
    } else if (cfg.op == "m3") {
        using namespace observables;
        op = build_m3({X(), X(), X()}, {Y(), Y(), Y()});
        state_name = "ghz-j";
    } else if (cfg.op == "t1" || cfg.op == "t2") {
        const bool t1 = cfg.op == "t1";
        const AngleVector a = cfg.angles.empty() ? (t1 ? reference::ghz_second_type_witness() : reference::w_witness())
                                                 : resolve_angles(cfg.angles);
        op = t1 ? build_t1(a) : build_t2(a);
        state_name = t1 ? "ghz" : "w";
    } else {
        throw UsageError("--operator must be bell, m3, t1 or t2");
    }
    state_name = cfg.resource(state_name);
    const auto range = local_realistic_range(*op);
    std::ostringstream os;
    os.precision(12);
    os << op->to_string() << '\n';
    os << "<" << cfg.op << "> on " << state_name << " = " << expectation(*op, make_resource(state_name, op->qubits()))
       << '\n';
    os << "local-realistic range [" << range.min << ", " << range.max << "]\n";
    emit(cfg, os.str());
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Nonlocal game search and analysis"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file mirroring the flags; flags override it");
    RunConfig cfg;
    app.add_option("--arity", cfg.arity, "Number of players")->check(CLI::Range(2, 4));
    app.add_option("--resource", cfg.resources, "Resource state: epr, ghz, w, ghz-j")
        ->delimiter(',')
        ->check(CLI::IsMember({"epr", "ghz", "w", "ghz-j"}));
    app.add_option("--seed", cfg.seed, "Master seed");
    app.add_option("--restarts", cfg.restarts, "Optimizer restarts per game")->check(CLI::PositiveNumber);
    app.add_option("--max-evals", cfg.max_evals, "Objective evaluations per restart")->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "Local-search tolerance")->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out, "Output path ('-' for stdout)");
    app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));

    auto *verify = app.add_subcommand("verify", "Check published tables and operator values")->fallthrough();
    verify->add_option("ids", cfg.ids, "table1..table5, bell, t1, t2, counts, correspondence, circuit, all");

    auto *search = app.add_subcommand("search", "Run a campaign over every game of an arity")->fallthrough();
    search->add_option("--limit", cfg.limit, "Only the first N games");

    auto *classical = app.add_subcommand("classical", "Best deterministic strategies")->fallthrough();
    auto *optimize = app.add_subcommand("optimize", "Optimize a quantum strategy")->fallthrough();
    auto *histogram = app.add_subcommand("histogram", "Per-question win rates as CSV")->fallthrough();
    auto *qasm = app.add_subcommand("export-qasm", "OpenQASM 2.0 circuit for one question")->fallthrough();
    auto *bell = app.add_subcommand("bell", "Bell/Mermin operator expectation")->fallthrough();

    for (auto *sub : {classical, optimize, histogram}) {
        sub->add_option("--game", cfg.game, "Equation, e.g. \"x*y = a^b\"")->required();
    }
    optimize->add_option("--angles", cfg.angles, "Witness start: name, file or inline list");
    histogram->add_option("--source", cfg.source, "classical, optimize or angles");
    histogram->add_option("--angles", cfg.angles, "Angle set: chsh, ghz-first, ghz-second, ghz-game, w, a file or a list");
    qasm->add_option("--angles", cfg.angles, "Angle set: name, file or inline list")->required();
    qasm->add_option("--question", cfg.question, "Question bits, e.g. 101")->required();
    bell->add_option("--operator", cfg.op, "bell, m3, t1 or t2");
    bell->add_option("--angles", cfg.angles, "Strategy angles for t1/t2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*verify) return cmd_verify(cfg);
        if (*search) return cmd_search(cfg);
        if (*classical) return cmd_classical(cfg);
        if (*optimize) return cmd_optimize(cfg);
        if (*histogram) return cmd_histogram(cfg);
        if (*qasm) return cmd_export_qasm(cfg);
        if (*bell) return cmd_bell(cfg);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << " (at " << e.position() << ")\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
