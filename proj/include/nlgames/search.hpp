// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Campaigns over every game of a given arity: exact classical optimum, optimized
// quantum value per resource, classification, and a resumable JSONL sink.

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "classical.hpp"
#include "game.hpp"
#include "optimize.hpp"
#include "reference.hpp"

namespace nlgames {

/// Quantum beats classical only by more than this margin.
inline constexpr double kAdvantageMargin = 1e-3;
/// Quantum floor for the classical-3/4 / cos^2(pi/8) gap.
inline constexpr double kMaxGapFloor = 0.8530;

struct ResourceResult {
    std::string name;
    double value = 0.0;
    AngleVector angles;
    int restarts = 0;
    long evals = 0;
    int converged = 0; ///< restarts whose local search converged
};

struct SearchRecord {
    GameSpec game;
    std::string f_expr;
    std::string g_expr;
    WinFraction classical;
    std::vector<ResourceResult> resources;
    std::string classification;

    [[nodiscard]] const ResourceResult *resource(const std::string &name) const {
        for (const auto &r : resources) {
            if (r.name == name) {
                return &r;
            }
        }
        return nullptr;
    }

    [[nodiscard]] double best_quantum() const {
        double v = 0.0;
        for (const auto &r : resources) {
            v = std::max(v, r.value);
        }
        return v;
    }
};

/// "max-gap": classical 3/4 and quantum >= kMaxGapFloor; "advantage": quantum beats
/// classical by more than kAdvantageMargin; otherwise "none".
inline std::string classify_record(const WinFraction &classical, double best_quantum) {
    if (classical == WinFraction(3, 4) && best_quantum >= kMaxGapFloor) {
        return "max-gap";
    }
    if (best_quantum > classical.to_double() + kAdvantageMargin) {
        return "advantage";
    }
    return "none";
}

inline nlohmann::ordered_json to_json(const SearchRecord &r) {
    nlohmann::ordered_json j;
    j["n"] = r.game.players();
    j["f_bits"] = r.game.question_fn().bits();
    j["g_bits"] = r.game.answer_fn().bits();
    j["f_expr"] = r.f_expr;
    j["g_expr"] = r.g_expr;
    j["classical_num"] = r.classical.numerator();
    j["classical_den"] = r.classical.denominator();
    j["resources"] = nlohmann::ordered_json::array();
    for (const auto &res : r.resources) {
        nlohmann::ordered_json e;
        e["name"] = res.name;
        e["value"] = res.value;
        e["angles"] = res.angles.values();
        e["trace"] = {{"restarts", res.restarts}, {"evals", res.evals}, {"converged", res.converged}};
        j["resources"].push_back(std::move(e));
    }
    j["class"] = r.classification;
    return j;
}

inline SearchRecord record_from_json(const nlohmann::json &j) {
    const int n = j.at("n").get<int>();
    SearchRecord r{GameSpec(TruthTable(n, j.at("f_bits").get<std::uint32_t>()),
                            TruthTable(n, j.at("g_bits").get<std::uint32_t>())),
                   j.at("f_expr").get<std::string>(),
                   j.at("g_expr").get<std::string>(),
                   WinFraction(j.at("classical_num").get<std::uint32_t>(), j.at("classical_den").get<std::uint32_t>()),
                   {},
                   j.at("class").get<std::string>()};
    for (const auto &e : j.at("resources")) {
        ResourceResult res;
        res.name = e.at("name").get<std::string>();
        res.value = e.at("value").get<double>();
        res.angles = AngleVector(e.at("angles").get<std::vector<double>>());
        if (e.contains("trace")) {
            res.restarts = e["trace"].value("restarts", 0);
            res.evals = e["trace"].value("evals", 0L);
            res.converged = e["trace"].value("converged", 0);
        }
        r.resources.push_back(std::move(res));
    }
    return r;
}

/// Per-game optimizer seed; depends only on the master seed and the game.
inline std::uint64_t game_seed(std::uint64_t master, const GameSpec &game) {
    using detail::splitmix64;
    return splitmix64(splitmix64(master ^ game.question_fn().bits()) ^ (std::uint64_t{game.answer_fn().bits()} << 20));
}

struct CampaignOptions {
    int arity = 2;
    std::vector<std::string> resources{"epr"};
    OptimizeConfig optimize;   ///< optimize.seed is the master seed
    unsigned threads = 1;
    std::optional<std::size_t> limit; ///< only the first `limit` games of the enumeration
};

inline SearchRecord evaluate_game(const GameSpec &game, const std::vector<std::string> &resources,
                                  const OptimizeConfig &base) {
    SearchRecord r{game, format_question_side(game), format_answer_side(game), best_classical(game).value, {}, {}};
    OptimizeConfig cfg = base;
    cfg.seed = game_seed(base.seed, game);
    cfg.threads = 1;
    for (const auto &name : resources) {
        const auto out = optimize_strategy(game, make_resource(name, game.players()), cfg);
        ResourceResult res{name, out.best_value, out.best_angles, static_cast<int>(out.trace.size()), out.total_evals, 0};
        for (const auto &t : out.trace) {
            res.converged += t.converged ? 1 : 0;
        }
        r.resources.push_back(std::move(res));
    }
    r.classification = classify_record(r.classical, r.best_quantum());
    return r;
}

/// Reads every complete record of a sink. A trailing partial line is ignored.
inline std::vector<SearchRecord> load_records(const std::filesystem::path &path) {
    std::vector<SearchRecord> out;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (in.eof()) {
            break; // no trailing newline: interrupted write
        }
        if (line.empty()) {
            continue;
        }
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            break;
        }
        out.push_back(record_from_json(j));
    }
    return out;
}

namespace detail {

/// Truncates the sink after its last complete, parseable line and returns the game keys found.
inline std::set<std::pair<std::uint32_t, std::uint32_t>> recover_sink(const std::filesystem::path &path, int arity) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> done;
    if (!std::filesystem::exists(path)) {
        return done;
    }
    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    std::size_t valid_end = 0, pos = 0;
    while (pos < content.size()) {
        const auto nl = content.find('\n', pos);
        if (nl == std::string::npos) {
            break;
        }
        const auto j = nlohmann::json::parse(content.substr(pos, nl - pos), nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            break;
        }
        if (j.at("n").get<int>() != arity) {
            throw ArityError("sink holds records of a different arity");
        }
        done.emplace(j.at("f_bits").get<std::uint32_t>(), j.at("g_bits").get<std::uint32_t>());
        pos = nl + 1;
        valid_end = pos;
    }
    if (valid_end != content.size()) {
        std::filesystem::resize_file(path, valid_end);
    }
    return done;
}

} // namespace detail

struct CampaignSummary {
    std::size_t total = 0;   ///< games in scope
    std::size_t skipped = 0; ///< already present in the sink
    std::size_t written = 0;
};

/// Evaluates every game of the arity in enumeration order and appends one JSON
/// line per game to `sink`. Games already present in the sink are skipped, so an
/// interrupted campaign resumes where it stopped. Output is independent of `threads`.
inline CampaignSummary run_campaign(const CampaignOptions &options, const std::filesystem::path &sink,
                                    const std::function<void(const SearchRecord &)> &on_record = {}) {
    options.optimize.validate();
    if (options.arity < 2 || options.arity > 3) {
        throw ArityError("campaigns support 2 or 3 players");
    }
    if (options.resources.empty()) {
        throw std::invalid_argument("campaign needs at least one resource");
    }
    for (const auto &name : options.resources) {
        (void)make_resource(name, options.arity);
    }

    auto games = enumerate_games(options.arity);
    if (options.limit && *options.limit < games.size()) {
        games.erase(games.begin() + static_cast<std::ptrdiff_t>(*options.limit), games.end());
    }
    CampaignSummary summary;
    summary.total = games.size();
    const auto done = detail::recover_sink(sink, options.arity);
    std::vector<GameSpec> todo;
    for (const auto &g : games) {
        if (done.count({g.question_fn().bits(), g.answer_fn().bits()})) {
            ++summary.skipped;
        } else {
            todo.push_back(g);
        }
    }

    std::ofstream out(sink, std::ios::binary | std::ios::app);
    if (!out) {
        throw std::runtime_error("cannot open sink " + sink.string());
    }
    auto emit = [&](const SearchRecord &r) {
        out << to_json(r).dump() << '\n';
        out.flush();
        if (!out) {
            throw std::runtime_error("write to sink " + sink.string() + " failed");
        }
        ++summary.written;
        if (on_record) {
            on_record(r);
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(todo.size())));
    if (workers == 1) {
        for (const auto &g : todo) {
            emit(evaluate_game(g, options.resources, options.optimize));
        }
        return summary;
    }

    // Workers finish out of order; this thread writes in enumeration order.
    std::mutex mu;
    std::condition_variable cv;
    std::map<std::size_t, SearchRecord> ready;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= todo.size() || stop) {
                    return;
                }
                try {
                    auto rec = evaluate_game(todo[i], options.resources, options.optimize);
                    std::lock_guard lock(mu);
                    ready.emplace(i, std::move(rec));
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    stop = true;
                }
                cv.notify_all();
            }
        });
    }
    try {
        for (std::size_t i = 0; i < todo.size(); ++i) {
            std::unique_lock lock(mu);
            cv.wait(lock, [&] { return ready.count(i) > 0 || failure; });
            if (failure) {
                break;
            }
            auto rec = std::move(ready.at(i));
            ready.erase(i);
            lock.unlock();
            emit(rec);
        }
    } catch (...) {
        stop = true;
        for (auto &t : pool) {
            t.join();
        }
        throw;
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return summary;
}

/// Records whose classical value equals `classical_target` and whose quantum value
/// (for `resource`, or the best over resources when empty) reaches `quantum_floor`.
inline std::vector<SearchRecord> filter_max_gap(const std::vector<SearchRecord> &records,
                                                const WinFraction &classical_target, double quantum_floor,
                                                const std::string &resource = {}) {
    std::vector<SearchRecord> out;
    for (const auto &r : records) {
        double q = r.best_quantum();
        if (!resource.empty()) {
            const auto *res = r.resource(resource);
            if (res == nullptr) {
                continue;
            }
            q = res->value;
        }
        if (r.classical == classical_target && q >= quantum_floor) {
            out.push_back(r);
        }
    }
    return out;
}

enum class GameType { First, Second, Unclassified };

inline const char *to_string(GameType t) {
    switch (t) {
    case GameType::First: return "first";
    case GameType::Second: return "second";
    case GameType::Unclassified: return "unclassified";
    }
    return "?";
}

/// First type: question side is a monomial OR its complement monomial (or the
/// negation of that) and the answer side is the parity (or its negation).
/// Second type: member of the negation closure of the second-type seeds.
inline GameType classify_game(const GameSpec &game) {
    if (game.players() != 3) {
        return GameType::Unclassified;
    }
    const TruthTable parity = parse_expr("a^b^c", answer_names(3));
    const bool parity_rhs = game.answer_fn() == parity || game.answer_fn() == negate(parity);
    if (parity_rhs) {
        for (std::uint32_t m = 0; m < 8; ++m) {
            const TruthTable pair(3, (1u << m) | (1u << (7 - m)));
            if (game.question_fn() == pair || game.question_fn() == negate(pair)) {
                return GameType::First;
            }
        }
    }
    static const auto second = reference::ghz_second_type_games();
    if (std::binary_search(second.begin(), second.end(), game)) {
        return GameType::Second;
    }
    return GameType::Unclassified;
}

struct TypePartition {
    std::vector<SearchRecord> first;
    std::vector<SearchRecord> second;
    std::vector<SearchRecord> unclassified;
};

inline TypePartition classify_types(const std::vector<SearchRecord> &records) {
    TypePartition p;
    for (const auto &r : records) {
        switch (classify_game(r.game)) {
        case GameType::First: p.first.push_back(r); break;
        case GameType::Second: p.second.push_back(r); break;
        case GameType::Unclassified: p.unclassified.push_back(r); break;
        }
    }
    return p;
}

struct ComparisonRow {
    GameSpec game;
    std::string equation;
    WinFraction classical;
    double w_value;
    double ghz_value;
};

/// Games where W beats the classical value (by more than kAdvantageMargin), sorted by W value.
inline std::vector<ComparisonRow> resource_comparison(const std::vector<SearchRecord> &records) {
    std::vector<ComparisonRow> rows;
    for (const auto &r : records) {
        const auto *w = r.resource("w");
        const auto *ghz = r.resource("ghz");
        if (w == nullptr || ghz == nullptr) {
            continue;
        }
        if (w->value > r.classical.to_double() + kAdvantageMargin) {
            rows.push_back({r.game, r.f_expr + " = " + r.g_expr, r.classical, w->value, ghz->value});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) { return a.w_value < b.w_value; });
    return rows;
}

} // namespace nlgames
