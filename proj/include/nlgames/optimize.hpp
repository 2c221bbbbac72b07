// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "quantum.hpp"

namespace nlgames {

/// The 6n strategy angles, ordered (theta, phi, lambda) for (player 1, q=0),
/// (player 1, q=1), (player 2, q=0), ...
class AngleVector {
  public:
    AngleVector() = default;

    explicit AngleVector(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty() || values_.size() % 6 != 0) {
            throw ArityError("angle vector length must be a positive multiple of 6");
        }
        for (double v : values_) {
            if (!std::isfinite(v)) {
                throw NumericError("non-finite angle");
            }
        }
    }

    static AngleVector zeros(int players) {
        check_arity(players);
        return AngleVector(std::vector<double>(6 * static_cast<std::size_t>(players), 0.0));
    }

    /// From per-(player, question bit) triples stored at 2*player + bit.
    static AngleVector from_params(std::span<const UnitaryParams> params) {
        std::vector<double> v;
        for (const auto &p : params) {
            v.insert(v.end(), {p.theta, p.phi, p.lambda});
        }
        return AngleVector(std::move(v));
    }

    [[nodiscard]] int players() const noexcept { return static_cast<int>(values_.size() / 6); }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t k) const { return values_[k]; }
    [[nodiscard]] const std::vector<double> &values() const noexcept { return values_; }

    [[nodiscard]] UnitaryParams params(int player, int question_bit) const {
        const std::size_t k = 6 * static_cast<std::size_t>(player) + 3 * static_cast<std::size_t>(question_bit);
        if (player < 0 || player >= players() || question_bit < 0 || question_bit > 1) {
            throw IndexError("player or question bit out of range");
        }
        return {values_[k], values_[k + 1], values_[k + 2]};
    }

    friend bool operator==(const AngleVector &, const AngleVector &) = default;

  private:
    std::vector<double> values_;
};

inline QuantumStrategy make_strategy(const StateVector &resource, const AngleVector &angles) {
    return QuantumStrategy::from_angles(resource, angles.values());
}

enum class LocalMethod {
    NelderMead,         ///< simplex only
    Bfgs,               ///< quasi-Newton on central-difference gradients only
    NelderMeadThenBfgs, ///< simplex, then quasi-Newton polish
};

struct OptimizeConfig {
    int restarts = 40;
    int max_evals = 2000; ///< objective evaluations per restart and per local phase
    double tolerance = 1e-10;
    std::uint64_t seed = 0;
    int screen_samples = 1000;
    bool structured_starts = true;
    LocalMethod method = LocalMethod::NelderMeadThenBfgs;
    unsigned threads = 1;
    std::optional<AngleVector> witness; ///< injected as restart 0 when present

    void validate() const {
        if (restarts < 1) {
            throw std::invalid_argument("restarts must be >= 1");
        }
        if (max_evals < 1) {
            throw std::invalid_argument("max_evals must be >= 1");
        }
        if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
            throw std::invalid_argument("tolerance must be a positive finite number");
        }
        if (screen_samples < 0) {
            throw std::invalid_argument("screen_samples must be >= 0");
        }
        if (threads < 1) {
            throw std::invalid_argument("threads must be >= 1");
        }
    }
};

namespace detail {

inline void check_objective_args(const GameSpec &game, const StateVector &resource, const AngleVector &angles) {
    if (game.players() != resource.qubits() || angles.players() != game.players()) {
        throw ArityError("game, resource and angle vector disagree on the player count");
    }
}

/// 1 - P(angles) for a fixed game and resource, allocation-free per call.
class WinObjective {
  public:
    WinObjective(const GameSpec &game, const StateVector &resource) : game_(game), resource_(resource) {
        detail::check_players(game, resource.qubits());
        unitaries_.resize(2 * static_cast<std::size_t>(game.players()));
        probs_.resize(std::size_t{1} << game.players());
    }

    double operator()(std::span<const double> angles) {
        ++evals_;
        for (std::size_t k = 0; k < unitaries_.size(); ++k) {
            unitaries_[k] = u3({angles[3 * k], angles[3 * k + 1], angles[3 * k + 2]});
        }
        question_win_probabilities(game_, resource_.amplitudes(), unitaries_, probs_);
        double total = 0.0;
        for (double p : probs_) {
            total += p;
        }
        return 1.0 - total / static_cast<double>(probs_.size());
    }

    [[nodiscard]] long evals() const noexcept { return evals_; }

  private:
    const GameSpec &game_;
    const StateVector &resource_;
    std::vector<Mat2> unitaries_;
    std::vector<double> probs_;
    long evals_ = 0;
};

struct LocalResult {
    std::vector<double> x;
    double fx = 0.0;
    int evals = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead with dimension-adaptive coefficients. Stops when the spread of
/// simplex values drops below `tol` or the budget runs out.
inline LocalResult nelder_mead(const Objective &f, std::vector<double> x0, double step, int max_evals, double tol) {
    const std::size_t dim = x0.size();
    const double nd = static_cast<double>(dim);
    const double alpha = 1.0, beta = 1.0 + 2.0 / nd, gamma = 0.75 - 1.0 / (2.0 * nd), delta = 1.0 - 1.0 / nd;

    std::vector<std::vector<double>> simplex(dim + 1, x0);
    std::vector<double> values(dim + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double> &x) {
        ++evals;
        return f(x);
    };
    values[0] = eval(simplex[0]);
    for (std::size_t i = 0; i < dim; ++i) {
        simplex[i + 1][i] += step;
        values[i + 1] = eval(simplex[i + 1]);
    }

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    bool converged = false;
    while (evals < max_evals) {
        for (std::size_t i = 0; i <= dim; ++i) {
            order[i] = i;
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[dim - 1];
        if (values[worst] - values[best] <= tol) {
            converged = true;
            break;
        }
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t d = 0; d < dim; ++d) {
                centroid[d] += simplex[i][d] / nd;
            }
        }
        for (std::size_t d = 0; d < dim; ++d) {
            trial[d] = centroid[d] + alpha * (centroid[d] - simplex[worst][d]);
        }
        const double fr = eval(trial);
        if (fr < values[best]) {
            for (std::size_t d = 0; d < dim; ++d) {
                trial2[d] = centroid[d] + beta * (trial[d] - centroid[d]);
            }
            const double fe = eval(trial2);
            if (fe < fr) {
                simplex[worst] = trial2;
                values[worst] = fe;
            } else {
                simplex[worst] = trial;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = trial;
            values[worst] = fr;
            continue;
        }
        const bool outside = fr < values[worst];
        for (std::size_t d = 0; d < dim; ++d) {
            trial2[d] = outside ? centroid[d] + gamma * (trial[d] - centroid[d])
                                : centroid[d] - gamma * (centroid[d] - simplex[worst][d]);
        }
        const double fc = eval(trial2);
        if (fc < std::min(fr, values[worst])) {
            simplex[worst] = trial2;
            values[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) {
                continue;
            }
            for (std::size_t d = 0; d < dim; ++d) {
                simplex[i][d] = simplex[best][d] + delta * (simplex[i][d] - simplex[best][d]);
            }
            values[i] = eval(simplex[i]);
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    return {simplex[best], values[best], evals, converged};
}

inline void central_difference(const Objective &f, std::vector<double> &x, double h, std::vector<double> &grad) {
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double keep = x[k];
        x[k] = keep + h;
        const double up = f(x);
        x[k] = keep - h;
        const double down = f(x);
        x[k] = keep;
        grad[k] = (up - down) / (2.0 * h);
    }
}

/// BFGS on central-difference gradients with backtracking Armijo steps.
/// Converged when the gradient max-norm drops below 1e-9 or an accepted step
/// improves the objective by less than `tol`.
inline LocalResult bfgs(const Objective &f, std::vector<double> x, int max_evals, double tol) {
    const std::size_t dim = x.size();
    constexpr double h = 1e-6;
    int evals = 0;
    auto eval = [&](const std::vector<double> &p) {
        ++evals;
        return f(p);
    };
    auto gradient = [&](std::vector<double> &p, std::vector<double> &g) {
        central_difference([&](std::span<const double> q) { ++evals; return f(q); }, p, h, g);
    };

    std::vector<double> hinv(dim * dim, 0.0);
    auto reset = [&] {
        std::fill(hinv.begin(), hinv.end(), 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            hinv[i * dim + i] = 1.0;
        }
    };
    reset();

    double fx = eval(x);
    std::vector<double> g(dim), g_new(dim), dir(dim), x_new(dim), s(dim), y(dim), hy(dim);
    gradient(x, g);
    bool converged = false;
    bool just_reset = true;
    while (evals + static_cast<int>(2 * dim) + 2 < max_evals) {
        double gmax = 0.0;
        for (double v : g) {
            gmax = std::max(gmax, std::abs(v));
        }
        if (gmax < 1e-9) {
            converged = true;
            break;
        }
        double slope = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double v = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                v -= hinv[i * dim + j] * g[j];
            }
            dir[i] = v;
            slope += v * g[i];
        }
        if (slope >= 0.0) {
            reset();
            for (std::size_t i = 0; i < dim; ++i) {
                dir[i] = -g[i];
            }
            slope = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
        }
        double step = 1.0;
        double f_new = fx;
        bool accepted = false;
        for (int tries = 0; tries < 40 && evals < max_evals; ++tries) {
            for (std::size_t i = 0; i < dim; ++i) {
                x_new[i] = x[i] + step * dir[i];
            }
            f_new = eval(x_new);
            if (f_new <= fx + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (just_reset) {
                converged = true; // no descent even along -grad at finite-difference resolution
                break;
            }
            reset();
            just_reset = true;
            continue;
        }
        just_reset = false;
        gradient(x_new, g_new);
        for (std::size_t i = 0; i < dim; ++i) {
            s[i] = x_new[i] - x[i];
            y[i] = g_new[i] - g[i];
        }
        const double improvement = fx - f_new;
        x = x_new;
        fx = f_new;
        g = g_new;
        if (improvement < tol) {
            converged = true;
            break;
        }
        const double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
        if (sy > 1e-14) {
            for (std::size_t i = 0; i < dim; ++i) {
                double v = 0.0;
                for (std::size_t j = 0; j < dim; ++j) {
                    v += hinv[i * dim + j] * y[j];
                }
                hy[i] = v;
            }
            const double yhy = std::inner_product(y.begin(), y.end(), hy.begin(), 0.0);
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) {
                    hinv[i * dim + j] += rho * ((1.0 + yhy * rho) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
                }
            }
        }
    }
    return {x, fx, evals, converged};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic stream of uniform doubles in [lo, hi), independent of the standard library.
class UniformStream {
  public:
    explicit UniformStream(std::uint64_t seed) : state_(seed) {}

    double next(double lo, double hi) {
        state_ += 0x9e3779b97f4a7c15ull;
        const std::uint64_t bits = splitmix64(state_) >> 11;
        return lo + (hi - lo) * (static_cast<double>(bits) * 0x1.0p-53);
    }

  private:
    std::uint64_t state_;
};

inline AngleVector random_angles(UniformStream &rng, int players) {
    std::vector<double> v(6 * static_cast<std::size_t>(players));
    for (auto &a : v) {
        a = rng.next(-std::numbers::pi, std::numbers::pi);
    }
    return AngleVector(std::move(v));
}

/// theta = pi/2 and phi = 0 everywhere; lambda(q=0) from an 8-point grid and lambda(q=1) a quarter turn away.
inline AngleVector structured_start(int players, int k) {
    const double base = -std::numbers::pi + (k % 8) * std::numbers::pi / 4.0;
    const double offset = (k % 2 == 0 ? 1.0 : -1.0) * std::numbers::pi / 2.0;
    std::vector<double> v;
    for (int i = 0; i < players; ++i) {
        v.insert(v.end(), {std::numbers::pi / 2, 0.0, base, std::numbers::pi / 2, 0.0, base + offset});
    }
    return AngleVector(std::move(v));
}

} // namespace detail

/// 1 - win probability of the strategy built from `angles` on `resource`.
inline double objective(const GameSpec &game, const StateVector &resource, const AngleVector &angles) {
    detail::check_objective_args(game, resource, angles);
    detail::WinObjective f(game, resource);
    return f(angles.values());
}

inline std::vector<double> finite_diff_gradient(const GameSpec &game, const StateVector &resource,
                                                const AngleVector &angles, double step) {
    if (!(step > 0.0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    detail::check_objective_args(game, resource, angles);
    detail::WinObjective f(game, resource);
    std::vector<double> x = angles.values();
    std::vector<double> grad(x.size());
    detail::central_difference([&](std::span<const double> p) { return f(p); }, x, step, grad);
    return grad;
}

/// The uniformly drawn angle vectors screened before local search.
inline std::vector<AngleVector> screening_samples(std::uint64_t seed, int players, int count) {
    detail::UniformStream rng(detail::splitmix64(seed ^ 0x5c5c5c5c5c5c5c5cull));
    std::vector<AngleVector> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        out.push_back(detail::random_angles(rng, players));
    }
    return out;
}

enum class StartKind { Witness, Structured, Screened, Random };

inline const char *to_string(StartKind k) {
    switch (k) {
    case StartKind::Witness: return "witness";
    case StartKind::Structured: return "structured";
    case StartKind::Screened: return "screened";
    case StartKind::Random: return "random";
    }
    return "?";
}

struct RestartTrace {
    StartKind kind = StartKind::Random;
    double start_value = 0.0; ///< win probability at the start point
    double final_value = 0.0; ///< win probability after local search
    int evals = 0;
    bool converged = false;
};

struct OptimizeResult {
    double best_value = 0.0; ///< a lower bound on the quantum value for this resource
    AngleVector best_angles;
    std::vector<RestartTrace> trace;
    double screen_best = 0.0; ///< best win probability among the screening samples
    long total_evals = 0;
};

/// Multistart maximization of the win probability over the 6n angles.
/// Restart order: witness (if any), structured starts, best screening sample, uniform random.
/// Deterministic in (game, resource, config); ties go to the lowest restart index.
inline OptimizeResult optimize_strategy(const GameSpec &game, const StateVector &resource,
                                        const OptimizeConfig &config) {
    config.validate();
    detail::check_players(game, resource.qubits());
    const int n = game.players();
    if (config.witness && config.witness->players() != n) {
        throw ArityError("witness angles do not match the player count");
    }

    OptimizeResult result;
    AngleVector screen_best_angles;
    {
        detail::WinObjective f(game, resource);
        double best_f = 2.0;
        for (const auto &a : screening_samples(config.seed, n, config.screen_samples)) {
            const double v = f(a.values());
            if (v < best_f) {
                best_f = v;
                screen_best_angles = a;
            }
        }
        result.total_evals += f.evals();
        result.screen_best = config.screen_samples > 0 ? 1.0 - best_f : 0.0;
    }

    std::vector<std::pair<StartKind, AngleVector>> starts;
    if (config.witness) {
        starts.emplace_back(StartKind::Witness, *config.witness);
    }
    if (config.structured_starts) {
        for (int k = 0; k < 8 && static_cast<int>(starts.size()) < config.restarts; ++k) {
            starts.emplace_back(StartKind::Structured, detail::structured_start(n, k));
        }
    }
    if (config.screen_samples > 0 && static_cast<int>(starts.size()) < config.restarts) {
        starts.emplace_back(StartKind::Screened, screen_best_angles);
    }
    for (int r = static_cast<int>(starts.size()); r < config.restarts; ++r) {
        detail::UniformStream rng(detail::splitmix64(config.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(r + 1)));
        starts.emplace_back(StartKind::Random, detail::random_angles(rng, n));
    }
    starts.resize(std::min(starts.size(), static_cast<std::size_t>(config.restarts)));

    std::vector<detail::LocalResult> locals(starts.size());
    result.trace.resize(starts.size());
    auto run_one = [&](std::size_t r) {
        detail::WinObjective f(game, resource);
        detail::Objective obj = [&f](std::span<const double> x) { return f(x); };
        const auto &x0 = starts[r].second.values();
        const double f0 = obj(x0);
        detail::LocalResult local{x0, f0, 1, false};
        if (config.method != LocalMethod::Bfgs) {
            auto nm = detail::nelder_mead(obj, x0, 0.5, config.max_evals, config.tolerance);
            if (nm.fx <= local.fx) {
                local = nm;
            }
        }
        if (config.method != LocalMethod::NelderMead) {
            auto polished = detail::bfgs(obj, local.x, config.max_evals, config.tolerance);
            if (polished.fx <= local.fx) {
                polished.converged = polished.converged || local.converged;
                local = polished;
            }
        }
        auto &t = result.trace[r];
        t.kind = starts[r].first;
        t.start_value = 1.0 - f0;
        t.final_value = 1.0 - local.fx;
        t.evals = static_cast<int>(f.evals());
        t.converged = local.converged;
        locals[r] = std::move(local);
    };

    const unsigned workers = std::min<unsigned>(config.threads, static_cast<unsigned>(starts.size()));
    if (workers <= 1) {
        for (std::size_t r = 0; r < starts.size(); ++r) {
            run_one(r);
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t r = w; r < starts.size(); r += workers) {
                    run_one(r);
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    std::size_t best = 0;
    for (std::size_t r = 0; r < locals.size(); ++r) {
        result.total_evals += result.trace[r].evals;
        if (locals[r].fx < locals[best].fx) {
            best = r;
        }
    }
    result.best_value = 1.0 - locals[best].fx;
    result.best_angles = AngleVector(locals[best].x);
    if (config.screen_samples > 0 && result.screen_best > result.best_value) {
        result.best_value = result.screen_best;
        result.best_angles = screen_best_angles;
    }
    return result;
}

} // namespace nlgames
