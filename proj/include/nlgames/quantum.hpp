// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "game.hpp"

namespace nlgames {

using Complex = std::complex<double>;

inline constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<Complex, 4> m{};

    constexpr Complex &operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
    constexpr const Complex &operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

    static constexpr Mat2 identity() { return {{Complex(1), Complex(0), Complex(0), Complex(1)}}; }

    [[nodiscard]] Mat2 adjoint() const {
        return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }

    friend Mat2 operator*(const Mat2 &a, const Mat2 &b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
            }
        }
        return r;
    }
    friend Mat2 operator+(const Mat2 &a, const Mat2 &b) {
        Mat2 r;
        for (std::size_t k = 0; k < 4; ++k) {
            r.m[k] = a.m[k] + b.m[k];
        }
        return r;
    }
    friend Mat2 operator-(const Mat2 &a, const Mat2 &b) {
        Mat2 r;
        for (std::size_t k = 0; k < 4; ++k) {
            r.m[k] = a.m[k] - b.m[k];
        }
        return r;
    }
    friend Mat2 operator*(double s, const Mat2 &a) {
        Mat2 r;
        for (std::size_t k = 0; k < 4; ++k) {
            r.m[k] = s * a.m[k];
        }
        return r;
    }
};

/// Largest entry-wise modulus of a - b.
inline double max_abs_diff(const Mat2 &a, const Mat2 &b) {
    double d = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        d = std::max(d, std::abs(a.m[k] - b.m[k]));
    }
    return d;
}

inline bool is_unitary(const Mat2 &u, double tol) {
    return max_abs_diff(u.adjoint() * u, Mat2::identity()) <= tol;
}

namespace gates {
inline const Mat2 I = Mat2::identity();
inline const Mat2 X{{Complex(0), Complex(1), Complex(1), Complex(0)}};
inline const Mat2 Y{{Complex(0), Complex(0, -1), Complex(0, 1), Complex(0)}};
inline const Mat2 Z{{Complex(1), Complex(0), Complex(0), Complex(-1)}};
inline const Mat2 H = kInvSqrt2 * Mat2{{Complex(1), Complex(1), Complex(1), Complex(-1)}};

inline Mat2 ry(double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    return {{Complex(c), Complex(-s), Complex(s), Complex(c)}};
}
} // namespace gates

/// Angles of the general single-qubit unitary, in radians.
struct UnitaryParams {
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;

    friend bool operator==(const UnitaryParams &, const UnitaryParams &) = default;
};

/// [[cos(t/2), -e^{il} sin(t/2)], [e^{ip} sin(t/2), e^{i(p+l)} cos(t/2)]]
inline Mat2 u3(const UnitaryParams &p) {
    if (!std::isfinite(p.theta) || !std::isfinite(p.phi) || !std::isfinite(p.lambda)) {
        throw NumericError("non-finite unitary angle");
    }
    const double c = std::cos(p.theta / 2), s = std::sin(p.theta / 2);
    const Complex el = std::polar(1.0, p.lambda);
    const Complex ep = std::polar(1.0, p.phi);
    return {{Complex(c), -el * s, ep * s, ep * el * c}};
}

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

/// Pure state of 1..4 qubits; qubit 0 (player 1) is the most significant index bit.
class StateVector {
  public:
    explicit StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
        qubits_ = 0;
        while ((std::size_t{1} << qubits_) < amps_.size()) {
            ++qubits_;
        }
        if (amps_.empty() || (std::size_t{1} << qubits_) != amps_.size()) {
            throw ArityError("amplitude count must be a power of two");
        }
        check_arity(qubits_);
        if (std::abs(norm() - 1.0) > kNormTolerance) {
            throw NumericError("state vector is not normalized");
        }
    }

    /// Computational basis state |index>.
    static StateVector basis(int qubits, std::uint32_t index) {
        check_arity(qubits);
        std::vector<Complex> a(std::size_t{1} << qubits);
        if (index >= a.size()) {
            throw IndexError("basis index out of range");
        }
        a[index] = 1.0;
        return StateVector(std::move(a));
    }

    [[nodiscard]] int qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] const Complex &amplitude(std::size_t k) const { return amps_.at(k); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }

    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

  private:
    struct Unchecked {};
    StateVector(std::vector<Complex> amplitudes, int qubits, Unchecked)
        : amps_(std::move(amplitudes)), qubits_(qubits) {}

    friend StateVector apply_local(const StateVector &, int, const Mat2 &);
    friend StateVector apply_controlled(const StateVector &, int, int, const Mat2 &);

    std::vector<Complex> amps_;
    int qubits_ = 0;
};

namespace detail {

/// Applies u to `qubit` of an n-qubit amplitude buffer in place.
inline void apply_local_inplace(std::span<Complex> amps, int n, int qubit, const Mat2 &u) {
    const std::size_t stride = std::size_t{1} << (n - 1 - qubit);
    for (std::size_t k = 0; k < amps.size(); ++k) {
        if (k & stride) {
            continue;
        }
        const Complex a0 = amps[k], a1 = amps[k | stride];
        amps[k] = u.m[0] * a0 + u.m[1] * a1;
        amps[k | stride] = u.m[2] * a0 + u.m[3] * a1;
    }
}

inline void check_qubit(int qubit, int n) {
    if (qubit < 0 || qubit >= n) {
        throw IndexError("qubit index out of range");
    }
}

} // namespace detail

inline StateVector apply_local(const StateVector &state, int qubit, const Mat2 &u) {
    detail::check_qubit(qubit, state.qubits());
    if (!is_unitary(u, kUnitaryTolerance)) {
        throw NumericError("matrix is not unitary");
    }
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    detail::apply_local_inplace(amps, state.qubits(), qubit, u);
    return {std::move(amps), state.qubits(), StateVector::Unchecked{}};
}

/// Applies u to `target` on the branch where `control` is |1>.
inline StateVector apply_controlled(const StateVector &state, int control, int target, const Mat2 &u) {
    const int n = state.qubits();
    detail::check_qubit(control, n);
    detail::check_qubit(target, n);
    if (control == target) {
        throw IndexError("control and target coincide");
    }
    if (!is_unitary(u, kUnitaryTolerance)) {
        throw NumericError("matrix is not unitary");
    }
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    const std::size_t cbit = std::size_t{1} << (n - 1 - control);
    const std::size_t tbit = std::size_t{1} << (n - 1 - target);
    for (std::size_t k = 0; k < amps.size(); ++k) {
        if (!(k & cbit) || (k & tbit)) {
            continue;
        }
        const Complex a0 = amps[k], a1 = amps[k | tbit];
        amps[k] = u.m[0] * a0 + u.m[1] * a1;
        amps[k | tbit] = u.m[2] * a0 + u.m[3] * a1;
    }
    return {std::move(amps), n, StateVector::Unchecked{}};
}

inline std::vector<double> outcome_probs(const StateVector &state) {
    std::vector<double> p;
    p.reserve(state.dimension());
    for (const auto &a : state.amplitudes()) {
        p.push_back(std::norm(a));
    }
    return p;
}

// Resource states.

inline StateVector make_epr() {
    const double r = kInvSqrt2;
    return StateVector({r, 0.0, 0.0, r});
}

inline StateVector make_ghz(int n) {
    if (n < 2 || n > kMaxArity) {
        throw ArityError("GHZ state needs 2 to 4 qubits");
    }
    std::vector<Complex> a(std::size_t{1} << n);
    a.front() = kInvSqrt2;
    a.back() = kInvSqrt2;
    return StateVector(std::move(a));
}

inline StateVector make_w() {
    const double r = 1.0 / std::sqrt(3.0);
    return StateVector({0.0, r, r, 0.0, r, 0.0, 0.0, 0.0});
}

/// (|000> + i|111>) / sqrt(2)
inline StateVector make_ghz_phase() {
    std::vector<Complex> a(8);
    a[0] = kInvSqrt2;
    a[7] = Complex(0.0, kInvSqrt2);
    return StateVector(std::move(a));
}

/// Resolves "epr", "ghz", "w" or "ghz-j" for n players.
inline StateVector make_resource(const std::string &name, int n) {
    if (name == "epr") {
        if (n != 2) {
            throw ArityError("EPR resource is two-qubit");
        }
        return make_epr();
    }
    if (name == "ghz") {
        return make_ghz(n);
    }
    if (name == "w" || name == "ghz-j") {
        if (n != 3) {
            throw ArityError("resource '" + name + "' is three-qubit");
        }
        return name == "w" ? make_w() : make_ghz_phase();
    }
    throw std::invalid_argument("unknown resource '" + name + "'");
}

/// "index real imag" per line.
inline void dump_amplitudes(std::ostream &os, const StateVector &state) {
    const auto flags = os.flags();
    const auto prec = os.precision(17);
    for (std::size_t k = 0; k < state.dimension(); ++k) {
        os << k << ' ' << state.amplitude(k).real() << ' ' << state.amplitude(k).imag() << '\n';
    }
    os.precision(prec);
    os.flags(flags);
}

/// Shared resource plus one unitary per (player, question bit), stored at 2*player + bit.
class QuantumStrategy {
  public:
    QuantumStrategy(StateVector resource, std::vector<UnitaryParams> params)
        : resource_(std::move(resource)), params_(std::move(params)) {
        if (params_.size() != 2 * static_cast<std::size_t>(resource_.qubits())) {
            throw ArityError("strategy needs exactly two unitaries per player");
        }
    }

    /// From 6n angles ordered (theta, phi, lambda) for (player 1, q=0), (player 1, q=1), ...
    static QuantumStrategy from_angles(StateVector resource, std::span<const double> angles) {
        if (angles.size() != 6 * static_cast<std::size_t>(resource.qubits())) {
            throw ArityError("angle vector must have 6n entries");
        }
        std::vector<UnitaryParams> params;
        for (std::size_t k = 0; k < angles.size(); k += 3) {
            params.push_back({angles[k], angles[k + 1], angles[k + 2]});
        }
        return {std::move(resource), std::move(params)};
    }

    [[nodiscard]] int players() const noexcept { return resource_.qubits(); }
    [[nodiscard]] const StateVector &resource() const noexcept { return resource_; }
    [[nodiscard]] const std::vector<UnitaryParams> &params() const noexcept { return params_; }
    [[nodiscard]] const UnitaryParams &params(int player, int question_bit) const {
        return params_.at(static_cast<std::size_t>(2 * player + question_bit));
    }

    [[nodiscard]] std::vector<double> angles() const {
        std::vector<double> out;
        for (const auto &p : params_) {
            out.insert(out.end(), {p.theta, p.phi, p.lambda});
        }
        return out;
    }

  private:
    StateVector resource_;
    std::vector<UnitaryParams> params_;
};

/// State the players measure on a given packed question.
inline StateVector strategy_state(const QuantumStrategy &strat, std::uint32_t question) {
    const int n = strat.players();
    StateVector state = strat.resource();
    for (int i = 0; i < n; ++i) {
        const int bit = static_cast<int>((question >> (n - 1 - i)) & 1u);
        state = apply_local(state, i, u3(strat.params(i, bit)));
    }
    return state;
}

namespace detail {

/// Per-question win probabilities with no allocation in the inner loop.
inline void question_win_probabilities(const GameSpec &game, std::span<const Complex> resource,
                                       std::span<const Mat2> unitaries, std::span<double> out) {
    const int n = game.players();
    const std::size_t dim = std::size_t{1} << n;
    std::array<Complex, std::size_t{1} << kMaxArity> buf{};
    for (std::uint32_t x = 0; x < dim; ++x) {
        std::copy(resource.begin(), resource.end(), buf.begin());
        for (int i = 0; i < n; ++i) {
            const std::size_t bit = (x >> (n - 1 - i)) & 1u;
            apply_local_inplace(std::span<Complex>(buf.data(), dim), n, i, unitaries[2 * static_cast<std::size_t>(i) + bit]);
        }
        const bool target = game.question_fn().at(x);
        double p = 0.0;
        for (std::uint32_t a = 0; a < dim; ++a) {
            if (game.answer_fn().at(a) == target) {
                p += std::norm(buf[a]);
            }
        }
        out[x] = p;
    }
}

inline void check_players(const GameSpec &game, int qubits) {
    if (game.players() != qubits) {
        throw ArityError("resource qubit count does not match the number of players");
    }
}

} // namespace detail

/// Win probability for each packed question, in question order.
inline std::vector<double> question_win_probabilities(const GameSpec &game, const QuantumStrategy &strat) {
    detail::check_players(game, strat.players());
    std::vector<Mat2> us;
    for (const auto &p : strat.params()) {
        us.push_back(u3(p));
    }
    std::vector<double> out(std::size_t{1} << game.players());
    detail::question_win_probabilities(game, strat.resource().amplitudes(), us, out);
    return out;
}

/// Mean over uniformly drawn questions of the probability that the measured answers win.
inline double win_probability(const GameSpec &game, const QuantumStrategy &strat) {
    const auto per_question = question_win_probabilities(game, strat);
    double total = 0.0;
    for (double p : per_question) {
        total += p;
    }
    return total / static_cast<double>(per_question.size());
}

} // namespace nlgames
