// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Bell / Mermin operators as signed sums of tensor monomials. Every player has
// two observables (setting 0 and setting 1); a monomial picks one setting per player.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "optimize.hpp"
#include "quantum.hpp"

namespace nlgames {

/// Hermitian single-qubit observable with eigenvalues +-1.
class Observable {
  public:
    Observable(const Mat2 &matrix, std::string label) : matrix_(matrix), label_(std::move(label)) {
        if (max_abs_diff(matrix, matrix.adjoint()) > 1e-12) {
            throw NumericError("observable '" + label_ + "' is not Hermitian");
        }
        if (max_abs_diff(matrix * matrix, Mat2::identity()) > 1e-10) {
            throw NumericError("observable '" + label_ + "' does not square to the identity");
        }
    }

    [[nodiscard]] const Mat2 &matrix() const noexcept { return matrix_; }
    [[nodiscard]] const std::string &label() const noexcept { return label_; }

  private:
    Mat2 matrix_;
    std::string label_;
};

namespace observables {
inline Observable X() { return {gates::X, "X"}; }
inline Observable Y() { return {gates::Y, "Y"}; }
inline Observable Z() { return {gates::Z, "Z"}; }
inline Observable z_plus_x() { return {kInvSqrt2 * (gates::Z + gates::X), "(Z+X)/√2"}; }
inline Observable z_minus_x() { return {kInvSqrt2 * (gates::Z - gates::X), "(Z−X)/√2"}; }
} // namespace observables

/// U†ZU: measuring Z after applying U.
inline Observable observable_from_params(const UnitaryParams &p, std::string label = "O") {
    const Mat2 u = u3(p);
    return {u.adjoint() * gates::Z * u, std::move(label)};
}

struct MonomialTerm {
    double coeff = 1.0;
    std::vector<int> settings; ///< setting index (0 or 1) per player
};

class MerminOperator {
  public:
    using SettingPair = std::array<Observable, 2>;

    MerminOperator(std::vector<SettingPair> observables, std::vector<MonomialTerm> terms)
        : observables_(std::move(observables)), terms_(std::move(terms)) {
        check_arity(qubits());
        for (const auto &t : terms_) {
            if (t.settings.size() != observables_.size()) {
                throw ArityError("monomial length does not match the qubit count");
            }
            for (int s : t.settings) {
                if (s != 0 && s != 1) {
                    throw IndexError("setting index must be 0 or 1");
                }
            }
        }
    }

    [[nodiscard]] int qubits() const noexcept { return static_cast<int>(observables_.size()); }
    [[nodiscard]] const std::vector<MonomialTerm> &terms() const noexcept { return terms_; }
    [[nodiscard]] const Observable &observable(int player, int setting) const {
        return observables_.at(static_cast<std::size_t>(player)).at(static_cast<std::size_t>(setting));
    }
    [[nodiscard]] const Observable &factor(const MonomialTerm &term, int player) const {
        return observable(player, term.settings.at(static_cast<std::size_t>(player)));
    }

    /// Signed tensor-monomial text, e.g. "+ X⊗X⊗Y − Y⊗Y⊗Y".
    [[nodiscard]] std::string to_string() const {
        std::string out;
        for (const auto &t : terms_) {
            if (!out.empty()) {
                out += ' ';
            }
            out += t.coeff < 0 ? "− " : "+ ";
            const double mag = std::abs(t.coeff);
            if (mag != 1.0) {
                out += std::to_string(mag) + "·";
            }
            for (int i = 0; i < qubits(); ++i) {
                if (i > 0) {
                    out += "⊗";
                }
                out += factor(t, i).label();
            }
        }
        return out;
    }

    friend MerminOperator combine(const MerminOperator &a, const MerminOperator &b, double sign) {
        if (a.qubits() != b.qubits()) {
            throw ArityError("operators act on different qubit counts");
        }
        for (int i = 0; i < a.qubits(); ++i) {
            for (int s = 0; s < 2; ++s) {
                if (max_abs_diff(a.observable(i, s).matrix(), b.observable(i, s).matrix()) > 0.0) {
                    throw std::invalid_argument("operators use different observables");
                }
            }
        }
        auto terms = a.terms_;
        for (auto t : b.terms_) {
            t.coeff *= sign;
            terms.push_back(std::move(t));
        }
        return {a.observables_, std::move(terms)};
    }

    friend MerminOperator operator+(const MerminOperator &a, const MerminOperator &b) { return combine(a, b, 1.0); }
    friend MerminOperator operator-(const MerminOperator &a, const MerminOperator &b) { return combine(a, b, -1.0); }

  private:
    std::vector<SettingPair> observables_;
    std::vector<MonomialTerm> terms_;
};

/// <psi| O_1 ⊗ ... ⊗ O_n |psi> for one monomial.
inline Complex monomial_expectation(const MerminOperator &op, const MonomialTerm &term, const StateVector &state) {
    StateVector applied = state;
    for (int i = 0; i < op.qubits(); ++i) {
        applied = apply_local(applied, i, op.factor(term, i).matrix());
    }
    Complex acc = 0.0;
    for (std::size_t k = 0; k < state.dimension(); ++k) {
        acc += std::conj(state.amplitude(k)) * applied.amplitude(k);
    }
    return acc;
}

inline double expectation(const MerminOperator &op, const StateVector &state) {
    if (op.qubits() != state.qubits()) {
        throw ArityError("operator and state have different qubit counts");
    }
    Complex total = 0.0;
    for (const auto &t : op.terms()) {
        total += t.coeff * monomial_expectation(op, t, state);
    }
    if (std::abs(total.imag()) > 1e-10) {
        throw NumericError("expectation has an imaginary part of " + std::to_string(total.imag()));
    }
    return total.real();
}

/// Z⊗(Z+X)/√2 + X⊗(Z+X)/√2 + Z⊗(Z−X)/√2 − X⊗(Z−X)/√2
inline MerminOperator build_bell() {
    using namespace observables;
    return {{{Z(), X()}, {z_plus_x(), z_minus_x()}},
            {{1.0, {0, 0}}, {1.0, {1, 0}}, {1.0, {0, 1}}, {-1.0, {1, 1}}}};
}

inline std::vector<MerminOperator::SettingPair> settings_table(const std::array<Observable, 3> &setting0,
                                                               const std::array<Observable, 3> &setting1) {
    return {{setting0[0], setting1[0]}, {setting0[1], setting1[1]}, {setting0[2], setting1[2]}};
}

/// O10⊗O20⊗O31 + O10⊗O21⊗O30 + O11⊗O20⊗O30 − O11⊗O21⊗O31
inline MerminOperator build_m3(const std::array<Observable, 3> &setting0, const std::array<Observable, 3> &setting1) {
    return {settings_table(setting0, setting1),
            {{1.0, {0, 0, 1}}, {1.0, {0, 1, 0}}, {1.0, {1, 0, 0}}, {-1.0, {1, 1, 1}}}};
}

/// M3 with the roles of the two settings exchanged.
inline MerminOperator build_m3_prime(const std::array<Observable, 3> &setting0,
                                     const std::array<Observable, 3> &setting1) {
    return {settings_table(setting0, setting1),
            {{1.0, {1, 1, 0}}, {1.0, {1, 0, 1}}, {1.0, {0, 1, 1}}, {-1.0, {0, 0, 0}}}};
}

/// Observables U_{i,q}†ZU_{i,q} of a three-player strategy, labelled "O{i},{q}" (1-based players).
inline std::pair<std::array<Observable, 3>, std::array<Observable, 3>> strategy_observables(const AngleVector &angles) {
    if (angles.players() != 3) {
        throw ArityError("Mermin operators here are three-player");
    }
    auto make = [&](int i, int q) {
        return observable_from_params(angles.params(i, q), "O" + std::to_string(i + 1) + "," + std::to_string(q));
    };
    return {{make(0, 0), make(1, 0), make(2, 0)}, {make(0, 1), make(1, 1), make(2, 1)}};
}

/// M3 − M3'
inline MerminOperator build_t1(const AngleVector &angles) {
    const auto [s0, s1] = strategy_observables(angles);
    return build_m3(s0, s1) - build_m3_prime(s0, s1);
}

/// M3 + M3'
inline MerminOperator build_t2(const AngleVector &angles) {
    const auto [s0, s1] = strategy_observables(angles);
    return build_m3(s0, s1) + build_m3_prime(s0, s1);
}

struct ValueRange {
    double min = 0.0;
    double max = 0.0;
};

/// Range of the operator when every observable is replaced by a predetermined +-1
/// value, over all 2^(2n) assignments.
inline ValueRange local_realistic_range(const MerminOperator &op) {
    const int n = op.qubits();
    ValueRange r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::uint32_t assignment = 0; assignment < (1u << (2 * n)); ++assignment) {
        double v = 0.0;
        for (const auto &t : op.terms()) {
            double prod = t.coeff;
            for (int i = 0; i < n; ++i) {
                const int bit = 2 * i + t.settings[static_cast<std::size_t>(i)];
                prod *= ((assignment >> bit) & 1u) ? -1.0 : 1.0;
            }
            v += prod;
        }
        r.min = std::min(r.min, v);
        r.max = std::max(r.max, v);
    }
    return r;
}

struct QuestionCorrelation {
    std::uint32_t question = 0;
    double win_probability = 0.0;
    double correlator = 0.0;  ///< ±(2p − 1), sign from f(x) and the polarity of g
    double monomial = 0.0;    ///< <⊗_i U_{i,x_i}†ZU_{i,x_i}>
    bool holds = false;       ///< |correlator − monomial| <= 1e-10
};

/// Checks 2p(x) − 1 = <monomial(x)> question by question for a game whose answer
/// side is the n-bit parity (or its negation). When f(x) = 1 the winning parity is
/// odd, so the identity reads 1 − 2p(x) = <monomial(x)>.
inline std::vector<QuestionCorrelation> game_monomial_consistency(const GameSpec &game, const QuantumStrategy &strat) {
    const int n = game.players();
    detail::check_players(game, strat.players());
    const auto parity = TruthTable::from_predicate(n, [](std::uint32_t k) { return detail::popcount(k) % 2 == 1; });
    double polarity = 0.0;
    if (game.answer_fn() == parity) {
        polarity = 1.0;
    } else if (game.answer_fn() == negate(parity)) {
        polarity = -1.0;
    } else {
        throw std::invalid_argument("answer side is not of parity form");
    }
    const auto probs = question_win_probabilities(game, strat);
    std::vector<QuestionCorrelation> report;
    for (std::uint32_t x = 0; x < probs.size(); ++x) {
        StateVector applied = strat.resource();
        for (int i = 0; i < n; ++i) {
            const int bit = static_cast<int>((x >> (n - 1 - i)) & 1u);
            applied = apply_local(applied, i, observable_from_params(strat.params(i, bit)).matrix());
        }
        Complex mono = 0.0;
        for (std::size_t k = 0; k < applied.dimension(); ++k) {
            mono += std::conj(strat.resource().amplitude(k)) * applied.amplitude(k);
        }
        const double sign = (game.question_fn().at(x) ? -1.0 : 1.0) * polarity;
        QuestionCorrelation q;
        q.question = x;
        q.win_probability = probs[x];
        q.correlator = sign * (2.0 * probs[x] - 1.0);
        q.monomial = mono.real();
        q.holds = std::abs(q.correlator - q.monomial) <= 1e-10 && std::abs(mono.imag()) <= 1e-10;
        report.push_back(q);
    }
    return report;
}

} // namespace nlgames
