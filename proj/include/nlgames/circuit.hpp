// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Gate-level circuits for a strategy at one question: resource preparation,
// the u3 layer, measurement. OpenQASM 2.0 export, a small reader for the same
// subset, and replay through the state-vector simulator.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "angles.hpp"
#include "errors.hpp"
#include "game.hpp"
#include "optimize.hpp"
#include "quantum.hpp"

namespace nlgames {

enum class GateKind { H, X, Ry, Cx, U3, Measure };

struct Gate {
    GateKind kind;
    int target = 0;
    int control = -1;
    UnitaryParams params{}; ///< Ry uses params.theta
};

using Circuit = std::vector<Gate>;

/// H on qubit 0, then a CNOT cascade.
inline Circuit ghz_prep(int n) {
    check_arity(n);
    Circuit c{{GateKind::H, 0}};
    for (int q = 1; q < n; ++q) {
        c.push_back({GateKind::Cx, q, q - 1});
    }
    return c;
}

/// Controlled-H as Ry(pi/4), CX, Ry(-pi/4) on the target.
inline void append_controlled_h(Circuit &c, int control, int target) {
    c.push_back({GateKind::Ry, target, -1, {std::numbers::pi / 4, 0, 0}});
    c.push_back({GateKind::Cx, target, control});
    c.push_back({GateKind::Ry, target, -1, {-std::numbers::pi / 4, 0, 0}});
}

/// Ry(2 arccos(1/sqrt3)) on q0, CH(0->1), CX(1->2), CX(0->1), X on q0.
inline Circuit w_prep() {
    Circuit c{{GateKind::Ry, 0, -1, {2.0 * std::acos(1.0 / std::sqrt(3.0)), 0, 0}}};
    append_controlled_h(c, 0, 1);
    c.push_back({GateKind::Cx, 2, 1});
    c.push_back({GateKind::Cx, 1, 0});
    c.push_back({GateKind::X, 0});
    return c;
}

inline Circuit resource_prep(const std::string &resource, int n) {
    if (resource == "ghz") {
        return ghz_prep(n);
    }
    if (resource == "w") {
        if (n != 3) {
            throw ArityError("W preparation is three-qubit");
        }
        return w_prep();
    }
    throw std::invalid_argument("no preparation circuit for resource '" + resource + "'");
}

/// Preparation, then U_{i,x_i} on each qubit, then measurement of every qubit.
inline Circuit strategy_circuit(const std::string &resource, const AngleVector &angles, std::uint32_t question) {
    const int n = angles.players();
    if (question >= (1u << n)) {
        throw IndexError("question index out of range");
    }
    Circuit c = resource_prep(resource, n);
    for (int i = 0; i < n; ++i) {
        const int bit = static_cast<int>((question >> (n - 1 - i)) & 1u);
        c.push_back({GateKind::U3, i, -1, angles.params(i, bit)});
    }
    for (int i = 0; i < n; ++i) {
        c.push_back({GateKind::Measure, i});
    }
    return c;
}

inline int circuit_qubits(const Circuit &c) {
    int n = 0;
    for (const auto &g : c) {
        n = std::max({n, g.target + 1, g.control + 1});
    }
    return n;
}

/// Unitary part of the circuit applied to |0...0>; measurements are skipped.
inline StateVector replay(const Circuit &c, int n) {
    StateVector s = StateVector::basis(n, 0);
    for (const auto &g : c) {
        switch (g.kind) {
        case GateKind::H: s = apply_local(s, g.target, gates::H); break;
        case GateKind::X: s = apply_local(s, g.target, gates::X); break;
        case GateKind::Ry: s = apply_local(s, g.target, gates::ry(g.params.theta)); break;
        case GateKind::U3: s = apply_local(s, g.target, u3(g.params)); break;
        case GateKind::Cx: s = apply_controlled(s, g.control, g.target, gates::X); break;
        case GateKind::Measure: break;
        }
    }
    return s;
}

/// Probability that the measured answers win the game at `question`.
inline double replay_win_probability(const GameSpec &game, const Circuit &c, std::uint32_t question) {
    const auto probs = outcome_probs(replay(c, game.players()));
    double p = 0.0;
    for (std::uint32_t a = 0; a < probs.size(); ++a) {
        if (game.wins(question, a)) {
            p += probs[a];
        }
    }
    return p;
}

namespace detail {

inline std::string qasm_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

inline std::string to_qasm(const Circuit &c, int n) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    os << "qreg q[" << n << "];\ncreg c[" << n << "];\n";
    for (const auto &g : c) {
        const std::string t = "q[" + std::to_string(g.target) + "]";
        switch (g.kind) {
        case GateKind::H: os << "h " << t << ";\n"; break;
        case GateKind::X: os << "x " << t << ";\n"; break;
        case GateKind::Ry: os << "ry(" << detail::qasm_number(g.params.theta) << ") " << t << ";\n"; break;
        case GateKind::Cx: os << "cx q[" << g.control << "]," << t << ";\n"; break;
        case GateKind::U3:
            os << "u3(" << detail::qasm_number(g.params.theta) << "," << detail::qasm_number(g.params.phi) << ","
               << detail::qasm_number(g.params.lambda) << ") " << t << ";\n";
            break;
        case GateKind::Measure: os << "measure " << t << " -> c[" << g.target << "];\n"; break;
        }
    }
    return os.str();
}

struct QasmProgram {
    int qubits = 0;
    Circuit circuit;
};

/// Reads back the subset emitted by to_qasm (h, x, ry, cx, u3, measure).
inline QasmProgram parse_qasm(const std::string &text) {
    static const std::regex qreg(R"(qreg\s+q\[(\d+)\])");
    static const std::regex creg(R"(creg\s+c\[(\d+)\])");
    static const std::regex single(R"((h|x)\s+q\[(\d+)\])");
    static const std::regex ry(R"(ry\(([^)]*)\)\s+q\[(\d+)\])");
    static const std::regex u3g(R"(u3\(([^,]*),([^,]*),([^)]*)\)\s+q\[(\d+)\])");
    static const std::regex cx(R"(cx\s+q\[(\d+)\]\s*,\s*q\[(\d+)\])");
    static const std::regex measure(R"(measure\s+q\[(\d+)\]\s*->\s*c\[(\d+)\])");

    QasmProgram prog;
    std::istringstream in(text);
    std::string stmt;
    std::size_t offset = 0;
    while (std::getline(in, stmt, ';')) {
        const std::size_t at = offset;
        offset += stmt.size() + 1;
        const auto first = stmt.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) {
            continue;
        }
        stmt = stmt.substr(first);
        std::smatch m;
        if (stmt.rfind("OPENQASM", 0) == 0 || stmt.rfind("include", 0) == 0 ||
            std::regex_match(stmt, m, creg)) {
            continue;
        }
        if (std::regex_match(stmt, m, qreg)) {
            prog.qubits = std::stoi(m[1]);
        } else if (std::regex_match(stmt, m, single)) {
            prog.circuit.push_back({m[1] == "h" ? GateKind::H : GateKind::X, std::stoi(m[2])});
        } else if (std::regex_match(stmt, m, ry)) {
            prog.circuit.push_back({GateKind::Ry, std::stoi(m[2]), -1, {parse_angle(m[1].str()), 0, 0}});
        } else if (std::regex_match(stmt, m, u3g)) {
            prog.circuit.push_back({GateKind::U3, std::stoi(m[4]), -1,
                                    {parse_angle(m[1].str()), parse_angle(m[2].str()), parse_angle(m[3].str())}});
        } else if (std::regex_match(stmt, m, cx)) {
            prog.circuit.push_back({GateKind::Cx, std::stoi(m[2]), std::stoi(m[1])});
        } else if (std::regex_match(stmt, m, measure)) {
            prog.circuit.push_back({GateKind::Measure, std::stoi(m[1])});
        } else {
            throw ParseError("unsupported QASM statement '" + stmt + "'", at);
        }
    }
    if (prog.qubits < 1 || prog.qubits > kMaxArity || circuit_qubits(prog.circuit) > prog.qubits) {
        throw ParseError("missing or inconsistent qreg declaration", 0);
    }
    return prog;
}

} // namespace nlgames
