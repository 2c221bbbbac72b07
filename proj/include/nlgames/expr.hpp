// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Text form of Boolean functions.
//
//   expr   := term ("+" term)*        OR
//   term   := xfact ("^" xfact)*      XOR
//   xfact  := factor ("*" factor)*    AND
//   factor := "!" factor | "(" expr ")" | ident
//
// Whitespace is ignored. Identifiers are [A-Za-z_][A-Za-z0-9_]* and must be
// one of the declared variable names; the i-th name is variable i.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "truth_table.hpp"

namespace nlgames {

using VariableNames = std::vector<std::string>;

inline VariableNames question_names(int arity) {
    static const char *names[] = {"x", "y", "z", "w"};
    check_arity(arity);
    return {names, names + arity};
}

inline VariableNames answer_names(int arity) {
    static const char *names[] = {"a", "b", "c", "d"};
    check_arity(arity);
    return {names, names + arity};
}

namespace detail {

class ExprParser {
  public:
    ExprParser(std::string_view text, std::span<const std::string> vars)
        : text_(text), vars_(vars), arity_(static_cast<int>(vars.size())),
          mask_(TruthTable::full_mask(arity_)) {}

    TruthTable parse() {
        const std::uint32_t bits = parse_or();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return {arity_, bits};
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::uint32_t parse_or() {
        std::uint32_t v = parse_xor();
        while (accept('+')) {
            v |= parse_xor();
        }
        return v;
    }

    std::uint32_t parse_xor() {
        std::uint32_t v = parse_and();
        while (accept('^')) {
            v ^= parse_and();
        }
        return v;
    }

    std::uint32_t parse_and() {
        std::uint32_t v = parse_factor();
        while (accept('*')) {
            v &= parse_factor();
        }
        return v;
    }

    std::uint32_t parse_factor() {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw ParseError("unexpected end of expression", pos_);
        }
        if (accept('!')) {
            return ~parse_factor() & mask_;
        }
        if (accept('(')) {
            const std::uint32_t v = parse_or();
            if (!accept(')')) {
                throw ParseError("expected ')'", pos_);
            }
            return v;
        }
        const char c = text_[pos_];
        if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) {
            throw ParseError(std::string("unexpected '") + c + "'", pos_);
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name(text_.substr(start, pos_ - start));
        const auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) {
            throw UnknownVariableError(name, start);
        }
        return TruthTable::projection(arity_, static_cast<int>(it - vars_.begin())).bits();
    }

    std::string_view text_;
    std::span<const std::string> vars_;
    int arity_;
    std::uint32_t mask_;
    std::size_t pos_ = 0;
};

// A product term: `care` marks the variables present, `value` their polarity.
struct Cube {
    std::uint32_t care = 0;
    std::uint32_t value = 0;

    [[nodiscard]] bool covers(std::uint32_t row) const { return (row & care) == value; }
};

inline std::uint32_t cube_rows(const Cube &cube, int arity) {
    std::uint32_t rows = 0;
    for (std::uint32_t k = 0; k < (1u << arity); ++k) {
        if (cube.covers(k)) {
            rows |= 1u << k;
        }
    }
    return rows;
}

inline int popcount(std::uint32_t v) {
    int c = 0;
    for (; v != 0; v &= v - 1) {
        ++c;
    }
    return c;
}

} // namespace detail

inline TruthTable parse_expr(std::string_view text, std::span<const std::string> vars) {
    check_arity(static_cast<int>(vars.size()));
    return detail::ExprParser(text, vars).parse();
}

/// Canonical sum-of-products: prime implicants chosen by essential-first then
/// greedy cover, with every tie broken by a fixed cube order. Constants render
/// as "v*!v" and "v + !v" with v the first variable, so the grammar stays closed.
inline std::string format_expr(const TruthTable &tt, std::span<const std::string> vars) {
    using detail::Cube;
    const int n = tt.arity();
    if (static_cast<int>(vars.size()) != n) {
        throw ArityError("variable name count does not match arity");
    }
    if (tt.bits() == 0) {
        return vars[0] + "*!" + vars[0];
    }
    if (tt.bits() == TruthTable::full_mask(n)) {
        return vars[0] + " + !" + vars[0];
    }

    // Implicants are cubes whose rows all lie in the on-set; primes are the maximal ones.
    std::vector<std::pair<Cube, std::uint32_t>> implicants;
    for (std::uint32_t care = 0; care < (1u << n); ++care) {
        for (std::uint32_t value = care;; value = (value - 1) & care) {
            const Cube c{care, value};
            const std::uint32_t rows = detail::cube_rows(c, n);
            if ((rows & ~tt.bits()) == 0) {
                implicants.emplace_back(c, rows);
            }
            if (value == 0) {
                break;
            }
        }
    }
    std::vector<std::pair<Cube, std::uint32_t>> primes;
    for (const auto &[c, rows] : implicants) {
        const bool dominated = std::any_of(implicants.begin(), implicants.end(), [&](const auto &o) {
            return o.second != rows && (o.second & rows) == rows;
        });
        if (!dominated) {
            primes.emplace_back(c, rows);
        }
    }
    // Fewer literals first, then by the variables used (variable 1 first), then positive polarity first.
    auto cube_less = [n](const Cube &a, const Cube &b) {
        const int la = detail::popcount(a.care), lb = detail::popcount(b.care);
        if (la != lb) {
            return la < lb;
        }
        for (int i = 0; i < n; ++i) {
            const std::uint32_t bit = 1u << (n - 1 - i);
            const bool ia = (a.care & bit) != 0, ib = (b.care & bit) != 0;
            if (ia != ib) {
                return ia;
            }
        }
        for (int i = 0; i < n; ++i) {
            const std::uint32_t bit = 1u << (n - 1 - i);
            const bool va = (a.value & bit) != 0, vb = (b.value & bit) != 0;
            if (va != vb) {
                return va;
            }
        }
        return false;
    };
    std::sort(primes.begin(), primes.end(),
              [&](const auto &a, const auto &b) { return cube_less(a.first, b.first); });

    std::vector<Cube> chosen;
    std::uint32_t covered = 0;
    for (std::uint32_t k = 0; k < tt.rows(); ++k) {
        if (!tt.at(k)) {
            continue;
        }
        int holders = 0;
        std::size_t last = 0;
        for (std::size_t p = 0; p < primes.size(); ++p) {
            if ((primes[p].second >> k) & 1u) {
                ++holders;
                last = p;
            }
        }
        if (holders == 1 && (covered & primes[last].second) != primes[last].second) {
            chosen.push_back(primes[last].first);
            covered |= primes[last].second;
        }
    }
    while (covered != tt.bits()) {
        std::size_t best = 0;
        int best_gain = -1;
        for (std::size_t p = 0; p < primes.size(); ++p) {
            const int gain = detail::popcount(primes[p].second & ~covered);
            if (gain > best_gain) {
                best_gain = gain;
                best = p;
            }
        }
        chosen.push_back(primes[best].first);
        covered |= primes[best].second;
    }
    std::sort(chosen.begin(), chosen.end(), cube_less);

    std::string out;
    for (const auto &c : chosen) {
        if (!out.empty()) {
            out += " + ";
        }
        std::string term;
        for (int i = 0; i < n; ++i) {
            const std::uint32_t bit = 1u << (n - 1 - i);
            if (!(c.care & bit)) {
                continue;
            }
            if (!term.empty()) {
                term += '*';
            }
            if (!(c.value & bit)) {
                term += '!';
            }
            term += vars[static_cast<std::size_t>(i)];
        }
        out += term;
    }
    return out;
}

} // namespace nlgames
