// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace nlgames {

inline constexpr int kMaxArity = 4;

/// A bit vector of questions or answers. Element 0 belongs to variable 1
/// (player 1) and is the most significant bit of the packed index.
using BitVector = std::vector<std::uint8_t>;

inline void check_arity(int arity) {
    if (arity < 1 || arity > kMaxArity) {
        throw ArityError("arity " + std::to_string(arity) + " outside [1, " +
                         std::to_string(kMaxArity) + "]");
    }
}

/// Packs an assignment into its row index: variable 1 is the most significant bit.
inline std::uint32_t pack_bits(std::span<const std::uint8_t> bits) {
    std::uint32_t index = 0;
    for (auto b : bits) {
        index = (index << 1) | (b != 0 ? 1u : 0u);
    }
    return index;
}

inline BitVector unpack_bits(std::uint32_t index, int width) {
    BitVector bits(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) {
        bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((index >> (width - 1 - i)) & 1u);
    }
    return bits;
}

/// Renders an index as a bit string, variable 1 first ("011").
inline std::string bit_string(std::uint32_t index, int width) {
    std::string s;
    for (int i = 0; i < width; ++i) {
        s.push_back(((index >> (width - 1 - i)) & 1u) ? '1' : '0');
    }
    return s;
}

/// Boolean function B^n -> B stored as a 2^n-bit mask; bit k is the value on
/// the assignment whose packed index is k.
class TruthTable {
  public:
    TruthTable(int arity, std::uint32_t bits) : arity_(arity), bits_(bits) {
        check_arity(arity);
        if ((bits & ~full_mask(arity)) != 0) {
            throw std::invalid_argument("truth table bits exceed 2^arity positions");
        }
    }

    /// Builds a table from a predicate over packed assignment indices.
    template <typename Predicate>
    static TruthTable from_predicate(int arity, Predicate &&predicate) {
        check_arity(arity);
        std::uint32_t bits = 0;
        for (std::uint32_t k = 0; k < (1u << arity); ++k) {
            if (predicate(k)) {
                bits |= 1u << k;
            }
        }
        return {arity, bits};
    }

    static TruthTable constant(int arity, bool value) {
        check_arity(arity);
        return {arity, value ? full_mask(arity) : 0u};
    }

    /// The function returning variable `var` (0-based).
    static TruthTable projection(int arity, int var) {
        check_arity(arity);
        if (var < 0 || var >= arity) {
            throw IndexError("variable index out of range");
        }
        const std::uint32_t flip = 1u << (arity - 1 - var);
        return from_predicate(arity, [flip](std::uint32_t k) { return (k & flip) != 0; });
    }

    static constexpr std::uint32_t full_mask(int arity) {
        return arity >= 5 ? 0xffffffffu : ((1u << (1u << arity)) - 1u);
    }

    [[nodiscard]] int arity() const noexcept { return arity_; }
    [[nodiscard]] std::uint32_t bits() const noexcept { return bits_; }
    [[nodiscard]] std::uint32_t rows() const noexcept { return 1u << arity_; }

    /// Value on the assignment with packed index `index`.
    [[nodiscard]] bool at(std::uint32_t index) const noexcept { return ((bits_ >> index) & 1u) != 0; }

    friend bool operator==(const TruthTable &, const TruthTable &) = default;
    friend auto operator<=>(const TruthTable &, const TruthTable &) = default;

  private:
    int arity_;
    std::uint32_t bits_;
};

inline bool evaluate(const TruthTable &tt, std::span<const std::uint8_t> assignment) {
    if (assignment.size() != static_cast<std::size_t>(tt.arity())) {
        throw ArityError("assignment length " + std::to_string(assignment.size()) +
                         " does not match arity " + std::to_string(tt.arity()));
    }
    return tt.at(pack_bits(assignment));
}

inline bool is_essential(const TruthTable &tt, int var) {
    if (var < 0 || var >= tt.arity()) {
        throw IndexError("variable index out of range");
    }
    const std::uint32_t flip = 1u << (tt.arity() - 1 - var);
    for (std::uint32_t k = 0; k < tt.rows(); ++k) {
        if (tt.at(k) != tt.at(k ^ flip)) {
            return true;
        }
    }
    return false;
}

inline bool all_essential(const TruthTable &tt) {
    for (int v = 0; v < tt.arity(); ++v) {
        if (!is_essential(tt, v)) {
            return false;
        }
    }
    return true;
}

/// Every function of arity n that depends on all of its inputs, ascending by mask.
inline std::vector<TruthTable> enumerate_essential(int n) {
    check_arity(n);
    std::vector<TruthTable> out;
    const std::uint64_t count = 1ull << (1u << n);
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        TruthTable tt(n, static_cast<std::uint32_t>(bits));
        if (all_essential(tt)) {
            out.push_back(tt);
        }
    }
    return out;
}

inline TruthTable negate(const TruthTable &tt) {
    return {tt.arity(), ~tt.bits() & TruthTable::full_mask(tt.arity())};
}

/// Substitutes x_var -> !x_var.
inline TruthTable negate_variable(const TruthTable &tt, int var) {
    if (var < 0 || var >= tt.arity()) {
        throw IndexError("variable index out of range");
    }
    const std::uint32_t flip = 1u << (tt.arity() - 1 - var);
    return TruthTable::from_predicate(tt.arity(), [&](std::uint32_t k) { return tt.at(k ^ flip); });
}

} // namespace nlgames
