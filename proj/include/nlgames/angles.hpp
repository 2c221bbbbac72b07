// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Angle text: arithmetic over numbers and `pi`, e.g. "-3*pi/4" or "(pi-2)/6".

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "optimize.hpp"

namespace nlgames {

namespace detail {

class AngleParser {
  public:
    explicit AngleParser(std::string_view text) : text_(text) {}

    double parse() {
        const double v = sum();
        skip_space();
        if (pos_ != text_.size()) {
            throw ParseError("unexpected character in angle", pos_);
        }
        return v;
    }

  private:
    double sum() {
        double v = product();
        for (;;) {
            skip_space();
            if (accept('+')) {
                v += product();
            } else if (accept('-')) {
                v -= product();
            } else {
                return v;
            }
        }
    }

    double product() {
        double v = unary();
        for (;;) {
            skip_space();
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                v /= unary();
            } else {
                return v;
            }
        }
    }

    double unary() {
        skip_space();
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return primary();
    }

    double primary() {
        skip_space();
        if (accept('(')) {
            const double v = sum();
            skip_space();
            if (!accept(')')) {
                throw ParseError("expected ')'", pos_);
            }
            return v;
        }
        if (text_.substr(pos_, 2) == "pi") {
            pos_ += 2;
            return std::numbers::pi;
        }
        const char *begin = text_.data() + pos_;
        const char *end = text_.data() + text_.size();
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr == begin) {
            throw ParseError("expected number or 'pi'", pos_);
        }
        pos_ += static_cast<std::size_t>(ptr - begin);
        return v;
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline double parse_angle(std::string_view text) {
    const double v = detail::AngleParser(text).parse();
    if (!std::isfinite(v)) {
        throw NumericError("angle is not finite");
    }
    return v;
}

/// Angles separated by commas and/or whitespace; '#' starts a comment to end of line.
inline std::vector<double> parse_angle_list(std::string_view text) {
    std::vector<double> out;
    std::string token;
    bool comment = false;
    auto flush = [&] {
        if (!token.empty()) {
            out.push_back(parse_angle(token));
            token.clear();
        }
    };
    for (char c : text) {
        if (comment) {
            comment = c != '\n';
            continue;
        }
        if (c == '#') {
            flush();
            comment = true;
        } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            token.push_back(c);
        }
    }
    flush();
    return out;
}

inline AngleVector load_angles(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read angle file " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return AngleVector(parse_angle_list(ss.str()));
}

} // namespace nlgames
