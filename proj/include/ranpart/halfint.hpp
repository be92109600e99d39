#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "ranpart/errors.hpp"

namespace ranpart {

// A half-integer (element of Z + 1/2), stored as its doubled value.
// Particle positions, kernel arguments and correlation queries all live on
// this lattice; keeping the doubled value avoids any floating-point fuzz.
struct Half {
    std::int64_t twice = 1; // must stay odd

    Half() = default;
    explicit constexpr Half(std::int64_t doubled) : twice(doubled) {}

    static Half from_index(std::int64_t k) { return Half{2 * k + 1}; } // k + 1/2

    double value() const { return 0.5 * static_cast<double>(twice); }
    bool odd_ok() const { return twice % 2 != 0; }

    // k such that this == k + 1/2 (floor).
    std::int64_t index() const { return (twice - 1) / 2; }

    friend auto operator<=>(const Half&, const Half&) = default;

    Half operator+(std::int64_t n) const { return Half{twice + 2 * n}; }
    Half operator-(std::int64_t n) const { return Half{twice - 2 * n}; }
    std::int64_t operator-(const Half& o) const { // difference is an integer
        return (twice - o.twice) / 2;
    }

    std::string str() const { return std::to_string(twice) + "/2"; }
};

// Parses "a/2" (doubled odd integer over 2), e.g. "-7/2", "15/2".
Half parse_half(const std::string& s);

} // namespace ranpart
