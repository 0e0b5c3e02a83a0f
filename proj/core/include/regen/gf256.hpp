#pragma once

#include <cstdint>

#include "regen/errors.hpp"

namespace regen::gf {

// GF(2^8) with modulus x^8 + x^4 + x^3 + x^2 + 1 (0x11D), the usual
// Reed-Solomon field. Addition is XOR; multiplication goes through
// 256-entry log/antilog tables built at compile time from the
// generator 2.
inline constexpr std::uint16_t kModulus = 0x11D;

namespace detail {

struct Tables {
    std::uint8_t exp[512] = {};
    std::uint8_t log[256] = {};
};

constexpr Tables build_tables() {
    Tables t{};
    std::uint16_t x = 1;
    for (int i = 0; i < 255; ++i) {
        t.exp[i] = static_cast<std::uint8_t>(x);
        t.log[x] = static_cast<std::uint8_t>(i);
        x <<= 1;  // multiply by the generator 2
        if (x & 0x100) x ^= kModulus;
    }
    for (int i = 255; i < 512; ++i) t.exp[i] = t.exp[i - 255];
    return t;
}

inline constexpr Tables kTables = build_tables();

}  // namespace detail

constexpr std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }
constexpr std::uint8_t sub(std::uint8_t a, std::uint8_t b) { return a ^ b; }

constexpr std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) return 0;
    return detail::kTables.exp[detail::kTables.log[a] + detail::kTables.log[b]];
}

inline std::uint8_t inv(std::uint8_t a) {
    if (a == 0) throw DivisionByZero("inverse of 0 in GF(256)");
    return detail::kTables.exp[255 - detail::kTables.log[a]];
}

inline std::uint8_t div(std::uint8_t a, std::uint8_t b) {
    if (b == 0) throw DivisionByZero("division by 0 in GF(256)");
    if (a == 0) return 0;
    int d = detail::kTables.log[a] - detail::kTables.log[b];
    if (d < 0) d += 255;
    return detail::kTables.exp[d];
}

// b^e by square-and-multiply. Used by tests and by nothing hot.
std::uint8_t pow(std::uint8_t b, unsigned e);

}  // namespace regen::gf
