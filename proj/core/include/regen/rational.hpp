#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "regen/errors.hpp"

namespace regen {

// Exact rational with int64 numerator/denominator, always normalized
// (gcd 1, denominator > 0). Intermediates go through __int128 and the
// result must fit back into int64, otherwise std::overflow_error.
// Graph capacities, overhead factors and thresholds are all exact
// rationals; nothing in the cut machinery touches floating point.
class Rational {
  public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return fromWide(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return fromWide(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return fromWide(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DivisionByZero("rational division by zero");
        return fromWide(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Always "p/q", e.g. "7/43", "1/1".
    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p/q" or a bare integer "p".
    static std::optional<Rational> parse(std::string_view s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string_view::npos) {
                std::size_t pos = 0;
                std::int64_t n = std::stoll(std::string(s), &pos);
                if (pos != s.size()) return std::nullopt;
                return Rational(n);
            }
            std::size_t pn = 0, pd = 0;
            std::string ns(s.substr(0, slash)), ds(s.substr(slash + 1));
            std::int64_t n = std::stoll(ns, &pn);
            std::int64_t d = std::stoll(ds, &pd);
            if (pn != ns.size() || pd != ds.size() || d == 0) return std::nullopt;
            return Rational(n, d);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  private:
    using i128 = __int128;

    static Rational fromWide(i128 n, i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi) throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ == 0) throw DivisionByZero("rational with zero denominator");
        *this = fromWide(num_, den_);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace regen
