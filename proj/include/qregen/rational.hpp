#pragma once

// Exact rational arithmetic on 64-bit numerator/denominator.
//
// All intermediate products are carried in 128-bit integers and reduced
// before narrowing, so arithmetic either returns the exact value or throws
// std::overflow_error. Invariants: denominator > 0, gcd(|num|, den) == 1,
// zero is 0/1.

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qregen {

class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    // Renders "p/q", or just "p" when the value is an integer.
    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) {
            s += '/';
            s += std::to_string(den_);
        }
        return s;
    }

    // Accepts "p", "p/q" and decimal literals such as "0.25", with an
    // optional leading sign. Decimal digits are scaled by powers of ten,
    // so the result is exact. Throws std::invalid_argument on bad syntax.
    static Rational parse(std::string_view text);

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0)
            throw std::domain_error("Rational: division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& r) { return *this = *this + r; }
    Rational& operator-=(const Rational& r) { return *this = *this - r; }
    Rational& operator*=(const Rational& r) { return *this = *this * r; }
    Rational& operator/=(const Rational& r) { return *this = *this / r; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        // Cross-multiply in 128 bits; denominators are positive.
        return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    using i128 = __int128;

    std::int64_t num_;
    std::int64_t den_;

    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0)
            throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        num_ = n;
        den_ = d;
    }

    static Rational make(i128 n, i128 d) {
        if (d == 0)
            throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 a = n < 0 ? -n : n;
        i128 g = gcd128(a, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rational: 64-bit overflow");
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
        return a;
    }
};

inline Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }

inline Rational Rational::parse(std::string_view text) {
    auto fail = [&] {
        throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
    };
    std::string_view s = text;
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        fail();

    auto digits = [&](std::string_view v) -> i128 {
        if (v.empty())
            fail();
        i128 acc = 0;
        for (char c : v) {
            if (c < '0' || c > '9')
                fail();
            acc = acc * 10 + (c - '0');
            if (acc > i128(INT64_MAX) * 1000000)
                throw std::overflow_error("Rational: literal too large");
        }
        return acc;
    };

    i128 n = 0, d = 1;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        n = digits(s.substr(0, slash));
        d = digits(s.substr(slash + 1));
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty())
            fail();
        n = ip.empty() ? 0 : digits(ip);
        for (char c : fp) {
            if (c < '0' || c > '9')
                fail();
            n = n * 10 + (c - '0');
            d *= 10;
            if (d > i128(INT64_MAX))
                throw std::overflow_error("Rational: literal too large");
        }
    } else {
        n = digits(s);
    }
    return make(neg ? -n : n, d);
}

}  // namespace qregen
