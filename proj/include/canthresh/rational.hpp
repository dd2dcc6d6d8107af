#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <charconv>

namespace canthresh {

using i128 = __int128;

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Exact fraction over int64, always reduced with positive denominator.
// Intermediate results are formed in 128 bits; a result that does not fit
// back into 64 bits throws std::overflow_error.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    static Rational from_wide(i128 n, i128 d) {
        Rational r;
        r.assign(n, d);
        return r;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    std::int64_t ceil() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

    Rational operator-() const { return from_wide(-static_cast<i128>(num_), den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return from_wide(static_cast<i128>(a.num_) + b.num_, a.den_);
        i128 g = gcd128(a.den_, b.den_);
        i128 da = a.den_ / g, db = b.den_ / g;
        return from_wide(static_cast<i128>(a.num_) * db + static_cast<i128>(b.num_) * da,
                         static_cast<i128>(a.den_) * db);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        i128 g1 = gcd128(a.num_, b.den_);
        i128 g2 = gcd128(b.num_, a.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return from_wide((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("division by zero");
        return a * Rational::from_wide(b.den_, b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        auto num = parse_int(s.substr(0, slash), s);
        if (slash == std::string_view::npos) return Rational(num);
        auto den = parse_int(s.substr(slash + 1), s);
        if (den == 0) throw std::invalid_argument("zero denominator in \"" + std::string(s) + "\"");
        return Rational(num, den);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    void assign(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr i128 lo = INT64_MIN + 1, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi) throw std::overflow_error("rational overflow");
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    }

    static std::int64_t parse_int(std::string_view t, std::string_view whole) {
        std::int64_t v = 0;
        auto first = t.data(), last = t.data() + t.size();
        if (first != last && *first == '+') ++first;
        auto [p, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || p != last || first == last)
            throw std::invalid_argument("malformed rational \"" + std::string(whole) + "\"");
        return v;
    }
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// checked int64 helpers used in hot loops
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
    return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
    return r;
}

inline std::int64_t mod(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

// inverse of b modulo n, or 0 when gcd(b, n) != 1
inline std::int64_t inverse_mod(std::int64_t b, std::int64_t n) {
    if (n == 1) return 0;
    b = mod(b, n);
    for (std::int64_t s = 1; s < n; ++s)
        if (mod(b * s, n) == 1) return s;
    return 0;
}

}  // namespace canthresh
