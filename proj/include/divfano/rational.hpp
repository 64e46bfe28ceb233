#ifndef DIVFANO_RATIONAL_HPP
#define DIVFANO_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace divfano
{

using Int = std::int64_t;

namespace detail
{

inline Int narrow(__int128 v)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("divfano: 64-bit integer overflow");
    return static_cast<Int>(v);
}

} // namespace detail

/// Exact rational number with a 64-bit numerator and denominator.
///
/// Always stored reduced with a positive denominator. Intermediate products
/// are computed in 128 bits; a result that does not fit throws
/// std::overflow_error instead of wrapping.
class Rational
{
public:
    constexpr Rational() = default;
    Rational(Int n) : num_{n}, den_{1} {}
    Rational(Int n, Int d) { assign(n, d); }

    Int num() const { return num_; }
    Int den() const { return den_; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational{-num_, den_}; }

    friend Rational operator+(const Rational &a, const Rational &b)
    {
        const Int g = std::gcd(a.den_, b.den_);
        const __int128 bd = b.den_ / g;
        const __int128 n = static_cast<__int128>(a.num_) * bd
                           + static_cast<__int128>(b.num_) * (a.den_ / g);
        return from_wide(n, static_cast<__int128>(a.den_) * bd);
    }
    friend Rational operator-(const Rational &a, const Rational &b) { return a + (-b); }
    friend Rational operator*(const Rational &a, const Rational &b)
    {
        const Int g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
        const Int g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
        const __int128 n = static_cast<__int128>(a.num_ / (g1 ? g1 : 1)) * (b.num_ / (g2 ? g2 : 1));
        const __int128 d = static_cast<__int128>(a.den_ / (g2 ? g2 : 1)) * (b.den_ / (g1 ? g1 : 1));
        return from_wide(n, d);
    }
    friend Rational operator/(const Rational &a, const Rational &b)
    {
        if (b.num_ == 0)
            throw std::domain_error("divfano: division by zero rational");
        return a * Rational{b.den_, b.num_};
    }

    Rational &operator+=(const Rational &o) { return *this = *this + o; }
    Rational &operator-=(const Rational &o) { return *this = *this - o; }
    Rational &operator*=(const Rational &o) { return *this = *this * o; }

    friend bool operator==(const Rational &, const Rational &) = default;
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const __int128 l = static_cast<__int128>(a.num_) * b.den_;
        const __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l <=> r;
    }

    /// Renders as "p/q", including integers ("1/1").
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

private:
    static Rational from_wide(__int128 n, __int128 d)
    {
        __int128 a = n < 0 ? -n : n, b = d;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        Rational r;
        r.num_ = detail::narrow(n);
        r.den_ = detail::narrow(d);
        return r;
    }

    void assign(Int n, Int d)
    {
        if (d == 0)
            throw std::domain_error("divfano: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const Int g = std::gcd(n < 0 ? -n : n, d);
        num_ = n / g;
        den_ = d / g;
    }

    Int num_ = 0;
    Int den_ = 1;
};

} // namespace divfano

#endif
