#pragma once

/*
 * Exact rational scalar on top of arbitrary-precision integers.
 *
 * Invariants, maintained after every operation:
 *   - always reduced: gcd(|num|, den) = 1
 *   - den > 0 (sign lives in the numerator)
 *   - zero is canonically 0/1
 *
 * Equality is therefore plain field-wise comparison and values can be
 * used as exact dictionary keys or serialized canonically as "p/q".
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "eil/errors.hpp"

namespace eil {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
    BigInt num_;
    BigInt den_;

    void reduce() {
        if (den_.is_zero())
            throw InvalidArgument("Rational: zero denominator");
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_.backend().negate();
            den_.backend().negate();
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

public:
    Rational() : num_(0), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(std::uint64_t v) : num_(v), den_(1) {}
    Rational(BigInt v) : num_(std::move(v)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }
    Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }
    int sign() const { return num_.sign(); }

    Rational operator-() const {
        Rational r = *this;
        r.num_.backend().negate();
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero())
            throw InvalidArgument("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational reciprocal() const {
        if (is_zero())
            throw InvalidArgument("Rational: reciprocal of zero");
        return Rational(den_, num_);
    }

    double to_double() const {
        boost::multiprecision::cpp_rational r(num_, den_);
        return r.convert_to<double>();
    }

    // Exact conversion: every finite binary64 value is a dyadic rational.
    static Rational from_double(double x) {
        if (!std::isfinite(x))
            throw InvalidArgument("Rational: non-finite double");
        if (x == 0.0)
            return Rational();
        int exp = 0;
        double mant = std::frexp(x, &exp); // |mant| in [0.5, 1)
        auto scaled = static_cast<long long>(std::ldexp(mant, 53));
        BigInt n(scaled);
        int e = exp - 53;
        if (e >= 0)
            return Rational(n << e);
        return Rational(std::move(n), BigInt(1) << (-e));
    }

    // Canonical form: "p" for integers, "p/q" otherwise.
    std::string str() const {
        if (den_ == 1)
            return num_.str();
        return num_.str() + "/" + den_.str();
    }

    // Accepts integer, p/q, and decimal literals (optional exponent).
    static Rational parse(std::string_view s);
};

inline Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }

namespace detail {

inline BigInt parse_bigint(std::string_view s) {
    if (s.empty())
        throw ParseError("empty integer literal");
    const bool neg = s[0] == '-';
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size())
        throw ParseError("bare sign in numeric literal");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
            throw ParseError("invalid integer literal: '" + std::string(s) + "'");
    // strip leading zeros: cpp_int would read "0..." as an octal literal
    while (i + 1 < s.size() && s[i] == '0')
        ++i;
    BigInt v{std::string(s.substr(i))};
    if (neg)
        v.backend().negate();
    return v;
}

} // namespace detail

inline Rational Rational::parse(std::string_view s) {
    // strip surrounding whitespace
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    if (s.empty())
        throw ParseError("empty numeric literal");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt n = detail::parse_bigint(s.substr(0, slash));
        BigInt d = detail::parse_bigint(s.substr(slash + 1));
        if (d.is_zero())
            throw ParseError("zero denominator in '" + std::string(s) + "'");
        return Rational(std::move(n), std::move(d));
    }

    std::string_view mant = s;
    long long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mant = s.substr(0, e);
        BigInt be = detail::parse_bigint(s.substr(e + 1));
        if (be > 9999 || be < -9999)
            throw ParseError("exponent out of range in '" + std::string(s) + "'");
        exp10 = be.convert_to<long long>();
    }

    std::string digits;
    long long frac_digits = 0;
    bool neg = false;
    std::size_t i = 0;
    if (i < mant.size() && (mant[i] == '+' || mant[i] == '-')) {
        neg = mant[i] == '-';
        ++i;
    }
    bool seen_digit = false, seen_dot = false;
    for (; i < mant.size(); ++i) {
        char c = mant[i];
        if (c == '.') {
            if (seen_dot)
                throw ParseError("invalid numeric literal: '" + std::string(s) + "'");
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot)
                ++frac_digits;
        } else {
            throw ParseError("invalid numeric literal: '" + std::string(s) + "'");
        }
    }
    if (!seen_digit)
        throw ParseError("invalid numeric literal: '" + std::string(s) + "'");

    // strip leading zeros (octal trap, as above), keeping at least one digit
    const auto first_nz = digits.find_first_not_of('0');
    digits.erase(0, first_nz == std::string::npos ? digits.size() - 1 : first_nz);
    BigInt n(digits.empty() ? "0" : digits);
    if (neg)
        n.backend().negate();
    long long net = exp10 - frac_digits;
    if (net >= 0)
        return Rational(n * boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(net)));
    return Rational(std::move(n),
                    boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-net)));
}

} // namespace eil
