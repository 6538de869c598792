#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>

#include "vcsp/errors.hpp"

namespace vcsp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact rational extended with positive infinity. Finite values are kept
// reduced with a positive denominator (cpp_rational guarantees both).
// Addition absorbs infinity; comparison is total with inf greater than
// every finite value and inf == inf.
class ExtValue {
public:
    ExtValue() : finite_(true), q_(0) {}
    ExtValue(long v) : finite_(true), q_(v) {}
    ExtValue(Rational q) : finite_(true), q_(std::move(q)) {}

    static ExtValue infinity()
    {
        ExtValue v;
        v.finite_ = false;
        return v;
    }

    static ExtValue ratio(long num, long den);

    bool is_finite() const { return finite_; }
    bool is_infinite() const { return !finite_; }

    const Rational& rational() const
    {
        if (!finite_)
            throw Error("rational() on infinity");
        return q_;
    }

    BigInt numerator() const { return boost::multiprecision::numerator(rational()); }
    BigInt denominator() const { return boost::multiprecision::denominator(rational()); }

    ExtValue& operator+=(const ExtValue& o)
    {
        if (!finite_ || !o.finite_)
            finite_ = false;
        else
            q_ += o.q_;
        return *this;
    }

    friend ExtValue operator+(ExtValue a, const ExtValue& b) { return a += b; }

    // Finite-only difference; used where infinities have already been
    // substituted away (mincut differencing, normalization offsets).
    friend ExtValue operator-(const ExtValue& a, const ExtValue& b)
    {
        if (!a.finite_ || !b.finite_)
            throw Error("difference with infinity");
        return ExtValue(Rational(a.q_ - b.q_));
    }

    // s * v with s > 0 (inf scales to inf); s = 0 requires a finite v.
    ExtValue scaled(const Rational& s) const
    {
        if (!finite_) {
            if (s <= 0)
                throw Error("non-positive scaling of infinity");
            return infinity();
        }
        return ExtValue(Rational(q_ * s));
    }

    friend bool operator==(const ExtValue& a, const ExtValue& b)
    {
        if (a.finite_ != b.finite_)
            return false;
        return !a.finite_ || a.q_ == b.q_;
    }

    friend std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b)
    {
        if (!a.finite_ && !b.finite_)
            return std::strong_ordering::equal;
        if (!a.finite_)
            return std::strong_ordering::greater;
        if (!b.finite_)
            return std::strong_ordering::less;
        if (a.q_ < b.q_)
            return std::strong_ordering::less;
        if (a.q_ > b.q_)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // "inf", "n", or "n/d".
    std::string str() const;

    // Accepts exactly the grammar's value tokens: int | int/int | inf.
    static ExtValue parse(const std::string& token);

private:
    bool finite_;
    Rational q_;
};

std::ostream& operator<<(std::ostream& os, const ExtValue& v);

std::string rational_str(const Rational& q);
Rational parse_rational(const std::string& token);

// floor(q) as an exact integer (rounds toward minus infinity).
BigInt rational_floor(const Rational& q);

} // namespace vcsp
