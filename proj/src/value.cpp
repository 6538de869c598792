#include "vcsp/value.hpp"

#include <ostream>

namespace vcsp {

ExtValue ExtValue::ratio(long num, long den)
{
    if (den <= 0)
        throw Error("denominator must be positive");
    return ExtValue(Rational(num, den));
}

std::string rational_str(const Rational& q)
{
    std::string s = numerator(q).str();
    if (denominator(q) != 1)
        s += "/" + denominator(q).str();
    return s;
}

std::string ExtValue::str() const
{
    if (!finite_)
        return "inf";
    return rational_str(q_);
}

std::ostream& operator<<(std::ostream& os, const ExtValue& v)
{
    return os << v.str();
}

namespace {

bool parse_integer(const std::string& s, BigInt& out)
{
    if (s.empty())
        return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size())
        return false;
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            return false;
    out = BigInt(s);
    return true;
}

} // namespace

Rational parse_rational(const std::string& token)
{
    auto slash = token.find('/');
    BigInt num, den;
    if (slash == std::string::npos) {
        if (!parse_integer(token, num))
            throw Error("bad value token '" + token + "'");
        return Rational(num);
    }
    if (!parse_integer(token.substr(0, slash), num) || !parse_integer(token.substr(slash + 1), den))
        throw Error("bad value token '" + token + "'");
    if (den <= 0)
        throw Error("bad value token '" + token + "': denominator must be positive");
    return Rational(num, den);
}

ExtValue ExtValue::parse(const std::string& token)
{
    if (token == "inf")
        return infinity();
    return ExtValue(parse_rational(token));
}

BigInt rational_floor(const Rational& q)
{
    BigInt n = numerator(q), d = denominator(q);
    BigInt quot = n / d;
    if (n < 0 && quot * d != n)
        --quot;
    return quot;
}

} // namespace vcsp
