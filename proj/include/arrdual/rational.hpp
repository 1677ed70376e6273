#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace arrdual::exactla {

using Int = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always in lowest terms with positive
// denominator (canonical form is maintained by the backend).
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(Int num, Int den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rational(std::move(num), std::move(den));
}

inline Rational make_rational(long long num, long long den = 1) {
    return make_rational(Int(num), Int(den));
}

// Wire format: "p/q", or just "p" when q = 1.
inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        return make_rational(std::move(num), std::move(den));
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline int sign(const Rational& r) { return r.sign(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace arrdual::exactla
