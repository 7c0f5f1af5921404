// rational.hpp
// Exact rational arithmetic used throughout the engine.  All coefficient
// arithmetic is over Q with arbitrary precision; nothing in the library
// touches floating point.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <stdexcept>
#include <string>

namespace alab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long n, long d = 1) { return Rat(n, d); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline std::string to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parses "a" or "a/b" with optional sign.  Used by fixture loading for
/// point coordinates; general expressions go through the parser.
inline Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational literal: " + s);
    }
}

} // namespace alab
