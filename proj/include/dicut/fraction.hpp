#pragma once

#include <boost/rational.hpp>
#include <string>
#include <string_view>

#include "dicut/types.hpp"

namespace dicut {

// Exact rational arithmetic for every checker threshold; no floating point
// is ever used in a verdict comparison.
using Fraction = boost::rational<long long>;

inline Fraction parse_fraction(std::string_view text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Fraction(std::stoll(std::string(text)), 1);
        }
        long long num = std::stoll(std::string(text.substr(0, slash)));
        long long den = std::stoll(std::string(text.substr(slash + 1)));
        if (den == 0) throw ParseError("fraction with zero denominator: " + std::string(text));
        return Fraction(num, den);
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed fraction: " + std::string(text));
    } catch (const std::out_of_range&) {
        throw ParseError("fraction out of range: " + std::string(text));
    }
}

inline std::string to_string(const Fraction& f) {
    return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

}  // namespace dicut
