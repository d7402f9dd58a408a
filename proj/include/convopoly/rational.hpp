#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "convopoly/common.hpp"

namespace convopoly {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Serialized form is always "p/q" with q >= 1, e.g. "0/1", "-3/4".
inline std::string format_rational(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p/q" or a bare integer "p". Throws InputError on anything else.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        if (den == 0) {
            throw InputError("rational with zero denominator: " + text);
        }
        return Rational(num, den);
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("malformed rational: " + text);
    }
}

inline long long floor_to_integer(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (q * denominator(r) > numerator(r)) {
        --q; // integer division truncates toward zero; fix up negatives
    }
    return q.convert_to<long long>();
}

// Display-only conversion; never used to decide anything.
inline double approx(const Rational& r) {
    return r.convert_to<double>();
}

inline std::size_t hash_combine(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct RationalVectorHash {
    std::size_t operator()(const std::vector<Rational>& v) const {
        std::size_t seed = v.size();
        std::hash<std::string> h;
        for (const auto& r : v) {
            seed = hash_combine(seed, h(format_rational(r)));
        }
        return seed;
    }
};

inline bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

} // namespace convopoly
