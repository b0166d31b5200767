#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace majscope {

/* Exact rational threshold. Every majority test in the library is evaluated
   with integer cross-multiplication; no floating point touches a boundary. */
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {}

    bool valid_threshold() const { return den > 0 && num > 0 && num < den; }

    Rational normalized() const {
        std::uint64_t g = std::gcd(num, den);
        return g ? Rational{num / g, den / g} : *this;
    }

    /* strict "NUM/DEN" with decimal integers; anything else rejected */
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
            throw std::invalid_argument("rational must be NUM/DEN");
        for (size_t i = 0; i < s.size(); ++i)
            if (i != slash && (s[i] < '0' || s[i] > '9'))
                throw std::invalid_argument("rational must be NUM/DEN");
        return Rational{std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1))};
    }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return (__int128)a.num * b.den == (__int128)b.num * a.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
};

/* count > r * len, exactly */
inline bool count_exceeds(std::uint64_t count, std::uint64_t len, const Rational& r) {
    return (unsigned __int128)count * r.den > (unsigned __int128)r.num * len;
}

/* ceil(a / b) for positive integers */
inline std::uint64_t ceil_div_u64(std::uint64_t a, std::uint64_t b) {
    return a / b + (a % b != 0);
}

/* floor and ceil of x/y for signed 128-bit x, positive y */
inline __int128 floor_div_i128(__int128 x, __int128 y) {
    __int128 q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return q;
}

inline __int128 ceil_div_i128(__int128 x, __int128 y) {
    __int128 q = x / y;
    if ((x % y != 0) && ((x < 0) == (y < 0))) ++q;
    return q;
}

}  // namespace majscope
