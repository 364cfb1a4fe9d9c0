/**
 * @file rational.hpp
 * @brief Exact rational scalars and the vector helpers shared by every module.
 *
 * All numerics in grasscone are exact. Rationals are GMP-backed
 * (boost::multiprecision::mpq_rational) and serialize as "p/q" strings.
 */

#ifndef GRASSCONE_RATIONAL_HPP
#define GRASSCONE_RATIONAL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "grasscone/errors.hpp"

namespace grasscone {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Coordinates of a class in a named basis.
using RationalVector = std::vector<Rational>;

/**
 * @brief Parse "p/q", "p" or "-p/q" (surrounding blanks allowed).
 *
 * Throws ValidationError on anything else, including a zero denominator.
 */
inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    auto is_integer = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s) {
            if (c < '0' || c > '9') return false;
        }
        return true;
    };
    auto to_integer = [](std::string_view s) {
        if (!s.empty() && s.front() == '+') s.remove_prefix(1);
        return Integer(std::string(s));
    };

    std::string_view body = trim(text);
    const auto slash = body.find('/');
    std::string_view num = trim(body.substr(0, slash));
    if (!is_integer(num)) {
        throw ValidationError("not a rational number: '" + std::string(text) + "'");
    }
    if (slash == std::string_view::npos) return Rational(to_integer(num));

    std::string_view den = trim(body.substr(slash + 1));
    if (!is_integer(den) || den.front() == '-' || den.front() == '+') {
        throw ValidationError("not a rational number: '" + std::string(text) + "'");
    }
    Integer d = to_integer(den);
    if (d == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return Rational(to_integer(num), d);
}

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
    const Integer& den = boost::multiprecision::denominator(q);
    if (den == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

inline std::string to_string(std::span<const Rational> v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += to_string(v[i]);
    }
    return out + "]";
}

inline std::string to_string(const std::vector<RationalVector>& vs) {
    std::string out = "[";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ",";
        out += to_string(vs[i]);
    }
    return out + "]";
}

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline void require_same_dim(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("vector of length " + std::to_string(a.size()) +
                                " paired with vector of length " + std::to_string(b.size()));
    }
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    require_same_dim(a, b);
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(std::span<const Rational> v) {
    for (const auto& x : v) {
        if (x != 0) return false;
    }
    return true;
}

inline RationalVector scaled(std::span<const Rational> v, const Rational& c) {
    RationalVector out(v.begin(), v.end());
    for (auto& x : out) x *= c;
    return out;
}

/// a + c*b
inline RationalVector axpy(std::span<const Rational> a, const Rational& c, std::span<const Rational> b) {
    require_same_dim(a, b);
    RationalVector out(a.begin(), a.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * b[i];
    return out;
}

/**
 * @brief Positive multiple of @p v with coprime integer entries.
 *
 * Direction is preserved: only positive scalings are applied. The zero
 * vector is returned unchanged.
 */
inline RationalVector primitive(std::span<const Rational> v) {
    Integer lcm_den = 1;
    for (const auto& x : v) {
        lcm_den = boost::multiprecision::lcm(lcm_den, Integer(boost::multiprecision::denominator(x)));
    }
    std::vector<Integer> ints;
    ints.reserve(v.size());
    Integer g = 0;
    for (const auto& x : v) {
        Integer n = boost::multiprecision::numerator(x) * (lcm_den / boost::multiprecision::denominator(x));
        g = boost::multiprecision::gcd(g, Integer(abs(n)));
        ints.push_back(std::move(n));
    }
    RationalVector out;
    out.reserve(v.size());
    if (g == 0) {
        out.assign(v.size(), Rational(0));
        return out;
    }
    for (auto& n : ints) out.emplace_back(n / g);
    return out;
}

/// Binomial coefficient C(n, k) for 0 <= k <= n, exact.
inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Integer c = 1;
    for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace grasscone

#endif  // GRASSCONE_RATIONAL_HPP
