#pragma once

#include <gmpxx.h>

#include <string>

#include "germcalc/errors.hpp"

namespace germcalc {

/// Exact rational coefficient. GMP keeps values in lowest terms with a
/// positive denominator, which is exactly the canonical form we require.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p" or "p/q" (optionally signed). Rejects empty input, zero
/// denominators and trailing garbage.
inline Rat rat_from_string(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text) {
        if (c != ' ' && c != '\t') s.push_back(c);
    }
    if (s.empty()) throw ParseError("empty rational literal");
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw ParseError("bad rational literal '" + text + "'");
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
        throw ParseError("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

/// Canonical rendering: "p" when the denominator is 1, else "p/q".
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline bool rat_is_zero(const Rat& r) { return mpq_sgn(r.get_mpq_t()) == 0; }

inline Rat rat_abs(const Rat& r) { return abs(r); }

inline double rat_to_double(const Rat& r) { return mpq_get_d(r.get_mpq_t()); }

inline Rat rat_pow(const Rat& base, unsigned exp) {
    Rat acc(1);
    Rat b = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

} // namespace germcalc
