#pragma once

#include <optional>
#include <string>

#include "germcalc/lambda_poly.hpp"
#include "germcalc/rat.hpp"

namespace germcalc {

/// Coefficient-ring operations required by the generic series code. A series
/// is homogeneous in its coefficient kind: plain rationals, or polynomials in
/// lambda over rationals.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Rat> {
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static Rat from_rat(const Rat& q) { return q; }
    static bool is_zero(const Rat& v) { return rat_is_zero(v); }
    static Rat scale(const Rat& v, const Rat& s) { return v * s; }
    static std::optional<Rat> try_invert(const Rat& v) {
        if (rat_is_zero(v)) return std::nullopt;
        return Rat(1) / v;
    }
    static std::string to_string(const Rat& v) { return rat_to_string(v); }
};

template <>
struct RingTraits<LambdaPoly> {
    static LambdaPoly zero() { return LambdaPoly(); }
    static LambdaPoly one() { return LambdaPoly(Rat(1)); }
    static LambdaPoly from_rat(const Rat& q) { return LambdaPoly(q); }
    static bool is_zero(const LambdaPoly& v) { return v.is_zero(); }
    static LambdaPoly scale(const LambdaPoly& v, const Rat& s) { return v.scaled(s); }
    // Units of Q[lambda] are the nonzero constants.
    static std::optional<LambdaPoly> try_invert(const LambdaPoly& v) {
        if (v.degree() != 0) return std::nullopt;
        return LambdaPoly(Rat(1) / v.coeff(0));
    }
    static std::string to_string(const LambdaPoly& v) { return v.to_string(); }
};

} // namespace germcalc
