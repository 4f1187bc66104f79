#pragma once

#include <string>
#include <vector>

#include "germcalc/errors.hpp"
#include "germcalc/rat.hpp"

namespace germcalc {

/// Dense univariate polynomial in the family parameter lambda, with exact
/// rational coefficients. Trailing zeros are never stored, so degree() is
/// canonical; the zero polynomial is the empty coefficient list (degree -1).
class LambdaPoly {
public:
    LambdaPoly() = default;
    LambdaPoly(const Rat& constant) { // NOLINT(google-explicit-constructor)
        if (!rat_is_zero(constant)) c_.push_back(constant);
    }
    LambdaPoly(long constant) : LambdaPoly(Rat(constant)) {} // NOLINT

    static LambdaPoly monomial(int power, const Rat& coeff) {
        LambdaPoly p;
        if (power < 0) throw OutOfRangeError("negative lambda power");
        if (!rat_is_zero(coeff)) {
            p.c_.assign(static_cast<std::size_t>(power) + 1, Rat(0));
            p.c_.back() = coeff;
        }
        return p;
    }
    static LambdaPoly lambda() { return monomial(1, Rat(1)); }

    static LambdaPoly from_coeffs(std::vector<Rat> coeffs) {
        LambdaPoly p;
        p.c_ = std::move(coeffs);
        p.trim();
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    /// Coefficient of lambda^k; zero beyond the stored degree.
    const Rat& coeff(int k) const {
        static const Rat zero(0);
        if (k < 0 || k > degree()) return zero;
        return c_[static_cast<std::size_t>(k)];
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc *= x;
            acc += c_[i];
        }
        return acc;
    }

    LambdaPoly operator-() const {
        LambdaPoly r = *this;
        for (Rat& v : r.c_) v = -v;
        return r;
    }

    LambdaPoly& operator+=(const LambdaPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rat(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    LambdaPoly& operator-=(const LambdaPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rat(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
    friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }

    friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
        LambdaPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
        Rat t;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (rat_is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (rat_is_zero(b.c_[j])) continue;
                mpq_mul(t.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
                r.c_[i + j] += t;
            }
        }
        r.trim();
        return r;
    }
    LambdaPoly& operator*=(const LambdaPoly& o) { return *this = *this * o; }

    LambdaPoly scaled(const Rat& s) const {
        if (rat_is_zero(s)) return LambdaPoly();
        LambdaPoly r = *this;
        for (Rat& v : r.c_) v *= s;
        return r;
    }

    bool operator==(const LambdaPoly& o) const { return c_ == o.c_; }
    bool operator!=(const LambdaPoly& o) const { return !(*this == o); }

    const std::vector<Rat>& coeffs() const { return c_; }

    /// "0", "3/2", "1 - lam^2", "2*lam", ... — ascending lambda powers.
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        for (int k = 0; k <= degree(); ++k) {
            const Rat& v = c_[static_cast<std::size_t>(k)];
            if (rat_is_zero(v)) continue;
            Rat mag = abs(v);
            bool neg = sgn(v) < 0;
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            std::string magstr = mag.get_str();
            if (k == 0) {
                out += magstr;
            } else {
                if (magstr != "1") out += magstr + "*";
                out += "lam";
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    void trim() {
        while (!c_.empty() && rat_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<Rat> c_;
};

} // namespace germcalc
