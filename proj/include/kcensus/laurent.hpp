#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "kcensus/bigint.hpp"
#include "kcensus/error.hpp"

namespace kcensus {

/// Exact one-variable Laurent polynomial: integer exponents (negative
/// allowed), arbitrary-precision integer coefficients.  Zero coefficients
/// are never stored, so the zero polynomial has an empty term map.
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;

    static LaurentPolynomial term(int exponent, BigInt coefficient) {
        LaurentPolynomial p;
        if (coefficient != 0) p.terms_[exponent] = std::move(coefficient);
        return p;
    }

    static LaurentPolynomial constant(BigInt value) { return term(0, std::move(value)); }
    static LaurentPolynomial one() { return constant(1); }

    const std::map<int, BigInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int min_exponent() const {
        require_nonzero();
        return terms_.begin()->first;
    }
    int max_exponent() const {
        require_nonzero();
        return terms_.rbegin()->first;
    }

    BigInt coefficient(int exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    void add_term(int exponent, const BigInt& coefficient) {
        if (coefficient == 0) return;
        BigInt& c = terms_[exponent];
        c += coefficient;
        if (c == 0) terms_.erase(exponent);
    }

    LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
        a += b;
        return a;
    }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
        a -= b;
        return a;
    }
    LaurentPolynomial operator-() const {
        LaurentPolynomial r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        LaurentPolynomial r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }

    LaurentPolynomial& operator*=(const BigInt& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    /// Multiply by a single monomial coeff * x^exponent.
    void shift_multiply(int exponent, const BigInt& coeff) {
        LaurentPolynomial r;
        for (const auto& [e, c] : terms_) r.add_term(e + exponent, c * coeff);
        *this = std::move(r);
    }

    bool operator==(const LaurentPolynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPolynomial& o) const { return !(*this == o); }

    /// Substitute x -> 1/x (negate every exponent).
    LaurentPolynomial reciprocal() const {
        LaurentPolynomial r;
        for (const auto& [e, c] : terms_) r.terms_[-e] = c;
        return r;
    }

    /// Exact evaluation at a nonzero rational point.
    BigRational evaluate_at(const BigRational& x) const {
        if (x == 0) throw Error(ErrorKind::ZeroPoint, "cannot evaluate a Laurent polynomial at 0");
        BigRational sum = 0;
        const BigInt num = boost::multiprecision::numerator(x);
        const BigInt den = boost::multiprecision::denominator(x);
        for (const auto& [e, c] : terms_) {
            BigRational p;
            if (e >= 0)
                p = BigRational(boost::multiprecision::pow(num, unsigned(e)),
                                boost::multiprecision::pow(den, unsigned(e)));
            else
                p = BigRational(boost::multiprecision::pow(den, unsigned(-e)),
                                boost::multiprecision::pow(num, unsigned(-e)));
            sum += BigRational(c) * p;
        }
        return sum;
    }

    /// Exact division; throws if the divisor does not divide evenly.
    /// The quotient is computed by long division from the top degree.
    LaurentPolynomial divided_exact(const LaurentPolynomial& d) const {
        if (d.is_zero()) throw std::invalid_argument("division by the zero polynomial");
        LaurentPolynomial rem = *this, quot;
        const int dmax = d.max_exponent();
        const BigInt& dlead = d.terms_.rbegin()->second;
        while (!rem.is_zero()) {
            const int rmax = rem.max_exponent();
            const BigInt& rlead = rem.terms_.rbegin()->second;
            if (rlead % dlead != 0)
                throw std::invalid_argument("inexact Laurent polynomial division");
            LaurentPolynomial q = term(rmax - dmax, rlead / dlead);
            quot += q;
            rem -= q * d;
            if (!rem.is_zero() && rem.max_exponent() >= rmax)
                throw std::invalid_argument("inexact Laurent polynomial division");
        }
        return quot;
    }

    std::string to_string(const std::string& var = "t") const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            BigInt a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            if (e == 0)
                os << a;
            else {
                if (a != 1) os << a << "*";
                os << var;
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

private:
    void require_nonzero() const {
        if (terms_.empty())
            throw Error(ErrorKind::ZeroPolynomial, "zero polynomial has no degree span");
    }

    std::map<int, BigInt> terms_;
};

}  // namespace kcensus
