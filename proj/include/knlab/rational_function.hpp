#ifndef KNLAB_RATIONAL_FUNCTION_HPP
#define KNLAB_RATIONAL_FUNCTION_HPP

#include <map>
#include <optional>
#include <string>

#include "knlab/polynomial.hpp"

namespace knlab {

/// Complete factorization scale * prod (z - r)^e with integer exponents.
/// When present on a RationalFunction it describes the whole function:
/// every zero and pole at a rational point is listed.
struct FactorForm {
    Rational scale;
    std::map<Rational, long> powers;  // nonzero exponents only
};

/// Rational function in the affine coordinate z.
///
/// Canonical form: gcd(num, den) = 1, den monic, zero is 0/1. The
/// denominator is kept as a set of tracked linear factors (z - r)^m plus a
/// monic cofactor with no tracked roots; poles of interest always sit at
/// known rational points, which keeps reduction and local expansion cheap.
class RationalFunction {
public:
    RationalFunction() : den_cof_(Polynomial::constant(Rational(1))), den_(den_cof_) {}

    static RationalFunction zero() { return RationalFunction(); }
    static RationalFunction constant(const Rational& a);
    static RationalFunction from_polynomial(Polynomial p);
    /// General quotient; reduces to canonical form.
    static RationalFunction from_num_den(Polynomial num, Polynomial den);
    /// scale * prod (z - r)^e. Exponents may be negative.
    static RationalFunction from_factors(const Rational& scale, const std::map<Rational, long>& powers);
    static RationalFunction variable() { return from_polynomial(Polynomial::var()); }

    const Polynomial& num() const { return num_; }
    /// Expanded monic denominator.
    const Polynomial& den() const { return den_; }
    const std::map<Rational, long>& den_roots() const { return den_roots_; }
    const Polynomial& den_cofactor() const { return den_cof_; }
    const std::optional<FactorForm>& factor_form() const { return monomial_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

    RationalFunction scaled(const Rational& s) const;
    RationalFunction inverse() const;
    RationalFunction pow(long e) const;

    /// First derivative with respect to z.
    RationalFunction derived() const;

    /// Evaluation at a non-pole point.
    Rational eval(const Rational& x) const;

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    std::string str(const std::string& var = "z") const;

private:
    static RationalFunction make_reduced(Polynomial num, std::map<Rational, long> den_roots, Polynomial den_cof);
    void rebuild_den();

    Polynomial num_;
    std::map<Rational, long> den_roots_;  // multiplicities >= 1; cofactor nonzero there
    Polynomial den_cof_;                  // monic
    Polynomial den_;                      // expanded product, cached
    std::optional<FactorForm> monomial_;
};

}  // namespace knlab

#endif
