#ifndef KNLAB_POLYNOMIAL_HPP
#define KNLAB_POLYNOMIAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "knlab/rational.hpp"

namespace knlab {

/// Dense univariate polynomial over Rational in the affine coordinate z.
/// Invariant: coefficient list empty (zero polynomial) or trailing
/// coefficient nonzero.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(Rational a);
    /// coeff * z^k
    static Polynomial monomial(long k, Rational coeff);
    /// The coordinate z itself.
    static Polynomial var();
    /// z - a
    static Polynomial linear_root(const Rational& a);

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Rational& lead() const;
    Rational coeff(long k) const;
    const std::vector<Rational>& coeffs() const { return c_; }

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const Rational& s) const;
    Polynomial pow(unsigned long e) const;
    Polynomial derivative() const;
    Rational eval(const Rational& x) const;

    /// Quotient and remainder with deg(rem) < deg(divisor). Divisor nonzero.
    static std::pair<Polynomial, Polynomial> divrem(const Polynomial& a, const Polynomial& b);
    /// Monic gcd; gcd(0,0) = 0.
    static Polynomial gcd_monic(Polynomial a, Polynomial b);

    /// Multiplicity of x as a root (0 if not a root; degree+1 convention not
    /// used: zero polynomial is rejected).
    long valuation_at(const Rational& x) const;
    /// Divides by (z-x)^k; x must be a root of multiplicity >= k.
    Polynomial deflate_at(const Rational& x, long k) const;
    /// p(x + u) as a polynomial in u.
    Polynomial taylor_shift(const Rational& x) const;
    /// w^deg * p(1/w): the coefficient-reversed polynomial.
    Polynomial reversed() const;

    Polynomial monic() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::string str(const std::string& var = "z") const;

private:
    void trim();
    std::vector<Rational> c_;
};

}  // namespace knlab

#endif
