#ifndef KNLAB_LAURENT_HPP
#define KNLAB_LAURENT_HPP

#include <string>
#include <vector>

#include "knlab/rational_function.hpp"

namespace knlab {

/// A point of the Riemann sphere: a finite rational coordinate or infinity.
class SpherePoint {
public:
    static SpherePoint finite(Rational z0) { return SpherePoint(false, std::move(z0)); }
    static SpherePoint infinity() { return SpherePoint(true, Rational(0)); }

    bool is_infinity() const { return inf_; }
    const Rational& z() const {
        if (inf_) throw std::logic_error("SpherePoint: infinity has no finite coordinate");
        return z_;
    }

    friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.z_ == b.z_);
    }
    friend bool operator!=(const SpherePoint& a, const SpherePoint& b) { return !(a == b); }
    friend bool operator<(const SpherePoint& a, const SpherePoint& b) {
        if (a.inf_ != b.inf_) return !a.inf_;  // finite points first
        if (a.inf_) return false;
        return a.z_ < b.z_;
    }

    std::string str() const { return inf_ ? "inf" : z_.str(); }

private:
    SpherePoint(bool inf, Rational z) : inf_(inf), z_(std::move(z)) {}
    bool inf_;
    Rational z_;
};

/// Truncated Laurent series in the local coordinate at an anchor point
/// (u = z - z0 at a finite point, w = 1/z at infinity).
///
/// Invariants: if nonzero, the coefficient at the leading order is nonzero;
/// coefficients are exact up to and including the truncation order.
class LaurentSeries {
public:
    /// Zero to the stated truncation order.
    static LaurentSeries zero_to(SpherePoint anchor, long trunc);
    static LaurentSeries from_coeffs(SpherePoint anchor, long lead, std::vector<Rational> coeffs, long trunc);

    const SpherePoint& anchor() const { return anchor_; }
    long lead() const { return lead_; }
    long trunc() const { return trunc_; }
    bool is_zero_to_trunc() const { return c_.empty(); }

    Rational coeff(long k) const;

    LaurentSeries operator-() const;
    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    LaurentSeries scaled(const Rational& s) const;
    /// Termwise derivative with respect to the local coordinate.
    LaurentSeries derived() const;
    LaurentSeries truncated(long new_trunc) const;

    std::string str() const;

private:
    LaurentSeries(SpherePoint anchor, long lead, std::vector<Rational> coeffs, long trunc)
        : anchor_(std::move(anchor)), lead_(lead), c_(std::move(coeffs)), trunc_(trunc) {}
    void normalize();

    SpherePoint anchor_;
    long lead_ = 0;                // order of c_[0]; if c_ empty, lead_ = trunc_ + 1
    std::vector<Rational> c_;      // c_[i] is the coefficient of u^(lead_ + i)
    long trunc_ = 0;
};

/// Laurent expansion of f in the local coordinate at p, exact through order
/// `upto` inclusive.
LaurentSeries expand_at(const RationalFunction& f, const SpherePoint& p, long upto);

/// Vanishing/pole order of f at p. Throws std::domain_error for the zero
/// function (order defined nowhere).
long order_at(const RationalFunction& f, const SpherePoint& p);

/// Residue at p of the 1-form f dz. At infinity the chart transformation
/// dz = -w^{-2} dw is applied, which makes the global residue sum vanish
/// identically.
Rational residue_form(const RationalFunction& f, const SpherePoint& p);

/// k-th derivative with respect to z.
RationalFunction derivative(const RationalFunction& f, int k = 1);

}  // namespace knlab

#endif
