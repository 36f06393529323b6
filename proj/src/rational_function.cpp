#include "knlab/rational_function.hpp"

#include <sstream>
#include <stdexcept>

namespace knlab {

namespace {

Polynomial expand_roots(const std::map<Rational, long>& roots) {
    Polynomial p = Polynomial::constant(Rational(1));
    for (const auto& [r, m] : roots) p *= Polynomial::linear_root(r).pow(static_cast<unsigned long>(m));
    return p;
}

}  // namespace

void RationalFunction::rebuild_den() {
    den_ = expand_roots(den_roots_) * den_cof_;
}

RationalFunction RationalFunction::make_reduced(Polynomial num, std::map<Rational, long> den_roots,
                                                Polynomial den_cof) {
    RationalFunction f;
    if (den_cof.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
    if (num.is_zero()) return f;

    // cancel tracked roots against the numerator
    for (auto it = den_roots.begin(); it != den_roots.end();) {
        const long v = num.valuation_at(it->first);
        const long cancel = v < it->second ? v : it->second;
        if (cancel > 0) {
            num = num.deflate_at(it->first, cancel);
            it->second -= cancel;
        }
        if (it->second == 0)
            it = den_roots.erase(it);
        else
            ++it;
    }
    // cancel whatever the cofactor still shares with the numerator
    if (den_cof.degree() > 0) {
        Polynomial g = Polynomial::gcd_monic(num, den_cof);
        if (g.degree() > 0) {
            num = Polynomial::divrem(num, g).first;
            den_cof = Polynomial::divrem(den_cof, g).first;
        }
    }
    // normalize: den monic, scale pushed into the numerator
    const Rational lc = den_cof.is_zero() ? Rational(1) : den_cof.lead();
    if (!lc.is_one()) {
        den_cof = den_cof.scaled(lc.inverse());
        num = num.scaled(lc.inverse());
    }
    f.num_ = std::move(num);
    f.den_roots_ = std::move(den_roots);
    f.den_cof_ = std::move(den_cof);
    f.rebuild_den();
    return f;
}

RationalFunction RationalFunction::constant(const Rational& a) {
    return from_polynomial(Polynomial::constant(a));
}

RationalFunction RationalFunction::from_polynomial(Polynomial p) {
    RationalFunction f;
    f.num_ = std::move(p);
    return f;
}

RationalFunction RationalFunction::from_num_den(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
    return make_reduced(std::move(num), {}, std::move(den));
}

RationalFunction RationalFunction::from_factors(const Rational& scale,
                                                const std::map<Rational, long>& powers) {
    RationalFunction f;
    if (scale.is_zero()) return f;
    Polynomial num = Polynomial::constant(scale);
    std::map<Rational, long> droots;
    FactorForm form{scale, {}};
    for (const auto& [r, e] : powers) {
        if (e == 0) continue;
        form.powers[r] = e;
        if (e > 0)
            num *= Polynomial::linear_root(r).pow(static_cast<unsigned long>(e));
        else
            droots[r] = -e;
    }
    f.num_ = std::move(num);
    f.den_roots_ = std::move(droots);
    f.rebuild_den();
    f.monomial_ = std::move(form);
    return f;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction f(*this);
    f.num_ = -f.num_;
    if (f.monomial_) f.monomial_->scale = -f.monomial_->scale;
    return f;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // lcm of denominators: per-root max multiplicity, cofactor lcm by gcd
    std::map<Rational, long> lcm_roots = a.den_roots_;
    for (const auto& [r, m] : b.den_roots_) {
        auto it = lcm_roots.find(r);
        if (it == lcm_roots.end())
            lcm_roots[r] = m;
        else if (it->second < m)
            it->second = m;
    }
    Polynomial g = Polynomial::gcd_monic(a.den_cof_, b.den_cof_);
    Polynomial cof_lcm = a.den_cof_ * Polynomial::divrem(b.den_cof_, g).first;

    auto complement = [&](const RationalFunction& f) {
        // lcm_den / f.den as a polynomial
        Polynomial c = Polynomial::constant(Rational(1));
        for (const auto& [r, m] : lcm_roots) {
            long have = 0;
            auto it = f.den_roots_.find(r);
            if (it != f.den_roots_.end()) have = it->second;
            if (m > have) c *= Polynomial::linear_root(r).pow(static_cast<unsigned long>(m - have));
        }
        c *= Polynomial::divrem(cof_lcm, f.den_cof_).first;
        return c;
    };
    Polynomial num = a.num_ * complement(a) + b.num_ * complement(b);
    return RationalFunction::make_reduced(std::move(num), std::move(lcm_roots), std::move(cof_lcm));
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-b);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction();
    if (a.monomial_ && b.monomial_) {
        std::map<Rational, long> powers = a.monomial_->powers;
        for (const auto& [r, e] : b.monomial_->powers) {
            powers[r] += e;
            if (powers[r] == 0) powers.erase(r);
        }
        return RationalFunction::from_factors(a.monomial_->scale * b.monomial_->scale, powers);
    }
    std::map<Rational, long> droots = a.den_roots_;
    for (const auto& [r, m] : b.den_roots_) droots[r] += m;
    return RationalFunction::make_reduced(a.num_ * b.num_, std::move(droots), a.den_cof_ * b.den_cof_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return a * b.inverse();
}

RationalFunction RationalFunction::scaled(const Rational& s) const {
    if (s.is_zero()) return RationalFunction();
    RationalFunction f(*this);
    f.num_ = f.num_.scaled(s);
    if (f.monomial_) f.monomial_->scale *= s;
    return f;
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw std::invalid_argument("RationalFunction: inverse of zero");
    if (monomial_) {
        std::map<Rational, long> powers;
        for (const auto& [r, e] : monomial_->powers) powers[r] = -e;
        return from_factors(monomial_->scale.inverse(), powers);
    }
    return from_num_den(den_, num_);
}

RationalFunction RationalFunction::pow(long e) const {
    if (e == 0) return constant(Rational(1));
    if (monomial_) {
        std::map<Rational, long> powers;
        for (const auto& [r, ex] : monomial_->powers) powers[r] = ex * e;
        return from_factors(monomial_->scale.pow(e), powers);
    }
    RationalFunction base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    RationalFunction acc = constant(Rational(1));
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

RationalFunction RationalFunction::derived() const {
    if (is_zero()) return RationalFunction();
    if (den_.degree() == 0) {
        RationalFunction f;
        f.num_ = num_.derivative();
        return f;
    }
    // (n'd - nd') / d^2, with the squared denominator kept factored
    Polynomial numerator = num_.derivative() * den_ - num_ * den_.derivative();
    std::map<Rational, long> droots;
    for (const auto& [r, m] : den_roots_) droots[r] = 2 * m;
    return make_reduced(std::move(numerator), std::move(droots), den_cof_ * den_cof_);
}

Rational RationalFunction::eval(const Rational& x) const {
    const Rational d = den_.eval(x);
    if (d.is_zero()) throw std::invalid_argument("RationalFunction::eval: pole at evaluation point");
    return num_.eval(x) / d;
}

std::string RationalFunction::str(const std::string& var) const {
    if (den_.degree() == 0) return num_.str(var);
    std::ostringstream os;
    os << "(" << num_.str(var) << ")/(" << den_.str(var) << ")";
    return os.str();
}

}  // namespace knlab
