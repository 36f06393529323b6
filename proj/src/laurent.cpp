#include "knlab/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace knlab {

void LaurentSeries::normalize() {
    std::size_t drop = 0;
    while (drop < c_.size() && c_[drop].is_zero()) ++drop;
    if (drop) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(drop));
        lead_ += static_cast<long>(drop);
    }
    while (!c_.empty() && lead_ + static_cast<long>(c_.size()) - 1 > trunc_) c_.pop_back();
    if (c_.empty()) lead_ = trunc_ + 1;
}

LaurentSeries LaurentSeries::zero_to(SpherePoint anchor, long trunc) {
    return LaurentSeries(std::move(anchor), trunc + 1, {}, trunc);
}

LaurentSeries LaurentSeries::from_coeffs(SpherePoint anchor, long lead, std::vector<Rational> coeffs,
                                         long trunc) {
    LaurentSeries s(std::move(anchor), lead, std::move(coeffs), trunc);
    s.normalize();
    return s;
}

Rational LaurentSeries::coeff(long k) const {
    if (k > trunc_) throw std::logic_error("LaurentSeries::coeff: beyond truncation order");
    const long i = k - lead_;
    if (i < 0 || i >= static_cast<long>(c_.size())) return Rational(0);
    return c_[static_cast<std::size_t>(i)];
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries r(*this);
    for (auto& a : r.c_) a = -a;
    return r;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.anchor_ != b.anchor_) throw std::invalid_argument("LaurentSeries: anchor mismatch");
    const long trunc = std::min(a.trunc_, b.trunc_);
    const long lead = std::min(a.lead_, b.lead_);
    if (lead > trunc) return LaurentSeries::zero_to(a.anchor_, trunc);
    std::vector<Rational> c(static_cast<std::size_t>(trunc - lead + 1), Rational(0));
    for (long k = lead; k <= trunc; ++k) {
        Rational v(0);
        if (k >= a.lead_ && k - a.lead_ < static_cast<long>(a.c_.size())) v += a.c_[static_cast<std::size_t>(k - a.lead_)];
        if (k >= b.lead_ && k - b.lead_ < static_cast<long>(b.c_.size())) v += b.c_[static_cast<std::size_t>(k - b.lead_)];
        c[static_cast<std::size_t>(k - lead)] = v;
    }
    return LaurentSeries::from_coeffs(a.anchor_, lead, std::move(c), trunc);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.anchor_ != b.anchor_) throw std::invalid_argument("LaurentSeries: anchor mismatch");
    // a is exact to a.trunc_, so the product is exact to min over the cross
    // truncations; an identically-zero factor keeps the other's budget.
    long trunc;
    if (a.is_zero_to_trunc() && b.is_zero_to_trunc())
        trunc = a.trunc_ + b.trunc_ + 1;
    else if (a.is_zero_to_trunc())
        trunc = a.trunc_ + b.lead_;
    else if (b.is_zero_to_trunc())
        trunc = b.trunc_ + a.lead_;
    else
        trunc = std::min(a.trunc_ + b.lead_, b.trunc_ + a.lead_);
    if (a.is_zero_to_trunc() || b.is_zero_to_trunc()) return LaurentSeries::zero_to(a.anchor_, trunc);
    const long lead = a.lead_ + b.lead_;
    if (lead > trunc) return LaurentSeries::zero_to(a.anchor_, trunc);
    std::vector<Rational> c(static_cast<std::size_t>(trunc - lead + 1), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        const long base = a.lead_ + static_cast<long>(i) + b.lead_ - lead;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            const long k = base + static_cast<long>(j);
            if (k > trunc - lead) break;
            c[static_cast<std::size_t>(k)] += a.c_[i] * b.c_[j];
        }
    }
    return LaurentSeries::from_coeffs(a.anchor_, lead, std::move(c), trunc);
}

LaurentSeries LaurentSeries::scaled(const Rational& s) const {
    if (s.is_zero()) return zero_to(anchor_, trunc_);
    LaurentSeries r(*this);
    for (auto& a : r.c_) a *= s;
    return r;
}

LaurentSeries LaurentSeries::derived() const {
    std::vector<Rational> c;
    c.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const long k = lead_ + static_cast<long>(i);
        c.push_back(c_[i] * Rational(k));
    }
    return from_coeffs(anchor_, lead_ - 1, std::move(c), trunc_ - 1);
}

LaurentSeries LaurentSeries::truncated(long new_trunc) const {
    if (new_trunc > trunc_) throw std::logic_error("LaurentSeries::truncated: cannot extend");
    LaurentSeries r(*this);
    r.trunc_ = new_trunc;
    r.normalize();
    return r;
}

std::string LaurentSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        os << c_[i].str() << "*u^" << (lead_ + static_cast<long>(i));
        first = false;
    }
    if (first) os << "0";
    os << " + O(u^" << (trunc_ + 1) << ")";
    return os.str();
}

namespace {

// coefficients of the series of p(u) / u^0 ... standard unit-series inverse
std::vector<Rational> invert_unit(const std::vector<Rational>& d, std::size_t terms) {
    // d[0] != 0; returns v with (sum d_i u^i)(sum v_j u^j) = 1 + O(u^terms)
    std::vector<Rational> v(terms, Rational(0));
    const Rational inv0 = d[0].inverse();
    v[0] = inv0;
    for (std::size_t k = 1; k < terms; ++k) {
        Rational acc(0);
        const std::size_t imax = std::min(k, d.size() - 1);
        for (std::size_t i = 1; i <= imax; ++i) acc += d[i] * v[k - i];
        v[k] = -acc * inv0;
    }
    return v;
}

// series of num/den at u=0 through order `upto`, both polynomials in u
LaurentSeries series_of_quotient(const SpherePoint& p, const Polynomial& num, const Polynomial& den,
                                 long upto) {
    if (num.is_zero()) return LaurentSeries::zero_to(p, upto);
    long vn = num.valuation_at(Rational(0));
    long vd = den.valuation_at(Rational(0));
    const long ord = vn - vd;
    if (ord > upto) return LaurentSeries::zero_to(p, upto);
    const Polynomial n1 = num.deflate_at(Rational(0), vn);
    const Polynomial d1 = den.deflate_at(Rational(0), vd);
    const std::size_t terms = static_cast<std::size_t>(upto - ord + 1);
    const std::vector<Rational> inv = invert_unit(d1.coeffs(), terms);
    std::vector<Rational> c(terms, Rational(0));
    const auto& nc = n1.coeffs();
    for (std::size_t i = 0; i < nc.size() && i < terms; ++i) {
        if (nc[i].is_zero()) continue;
        for (std::size_t j = 0; j + i < terms; ++j) c[i + j] += nc[i] * inv[j];
    }
    return LaurentSeries::from_coeffs(p, ord, std::move(c), upto);
}

// generalized binomial coefficient C(e, k) for integer e (possibly negative)
Rational binom(long e, long k) {
    Rational acc(1);
    for (long i = 0; i < k; ++i) acc *= Rational(e - i, i + 1);
    return acc;
}

// series at p (finite) of prod (z - r)^e using the complete factor form
LaurentSeries series_of_factors(const SpherePoint& p, const FactorForm& form, long upto) {
    const Rational& z0 = p.z();
    long ord = 0;
    for (const auto& [r, e] : form.powers)
        if (r == z0) ord += e;
    if (ord > upto) return LaurentSeries::zero_to(p, upto);
    const std::size_t terms = static_cast<std::size_t>(upto - ord + 1);
    std::vector<Rational> acc(terms, Rational(0));
    acc[0] = form.scale;
    std::vector<Rational> tmp(terms);
    for (const auto& [r, e] : form.powers) {
        if (r == z0) continue;
        // (u + (z0 - r))^e = (z0-r)^e * sum_k C(e,k) (z0-r)^{-k} u^k
        const Rational base = z0 - r;
        std::vector<Rational> f(terms, Rational(0));
        for (std::size_t k = 0; k < terms; ++k)
            f[k] = binom(e, static_cast<long>(k)) * base.pow(e - static_cast<long>(k));
        std::fill(tmp.begin(), tmp.end(), Rational(0));
        for (std::size_t i = 0; i < terms; ++i) {
            if (acc[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < terms; ++j) tmp[i + j] += acc[i] * f[j];
        }
        acc.swap(tmp);
    }
    return LaurentSeries::from_coeffs(p, ord, std::move(acc), upto);
}

}  // namespace

LaurentSeries expand_at(const RationalFunction& f, const SpherePoint& p, long upto) {
    if (f.is_zero()) return LaurentSeries::zero_to(p, upto);
    if (p.is_infinity()) {
        // z = 1/w: f(1/w) = w^(deg den - deg num) * rev(num)(w)/rev(den)(w)
        const long shift = f.den().degree() - f.num().degree();
        LaurentSeries s = series_of_quotient(p, f.num().reversed(), f.den().reversed(), upto - shift);
        return LaurentSeries::from_coeffs(
            p, s.lead() + shift,
            [&] {
                std::vector<Rational> c;
                for (long k = s.lead(); k <= s.trunc(); ++k) c.push_back(s.coeff(k));
                return c;
            }(),
            upto);
    }
    if (f.factor_form()) return series_of_factors(p, *f.factor_form(), upto);
    return series_of_quotient(p, f.num().taylor_shift(p.z()), f.den().taylor_shift(p.z()), upto);
}

long order_at(const RationalFunction& f, const SpherePoint& p) {
    if (f.is_zero()) throw std::domain_error("order_at: zero function has no order");
    if (f.factor_form()) {
        if (p.is_infinity()) {
            long total = 0;
            for (const auto& [r, e] : f.factor_form()->powers) total += e;
            return -total;
        }
        auto it = f.factor_form()->powers.find(p.z());
        return it == f.factor_form()->powers.end() ? 0 : it->second;
    }
    if (p.is_infinity()) return f.den().degree() - f.num().degree();
    return f.num().valuation_at(p.z()) - f.den().valuation_at(p.z());
}

Rational residue_form(const RationalFunction& f, const SpherePoint& p) {
    if (f.is_zero()) return Rational(0);
    if (p.is_infinity()) {
        // f dz = -w^{-2} f(1/w) dw: residue is minus the w^1 coefficient of f(1/w)
        if (order_at(f, p) > 1) return Rational(0);
        return -expand_at(f, p, 1).coeff(1);
    }
    if (order_at(f, p) > -1) return Rational(0);
    return expand_at(f, p, -1).coeff(-1);
}

RationalFunction derivative(const RationalFunction& f, int k) {
    if (k < 0) throw std::invalid_argument("derivative: negative order");
    RationalFunction g = f;
    for (int i = 0; i < k; ++i) g = g.derived();
    return g;
}

}  // namespace knlab
