#include "knlab/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace knlab {

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::constant(Rational a) {
    Polynomial p;
    if (!a.is_zero()) p.c_.push_back(std::move(a));
    return p;
}

Polynomial Polynomial::monomial(long k, Rational coeff) {
    if (k < 0) throw std::invalid_argument("Polynomial::monomial: negative exponent");
    Polynomial p;
    if (!coeff.is_zero()) {
        p.c_.assign(static_cast<std::size_t>(k) + 1, Rational(0));
        p.c_.back() = std::move(coeff);
    }
    return p;
}

Polynomial Polynomial::var() { return monomial(1, Rational(1)); }

Polynomial Polynomial::linear_root(const Rational& a) {
    Polynomial p;
    p.c_ = {-a, Rational(1)};
    return p;
}

const Rational& Polynomial::lead() const {
    if (c_.empty()) throw std::logic_error("Polynomial::lead: zero polynomial");
    return c_.back();
}

Rational Polynomial::coeff(long k) const {
    if (k < 0 || k >= static_cast<long>(c_.size())) return Rational(0);
    return c_[static_cast<std::size_t>(k)];
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& a : r.c_) a = -a;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            out[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(const Rational& s) const {
    if (s.is_zero()) return Polynomial();
    Polynomial r(*this);
    for (auto& a : r.c_) a *= s;
    return r;
}

Polynomial Polynomial::pow(unsigned long e) const {
    Polynomial acc = Polynomial::constant(Rational(1));
    Polynomial base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Rational> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(out));
}

Rational Polynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc *= x;
        acc += c_[i];
    }
    return acc;
}

std::pair<Polynomial, Polynomial> Polynomial::divrem(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::invalid_argument("Polynomial::divrem: division by zero polynomial");
    Polynomial rem = a;
    if (a.degree() < b.degree()) return {Polynomial(), rem};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rational(0));
    const Rational lb = b.lead();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        const long shift = rem.degree() - b.degree();
        const Rational f = rem.lead() / lb;
        q[static_cast<std::size_t>(shift)] = f;
        // rem -= f * z^shift * b
        for (std::size_t i = 0; i < b.c_.size(); ++i) {
            rem.c_[static_cast<std::size_t>(shift) + i] -= f * b.c_[i];
        }
        rem.trim();
    }
    return {Polynomial(std::move(q)), rem};
}

Polynomial Polynomial::gcd_monic(Polynomial a, Polynomial b) {
    if (a.is_zero() && b.is_zero()) return Polynomial();
    while (!b.is_zero()) {
        Polynomial r = divrem(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? Polynomial() : r.monic();
    }
    return a.monic();
}

long Polynomial::valuation_at(const Rational& x) const {
    if (is_zero()) throw std::logic_error("Polynomial::valuation_at: zero polynomial");
    long v = 0;
    Polynomial p = *this;
    while (true) {
        // synthetic division by (z - x); remainder is p(x)
        std::vector<Rational> q(p.c_.size() - 1, Rational(0));
        Rational carry(0);
        for (std::size_t i = p.c_.size(); i-- > 1;) {
            carry = p.c_[i] + carry * x;
            q[i - 1] = carry;
        }
        Rational rem = p.c_[0] + carry * x;
        if (!rem.is_zero()) return v;
        ++v;
        p = Polynomial(std::move(q));
        if (p.is_zero()) throw std::logic_error("Polynomial::valuation_at: unreachable");
    }
}

Polynomial Polynomial::deflate_at(const Rational& x, long k) const {
    Polynomial p = *this;
    for (long step = 0; step < k; ++step) {
        if (p.is_zero()) throw std::invalid_argument("Polynomial::deflate_at: zero polynomial");
        std::vector<Rational> q(p.c_.size() - 1, Rational(0));
        Rational carry(0);
        for (std::size_t i = p.c_.size(); i-- > 1;) {
            carry = p.c_[i] + carry * x;
            q[i - 1] = carry;
        }
        Rational rem = p.c_[0] + carry * x;
        if (!rem.is_zero()) throw std::invalid_argument("Polynomial::deflate_at: not a root of sufficient multiplicity");
        p = Polynomial(std::move(q));
    }
    return p;
}

Polynomial Polynomial::taylor_shift(const Rational& x) const {
    // repeated synthetic division: p(x+u) = sum rem_i u^i
    if (is_zero()) return Polynomial();
    std::vector<Rational> work = c_;
    std::vector<Rational> out(c_.size(), Rational(0));
    const std::size_t n = c_.size();
    for (std::size_t k = 0; k < n; ++k) {
        Rational carry(0);
        for (std::size_t i = n; i-- > k;) {
            work[i] += carry * x;
            carry = work[i];
        }
        out[k] = work[k];
        // next round divides the quotient, which lives in work[k+1..]
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::reversed() const {
    std::vector<Rational> out(c_.rbegin(), c_.rend());
    return Polynomial(std::move(out));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return Polynomial();
    return scaled(lead().inverse());
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Rational& a = c_[i];
        if (a.is_zero()) continue;
        Rational mag = a.sign() < 0 ? -a : a;
        if (first) {
            if (a.sign() < 0) os << "-";
            first = false;
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
        }
        const bool show_coeff = (i == 0) || !mag.is_one();
        if (show_coeff) os << mag.str();
        if (i > 0) {
            if (show_coeff) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace knlab
