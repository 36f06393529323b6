#include "knlab/rational.hpp"

#include <cctype>
#include <ostream>

namespace knlab {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto check_int = [&](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    const auto slash = s.find('/');
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den = (slash == std::string::npos) ? std::string("1") : s.substr(slash + 1);
    if (!check_int(num) || !check_int(den))
        throw std::invalid_argument("Rational::parse: not an integer or p/q fraction: '" + s + "'");
    mpq_class v{mpz_class(num), mpz_class(den)};
    if (v.get_den() == 0) throw std::invalid_argument("Rational::parse: zero denominator: '" + s + "'");
    v.canonicalize();
    return Rational(v);
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    bool invert = e < 0;
    if (invert && is_zero()) throw std::invalid_argument("Rational::pow: zero to negative power");
    unsigned long k = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpq_class base = invert ? mpq_class(1) / v_ : v_;
    mpq_class acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return Rational(acc);
}

std::string Rational::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_.get_str();
}

}  // namespace knlab
