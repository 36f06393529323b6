#include "knlab/basis.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace knlab {

void GradedExpansion::set(long n, int p, Rational v) {
    if (v.is_zero())
        c_.erase({n, p});
    else
        c_[{n, p}] = std::move(v);
}

Rational GradedExpansion::coeff(long n, int p) const {
    auto it = c_.find({n, p});
    return it == c_.end() ? Rational(0) : it->second;
}

long GradedExpansion::degree_min() const {
    if (c_.empty()) throw std::logic_error("GradedExpansion::degree_min: empty");
    return c_.begin()->first.first;
}

long GradedExpansion::degree_max() const {
    if (c_.empty()) throw std::logic_error("GradedExpansion::degree_max: empty");
    return c_.rbegin()->first.first;
}

SurfacePtr MarkedSurface::make(std::vector<Rational> in_points, std::vector<SpherePoint> out_points) {
    if (in_points.empty()) throw std::invalid_argument("MarkedSurface: need at least one in-point");
    if (out_points.empty()) throw std::invalid_argument("MarkedSurface: need at least one out-point");
    if (!out_points.back().is_infinity())
        throw std::invalid_argument("MarkedSurface: the last out-point must be infinity");
    for (std::size_t j = 0; j + 1 < out_points.size(); ++j)
        if (out_points[j].is_infinity())
            throw std::invalid_argument("MarkedSurface: only the last out-point may be infinity");
    std::set<SpherePoint> seen;
    for (const auto& x : in_points)
        if (!seen.insert(SpherePoint::finite(x)).second)
            throw std::invalid_argument("MarkedSurface: duplicate marked point " + x.str());
    for (const auto& q : out_points)
        if (!seen.insert(q).second)
            throw std::invalid_argument("MarkedSurface: duplicate marked point " + q.str());
    return SurfacePtr(new MarkedSurface(std::move(in_points), std::move(out_points)));
}

const Rational& MarkedSurface::in_point(int p) const {
    if (p < 1 || p > num_in()) throw std::invalid_argument("MarkedSurface::in_point: index out of range");
    return in_[static_cast<std::size_t>(p - 1)];
}

const SpherePoint& MarkedSurface::out_point(int j) const {
    if (j < 1 || j > num_out()) throw std::invalid_argument("MarkedSurface::out_point: index out of range");
    return out_[static_cast<std::size_t>(j - 1)];
}

std::vector<SpherePoint> MarkedSurface::marked_points() const {
    std::vector<SpherePoint> pts;
    pts.reserve(in_.size() + out_.size());
    for (const auto& x : in_) pts.push_back(SpherePoint::finite(x));
    for (const auto& q : out_) pts.push_back(q);
    return pts;
}

bool MarkedSurface::is_marked(const SpherePoint& q) const {
    if (q.is_infinity()) return true;  // last out-point, always present
    for (const auto& x : in_)
        if (x == q.z()) return true;
    for (const auto& o : out_)
        if (!o.is_infinity() && o.z() == q.z()) return true;
    return false;
}

std::vector<long> MarkedSurface::prescribe_orders(int weight, long n, int p) const {
    if (p < 1 || p > num_in()) throw std::invalid_argument("prescribe_orders: point index out of range");
    const long base = n + 1 - weight;
    std::vector<long> orders;
    orders.reserve(static_cast<std::size_t>(num_marked()));
    long sum = 0;
    for (int i = 1; i <= num_in(); ++i) {
        const long o = base - (i == p ? 1 : 0);
        orders.push_back(o);
        sum += o;
    }
    for (int j = 1; j <= num_out() - 1; ++j) {
        orders.push_back(-base);
        sum += -base;
    }
    orders.push_back(-2 * static_cast<long>(weight) - sum);  // balance at infinity
    return orders;
}

const BasisElement& MarkedSurface::basis_element(int weight, long n, int p) const {
    const std::tuple<int, long, int> key{weight, n, p};
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
    }
    auto orders = prescribe_orders(weight, n, p);
    // direct product over the finite marked points; the order at infinity
    // is then automatic from the degree balance
    std::map<Rational, long> powers;
    for (int i = 0; i < num_in(); ++i)
        if (orders[static_cast<std::size_t>(i)] != 0) powers[in_[static_cast<std::size_t>(i)]] = orders[static_cast<std::size_t>(i)];
    for (int j = 0; j + 1 < num_out(); ++j) {
        const long o = orders[static_cast<std::size_t>(num_in() + j)];
        if (o != 0) powers[out_[static_cast<std::size_t>(j)].z()] = o;
    }
    // normalization: leading coefficient 1 at P_p
    const Rational& zp = in_point(p);
    Rational lead(1);
    for (const auto& [x, e] : powers) {
        if (x == zp) continue;
        lead *= (zp - x).pow(e);
    }
    auto elem = std::make_unique<BasisElement>();
    elem->weight = weight;
    elem->n = n;
    elem->p = p;
    elem->orders = orders;
    elem->section = Section{shared_from_this(), weight,
                            RationalFunction::from_factors(lead.inverse(), powers)};
    // exact-order guard; at infinity the chart twist shifts the representing
    // function's order by 2*weight
    const auto pts = marked_points();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const long twist = pts[k].is_infinity() ? 2 * static_cast<long>(weight) : 0;
        if (order_at(elem->section.rep, pts[k]) != orders[k] + twist)
            throw std::logic_error("basis_element: constructed section violates its order prescription");
    }
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto [it, inserted] = cache_.emplace(key, std::move(elem));
    return *it->second;
}

std::string MarkedSurface::str() const {
    std::ostringstream os;
    os << "I=[";
    for (std::size_t i = 0; i < in_.size(); ++i) os << (i ? "," : "") << in_[i].str();
    os << "] O=[";
    for (std::size_t j = 0; j < out_.size(); ++j) os << (j ? "," : "") << out_[j].str();
    os << "]";
    return os.str();
}

bool is_admissible(const Section& s) {
    if (!s.surface) return false;
    if (s.rep.is_zero()) return true;
    Polynomial den = s.rep.den();
    if (den.degree() == 0) return true;  // poles only at infinity, which is marked
    for (const auto& x : s.surface->in_points()) {
        const long v = den.valuation_at(x);
        if (v > 0) den = den.deflate_at(x, v);
    }
    for (const auto& q : s.surface->out_points()) {
        if (q.is_infinity()) continue;
        const long v = den.valuation_at(q.z());
        if (v > 0) den = den.deflate_at(q.z(), v);
    }
    return den.degree() == 0;
}

void require_admissible(const Section& s, const char* who) {
    if (!is_admissible(s))
        throw std::invalid_argument(std::string(who) + ": section has poles outside the marked points");
}

void require_same_surface(const Section& a, const Section& b, const char* who) {
    if (!a.surface || !b.surface || !a.surface->same_geometry(*b.surface))
        throw std::invalid_argument(std::string(who) + ": surface mismatch");
}

namespace {

Rational convolve_at(const LaurentSeries& sa, const LaurentSeries& sb, long target) {
    Rational acc(0);
    for (long k = sa.lead(); k <= sa.trunc(); ++k) {
        const long j = target - k;
        if (j < sb.lead() || j > sb.trunc()) continue;
        acc += sa.coeff(k) * sb.coeff(j);
    }
    return acc;
}

}  // namespace

Rational residue_product_form(const RationalFunction& a, const RationalFunction& b, const SpherePoint& p) {
    if (a.is_zero() || b.is_zero()) return Rational(0);
    const long oa = order_at(a, p);
    const long ob = order_at(b, p);
    if (!p.is_infinity()) {
        if (oa + ob >= 0) return Rational(0);
        const auto sa = expand_at(a, p, -1 - ob);
        const auto sb = expand_at(b, p, -1 - oa);
        return convolve_at(sa, sb, -1);
    }
    // (a b) dz = -w^{-2} a(1/w) b(1/w) dw: minus the w^1 coefficient
    if (oa + ob > 1) return Rational(0);
    const auto sa = expand_at(a, p, 1 - ob);
    const auto sb = expand_at(b, p, 1 - oa);
    return -convolve_at(sa, sb, 1);
}

Rational kn_pairing(const Section& f, const Section& g) {
    require_same_surface(f, g, "kn_pairing");
    if (f.weight + g.weight != 1)
        throw std::invalid_argument("kn_pairing: weights must be complementary (lambda + mu = 1)");
    require_admissible(f, "kn_pairing");
    require_admissible(g, "kn_pairing");
    Rational acc(0);
    for (const auto& x : f.surface->in_points())
        acc += residue_product_form(f.rep, g.rep, SpherePoint::finite(x));
    return acc;
}

GradedExpansion expand(const Section& sec) {
    if (!sec.surface) throw std::invalid_argument("expand: section without surface");
    require_admissible(sec, "expand");
    const MarkedSurface& S = *sec.surface;
    GradedExpansion ge(sec.weight);
    if (sec.rep.is_zero()) return ge;
    if (!S.expansion_supported())
        throw std::runtime_error(
            "expand: surface " + S.str() +
            " does not satisfy 2K+1 > N; the even out-point order prescription "
            "does not yield terminating expansions here");

    const int K = S.num_in();
    const int N = S.num_marked();
    const long G = 2 * K + 1 - N;
    const int lambda = sec.weight;

    long n_min = 0;
    bool first = true;
    for (int i = 1; i <= K; ++i) {
        const long v = order_at(sec.rep, SpherePoint::finite(S.in_point(i))) + lambda;
        if (first || v < n_min) n_min = v;
        first = false;
    }
    // beyond n_hi every out-point is free of poles of the pairing 1-form,
    // so the coefficient vanishes by the residue theorem
    long n_hi = n_min;
    for (int j = 1; j < S.num_out(); ++j) {
        const long oq = order_at(sec.rep, S.out_point(j));
        n_hi = std::max(n_hi, lambda - oq);
    }
    {
        const long oinf = order_at(sec.rep, SpherePoint::infinity());
        const long need = 1 - oinf;  // G*(n-lambda) >= need
        const long q = (need > 0) ? (need + G - 1) / G : -((-need) / G);
        n_hi = std::max(n_hi, lambda + q);
    }

    // one local expansion of the section per in-point serves every degree
    std::vector<LaurentSeries> sec_series;
    std::vector<long> sec_order;
    for (int i = 1; i <= K; ++i) {
        const SpherePoint P = SpherePoint::finite(S.in_point(i));
        sec_order.push_back(order_at(sec.rep, P));
        sec_series.push_back(expand_at(sec.rep, P, n_hi - lambda));
    }

    for (long n = n_min; n < n_hi; ++n) {
        for (int p = 1; p <= K; ++p) {
            const BasisElement& dual = S.basis_element(1 - lambda, -n, p);
            Rational c(0);
            for (int i = 1; i <= K; ++i) {
                const SpherePoint P = SpherePoint::finite(S.in_point(i));
                const long od = order_at(dual.section.rep, P);
                if (sec_order[static_cast<std::size_t>(i - 1)] + od >= 0) continue;
                const auto sd = expand_at(dual.section.rep, P, -1 - sec_order[static_cast<std::size_t>(i - 1)]);
                c += convolve_at(sec_series[static_cast<std::size_t>(i - 1)], sd, -1);
            }
            ge.set(n, p, std::move(c));
        }
    }

    // exact reconstruction is part of the contract
    const Section back = reconstruct(sec.surface, ge);
    if (back.rep != sec.rep)
        throw std::logic_error("expand: reconstruction mismatch (basis incomplete for this section)");
    return ge;
}

Section reconstruct(const SurfacePtr& surface, const GradedExpansion& ge) {
    RationalFunction acc;
    for (const auto& [key, v] : ge.table()) {
        const BasisElement& b = surface->basis_element(ge.weight(), key.first, key.second);
        acc += b.section.rep.scaled(v);
    }
    return Section{surface, ge.weight(), std::move(acc)};
}

DualityReport verify_duality(const SurfacePtr& surface, int weight, long window) {
    if (window < 1) throw std::invalid_argument("verify_duality: window must be >= 1");
    DualityReport rep;
    rep.weight = weight;
    rep.window = window;
    const int K = surface->num_in();
    for (long n = -window; n <= window; ++n) {
        for (int p = 1; p <= K; ++p) {
            const BasisElement& f = surface->basis_element(weight, n, p);
            for (long m = -window; m <= window; ++m) {
                for (int r = 1; r <= K; ++r) {
                    const BasisElement& g = surface->basis_element(1 - weight, m, r);
                    const Rational v = kn_pairing(f.section, g.section);
                    const Rational want = (m == -n && p == r) ? Rational(1) : Rational(0);
                    ++rep.checked;
                    if (v != want && rep.pass) {
                        rep.pass = false;
                        std::ostringstream os;
                        os << "<f^" << weight << "_{" << n << "," << p << "}, f^" << (1 - weight)
                           << "_{" << m << "," << r << "}> = " << v.str() << ", expected " << want.str();
                        rep.first_violation = os.str();
                    }
                }
            }
        }
    }
    return rep;
}

}  // namespace knlab
