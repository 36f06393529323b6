#include "knlab/cocycles.hpp"

#include <sstream>

namespace knlab {

std::vector<SpherePoint> Cycle::points(const MarkedSurface& s) const {
    std::vector<SpherePoint> pts;
    if (is_separating()) {
        for (const auto& x : s.in_points()) pts.push_back(SpherePoint::finite(x));
    } else {
        if (index_ > s.num_in()) throw std::invalid_argument("Cycle: in-point index out of range");
        pts.push_back(SpherePoint::finite(s.in_point(index_)));
    }
    return pts;
}

void require_admissible_connection(const SurfacePtr& s, const RationalFunction& conn, const char* who) {
    Section probe{s, 0, conn};
    if (!is_admissible(probe))
        throw std::invalid_argument(std::string(who) + ": connection has poles outside the marked points");
}

namespace {

// residue at p of (sum_i a_i * b_i) dz where the factors are given as local
// series with enough terms; asserts the truncation budget
Rational residue_of_series_product(const LaurentSeries& sa, const LaurentSeries& sb) {
    const LaurentSeries prod = sa * sb;
    if (prod.trunc() < -1) throw std::logic_error("residue_of_series_product: insufficient truncation");
    return prod.coeff(-1);
}

}  // namespace

Rational cocycle_f(const Cycle& c, const Section& g, const Section& h) {
    require_same_surface(g, h, "cocycle_f");
    if (g.weight != 0 || h.weight != 0) throw std::invalid_argument("cocycle_f: weight-0 sections required");
    require_admissible(g, "cocycle_f");
    require_admissible(h, "cocycle_f");
    if (g.is_zero() || h.is_zero()) return Rational(0);
    Rational acc(0);
    for (const auto& P : c.points(*g.surface)) {
        const long og = order_at(g.rep, P);
        const long oh = order_at(h.rep, P);
        // g * h' has order >= og + oh - 1
        if (og + oh - 1 >= 0) continue;
        const auto sg = expand_at(g.rep, P, -oh);
        const auto sh = expand_at(h.rep, P, -og + 1);
        acc += residue_of_series_product(sg, sh.derived());
    }
    return acc;
}

Rational cocycle_v(const Cycle& c, const RationalFunction& R, const Section& e, const Section& f) {
    require_same_surface(e, f, "cocycle_v");
    if (e.weight != -1 || f.weight != -1)
        throw std::invalid_argument("cocycle_v: weight-(-1) sections required");
    require_admissible(e, "cocycle_v");
    require_admissible(f, "cocycle_v");
    require_admissible_connection(e.surface, R, "cocycle_v");
    if (e.is_zero() || f.is_zero()) return Rational(0);
    const Rational half(1, 2);
    Rational acc(0);
    for (const auto& P : c.points(*e.surface)) {
        const long oe = order_at(e.rep, P);
        const long of = order_at(f.rep, P);
        long oR = 0;
        bool hasR = !R.is_zero();
        if (hasR) oR = order_at(R, P);
        // deepest term order: oe + of - 3, or with R: oR + oe + of - 2
        long depth = oe + of - 3;
        if (hasR) depth = std::min(depth, oR + oe + of - 2);
        if (depth >= 0) continue;
        const long budget = -depth;  // series length budget
        const auto se = expand_at(e.rep, P, oe + budget + 3);
        const auto sf = expand_at(f.rep, P, of + budget + 3);
        LaurentSeries integrand =
            (se.derived().derived().derived() * sf - se * sf.derived().derived().derived()).scaled(half);
        if (hasR) {
            const auto sR = expand_at(R, P, oR + budget + 3);
            integrand = integrand - sR * (se.derived() * sf - se * sf.derived());
        }
        if (integrand.trunc() < -1) throw std::logic_error("cocycle_v: insufficient truncation");
        acc += integrand.coeff(-1);
    }
    return acc;
}

Rational cocycle_m(const Cycle& c, const RationalFunction& T, const Section& e, const Section& g) {
    require_same_surface(e, g, "cocycle_m");
    if (e.weight != -1 || g.weight != 0)
        throw std::invalid_argument("cocycle_m: expected (vector field, function)");
    require_admissible(e, "cocycle_m");
    require_admissible(g, "cocycle_m");
    require_admissible_connection(e.surface, T, "cocycle_m");
    if (e.is_zero() || g.is_zero()) return Rational(0);
    Rational acc(0);
    for (const auto& P : c.points(*e.surface)) {
        const long oe = order_at(e.rep, P);
        const long og = order_at(g.rep, P);
        long oT = 0;
        bool hasT = !T.is_zero();
        if (hasT) oT = order_at(T, P);
        long depth = oe + og - 2;
        if (hasT) depth = std::min(depth, oT + oe + og - 1);
        if (depth >= 0) continue;
        const long budget = -depth;
        const auto se = expand_at(e.rep, P, oe + budget + 2);
        const auto sg = expand_at(g.rep, P, og + budget + 2);
        LaurentSeries integrand = se * sg.derived().derived();
        if (hasT) {
            const auto sT = expand_at(T, P, oT + budget + 2);
            integrand = integrand + sT * (se * sg.derived());
        }
        if (integrand.trunc() < -1) throw std::logic_error("cocycle_m: insufficient truncation");
        acc += integrand.coeff(-1);
    }
    return acc;
}

D1CocycleSpec D1CocycleSpec::with(std::string nm, Cycle c, Rational a, Rational b, Rational v) {
    D1CocycleSpec s;
    s.name = std::move(nm);
    s.cycle = c;
    s.r1 = std::move(a);
    s.r2 = std::move(b);
    s.r3 = std::move(v);
    return s;
}

D1CocycleSpec D1CocycleSpec::vector_part(Cycle c, RationalFunction R) {
    auto s = with("gamma_v", c, 0, 0, 1);
    s.R = std::move(R);
    return s;
}

D1CocycleSpec D1CocycleSpec::mixing_part(Cycle c, RationalFunction T) {
    auto s = with("gamma_m", c, 0, 1, 0);
    s.T = std::move(T);
    return s;
}

D1CocycleSpec D1CocycleSpec::combination(Rational r1, Rational r2, Rational r3, RationalFunction R,
                                         RationalFunction T) {
    auto s = with("combination", Cycle::separating(), std::move(r1), std::move(r2), std::move(r3));
    s.R = std::move(R);
    s.T = std::move(T);
    return s;
}

D1CocycleSpec D1CocycleSpec::lambda_weighted(int lambda) {
    const long l = lambda;
    auto s = with("gamma_lambda(" + std::to_string(lambda) + ")", Cycle::separating(), Rational(-1),
                  Rational(-(1 - 2 * l), 2), Rational(-2 * (6 * l * l - 6 * l + 1)));
    return s;
}

Rational D1CocycleSpec::eval(const D1Element& a, const D1Element& b) const {
    return eval_sections(a.fn, a.vec, b.fn, b.vec);
}

Rational D1CocycleSpec::eval_sections(const Section& fa, const Section& va, const Section& fb,
                                      const Section& vb) const {
    Rational acc(0);
    if (!r1.is_zero() && !fa.is_zero() && !fb.is_zero()) acc += r1 * cocycle_f(cycle, fa, fb);
    if (!r2.is_zero()) {
        if (!va.is_zero() && !fb.is_zero()) acc += r2 * cocycle_m(cycle, T, va, fb);
        if (!vb.is_zero() && !fa.is_zero()) acc -= r2 * cocycle_m(cycle, T, vb, fa);
    }
    if (!r3.is_zero() && !va.is_zero() && !vb.is_zero()) acc += r3 * cocycle_v(cycle, R, va, vb);
    return acc;
}

LocalityBounds locality_bounds(const SurfacePtr& s, const D1CocycleSpec& spec, long window) {
    if (window < 1) throw std::invalid_argument("locality_bounds: window must be >= 1");
    LocalityBounds out;
    const int K = s->num_in();
    struct Desc {
        int part;  // 0 function, 1 vector
        long n;
        int p;
    };
    std::vector<Desc> descs;
    for (long n = -window; n <= window; ++n)
        for (int p = 1; p <= K; ++p) {
            descs.push_back({0, n, p});
            descs.push_back({1, n, p});
        }
    auto elem = [&](const Desc& d) {
        const Section& sec = s->basis_element(d.part == 0 ? 0 : -1, d.n, d.p).section;
        return d.part == 0 ? D1Element::from_function(sec) : D1Element::from_vector(sec);
    };
    for (const auto& da : descs)
        for (const auto& db : descs) {
            const Rational v = spec.eval(elem(da), elem(db));
            if (v.is_zero()) continue;
            const long level = da.n + db.n;
            if (!out.any_nonzero) {
                out.any_nonzero = true;
                out.min_level = out.max_level = level;
            } else {
                out.min_level = std::min(out.min_level, level);
                out.max_level = std::max(out.max_level, level);
            }
        }
    return out;
}

CheckReport check_multiplicative(const SurfacePtr& s, const FunctionCocycle& gamma, long window) {
    CheckReport rep;
    const int K = s->num_in();
    std::vector<Section> basis;
    for (long n = -window; n <= window; ++n)
        for (int p = 1; p <= K; ++p) basis.push_back(s->basis_element(0, n, p).section);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const Section fg = mul_A(basis[i], basis[j]);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                const Section gh = mul_A(basis[j], basis[k]);
                const Section hf = mul_A(basis[k], basis[i]);
                const Rational v = gamma(fg, basis[k]) + gamma(gh, basis[i]) + gamma(hf, basis[j]);
                ++rep.checked;
                if (!v.is_zero() && rep.pass) {
                    rep.pass = false;
                    std::ostringstream os;
                    os << "multiplicativity fails on basis triple (" << i << "," << j << "," << k
                       << ") with defect " << v.str();
                    rep.first_violation = os.str();
                }
            }
        }
    return rep;
}

CheckReport check_L_invariant(const SurfacePtr& s, const FunctionCocycle& gamma, long window) {
    CheckReport rep;
    const int K = s->num_in();
    std::vector<Section> fns, vfs;
    for (long n = -window; n <= window; ++n)
        for (int p = 1; p <= K; ++p) {
            fns.push_back(s->basis_element(0, n, p).section);
            vfs.push_back(s->basis_element(-1, n, p).section);
        }
    for (const auto& e : vfs) {
        std::vector<Section> acted;
        acted.reserve(fns.size());
        for (const auto& g : fns) acted.push_back(lie_action(e, g));
        for (std::size_t i = 0; i < fns.size(); ++i)
            for (std::size_t j = 0; j < fns.size(); ++j) {
                const Rational v = gamma(acted[i], fns[j]) + gamma(fns[i], acted[j]);
                ++rep.checked;
                if (!v.is_zero() && rep.pass) {
                    rep.pass = false;
                    std::ostringstream os;
                    os << "L-invariance fails on (e,g,h) window indices with defect " << v.str();
                    rep.first_violation = os.str();
                }
            }
    }
    return rep;
}

CheckReport check_d1_cocycle_identity(const SurfacePtr& s, const D1CocycleSpec& spec, long window) {
    CheckReport rep;
    const int K = s->num_in();
    std::vector<D1Element> basis;
    for (long n = -window; n <= window; ++n)
        for (int p = 1; p <= K; ++p) {
            basis.push_back(D1Element::from_function(s->basis_element(0, n, p).section));
            basis.push_back(D1Element::from_vector(s->basis_element(-1, n, p).section));
        }
    // all pairwise brackets up front; the triple sweep reuses them
    std::vector<std::vector<D1Element>> br(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        br[i].reserve(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) br[i].push_back(bracket_D1(basis[i], basis[j]));
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            for (std::size_t k = j; k < basis.size(); ++k) {
                const Rational v =
                    spec.eval(br[i][j], basis[k]) + spec.eval(br[j][k], basis[i]) + spec.eval(br[k][i], basis[j]);
                ++rep.checked;
                if (!v.is_zero() && rep.pass) {
                    rep.pass = false;
                    std::ostringstream os;
                    os << spec.name << ": cocycle identity fails on window triple (" << i << "," << j << ","
                       << k << ") with defect " << v.str();
                    rep.first_violation = os.str();
                }
            }
    return rep;
}

}  // namespace knlab
