#include "knlab/current.hpp"

#include <sstream>

namespace knlab {

CurrentElement CurrentElement::zero(SurfacePtr s, LiePtr g) {
    CurrentElement c;
    c.surface = s;
    c.lie = std::move(g);
    c.comp.assign(static_cast<std::size_t>(c.lie->dim()), Section::zero(s, 0));
    return c;
}

CurrentElement CurrentElement::tensor(LiePtr g, int lie_index, Section f) {
    if (f.weight != 0) throw std::invalid_argument("CurrentElement: section must have weight 0");
    if (lie_index < 0 || lie_index >= g->dim())
        throw std::invalid_argument("CurrentElement: Lie basis index out of range");
    CurrentElement c = zero(f.surface, std::move(g));
    c.comp[static_cast<std::size_t>(lie_index)] = std::move(f);
    return c;
}

CurrentElement CurrentElement::tensor(LiePtr g, const std::vector<Rational>& x, const Section& f) {
    if (static_cast<int>(x.size()) != g->dim())
        throw std::invalid_argument("CurrentElement: coordinate size mismatch");
    CurrentElement c = zero(f.surface, std::move(g));
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) c.comp[i] = Section{f.surface, 0, f.rep.scaled(x[i])};
    return c;
}

bool CurrentElement::is_zero() const {
    for (const auto& s : comp)
        if (!s.is_zero()) return false;
    return true;
}

CurrentElement CurrentElement::scaled(const Rational& s) const {
    CurrentElement c(*this);
    for (auto& x : c.comp) x.rep = x.rep.scaled(s);
    return c;
}

namespace {

void require_same_context(const CurrentElement& a, const CurrentElement& b, const char* who) {
    if (!a.surface || !b.surface || !a.surface->same_geometry(*b.surface))
        throw std::invalid_argument(std::string(who) + ": surface mismatch");
    if (a.lie.get() != b.lie.get() && a.lie->dim() != b.lie->dim())
        throw std::invalid_argument(std::string(who) + ": Lie algebra mismatch");
}

}  // namespace

CurrentElement operator+(const CurrentElement& a, const CurrentElement& b) {
    require_same_context(a, b, "CurrentElement::operator+");
    CurrentElement c = a;
    for (std::size_t i = 0; i < c.comp.size(); ++i) c.comp[i].rep += b.comp[i].rep;
    return c;
}

CurrentElement operator-(const CurrentElement& a, const CurrentElement& b) {
    return a + b.scaled(Rational(-1));
}

D1gElement D1gElement::zero(SurfacePtr s, LiePtr g) {
    return D1gElement{CurrentElement::zero(s, std::move(g)), Section::zero(s, -1)};
}

D1gElement D1gElement::from_current(CurrentElement c) {
    Section v = Section::zero(c.surface, -1);
    return D1gElement{std::move(c), std::move(v)};
}

D1gElement D1gElement::from_vector(LiePtr g, Section v) {
    if (v.weight != -1) throw std::invalid_argument("D1gElement: vector part must have weight -1");
    CurrentElement c = CurrentElement::zero(v.surface, std::move(g));
    return D1gElement{std::move(c), std::move(v)};
}

D1gElement D1gElement::scaled(const Rational& s) const {
    return D1gElement{cur.scaled(s), Section{vec.surface, -1, vec.rep.scaled(s)}};
}

D1gElement operator+(const D1gElement& a, const D1gElement& b) {
    return D1gElement{a.cur + b.cur, Section{a.vec.surface, -1, a.vec.rep + b.vec.rep}};
}

D1gElement operator-(const D1gElement& a, const D1gElement& b) { return a + b.scaled(Rational(-1)); }

CurrentElement bracket_current(const CurrentElement& a, const CurrentElement& b) {
    require_same_context(a, b, "bracket_current");
    const FiniteLieAlgebra& g = *a.lie;
    CurrentElement out = CurrentElement::zero(a.surface, a.lie);
    for (int i = 0; i < g.dim(); ++i) {
        if (a.comp[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; j < g.dim(); ++j) {
            if (b.comp[static_cast<std::size_t>(j)].is_zero()) continue;
            RationalFunction prod = a.comp[static_cast<std::size_t>(i)].rep * b.comp[static_cast<std::size_t>(j)].rep;
            for (int k = 0; k < g.dim(); ++k) {
                const Rational& c = g.c(i, j, k);
                if (!c.is_zero()) out.comp[static_cast<std::size_t>(k)].rep += prod.scaled(c);
            }
        }
    }
    return out;
}

D1gElement bracket_D1g(const D1gElement& a, const D1gElement& b) {
    CurrentElement cur = bracket_current(a.cur, b.cur);
    // e acts on the current components, f acts back with a sign
    if (!a.vec.is_zero())
        for (std::size_t k = 0; k < cur.comp.size(); ++k)
            if (!b.cur.comp[k].is_zero()) cur.comp[k].rep += lie_action(a.vec, b.cur.comp[k]).rep;
    if (!b.vec.is_zero())
        for (std::size_t k = 0; k < cur.comp.size(); ++k)
            if (!a.cur.comp[k].is_zero()) cur.comp[k].rep -= lie_action(b.vec, a.cur.comp[k]).rep;
    Section vec = bracket_L(a.vec, b.vec);
    return D1gElement{std::move(cur), std::move(vec)};
}

std::string GDesc::str(const FiniteLieAlgebra& g) const {
    std::ostringstream os;
    if (part == 0)
        os << g.label(lie) << "(A_{" << n << "," << p << "})";
    else
        os << "e_{" << n << "," << p << "}";
    return os.str();
}

AlgebraRef AlgebraRef::functions(SurfacePtr s) {
    return AlgebraRef{std::move(s), FiniteLieAlgebra::abelian(1), true, false};
}

AlgebraRef AlgebraRef::vector_fields(SurfacePtr s) {
    return AlgebraRef{std::move(s), FiniteLieAlgebra::abelian(1), false, true};
}

AlgebraRef AlgebraRef::diff_ops1(SurfacePtr s) {
    return AlgebraRef{std::move(s), FiniteLieAlgebra::abelian(1), true, true};
}

AlgebraRef AlgebraRef::current(SurfacePtr s, LiePtr g) {
    if (g->dim() < 1) throw std::invalid_argument("AlgebraRef::current: zero-dimensional Lie algebra");
    return AlgebraRef{std::move(s), std::move(g), true, false};
}

AlgebraRef AlgebraRef::current_diff_ops1(SurfacePtr s, LiePtr g) {
    if (g->dim() < 1) throw std::invalid_argument("AlgebraRef: zero-dimensional Lie algebra");
    return AlgebraRef{std::move(s), std::move(g), true, true};
}

std::string AlgebraRef::name() const {
    const bool scalar = lie->dim() == 1 && lie->name() == "abelian(1)";
    if (with_current && with_vector) return scalar ? "D1" : "D1_" + lie->name();
    if (with_current) return scalar ? "A" : lie->name() + "-current";
    return "L";
}

std::vector<GDesc> AlgebraRef::window_basis(long window) const {
    std::vector<GDesc> out;
    for (long n = -window; n <= window; ++n)
        for (int p = 1; p <= surface->num_in(); ++p) {
            if (with_current)
                for (int i = 0; i < lie->dim(); ++i) out.push_back(GDesc{0, i, n, p});
            if (with_vector) out.push_back(GDesc{1, 0, n, p});
        }
    return out;
}

D1gElement AlgebraRef::materialize(const GDesc& d) const {
    if (d.part == 0) {
        return D1gElement::from_current(
            CurrentElement::tensor(lie, d.lie, surface->basis_element(0, d.n, d.p).section));
    }
    return D1gElement::from_vector(lie, surface->basis_element(-1, d.n, d.p).section);
}

D1gElement AlgebraRef::bracket(const D1gElement& a, const D1gElement& b) const {
    return bracket_D1g(a, b);
}

std::map<GDesc, Rational> AlgebraRef::expand_element(const D1gElement& e) const {
    std::map<GDesc, Rational> out;
    for (int i = 0; i < lie->dim(); ++i) {
        const Section& s = e.cur.comp[static_cast<std::size_t>(i)];
        if (s.is_zero()) continue;
        const GradedExpansion ge = expand(s);
        for (const auto& [key, v] : ge.table()) out[GDesc{0, i, key.first, key.second}] = v;
    }
    if (!e.vec.is_zero()) {
        const GradedExpansion ge = expand(e.vec);
        for (const auto& [key, v] : ge.table()) out[GDesc{1, 0, key.first, key.second}] = v;
    }
    return out;
}

std::map<GDesc, Rational> AlgebraRef::bracket_in_basis(const GDesc& a, const GDesc& b) const {
    return expand_element(bracket(materialize(a), materialize(b)));
}

Rational CurrentCocycleSpec::UserTable::value(const GDesc& a, const GDesc& b) const {
    if (b < a) return -value(b, a);
    auto it = entries.find({a, b});
    return it == entries.end() ? Rational(0) : it->second;
}

CurrentCocycleSpec CurrentCocycleSpec::affine(BilinearForm alpha, Cycle c) {
    CurrentCocycleSpec s;
    s.kind_ = Kind::Affine;
    s.name_ = "affine";
    s.r1_ = Rational(1);
    s.alpha_ = std::move(alpha);
    s.cycle_ = c;
    return s;
}

CurrentCocycleSpec CurrentCocycleSpec::mixing(LinearForm phi, RationalFunction T, Cycle c) {
    CurrentCocycleSpec s;
    s.kind_ = Kind::Mixing;
    s.name_ = "mixing";
    s.r2_ = Rational(1);
    s.phi_ = std::move(phi);
    s.T_ = std::move(T);
    s.cycle_ = c;
    return s;
}

CurrentCocycleSpec CurrentCocycleSpec::vector_field(RationalFunction R, Cycle c) {
    CurrentCocycleSpec s;
    s.kind_ = Kind::VectorField;
    s.name_ = "vector-field";
    s.r3_ = Rational(1);
    s.R_ = std::move(R);
    s.cycle_ = c;
    return s;
}

CurrentCocycleSpec CurrentCocycleSpec::combination(Rational r1, BilinearForm alpha, Rational r2,
                                                   LinearForm phi, Rational r3, RationalFunction R,
                                                   RationalFunction T, Cycle c) {
    CurrentCocycleSpec s;
    s.kind_ = Kind::Combination;
    s.name_ = "combination";
    s.r1_ = std::move(r1);
    s.alpha_ = std::move(alpha);
    s.r2_ = std::move(r2);
    s.phi_ = std::move(phi);
    s.r3_ = std::move(r3);
    s.R_ = std::move(R);
    s.T_ = std::move(T);
    s.cycle_ = c;
    return s;
}

CurrentCocycleSpec CurrentCocycleSpec::user_matrix(UserTable table) {
    CurrentCocycleSpec s;
    s.kind_ = Kind::UserMatrix;
    s.name_ = "user-matrix";
    s.user_ = std::move(table);
    return s;
}

CurrentCocycleSpec CurrentCocycleSpec::rescaled(const Rational& sc) const {
    CurrentCocycleSpec s(*this);
    s.r1_ *= sc;
    s.r2_ *= sc;
    s.r3_ *= sc;
    if (s.user_)
        for (auto& [k, v] : s.user_->entries) v *= sc;
    s.name_ = name_ + "*" + sc.str();
    return s;
}

Rational CurrentCocycleSpec::eval(const AlgebraRef& alg, const D1gElement& a, const D1gElement& b) const {
    Rational acc(0);
    const int d = alg.lie->dim();
    if (kind_ != Kind::UserMatrix) {
        if (!r1_.is_zero()) {
            for (int i = 0; i < d; ++i) {
                if (a.cur.comp[static_cast<std::size_t>(i)].is_zero()) continue;
                for (int j = 0; j < d; ++j) {
                    if (b.cur.comp[static_cast<std::size_t>(j)].is_zero()) continue;
                    const Rational aij = alpha_.at(i, j);
                    if (aij.is_zero()) continue;
                    acc += r1_ * aij *
                           cocycle_f(cycle_, a.cur.comp[static_cast<std::size_t>(i)],
                                     b.cur.comp[static_cast<std::size_t>(j)]);
                }
            }
        }
        if (!r2_.is_zero()) {
            if (!a.vec.is_zero())
                for (int j = 0; j < d; ++j) {
                    if (b.cur.comp[static_cast<std::size_t>(j)].is_zero() || phi_.at(j).is_zero()) continue;
                    acc += r2_ * phi_.at(j) * cocycle_m(cycle_, T_, a.vec, b.cur.comp[static_cast<std::size_t>(j)]);
                }
            if (!b.vec.is_zero())
                for (int i = 0; i < d; ++i) {
                    if (a.cur.comp[static_cast<std::size_t>(i)].is_zero() || phi_.at(i).is_zero()) continue;
                    acc -= r2_ * phi_.at(i) * cocycle_m(cycle_, T_, b.vec, a.cur.comp[static_cast<std::size_t>(i)]);
                }
        }
        if (!r3_.is_zero() && !a.vec.is_zero() && !b.vec.is_zero())
            acc += r3_ * cocycle_v(cycle_, R_, a.vec, b.vec);
    }
    if (user_) {
        const auto ca = alg.expand_element(a);
        const auto cb = alg.expand_element(b);
        for (const auto& [da, va] : ca) {
            if (da.n < -user_->window || da.n > user_->window)
                throw std::runtime_error("user-matrix cocycle evaluated outside its window (need |n| <= " +
                                         std::to_string(user_->window) + ", got " + std::to_string(da.n) + ")");
        }
        for (const auto& [db, vb] : cb) {
            if (db.n < -user_->window || db.n > user_->window)
                throw std::runtime_error("user-matrix cocycle evaluated outside its window (need |n| <= " +
                                         std::to_string(user_->window) + ", got " + std::to_string(db.n) + ")");
        }
        for (const auto& [da, va] : ca)
            for (const auto& [db, vb] : cb) {
                const Rational t = user_->value(da, db);
                if (!t.is_zero()) acc += va * vb * t;
            }
    }
    return acc;
}

Rational CurrentCocycleSpec::eval_basis(const AlgebraRef& alg, const GDesc& a, const GDesc& b) const {
    if (kind_ == Kind::UserMatrix) {
        if (a.n < -user_->window || a.n > user_->window || b.n < -user_->window || b.n > user_->window)
            throw std::runtime_error("user-matrix cocycle evaluated outside its window");
        return user_->value(a, b);
    }
    return eval(alg, alg.materialize(a), alg.materialize(b));
}

ExtendedElement extended_bracket(const CurrentCocycleSpec& spec, const AlgebraRef& alg,
                                 const ExtendedElement& a, const ExtendedElement& b) {
    return ExtendedElement{spec.eval(alg, a.base, b.base), alg.bracket(a.base, b.base)};
}

namespace {

struct SectionTables {
    std::vector<Section> A, E;                       // window sections, index t
    std::vector<long> deg;                           // degree per index
    std::vector<int> pt;                             // in-point per index
    std::vector<std::vector<Section>> prodAA;        // A_a * A_b
    std::vector<std::vector<Section>> actEA;         // e_a . A_b
    std::vector<std::vector<Section>> brEE;          // [e_a, e_b]
};

SectionTables build_section_tables(const SurfacePtr& s, long window, bool need_products, bool need_actions,
                                   bool need_vector_brackets) {
    SectionTables t;
    for (long n = -window; n <= window; ++n)
        for (int p = 1; p <= s->num_in(); ++p) {
            t.A.push_back(s->basis_element(0, n, p).section);
            t.E.push_back(s->basis_element(-1, n, p).section);
            t.deg.push_back(n);
            t.pt.push_back(p);
        }
    const std::size_t T = t.A.size();
    if (need_products) {
        t.prodAA.assign(T, std::vector<Section>());
        for (std::size_t a = 0; a < T; ++a) {
            t.prodAA[a].reserve(T);
            for (std::size_t b = 0; b < T; ++b) t.prodAA[a].push_back(mul_A(t.A[a], t.A[b]));
        }
    }
    if (need_actions) {
        t.actEA.assign(T, std::vector<Section>());
        for (std::size_t a = 0; a < T; ++a) {
            t.actEA[a].reserve(T);
            for (std::size_t b = 0; b < T; ++b) t.actEA[a].push_back(lie_action(t.E[a], t.A[b]));
        }
    }
    if (need_vector_brackets) {
        t.brEE.assign(T, std::vector<Section>());
        for (std::size_t a = 0; a < T; ++a) {
            t.brEE[a].reserve(T);
            for (std::size_t b = 0; b < T; ++b) t.brEE[a].push_back(bracket_L(t.E[a], t.E[b]));
        }
    }
    return t;
}

std::string desc_str(const FiniteLieAlgebra& g, int part, int lie, long n, int p) {
    return GDesc{part, lie, n, p}.str(g);
}

}  // namespace

ConditionReport check_cocycle_conditions(const CurrentCocycleSpec& spec, const AlgebraRef& alg, long window) {
    ConditionReport rep;
    const FiniteLieAlgebra& g = *alg.lie;
    const int d = g.dim();
    if (spec.kind() != CurrentCocycleSpec::Kind::UserMatrix && spec.user())
        throw std::invalid_argument(
            "check_cocycle_conditions: perturbed geometric functionals are not supported; "
            "check the geometric part and the window table separately");

    if (spec.kind() == CurrentCocycleSpec::Kind::UserMatrix) {
        // generic sweep over basis triples via bracket expansions; triples
        // whose brackets escape the table support are skipped and counted
        const auto basis = alg.window_basis(window);
        std::vector<std::vector<std::optional<std::map<GDesc, Rational>>>> br(
            basis.size(), std::vector<std::optional<std::map<GDesc, Rational>>>(basis.size()));
        auto bracket_of = [&](std::size_t i, std::size_t j) -> const std::map<GDesc, Rational>& {
            if (!br[i][j]) br[i][j] = alg.bracket_in_basis(basis[i], basis[j]);
            return *br[i][j];
        };
        const long uw = spec.user()->window;
        auto pair_value = [&](const std::map<GDesc, Rational>& left, const GDesc& right,
                              bool& ok) -> Rational {
            Rational acc(0);
            if (right.n < -uw || right.n > uw) {
                ok = false;
                return acc;
            }
            for (const auto& [dsc, c] : left) {
                if (dsc.n < -uw || dsc.n > uw) {
                    ok = false;
                    return Rational(0);
                }
                const Rational v = spec.user()->value(dsc, right);
                if (!v.is_zero()) acc += c * v;
            }
            return acc;
        };
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                for (std::size_t k = j; k < basis.size(); ++k) {
                    bool ok = true;
                    Rational v = pair_value(bracket_of(i, j), basis[k], ok);
                    if (ok) v += pair_value(bracket_of(j, k), basis[i], ok);
                    if (ok) v += pair_value(bracket_of(k, i), basis[j], ok);
                    if (!ok) {
                        ++rep.skipped;
                        continue;
                    }
                    ++rep.checked;
                    if (!v.is_zero() && rep.pass) {
                        rep.pass = false;
                        std::ostringstream os;
                        os << spec.name() << ": cocycle identity fails on (" << basis[i].str(g) << ", "
                           << basis[j].str(g) << ", " << basis[k].str(g) << "), defect " << v.str();
                        rep.first_violation = os.str();
                    }
                }
        if (rep.checked == 0)
            throw std::runtime_error("check_cocycle_conditions: no bracket stays inside the user window");
        return rep;
    }

    const auto tab = build_section_tables(alg.surface, window, alg.with_current,
                                          alg.with_current && alg.with_vector, alg.with_vector);
    const std::size_t T = tab.A.size();
    auto fail = [&](const std::string& msg) {
        if (rep.pass) {
            rep.pass = false;
            rep.first_violation = msg;
        }
    };

    // (1) vector field triples
    if (alg.with_vector && !spec.r3().is_zero()) {
        for (std::size_t a = 0; a < T; ++a)
            for (std::size_t b = a + 1; b < T; ++b)
                for (std::size_t c = b; c < T; ++c) {
                    const Rational v = cocycle_v(spec.cycle(), spec.projective(), tab.brEE[a][b], tab.E[c]) +
                                       cocycle_v(spec.cycle(), spec.projective(), tab.brEE[b][c], tab.E[a]) +
                                       cocycle_v(spec.cycle(), spec.projective(), tab.brEE[c][a], tab.E[b]);
                    ++rep.checked;
                    if (!v.is_zero())
                        fail(spec.name() + ": vector-field restriction fails the cocycle identity at (" +
                             desc_str(g, 1, 0, tab.deg[a], tab.pt[a]) + ", " + desc_str(g, 1, 0, tab.deg[b], tab.pt[b]) +
                             ", " + desc_str(g, 1, 0, tab.deg[c], tab.pt[c]) + "), defect " + v.str());
                }
    }

    // (2) current triples: alpha([x,y],z) gamma_f(fg, h) cyclic sum
    if (alg.with_current && !spec.r1().is_zero()) {
        // section-level table gamma_f(A_a A_b, A_c)
        std::vector<std::vector<std::vector<Rational>>> gf(
            T, std::vector<std::vector<Rational>>(T, std::vector<Rational>(T, Rational(0))));
        for (std::size_t a = 0; a < T; ++a)
            for (std::size_t b = 0; b < T; ++b)
                for (std::size_t c = 0; c < T; ++c)
                    gf[a][b][c] = cocycle_f(spec.cycle(), tab.prodAA[a][b], tab.A[c]);
        // Lie-level contraction B[i][j][k] = alpha([x_i,x_j], x_k)
        std::vector<Rational> B(static_cast<std::size_t>(d) * static_cast<std::size_t>(d) * static_cast<std::size_t>(d),
                                Rational(0));
        auto Bat = [&](int i, int j, int k) -> Rational& {
            return B[(static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)) *
                         static_cast<std::size_t>(d) +
                     static_cast<std::size_t>(k)];
        };
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    Rational acc(0);
                    for (int m = 0; m < d; ++m)
                        if (!g.c(i, j, m).is_zero()) acc += g.c(i, j, m) * spec.alpha().at(m, k);
                    Bat(i, j, k) = acc;
                }
        for (std::size_t a = 0; a < T; ++a)
            for (std::size_t b = 0; b < T; ++b)
                for (std::size_t c = 0; c < T; ++c) {
                    const bool triple_zero = gf[a][b][c].is_zero() && gf[b][c][a].is_zero() && gf[c][a][b].is_zero();
                    if (triple_zero) {
                        rep.checked += static_cast<std::size_t>(d) * static_cast<std::size_t>(d) *
                                       static_cast<std::size_t>(d);
                        continue;
                    }
                    for (int i = 0; i < d; ++i)
                        for (int j = 0; j < d; ++j)
                            for (int k = 0; k < d; ++k) {
                                const Rational v = spec.r1() * (Bat(i, j, k) * gf[a][b][c] + Bat(j, k, i) * gf[b][c][a] +
                                                                Bat(k, i, j) * gf[c][a][b]);
                                ++rep.checked;
                                if (!v.is_zero())
                                    fail(spec.name() + ": current restriction fails the cocycle identity at (" +
                                         desc_str(g, 0, i, tab.deg[a], tab.pt[a]) + ", " +
                                         desc_str(g, 0, j, tab.deg[b], tab.pt[b]) + ", " +
                                         desc_str(g, 0, k, tab.deg[c], tab.pt[c]) + "), defect " + v.str());
                            }
                }
    }

    // (3) two vector fields against one current element: the mixing part
    if (alg.with_current && alg.with_vector && !spec.r2().is_zero()) {
        for (std::size_t a = 0; a < T; ++a)
            for (std::size_t b = 0; b < T; ++b)
                for (std::size_t c = 0; c < T; ++c) {
                    const Rational defect =
                        cocycle_m(spec.cycle(), spec.affine_connection(), tab.brEE[a][b], tab.A[c]) -
                        cocycle_m(spec.cycle(), spec.affine_connection(), tab.E[a], tab.actEA[b][c]) +
                        cocycle_m(spec.cycle(), spec.affine_connection(), tab.E[b], tab.actEA[a][c]);
                    for (int x = 0; x < d; ++x) {
                        const Rational v = spec.r2() * spec.phi().at(x) * defect;
                        ++rep.checked;
                        if (!v.is_zero())
                            fail(spec.name() + ": mixed condition ([e,f] vs current) fails at (" +
                                 desc_str(g, 1, 0, tab.deg[a], tab.pt[a]) + ", " +
                                 desc_str(g, 1, 0, tab.deg[b], tab.pt[b]) + ", " +
                                 desc_str(g, 0, x, tab.deg[c], tab.pt[c]) + "), defect " + v.str());
                    }
                }
    }

    // (4) one vector field against two current elements
    if (alg.with_current && alg.with_vector && (!spec.r1().is_zero() || !spec.r2().is_zero())) {
        const bool use_alpha = !spec.r1().is_zero();
        const bool use_phi = !spec.r2().is_zero();
        std::vector<Rational> phibr(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), Rational(0));
        if (use_phi)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    Rational acc(0);
                    for (int m = 0; m < d; ++m)
                        if (!g.c(i, j, m).is_zero()) acc += g.c(i, j, m) * spec.phi().at(m);
                    phibr[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] = acc;
                }
        for (std::size_t e = 0; e < T; ++e)
            for (std::size_t a = 0; a < T; ++a)
                for (std::size_t b = 0; b < T; ++b) {
                    const Rational inv_defect = !use_alpha
                                                    ? Rational(0)
                                                    : cocycle_f(spec.cycle(), tab.actEA[e][a], tab.A[b]) +
                                                          cocycle_f(spec.cycle(), tab.A[a], tab.actEA[e][b]);
                    const Rational mix = !use_phi
                                             ? Rational(0)
                                             : cocycle_m(spec.cycle(), spec.affine_connection(), tab.E[e], tab.prodAA[a][b]);
                    for (int i = 0; i < d; ++i)
                        for (int j = 0; j < d; ++j) {
                            Rational v(0);
                            if (use_alpha) v += spec.r1() * spec.alpha().at(i, j) * inv_defect;
                            if (use_phi)
                                v -= spec.r2() * phibr[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) +
                                                       static_cast<std::size_t>(j)] *
                                     mix;
                            ++rep.checked;
                            if (!v.is_zero())
                                fail(spec.name() + ": mixed condition (e vs two currents) fails at (" +
                                     desc_str(g, 1, 0, tab.deg[e], tab.pt[e]) + ", " +
                                     desc_str(g, 0, i, tab.deg[a], tab.pt[a]) + ", " +
                                     desc_str(g, 0, j, tab.deg[b], tab.pt[b]) + "), defect " + v.str());
                        }
                }
    }

    return rep;
}

ConditionReport check_L_invariance_current(const CurrentCocycleSpec& spec, const AlgebraRef& alg,
                                           long window) {
    ConditionReport rep;
    if (!alg.with_current) throw std::invalid_argument("check_L_invariance_current: current algebra required");
    const FiniteLieAlgebra& g = *alg.lie;
    const int d = g.dim();

    if (spec.kind() == CurrentCocycleSpec::Kind::UserMatrix || spec.user()) {
        // generic path via expansions
        const auto tab = build_section_tables(alg.surface, window, true, true, false);
        const std::size_t T = tab.A.size();
        for (std::size_t e = 0; e < T; ++e)
            for (std::size_t a = 0; a < T; ++a)
                for (std::size_t b = 0; b < T; ++b)
                    for (int i = 0; i < d; ++i)
                        for (int j = 0; j < d; ++j) {
                            const auto xa = D1gElement::from_current(CurrentElement::tensor(alg.lie, i, tab.actEA[e][a]));
                            const auto yb = D1gElement::from_current(CurrentElement::tensor(alg.lie, j, tab.A[b]));
                            const auto xa2 = D1gElement::from_current(CurrentElement::tensor(alg.lie, i, tab.A[a]));
                            const auto yb2 = D1gElement::from_current(CurrentElement::tensor(alg.lie, j, tab.actEA[e][b]));
                            const Rational v = spec.eval(alg, xa, yb) + spec.eval(alg, xa2, yb2);
                            ++rep.checked;
                            if (!v.is_zero() && rep.pass) {
                                rep.pass = false;
                                std::ostringstream os;
                                os << spec.name() << ": L-invariance fails at e=e_{" << tab.deg[e] << ","
                                   << tab.pt[e] << "}, x=" << g.label(i) << ", y=" << g.label(j) << ", g=A_{"
                                   << tab.deg[a] << "," << tab.pt[a] << "}, h=A_{" << tab.deg[b] << ","
                                   << tab.pt[b] << "}, defect " << v.str();
                                rep.first_violation = os.str();
                            }
                        }
        return rep;
    }

    // geometric path: only the invariant part (alpha x gamma_f) touches
    // current pairs; pure mixing or vector-field functionals vanish there
    if (spec.r1().is_zero()) return rep;
    const auto tab = build_section_tables(alg.surface, window, false, true, false);
    const std::size_t T = tab.A.size();
    for (std::size_t e = 0; e < T; ++e)
        for (std::size_t a = 0; a < T; ++a)
            for (std::size_t b = 0; b < T; ++b) {
                const Rational defect = cocycle_f(spec.cycle(), tab.actEA[e][a], tab.A[b]) +
                                        cocycle_f(spec.cycle(), tab.A[a], tab.actEA[e][b]);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        const Rational v = spec.r1() * spec.alpha().at(i, j) * defect;
                        ++rep.checked;
                        if (!v.is_zero() && rep.pass) {
                            rep.pass = false;
                            std::ostringstream os;
                            os << spec.name() << ": L-invariance fails at e=e_{" << tab.deg[e] << "," << tab.pt[e]
                               << "}, x=" << g.label(i) << ", y=" << g.label(j) << ", g=A_{" << tab.deg[a] << ","
                               << tab.pt[a] << "}, h=A_{" << tab.deg[b] << "," << tab.pt[b] << "}, defect "
                               << v.str();
                            rep.first_violation = os.str();
                        }
                    }
            }
    return rep;
}

CurrentCocycleSpec coboundary_of(const std::map<GDesc, Rational>& phi, long phi_window,
                                 const AlgebraRef& alg, long pair_window) {
    const auto basis = alg.window_basis(pair_window);
    const long dom_lo = -phi_window;
    const long dom_hi = phi_window;
    for (const auto& [dsc, v] : phi)
        if (dsc.n < dom_lo || dsc.n > dom_hi)
            throw std::invalid_argument("coboundary_of: form entry at degree " + std::to_string(dsc.n) +
                                        " outside its declared window");
    CurrentCocycleSpec::UserTable t;
    t.window = pair_window;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const auto br = alg.bracket_in_basis(basis[i], basis[j]);
            Rational acc(0);
            for (const auto& [dsc, c] : br) {
                if (dsc.n < dom_lo || dsc.n > dom_hi) {
                    std::ostringstream os;
                    os << "coboundary_of: bracket of " << basis[i].str(*alg.lie) << " and "
                       << basis[j].str(*alg.lie) << " reaches degree " << dsc.n
                       << " outside the form's domain [" << dom_lo << ".." << dom_hi
                       << "]; supply the form on at least [" << std::min(dom_lo, dsc.n) << ".."
                       << std::max(dom_hi, dsc.n) << "]";
                    throw std::invalid_argument(os.str());
                }
                auto it = phi.find(dsc);
                if (it != phi.end() && !it->second.is_zero()) acc += c * it->second;
            }
            if (!acc.is_zero()) t.entries[{basis[i], basis[j]}] = acc;
        }
    auto s = CurrentCocycleSpec::user_matrix(std::move(t));
    s.set_name("coboundary");
    return s;
}

ConditionReport check_window_perfectness(const AlgebraRef& alg, long window) {
    ConditionReport rep;
    const FiniteLieAlgebra& g = *alg.lie;
    const int d = g.dim();
    // x_i = sum of basis brackets? exact solve over the bracket span
    std::vector<std::pair<int, int>> pairs;
    QMatrix span(0, static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            pairs.emplace_back(i, j);
            span.append_row(g.bracket_basis(i, j));
        }
    // transpose: columns are bracket vectors
    QMatrix sys(static_cast<std::size_t>(d), pairs.size());
    for (std::size_t r = 0; r < pairs.size(); ++r)
        for (int k = 0; k < d; ++k) sys.at(static_cast<std::size_t>(k), r) = span.at(r, static_cast<std::size_t>(k));
    const Section one{alg.surface, 0, RationalFunction::constant(Rational(1))};
    for (int i = 0; i < d; ++i) {
        std::vector<Rational> target(static_cast<std::size_t>(d), Rational(0));
        target[static_cast<std::size_t>(i)] = Rational(1);
        const auto sol = solve(sys, target);
        if (!sol) {
            rep.pass = false;
            rep.first_violation = "Lie algebra is not perfect: " + g.label(i) + " is not a sum of brackets";
            return rep;
        }
        for (long n = -window; n <= window; ++n)
            for (int p = 1; p <= alg.surface->num_in(); ++p) {
                const Section& f = alg.surface->basis_element(0, n, p).section;
                CurrentElement acc = CurrentElement::zero(alg.surface, alg.lie);
                for (std::size_t r = 0; r < pairs.size(); ++r) {
                    if ((*sol)[r].is_zero()) continue;
                    const auto [a, b] = pairs[r];
                    const CurrentElement lhs = CurrentElement::tensor(alg.lie, a, Section{alg.surface, 0, f.rep.scaled((*sol)[r])});
                    const CurrentElement rhs = CurrentElement::tensor(alg.lie, b, one);
                    acc = acc + bracket_current(lhs, rhs);
                }
                const CurrentElement want = CurrentElement::tensor(alg.lie, i, f);
                bool equal = true;
                for (int k = 0; k < d; ++k)
                    equal = equal && acc.comp[static_cast<std::size_t>(k)].rep == want.comp[static_cast<std::size_t>(k)].rep;
                ++rep.checked;
                if (!equal && rep.pass) {
                    rep.pass = false;
                    rep.first_violation = "window perfectness fails for " + g.label(i) + " (x) A_{" +
                                          std::to_string(n) + "," + std::to_string(p) + "}";
                }
            }
    }
    return rep;
}

}  // namespace knlab
