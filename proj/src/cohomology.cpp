#include "knlab/cohomology.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace knlab {

bool WindowMatrix::is_antisymmetric() const {
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!values.at(i, i).is_zero()) return false;
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (values.at(i, j) != -values.at(j, i)) return false;
    }
    return true;
}

WindowMatrix::Levels WindowMatrix::level_bounds() const {
    Levels out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (values.at(i, j).is_zero()) continue;
            const long lv = level(i, j);
            if (!out.any_nonzero) {
                out.any_nonzero = true;
                out.min_level = out.max_level = lv;
            } else {
                out.min_level = std::min(out.min_level, lv);
                out.max_level = std::max(out.max_level, lv);
            }
        }
    return out;
}

WindowMatrix cocycle_matrix(const CurrentCocycleSpec& spec, const AlgebraRef& alg, long window) {
    WindowMatrix m{alg, window, alg.window_basis(window), QMatrix()};
    m.values = QMatrix(m.basis.size(), m.basis.size());
    for (std::size_t i = 0; i < m.basis.size(); ++i)
        for (std::size_t j = i + 1; j < m.basis.size(); ++j) {
            Rational v = spec.eval_basis(alg, m.basis[i], m.basis[j]);
            m.values.at(j, i) = -v;
            m.values.at(i, j) = std::move(v);
        }
    return m;
}

CoboundarySystem coboundary_system(const WindowMatrix& m) {
    CoboundarySystem sys;
    const auto& basis = m.basis;
    // brackets of all window pairs, in deterministic pair order
    std::vector<std::map<GDesc, Rational>> brackets;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            sys.pairs.emplace_back(i, j);
            brackets.push_back(m.algebra.bracket_in_basis(basis[i], basis[j]));
        }
    std::map<GDesc, std::size_t> index;
    for (const auto& br : brackets)
        for (const auto& [d, c] : br)
            if (!index.count(d)) index.emplace(d, 0);
    std::size_t k = 0;
    for (auto& [d, idx] : index) {
        idx = k++;
        sys.domain.push_back(d);
    }
    sys.lhs = QMatrix(sys.pairs.size(), sys.domain.size());
    sys.rhs.resize(sys.pairs.size(), Rational(0));
    for (std::size_t r = 0; r < sys.pairs.size(); ++r) {
        for (const auto& [d, c] : brackets[r]) sys.lhs.at(r, index.at(d)) = c;
        sys.rhs[r] = m.values.at(sys.pairs[r].first, sys.pairs[r].second);
    }
    return sys;
}

FeasibilityCertificate coboundary_feasible(const WindowMatrix& m) {
    FeasibilityCertificate cert;
    const CoboundarySystem sys = coboundary_system(m);
    if (!sys.domain.empty()) {
        cert.domain_lo = sys.domain.front().n;
        cert.domain_hi = sys.domain.back().n;
    }
    const auto sol = solve(sys.lhs, sys.rhs);
    if (sol) {
        cert.coboundary_on_window = true;
        for (std::size_t i = 0; i < sys.domain.size(); ++i)
            if (!(*sol)[i].is_zero()) cert.witness[sys.domain[i]] = (*sol)[i];
        // exact witness verification
        for (std::size_t r = 0; r < sys.pairs.size(); ++r) {
            Rational acc(0);
            for (std::size_t c = 0; c < sys.domain.size(); ++c) acc += sys.lhs.at(r, c) * (*sol)[c];
            if (acc != sys.rhs[r]) throw std::logic_error("coboundary_feasible: witness failed re-verification");
        }
        cert.note = "window witness only: inconclusive for global triviality";
    } else {
        cert.coboundary_on_window = false;
        cert.rank_lhs = rank(sys.lhs);
        QMatrix aug(sys.lhs.rows(), sys.lhs.cols() + 1);
        for (std::size_t r = 0; r < sys.lhs.rows(); ++r) {
            for (std::size_t c = 0; c < sys.lhs.cols(); ++c) aug.at(r, c) = sys.lhs.at(r, c);
            aug.at(r, sys.lhs.cols()) = sys.rhs[r];
        }
        cert.rank_augmented = rank(aug);
        if (cert.rank_augmented != cert.rank_lhs + 1)
            throw std::logic_error("coboundary_feasible: inconsistent infeasibility ranks");
        cert.note = "restricted system infeasible: not a coboundary (sound globally)";
    }
    return cert;
}

bool reverify_infeasibility(const WindowMatrix& m, unsigned seed) {
    CoboundarySystem sys = coboundary_system(m);
    std::vector<std::size_t> order(sys.pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    QMatrix lhs(sys.lhs.rows(), sys.lhs.cols());
    QMatrix aug(sys.lhs.rows(), sys.lhs.cols() + 1);
    for (std::size_t r = 0; r < order.size(); ++r) {
        for (std::size_t c = 0; c < sys.lhs.cols(); ++c) {
            lhs.at(r, c) = sys.lhs.at(order[r], c);
            aug.at(r, c) = sys.lhs.at(order[r], c);
        }
        aug.at(r, sys.lhs.cols()) = sys.rhs[order[r]];
    }
    return rank(aug) == rank(lhs) + 1;
}

FamilyRankResult family_rank(const std::vector<CurrentCocycleSpec>& specs, const AlgebraRef& alg,
                             long window) {
    FamilyRankResult out;
    if (specs.empty()) return out;
    const auto basis = alg.window_basis(window);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::map<GDesc, Rational>> brackets;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            pairs.emplace_back(i, j);
            brackets.push_back(alg.bracket_in_basis(basis[i], basis[j]));
        }
    std::map<GDesc, std::size_t> index;
    for (const auto& br : brackets)
        for (const auto& [d, c] : br)
            if (!index.count(d)) index.emplace(d, 0);
    std::size_t k = 0;
    std::vector<GDesc> domain;
    for (auto& [d, idx] : index) {
        idx = k++;
        domain.push_back(d);
    }

    RowSpan span(pairs.size());
    // coboundary generators: delta of each indicator form on the domain
    for (std::size_t u = 0; u < domain.size(); ++u) {
        std::vector<Rational> row(pairs.size(), Rational(0));
        for (std::size_t r = 0; r < pairs.size(); ++r) {
            auto it = brackets[r].find(domain[u]);
            if (it != brackets[r].end()) row[r] = it->second;
        }
        span.feed(std::move(row));
    }
    out.coboundary_rank = span.rank();

    for (const auto& spec : specs) {
        std::vector<Rational> row(pairs.size(), Rational(0));
        for (std::size_t r = 0; r < pairs.size(); ++r)
            row[r] = spec.eval_basis(alg, basis[pairs[r].first], basis[pairs[r].second]);
        auto fed = span.feed(std::move(row));
        out.independent.push_back(fed.independent);
        out.dependency.push_back(std::move(fed.combination));
        if (fed.independent) ++out.rank;
    }
    return out;
}

ProbeReport l_invariant_uniqueness_probe(const CurrentCocycleSpec& representative, const AlgebraRef& alg,
                                         long window, int samples, unsigned seed) {
    ProbeReport rep;
    if (!alg.with_current)
        throw std::invalid_argument("l_invariant_uniqueness_probe: current algebra required");

    // the representative itself must be window-local (level support bounded
    // by zero for separating-cycle functionals) and L-invariant
    const WindowMatrix wm = cocycle_matrix(representative, alg, window);
    const auto lv = wm.level_bounds();
    if (lv.any_nonzero && lv.max_level > 0) {
        rep.pass = false;
        rep.first_violation = "representative rejected: window support reaches level " +
                              std::to_string(lv.max_level) + " > 0 (not the local representative)";
        return rep;
    }
    {
        const auto inv = check_L_invariance_current(representative, alg, std::max(2L, window - 1));
        if (!inv.pass) {
            rep.pass = false;
            rep.first_violation = "representative rejected: " + inv.first_violation;
            return rep;
        }
    }

    const FiniteLieAlgebra& g = *alg.lie;
    const int d = g.dim();
    const int K = alg.surface->num_in();

    // section data for the invariance samples
    std::vector<Section> A, E;
    std::vector<long> deg;
    std::vector<int> pt;
    for (long n = -window; n <= window; ++n)
        for (int p = 1; p <= K; ++p) {
            A.push_back(alg.surface->basis_element(0, n, p).section);
            E.push_back(alg.surface->basis_element(-1, n, p).section);
            deg.push_back(n);
            pt.push_back(p);
        }
    const std::size_t T = A.size();
    // e.(g*h) expanded, for all (e, g, h): phi([x,y] (x) e.(gh)) is the
    // L-invariance defect of the coboundary of phi
    std::vector<std::vector<GradedExpansion>> act_prod(T, std::vector<GradedExpansion>(T * T));
    long dom_lo = 0, dom_hi = 0;
    bool have_dom = false;
    std::vector<std::vector<Section>> prodAA(T, std::vector<Section>());
    for (std::size_t a = 0; a < T; ++a) {
        prodAA[a].reserve(T);
        for (std::size_t b = 0; b < T; ++b) prodAA[a].push_back(mul_A(A[a], A[b]));
    }
    for (std::size_t e = 0; e < T; ++e)
        for (std::size_t a = 0; a < T; ++a)
            for (std::size_t b = a; b < T; ++b) {
                const Section s = lie_action(E[e], prodAA[a][b]);
                GradedExpansion ge = s.is_zero() ? GradedExpansion(0) : expand(s);
                if (!ge.empty()) {
                    if (!have_dom) {
                        dom_lo = ge.degree_min();
                        dom_hi = ge.degree_max();
                        have_dom = true;
                    } else {
                        dom_lo = std::min(dom_lo, ge.degree_min());
                        dom_hi = std::max(dom_hi, ge.degree_max());
                    }
                }
                act_prod[e][a * T + b] = std::move(ge);
            }
    // products g*h themselves, for the coboundary matrix
    std::vector<std::vector<GradedExpansion>> prod_exp(T, std::vector<GradedExpansion>(T));
    for (std::size_t a = 0; a < T; ++a)
        for (std::size_t b = 0; b < T; ++b) {
            prod_exp[a][b] = expand(prodAA[a][b]);
            if (!prod_exp[a][b].empty()) {
                if (!have_dom) {
                    dom_lo = prod_exp[a][b].degree_min();
                    dom_hi = prod_exp[a][b].degree_max();
                    have_dom = true;
                } else {
                    dom_lo = std::min(dom_lo, prod_exp[a][b].degree_min());
                    dom_hi = std::max(dom_hi, prod_exp[a][b].degree_max());
                }
            }
        }

    std::mt19937_64 rng(seed);
    auto random_rational = [&rng]() {
        std::uniform_int_distribution<long> num(-9, 9);
        std::uniform_int_distribution<long> den(1, 3);
        return Rational(num(rng), den(rng));
    };

    // phi lives on current descs over [dom_lo .. dom_hi]
    std::vector<GDesc> dom;
    for (long n = dom_lo; n <= dom_hi; ++n)
        for (int p = 1; p <= K; ++p)
            for (int i = 0; i < d; ++i) dom.push_back(GDesc{0, i, n, p});

    for (int s = 0; s < samples; ++s) {
        std::map<GDesc, Rational> phi;
        for (const auto& dsc : dom) {
            Rational v = random_rational();
            if (!v.is_zero()) phi[dsc] = v;
        }
        auto phi_of = [&](int lie_index, const GradedExpansion& ge) {
            Rational acc(0);
            for (const auto& [key, c] : ge.table()) {
                auto it = phi.find(GDesc{0, lie_index, key.first, key.second});
                if (it != phi.end()) acc += c * it->second;
            }
            return acc;
        };
        // is delta(phi) nonzero on window pairs?
        bool nonzero = false;
        for (std::size_t a = 0; a < T && !nonzero; ++a)
            for (std::size_t b = 0; b < T && !nonzero; ++b)
                for (int i = 0; i < d && !nonzero; ++i)
                    for (int j = 0; j < d && !nonzero; ++j) {
                        // delta phi (x_i A_a, x_j A_b) = phi([x_i,x_j] (x) A_a A_b)
                        Rational acc(0);
                        for (int m = 0; m < d; ++m)
                            if (!g.c(i, j, m).is_zero()) acc += g.c(i, j, m) * phi_of(m, prod_exp[a][b]);
                        if (!acc.is_zero()) nonzero = true;
                    }
        if (!nonzero) continue;  // zero on the window: consistent
        ++rep.nonzero_coboundaries;
        // must fail L-invariance at some sample
        bool violated = false;
        for (std::size_t e = 0; e < T && !violated; ++e)
            for (std::size_t a = 0; a < T && !violated; ++a)
                for (std::size_t b = a; b < T && !violated; ++b) {
                    const GradedExpansion& ge = act_prod[e][a * T + b];
                    if (ge.empty()) continue;
                    for (int i = 0; i < d && !violated; ++i)
                        for (int j = 0; j < d && !violated; ++j) {
                            Rational acc(0);
                            for (int m = 0; m < d; ++m)
                                if (!g.c(i, j, m).is_zero()) acc += g.c(i, j, m) * phi_of(m, ge);
                            if (!acc.is_zero()) violated = true;
                        }
                }
        ++rep.samples;
        if (!violated) {
            rep.pass = false;
            std::ostringstream os;
            os << "sample " << s << ": nonzero window coboundary stayed L-invariant on all samples";
            rep.first_violation = os.str();
            return rep;
        }
    }
    rep.samples = samples;
    return rep;
}

long kahler_rank(const SurfacePtr& surface, long window) {
    const int K = surface->num_in();
    const auto pts = surface->marked_points();
    std::vector<Section> A;
    for (long n = -window; n <= window; ++n)
        for (int p = 1; p <= K; ++p) A.push_back(surface->basis_element(0, n, p).section);
    std::vector<RationalFunction> dA;
    dA.reserve(A.size());
    for (const auto& a : A) dA.push_back(a.rep.derived());
    RowSpan span(pts.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j) {
            std::vector<Rational> v;
            v.reserve(pts.size());
            for (const auto& P : pts) v.push_back(residue_product_form(A[i].rep, dA[j], P));
            span.feed(std::move(v));
        }
    return static_cast<long>(span.rank());
}

}  // namespace knlab
