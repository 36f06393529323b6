#include "knlab/algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace knlab {

Section mul_A(const Section& g, const Section& h) {
    require_same_surface(g, h, "mul_A");
    if (g.weight != 0 || h.weight != 0) throw std::invalid_argument("mul_A: both factors must have weight 0");
    require_admissible(g, "mul_A");
    require_admissible(h, "mul_A");
    return Section{g.surface, 0, g.rep * h.rep};
}

Section bracket_L(const Section& e, const Section& f) {
    require_same_surface(e, f, "bracket_L");
    if (e.weight != -1 || f.weight != -1)
        throw std::invalid_argument("bracket_L: both arguments must be vector fields (weight -1)");
    require_admissible(e, "bracket_L");
    require_admissible(f, "bracket_L");
    return Section{e.surface, -1, e.rep * f.rep.derived() - f.rep * e.rep.derived()};
}

Section lie_action(const Section& e, const Section& g) {
    require_same_surface(e, g, "lie_action");
    if (e.weight != -1) throw std::invalid_argument("lie_action: first argument must be a vector field");
    require_admissible(e, "lie_action");
    require_admissible(g, "lie_action");
    RationalFunction out = e.rep * g.rep.derived();
    if (g.weight != 0) out += g.rep.scaled(Rational(g.weight)) * e.rep.derived();
    return Section{g.surface, g.weight, std::move(out)};
}

D1Element D1Element::make(Section fn, Section vec) {
    if (fn.weight != 0 || vec.weight != -1) throw std::invalid_argument("D1Element: weights must be (0,-1)");
    require_same_surface(fn, vec, "D1Element");
    return D1Element{std::move(fn), std::move(vec)};
}

D1Element D1Element::from_function(Section fn) {
    Section zero = Section::zero(fn.surface, -1);
    return make(std::move(fn), std::move(zero));
}

D1Element D1Element::from_vector(Section vec) {
    Section zero = Section::zero(vec.surface, 0);
    return make(std::move(zero), std::move(vec));
}

D1Element bracket_D1(const D1Element& a, const D1Element& b) {
    require_same_surface(a.fn, b.fn, "bracket_D1");
    Section fn{a.fn.surface, 0, lie_action(a.vec, b.fn).rep - lie_action(b.vec, a.fn).rep};
    Section vec = bracket_L(a.vec, b.vec);
    return D1Element{std::move(fn), std::move(vec)};
}

std::string graded_op_name(GradedOp op) {
    switch (op) {
        case GradedOp::MulA: return "mul_A";
        case GradedOp::BracketL: return "bracket_L";
        case GradedOp::LieAction: return "lie_action";
        case GradedOp::BracketD1: return "bracket_D1";
    }
    return "?";
}

namespace {

struct PairScan {
    bool any = false;
    long lower = 0, upper = 0;
    bool lower_violation = false;
    std::string violation;
};

// expected coefficient of the degree-(n+m) component at (n+m, s)
Rational boundary_coeff(GradedOp op, int weight, long n, int p, long m, int r, int s) {
    if (p != r || s != r) return Rational(0);
    switch (op) {
        case GradedOp::MulA: return Rational(1);
        case GradedOp::BracketL: return Rational(m - n);
        case GradedOp::LieAction: return Rational(m + static_cast<long>(weight) * n);
        case GradedOp::BracketD1: return Rational(0);  // handled per part
    }
    return Rational(0);
}

}  // namespace

GradingReport grading_analysis(const SurfacePtr& surface, GradedOp op, int weight, long window) {
    if (window < 2) throw std::invalid_argument("grading_analysis: window must be >= 2");
    GradingReport rep;
    rep.op = graded_op_name(op);
    rep.weight = weight;
    rep.window = window;

    const int K = surface->num_in();

    // weights of the two operands and of the result of each sub-case
    struct Case {
        int wa, wb, wout;
        GradedOp kind;
    };
    std::vector<Case> cases;
    switch (op) {
        case GradedOp::MulA: cases.push_back({0, 0, 0, GradedOp::MulA}); break;
        case GradedOp::BracketL: cases.push_back({-1, -1, -1, GradedOp::BracketL}); break;
        case GradedOp::LieAction: cases.push_back({-1, weight, weight, GradedOp::LieAction}); break;
        case GradedOp::BracketD1:
            // pure-type pairs of D1 = A + L; (A,A) commutes to zero
            cases.push_back({-1, -1, -1, GradedOp::BracketL});
            cases.push_back({-1, 0, 0, GradedOp::LieAction});
            break;
    }

    auto apply = [&](const Case& c, const Section& a, const Section& b) -> Section {
        switch (c.kind) {
            case GradedOp::MulA: return mul_A(a, b);
            case GradedOp::BracketL: return bracket_L(a, b);
            case GradedOp::LieAction: return lie_action(a, b);
            default: throw std::logic_error("grading_analysis: unreachable");
        }
    };

    bool any = false;
    long lower = 0, upper = 0, upper_inner = 0;
    bool any_inner = false;
    rep.lower_zero = true;
    rep.leading_ok = true;

    auto note_violation = [&](const std::string& msg) {
        if (rep.first_violation.empty()) rep.first_violation = msg;
    };

    for (const auto& c : cases) {
        for (long n = -window; n <= window; ++n) {
            for (int p = 1; p <= K; ++p) {
                const Section& a = surface->basis_element(c.wa, n, p).section;
                for (long m = -window; m <= window; ++m) {
                    for (int r = 1; r <= K; ++r) {
                        const Section& b = surface->basis_element(c.wb, m, r).section;
                        const Section out = apply(c, a, b);
                        const bool inner = (n >= -(window - 1) && n <= window - 1 && m >= -(window - 1) &&
                                            m <= window - 1);
                        // leading component check (including required zeros)
                        GradedExpansion ge;
                        if (!out.is_zero()) {
                            ge = expand(out);
                            const long lo = ge.degree_min() - (n + m);
                            const long hi = ge.degree_max() - (n + m);
                            if (!any) {
                                lower = lo;
                                upper = hi;
                                any = true;
                            } else {
                                lower = std::min(lower, lo);
                                upper = std::max(upper, hi);
                            }
                            if (inner) {
                                upper_inner = any_inner ? std::max(upper_inner, hi) : hi;
                                any_inner = true;
                            }
                            if (lo < 0) {
                                rep.lower_zero = false;
                                std::ostringstream os;
                                os << rep.op << ": pair (" << n << "," << p << ")x(" << m << "," << r
                                   << ") produced degree " << ge.degree_min() << " < " << (n + m);
                                note_violation(os.str());
                            }
                        }
                        for (int s = 1; s <= K; ++s) {
                            const Rational got = out.is_zero() ? Rational(0) : ge.coeff(n + m, s);
                            const Rational want = boundary_coeff(c.kind, c.wout, n, p, m, r, s);
                            if (got != want) {
                                rep.leading_ok = false;
                                std::ostringstream os;
                                os << rep.op << ": leading coefficient at (" << (n + m) << "," << s
                                   << ") of (" << n << "," << p << ")x(" << m << "," << r << ") is "
                                   << got.str() << ", expected " << want.str();
                                note_violation(os.str());
                            }
                        }
                    }
                }
            }
        }
    }

    rep.any_nonzero = any;
    rep.lower_shift = any ? lower : 0;
    rep.upper_shift = any ? upper : 0;
    rep.upper_shift_inner = any_inner ? upper_inner : 0;
    // the lower bound must be attained somewhere for "shift zero" to mean
    // anything; combined with lower_zero this pins R = 0 exactly
    if (any && lower != 0) rep.lower_zero = false;
    rep.stable = (!any && !any_inner) || (any && any_inner && upper == upper_inner);
    return rep;
}

}  // namespace knlab
