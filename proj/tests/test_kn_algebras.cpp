#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knlab/algebra.hpp"

using namespace knlab;

namespace {

Rational Q(long n, long d = 1) { return Rational(n, d); }
SurfacePtr classical() { return MarkedSurface::make({Q(0)}, {SpherePoint::infinity()}); }
SurfacePtr three() { return MarkedSurface::make({Q(0), Q(1)}, {SpherePoint::infinity()}); }
SurfacePtr split() {
    return MarkedSurface::make({Q(0), Q(1)}, {SpherePoint::finite(Q(2)), SpherePoint::infinity()});
}

}  // namespace

TEST_CASE("function multiplication") {
    auto s = classical();
    for (long n = -3; n <= 3; ++n)
        for (long m = -3; m <= 3; ++m)
            CHECK(mul_A(s->basis_element(0, n, 1).section, s->basis_element(0, m, 1).section).rep ==
                  s->basis_element(0, n + m, 1).section.rep);
    Section one{s, 0, RationalFunction::constant(Q(1))};
    const auto& g = s->basis_element(0, -2, 1).section;
    CHECK(mul_A(one, g).rep == g.rep);
    auto t = three();
    CHECK_THROWS_AS(mul_A(one, t->basis_element(0, 0, 1).section), std::invalid_argument);
    CHECK_THROWS_AS(mul_A(s->basis_element(-1, 0, 1).section, g), std::invalid_argument);
}

TEST_CASE("associativity and commutativity on window triples") {
    auto s = three();
    std::vector<Section> basis;
    for (long n = -2; n <= 2; ++n)
        for (int p = 1; p <= 2; ++p) basis.push_back(s->basis_element(0, n, p).section);
    for (const auto& a : basis)
        for (const auto& b : basis) {
            CHECK(mul_A(a, b).rep == mul_A(b, a).rep);
            for (const auto& c : basis)
                CHECK(mul_A(mul_A(a, b), c).rep == mul_A(a, mul_A(b, c)).rep);
        }
}

TEST_CASE("vector field bracket") {
    auto s = classical();
    auto e = [&](long n) { return s->basis_element(-1, n, 1).section; };
    for (long n = -3; n <= 3; ++n)
        for (long m = -3; m <= 3; ++m)
            CHECK(bracket_L(e(n), e(m)).rep == e(n + m).rep.scaled(Q(m - n)));
    CHECK(bracket_L(e(2), e(2)).is_zero());
}

TEST_CASE("Jacobi identity for the vector field bracket") {
    auto s = three();
    std::vector<Section> basis;
    for (long n = -2; n <= 2; ++n)
        for (int p = 1; p <= 2; ++p) basis.push_back(s->basis_element(-1, n, p).section);
    for (const auto& a : basis)
        for (const auto& b : basis)
            for (const auto& c : basis) {
                RationalFunction sum = bracket_L(bracket_L(a, b), c).rep +
                                       bracket_L(bracket_L(b, c), a).rep +
                                       bracket_L(bracket_L(c, a), b).rep;
                CHECK(sum.is_zero());
            }
}

TEST_CASE("lie action") {
    auto s = classical();
    auto e = [&](long n) { return s->basis_element(-1, n, 1).section; };
    Section one{s, 0, RationalFunction::constant(Q(1))};
    CHECK(lie_action(e(0), one).is_zero());
    // e_0 . A_m = m A_m classically
    for (long m = -3; m <= 3; ++m)
        CHECK(lie_action(e(0), s->basis_element(0, m, 1).section).rep ==
              s->basis_element(0, m, 1).section.rep.scaled(Q(m)));

    SUBCASE("module action identity for all weights") {
        auto t = three();
        std::vector<Section> vf, mods;
        for (long n = -2; n <= 2; ++n)
            for (int p = 1; p <= 2; ++p) vf.push_back(t->basis_element(-1, n, p).section);
        for (int lam : {-1, 0, 1, 2}) {
            mods.clear();
            for (long n = -2; n <= 2; ++n)
                for (int p = 1; p <= 2; ++p) mods.push_back(t->basis_element(lam, n, p).section);
            for (const auto& a : vf)
                for (const auto& b : vf)
                    for (const auto& gsec : mods) {
                        RationalFunction lhs = lie_action(bracket_L(a, b), gsec).rep;
                        RationalFunction rhs =
                            lie_action(a, lie_action(b, gsec)).rep - lie_action(b, lie_action(a, gsec)).rep;
                        CHECK(lhs == rhs);
                    }
        }
    }
    SUBCASE("Leibniz rule at weight zero") {
        auto t = split();
        std::vector<Section> fns, vf;
        for (long n = -2; n <= 2; ++n)
            for (int p = 1; p <= 2; ++p) {
                fns.push_back(t->basis_element(0, n, p).section);
                vf.push_back(t->basis_element(-1, n, p).section);
            }
        for (const auto& e2 : vf)
            for (const auto& g : fns)
                for (const auto& h : fns)
                    CHECK(lie_action(e2, mul_A(g, h)).rep ==
                          (mul_A(lie_action(e2, g), h).rep + mul_A(g, lie_action(e2, h)).rep));
    }
}

TEST_CASE("degree <= 1 operators") {
    auto s = classical();
    auto fn = [&](long m) { return D1Element::from_function(s->basis_element(0, m, 1).section); };
    auto vf = [&](long n) { return D1Element::from_vector(s->basis_element(-1, n, 1).section); };
    SUBCASE("function part is abelian") { CHECK(bracket_D1(fn(2), fn(-1)).is_zero()); }
    SUBCASE("vector field acts as derivation") {
        const auto r = bracket_D1(vf(0), fn(3));
        CHECK(r.vec.is_zero());
        CHECK(r.fn.rep == s->basis_element(0, 3, 1).section.rep.scaled(Q(3)));
    }
    SUBCASE("Jacobi on mixed window triples") {
        std::vector<D1Element> basis;
        for (long n = -2; n <= 2; ++n) {
            basis.push_back(fn(n));
            basis.push_back(vf(n));
        }
        for (const auto& a : basis)
            for (const auto& b : basis)
                for (const auto& c : basis) {
                    const auto j1 = bracket_D1(bracket_D1(a, b), c);
                    const auto j2 = bracket_D1(bracket_D1(b, c), a);
                    const auto j3 = bracket_D1(bracket_D1(c, a), b);
                    CHECK((j1.fn.rep + j2.fn.rep + j3.fn.rep).is_zero());
                    CHECK((j1.vec.rep + j2.vec.rep + j3.vec.rep).is_zero());
                }
    }
}

TEST_CASE("grading analysis") {
    SUBCASE("classical algebras are honestly graded") {
        auto s = classical();
        for (auto op : {GradedOp::MulA, GradedOp::BracketL, GradedOp::BracketD1}) {
            const auto rep = grading_analysis(s, op, 0, 4);
            CHECK(rep.pass());
            CHECK(rep.lower_shift == 0);
            CHECK(rep.upper_shift == 0);
        }
        for (int lam : {-1, 0, 1, 2}) {
            const auto rep = grading_analysis(s, GradedOp::LieAction, lam, 4);
            CHECK(rep.pass());
            CHECK(rep.upper_shift == 0);
        }
    }
    SUBCASE("multi-point surfaces are almost-graded with lower shift zero") {
        for (auto s : {three(), split()}) {
            for (auto op : {GradedOp::MulA, GradedOp::BracketL, GradedOp::BracketD1}) {
                const auto rep = grading_analysis(s, op, 0, 4);
                INFO(graded_op_name(op), " on ", s->str(), ": ", rep.first_violation);
                CHECK(rep.pass());
                CHECK(rep.lower_shift == 0);
                CHECK(rep.upper_shift >= 0);
                CHECK(rep.upper_shift == rep.upper_shift_inner);  // window stability
            }
            for (int lam : {-1, 0, 1, 2}) {
                const auto rep = grading_analysis(s, GradedOp::LieAction, lam, 4);
                INFO("lie_action lambda=", lam, " on ", s->str(), ": ", rep.first_violation);
                CHECK(rep.pass());
            }
        }
    }
}
