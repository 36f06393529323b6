#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knlab/cohomology.hpp"

using namespace knlab;

namespace {

Rational Q(long n, long d = 1) { return Rational(n, d); }
SurfacePtr classical() { return MarkedSurface::make({Q(0)}, {SpherePoint::infinity()}); }
SurfacePtr three() { return MarkedSurface::make({Q(0), Q(1)}, {SpherePoint::infinity()}); }

BilinearForm unit_form() {
    BilinearForm f{QMatrix(1, 1)};
    f.m.at(0, 0) = Rational(1);
    return f;
}

}  // namespace

TEST_CASE("window matrices") {
    auto s = classical();
    SUBCASE("the function cocycle matrix is the antidiagonal -n") {
        auto alg = AlgebraRef::functions(s);
        const auto spec = CurrentCocycleSpec::affine(unit_form(), Cycle::separating());
        const auto m = cocycle_matrix(spec, alg, 3);
        CHECK(m.is_antisymmetric());
        for (std::size_t i = 0; i < m.basis.size(); ++i)
            for (std::size_t j = 0; j < m.basis.size(); ++j) {
                const long n = m.basis[i].n;
                CHECK(m.values.at(i, j) == (m.basis[j].n == -n ? Q(-n) : Q(0)));
            }
        const auto lv = m.level_bounds();
        CHECK(lv.min_level == 0);
        CHECK(lv.max_level == 0);
    }
    SUBCASE("zero spec gives the zero matrix") {
        auto alg = AlgebraRef::functions(s);
        BilinearForm zero{QMatrix(1, 1)};
        const auto m = cocycle_matrix(CurrentCocycleSpec::affine(zero, Cycle::separating()), alg, 3);
        CHECK_FALSE(m.level_bounds().any_nonzero);
    }
    SUBCASE("the vector-field matrix carries n^3 - n") {
        auto alg = AlgebraRef::vector_fields(s);
        const auto spec = CurrentCocycleSpec::vector_field(RationalFunction(), Cycle::separating());
        const auto m = cocycle_matrix(spec, alg, 3);
        CHECK(m.is_antisymmetric());
        for (std::size_t i = 0; i < m.basis.size(); ++i)
            for (std::size_t j = 0; j < m.basis.size(); ++j) {
                const long n = m.basis[i].n;
                CHECK(m.values.at(i, j) == (m.basis[j].n == -n ? Q(n * n * n - n) : Q(0)));
            }
    }
}

TEST_CASE("coboundary feasibility certificates") {
    auto s = classical();
    SUBCASE("abelian function algebra: any nonzero functional is not a coboundary") {
        auto alg = AlgebraRef::functions(s);
        const auto m = cocycle_matrix(CurrentCocycleSpec::affine(unit_form(), Cycle::separating()), alg, 3);
        const auto cert = coboundary_feasible(m);
        CHECK_FALSE(cert.coboundary_on_window);
        CHECK(reverify_infeasibility(m, 12345));
    }
    SUBCASE("the sl(2) affine cocycle is not a coboundary") {
        auto sl2 = FiniteLieAlgebra::sl(2);
        auto alg = AlgebraRef::current(s, sl2);
        const auto spec = CurrentCocycleSpec::affine(trace_form(*sl2), Cycle::separating());
        const auto m = cocycle_matrix(spec, alg, 4);
        const auto cert = coboundary_feasible(m);
        CHECK_FALSE(cert.coboundary_on_window);
        CHECK(cert.rank_augmented == cert.rank_lhs + 1);
        CHECK(reverify_infeasibility(m, 777));
    }
    SUBCASE("a coboundary round-trips with a verified witness") {
        auto sl2 = FiniteLieAlgebra::sl(2);
        auto alg = AlgebraRef::current(s, sl2);
        std::map<GDesc, Rational> phi;
        phi[GDesc{0, 2, 0, 1}] = Q(1);
        phi[GDesc{0, 0, 1, 1}] = Q(-2, 3);
        const auto delta = coboundary_of(phi, 6, alg, 3);
        const auto m = cocycle_matrix(delta, alg, 3);
        const auto cert = coboundary_feasible(m);
        CHECK(cert.coboundary_on_window);
        CHECK(cert.note.find("inconclusive") != std::string::npos);
        // the witness reproduces the matrix exactly
        for (std::size_t i = 0; i < m.basis.size(); ++i)
            for (std::size_t j = i + 1; j < m.basis.size(); ++j) {
                const auto br = alg.bracket_in_basis(m.basis[i], m.basis[j]);
                Rational acc(0);
                for (const auto& [dsc, c] : br) {
                    auto it = cert.witness.find(dsc);
                    if (it != cert.witness.end()) acc += c * it->second;
                }
                CHECK(acc == m.values.at(i, j));
            }
    }
}

TEST_CASE("family ranks modulo window coboundaries") {
    auto s = classical();
    SUBCASE("the three basic functionals on the operator algebra") {
        auto alg = AlgebraRef::diff_ops1(s);
        std::vector<CurrentCocycleSpec> family{
            CurrentCocycleSpec::affine(unit_form(), Cycle::separating()),
            CurrentCocycleSpec::mixing(LinearForm{{Q(1)}}, RationalFunction(), Cycle::separating()),
            CurrentCocycleSpec::vector_field(RationalFunction(), Cycle::separating())};
        const auto fr = family_rank(family, alg, 4);
        CHECK(fr.rank == 3);
    }
    SUBCASE("gl(2) operator family has rank four") {
        auto gl2 = FiniteLieAlgebra::gl(2);
        auto alg = AlgebraRef::current_diff_ops1(s, gl2);
        std::vector<CurrentCocycleSpec> family{
            CurrentCocycleSpec::affine(trace_form(*gl2), Cycle::separating()),
            CurrentCocycleSpec::affine(trace_outer_form(*gl2), Cycle::separating()),
            CurrentCocycleSpec::mixing(LinearForm{{Q(1), Q(0), Q(0), Q(1)}}, RationalFunction(),
                                       Cycle::separating()),
            CurrentCocycleSpec::vector_field(RationalFunction(), Cycle::separating())};
        const auto fr = family_rank(family, alg, 4);
        CHECK(fr.rank == 4);
    }
    SUBCASE("abelian(2) currents carry the full symmetric-form space") {
        auto ab = FiniteLieAlgebra::abelian(2);
        auto alg = AlgebraRef::current(s, ab);
        std::vector<CurrentCocycleSpec> family;
        for (const auto& f : invariant_form_space(*ab))
            family.push_back(CurrentCocycleSpec::affine(f, Cycle::separating()));
        REQUIRE(family.size() == 3);
        const auto fr = family_rank(family, alg, 4);
        CHECK(fr.rank == 3);
        CHECK(fr.coboundary_rank == 0);
    }
    SUBCASE("rescaling does not change the rank") {
        auto sl2 = FiniteLieAlgebra::sl(2);
        auto alg = AlgebraRef::current(s, sl2);
        std::vector<CurrentCocycleSpec> family{
            CurrentCocycleSpec::affine(trace_form(*sl2), Cycle::separating())};
        const auto r1 = family_rank(family, alg, 4);
        family[0] = family[0].rescaled(Q(-7, 3));
        const auto r2 = family_rank(family, alg, 4);
        CHECK(r1.rank == r2.rank);
        CHECK(r1.coboundary_rank == r2.coboundary_rank);
    }
    SUBCASE("a dependent member is reported with a dependency") {
        auto sl2 = FiniteLieAlgebra::sl(2);
        auto alg = AlgebraRef::current(s, sl2);
        const auto beta = trace_form(*sl2);
        std::vector<CurrentCocycleSpec> family{
            CurrentCocycleSpec::affine(beta, Cycle::separating()),
            CurrentCocycleSpec::affine(beta, Cycle::separating()).rescaled(Q(2))};
        const auto fr = family_rank(family, alg, 3);
        CHECK(fr.rank == 1);
        REQUIRE(fr.independent.size() == 2);
        CHECK(fr.independent[0]);
        CHECK_FALSE(fr.independent[1]);
        CHECK_FALSE(fr.dependency[1].empty());
    }
}

TEST_CASE("connection changes move the vector-field functional by a window coboundary") {
    for (auto s : {classical(), three()}) {
        auto alg = AlgebraRef::vector_fields(s);
        const auto R = RationalFunction::from_factors(Q(1), {{Q(0), -1}});
        const auto m0 =
            cocycle_matrix(CurrentCocycleSpec::vector_field(RationalFunction(), Cycle::separating()), alg, 4);
        const auto mR = cocycle_matrix(CurrentCocycleSpec::vector_field(R, Cycle::separating()), alg, 4);
        WindowMatrix diff = m0;
        for (std::size_t i = 0; i < diff.basis.size(); ++i)
            for (std::size_t j = 0; j < diff.basis.size(); ++j)
                diff.values.at(i, j) = mR.values.at(i, j) - m0.values.at(i, j);
        const auto cert = coboundary_feasible(diff);
        INFO(s->str());
        CHECK(cert.coboundary_on_window);
    }
}

TEST_CASE("uniqueness probe") {
    auto s = classical();
    SUBCASE("sl(2) currents") {
        auto sl2 = FiniteLieAlgebra::sl(2);
        auto alg = AlgebraRef::current(s, sl2);
        const auto spec = CurrentCocycleSpec::affine(trace_form(*sl2), Cycle::separating());
        const auto rep = l_invariant_uniqueness_probe(spec, alg, 3, 100, 99);
        INFO(rep.first_violation);
        CHECK(rep.pass);
        CHECK(rep.nonzero_coboundaries > 0);  // the probe saw genuine nonzero coboundaries
    }
    SUBCASE("abelian(2) currents are trivially consistent") {
        auto ab = FiniteLieAlgebra::abelian(2);
        auto alg = AlgebraRef::current(s, ab);
        std::vector<BilinearForm> forms = invariant_form_space(*ab);
        const auto spec = CurrentCocycleSpec::affine(forms.front(), Cycle::separating());
        const auto rep = l_invariant_uniqueness_probe(spec, alg, 3, 50, 7);
        CHECK(rep.pass);
        CHECK(rep.nonzero_coboundaries == 0);
    }
    SUBCASE("a non-local perturbation is rejected as a representative") {
        auto sl2 = FiniteLieAlgebra::sl(2);
        auto alg = AlgebraRef::current(s, sl2);
        auto spec = CurrentCocycleSpec::affine(trace_form(*sl2), Cycle::separating());
        CurrentCocycleSpec::UserTable t;
        t.window = 3;
        t.entries[{GDesc{0, 0, 1, 1}, GDesc{0, 1, 2, 1}}] = Q(1);  // level +3 entry
        spec.add_perturbation(std::move(t));
        const auto rep = l_invariant_uniqueness_probe(spec, alg, 3, 10, 5);
        CHECK_FALSE(rep.pass);
        CHECK(rep.first_violation.find("rejected") != std::string::npos);
    }
}

TEST_CASE("kahler ranks are the puncture counts minus one") {
    auto s2 = classical();
    auto s3 = three();
    auto s4 = MarkedSurface::make({Q(0), Q(1), Q(2)}, {SpherePoint::infinity()});
    CHECK(kahler_rank(s2, 3) == 1);
    CHECK(kahler_rank(s3, 3) == 2);
    CHECK(kahler_rank(s4, 4) == 3);
    // stability under window growth
    CHECK(kahler_rank(s3, 5) == 2);
    CHECK(kahler_rank(s4, 6) == 3);
}
