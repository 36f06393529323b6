#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knlab/lie.hpp"

using namespace knlab;

namespace {
Rational Q(long n, long d = 1) { return Rational(n, d); }
}

TEST_CASE("sl(2) structure constants in the E12,E21,H1 basis") {
    auto g = FiniteLieAlgebra::sl(2);
    REQUIRE(g->dim() == 3);
    CHECK(g->label(0) == "E12");
    CHECK(g->label(1) == "E21");
    CHECK(g->label(2) == "H1");
    // [e,f] = h, [h,e] = 2e, [h,f] = -2f
    CHECK(g->bracket_basis(0, 1) == std::vector<Rational>{Q(0), Q(0), Q(1)});
    CHECK(g->bracket_basis(2, 0) == std::vector<Rational>{Q(2), Q(0), Q(0)});
    CHECK(g->bracket_basis(2, 1) == std::vector<Rational>{Q(0), Q(-2), Q(0)});
}

TEST_CASE("abelian and gl decompositions") {
    auto a3 = FiniteLieAlgebra::abelian(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(a3->bracket_basis(i, j) == std::vector<Rational>(3, Q(0)));
    CHECK(annihilator_of_derived(*a3).size() == 3);

    auto gl2 = FiniteLieAlgebra::gl(2);
    CHECK(gl2->dim() == 4);
    CHECK(derived_subalgebra(*gl2).size() == 3);  // sl(2) inside gl(2)
    const auto ann = annihilator_of_derived(*gl2);
    REQUIRE(ann.size() == 1);
    // the annihilator is the trace form: proportional to (0,0,1,1) over E11,E12,E21,E22
    const auto& phi = ann[0];
    CHECK(phi.at(1) == Q(0));
    CHECK(phi.at(2) == Q(0));
    CHECK(phi.at(0) == phi.at(3));
    CHECK(phi.at(0) != Q(0));

    auto sl2 = FiniteLieAlgebra::sl(2);
    CHECK(annihilator_of_derived(*sl2).empty());
}

TEST_CASE("trace forms") {
    auto sl2 = FiniteLieAlgebra::sl(2);
    const auto beta = trace_form(*sl2);
    // basis order E12, E21, H1
    CHECK(beta.at(2, 2) == Q(2));
    CHECK(beta.at(0, 1) == Q(1));
    CHECK(beta.at(2, 0) == Q(0));
    CHECK(is_invariant(*sl2, beta));

    auto gl2 = FiniteLieAlgebra::gl(2);
    const auto a1 = trace_form(*gl2);
    const auto a2 = trace_outer_form(*gl2);
    CHECK(is_invariant(*gl2, a1));
    CHECK(is_invariant(*gl2, a2));
    // alpha_2 vanishes on the traceless part: indices 1,2 are E12,E21; H = E11 - E22
    std::vector<Rational> e12{Q(0), Q(1), Q(0), Q(0)};
    std::vector<Rational> h{Q(1), Q(0), Q(0), Q(-1)};
    CHECK(a2.apply(e12, e12) == Q(0));
    CHECK(a2.apply(h, h) == Q(0));
    CHECK(a2.apply(e12, h) == Q(0));
    CHECK(a1.apply(h, h) == Q(2));
    // linear independence of a1, a2
    bool differ = false;
    for (int i = 0; i < 4 && !differ; ++i)
        for (int j = 0; j < 4 && !differ; ++j)
            differ = a1.at(i, j) * a2.at(0, 0) != a2.at(i, j) * a1.at(0, 0);
    CHECK(differ);
}

TEST_CASE("killing form is a stated multiple of the trace form") {
    auto sl2 = FiniteLieAlgebra::sl(2);
    const auto k2 = killing_form(*sl2);
    const auto b2 = trace_form(*sl2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(k2.at(i, j) == Q(4) * b2.at(i, j));
    auto sl3 = FiniteLieAlgebra::sl(3);
    const auto k3 = killing_form(*sl3);
    const auto b3 = trace_form(*sl3);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) CHECK(k3.at(i, j) == Q(6) * b3.at(i, j));
}

TEST_CASE("invariant form space dimensions") {
    CHECK(invariant_form_space(*FiniteLieAlgebra::abelian(2)).size() == 3);
    CHECK(invariant_form_space(*FiniteLieAlgebra::abelian(3)).size() == 6);
    CHECK(invariant_form_space(*FiniteLieAlgebra::sl(2)).size() == 1);
    CHECK(invariant_form_space(*FiniteLieAlgebra::gl(2)).size() == 2);
    auto ss = FiniteLieAlgebra::direct_sum({FiniteLieAlgebra::sl(2), FiniteLieAlgebra::sl(2)});
    CHECK(invariant_form_space(*ss).size() == 2);
    // the reductive count n(n+1)/2 + M against the metadata
    for (auto g : {FiniteLieAlgebra::abelian(2), FiniteLieAlgebra::sl(2), FiniteLieAlgebra::gl(2), ss,
                   FiniteLieAlgebra::gl(3)}) {
        REQUIRE(g->reductive().has_value());
        const int n = g->reductive()->abelian_dim;
        const int M = g->reductive()->num_simple();
        CHECK(static_cast<int>(invariant_form_space(*g).size()) == n * (n + 1) / 2 + M);
        for (const auto& f : invariant_form_space(*g)) {
            CHECK(f.is_symmetric());
            CHECK(is_invariant(*g, f));
        }
    }
}

TEST_CASE("gl(n): the shifted trace form restricts to the traceless part") {
    for (int n : {2, 3}) {
        auto gl = FiniteLieAlgebra::gl(n);
        const auto a1 = trace_form(*gl);
        const auto a2 = trace_outer_form(*gl);
        BilinearForm shifted{QMatrix(a1.m.rows(), a1.m.cols())};
        for (std::size_t i = 0; i < a1.m.rows(); ++i)
            for (std::size_t j = 0; j < a1.m.cols(); ++j)
                shifted.m.at(i, j) = a1.m.at(i, j) - a2.m.at(i, j) / Q(n);
        // vanishes when either argument is the scalar matrix
        std::vector<Rational> scalar(static_cast<std::size_t>(n * n), Q(0));
        for (int i = 0; i < n; ++i) scalar[static_cast<std::size_t>(i * n + i)] = Q(1);
        for (int j = 0; j < n * n; ++j) {
            std::vector<Rational> ej(static_cast<std::size_t>(n * n), Q(0));
            ej[static_cast<std::size_t>(j)] = Q(1);
            CHECK(shifted.apply(scalar, ej) == Q(0));
        }
        // agrees with the trace form on traceless elements
        std::vector<Rational> h(static_cast<std::size_t>(n * n), Q(0));
        h[0] = Q(1);
        h[static_cast<std::size_t>(n * n - 1)] = Q(-1);
        CHECK(shifted.apply(h, h) == a1.apply(h, h));
    }
}

TEST_CASE("validation rejects broken structure constants") {
    // antisymmetry violation: [x1,x2] = x3 but [x2,x1] = 0
    CHECK_THROWS_WITH_AS(
        FiniteLieAlgebra::from_structure_constants(3, {{0, 1, 2, Q(1)}}),
        doctest::Contains("antisymmetry"), std::invalid_argument);
    // Jacobi violation: like so(3) but with [x1,x2] = x1, so that
    // [[x1,x2],x3] + cyclic = [x1,x3] = -x2 does not cancel
    CHECK_THROWS_WITH_AS(
        FiniteLieAlgebra::from_structure_constants(3,
                                                   {{0, 1, 0, Q(1)}, {1, 0, 0, Q(-1)},
                                                    {1, 2, 0, Q(1)}, {2, 1, 0, Q(-1)},
                                                    {2, 0, 1, Q(1)}, {0, 2, 1, Q(-1)}}),
        doctest::Contains("Jacobi"), std::invalid_argument);
    // the untouched so(3) table passes
    auto so3 = FiniteLieAlgebra::from_structure_constants(
        3, {{0, 1, 2, Q(1)}, {1, 0, 2, Q(-1)}, {1, 2, 0, Q(1)}, {2, 1, 0, Q(-1)}, {2, 0, 1, Q(1)},
            {0, 2, 1, Q(-1)}});
    CHECK(so3->dim() == 3);
    CHECK_THROWS_AS(FiniteLieAlgebra::sl(1), std::invalid_argument);
    CHECK_THROWS_AS(FiniteLieAlgebra::abelian(0), std::invalid_argument);
}

TEST_CASE("direct sums") {
    auto g = FiniteLieAlgebra::direct_sum({FiniteLieAlgebra::abelian(1), FiniteLieAlgebra::sl(2)});
    CHECK(g->dim() == 4);
    REQUIRE(g->reductive().has_value());
    CHECK(g->reductive()->abelian_dim == 1);
    CHECK(g->reductive()->num_simple() == 1);
    CHECK(g->has_matrix_rep());
    // cross brackets vanish
    for (int j = 1; j < 4; ++j) CHECK(g->bracket_basis(0, j) == std::vector<Rational>(4, Q(0)));
}
