#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "knlab/basis.hpp"
#include "knlab/linalg.hpp"

using namespace knlab;

namespace {

Rational Q(long n, long d = 1) { return Rational(n, d); }

SurfacePtr classical() { return MarkedSurface::make({Q(0)}, {SpherePoint::infinity()}); }
SurfacePtr three() { return MarkedSurface::make({Q(0), Q(1)}, {SpherePoint::infinity()}); }
SurfacePtr four() { return MarkedSurface::make({Q(0), Q(1), Q(2)}, {SpherePoint::infinity()}); }
SurfacePtr split() {
    return MarkedSurface::make({Q(0), Q(1)}, {SpherePoint::finite(Q(2)), SpherePoint::infinity()});
}

}  // namespace

TEST_CASE("surface validation") {
    CHECK(classical()->num_marked() == 2);
    CHECK(three()->num_in() == 2);
    CHECK_THROWS_AS(MarkedSurface::make({Q(0), Q(0)}, {SpherePoint::infinity()}), std::invalid_argument);
    CHECK_THROWS_AS(MarkedSurface::make({Q(0)}, {SpherePoint::finite(Q(1))}), std::invalid_argument);
    CHECK_THROWS_AS(MarkedSurface::make({}, {SpherePoint::infinity()}), std::invalid_argument);
    CHECK_THROWS_AS(MarkedSurface::make({Q(0)}, {}), std::invalid_argument);
    CHECK_THROWS_AS(MarkedSurface::make({Q(0)}, {SpherePoint::infinity(), SpherePoint::finite(Q(1))}),
                    std::invalid_argument);
}

TEST_CASE("order prescriptions") {
    SUBCASE("classical weight 0") {
        auto s = classical();
        for (long n = -3; n <= 3; ++n) {
            auto o = s->prescribe_orders(0, n, 1);
            CHECK(o == std::vector<long>{n, -n});
        }
    }
    SUBCASE("three point") {
        auto o = three()->prescribe_orders(0, 0, 1);
        CHECK(o == std::vector<long>{0, 1, -1});
    }
    SUBCASE("classical vector-field weight") {
        auto o = classical()->prescribe_orders(-1, 0, 1);
        CHECK(o == std::vector<long>{1, 1});
    }
    SUBCASE("degree balance is -2*weight") {
        for (auto s : {three(), split()})
            for (int lam : {-1, 0, 1, 2})
                for (long n = -3; n <= 3; ++n)
                    for (int p = 1; p <= s->num_in(); ++p) {
                        auto o = s->prescribe_orders(lam, n, p);
                        long sum = 0;
                        for (long v : o) sum += v;
                        CHECK(sum == -2 * lam);
                    }
    }
}

TEST_CASE("basis elements") {
    SUBCASE("classical Laurent monomials and Witt fields") {
        auto s = classical();
        for (long n = -4; n <= 4; ++n) {
            CHECK(s->basis_element(0, n, 1).section.rep ==
                  RationalFunction::from_factors(Q(1), {{Q(0), n}}));
            CHECK(s->basis_element(-1, n, 1).section.rep ==
                  RationalFunction::from_factors(Q(1), {{Q(0), n + 1}}));
        }
    }
    SUBCASE("three-point degree-0 functions") {
        auto s = three();
        // 1 - z and z
        CHECK(s->basis_element(0, 0, 1).section.rep ==
              RationalFunction::from_polynomial(Polynomial(std::vector<Rational>{Q(1), Q(-1)})));
        CHECK(s->basis_element(0, 0, 2).section.rep == RationalFunction::variable());
    }
    SUBCASE("exact orders at every marked point") {
        for (auto s : {three(), split()})
            for (int lam : {-1, 0, 1, 2})
                for (long n = -3; n <= 3; ++n)
                    for (int p = 1; p <= s->num_in(); ++p) {
                        const auto& b = s->basis_element(lam, n, p);
                        const auto pts = s->marked_points();
                        for (std::size_t k = 0; k < pts.size(); ++k) {
                            const long twist = pts[k].is_infinity() ? 2L * lam : 0L;
                            CHECK(order_at(b.section.rep, pts[k]) == b.orders[k] + twist);
                        }
                        // normalization: leading coefficient 1 at P_p
                        const auto series = expand_at(b.section.rep, SpherePoint::finite(s->in_point(p)), n - lam);
                        CHECK(series.lead() == n - lam);
                        CHECK(series.coeff(n - lam) == Q(1));
                    }
    }
}

TEST_CASE("pairing") {
    auto s = three();
    SUBCASE("weight mismatch") {
        const auto& f = s->basis_element(0, 0, 1).section;
        CHECK_THROWS_AS(kn_pairing(f, f), std::invalid_argument);
    }
    SUBCASE("classical residue pairing") {
        auto c = classical();
        for (long n = -3; n <= 3; ++n)
            for (long m = -3; m <= 3; ++m) {
                const auto& f = c->basis_element(0, n, 1).section;   // z^n
                const auto& w = c->basis_element(1, m, 1).section;   // z^{m-1} dz
                CHECK(kn_pairing(f, w) == ((n + m == 0) ? Q(1) : Q(0)));
            }
    }
    SUBCASE("duality of A against the one-forms") {
        for (long n = -3; n <= 3; ++n)
            for (long m = -3; m <= 3; ++m)
                for (int p = 1; p <= 2; ++p)
                    for (int r = 1; r <= 2; ++r) {
                        const auto& a = s->basis_element(0, n, p).section;
                        const auto& w = s->basis_element(1, -m, r).section;  // omega^{m,r}
                        CHECK(kn_pairing(a, w) == ((n == m && p == r) ? Q(1) : Q(0)));
                    }
    }
}

TEST_CASE("duality windows across surfaces and weights") {
    for (auto s : {classical(), three(), four(), split()})
        for (int lam : {-1, 0, 1, 2}) {
            const auto rep = verify_duality(s, lam, 4);
            INFO(s->str(), " lambda=", lam, " : ", rep.first_violation);
            CHECK(rep.pass);
        }
}

TEST_CASE("pairing matrix is nondegenerate on the window") {
    auto s = three();
    const long W = 3;
    const int K = s->num_in();
    const std::size_t size = static_cast<std::size_t>((2 * W + 1) * K);
    for (int lam : {-1, 0, 1, 2}) {
        QMatrix m(size, size);
        std::size_t i = 0;
        for (long n = -W; n <= W; ++n)
            for (int p = 1; p <= K; ++p, ++i) {
                std::size_t j = 0;
                for (long mm = -W; mm <= W; ++mm)
                    for (int r = 1; r <= K; ++r, ++j)
                        m.at(i, j) = kn_pairing(s->basis_element(lam, n, p).section,
                                                s->basis_element(1 - lam, mm, r).section);
            }
        CHECK(rank(m) == size);
    }
}

TEST_CASE("graded expansion") {
    SUBCASE("basis elements expand to a single entry") {
        auto s = split();
        for (int lam : {-1, 0, 1, 2})
            for (long n = -2; n <= 2; ++n)
                for (int p = 1; p <= 2; ++p) {
                    const auto ge = expand(s->basis_element(lam, n, p).section);
                    CHECK(ge.size() == 1);
                    CHECK(ge.coeff(n, p) == Q(1));
                }
    }
    SUBCASE("partition of unity") {
        for (auto s : {classical(), three(), four(), split()}) {
            Section one{s, 0, RationalFunction::constant(Q(1))};
            const auto ge = expand(one);
            CHECK(static_cast<int>(ge.size()) == s->num_in());
            for (int p = 1; p <= s->num_in(); ++p) CHECK(ge.coeff(0, p) == Q(1));
        }
    }
    SUBCASE("classical example") {
        auto s = classical();
        Section sec{s, 0,
                    RationalFunction::from_num_den(Polynomial(std::vector<Rational>{Q(3), Q(0), Q(0), Q(1)}),
                                                   Polynomial::var())};  // z^2 + 3/z
        const auto ge = expand(sec);
        CHECK(ge.size() == 2);
        CHECK(ge.coeff(2, 1) == Q(1));
        CHECK(ge.coeff(-1, 1) == Q(3));
    }
    SUBCASE("random admissible sections reconstruct exactly") {
        std::mt19937_64 rng(42);
        std::uniform_int_distribution<long> e(-3, 3);
        std::uniform_int_distribution<long> c(-5, 5);
        for (auto s : {three(), split()}) {
            for (int t = 0; t < 8; ++t) {
                RationalFunction f;
                for (int piece = 0; piece < 3; ++piece) {
                    std::map<Rational, long> powers;
                    for (const auto& x : s->in_points()) powers[x] = e(rng);
                    f += RationalFunction::from_factors(Q(c(rng), 1 + piece), powers);
                }
                for (int lam : {-1, 0, 1, 2}) {
                    Section sec{s, lam, f};
                    const auto ge = expand(sec);  // throws on reconstruction mismatch
                    const Section back = reconstruct(s, ge);
                    CHECK(back.rep == f);
                }
            }
        }
    }
    SUBCASE("inadmissible poles are rejected") {
        auto s = classical();
        Section bad{s, 0, RationalFunction::from_factors(Q(1), {{Q(5), -1}})};
        CHECK_THROWS_AS(expand(bad), std::invalid_argument);
    }
    SUBCASE("unsupported in/out balance is an explicit error") {
        auto s = MarkedSurface::make({Q(0)}, {SpherePoint::finite(Q(1)), SpherePoint::finite(Q(2)),
                                              SpherePoint::infinity()});
        CHECK_FALSE(s->expansion_supported());
        Section one{s, 0, RationalFunction::constant(Q(1))};
        CHECK_THROWS_AS(expand(one), std::runtime_error);
    }
}

TEST_CASE("basis cache is consistent under repeated access") {
    auto s = three();
    const auto& a = s->basis_element(0, 2, 1);
    const auto& b = s->basis_element(0, 2, 1);
    CHECK(&a == &b);
    CHECK(a.section.rep == b.section.rep);
}
