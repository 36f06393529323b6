#ifndef KNLAB_COCYCLES_HPP
#define KNLAB_COCYCLES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "knlab/algebra.hpp"

namespace knlab {

/// Integration cycle: the separating cycle (residue sum over all in-points)
/// or a small circle around a single in-point.
class Cycle {
public:
    static Cycle separating() { return Cycle(0); }
    static Cycle per_point(int i) {
        if (i < 1) throw std::invalid_argument("Cycle::per_point: index must be >= 1");
        return Cycle(i);
    }
    bool is_separating() const { return index_ == 0; }
    /// 1-based in-point index; only for per-point cycles.
    int index() const {
        if (is_separating()) throw std::logic_error("Cycle: separating cycle has no point index");
        return index_;
    }
    /// The in-points the residue sum runs over.
    std::vector<SpherePoint> points(const MarkedSurface& s) const;
    std::string str() const { return is_separating() ? "C_S" : "C_" + std::to_string(index_); }

private:
    explicit Cycle(int i) : index_(i) {}
    int index_;
};

/// Chart connections entering the vector-field and mixing integrands. The
/// zero defaults are valid because the last out-point is pinned at infinity.
/// Poles must be confined to the marked points.
struct ConnectionChoice {
    RationalFunction projective;  // R
    RationalFunction affine;      // T
};

void require_admissible_connection(const SurfacePtr& s, const RationalFunction& conn, const char* who);

/// gamma^(f)_C(g,h): residue sum of g h' dz over the cycle.
Rational cocycle_f(const Cycle& c, const Section& g, const Section& h);

/// gamma^(v)_{C,R}(e,f): residue sum of (1/2)(e'''f - e f''') - R (e'f - e f').
Rational cocycle_v(const Cycle& c, const RationalFunction& R, const Section& e, const Section& f);

/// gamma^(m)_{C,T}(e,g): residue sum of e g'' + T e g', vector field first;
/// the opposite order is defined by antisymmetry.
Rational cocycle_m(const Cycle& c, const RationalFunction& T, const Section& e, const Section& g);

/// Bilinear functional on the degree-<=1 operator algebra, assembled as
/// r1*gamma^(f) + r2*gamma^(m) + r3*gamma^(v) over a cycle, each basic piece
/// extended by zero on the complementary summand.
struct D1CocycleSpec {
    std::string name = "d1-cocycle";
    Cycle cycle = Cycle::separating();
    Rational r1, r2, r3;
    RationalFunction R, T;

    static D1CocycleSpec function_part(Cycle c) { return with("gamma_f", c, 1, 0, 0); }
    static D1CocycleSpec vector_part(Cycle c, RationalFunction R = {});
    static D1CocycleSpec mixing_part(Cycle c, RationalFunction T = {});
    static D1CocycleSpec combination(Rational r1, Rational r2, Rational r3, RationalFunction R = {},
                                     RationalFunction T = {});
    /// Weight-lambda combination -(gamma_f + (1-2l)/2 gamma_m + 2(6l^2-6l+1) gamma_v).
    static D1CocycleSpec lambda_weighted(int lambda);

    Rational eval(const D1Element& a, const D1Element& b) const;
    Rational eval_sections(const Section& fa, const Section& va, const Section& fb,
                           const Section& vb) const;

private:
    static D1CocycleSpec with(std::string nm, Cycle c, Rational a, Rational b, Rational v);
};

/// Level bounds of a bilinear functional over the window basis of A + L.
struct LocalityBounds {
    bool any_nonzero = false;
    long min_level = 0;
    long max_level = 0;
};

LocalityBounds locality_bounds(const SurfacePtr& s, const D1CocycleSpec& spec, long window);

/// Generic antisymmetric functional on weight-0 sections.
using FunctionCocycle = std::function<Rational(const Section&, const Section&)>;

struct CheckReport {
    bool pass = true;
    std::size_t checked = 0;
    std::string first_violation;
};

/// gamma(fg,h) + gamma(gh,f) + gamma(hf,g) = 0 on all window triples.
CheckReport check_multiplicative(const SurfacePtr& s, const FunctionCocycle& gamma, long window);

/// gamma(e.g, h) + gamma(g, e.h) = 0 for window vector fields e and window
/// functions g,h.
CheckReport check_L_invariant(const SurfacePtr& s, const FunctionCocycle& gamma, long window);

/// Cocycle identity of the assembled functional on all pure-type window
/// triples of the operator algebra.
CheckReport check_d1_cocycle_identity(const SurfacePtr& s, const D1CocycleSpec& spec, long window);

}  // namespace knlab

#endif
