#ifndef KNLAB_CURRENT_HPP
#define KNLAB_CURRENT_HPP

#include "knlab/cocycles.hpp"
#include "knlab/lie.hpp"

namespace knlab {

/// Element of the current algebra g (x) A: one weight-0 section per Lie
/// basis index (canonical form).
struct CurrentElement {
    SurfacePtr surface;
    LiePtr lie;
    std::vector<Section> comp;

    static CurrentElement zero(SurfacePtr s, LiePtr g);
    /// x_i (x) f for a basis index i.
    static CurrentElement tensor(LiePtr g, int lie_index, Section f);
    /// x (x) f for coordinates x.
    static CurrentElement tensor(LiePtr g, const std::vector<Rational>& x, const Section& f);

    bool is_zero() const;
    CurrentElement scaled(const Rational& s) const;
    friend CurrentElement operator+(const CurrentElement& a, const CurrentElement& b);
    friend CurrentElement operator-(const CurrentElement& a, const CurrentElement& b);
};

/// Element of the operator algebra on currents: current part plus vector
/// field part.
struct D1gElement {
    CurrentElement cur;
    Section vec;  // weight -1

    static D1gElement zero(SurfacePtr s, LiePtr g);
    static D1gElement from_current(CurrentElement c);
    static D1gElement from_vector(LiePtr g, Section v);
    bool is_zero() const { return cur.is_zero() && vec.is_zero(); }
    D1gElement scaled(const Rational& s) const;
    friend D1gElement operator+(const D1gElement& a, const D1gElement& b);
    friend D1gElement operator-(const D1gElement& a, const D1gElement& b);
};

/// [x (x) f, y (x) g] = [x,y] (x) (f g)
CurrentElement bracket_current(const CurrentElement& a, const CurrentElement& b);

/// Semi-direct structure: currents bracket as above, [e, x (x) g] = x (x) (e.g),
/// vector parts bracket in L.
D1gElement bracket_D1g(const D1gElement& a, const D1gElement& b);

/// Element of a one-dimensional central extension.
struct ExtendedElement {
    Rational central;
    D1gElement base;
};

/// Basis descriptor for the window basis of any of the algebras here:
/// part 0 = current component (lie index meaningful), part 1 = vector field.
struct GDesc {
    int part = 0;
    int lie = 0;
    long n = 0;
    int p = 1;
    bool operator<(const GDesc& o) const {
        return std::tie(n, part, p, lie) < std::tie(o.n, o.part, o.p, o.lie);
    }
    bool operator==(const GDesc& o) const {
        return n == o.n && part == o.part && p == o.p && lie == o.lie;
    }
    std::string str(const FiniteLieAlgebra& g) const;
};

/// One of: the function algebra, the vector field algebra, the degree-<=1
/// operator algebra, a current algebra, or the operator algebra over a
/// current algebra. The scalar cases are the one-dimensional abelian
/// current cases.
struct AlgebraRef {
    SurfacePtr surface;
    LiePtr lie;
    bool with_current = true;
    bool with_vector = false;

    static AlgebraRef functions(SurfacePtr s);
    static AlgebraRef vector_fields(SurfacePtr s);
    static AlgebraRef diff_ops1(SurfacePtr s);
    static AlgebraRef current(SurfacePtr s, LiePtr g);
    static AlgebraRef current_diff_ops1(SurfacePtr s, LiePtr g);

    std::string name() const;
    std::vector<GDesc> window_basis(long window) const;
    D1gElement materialize(const GDesc& d) const;
    D1gElement bracket(const D1gElement& a, const D1gElement& b) const;
    /// Bracket of two basis elements expanded over the degree basis.
    std::map<GDesc, Rational> bracket_in_basis(const GDesc& a, const GDesc& b) const;
    /// Expansion of a general element over the degree basis.
    std::map<GDesc, Rational> expand_element(const D1gElement& e) const;
};

/// Bilinear functional on a current algebra or its operator algebra.
/// Geometric kinds evaluate lazily by residues over the cycle; the user
/// matrix kind is a window-supported table and refuses evaluation outside
/// its declared window.
class CurrentCocycleSpec {
public:
    enum class Kind { Affine, Mixing, VectorField, Combination, UserMatrix };

    static CurrentCocycleSpec affine(BilinearForm alpha, Cycle c);
    static CurrentCocycleSpec mixing(LinearForm phi, RationalFunction T, Cycle c);
    static CurrentCocycleSpec vector_field(RationalFunction R, Cycle c);
    static CurrentCocycleSpec combination(Rational r1, BilinearForm alpha, Rational r2, LinearForm phi,
                                          Rational r3, RationalFunction R, RationalFunction T, Cycle c);

    struct UserTable {
        long window = 0;  // declared degree support
        std::map<std::pair<GDesc, GDesc>, Rational> entries;  // keys with a < b
        Rational value(const GDesc& a, const GDesc& b) const;
    };
    static CurrentCocycleSpec user_matrix(UserTable table);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    const Rational& r1() const { return r1_; }
    const Rational& r2() const { return r2_; }
    const Rational& r3() const { return r3_; }
    const BilinearForm& alpha() const { return alpha_; }
    const LinearForm& phi() const { return phi_; }
    const RationalFunction& projective() const { return R_; }
    const RationalFunction& affine_connection() const { return T_; }
    const Cycle& cycle() const { return cycle_; }
    const std::optional<UserTable>& user() const { return user_; }

    /// Adds a window-table perturbation on top of a geometric spec.
    void add_perturbation(UserTable t) { user_ = std::move(t); }

    Rational eval(const AlgebraRef& alg, const D1gElement& a, const D1gElement& b) const;
    /// Fast path for basis pairs.
    Rational eval_basis(const AlgebraRef& alg, const GDesc& a, const GDesc& b) const;

    CurrentCocycleSpec rescaled(const Rational& s) const;

private:
    CurrentCocycleSpec() = default;
    Kind kind_ = Kind::Combination;
    std::string name_ = "cocycle";
    Rational r1_, r2_, r3_;
    BilinearForm alpha_;
    LinearForm phi_;
    RationalFunction R_, T_;
    Cycle cycle_ = Cycle::separating();
    std::optional<UserTable> user_;
};

/// [a^, b^] = ([a,b]^, gamma(a,b) t) with t central.
ExtendedElement extended_bracket(const CurrentCocycleSpec& spec, const AlgebraRef& alg,
                                 const ExtendedElement& a, const ExtendedElement& b);

struct ConditionReport {
    bool pass = true;
    std::size_t checked = 0;
    std::size_t skipped = 0;  // user-matrix triples outside the table support
    std::string first_violation;
};

/// The four split cocycle conditions on window basis triples: restriction
/// to the vector fields, restriction to the currents, and the two mixed
/// families.
ConditionReport check_cocycle_conditions(const CurrentCocycleSpec& spec, const AlgebraRef& alg, long window);

/// gamma(x(e.g), y(h)) + gamma(x(g), y(e.h)) = 0 on window samples.
ConditionReport check_L_invariance_current(const CurrentCocycleSpec& spec, const AlgebraRef& alg, long window);

/// The coboundary of a linear form given on the degree window
/// [-phi_window..phi_window] (absent entries are zero): (a,b) -> phi([a,b]),
/// materialized as a user-matrix spec on pair_window. Refuses (with the
/// required window size) if some bracket escapes the form's domain.
CurrentCocycleSpec coboundary_of(const std::map<GDesc, Rational>& phi, long phi_window,
                                 const AlgebraRef& alg, long pair_window);

/// For perfect Lie algebras: every window basis element of the current
/// algebra is exhibited as a sum of brackets with second factors tensored
/// by the constant 1.
ConditionReport check_window_perfectness(const AlgebraRef& alg, long window);

}  // namespace knlab

#endif
