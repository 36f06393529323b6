#ifndef KNLAB_LIE_HPP
#define KNLAB_LIE_HPP

#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "knlab/linalg.hpp"

namespace knlab {

/// Symmetric bilinear form on a finite-dimensional Lie algebra, as a matrix
/// over the structure-constant basis.
struct BilinearForm {
    QMatrix m;
    Rational apply(const std::vector<Rational>& x, const std::vector<Rational>& y) const;
    Rational at(int i, int j) const { return m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }
    bool is_symmetric() const;
};

/// Linear form (covector) on a finite-dimensional Lie algebra.
struct LinearForm {
    std::vector<Rational> v;
    Rational apply(const std::vector<Rational>& x) const;
    Rational at(int i) const { return v[static_cast<std::size_t>(i)]; }
};

/// Finite-dimensional Lie algebra given by structure constants over a fixed
/// basis. Antisymmetry and the Jacobi identity are verified at construction.
class FiniteLieAlgebra {
public:
    using Ptr = std::shared_ptr<const FiniteLieAlgebra>;

    struct ReductiveMeta {
        int abelian_dim = 0;                       // n
        std::vector<std::string> simple_summands;  // M entries
        int num_simple() const { return static_cast<int>(simple_summands.size()); }
    };

    /// entries: (i, j, k, c) meaning [x_i, x_j] contains c * x_k (0-based).
    /// Throws with the failing triple if antisymmetry or Jacobi fails.
    static Ptr from_structure_constants(int dim, const std::vector<std::tuple<int, int, int, Rational>>& entries,
                                        std::vector<std::string> labels = {}, std::string name = "custom",
                                        std::optional<ReductiveMeta> meta = std::nullopt,
                                        std::vector<QMatrix> matrix_rep = {});

    static Ptr abelian(int n);
    /// Trace-less n x n matrices; basis: E_ij (i != j, row-major), then
    /// H_i = E_ii - E_{i+1,i+1}.
    static Ptr sl(int n);
    /// All n x n matrices; basis: E_ij row-major.
    static Ptr gl(int n);
    static Ptr direct_sum(const std::vector<Ptr>& parts);

    int dim() const { return dim_; }
    const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
    const std::string& name() const { return name_; }
    const Rational& c(int i, int j, int k) const {
        return c_[(static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j)) *
                      static_cast<std::size_t>(dim_) +
                  static_cast<std::size_t>(k)];
    }
    std::vector<Rational> bracket(const std::vector<Rational>& x, const std::vector<Rational>& y) const;
    /// [x_i, x_j] as a coordinate vector.
    std::vector<Rational> bracket_basis(int i, int j) const;

    bool has_matrix_rep() const { return !rep_.empty(); }
    const std::vector<QMatrix>& matrix_rep() const { return rep_; }
    const std::optional<ReductiveMeta>& reductive() const { return meta_; }

private:
    FiniteLieAlgebra() = default;
    int dim_ = 0;
    std::vector<Rational> c_;
    std::vector<std::string> labels_;
    std::string name_;
    std::optional<ReductiveMeta> meta_;
    std::vector<QMatrix> rep_;
};

using LiePtr = FiniteLieAlgebra::Ptr;

/// beta(x,y) = tr(xy); requires a matrix realization.
BilinearForm trace_form(const FiniteLieAlgebra& g);
/// alpha(x,y) = tr(x) tr(y); requires a matrix realization.
BilinearForm trace_outer_form(const FiniteLieAlgebra& g);
/// Killing form tr(ad x ad y), from the structure constants alone.
BilinearForm killing_form(const FiniteLieAlgebra& g);

bool is_invariant(const FiniteLieAlgebra& g, const BilinearForm& form);

/// Basis of the space of symmetric invariant bilinear forms, by exact
/// nullspace computation.
std::vector<BilinearForm> invariant_form_space(const FiniteLieAlgebra& g);

/// Echelonized basis of the derived subalgebra [g, g].
std::vector<std::vector<Rational>> derived_subalgebra(const FiniteLieAlgebra& g);

/// Basis of linear forms vanishing on the derived subalgebra.
std::vector<LinearForm> annihilator_of_derived(const FiniteLieAlgebra& g);

bool vanishes_on_derived(const FiniteLieAlgebra& g, const LinearForm& phi);

}  // namespace knlab

#endif
