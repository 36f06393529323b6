#ifndef KNLAB_COHOMOLOGY_HPP
#define KNLAB_COHOMOLOGY_HPP

#include "knlab/current.hpp"

namespace knlab {

/// Antisymmetric matrix of cocycle values over a window basis, with the
/// level (degree sum) structure available per entry.
struct WindowMatrix {
    AlgebraRef algebra;
    long window = 0;
    std::vector<GDesc> basis;
    QMatrix values;

    long level(std::size_t i, std::size_t j) const { return basis[i].n + basis[j].n; }
    bool is_antisymmetric() const;
    struct Levels {
        bool any_nonzero = false;
        long min_level = 0;
        long max_level = 0;
    };
    Levels level_bounds() const;
};

WindowMatrix cocycle_matrix(const CurrentCocycleSpec& spec, const AlgebraRef& alg, long window);

/// Window coboundary system for a matrix: unknown linear form phi on the
/// inner window (every degree a window bracket can reach), one equation per
/// basis pair. No truncated brackets enter the system.
struct CoboundarySystem {
    std::vector<GDesc> domain;                     // phi unknowns
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // row order
    QMatrix lhs;                                   // pairs x domain
    std::vector<Rational> rhs;
};

CoboundarySystem coboundary_system(const WindowMatrix& m);

/// Sound one-sided certificate: infeasibility of the restricted system
/// proves the functional is not a coboundary globally; feasibility only
/// exhibits a window witness and is inconclusive for global triviality.
struct FeasibilityCertificate {
    bool coboundary_on_window = false;
    std::map<GDesc, Rational> witness;    // when feasible
    std::size_t rank_lhs = 0;             // when infeasible
    std::size_t rank_augmented = 0;
    long domain_lo = 0, domain_hi = 0;
    std::string note;
};

FeasibilityCertificate coboundary_feasible(const WindowMatrix& m);

/// Re-checks an infeasibility certificate with the equation order shuffled.
bool reverify_infeasibility(const WindowMatrix& m, unsigned seed);

/// Rank of the span of the given functionals' window matrices in the
/// quotient by window-expressible coboundaries. A full-rank result is a
/// certified lower bound for the corresponding space of almost-graded
/// central extensions; the matching upper bounds are classification
/// statements outside finite windows.
struct FamilyRankResult {
    std::size_t rank = 0;
    std::size_t coboundary_rank = 0;
    /// For each spec: true if it enlarged the span modulo coboundaries.
    std::vector<bool> independent;
    /// For dependent specs: coefficients over (coboundary generators +
    /// previously fed specs); reported as evidence only.
    std::vector<std::vector<Rational>> dependency;
};

FamilyRankResult family_rank(const std::vector<CurrentCocycleSpec>& specs, const AlgebraRef& alg,
                             long window);

struct ProbeReport {
    bool pass = true;
    int samples = 0;
    int nonzero_coboundaries = 0;  // samples whose window coboundary was nonzero
    std::string first_violation;
};

/// Representative check plus sampled coboundary probe: no sampled window
/// linear form may produce a nonzero coboundary that stays L-invariant on
/// the window samples. Rejects representatives that are not window-local
/// (positive level support) or not L-invariant.
ProbeReport l_invariant_uniqueness_probe(const CurrentCocycleSpec& representative, const AlgebraRef& alg,
                                         long window, int samples, unsigned seed);

/// Rank of the residue vectors (res_P(f dg))_P over all marked points,
/// scanned over window pairs of functions. On the N-punctured sphere this
/// is N-1.
long kahler_rank(const SurfacePtr& surface, long window);

}  // namespace knlab

#endif
