#ifndef KNLAB_ALGEBRA_HPP
#define KNLAB_ALGEBRA_HPP

#include <string>

#include "knlab/basis.hpp"

namespace knlab {

/// Pointwise product of two functions (weight 0).
Section mul_A(const Section& g, const Section& h);

/// Lie bracket of two vector fields (weight -1): e f' - f e' in the chart.
Section bracket_L(const Section& e, const Section& f);

/// Lie derivative of a weight-lambda section along a vector field:
/// e g' + lambda g e' in the chart.
Section lie_action(const Section& e, const Section& g);

/// Differential operator of degree <= 1: function part plus vector part.
struct D1Element {
    Section fn;   // weight 0
    Section vec;  // weight -1

    static D1Element make(Section fn, Section vec);
    static D1Element from_function(Section fn);
    static D1Element from_vector(Section vec);
    bool is_zero() const { return fn.is_zero() && vec.is_zero(); }
};

/// [(g,e),(h,f)] = (e.h - f.g, [e,f])
D1Element bracket_D1(const D1Element& a, const D1Element& b);

/// Empirical almost-grading data for one operation over a degree window.
struct GradingReport {
    std::string op;
    int weight = 0;  // module weight for the action; unused otherwise
    long window = 0;
    bool any_nonzero = false;
    long lower_shift = 0;  // min over pairs of (min degree of result) - (n+m)
    long upper_shift = 0;  // max over pairs of (max degree of result) - (n+m)
    long upper_shift_inner = 0;  // same on the window shrunk by one
    bool lower_zero = false;     // every pair bounded below by n+m, bound attained
    bool leading_ok = false;     // degree-(n+m) component matches the boundary coefficients
    bool stable = false;         // upper shift identical on the nested window
    std::string first_violation;

    bool pass() const { return lower_zero && leading_ok && stable; }
};

enum class GradedOp { MulA, BracketL, LieAction, BracketD1 };

std::string graded_op_name(GradedOp op);

/// Expands all products of window basis pairs, records the degree shifts,
/// and checks the leading coefficients delta_p^r, (m-n), (m+lambda*n).
GradingReport grading_analysis(const SurfacePtr& surface, GradedOp op, int weight, long window);

}  // namespace knlab

#endif
