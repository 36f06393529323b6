#ifndef KNLAB_BASIS_HPP
#define KNLAB_BASIS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "knlab/laurent.hpp"

namespace knlab {

class MarkedSurface;
using SurfacePtr = std::shared_ptr<const MarkedSurface>;

/// A weight-lambda form f(z) (dz)^lambda given by its representative in the
/// affine chart. Weight 0: functions, -1: vector fields, 1: differentials,
/// 2: quadratic differentials.
struct Section {
    SurfacePtr surface;
    int weight = 0;
    RationalFunction rep;

    bool is_zero() const { return rep.is_zero(); }
    static Section zero(SurfacePtr s, int weight) { return Section{std::move(s), weight, RationalFunction::zero()}; }
};

/// Basis element f^lambda_{n,p}: the unique section with the prescribed
/// orders at the marked points, normalized to z_p^{n-lambda}(1 + O(z_p)) at
/// the p-th in-point.
struct BasisElement {
    int weight = 0;
    long n = 0;
    int p = 1;
    Section section;
    std::vector<long> orders;  // at the in-points, then the out-points
};

/// Finite coefficient table of a section over the degree basis:
/// (n,p) -> coefficient of f^lambda_{n,p}.
class GradedExpansion {
public:
    GradedExpansion() = default;
    explicit GradedExpansion(int weight) : weight_(weight) {}

    int weight() const { return weight_; }
    bool empty() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }
    const std::map<std::pair<long, int>, Rational>& table() const { return c_; }

    void set(long n, int p, Rational v);
    Rational coeff(long n, int p) const;
    long degree_min() const;
    long degree_max() const;

private:
    int weight_ = 0;
    std::map<std::pair<long, int>, Rational> c_;  // nonzero entries only
};

/// The sphere with marked points I = (P_1..P_K) (finite, the in-points) and
/// O = (Q_1..Q_{N-K}) (the out-points, the last one at infinity). Owns the
/// memoized basis cache; immutable after construction, cache fills are
/// idempotent and thread-safe.
class MarkedSurface : public std::enable_shared_from_this<MarkedSurface> {
public:
    static SurfacePtr make(std::vector<Rational> in_points, std::vector<SpherePoint> out_points);

    int num_in() const { return static_cast<int>(in_.size()); }
    int num_out() const { return static_cast<int>(out_.size()); }
    int num_marked() const { return num_in() + num_out(); }
    /// 1-based, matching the basis index p.
    const Rational& in_point(int p) const;
    /// 1-based.
    const SpherePoint& out_point(int j) const;
    const std::vector<Rational>& in_points() const { return in_; }
    const std::vector<SpherePoint>& out_points() const { return out_; }
    /// All marked points, in-points first.
    std::vector<SpherePoint> marked_points() const;
    bool is_marked(const SpherePoint& q) const;
    bool same_geometry(const MarkedSurface& o) const { return in_ == o.in_ && out_ == o.out_; }

    /// Prescribed orders of f^lambda_{n,p} at all marked points (I then O).
    /// At the in-points: (n+1-lambda) - delta_i^p. At the out-points the
    /// first N-K-1 take -(n+1-lambda) and the degree balance -2*lambda
    /// lands at infinity.
    std::vector<long> prescribe_orders(int weight, long n, int p) const;

    /// Memoized construction of the basis element.
    const BasisElement& basis_element(int weight, long n, int p) const;

    /// True when 2K+1 > N; graded expansions terminate exactly under this
    /// in/out balance and duality holds by pole bookkeeping.
    bool expansion_supported() const { return 2 * num_in() + 1 > num_marked(); }

    std::string str() const;

private:
    MarkedSurface(std::vector<Rational> in, std::vector<SpherePoint> out)
        : in_(std::move(in)), out_(std::move(out)) {}

    std::vector<Rational> in_;
    std::vector<SpherePoint> out_;
    mutable std::mutex cache_mu_;
    mutable std::map<std::tuple<int, long, int>, std::unique_ptr<const BasisElement>> cache_;
};

/// Poles confined to the marked points of the owning surface.
bool is_admissible(const Section& s);
void require_admissible(const Section& s, const char* who);
void require_same_surface(const Section& a, const Section& b, const char* who);

/// Residue at p of the 1-form (a*b) dz, computed by convolving local
/// expansions (the product is never multiplied out).
Rational residue_product_form(const RationalFunction& a, const RationalFunction& b, const SpherePoint& p);

/// Krichever-Novikov pairing of complementary weights (lambda, 1-lambda):
/// the residue sum of f tensor g over the in-points.
Rational kn_pairing(const Section& f, const Section& g);

/// Expansion of an admissible section over the degree basis. Exact: the
/// reconstruction identity is checked before returning.
GradedExpansion expand(const Section& sec);

/// Rebuilds the section from its coefficient table.
Section reconstruct(const SurfacePtr& surface, const GradedExpansion& ge);

struct DualityReport {
    bool pass = true;
    int weight = 0;
    long window = 0;
    std::size_t checked = 0;
    std::string first_violation;
};

/// Checks <f^lambda_{n,p}, f^{1-lambda}_{m,r}> = delta_{-n}^m delta_p^r for
/// all n,m in [-W..W] and all p,r.
DualityReport verify_duality(const SurfacePtr& surface, int weight, long window);

}  // namespace knlab

#endif
