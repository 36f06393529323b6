#include "knlab/lie.hpp"

#include <sstream>
#include <stdexcept>

namespace knlab {

Rational BilinearForm::apply(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
    Rational acc(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (y[j].is_zero()) continue;
            acc += x[i] * m.at(i, j) * y[j];
        }
    }
    return acc;
}

bool BilinearForm::is_symmetric() const {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m.at(i, j) != m.at(j, i)) return false;
    return true;
}

Rational LinearForm::apply(const std::vector<Rational>& x) const {
    Rational acc(0);
    for (std::size_t i = 0; i < x.size(); ++i) acc += v[i] * x[i];
    return acc;
}

FiniteLieAlgebra::Ptr FiniteLieAlgebra::from_structure_constants(
    int dim, const std::vector<std::tuple<int, int, int, Rational>>& entries, std::vector<std::string> labels,
    std::string name, std::optional<ReductiveMeta> meta, std::vector<QMatrix> matrix_rep) {
    if (dim < 1) throw std::invalid_argument("FiniteLieAlgebra: dimension must be >= 1");
    auto g = std::shared_ptr<FiniteLieAlgebra>(new FiniteLieAlgebra());
    g->dim_ = dim;
    const std::size_t d = static_cast<std::size_t>(dim);
    g->c_.assign(d * d * d, Rational(0));
    for (const auto& [i, j, k, v] : entries) {
        if (i < 0 || i >= dim || j < 0 || j >= dim || k < 0 || k >= dim)
            throw std::invalid_argument("FiniteLieAlgebra: structure constant index out of range");
        g->c_[(static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)) * d + static_cast<std::size_t>(k)] += v;
    }
    if (labels.empty()) {
        for (int i = 0; i < dim; ++i) labels.push_back("x" + std::to_string(i + 1));
    }
    if (static_cast<int>(labels.size()) != dim)
        throw std::invalid_argument("FiniteLieAlgebra: wrong number of basis labels");
    g->labels_ = std::move(labels);
    g->name_ = std::move(name);
    g->meta_ = std::move(meta);
    if (!matrix_rep.empty() && static_cast<int>(matrix_rep.size()) != dim)
        throw std::invalid_argument("FiniteLieAlgebra: matrix realization size mismatch");
    g->rep_ = std::move(matrix_rep);

    // antisymmetry
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j <= i; ++j)
            for (int k = 0; k < dim; ++k)
                if (g->c(i, j, k) != -g->c(j, i, k)) {
                    std::ostringstream os;
                    os << "FiniteLieAlgebra: antisymmetry fails at [" << g->labels_[static_cast<std::size_t>(i)]
                       << "," << g->labels_[static_cast<std::size_t>(j)] << "] component "
                       << g->labels_[static_cast<std::size_t>(k)];
                    throw std::invalid_argument(os.str());
                }
    // Jacobi on all basis triples
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int k = j + 1; k < dim; ++k) {
                for (int m = 0; m < dim; ++m) {
                    Rational acc(0);
                    for (int l = 0; l < dim; ++l) {
                        acc += g->c(i, j, l) * g->c(l, k, m);
                        acc += g->c(j, k, l) * g->c(l, i, m);
                        acc += g->c(k, i, l) * g->c(l, j, m);
                    }
                    if (!acc.is_zero()) {
                        std::ostringstream os;
                        os << "FiniteLieAlgebra: Jacobi identity fails on ("
                           << g->labels_[static_cast<std::size_t>(i)] << ","
                           << g->labels_[static_cast<std::size_t>(j)] << ","
                           << g->labels_[static_cast<std::size_t>(k)] << ")";
                        throw std::invalid_argument(os.str());
                    }
                }
            }
    return g;
}

std::vector<Rational> FiniteLieAlgebra::bracket(const std::vector<Rational>& x,
                                                const std::vector<Rational>& y) const {
    if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
        throw std::invalid_argument("FiniteLieAlgebra::bracket: coordinate size mismatch");
    std::vector<Rational> out(static_cast<std::size_t>(dim_), Rational(0));
    for (int i = 0; i < dim_; ++i) {
        if (x[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; j < dim_; ++j) {
            if (y[static_cast<std::size_t>(j)].is_zero()) continue;
            const Rational f = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
            for (int k = 0; k < dim_; ++k) {
                const Rational& ck = c(i, j, k);
                if (!ck.is_zero()) out[static_cast<std::size_t>(k)] += f * ck;
            }
        }
    }
    return out;
}

std::vector<Rational> FiniteLieAlgebra::bracket_basis(int i, int j) const {
    std::vector<Rational> out(static_cast<std::size_t>(dim_), Rational(0));
    for (int k = 0; k < dim_; ++k) out[static_cast<std::size_t>(k)] = c(i, j, k);
    return out;
}

namespace {

QMatrix unit_matrix_entry(int n, int r, int c) {
    QMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = Rational(1);
    return m;
}

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
    QMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return out;
}

QMatrix mat_sub(const QMatrix& a, const QMatrix& b) {
    QMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) -= b.at(i, j);
    return out;
}

Rational mat_trace(const QMatrix& a) {
    Rational acc(0);
    for (std::size_t i = 0; i < a.rows(); ++i) acc += a.at(i, i);
    return acc;
}

}  // namespace

FiniteLieAlgebra::Ptr FiniteLieAlgebra::abelian(int n) {
    if (n < 1) throw std::invalid_argument("abelian: dimension must be >= 1");
    std::vector<std::string> labels;
    std::vector<QMatrix> rep;
    for (int i = 0; i < n; ++i) {
        labels.push_back("a" + std::to_string(i + 1));
        rep.push_back(unit_matrix_entry(n, i, i));  // commuting diagonal realization
    }
    ReductiveMeta meta{n, {}};
    return from_structure_constants(n, {}, std::move(labels), "abelian(" + std::to_string(n) + ")", meta,
                                    std::move(rep));
}

FiniteLieAlgebra::Ptr FiniteLieAlgebra::sl(int n) {
    if (n < 2) throw std::invalid_argument("sl: need n >= 2");
    std::vector<QMatrix> basis;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            basis.push_back(unit_matrix_entry(n, i, j));
            labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    for (int i = 0; i + 1 < n; ++i) {
        QMatrix h = mat_sub(unit_matrix_entry(n, i, i), unit_matrix_entry(n, i + 1, i + 1));
        basis.push_back(h);
        labels.push_back("H" + std::to_string(i + 1));
    }
    const int d = n * n - 1;
    auto coords = [n, d](const QMatrix& m) {
        std::vector<Rational> co(static_cast<std::size_t>(d), Rational(0));
        int idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                co[static_cast<std::size_t>(idx++)] = m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            }
        Rational acc(0);
        for (int i = 0; i + 1 < n; ++i) {
            acc += m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
            co[static_cast<std::size_t>(idx++)] = acc;
        }
        return co;
    };
    std::vector<std::tuple<int, int, int, Rational>> entries;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const QMatrix br = mat_sub(mat_mul(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]),
                                       mat_mul(basis[static_cast<std::size_t>(j)], basis[static_cast<std::size_t>(i)]));
            const auto co = coords(br);
            for (int k = 0; k < d; ++k)
                if (!co[static_cast<std::size_t>(k)].is_zero()) entries.emplace_back(i, j, k, co[static_cast<std::size_t>(k)]);
        }
    ReductiveMeta meta{0, {"sl(" + std::to_string(n) + ")"}};
    return from_structure_constants(d, entries, std::move(labels), "sl(" + std::to_string(n) + ")", meta,
                                    std::move(basis));
}

FiniteLieAlgebra::Ptr FiniteLieAlgebra::gl(int n) {
    if (n < 1) throw std::invalid_argument("gl: need n >= 1");
    std::vector<QMatrix> basis;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            basis.push_back(unit_matrix_entry(n, i, j));
            labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    const int d = n * n;
    std::vector<std::tuple<int, int, int, Rational>> entries;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const QMatrix br = mat_sub(mat_mul(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]),
                                       mat_mul(basis[static_cast<std::size_t>(j)], basis[static_cast<std::size_t>(i)]));
            for (int r = 0; r < n; ++r)
                for (int cidx = 0; cidx < n; ++cidx) {
                    const Rational& v = br.at(static_cast<std::size_t>(r), static_cast<std::size_t>(cidx));
                    if (!v.is_zero()) entries.emplace_back(i, j, r * n + cidx, v);
                }
        }
    ReductiveMeta meta{1, {"sl(" + std::to_string(n) + ")"}};
    return from_structure_constants(d, entries, std::move(labels), "gl(" + std::to_string(n) + ")", meta,
                                    std::move(basis));
}

FiniteLieAlgebra::Ptr FiniteLieAlgebra::direct_sum(const std::vector<Ptr>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct_sum: need at least one summand");
    int dim = 0;
    bool all_meta = true, all_rep = true;
    std::size_t rep_size = 0;
    for (const auto& p : parts) {
        dim += p->dim();
        all_meta = all_meta && p->reductive().has_value();
        all_rep = all_rep && p->has_matrix_rep();
        if (all_rep) rep_size += p->matrix_rep()[0].rows();
    }
    std::vector<std::tuple<int, int, int, Rational>> entries;
    std::vector<std::string> labels;
    std::vector<QMatrix> rep;
    std::string name;
    std::optional<ReductiveMeta> meta;
    if (all_meta) meta = ReductiveMeta{};
    int off = 0;
    std::size_t rep_off = 0;
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        const auto& p = parts[pi];
        name += (pi ? "+" : "") + p->name();
        for (int i = 0; i < p->dim(); ++i)
            labels.push_back(p->label(i) + "." + std::to_string(pi + 1));
        for (int i = 0; i < p->dim(); ++i)
            for (int j = 0; j < p->dim(); ++j)
                for (int k = 0; k < p->dim(); ++k)
                    if (!p->c(i, j, k).is_zero()) entries.emplace_back(off + i, off + j, off + k, p->c(i, j, k));
        if (all_meta) {
            meta->abelian_dim += p->reductive()->abelian_dim;
            for (const auto& s : p->reductive()->simple_summands) meta->simple_summands.push_back(s);
        }
        if (all_rep) {
            for (int i = 0; i < p->dim(); ++i) {
                QMatrix m(rep_size, rep_size);
                const QMatrix& small = p->matrix_rep()[static_cast<std::size_t>(i)];
                for (std::size_t r = 0; r < small.rows(); ++r)
                    for (std::size_t c2 = 0; c2 < small.cols(); ++c2) m.at(rep_off + r, rep_off + c2) = small.at(r, c2);
                rep.push_back(std::move(m));
            }
            rep_off += p->matrix_rep()[0].rows();
        }
        off += p->dim();
    }
    return from_structure_constants(dim, entries, std::move(labels), std::move(name), std::move(meta),
                                    all_rep ? std::move(rep) : std::vector<QMatrix>{});
}

BilinearForm trace_form(const FiniteLieAlgebra& g) {
    if (!g.has_matrix_rep()) throw std::invalid_argument("trace_form: no matrix realization");
    const int d = g.dim();
    BilinearForm f{QMatrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d))};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            f.m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                mat_trace(mat_mul(g.matrix_rep()[static_cast<std::size_t>(i)], g.matrix_rep()[static_cast<std::size_t>(j)]));
    return f;
}

BilinearForm trace_outer_form(const FiniteLieAlgebra& g) {
    if (!g.has_matrix_rep()) throw std::invalid_argument("trace_outer_form: no matrix realization");
    const int d = g.dim();
    BilinearForm f{QMatrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d))};
    for (int i = 0; i < d; ++i) {
        const Rational ti = mat_trace(g.matrix_rep()[static_cast<std::size_t>(i)]);
        for (int j = 0; j < d; ++j)
            f.m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                ti * mat_trace(g.matrix_rep()[static_cast<std::size_t>(j)]);
    }
    return f;
}

BilinearForm killing_form(const FiniteLieAlgebra& g) {
    const int d = g.dim();
    BilinearForm f{QMatrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d))};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Rational acc(0);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) acc += g.c(i, a, b) * g.c(j, b, a);
            f.m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = acc;
        }
    return f;
}

bool is_invariant(const FiniteLieAlgebra& g, const BilinearForm& form) {
    const int d = g.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                Rational lhs(0), rhs(0);
                for (int m = 0; m < d; ++m) {
                    lhs += g.c(i, j, m) * form.at(m, k);
                    rhs += g.c(j, k, m) * form.at(i, m);
                }
                if (lhs != rhs) return false;
            }
    return true;
}

std::vector<BilinearForm> invariant_form_space(const FiniteLieAlgebra& g) {
    const int d = g.dim();
    // unknowns: s_{kl} with k <= l
    std::vector<std::pair<int, int>> unknowns;
    for (int k = 0; k < d; ++k)
        for (int l = k; l < d; ++l) unknowns.emplace_back(k, l);
    auto index_of = [&](int k, int l) {
        if (k > l) std::swap(k, l);
        return static_cast<std::size_t>(k * d + l - k * (k + 1) / 2);
    };
    QMatrix sys(0, unknowns.size());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                std::vector<Rational> row(unknowns.size(), Rational(0));
                bool nonzero = false;
                for (int m = 0; m < d; ++m) {
                    if (!g.c(i, j, m).is_zero()) {
                        row[index_of(m, k)] += g.c(i, j, m);
                        nonzero = true;
                    }
                    if (!g.c(j, k, m).is_zero()) {
                        row[index_of(i, m)] -= g.c(j, k, m);
                        nonzero = true;
                    }
                }
                if (nonzero) sys.append_row(row);
            }
    std::vector<BilinearForm> out;
    std::vector<std::vector<Rational>> null =
        sys.rows() == 0 ? std::vector<std::vector<Rational>>() : nullspace(sys);
    if (sys.rows() == 0) {
        // no constraints: every symmetric form is invariant
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            std::vector<Rational> v(unknowns.size(), Rational(0));
            v[u] = Rational(1);
            null.push_back(std::move(v));
        }
    }
    for (const auto& v : null) {
        BilinearForm f{QMatrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d))};
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            const auto [k, l] = unknowns[u];
            f.m.at(static_cast<std::size_t>(k), static_cast<std::size_t>(l)) = v[u];
            f.m.at(static_cast<std::size_t>(l), static_cast<std::size_t>(k)) = v[u];
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<std::vector<Rational>> derived_subalgebra(const FiniteLieAlgebra& g) {
    RowSpan span(static_cast<std::size_t>(g.dim()));
    std::vector<std::vector<Rational>> basis;
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j) {
            auto v = g.bracket_basis(i, j);
            bool nz = false;
            for (const auto& x : v) nz = nz || !x.is_zero();
            if (!nz) continue;
            if (span.feed(v).independent) basis.push_back(std::move(v));
        }
    return basis;
}

std::vector<LinearForm> annihilator_of_derived(const FiniteLieAlgebra& g) {
    const auto der = derived_subalgebra(g);
    std::vector<LinearForm> out;
    if (der.empty()) {
        for (int i = 0; i < g.dim(); ++i) {
            std::vector<Rational> v(static_cast<std::size_t>(g.dim()), Rational(0));
            v[static_cast<std::size_t>(i)] = Rational(1);
            out.push_back(LinearForm{std::move(v)});
        }
        return out;
    }
    QMatrix sys(0, static_cast<std::size_t>(g.dim()));
    for (const auto& row : der) sys.append_row(row);
    for (auto& v : nullspace(sys)) out.push_back(LinearForm{std::move(v)});
    return out;
}

bool vanishes_on_derived(const FiniteLieAlgebra& g, const LinearForm& phi) {
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j)
            if (!phi.apply(g.bracket_basis(i, j)).is_zero()) return false;
    return true;
}

}  // namespace knlab
