#include "knlab/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace knlab {

namespace {

using nlohmann::json;

std::string require_string(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_string())
        throw ConfigError(ctx + ": missing string field '" + key + "'");
    return j[key].get<std::string>();
}

std::vector<std::string> string_list(const json& j, const std::string& ctx) {
    if (!j.is_array()) throw ConfigError(ctx + ": expected a list");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (e.is_string())
            out.push_back(e.get<std::string>());
        else if (e.is_number_integer())
            out.push_back(std::to_string(e.get<long>()));
        else
            throw ConfigError(ctx + ": expected strings (exact rationals as \"p/q\")");
    }
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig cfg;
    if (!j.contains("surface") || !j["surface"].is_object())
        throw ConfigError("config: missing 'surface' object");
    cfg.in_points = string_list(j["surface"].value("in", json::array()), "surface.in");
    cfg.out_points = string_list(j["surface"].value("out", json::array()), "surface.out");

    if (j.contains("lie")) {
        const auto& l = j["lie"];
        if (!l.is_object()) throw ConfigError("config: 'lie' must be an object");
        cfg.lie_builder = l.value("builder", std::string("abelian"));
        cfg.lie_param = l.value("n", 1);
        if (cfg.lie_builder == "direct_sum") {
            if (!l.contains("summands") || !l["summands"].is_array())
                throw ConfigError("config: lie.direct_sum needs 'summands'");
            for (const auto& s : l["summands"]) {
                cfg.lie_summands.emplace_back(require_string(s, "builder", "lie.summands"), s.value("n", 1));
            }
        } else if (cfg.lie_builder == "table") {
            cfg.table_dim = l.value("dim", 0);
            if (l.contains("labels")) cfg.table_labels = string_list(l["labels"], "lie.labels");
            if (!l.contains("entries") || !l["entries"].is_array())
                throw ConfigError("config: lie.table needs 'entries' [[i,j,k,\"c\"],...]");
            for (const auto& e : l["entries"]) {
                if (!e.is_array() || e.size() != 4) throw ConfigError("config: lie.table entry must be [i,j,k,\"c\"]");
                cfg.table_entries.emplace_back(e[0].get<int>(), e[1].get<int>(), e[2].get<int>(),
                                               e[3].is_string() ? e[3].get<std::string>()
                                                                : std::to_string(e[3].get<long>()));
            }
        }
    }
    if (j.contains("lambdas")) {
        cfg.lambdas.clear();
        for (const auto& e : j["lambdas"]) cfg.lambdas.push_back(e.get<int>());
    }
    cfg.window = j.value("window", 4);
    if (cfg.window < 1) throw ConfigError("config: window must be >= 1");
    cfg.jobs = j.value("jobs", 1);

    if (j.contains("tasks")) {
        for (const auto& e : j["tasks"]) cfg.tasks.push_back(e.get<std::string>());
    }

    if (j.contains("cocycles")) {
        for (const auto& c : j["cocycles"]) {
            SpecConfig sc;
            sc.name = require_string(c, "name", "cocycles");
            sc.algebra = c.value("algebra", std::string("D1"));
            sc.kind = require_string(c, "kind", "cocycles");
            sc.cycle = c.value("cycle", std::string("separating"));
            sc.lambda = c.value("lambda", 0);
            sc.r1 = c.value("r1", std::string("0"));
            sc.r2 = c.value("r2", std::string("0"));
            sc.r3 = c.value("r3", std::string("0"));
            if (c.contains("alpha")) {
                const auto& a = c["alpha"];
                sc.alpha_form = a.value("form", std::string("trace"));
                if (a.contains("entries")) {
                    for (const auto& row : a["entries"]) sc.alpha_entries.push_back(string_list(row, "alpha.entries"));
                }
            }
            if (c.contains("phi")) {
                const auto& p = c["phi"];
                sc.phi_form = p.value("form", std::string("trace"));
                if (p.contains("entries")) sc.phi_entries = string_list(p["entries"], "phi.entries");
            }
            if (c.contains("R")) {
                sc.R_num = string_list(c["R"].value("num", json::array()), "R.num");
                sc.R_den = string_list(c["R"].value("den", json::array()), "R.den");
            }
            if (c.contains("T")) {
                sc.T_num = string_list(c["T"].value("num", json::array()), "T.num");
                sc.T_den = string_list(c["T"].value("den", json::array()), "T.den");
            }
            if (c.contains("entries")) {
                sc.user_window = c.value("user_window", cfg.window);
                for (const auto& e : c["entries"]) {
                    if (!e.is_array() || e.size() != 9)
                        throw ConfigError("config: user cocycle entry must be "
                                          "[part_a,lie_a,n_a,p_a,part_b,lie_b,n_b,p_b,\"value\"]");
                    sc.user_entries.emplace_back(e[0].get<int>(), e[1].get<int>(), e[2].get<long>(),
                                                 e[3].get<int>(), e[4].get<int>(), e[5].get<int>(),
                                                 e[6].get<long>(), e[7].get<int>(),
                                                 e[8].is_string() ? e[8].get<std::string>()
                                                                  : std::to_string(e[8].get<long>()));
                }
            }
            cfg.specs.push_back(std::move(sc));
        }
    }
    if (j.contains("h2loc")) {
        const auto& h = j["h2loc"];
        if (h.contains("targets")) {
            for (const auto& t : h["targets"]) {
                H2LocTarget target;
                target.name = require_string(t, "name", "h2loc.targets");
                target.algebra = t.value("algebra", std::string("current"));
                if (t.contains("expected")) target.expected = t["expected"].get<int>();
                cfg.h2loc_targets.push_back(std::move(target));
            }
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

SurfacePtr build_surface(const RunConfig& cfg) {
    std::vector<Rational> in;
    for (const auto& s : cfg.in_points) {
        try {
            in.push_back(Rational::parse(s));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("surface.in: ") + e.what());
        }
    }
    std::vector<SpherePoint> out;
    for (const auto& s : cfg.out_points) {
        if (s == "inf" || s == "infinity") {
            out.push_back(SpherePoint::infinity());
        } else {
            try {
                out.push_back(SpherePoint::finite(Rational::parse(s)));
            } catch (const std::exception& e) {
                throw ConfigError(std::string("surface.out: ") + e.what());
            }
        }
    }
    try {
        return MarkedSurface::make(std::move(in), std::move(out));
    } catch (const std::exception& e) {
        throw ConfigError(std::string("surface: ") + e.what());
    }
}

LiePtr build_lie(const RunConfig& cfg) {
    try {
        if (cfg.lie_builder == "abelian") return FiniteLieAlgebra::abelian(cfg.lie_param);
        if (cfg.lie_builder == "sl") return FiniteLieAlgebra::sl(cfg.lie_param);
        if (cfg.lie_builder == "gl") return FiniteLieAlgebra::gl(cfg.lie_param);
        if (cfg.lie_builder == "direct_sum") {
            std::vector<LiePtr> parts;
            for (const auto& [b, n] : cfg.lie_summands) {
                if (b == "abelian")
                    parts.push_back(FiniteLieAlgebra::abelian(n));
                else if (b == "sl")
                    parts.push_back(FiniteLieAlgebra::sl(n));
                else if (b == "gl")
                    parts.push_back(FiniteLieAlgebra::gl(n));
                else
                    throw ConfigError("lie.direct_sum: unknown builder '" + b + "'");
            }
            return FiniteLieAlgebra::direct_sum(parts);
        }
        if (cfg.lie_builder == "table") {
            std::vector<std::tuple<int, int, int, Rational>> entries;
            for (const auto& [i, j, k, v] : cfg.table_entries)
                entries.emplace_back(i, j, k, Rational::parse(v));
            return FiniteLieAlgebra::from_structure_constants(cfg.table_dim, entries, cfg.table_labels);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("lie: ") + e.what());
    }
    throw ConfigError("lie: unknown builder '" + cfg.lie_builder + "'");
}

namespace {

RationalFunction from_coeff_lists(const std::vector<std::string>& num, const std::vector<std::string>& den,
                                  const std::string& ctx) {
    auto poly = [&](const std::vector<std::string>& c) {
        std::vector<Rational> v;
        for (const auto& s : c) v.push_back(Rational::parse(s));
        return Polynomial(std::move(v));
    };
    try {
        Polynomial n = num.empty() ? Polynomial::zero() : poly(num);
        Polynomial d = den.empty() ? Polynomial::constant(Rational(1)) : poly(den);
        return RationalFunction::from_num_den(std::move(n), std::move(d));
    } catch (const std::exception& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
}

Cycle parse_cycle(const std::string& s) {
    if (s == "separating") return Cycle::separating();
    if (s.rfind("point:", 0) == 0) return Cycle::per_point(std::stoi(s.substr(6)));
    throw ConfigError("cycle: expected 'separating' or 'point:<i>', got '" + s + "'");
}

BilinearForm scalar_unit_form() {
    BilinearForm f{QMatrix(1, 1)};
    f.m.at(0, 0) = Rational(1);
    return f;
}

LinearForm scalar_unit_covector() { return LinearForm{{Rational(1)}}; }

}  // namespace

BuiltSpec build_spec(const SpecConfig& sc, const SurfacePtr& surface, const LiePtr& lie) {
    AlgebraRef alg = [&] {
        if (sc.algebra == "A") return AlgebraRef::functions(surface);
        if (sc.algebra == "L") return AlgebraRef::vector_fields(surface);
        if (sc.algebra == "D1") return AlgebraRef::diff_ops1(surface);
        if (sc.algebra == "current") return AlgebraRef::current(surface, lie);
        if (sc.algebra == "D1g") return AlgebraRef::current_diff_ops1(surface, lie);
        throw ConfigError("cocycle '" + sc.name + "': unknown algebra '" + sc.algebra + "'");
    }();
    const Cycle cyc = parse_cycle(sc.cycle);
    const ConnectionChoice conn{from_coeff_lists(sc.R_num, sc.R_den, "cocycle '" + sc.name + "'.R"),
                                from_coeff_lists(sc.T_num, sc.T_den, "cocycle '" + sc.name + "'.T")};
    try {
        require_admissible_connection(surface, conn.projective, "projective connection");
        require_admissible_connection(surface, conn.affine, "affine connection");
    } catch (const std::exception& e) {
        throw ConfigError("cocycle '" + sc.name + "': " + e.what());
    }
    const RationalFunction& R = conn.projective;
    const RationalFunction& T = conn.affine;

    auto alpha_of = [&]() -> BilinearForm {
        if (sc.alpha_form.empty() || sc.alpha_form == "unit") return scalar_unit_form();
        if (sc.alpha_form == "trace") return trace_form(*alg.lie);
        if (sc.alpha_form == "trace-outer") return trace_outer_form(*alg.lie);
        if (sc.alpha_form == "killing") return killing_form(*alg.lie);
        if (sc.alpha_form == "matrix") {
            const int d = alg.lie->dim();
            if (static_cast<int>(sc.alpha_entries.size()) != d)
                throw ConfigError("cocycle '" + sc.name + "': alpha matrix must be " + std::to_string(d) + "x" +
                                  std::to_string(d));
            BilinearForm f{QMatrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d))};
            for (int i = 0; i < d; ++i) {
                if (static_cast<int>(sc.alpha_entries[static_cast<std::size_t>(i)].size()) != d)
                    throw ConfigError("cocycle '" + sc.name + "': alpha matrix row size mismatch");
                for (int j = 0; j < d; ++j)
                    f.m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                        Rational::parse(sc.alpha_entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            }
            if (!f.is_symmetric()) throw ConfigError("cocycle '" + sc.name + "': alpha must be symmetric");
            return f;
        }
        throw ConfigError("cocycle '" + sc.name + "': unknown alpha form '" + sc.alpha_form + "'");
    };
    auto phi_of = [&]() -> LinearForm {
        if (sc.phi_form.empty() || sc.phi_form == "unit") return scalar_unit_covector();
        if (sc.phi_form == "trace") {
            if (!alg.lie->has_matrix_rep())
                throw ConfigError("cocycle '" + sc.name + "': phi=trace needs a matrix realization");
            LinearForm phi;
            for (int i = 0; i < alg.lie->dim(); ++i) {
                Rational tr(0);
                const QMatrix& mi = alg.lie->matrix_rep()[static_cast<std::size_t>(i)];
                for (std::size_t r = 0; r < mi.rows(); ++r) tr += mi.at(r, r);
                phi.v.push_back(tr);
            }
            return phi;
        }
        if (sc.phi_form == "vector") {
            if (static_cast<int>(sc.phi_entries.size()) != alg.lie->dim())
                throw ConfigError("cocycle '" + sc.name + "': phi vector size mismatch");
            LinearForm phi;
            for (const auto& s : sc.phi_entries) phi.v.push_back(Rational::parse(s));
            return phi;
        }
        throw ConfigError("cocycle '" + sc.name + "': unknown phi form '" + sc.phi_form + "'");
    };

    CurrentCocycleSpec spec = [&]() -> CurrentCocycleSpec {
        if (sc.kind == "gamma_f")
            return CurrentCocycleSpec::affine(scalar_unit_form(), cyc);
        if (sc.kind == "gamma_v") return CurrentCocycleSpec::vector_field(R, cyc);
        if (sc.kind == "gamma_m") return CurrentCocycleSpec::mixing(scalar_unit_covector(), T, cyc);
        if (sc.kind == "lambda") {
            const auto d1 = D1CocycleSpec::lambda_weighted(sc.lambda);
            return CurrentCocycleSpec::combination(d1.r1, scalar_unit_form(), d1.r2, scalar_unit_covector(),
                                                   d1.r3, R, T, cyc);
        }
        if (sc.kind == "affine") return CurrentCocycleSpec::affine(alpha_of(), cyc);
        if (sc.kind == "mixing") return CurrentCocycleSpec::mixing(phi_of(), T, cyc);
        if (sc.kind == "combination")
            return CurrentCocycleSpec::combination(Rational::parse(sc.r1), alpha_of(), Rational::parse(sc.r2),
                                                   phi_of(), Rational::parse(sc.r3), R, T, cyc);
        if (sc.kind == "user") {
            CurrentCocycleSpec::UserTable t;
            t.window = sc.user_window;
            for (const auto& [pa, la, na, ppa, pb, lb, nb, ppb, v] : sc.user_entries) {
                GDesc a{pa, la, na, ppa};
                GDesc b{pb, lb, nb, ppb};
                const Rational val = Rational::parse(v);
                if (b < a)
                    t.entries[{b, a}] = -val;
                else
                    t.entries[{a, b}] = val;
            }
            return CurrentCocycleSpec::user_matrix(std::move(t));
        }
        throw ConfigError("cocycle '" + sc.name + "': unknown kind '" + sc.kind + "'");
    }();
    spec.set_name(sc.name);
    return BuiltSpec{sc.name, std::move(spec), std::move(alg)};
}

}  // namespace knlab
