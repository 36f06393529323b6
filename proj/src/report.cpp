#include "knlab/report.hpp"

#include <json.hpp>

#include <sstream>

namespace knlab {

std::string report_json(const RunReport& r) {
    nlohmann::ordered_json out;
    out["command"] = r.command;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.meta) meta[k] = v;
    out["meta"] = meta;
    nlohmann::ordered_json tasks = nlohmann::ordered_json::array();
    for (const auto& t : r.tasks) {
        nlohmann::ordered_json jt;
        jt["name"] = t.name;
        jt["pass"] = t.pass;
        if (!t.detail.empty()) jt["detail"] = t.detail;
        if (!t.data.empty()) {
            nlohmann::ordered_json d = nlohmann::ordered_json::object();
            for (const auto& [k, v] : t.data) d[k] = v;
            jt["data"] = d;
        }
        tasks.push_back(jt);
    }
    out["tasks"] = tasks;
    out["summary"] = {{"pass", r.all_pass()},
                      {"total", r.tasks.size()},
                      {"failed", [&] {
                           std::size_t n = 0;
                           for (const auto& t : r.tasks)
                               if (!t.pass) ++n;
                           return n;
                       }()}};
    return out.dump(2) + "\n";
}

std::string report_text(const RunReport& r) {
    std::ostringstream os;
    os << "== " << r.command << " ==\n";
    for (const auto& [k, v] : r.meta) os << "   " << k << ": " << v << "\n";
    for (const auto& t : r.tasks) {
        os << (t.pass ? "[PASS] " : "[FAIL] ") << t.name;
        if (!t.detail.empty()) os << "  -- " << t.detail;
        os << "\n";
        for (const auto& [k, v] : t.data) os << "       " << k << " = " << v << "\n";
    }
    std::size_t failed = 0;
    for (const auto& t : r.tasks)
        if (!t.pass) ++failed;
    os << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) FAILED") << " ("
       << r.tasks.size() << " total)\n";
    return os.str();
}

std::string matrix_csv(const WindowMatrix& m) {
    std::ostringstream os;
    os << "part_a,lie_a,n_a,p_a,part_b,lie_b,n_b,p_b,level,value\n";
    for (std::size_t i = 0; i < m.basis.size(); ++i)
        for (std::size_t j = 0; j < m.basis.size(); ++j) {
            const Rational& v = m.values.at(i, j);
            if (v.is_zero()) continue;
            const GDesc& a = m.basis[i];
            const GDesc& b = m.basis[j];
            os << a.part << "," << a.lie << "," << a.n << "," << a.p << "," << b.part << "," << b.lie << ","
               << b.n << "," << b.p << "," << (a.n + b.n) << "," << v.str() << "\n";
        }
    return os.str();
}

}  // namespace knlab
