#ifndef KNLAB_REPORT_HPP
#define KNLAB_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "knlab/cohomology.hpp"

namespace knlab {

/// One verification task outcome. `data` holds exact values as strings
/// ("p/q"), keyed deterministically.
struct TaskRecord {
    std::string name;
    bool pass = true;
    std::string detail;
    std::map<std::string, std::string> data;
};

struct RunReport {
    std::string command;
    std::map<std::string, std::string> meta;
    std::vector<TaskRecord> tasks;

    bool all_pass() const {
        for (const auto& t : tasks)
            if (!t.pass) return false;
        return true;
    }
};

/// Canonical machine form: sorted keys, exact rationals as strings, no
/// timing data (reports are byte-identical across runs).
std::string report_json(const RunReport& r);

/// Human-readable table form.
std::string report_text(const RunReport& r);

/// Window matrix as CSV: one row per ordered basis pair with the exact
/// value; zero entries are skipped.
std::string matrix_csv(const WindowMatrix& m);

}  // namespace knlab

#endif
