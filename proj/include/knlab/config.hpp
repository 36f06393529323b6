#ifndef KNLAB_CONFIG_HPP
#define KNLAB_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "knlab/cohomology.hpp"

namespace knlab {

/// Raised for malformed configuration; the command line maps it to exit
/// code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// One named cocycle entry from the configuration.
struct SpecConfig {
    std::string name;
    std::string algebra;  // A | L | D1 | current | D1g
    std::string kind;     // gamma_f | gamma_v | gamma_m | lambda | affine | mixing | combination | user
    std::string cycle = "separating";  // or "point:<i>"
    int lambda = 0;                    // for kind == lambda
    std::string r1 = "0", r2 = "0", r3 = "0";
    std::string alpha_form;  // trace | trace-outer | killing | matrix
    std::vector<std::vector<std::string>> alpha_entries;
    std::string phi_form;  // trace | vector
    std::vector<std::string> phi_entries;
    std::vector<std::string> R_num, R_den, T_num, T_den;  // coefficient lists, ascending
    long user_window = 0;
    // entries: part_a, lie_a, n_a, p_a, part_b, lie_b, n_b, p_b, value
    std::vector<std::tuple<int, int, long, int, int, int, long, int, std::string>> user_entries;
};

struct H2LocTarget {
    std::string name;
    std::string algebra;  // current | D1g | D1
    std::optional<int> expected;
};

struct RunConfig {
    std::vector<std::string> in_points;   // exact rationals as strings
    std::vector<std::string> out_points;  // rationals or "inf" (last must be inf)
    std::string lie_builder = "abelian";  // abelian | sl | gl | direct_sum | table
    int lie_param = 1;
    std::vector<std::pair<std::string, int>> lie_summands;  // for direct_sum
    // for builder == table
    int table_dim = 0;
    std::vector<std::tuple<int, int, int, std::string>> table_entries;
    std::vector<std::string> table_labels;

    std::vector<int> lambdas{-1, 0, 1, 2};
    long window = 4;
    std::vector<SpecConfig> specs;
    std::vector<std::string> tasks;  // default: all
    std::vector<H2LocTarget> h2loc_targets;
    int jobs = 1;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

SurfacePtr build_surface(const RunConfig& cfg);
LiePtr build_lie(const RunConfig& cfg);

struct BuiltSpec {
    std::string name;
    CurrentCocycleSpec spec;
    AlgebraRef algebra;
};
BuiltSpec build_spec(const SpecConfig& sc, const SurfacePtr& surface, const LiePtr& lie);

}  // namespace knlab

#endif
