#pragma once

#include <map>
#include <string>

#include "cauchy/manifold.hpp"
#include "cauchy/weyl.hpp"

namespace cauchy {

// One fully described setting: grid window, lapse/metric/potential
// descriptors, time sampling, and the assertions the theorem routes need.
struct Scenario {
    std::string name;
    std::string description;
    int dimension = 1;
    std::vector<AxisSpec> axes;

    std::string lapse_src = "1";
    std::array<std::string, 3> metric_src{"1", "1", "0"};
    std::string potential_src = "1";
    ExprPtr lapse;
    std::array<ExprPtr, 3> metric{};
    ExprPtr potential;

    double t0 = 0.0, t1 = 1.0;
    int samples = 2;

    bool globally_hyperbolic = false;
    bool is_static = false;
    bool conformally_static = false;

    double evolve_dt = 1e-3;
    double evolve_span = 1.0;
    std::string phi1_src = "sin(2*x)", pi1_src = "0";
    std::string phi2_src = "0", pi2_src = "sin(2*x) + 0.3*cos(3*x)";

    WeylOptions probe;

    GridPtr make_grid(int n_override = 0) const;
    Foliation make_foliation(const GridPtr& g) const;
    std::vector<double> sample_times() const;
};

// Flat TOML-style sections: [grid], [lapse], [metric], [potential], [time],
// [flags], [evolve], [probe]; `key = value` lines, values are numbers, true/
// false, or quoted strings. Errors carry the line number.
Scenario parse_scenario_text(const std::string& text, const std::string& fallback_name = "");
Scenario parse_scenario(const std::string& path_or_name);  // catalog names resolve first

const std::map<std::string, std::string>& catalog();  // name -> description
std::string catalog_config(const std::string& name);  // the config text of an entry

}  // namespace cauchy
