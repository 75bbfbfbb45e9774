#pragma once

#include <map>
#include <optional>
#include <string>

namespace adslf {

// Line-oriented TOML subset: [section] headers, key = value pairs, comments
// with '#'.  Values stay strings; callers convert.
using ConfigMap = std::map<std::string, std::map<std::string, std::string>>;

ConfigMap parse_config_file(const std::string& path);

struct RunConfig {
    std::string command;
    std::string preset;
    std::string input_csv;       // tabulated curve data
    double tmin = -0.5, tmax = 0.5;
    double step = 1e-2;
    double r = 2.0, rho = 5.0, theta = 0.3;
    double A = 0, B = 0;         // omega family coefficients (0,0 = preset values)
    int trunc_order = 8;
    std::string out_dir = ".";
    std::optional<double> tol;
    bool allow_singular = false;
    bool serial = false;

    int grid_n() const;
    void apply(const ConfigMap& file);  // file values fill unset-style defaults
};

}  // namespace adslf
