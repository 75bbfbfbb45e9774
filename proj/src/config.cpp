#include "adslf/config.hpp"

#include <cmath>
#include <fstream>

#include "adslf/errors.hpp"

namespace adslf {

namespace {
std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}
}  // namespace

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open " + path);
    ConfigMap cfg;
    std::string section, line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw UsageError("config: bad section at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config: expected key = value at line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
            val = val.substr(1, val.size() - 2);
        cfg[section][key] = val;
    }
    return cfg;
}

int RunConfig::grid_n() const {
    if (!(step > 0)) throw UsageError("step must be positive");
    const double span = tmax - tmin;
    if (!(span > 0)) throw UsageError("domain must have tmax > tmin");
    return (int)std::lround(span / step) + 1;
}

void RunConfig::apply(const ConfigMap& file) {
    auto get = [&](const char* sec, const char* key) -> const std::string* {
        auto s = file.find(sec);
        if (s == file.end()) return nullptr;
        auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    };
    if (auto v = get("domain", "tmin")) tmin = std::stod(*v);
    if (auto v = get("domain", "tmax")) tmax = std::stod(*v);
    if (auto v = get("domain", "step")) step = std::stod(*v);
    if (auto v = get("params", "r")) r = std::stod(*v);
    if (auto v = get("params", "rho")) rho = std::stod(*v);
    if (auto v = get("params", "theta")) theta = std::stod(*v);
    if (auto v = get("params", "A")) A = std::stod(*v);
    if (auto v = get("params", "B")) B = std::stod(*v);
    if (auto v = get("params", "truncation")) trunc_order = std::stoi(*v);
    if (auto v = get("params", "preset")) preset = *v;
    if (auto v = get("output", "dir")) out_dir = *v;
    if (auto v = get("output", "tol")) tol = std::stod(*v);
}

}  // namespace adslf
