#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtvol {

// Run configuration: slope, r selection, named tolerances and budgets.
// Config files are flat key=value lines ('#' comments); flags override.
struct RunConfig {
    long long p = 0, q = 0;
    std::vector<int> r_list;
    std::map<std::string, double> tol;
    std::map<std::string, double> budget;
    std::string format = "csv";  // csv | json
    std::string out;             // empty = stdout
    bool pretty = false;
    bool quick = false;

    double tol_or(const std::string& name, double def) const {
        auto it = tol.find(name);
        return it == tol.end() ? def : it->second;
    }
    double budget_or(const std::string& name, double def) const {
        auto it = budget.find(name);
        return it == budget.end() ? def : it->second;
    }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "5" | "5,7,9" | "5..31" (odd values of the inclusive range)
inline std::vector<int> parse_r_spec(const std::string& spec) {
    std::vector<int> out;
    auto push_checked = [&out](long v) {
        if (v < 3 || v % 2 == 0)
            throw UsageError("r values must be odd and >= 3: " + std::to_string(v));
        out.push_back(static_cast<int>(v));
    };
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        long a = std::stol(spec.substr(0, dots));
        long b = std::stol(spec.substr(dots + 2));
        if (a % 2 == 0) ++a;
        for (long v = a; v <= b; v += 2) push_checked(v);
        if (out.empty()) throw UsageError("empty r range: " + spec);
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        push_checked(std::stol(item));
    }
    if (out.empty()) throw UsageError("no r values in: " + spec);
    return out;
}

inline void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& val) {
    if (key == "p") cfg.p = std::stoll(val);
    else if (key == "q") cfg.q = std::stoll(val);
    else if (key == "r") cfg.r_list = parse_r_spec(val);
    else if (key == "format") cfg.format = val;
    else if (key == "out") cfg.out = val;
    else if (key == "pretty") cfg.pretty = (val == "1" || val == "true");
    else if (key == "quick") cfg.quick = (val == "1" || val == "true");
    else if (key.rfind("tol.", 0) == 0) cfg.tol[key.substr(4)] = std::stod(val);
    else if (key.rfind("budget.", 0) == 0) cfg.budget[key.substr(7)] = std::stod(val);
    else throw UsageError("unknown config key: " + key);
}

inline void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto endpos = line.find_last_not_of(" \t\r");
        if (endpos == std::string::npos) continue;
        line = line.substr(0, endpos + 1);
        const auto start = line.find_first_not_of(" \t");
        line = line.substr(start);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        apply_config_line(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
}

}  // namespace rtvol
