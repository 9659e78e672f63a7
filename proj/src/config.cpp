#include "dsm/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dsm/errors.hpp"

namespace dsm {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

Real parse_real(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const Real x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
    }
}

std::string fmt_real(Real x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig rc;
    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"problem", [&](const std::string&, const std::string& v) { rc.problem_id = unquote(v); }},
        {"solver", [&](const std::string&, const std::string& v) { rc.solver = unquote(v); }},
        {"schedule_family", [&](const std::string&, const std::string& v) { rc.schedule_family = unquote(v); }},
        {"schedule_a0", [&](const std::string& k, const std::string& v) { rc.schedule_a0 = parse_real(k, v); }},
        {"schedule_decay", [&](const std::string& k, const std::string& v) { rc.schedule_decay = parse_real(k, v); }},
        {"z_policy", [&](const std::string&, const std::string& v) { rc.z_policy = unquote(v); }},
        {"z_values", [&](const std::string&, const std::string& v) { rc.z_values = unquote(v); }},
        {"v_norm", [&](const std::string& k, const std::string& v) { rc.v_norm = parse_real(k, v); }},
        {"lambda", [&](const std::string& k, const std::string& v) { rc.lambda = parse_real(k, v); }},
        {"h", [&](const std::string& k, const std::string& v) { rc.h = parse_real(k, v); }},
        {"q", [&](const std::string& k, const std::string& v) { rc.q = parse_real(k, v); }},
        {"dt", [&](const std::string& k, const std::string& v) { rc.dt = parse_real(k, v); }},
        {"residual_tol", [&](const std::string& k, const std::string& v) { rc.residual_tol = parse_real(k, v); }},
        {"t_max", [&](const std::string& k, const std::string& v) { rc.t_max = parse_real(k, v); }},
        {"n_max", [&](const std::string& k, const std::string& v) { rc.n_max = parse_long(k, v); }},
        {"policy_mode", [&](const std::string&, const std::string& v) { rc.policy_mode = unquote(v); }},
        {"policy_a0", [&](const std::string& k, const std::string& v) { rc.policy_a0 = parse_real(k, v); }},
        {"policy_qa", [&](const std::string& k, const std::string& v) { rc.policy_qa = parse_real(k, v); }},
        {"a_min", [&](const std::string& k, const std::string& v) { rc.a_min = parse_real(k, v); }},
        {"delta", [&](const std::string& k, const std::string& v) { rc.delta = parse_real(k, v); }},
        {"bounds", [&](const std::string&, const std::string& v) { rc.bounds_mode = unquote(v); }},
        {"safety", [&](const std::string& k, const std::string& v) { rc.safety = parse_real(k, v); }},
        {"samples", [&](const std::string& k, const std::string& v) { rc.samples = parse_long(k, v); }},
        {"seed", [&](const std::string& k, const std::string& v) { rc.seed = parse_long(k, v); }},
        {"output", [&](const std::string&, const std::string& v) { rc.output = unquote(v); }},
    };

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments (quotes in our values never contain '#')
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        it->second(key, value);
    }
    return rc;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_text(const RunConfig& rc) {
    std::ostringstream o;
    o << "problem = \"" << rc.problem_id << "\"\n";
    o << "solver = \"" << rc.solver << "\"\n";
    o << "schedule_family = \"" << rc.schedule_family << "\"\n";
    o << "schedule_a0 = " << fmt_real(rc.schedule_a0) << "\n";
    o << "schedule_decay = " << fmt_real(rc.schedule_decay) << "\n";
    o << "z_policy = \"" << rc.z_policy << "\"\n";
    o << "z_values = \"" << rc.z_values << "\"\n";
    o << "v_norm = " << fmt_real(rc.v_norm) << "\n";
    o << "lambda = " << fmt_real(rc.lambda) << "\n";
    o << "h = " << fmt_real(rc.h) << "\n";
    o << "q = " << fmt_real(rc.q) << "\n";
    o << "dt = " << fmt_real(rc.dt) << "\n";
    o << "residual_tol = " << fmt_real(rc.residual_tol) << "\n";
    o << "t_max = " << fmt_real(rc.t_max) << "\n";
    o << "n_max = " << rc.n_max << "\n";
    o << "policy_mode = \"" << rc.policy_mode << "\"\n";
    o << "policy_a0 = " << fmt_real(rc.policy_a0) << "\n";
    o << "policy_qa = " << fmt_real(rc.policy_qa) << "\n";
    o << "a_min = " << fmt_real(rc.a_min) << "\n";
    o << "delta = " << fmt_real(rc.delta) << "\n";
    o << "bounds = \"" << rc.bounds_mode << "\"\n";
    o << "safety = " << fmt_real(rc.safety) << "\n";
    o << "samples = " << rc.samples << "\n";
    o << "seed = " << rc.seed << "\n";
    o << "output = \"" << rc.output << "\"\n";
    return o.str();
}

std::string default_config_text() {
    std::ostringstream o;
    o << "# Every constant a run uses, explicitly. Negative values are\n"
         "# sentinels meaning \"derive from the problem's smoothness bounds\":\n"
         "#   lambda      = -1  ->  max(1, 8 c0)\n"
         "#   schedule_a0 = -1  ->  max(1, (lambda * ||u0 - y|| / 0.9)^2), or 1 without y\n"
         "#   v_norm      = -1  ->  0.45 * min(1/(2 c1), 1/(16 lambda sqrt(a0)))  (continuous/noisy)\n"
         "#                         0.45 * min(1/(2 c1), (q+h-1)/(32 c0 h m))     (iterative)\n"
         "#   dt          = -1  ->  0.01 * min(1, a0)\n"
         "# Resolved values are echoed in the certification report.\n";
    o << config_to_text(RunConfig{});
    return o.str();
}

} // namespace dsm
