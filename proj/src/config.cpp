#include "sgf/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sgf {

std::string to_string(RunKind kind) {
    switch (kind) {
        case RunKind::simulate: return "simulate";
        case RunKind::verify: return "verify";
        case RunKind::linearize: return "linearize";
        case RunKind::pullback: return "pullback";
        case RunKind::attractor: return "attractor";
        case RunKind::sweep: return "sweep";
    }
    return "simulate";
}

RunKind run_kind_from_string(const std::string& s) {
    if (s == "simulate") return RunKind::simulate;
    if (s == "verify") return RunKind::verify;
    if (s == "linearize") return RunKind::linearize;
    if (s == "pullback") return RunKind::pullback;
    if (s == "attractor") return RunKind::attractor;
    if (s == "sweep") return RunKind::sweep;
    throw std::invalid_argument("unknown experiment kind '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::invalid_argument("config: bad number '" + item + "' in list " + key);
        }
    }
    if (out.empty()) throw std::invalid_argument("config: empty list for " + key);
    return out;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s;
    char buf[32];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
        if (i) s += ",";
        s += buf;
    }
    return s;
}

double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number '" + v + "' for key " + key);
    }
}

long to_long(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer '" + v + "' for key " + key);
    }
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("config: bad boolean '" + v + "' for key " + key);
}

}  // namespace

void RunConfig::validate() const {
    if (N < 2) throw std::invalid_argument("config: N must be >= 2");
    if (n_modes < 1 || n_modes > N * N)
        throw std::invalid_argument("config: n_modes must be in [1, N^2]");
    if (alpha <= 0.0) throw std::invalid_argument("config: alpha must be > 0");
    if (nu < 0.0) throw std::invalid_argument("config: nu must be >= 0");
    if (dt <= 0.0) throw std::invalid_argument("config: dt must be > 0");
    if (integrator != "rk4" && integrator != "heun")
        throw std::invalid_argument("config: integrator must be rk4 or heun");
    if (t_min >= 0.0 || t_max <= 0.0)
        throw std::invalid_argument("config: window must satisfy t_min < 0 < t_max");
    if (force != "zero" && force != "constant" && force != "linear" && force != "saturating")
        throw std::invalid_argument("config: unknown force kind '" + force + "'");
    if (force_sat <= 0.0) throw std::invalid_argument("config: force_sat must be > 0");
    if (tol <= 0.0) throw std::invalid_argument("config: tol must be > 0");
    if (tail_time <= 0.0) throw std::invalid_argument("config: tail_time must be > 0");
    for (std::size_t i = 1; i < pullback_times.size(); ++i)
        if (pullback_times[i] <= pullback_times[i - 1])
            throw std::invalid_argument("config: pullback_times must increase");
    for (double t : pullback_times)
        if (t < 0.0 || -t < t_min)
            throw std::invalid_argument("config: pullback time outside the stored window");
}

std::string RunConfig::serialize() const {
    std::ostringstream os;
    char buf[32];
    auto num = [&](const char* key, double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << key << " = " << buf << "\n";
    };
    os << "kind = " << to_string(kind) << "\n";
    os << "N = " << N << "\n";
    os << "n_modes = " << n_modes << "\n";
    num("alpha", alpha);
    num("nu", nu);
    num("epsilon", epsilon);
    num("dt", dt);
    os << "integrator = " << integrator << "\n";
    os << "seed = " << seed << "\n";
    num("t_min", t_min);
    num("t_max", t_max);
    os << "force = " << force << "\n";
    num("force_amp", force_amp);
    num("force_gain", force_gain);
    num("force_sat", force_sat);
    num("t_end", t_end);
    num("init_amp", init_amp);
    os << "pullback_times = " << fmt_list(pullback_times) << "\n";
    os << "eps_list = " << fmt_list(eps_list) << "\n";
    num("tol", tol);
    num("tail_time", tail_time);
    os << "out_dir = " << out_dir << "\n";
    os << "dump_coefficients = " << (dump_coefficients ? "true" : "false") << "\n";
    return os.str();
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));

        if (key == "kind") cfg.kind = run_kind_from_string(val);
        else if (key == "N") cfg.N = static_cast<int>(to_long(val, key));
        else if (key == "n_modes") cfg.n_modes = static_cast<int>(to_long(val, key));
        else if (key == "alpha") cfg.alpha = to_double(val, key);
        else if (key == "nu") cfg.nu = to_double(val, key);
        else if (key == "epsilon") cfg.epsilon = to_double(val, key);
        else if (key == "dt") cfg.dt = to_double(val, key);
        else if (key == "integrator") cfg.integrator = val;
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(val, key));
        else if (key == "t_min") cfg.t_min = to_double(val, key);
        else if (key == "t_max") cfg.t_max = to_double(val, key);
        else if (key == "force") cfg.force = val;
        else if (key == "force_amp") cfg.force_amp = to_double(val, key);
        else if (key == "force_gain") cfg.force_gain = to_double(val, key);
        else if (key == "force_sat") cfg.force_sat = to_double(val, key);
        else if (key == "t_end") cfg.t_end = to_double(val, key);
        else if (key == "init_amp") cfg.init_amp = to_double(val, key);
        else if (key == "pullback_times") cfg.pullback_times = parse_list(val, key);
        else if (key == "eps_list") cfg.eps_list = parse_list(val, key);
        else if (key == "tol") cfg.tol = to_double(val, key);
        else if (key == "tail_time") cfg.tail_time = to_double(val, key);
        else if (key == "out_dir") cfg.out_dir = val;
        else if (key == "dump_coefficients") cfg.dump_coefficients = to_bool(val, key);
        else
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open config file " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace sgf
