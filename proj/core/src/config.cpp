#include "cdbs/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cdbs/fixtures.hpp"
#include "cdbs/geometry.hpp"
#include "cdbs/testfn.hpp"

namespace cdbs {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        if (tok == "inf")
            out.push_back(kInf);
        else
            out.push_back(std::stod(tok));
    }
    return out;
}

bool parse_bool(const std::string& s) {
    if (s == "on" || s == "true" || s == "1" || s == "yes") return true;
    if (s == "off" || s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("config: bad boolean '" + s + "'");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "study") cfg.study = val;
            else if (key == "domain") cfg.domain = val;
            else if (key == "function") cfg.function = val;
            else if (key == "n1") cfg.n[0] = std::stoi(val);
            else if (key == "n2") cfg.n[1] = std::stoi(val);
            else if (key == "p") cfg.ps = parse_list(val);
            else if (key == "levels") cfg.levels = parse_list(val);
            else if (key == "knots") cfg.knots = val;
            else if (key == "knots1") cfg.knots1 = val;
            else if (key == "knots2") cfg.knots2 = val;
            else if (key == "jitter") cfg.jitter = std::stod(val);
            else if (key == "rho") cfg.rhos = parse_list(val);
            else if (key == "h2") cfg.h2 = std::stod(val);
            else if (key == "baseline") cfg.baseline = parse_bool(val);
            else if (key == "max_dim") cfg.max_dim = std::stoi(val);
            else if (key == "h") cfg.h = std::stod(val);
            else if (key == "epsilon") cfg.epsilon = (val == "auto") ? -1 : std::stod(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "jobs") cfg.jobs = std::stoi(val);
            else if (key == "debug_figures") cfg.debug_figures = parse_bool(val);
            else if (key == "select_i1") cfg.select_i1 = std::stoi(val);
            else if (key == "select_i2") cfg.select_i2 = std::stoi(val);
            else if (key == "out") cfg.out = val;
            else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config line " + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str());
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.study != "convergence" && cfg.study != "rho_sweep" && cfg.study != "quasi" &&
        cfg.study != "debug")
        throw ConfigError("config: unknown study '" + cfg.study + "'");
    if (cfg.domain.rfind("file:", 0) != 0 && !is_fixture_name(cfg.domain))
        throw ConfigError("config: unknown domain '" + cfg.domain + "'");
    try {
        test_function(cfg.function);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (cfg.n[0] < 1 || cfg.n[1] < 1) throw ConfigError("config: orders must be >= 1");
    if (cfg.knots != "uniform" && cfg.knots != "jitter")
        throw ConfigError("config: knots must be uniform or jitter");
    for (const std::string& k : {cfg.knots1, cfg.knots2}) {
        if (k.empty() || k == "uniform" || k == "jitter") continue;
        if (k.rfind("explicit:", 0) == 0) {
            if (cfg.study == "convergence" || cfg.study == "rho_sweep")
                throw ConfigError("config: explicit knot lists need a single-grid study");
            if (parse_list(k.substr(9)).size() < 2)
                throw ConfigError("config: explicit knot list too short");
            continue;
        }
        throw ConfigError("config: per-direction knots must be uniform, jitter or explicit:...");
    }
    if (cfg.jitter < 0 || cfg.jitter >= 0.5)
        throw ConfigError("config: jitter must lie in [0, 0.5)");
    if (cfg.study == "convergence" && cfg.levels.empty())
        throw ConfigError("config: convergence study needs levels");
    if (cfg.study == "rho_sweep" && cfg.rhos.empty())
        throw ConfigError("config: rho_sweep needs a rho list");
    for (double p : cfg.ps)
        if (!(p >= 1.0)) throw ConfigError("config: p values must lie in [1, inf]");
    if (cfg.jobs < 1) throw ConfigError("config: jobs must be >= 1");
}

std::string to_text(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    auto list = [&](const std::vector<double>& v) {
        std::ostringstream s;
        s.precision(17);
        for (size_t k = 0; k < v.size(); ++k) {
            if (k) s << ",";
            if (std::isinf(v[k]))
                s << "inf";
            else
                s << v[k];
        }
        return s.str();
    };
    os << "study = " << cfg.study << "\n";
    os << "domain = " << cfg.domain << "\n";
    os << "function = " << cfg.function << "\n";
    os << "n1 = " << cfg.n[0] << "\n";
    os << "n2 = " << cfg.n[1] << "\n";
    os << "p = " << list(cfg.ps) << "\n";
    if (!cfg.levels.empty()) os << "levels = " << list(cfg.levels) << "\n";
    os << "knots = " << cfg.knots << "\n";
    if (!cfg.knots1.empty()) os << "knots1 = " << cfg.knots1 << "\n";
    if (!cfg.knots2.empty()) os << "knots2 = " << cfg.knots2 << "\n";
    os << "jitter = " << cfg.jitter << "\n";
    if (!cfg.rhos.empty()) os << "rho = " << list(cfg.rhos) << "\n";
    os << "h2 = " << cfg.h2 << "\n";
    os << "baseline = " << (cfg.baseline ? "on" : "off") << "\n";
    os << "max_dim = " << cfg.max_dim << "\n";
    os << "h = " << cfg.h << "\n";
    os << "epsilon = ";
    if (cfg.epsilon <= 0)
        os << "auto\n";
    else
        os << cfg.epsilon << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "jobs = " << cfg.jobs << "\n";
    os << "debug_figures = " << (cfg.debug_figures ? "on" : "off") << "\n";
    os << "out = " << cfg.out << "\n";
    return os.str();
}

}  // namespace cdbs
