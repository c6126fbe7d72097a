#include "swiptsec/params_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace swiptsec {
namespace params_io {

namespace {

using Setter = std::function<void(SystemParams&, double)>;

void set_int_field(int& slot, double value, const char* key) {
    const double r = std::round(value);
    if (!(std::fabs(value - r) <= 1e-9) || r < 1.0 || r > 1e9) {
        std::ostringstream msg;
        msg << key << " must be a positive integer, got " << value;
        throw std::invalid_argument(msg.str());
    }
    slot = static_cast<int>(r);
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"omega_s", [](SystemParams& p, double v) { p.omega_s = v; }},
        {"omega_e", [](SystemParams& p, double v) { p.omega_e = v; }},
        {"gbar_s", [](SystemParams& p, double v) { p.gbar_s_override = v; }},
        {"gbar_e", [](SystemParams& p, double v) { p.gbar_e_override = v; }},
        {"n0", [](SystemParams& p, double v) { p.n0 = v; }},
        {"sigma2_s", [](SystemParams& p, double v) { p.sigma2_s = v; }},
        {"sigma2_e", [](SystemParams& p, double v) { p.sigma2_e = v; }},
        {"rho_s", [](SystemParams& p, double v) { p.rho_s = v; }},
        {"rho_e", [](SystemParams& p, double v) { p.rho_e = v; }},
        {"delta_s", [](SystemParams& p, double v) { p.delta_s = v; }},
        {"delta_e", [](SystemParams& p, double v) { p.delta_e = v; }},
        {"m_s", [](SystemParams& p, double v) { p.m_s = v; }},
        {"m_e", [](SystemParams& p, double v) { p.m_e = v; }},
        {"n_eves", [](SystemParams& p, double v) { set_int_field(p.n_eves, v, "n_eves"); }},
        {"r_s", [](SystemParams& p, double v) { p.r_s = v; }},
        {"zeta_s", [](SystemParams& p, double v) { p.zeta_s = v; }},
        {"zeta_e", [](SystemParams& p, double v) { p.zeta_e = v; }},
    };
    return table;
}

struct ParsedKey {
    std::string base;
    double scale_applied;  // linear value after suffix handling
};

// Strips a _db/_lin suffix and converts the value to linear units.
ParsedKey resolve_key(const std::string& key, double value) {
    auto ends_with = [&](const char* suf) {
        const std::string s(suf);
        return key.size() > s.size() && key.compare(key.size() - s.size(), s.size(), s) == 0;
    };
    if (ends_with("_db")) {
        const std::string base = key.substr(0, key.size() - 3);
        if (!is_power_key(base))
            throw std::invalid_argument("key '" + key + "': _db suffix is only valid for power-like keys");
        return {base, std::pow(10.0, value / 10.0)};
    }
    if (ends_with("_lin")) {
        const std::string base = key.substr(0, key.size() - 4);
        if (!is_power_key(base))
            throw std::invalid_argument("key '" + key + "': _lin suffix is only valid for power-like keys");
        return {base, value};
    }
    return {key, value};
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("key '" + key + "': value '" + text + "' is not a number");
    }
}

void format_value(std::ostringstream& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

}  // namespace

bool is_power_key(const std::string& key) {
    return key == "omega_s" || key == "omega_e" || key == "gbar_s" || key == "gbar_e" ||
           key == "n0" || key == "sigma2_s" || key == "sigma2_e";
}

void set_field(SystemParams& p, const std::string& key, double value) {
    const ParsedKey pk = resolve_key(key, value);
    const auto it = setters().find(pk.base);
    if (it == setters().end())
        throw std::invalid_argument("unknown parameter key '" + key + "'");
    it->second(p, pk.scale_applied);
}

void apply_axis(SystemParams& p, const std::string& axis, double value) {
    const ParsedKey pk = resolve_key(axis, value);
    if (pk.base == "gbar_s") {
        p.omega_s = pk.scale_applied;
        p.gbar_s_override.reset();
        return;
    }
    if (pk.base == "gbar_e") {
        p.omega_e = pk.scale_applied;
        p.gbar_e_override.reset();
        return;
    }
    set_field(p, pk.base, pk.scale_applied);
}

SystemParams parse_config_text(const std::string& text) {
    SystemParams p;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config line " << lineno << ": expected 'key = value', got '" << line << "'";
            throw std::invalid_argument(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            set_field(p, key, parse_number(value, key));
        } catch (const std::invalid_argument& e) {
            std::ostringstream msg;
            msg << "config line " << lineno << ": " << e.what();
            throw std::invalid_argument(msg.str());
        }
    }
    return p;
}

SystemParams parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(SystemParams& p, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override '" + assignment + "' must look like key=value");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    set_field(p, key, parse_number(value, key));
}

std::string dump_config(const SystemParams& p) {
    std::ostringstream out;
    auto line = [&](const char* key, double v) {
        out << key << " = ";
        format_value(out, v);
        out << "\n";
    };
    line("omega_s", p.omega_s);
    line("omega_e", p.omega_e);
    if (p.gbar_s_override)
        line("gbar_s", *p.gbar_s_override);
    if (p.gbar_e_override)
        line("gbar_e", *p.gbar_e_override);
    line("n0", p.n0);
    line("sigma2_s", p.sigma2_s);
    line("sigma2_e", p.sigma2_e);
    line("rho_s", p.rho_s);
    line("rho_e", p.rho_e);
    line("delta_s", p.delta_s);
    line("delta_e", p.delta_e);
    line("m_s", p.m_s);
    line("m_e", p.m_e);
    out << "n_eves = " << p.n_eves << "\n";
    line("r_s", p.r_s);
    line("zeta_s", p.zeta_s);
    line("zeta_e", p.zeta_e);
    return out.str();
}

SystemParams table1_preset() {
    SystemParams p;
    p.omega_s = std::pow(10.0, 3.0);   // 30 dB
    p.omega_e = std::pow(10.0, 1.0);   // 10 dB
    p.n0 = std::pow(10.0, 0.01);       // 0.1 dB
    p.sigma2_s = 1.0;                  // 0 dB
    p.sigma2_e = 1.0;
    p.rho_s = 0.8;
    p.rho_e = 0.8;
    p.delta_s = 0.2;
    p.delta_e = 0.2;
    p.m_s = 2.0;
    p.m_e = 2.0;
    p.n_eves = 5;
    p.r_s = 1.0;
    p.zeta_s = 0.8;
    p.zeta_e = 0.8;
    return p;
}

}  // namespace params_io
}  // namespace swiptsec
