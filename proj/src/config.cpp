#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "constants.hpp"

namespace cqnc {

namespace {

std::string trim(std::string s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

std::string strip_quotes(std::string s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

double parse_number(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for key '" + key + "': " + value);
    }
}

std::size_t parse_count(const std::string& value, const std::string& key) {
    const double v = parse_number(value, key);
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
        throw ConfigError("key '" + key + "' must be a non-negative integer");
    return static_cast<std::size_t>(v);
}

bool parse_on_off(const std::string& value, const std::string& key) {
    if (value == "on") return true;
    if (value == "off") return false;
    throw ConfigError("key '" + key + "' must be on or off, got: " + value);
}

// Parameter keys treated as frequencies for the Hz -> rad/s conversion.
bool frequency_like(const std::string& key) {
    static const char* keys[] = {"Omega",  "gamma_m", "kappa",   "Gamma",  "Delta_q",
                                 "Delta_c", "g0",      "g",       "G_opa",  "G_em",
                                 "G_qubit", "Omega_R", "omega_L"};
    return std::find_if(std::begin(keys), std::end(keys),
                        [&](const char* k) { return key == k; }) != std::end(keys);
}

void set_param(ParamsInput& in, const std::string& key, double v) {
    if (key == "Omega") in.Omega = v;
    else if (key == "gamma_m") in.gamma_m = v;
    else if (key == "kappa") in.kappa = v;
    else if (key == "Gamma") in.Gamma = v;
    else if (key == "Delta_q") in.Delta_q = v;
    else if (key == "Delta_c") in.Delta_c = v;
    else if (key == "g0") in.g0 = v;
    else if (key == "g") in.g = v;
    else if (key == "G_opa") in.G_opa = v;
    else if (key == "theta_opa") in.theta_opa = v;
    else if (key == "G_em") in.G_em = v;
    else if (key == "G_qubit") in.G_qubit = v;
    else if (key == "d_bar") in.d_bar = v;
    else if (key == "x_bar") in.x_bar = v;
    else if (key == "Omega_R") in.Omega_R = v;
    else if (key == "omega_L") in.omega_L = v;
    else if (key == "P_L") in.P_L = v;
    else if (key == "T") in.T = v;
    else if (key == "n_bar") in.n_bar = v;
    else if (key == "mass") in.mass = v;
    else throw ConfigError("unknown key: " + key);
}

bool is_param_key(const std::string& key) {
    static const char* keys[] = {"Omega",   "gamma_m", "kappa",   "Gamma",   "Delta_q",
                                 "Delta_c", "g0",      "g",       "G_opa",   "theta_opa",
                                 "G_em",    "G_qubit", "d_bar",   "x_bar",   "Omega_R",
                                 "omega_L", "P_L",     "T",       "n_bar",   "mass"};
    return std::find_if(std::begin(keys), std::end(keys),
                        [&](const char* k) { return key == k; }) != std::end(keys);
}

std::vector<double> parse_gain_list(const std::string& value) {
    std::vector<double> gains;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty entry in opa_gains");
        gains.push_back(parse_number(item, "opa_gains"));
    }
    if (gains.empty()) throw ConfigError("opa_gains must not be empty");
    return gains;
}

}  // namespace

void RunConfig::validate() const {
    if (freq_count < 2) throw ConfigError("freq_count must be >= 2");
    if (!(freq_min < freq_max)) throw ConfigError("freq_min must be < freq_max");
    if (freq_log && freq_min <= 0.0) throw ConfigError("log frequency grid needs freq_min > 0");
    if (power_count < 2) throw ConfigError("power_count must be >= 2");
    if (!(power_min < power_max)) throw ConfigError("power_min must be < power_max");
    if (power_min <= 0.0) throw ConfigError("power_min must be > 0");
    for (const double g : opa_gains_over_kappa)
        if (g < 0.0) throw ConfigError("opa_gains entries must be >= 0");
}

LoadedConfig parse_config(const std::string& text, const std::string& origin) {
    std::map<std::string, std::string> entries;
    std::vector<std::string> order;

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = strip_quotes(trim(line.substr(eq + 1)));
        if (key.empty() || value.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        if (entries.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key " + key);
        entries[key] = value;
        order.push_back(key);
    }

    // Preset and unit first; they shape how the rest is read.
    ParamsInput input;
    bool matched_preset = false;
    if (const auto it = entries.find("preset"); it != entries.end()) {
        if (it->second == "fig2") {
            input = ParamsInput::from(make_fig2_params());
        } else if (it->second == "cqnc-matched") {
            input = ParamsInput::from(apply_cqnc_matching(make_fig2_params()).params);
            matched_preset = true;
        } else {
            throw ConfigError("unknown preset: " + it->second);
        }
    }

    double unit_scale = 1.0;
    if (const auto it = entries.find("unit"); it != entries.end()) {
        if (it->second == "Hz") unit_scale = kTwoPi;
        else if (it->second == "rad_s") unit_scale = 1.0;
        else throw ConfigError("unit must be Hz or rad_s, got: " + it->second);
    }

    LoadedConfig out;
    bool params_overridden = false;
    for (const auto& key : order) {
        const std::string& value = entries[key];
        if (key == "preset" || key == "unit") continue;
        if (is_param_key(key)) {
            const double scale = frequency_like(key) ? unit_scale : 1.0;
            set_param(input, key, scale * parse_number(value, key));
            params_overridden = true;
            // An explicit g or P_L replaces the preset's pair.
            if (key == "g") input.P_L.reset();
            if (key == "P_L") input.g.reset();
            if (key == "G_em") input.G_qubit.reset();
            if (key == "G_qubit") input.G_em.reset();
            if (key == "T") input.n_bar.reset();
        } else if (key == "freq_min") out.run.freq_min = parse_number(value, key);
        else if (key == "freq_max") out.run.freq_max = parse_number(value, key);
        else if (key == "freq_count") out.run.freq_count = parse_count(value, key);
        else if (key == "freq_scale") {
            if (value == "log") out.run.freq_log = true;
            else if (value == "linear") out.run.freq_log = false;
            else throw ConfigError("freq_scale must be linear or log");
        } else if (key == "power_min") out.run.power_min = parse_number(value, key);
        else if (key == "power_max") out.run.power_max = parse_number(value, key);
        else if (key == "power_count") out.run.power_count = parse_count(value, key);
        else if (key == "opa_gains") out.run.opa_gains_over_kappa = parse_gain_list(value);
        else if (key == "mode") {
            if (value == "literal") out.run.mode = oracle::AssemblyMode::literal;
            else if (value == "consistent") out.run.mode = oracle::AssemblyMode::consistent;
            else throw ConfigError("mode must be literal or consistent, got: " + value);
        } else if (key == "chi_sign") {
            if (value == "cancelling") out.run.chi_sign = response::ChiDPrimeSign::cancelling;
            else if (value == "positive") out.run.chi_sign = response::ChiDPrimeSign::positive;
            else throw ConfigError("chi_sign must be cancelling or positive, got: " + value);
        } else if (key == "thermal") out.run.thermal = parse_on_off(value, key);
        else throw ConfigError("unknown key: " + key);
    }

    try {
        PhysicalParams params = make_params(input);
        // Re-apply matching when overrides land on a matched preset, so the
        // preset keeps its meaning.
        if (matched_preset && params_overridden && !is_cqnc_matched(params))
            params = apply_cqnc_matching(params).params;
        out.params = params;
    } catch (const std::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    out.run.validate();
    return out;
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

}  // namespace cqnc
