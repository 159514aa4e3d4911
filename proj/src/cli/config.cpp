#include "subdiff/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "subdiff/analytics.hpp"
#include "subdiff/error.hpp"

namespace subdiff::cli {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(std::string_view s, const std::string& field, int line) {
    const std::string t = trim(s);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size()) throw ConfigError("not a number: '" + t + "'", field, line);
    return v;
}

template <class Int>
Int parse_int(std::string_view s, const std::string& field, int line) {
    const std::string t = trim(s);
    Int v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size()) throw ConfigError("not an integer: '" + t + "'", field, line);
    return v;
}

bool parse_bool(std::string_view s, const std::string& field, int line) {
    const std::string t = trim(s);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError("not a boolean: '" + t + "'", field, line);
}

std::vector<FitWindowSpec> parse_windows(std::string_view s, const std::string& field, int line) {
    std::vector<FitWindowSpec> out;
    std::string item;
    std::istringstream in{std::string(s)};
    while (std::getline(in, item, ',')) {
        if (trim(item).empty()) continue;
        out.push_back(parse_fit_window(item, field, line));
    }
    return out;
}

std::string windows_to_string(const std::vector<FitWindowSpec>& ws) {
    std::string s;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (i) s += ", ";
        s += fmt(ws[i].lo) + ":" + fmt(ws[i].hi);
    }
    return s;
}

// Section of each key.
const char* section_of(const std::string& key) {
    static const std::pair<const char*, const char*> table[] = {
        {"family", "model"}, {"alpha", "model"},   {"lambda", "model"},  {"c", "model"},     {"a", "model"},
        {"tmin", "grid"},    {"tmax", "grid"},     {"ngrid", "grid"},    {"dtau", "grid"},   {"n", "run"},
        {"seed", "run"},     {"workers", "run"},   {"out", "run"},       {"mode", "msd"},    {"fit_window", "msd"},
        {"fit", "msd"},      {"figure", "figures"}};
    for (const auto& [k, sec] : table)
        if (key == k) return sec;
    return nullptr;
}

void set_field(RunConfig& cfg, const std::string& key, const std::string& value, int line) {
    if (key == "family") {
        try {
            cfg.family = dist::parse_family(value);
        } catch (const DomainError&) {
            throw ConfigError("unknown family '" + value + "' (stable, ts, gamma)", key, line);
        }
    } else if (key == "alpha") {
        cfg.alpha = parse_double(value, key, line);
    } else if (key == "lambda") {
        cfg.lambda = parse_double(value, key, line);
    } else if (key == "c") {
        cfg.c = parse_double(value, key, line);
    } else if (key == "a") {
        cfg.a = parse_double(value, key, line);
    } else if (key == "tmin") {
        cfg.t_min = parse_double(value, key, line);
    } else if (key == "tmax") {
        cfg.t_max = parse_double(value, key, line);
    } else if (key == "ngrid") {
        cfg.n_grid = parse_int<int>(value, key, line);
    } else if (key == "dtau") {
        cfg.dtau = parse_double(value, key, line);
    } else if (key == "n") {
        cfg.n_trajectories = parse_int<std::uint64_t>(value, key, line);
    } else if (key == "seed") {
        cfg.master_seed = parse_int<std::uint64_t>(value, key, line);
    } else if (key == "workers") {
        cfg.workers = parse_int<unsigned>(value, key, line);
    } else if (key == "out") {
        cfg.output_dir = value;
    } else if (key == "mode") {
        try {
            cfg.mode = parse_msd_mode(value);
        } catch (const DomainError&) {
            throw ConfigError("unknown mode '" + value + "' (ensemble, timeavg, analytic)", key, line);
        }
    } else if (key == "fit_window") {
        cfg.fit_windows = parse_windows(value, key, line);
    } else if (key == "fit") {
        cfg.fit = parse_bool(value, key, line);
    } else if (key == "figure") {
        cfg.figure = parse_int<int>(value, key, line);
    } else {
        throw ConfigError("unknown key", key, line);
    }
}

}  // namespace

const char* to_string(MsdMode m) {
    switch (m) {
        case MsdMode::Ensemble: return "ensemble";
        case MsdMode::TimeAvg: return "timeavg";
        case MsdMode::Analytic: return "analytic";
    }
    return "?";
}

MsdMode parse_msd_mode(std::string_view s) {
    if (s == "ensemble") return MsdMode::Ensemble;
    if (s == "timeavg" || s == "time-avg" || s == "time") return MsdMode::TimeAvg;
    if (s == "analytic") return MsdMode::Analytic;
    throw DomainError("unknown msd mode '" + std::string(s) + "'");
}

FitWindowSpec parse_fit_window(std::string_view s, const std::string& field, int line) {
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) throw ConfigError("expected lo:hi, got '" + trim(s) + "'", field, line);
    FitWindowSpec w{parse_double(s.substr(0, colon), field, line), parse_double(s.substr(colon + 1), field, line)};
    if (!(w.lo > 0.0) || !(w.hi > w.lo)) throw ConfigError("need 0 < lo < hi", field, line);
    return w;
}

dist::SubordinatorSpec RunConfig::spec() const {
    switch (family) {
        case dist::Family::Stable: return dist::SubordinatorSpec::stable(alpha);
        case dist::Family::TemperedStable: return dist::SubordinatorSpec::tempered_stable(alpha, lambda, c.value_or(1.0));
        case dist::Family::Gamma: {
            if (c) return dist::SubordinatorSpec::gamma(a, *c);
            return dist::SubordinatorSpec::gamma(a, analytics::match_gamma_to_ts(alpha, lambda, 1.0, a).c);
        }
    }
    throw DomainError("unknown family");
}

Grid resolve(const RunConfig& cfg, const Grid& d) {
    Grid g{cfg.t_min.value_or(d.t_min), cfg.t_max.value_or(d.t_max), cfg.n_grid.value_or(d.n_grid),
           cfg.dtau.value_or(d.dtau)};
    if (!(g.t_max > g.t_min)) throw ConfigError("tmax must exceed tmin (" + fmt(g.t_min) + ")", "tmax");
    return g;
}

void validate(const RunConfig& cfg) {
    auto positive = [](std::optional<double> v, const char* field) {
        if (v && !(*v > 0.0 && std::isfinite(*v))) throw ConfigError("must be a positive finite number", field);
    };
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("must lie in (0, 1)", "alpha");
    positive(cfg.lambda, "lambda");
    positive(cfg.c, "c");
    positive(cfg.a, "a");
    positive(cfg.t_min, "tmin");
    positive(cfg.t_max, "tmax");
    positive(cfg.dtau, "dtau");
    if (cfg.t_min && cfg.t_max && !(*cfg.t_max > *cfg.t_min)) throw ConfigError("must exceed tmin", "tmax");
    if (cfg.n_grid && *cfg.n_grid < 2) throw ConfigError("must be >= 2", "ngrid");
    if (cfg.n_trajectories && *cfg.n_trajectories < 1) throw ConfigError("must be >= 1", "n");
    if (cfg.workers < 1) throw ConfigError("must be >= 1", "workers");
    if (cfg.figure < 0 || cfg.figure > 4) throw ConfigError("must be 1, 2, 3 or 4 (0 for all)", "figure");
    for (const auto& w : cfg.fit_windows)
        if (!(w.lo > 0.0) || !(w.hi > w.lo)) throw ConfigError("need 0 < lo < hi", "fit_window");
}

std::string to_ini(const RunConfig& cfg) {
    std::ostringstream os;
    os << "[model]\n";
    os << "family = " << dist::to_string(cfg.family) << "\n";
    os << "alpha = " << fmt(cfg.alpha) << "\n";
    os << "lambda = " << fmt(cfg.lambda) << "\n";
    if (cfg.c) os << "c = " << fmt(*cfg.c) << "\n";
    os << "a = " << fmt(cfg.a) << "\n";
    os << "\n[grid]\n";
    if (cfg.t_min) os << "tmin = " << fmt(*cfg.t_min) << "\n";
    if (cfg.t_max) os << "tmax = " << fmt(*cfg.t_max) << "\n";
    if (cfg.n_grid) os << "ngrid = " << *cfg.n_grid << "\n";
    if (cfg.dtau) os << "dtau = " << fmt(*cfg.dtau) << "\n";
    os << "\n[run]\n";
    if (cfg.n_trajectories) os << "n = " << *cfg.n_trajectories << "\n";
    os << "seed = " << cfg.master_seed << "\n";
    os << "workers = " << cfg.workers << "\n";
    if (!cfg.output_dir.empty()) os << "out = " << cfg.output_dir << "\n";
    os << "\n[msd]\n";
    os << "mode = " << to_string(cfg.mode) << "\n";
    if (!cfg.fit_windows.empty()) os << "fit_window = " << windows_to_string(cfg.fit_windows) << "\n";
    os << "fit = " << (cfg.fit ? "true" : "false") << "\n";
    os << "\n[figures]\n";
    os << "figure = " << cfg.figure << "\n";
    return os.str();
}

RunConfig parse_ini(std::string_view text) {
    RunConfig cfg;
    std::map<std::string, int> key_line;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find_first_of("#;");
        if (hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("unterminated section header", s, line);
            section = trim(std::string_view(s).substr(1, s.size() - 2));
            if (section != "model" && section != "grid" && section != "run" && section != "msd" && section != "figures")
                throw ConfigError("unknown section", section, line);
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", s, line);
        const std::string key = trim(std::string_view(s).substr(0, eq));
        const std::string value = trim(std::string_view(s).substr(eq + 1));
        const char* home = section_of(key);
        if (!home) throw ConfigError("unknown key", key, line);
        if (!section.empty() && section != home)
            throw ConfigError(std::string("belongs in section [") + home + "], not [" + section + "]", key, line);
        if (key == "fit_window" && key_line.count(key)) {
            // Repeated fit_window lines accumulate.
            for (const auto& w : parse_windows(value, key, line)) cfg.fit_windows.push_back(w);
        } else {
            set_field(cfg, key, value, line);
        }
        key_line[key] = line;
    }
    try {
        validate(cfg);
    } catch (const ConfigError& e) {
        const auto it = key_line.find(e.field());
        if (it != key_line.end()) throw ConfigError(e.reason(), e.field(), it->second);
        throw;
    }
    return cfg;
}

std::string to_json(const RunConfig& cfg) {
    json j;
    j["model"] = {{"family", dist::to_string(cfg.family)}, {"alpha", cfg.alpha}, {"lambda", cfg.lambda}, {"a", cfg.a}};
    if (cfg.c) j["model"]["c"] = *cfg.c;
    j["grid"] = json::object();
    if (cfg.t_min) j["grid"]["tmin"] = *cfg.t_min;
    if (cfg.t_max) j["grid"]["tmax"] = *cfg.t_max;
    if (cfg.n_grid) j["grid"]["ngrid"] = *cfg.n_grid;
    if (cfg.dtau) j["grid"]["dtau"] = *cfg.dtau;
    j["run"] = {{"seed", cfg.master_seed}, {"workers", cfg.workers}};
    if (cfg.n_trajectories) j["run"]["n"] = *cfg.n_trajectories;
    if (!cfg.output_dir.empty()) j["run"]["out"] = cfg.output_dir;
    j["msd"] = {{"mode", to_string(cfg.mode)}, {"fit", cfg.fit}};
    if (!cfg.fit_windows.empty()) j["msd"]["fit_window"] = windows_to_string(cfg.fit_windows);
    j["figures"] = {{"figure", cfg.figure}};
    return j.dump(2);
}

RunConfig from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(e.what(), "json");
    }
    if (j.contains("config")) j = j["config"];
    if (!j.is_object()) throw ConfigError("expected an object", "json");
    RunConfig cfg;
    for (const auto& [sec, body] : j.items()) {
        if (!body.is_object()) throw ConfigError("expected an object", sec);
        for (const auto& [key, v] : body.items()) {
            const char* home = section_of(key);
            if (!home) throw ConfigError("unknown key", key);
            if (sec != home) throw ConfigError(std::string("belongs in \"") + home + "\", not \"" + sec + "\"", key);
            std::string value;
            if (v.is_string())
                value = v.get<std::string>();
            else if (v.is_number_float())
                value = fmt(v.get<double>());
            else if (v.is_number() || v.is_boolean())
                value = v.dump();
            else
                throw ConfigError("unsupported value type", key);
            set_field(cfg, key, value, 0);
        }
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return from_json(text);
    return parse_ini(text);
}

std::string output_dir(const RunConfig& cfg) {
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("SUBDIFF_OUTPUT_DIR"); env && *env) return env;
    return "subdiff_out";
}

}  // namespace subdiff::cli
