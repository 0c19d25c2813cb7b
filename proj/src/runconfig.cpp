#include "runconfig.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ghartree {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw ConfigError("trailing characters in value for " + key);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse numeric value for key '" + key + "': " + value);
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("key '" + key + "' expects an integer, got " + value);
    return i;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string RunConfig::canonical_text() const {
    std::map<std::string, std::string> kv;
    kv["N"] = std::to_string(params.dimension);
    kv["p"] = fmt(params.power);
    kv["b"] = fmt(params.potential_exponent);
    kv["n"] = std::to_string(grid_n);
    kv["L"] = fmt(grid_L);
    kv["beta"] = fmt(beta);
    kv["gamma"] = fmt(gamma);
    kv["dt0"] = fmt(evolve.dt0);
    kv["t_end"] = fmt(evolve.t_end);
    kv["dt_floor"] = fmt(evolve.dt_floor);
    kv["phase_cap"] = fmt(evolve.phase_cap);
    kv["blowup_gradient_factor"] = fmt(evolve.blowup_gradient_factor);
    kv["record_stride"] = std::to_string(evolve.record_stride);
    kv["conservation_abort"] = fmt(evolve.conservation_abort);
    kv["boundary_abort"] = fmt(evolve.boundary_abort);
    kv["tol"] = fmt(petviashvili.tol);
    kv["max_iter"] = std::to_string(petviashvili.max_iter);
    kv["rule"] = rule == SingularRule::BallAverage ? "ball" : "corrected";
    kv["beta_min"] = fmt(sweep_beta_min);
    kv["beta_max"] = fmt(sweep_beta_max);
    kv["beta_steps"] = std::to_string(sweep_steps);
    kv["finite_variance"] = finite_variance ? "1" : "0";
    kv["radial"] = radial ? "1" : "0";
    std::ostringstream os;
    for (const auto& [k, v] : kv)
        os << k << '=' << v << '\n';
    return os.str();
}

RunConfig parse_config(const std::vector<std::string>& entries) {
    RunConfig cfg;
    for (const std::string& entry : entries) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key=value, got '" + entry + "'");
        const std::string key = entry.substr(0, eq);
        const std::string value = entry.substr(eq + 1);
        if (key == "N")
            cfg.params.dimension = parse_int(key, value);
        else if (key == "p")
            cfg.params.power = parse_double(key, value);
        else if (key == "b")
            cfg.params.potential_exponent = parse_double(key, value);
        else if (key == "n")
            cfg.grid_n = parse_int(key, value);
        else if (key == "L")
            cfg.grid_L = parse_double(key, value);
        else if (key == "beta")
            cfg.beta = parse_double(key, value);
        else if (key == "gamma")
            cfg.gamma = parse_double(key, value);
        else if (key == "dt0")
            cfg.evolve.dt0 = parse_double(key, value);
        else if (key == "t_end")
            cfg.evolve.t_end = parse_double(key, value);
        else if (key == "dt_floor")
            cfg.evolve.dt_floor = parse_double(key, value);
        else if (key == "phase_cap")
            cfg.evolve.phase_cap = parse_double(key, value);
        else if (key == "blowup_gradient_factor")
            cfg.evolve.blowup_gradient_factor = parse_double(key, value);
        else if (key == "record_stride")
            cfg.evolve.record_stride = parse_int(key, value);
        else if (key == "conservation_abort")
            cfg.evolve.conservation_abort = parse_double(key, value);
        else if (key == "boundary_abort")
            cfg.evolve.boundary_abort = parse_double(key, value);
        else if (key == "tol")
            cfg.petviashvili.tol = parse_double(key, value);
        else if (key == "max_iter")
            cfg.petviashvili.max_iter = parse_int(key, value);
        else if (key == "rule") {
            if (value == "ball")
                cfg.rule = SingularRule::BallAverage;
            else if (value == "corrected")
                cfg.rule = SingularRule::LatticeCorrected;
            else
                throw ConfigError("rule must be 'ball' or 'corrected', got " + value);
        } else if (key == "beta_min")
            cfg.sweep_beta_min = parse_double(key, value);
        else if (key == "beta_max")
            cfg.sweep_beta_max = parse_double(key, value);
        else if (key == "beta_steps")
            cfg.sweep_steps = parse_int(key, value);
        else if (key == "finite_variance")
            cfg.finite_variance = parse_int(key, value) != 0;
        else if (key == "radial")
            cfg.radial = parse_int(key, value) != 0;
        else
            throw ConfigError("unknown config key '" + key + "'");
    }
    return cfg;
}

std::vector<std::string> read_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open config file: " + path);
    std::vector<std::string> entries;
    std::string line;
    while (std::getline(is, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos)
            continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        entries.push_back(line.substr(begin, end - begin + 1));
    }
    return entries;
}

} // namespace ghartree
