#include <fstream>
#include <set>

#include "cli_types.hpp"

namespace rtcli {

using ranktwo::ConfigError;
using namespace ranktwo::systems;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key))
            throw ConfigError("unknown key '" + where + key + "'");
    }
}

const json& require_key(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError("missing required key '" + where + key + "'");
    return *it;
}

double require_number(const json& j, const std::string& key, const std::string& where) {
    const json& v = require_key(j, key, where);
    if (!v.is_number()) throw ConfigError("key '" + where + key + "' must be a number");
    return v.get<double>();
}

double optional_number(const json& j, const std::string& key, double fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) throw ConfigError("key '" + key + "' must be a number");
    return it->get<double>();
}

std::string require_string(const json& j, const std::string& key, const std::string& where) {
    const json& v = require_key(j, key, where);
    if (!v.is_string()) throw ConfigError("key '" + where + key + "' must be a string");
    return v.get<std::string>();
}

Profile parse_profile(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError("'" + where + "profile' must be an object");
    const std::string type = require_string(j, "type", where + "profile.");
    if (type == "paraboloid") {
        reject_unknown_keys(j, {"type", "c"}, where + "profile.");
        return paraboloid(require_number(j, "c", where + "profile."));
    }
    if (type == "even_quartic") {
        reject_unknown_keys(j, {"type", "c2", "c4"}, where + "profile.");
        return even_quartic(require_number(j, "c2", where + "profile."),
                            require_number(j, "c4", where + "profile."));
    }
    if (type == "cosh") {
        reject_unknown_keys(j, {"type"}, where + "profile.");
        return cosh_profile();
    }
    throw ConfigError("unknown profile type '" + type + "'");
}

Params parse_params(const std::string& system, const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError("'" + where + "' must be an object");
    const std::string w = where + ".";
    if (system == "disk") {
        reject_unknown_keys(j, {"m", "r", "g"}, w);
        DiskParams p;
        p.m = require_number(j, "m", w);
        p.r = require_number(j, "r", w);
        p.g = require_number(j, "g", w);
        return p;
    }
    if (system == "routh_sphere") {
        reject_unknown_keys(j, {"m", "r", "g", "offset_a", "I1", "I3"}, w);
        RouthSphereParams p;
        p.m = require_number(j, "m", w);
        p.r = require_number(j, "r", w);
        p.g = require_number(j, "g", w);
        p.offset_a = require_number(j, "offset_a", w);
        p.I1 = require_number(j, "I1", w);
        p.I3 = require_number(j, "I3", w);
        return p;
    }
    if (system == "surface_ball") {
        reject_unknown_keys(j, {"m", "r", "g", "M", "profile"}, w);
        SurfaceBallParams p;
        p.m = require_number(j, "m", w);
        p.r = require_number(j, "r", w);
        p.g = require_number(j, "g", w);
        p.M = require_number(j, "M", w);
        p.profile = parse_profile(require_key(j, "profile", w), w);
        return p;
    }
    if (system == "cylinder") {
        reject_unknown_keys(j, {"m", "r", "g", "M", "rho"}, w);
        CylinderParams p;
        p.m = require_number(j, "m", w);
        p.r = require_number(j, "r", w);
        p.g = require_number(j, "g", w);
        p.M = require_number(j, "M", w);
        p.rho = require_number(j, "rho", w);
        return p;
    }
    throw ConfigError("unknown system '" + system + "'");
}

Variant parse_variant(const json& j, const std::string& system) {
    std::string v = "reduced4";
    if (auto it = j.find("variant"); it != j.end()) {
        if (!it->is_string()) throw ConfigError("key 'variant' must be a string");
        v = it->get<std::string>();
    }
    if (v == "reduced4") return Variant::reduced4;
    if (v == "extended5") {
        if (system == "cylinder")
            throw ConfigError("the cylinder admits only the reduced4 variant");
        return Variant::extended5;
    }
    throw ConfigError("unknown variant '" + v + "'");
}

CommonConfig parse_common(const json& j) {
    CommonConfig c;
    c.system = require_string(j, "system", "");
    c.variant = parse_variant(j, c.system);
    c.params = parse_params(c.system, require_key(j, "params", ""), "params");
    if (auto it = j.find("seed"); it != j.end()) {
        if (!it->is_number_unsigned()) throw ConfigError("key 'seed' must be a nonnegative integer");
        c.seed = it->get<std::uint64_t>();
    }
    return c;
}

ranktwo::integrate::IntegratorConfig parse_integrator(const json& j) {
    ranktwo::integrate::IntegratorConfig cfg;
    if (!j.is_object()) throw ConfigError("'integrator' must be an object");
    reject_unknown_keys(j, {"method", "dt", "t_end", "rtol", "atol", "dt_min", "dt_max"},
                        "integrator.");
    if (auto it = j.find("method"); it != j.end()) {
        const std::string m = it->get<std::string>();
        if (m == "rk4")
            cfg.method = ranktwo::integrate::Method::rk4;
        else if (m == "adaptive")
            cfg.method = ranktwo::integrate::Method::adaptive;
        else
            throw ConfigError("unknown integrator method '" + m + "'");
    }
    cfg.dt = optional_number(j, "dt", cfg.dt);
    cfg.t_end = optional_number(j, "t_end", cfg.t_end);
    cfg.rtol = optional_number(j, "rtol", cfg.rtol);
    cfg.atol = optional_number(j, "atol", cfg.atol);
    cfg.dt_min = optional_number(j, "dt_min", cfg.dt_min);
    cfg.dt_max = optional_number(j, "dt_max", cfg.dt_max);
    return cfg;
}

ranktwo::Point parse_state(const json& j, int dim) {
    if (!j.is_array()) throw ConfigError("'initial_state' must be an array of numbers");
    if (static_cast<int>(j.size()) != dim)
        throw ConfigError("'initial_state' must have " + std::to_string(dim) +
                          " entries for this system/variant");
    ranktwo::Point p;
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError("'initial_state' entries must be numbers");
        p.push_back(v.get<double>());
    }
    return p;
}

std::string output_name(const json& j, const std::string& key, const std::string& fallback) {
    auto it = j.find("output");
    if (it == j.end()) return fallback;
    if (!it->is_object()) throw ConfigError("'output' must be an object");
    auto f = it->find(key);
    if (f == it->end()) return fallback;
    if (!f->is_string()) throw ConfigError("'output." + key + "' must be a string");
    return f->get<std::string>();
}

Params default_params(const std::string& system) {
    if (system == "disk") return DiskParams{};
    if (system == "routh_sphere") return RouthSphereParams{};
    if (system == "surface_ball") return SurfaceBallParams{};
    if (system == "cylinder") return CylinderParams{};
    throw ConfigError("unknown system '" + system + "'");
}

}  // namespace

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    return j;
}

SimulateConfig parse_simulate(const json& j) {
    reject_unknown_keys(
        j, {"system", "variant", "params", "seed", "initial_state", "integrator", "monitors",
            "output"},
        "");
    SimulateConfig cfg;
    cfg.common = parse_common(j);
    const auto spec =
        make_system(cfg.common.system, cfg.common.params, cfg.common.variant);
    cfg.initial_state = parse_state(require_key(j, "initial_state", ""), spec.dim);
    if (auto it = j.find("integrator"); it != j.end()) cfg.integrator = parse_integrator(*it);
    if (auto it = j.find("monitors"); it != j.end()) {
        if (!it->is_array()) throw ConfigError("'monitors' must be an array of names");
        std::vector<std::string> names;
        for (const auto& v : *it) names.push_back(v.get<std::string>());
        cfg.monitors = names;
    }
    cfg.trajectory_file = output_name(j, "trajectory", "trajectory.csv");
    cfg.summary_file = output_name(j, "summary", "summary.json");
    return cfg;
}

VerifyConfig parse_verify(const json& j) {
    reject_unknown_keys(j, {"system", "params", "samples", "seed", "tolerances", "mutation",
                            "output"},
                        "");
    VerifyConfig cfg;
    cfg.echo = j;
    cfg.system = require_string(j, "system", "");
    const std::vector<std::string> all = {"disk", "routh_sphere", "surface_ball", "cylinder"};
    if (cfg.system != "all" && cfg.system != "heisenberg" &&
        std::find(all.begin(), all.end(), cfg.system) == all.end())
        throw ConfigError("unknown system '" + cfg.system + "'");

    if (cfg.system == "all") {
        for (const auto& name : all) cfg.params[name] = default_params(name);
        if (auto it = j.find("params"); it != j.end()) {
            if (!it->is_object()) throw ConfigError("'params' must be an object");
            for (const auto& [name, sub] : it->items()) {
                if (std::find(all.begin(), all.end(), name) == all.end())
                    throw ConfigError("unknown system '" + name + "' under 'params'");
                cfg.params[name] = parse_params(name, sub, "params." + name);
            }
        }
    } else if (cfg.system != "heisenberg") {
        if (auto it = j.find("params"); it != j.end())
            cfg.params[cfg.system] = parse_params(cfg.system, *it, "params");
        else
            cfg.params[cfg.system] = default_params(cfg.system);
    }

    if (auto it = j.find("samples"); it != j.end()) {
        if (!it->is_number_integer() || it->get<long long>() <= 0)
            throw ConfigError("'samples' must be a positive integer");
        cfg.options.samples = it->get<long long>();
    }
    if (auto it = j.find("seed"); it != j.end()) cfg.options.seed = it->get<std::uint64_t>();
    if (auto it = j.find("mutation"); it != j.end()) {
        const std::string m = it->get<std::string>();
        if (m != "none" && m != "flip_multiplier_sign")
            throw ConfigError("unknown mutation '" + m + "'");
        cfg.options.mutation = m;
    }
    if (auto it = j.find("tolerances"); it != j.end()) {
        const json& t = *it;
        reject_unknown_keys(t,
                            {"jacobi", "kernel", "hamiltonian", "conservation", "restriction",
                             "frobenius", "singular", "scaling", "compat", "generator", "rank"},
                            "tolerances.");
        cfg.options.tol_jacobi = optional_number(t, "jacobi", cfg.options.tol_jacobi);
        cfg.options.tol_kernel = optional_number(t, "kernel", cfg.options.tol_kernel);
        cfg.options.tol_hamiltonian = optional_number(t, "hamiltonian", cfg.options.tol_hamiltonian);
        cfg.options.tol_conservation =
            optional_number(t, "conservation", cfg.options.tol_conservation);
        cfg.options.tol_restriction = optional_number(t, "restriction", cfg.options.tol_restriction);
        cfg.options.tol_frobenius = optional_number(t, "frobenius", cfg.options.tol_frobenius);
        cfg.options.tol_singular = optional_number(t, "singular", cfg.options.tol_singular);
        cfg.options.tol_scaling = optional_number(t, "scaling", cfg.options.tol_scaling);
        cfg.options.tol_compat = optional_number(t, "compat", cfg.options.tol_compat);
        cfg.options.tol_generator = optional_number(t, "generator", cfg.options.tol_generator);
        cfg.options.rank_tol = optional_number(t, "rank", cfg.options.rank_tol);
    }
    cfg.report_file = output_name(j, "report", "report.json");
    return cfg;
}

CasimirConfig parse_casimir(const json& j) {
    reject_unknown_keys(
        j, {"system", "variant", "params", "seed", "initial_state", "integrator", "base_x1",
            "output"},
        "");
    CasimirConfig cfg;
    cfg.common = parse_common(j);
    const auto spec = make_system(cfg.common.system, cfg.common.params, cfg.common.variant);
    cfg.initial_state = parse_state(require_key(j, "initial_state", ""), spec.dim);
    if (auto it = j.find("integrator"); it != j.end()) cfg.integrator = parse_integrator(*it);
    if (auto it = j.find("base_x1"); it != j.end()) cfg.base_x1 = it->get<double>();
    cfg.casimir_file = output_name(j, "casimirs", "casimirs.csv");
    return cfg;
}

RankScanConfig parse_rank_scan(const json& j) {
    reject_unknown_keys(j, {"system", "variant", "params", "seed", "samples", "ranges", "output"},
                        "");
    RankScanConfig cfg;
    // disk/sphere/surface-ball scans default to the extended bivector, which
    // is the one with the singular-equilibrium fixtures
    json common = j;
    if (!j.contains("variant") && require_string(j, "system", "") != "cylinder")
        common["variant"] = "extended5";
    common.erase("samples");
    common.erase("ranges");
    common.erase("output");
    cfg.common = parse_common(common);
    if (auto it = j.find("samples"); it != j.end()) {
        if (!it->is_number_integer() || it->get<long long>() <= 0)
            throw ConfigError("'samples' must be a positive integer");
        cfg.samples = it->get<long long>();
    }
    if (auto it = j.find("ranges"); it != j.end()) {
        if (!it->is_array()) throw ConfigError("'ranges' must be an array of [lo, hi] pairs");
        std::vector<std::pair<double, double>> ranges;
        for (const auto& r : *it) {
            if (!r.is_array() || r.size() != 2) throw ConfigError("each range must be [lo, hi]");
            ranges.emplace_back(r[0].get<double>(), r[1].get<double>());
        }
        cfg.ranges = ranges;
    }
    cfg.ranks_file = output_name(j, "ranks", "ranks.json");
    return cfg;
}

}  // namespace rtcli
