#include <algorithm>

#include "cli_types.hpp"
#include "ranktwo/linflow.hpp"
#include "ranktwo/multivec.hpp"
#include "ranktwo/rng.hpp"
#include "ranktwo/version.hpp"

namespace rtcli {

namespace itg = ranktwo::integrate;
namespace sys = ranktwo::systems;
namespace vfy = ranktwo::verify;

namespace {

json drift_json(const std::map<std::string, itg::DriftStats>& rep) {
    json out = json::object();
    for (const auto& [name, st] : rep) {
        out[name] = {{"initial", st.initial},
                     {"max_abs_drift", st.max_abs_drift},
                     {"max_rel_drift", st.max_rel_drift}};
    }
    return out;
}

std::vector<itg::Monitor> select_monitors(const sys::SystemSpec& spec,
                                          const ranktwo::Point& x0,
                                          const std::optional<std::vector<std::string>>& wanted) {
    std::vector<itg::Monitor> all = itg::standard_monitors(spec, x0);
    all.push_back(itg::hamiltonian_residual_monitor(spec));
    if (!wanted) {
        all.pop_back();  // the residual monitor is opt-in
        return all;
    }
    std::vector<itg::Monitor> out;
    for (const auto& name : *wanted) {
        auto it = std::find_if(all.begin(), all.end(),
                               [&name](const itg::Monitor& m) { return m.name == name; });
        if (it == all.end())
            throw ranktwo::ConfigError("unknown monitor '" + name + "' for this system");
        out.push_back(*it);
    }
    return out;
}

json check_json(const vfy::Check& c) {
    return {{"name", c.name},
            {"samples", c.samples},
            {"max_residual", c.max_residual},
            {"tolerance", c.tolerance},
            {"pass", c.pass}};
}

}  // namespace

int run_simulate(const SimulateConfig& cfg, const std::filesystem::path& outdir) {
    const auto spec = sys::make_system(cfg.common.system, cfg.common.params, cfg.common.variant);
    const auto monitors = select_monitors(spec, cfg.initial_state, cfg.monitors);
    const auto traj = itg::integrate(spec, cfg.initial_state, cfg.integrator, monitors);

    std::string csv = "t";
    for (const auto& c : spec.coords) csv += "," + c;
    for (const auto& m : traj.monitor_names) csv += "," + m;
    csv += '\n';
    std::vector<double> row;
    for (size_t k = 0; k < traj.times.size(); ++k) {
        row.clear();
        row.push_back(traj.times[k]);
        row.insert(row.end(), traj.states[k].begin(), traj.states[k].end());
        for (size_t m = 0; m < traj.monitor_values.size(); ++m)
            row.push_back(traj.monitor_values[m][k]);
        csv += csv_row(row);
    }
    atomic_write(outdir / cfg.trajectory_file, csv);

    const bool partial = traj.termination != itg::Termination::reached_t_end;
    json summary = {{"tool_version", ranktwo::kVersion},
                    {"system", cfg.common.system},
                    {"variant", std::string(sys::to_string(cfg.common.variant))},
                    {"termination", std::string(itg::to_string(traj.termination))},
                    {"partial", partial},
                    {"steps", traj.times.size()},
                    {"t_final", traj.times.back()}};
    summary["monitors"] = drift_json(itg::monitor_report(traj));
    summary["generated_at"] = timestamp_utc();
    atomic_write(outdir / cfg.summary_file, summary.dump(2) + "\n");

    return partial ? kExitRuntimeError : kExitOk;
}

int run_verify(const VerifyConfig& cfg, const std::filesystem::path& outdir) {
    std::vector<vfy::Check> checks;
    if (cfg.system == "heisenberg") {
        checks = vfy::heisenberg_checks(cfg.options);
    } else if (cfg.system == "all") {
        for (const auto& [name, params] : cfg.params) {
            auto part = vfy::system_checks(name, params, cfg.options);
            checks.insert(checks.end(), part.begin(), part.end());
        }
    } else {
        checks = vfy::system_checks(cfg.system, cfg.params.at(cfg.system), cfg.options);
    }

    const bool ok = vfy::all_pass(checks);
    json report = {{"tool_version", ranktwo::kVersion},
                   {"overall_pass", ok},
                   {"seed", cfg.options.seed},
                   {"samples", cfg.options.samples},
                   {"config", cfg.echo}};
    json arr = json::array();
    for (const auto& c : checks) arr.push_back(check_json(c));
    report["checks"] = arr;
    report["generated_at"] = timestamp_utc();
    atomic_write(outdir / cfg.report_file, report.dump(2) + "\n");

    return ok ? kExitOk : kExitVerificationFailure;
}

int run_casimir(const CasimirConfig& cfg, const std::filesystem::path& outdir) {
    const auto spec = sys::make_system(cfg.common.system, cfg.common.params, cfg.common.variant);
    const auto traj = itg::integrate(spec, cfg.initial_state, cfg.integrator, {});

    const bool is_cylinder = cfg.common.system == "cylinder";
    const bool is_sphere = cfg.common.system == "routh_sphere";

    std::string csv = is_cylinder ? "t,c1,c2,c3" : (is_sphere ? "t,c1,c2,jellet_j,jellet_k" : "t,c1,c2");
    csv += '\n';

    if (is_cylinder) {
        const auto& p = std::get<sys::CylinderParams>(cfg.common.params);
        for (size_t k = 0; k < traj.times.size(); ++k) {
            const auto c = sys::cylinder_casimirs(p, traj.states[k]);
            csv += csv_row({traj.times[k], c[0], c[1], c[2]});
        }
    } else {
        const auto curve = sys::coefficient_curve(spec);
        const double base = cfg.base_x1.value_or(cfg.initial_state[0]);
        for (size_t k = 0; k < traj.times.size(); ++k) {
            const auto& s = traj.states[k];
            const auto c = ranktwo::linflow::casimir_values(curve, base, {s[0], s[2], s[3]});
            if (is_sphere) {
                const auto& p = std::get<sys::RouthSphereParams>(cfg.common.params);
                const auto [j, kk] = sys::jellet_integrals(p, s);
                csv += csv_row({traj.times[k], c[0], c[1], j, kk});
            } else {
                csv += csv_row({traj.times[k], c[0], c[1]});
            }
        }
    }
    atomic_write(outdir / cfg.casimir_file, csv);
    return traj.termination == itg::Termination::reached_t_end ? kExitOk : kExitRuntimeError;
}

int run_rank_scan(const RankScanConfig& cfg, const std::filesystem::path& outdir) {
    const auto spec = sys::make_system(cfg.common.system, cfg.common.params, cfg.common.variant);
    const auto biv = sys::build_bivector(spec);

    ranktwo::SplitMix64 rng(cfg.common.seed);
    std::vector<ranktwo::Point> pts;
    if (cfg.ranges) {
        if (static_cast<int>(cfg.ranges->size()) != spec.dim)
            throw ranktwo::ConfigError("'ranges' must have one [lo, hi] pair per coordinate");
        for (long long k = 0; k < cfg.samples; ++k) {
            ranktwo::Point p;
            for (const auto& r : *cfg.ranges) p.push_back(rng.uniform(r.first, r.second));
            pts.push_back(std::move(p));
        }
    } else {
        pts = vfy::sample_box(spec, cfg.samples, rng);
    }

    bool ok = true;
    json samples = json::array();
    for (const auto& p : pts) {
        const int r = ranktwo::rank_at(biv, p);
        if (r != 0 && r != 2) ok = false;
        samples.push_back({{"point", p}, {"rank", r}});
    }

    json fixtures = json::array();
    for (const auto& p : vfy::singular_fixtures(cfg.common.system)) {
        if (static_cast<int>(p.size()) != spec.dim) continue;
        const int r = ranktwo::rank_at(biv, p);
        const double comp = biv.matrix(p).cwiseAbs().maxCoeff();
        if (r != 0) ok = false;
        fixtures.push_back({{"point", p}, {"rank", r}, {"max_component", comp}});
    }

    json report = {{"tool_version", ranktwo::kVersion},
                   {"system", cfg.common.system},
                   {"variant", std::string(sys::to_string(cfg.common.variant))},
                   {"seed", cfg.common.seed},
                   {"rank_values_ok", ok},
                   {"samples", samples},
                   {"singular_fixtures", fixtures}};
    report["generated_at"] = timestamp_utc();
    atomic_write(outdir / cfg.ranks_file, report.dump(2) + "\n");
    return ok ? kExitOk : kExitVerificationFailure;
}

}  // namespace rtcli
