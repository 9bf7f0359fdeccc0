#include "ranktwo/integrate.hpp"

#include <cmath>

#include "ranktwo/ode.hpp"

namespace ranktwo::integrate {

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::reached_t_end: return "reached_t_end";
        case Termination::left_domain: return "left_domain";
        case Termination::step_underflow: return "step_underflow";
    }
    return "unknown";
}

std::string_view to_string(Method m) {
    return m == Method::rk4 ? "rk4" : "adaptive";
}

void IntegratorConfig::validate() const {
    require(dt > 0.0, "integrator: dt must be positive");
    require(t_end > 0.0, "integrator: t_end must be positive");
    require(rtol > 0.0 && atol > 0.0, "integrator: tolerances must be positive");
    require(dt_min > 0.0 && dt_max > dt_min, "integrator: need 0 < dt_min < dt_max");
}

namespace {

struct StepOutcome {
    bool ok = false;
    Point y;
};

/// Attempt a single step of size h; fails when a stage evaluation leaves
/// the domain or the end state violates the guard.
StepOutcome try_step_rk4(const systems::SystemSpec& spec, const ode::Rhs& rhs, double t,
                         const Point& y, double h) {
    StepOutcome out;
    out.y.resize(y.size());
    try {
        ode::rk4_step(rhs, t, y, h, out.y);
    } catch (const DomainError&) {
        return out;
    }
    if (!spec.domain_guard(out.y)) return out;
    for (double v : out.y)
        if (!std::isfinite(v)) return out;
    out.ok = true;
    return out;
}

}  // namespace

Trajectory integrate(const systems::SystemSpec& spec, std::span<const double> x0,
                     const IntegratorConfig& cfg, const std::vector<Monitor>& monitors) {
    cfg.validate();
    require(static_cast<int>(x0.size()) == spec.dim, "integrate: state dimension mismatch");
    if (!spec.domain_guard(x0))
        throw ContractError("integrate: initial state violates the domain guard");

    const double dir = cfg.backward ? -1.0 : 1.0;
    const ode::Rhs rhs = [&spec, dir](double, std::span<const double> y, std::span<double> dydt) {
        spec.vf.eval(y, dydt);
        if (dir < 0.0)
            for (auto& v : dydt) v = -v;
    };

    Trajectory traj;
    traj.monitor_names.reserve(monitors.size());
    for (const auto& m : monitors) traj.monitor_names.push_back(m.name);
    traj.monitor_values.assign(monitors.size(), {});

    Point y(x0.begin(), x0.end());
    double t = 0.0;
    auto record = [&](double tt, const Point& yy) {
        traj.times.push_back(tt);
        traj.states.push_back(yy);
        for (size_t k = 0; k < monitors.size(); ++k)
            traj.monitor_values[k].push_back(monitors[k].fn(yy));
    };
    record(t, y);

    if (cfg.method == Method::rk4) {
        while (t < cfg.t_end) {
            double h = std::min(cfg.dt, cfg.t_end - t);
            StepOutcome step = try_step_rk4(spec, rhs, t, y, h);
            while (!step.ok && h >= cfg.dt_min) {
                h *= 0.5;  // bisect toward the domain boundary
                if (h < cfg.dt_min) break;
                step = try_step_rk4(spec, rhs, t, y, h);
            }
            if (!step.ok) {
                traj.termination = Termination::left_domain;
                return traj;
            }
            t += h;
            y = step.y;
            record(t, y);
        }
        traj.termination = Termination::reached_t_end;
        return traj;
    }

    // Adaptive embedded pair with the same bisection-on-guard policy.
    double h = std::min(cfg.dt_max, cfg.t_end);
    while (t < cfg.t_end) {
        const double h_step = std::min(h, cfg.t_end - t);
        bool stage_ok = true;
        ode::Dp54Step trial;
        try {
            trial = ode::dp54_try_step(rhs, t, y, h_step, cfg.rtol, cfg.atol);
        } catch (const DomainError&) {
            stage_ok = false;
        }
        bool accept = false;
        if (stage_ok && trial.error_norm <= 1.0) {
            accept = spec.domain_guard(trial.y5);
            if (accept)
                for (double v : trial.y5)
                    if (!std::isfinite(v)) accept = false;
        }
        if (accept) {
            t += h_step;
            y = trial.y5;
            record(t, y);
            const double grow =
                trial.error_norm > 0.0 ? 0.9 * std::pow(trial.error_norm, -0.2) : 5.0;
            h = std::min(cfg.dt_max, h_step * std::clamp(grow, 0.2, 5.0));
            continue;
        }
        if (stage_ok && trial.error_norm > 1.0)
            h = h_step * std::clamp(0.9 * std::pow(trial.error_norm, -0.2), 0.1, 0.9);
        else
            h = 0.5 * h_step;  // stage threw or the end state failed the guard
        if (h < cfg.dt_min) {
            traj.termination =
                stage_ok ? Termination::step_underflow : Termination::left_domain;
            return traj;
        }
    }
    traj.termination = Termination::reached_t_end;
    return traj;
}

std::map<std::string, DriftStats> monitor_report(const Trajectory& traj) {
    require(!traj.times.empty(), "monitor_report: empty trajectory");
    std::map<std::string, DriftStats> out;
    for (size_t k = 0; k < traj.monitor_names.size(); ++k) {
        const auto& vals = traj.monitor_values[k];
        DriftStats st;
        st.initial = vals.front();
        for (double v : vals) st.max_abs_drift = std::max(st.max_abs_drift, std::abs(v - st.initial));
        st.max_rel_drift = st.max_abs_drift / std::max(1.0, std::abs(st.initial));
        out[traj.monitor_names[k]] = st;
    }
    return out;
}

std::vector<Monitor> standard_monitors(const systems::SystemSpec& spec,
                                       std::span<const double> x0) {
    require(static_cast<int>(x0.size()) == spec.dim, "standard_monitors: dimension mismatch");
    std::vector<Monitor> out;
    out.push_back({"energy", [E = spec.energy](std::span<const double> x) { return E(x); }});
    if (spec.phi)
        out.push_back({"phi", [phi = *spec.phi](std::span<const double> x) { return phi(x); }});

    if (const auto* cy = std::get_if<systems::CylinderParams>(&spec.params)) {
        const systems::CylinderParams p = *cy;
        const auto cas = systems::cylinder_casimir_fields(p);
        for (int k = 0; k < 3; ++k) {
            out.push_back({"c" + std::to_string(k + 1),
                           [f = cas[static_cast<size_t>(k)]](std::span<const double> x) {
                               return f(x);
                           }});
        }
        return out;
    }

    // Implicit Casimirs from the fundamental matrix, based at the initial x1.
    const auto curve = systems::coefficient_curve(spec);
    const double base = x0[0];
    for (int k = 0; k < 2; ++k) {
        out.push_back({"c" + std::to_string(k + 1), [curve, base, k](std::span<const double> x) {
                           const auto c = linflow::casimir_values(curve, base, {x[0], x[2], x[3]});
                           return c[static_cast<size_t>(k)];
                       }});
    }
    if (const auto* sp = std::get_if<systems::RouthSphereParams>(&spec.params)) {
        const systems::RouthSphereParams p = *sp;
        out.push_back({"jellet_j", [p](std::span<const double> x) {
                           return systems::jellet_integrals(p, x).first;
                       }});
        out.push_back({"jellet_k", [p](std::span<const double> x) {
                           return systems::jellet_integrals(p, x).second;
                       }});
    }
    return out;
}

Monitor hamiltonian_residual_monitor(const systems::SystemSpec& spec) {
    const BivectorField biv = systems::build_bivector(spec);
    return {"hamiltonian_residual",
            [biv, vf = spec.vf, E = spec.energy](std::span<const double> x) {
                const auto lhs = vf(x);
                const auto rhs = pfaff::hamiltonian_vf_at(biv, E, x);
                double num = 0.0, den = 0.0;
                for (size_t i = 0; i < lhs.size(); ++i) {
                    num = std::max(num, std::abs(lhs[i] - rhs[i]));
                    den = std::max(den, std::abs(lhs[i]));
                }
                return num / (1.0 + den);
            }};
}

}  // namespace ranktwo::integrate
