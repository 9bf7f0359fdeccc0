#pragma once

#include <map>
#include <string>

#include "ranktwo/systems.hpp"

namespace ranktwo::integrate {

enum class Method { rk4, adaptive };
enum class Termination { reached_t_end, left_domain, step_underflow };

std::string_view to_string(Termination t);
std::string_view to_string(Method m);

struct IntegratorConfig {
    Method method = Method::rk4;
    double dt = 1e-3;       // fixed step (rk4)
    double rtol = 1e-10;    // adaptive
    double atol = 1e-12;
    double dt_min = 1e-12;
    double dt_max = 0.1;
    double t_end = 10.0;
    bool backward = false;  // integrate the time-reversed flow

    void validate() const;
};

/// Named per-step observable evaluated at accepted states.
struct Monitor {
    std::string name;
    std::function<double(std::span<const double>)> fn;
};

struct Trajectory {
    std::vector<double> times;                        // strictly increasing
    std::vector<Point> states;
    std::vector<std::string> monitor_names;
    std::vector<std::vector<double>> monitor_values;  // [monitor][step]
    Termination termination = Termination::reached_t_end;
};

/// Integrate the system's vector field from x0. Monitors are sampled at
/// every accepted step (including the initial state). If a step cannot
/// stay inside the domain even after bisecting down to dt_min, the
/// trajectory stops early with termination = left_domain.
Trajectory integrate(const systems::SystemSpec& spec, std::span<const double> x0,
                     const IntegratorConfig& cfg, const std::vector<Monitor>& monitors = {});

struct DriftStats {
    double initial = 0.0;
    double max_abs_drift = 0.0;
    double max_rel_drift = 0.0;  // denominator max(1, |initial|)
};

/// Per-monitor drift from the initial value.
std::map<std::string, DriftStats> monitor_report(const Trajectory& traj);

/// The standard monitor set of a system: energy; phi for dim-5 variants;
/// the implicit Casimirs c1, c2 (base point = x0's first coordinate) for
/// the disk, sphere and surface ball; j and k for the sphere; the three
/// closed-form Casimirs for the cylinder.
std::vector<Monitor> standard_monitors(const systems::SystemSpec& spec,
                                       std::span<const double> x0);

/// Monitor of the Hamiltonianity defect |vf - sharp(Lambda, dE)|_inf
/// normalized by (1 + |vf|_inf).
Monitor hamiltonian_residual_monitor(const systems::SystemSpec& spec);

}  // namespace ranktwo::integrate
