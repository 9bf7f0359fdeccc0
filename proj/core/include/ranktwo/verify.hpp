#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ranktwo/rng.hpp"
#include "ranktwo/systems.hpp"

namespace ranktwo::verify {

struct Check {
    std::string name;
    long long samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Options {
    long long samples = 1000;
    std::uint64_t seed = 12345;
    double tol_jacobi = 1e-8;
    double tol_kernel = 1e-10;        // relative to 1 + |W(p)|_max
    double tol_hamiltonian = 1e-10;   // relative to 1 + |vf|_inf
    double tol_conservation = 1e-10;  // |vf(E)|, |vf(phi)|
    double tol_restriction = 1e-9;
    double tol_frobenius = 1e-8;
    double tol_singular = 1e-12;      // bivector components at singular equilibria
    double tol_scaling = 1e-14;       // relative, scaling closure
    double tol_compat = 1e-8;         // cylinder pair compatibility
    double tol_generator = 1e-9;      // cylinder generator relations
    double rank_tol = 1e-9;
    std::string mutation = "none";    // "none" | "flip_multiplier_sign"
};

/// Seeded sample points inside the generic interior box of a system.
std::vector<Point> sample_box(const systems::SystemSpec& spec, long long count, SplitMix64& rng);

/// Singular-equilibrium fixtures of the extended systems (disk, sphere:
/// (+-1,0,0,s4,0); surface ball: (0,0,0,p4,0)). Empty for the cylinder.
std::vector<Point> singular_fixtures(std::string_view system_name);

/// The full invariant suite for one system (both variants where defined):
/// Jacobi, scaled Jacobi, kernel, Frobenius, Hamiltonianity, conservation,
/// rank geography, scaling closure, restriction consistency, and the
/// cylinder pencil/compatibility/Casimir checks.
std::vector<Check> system_checks(std::string_view name, const systems::Params& params,
                                 const Options& opt);

/// The deliberate counter-example: the rank-two Heisenberg wedge is not
/// Poisson; its Jacobi check fails with residual 4.
std::vector<Check> heisenberg_checks(const Options& opt);

bool all_pass(const std::vector<Check>& checks);

}  // namespace ranktwo::verify
