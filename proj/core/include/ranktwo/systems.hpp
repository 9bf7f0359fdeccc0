#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "ranktwo/linflow.hpp"
#include "ranktwo/pfaff.hpp"

namespace ranktwo::systems {

/// Homogeneous rolling disk (I1 = m r^2/4, I3 = m r^2/2 built in);
/// lambda = (4/5) g / r.
struct DiskParams {
    double m = 1.0;
    double r = 1.0;
    double g = 9.81;

    double lambda() const { return 0.8 * g / r; }
    void validate() const;
};

/// Sphere with center of mass offset by offset_a from the geometric center
/// along the symmetry axis (0 < offset_a < r), rolling on a plane.
struct RouthSphereParams {
    double m = 1.0;
    double r = 1.0;
    double g = 9.81;
    double offset_a = 0.5;
    double I1 = 0.4;
    double I3 = 0.4;

    double P(double s1) const {
        return I1 * I3 + m * r * r * I1 * (1.0 - s1 * s1) + m * I3 * sq(offset_a + r * s1);
    }
    double T(double s1) const {
        return I1 + m * r * r + m * offset_a * offset_a + 2.0 * m * r * offset_a * s1;
    }
    void validate() const;
};

/// Even profile function of the radial distance rho_hat, with first and
/// second derivatives and the ratio d1(s)/s continued through s = 0.
/// All four evaluations exist for plain doubles and for dual numbers, so
/// fields built from a profile keep exact partials.
struct Profile {
    std::string name;
    std::function<double(double)> f_, d1_, d2_, ratio_;
    std::function<Dual(Dual)> fD_, d1D_, d2D_, ratioD_;

    double value(double s) const { return f_(s); }
    Dual value(Dual s) const { return fD_(s); }
    double d1(double s) const { return d1_(s); }
    Dual d1(Dual s) const { return d1D_(s); }
    double d2(double s) const { return d2_(s); }
    Dual d2(Dual s) const { return d2D_(s); }
    double ratio(double s) const { return ratio_(s); }  // d1(s)/s, with the s->0 limit
    Dual ratio(Dual s) const { return ratioD_(s); }

    bool valid() const { return static_cast<bool>(f_); }
};

Profile paraboloid(double c);
Profile even_quartic(double c2, double c4);
Profile cosh_profile();

/// User profile from value and first/second derivative; the ratio is
/// derived, with d2(0) at the vertex. Must pass the evenness check.
Profile custom_profile(std::string name, std::function<double(double)> f,
                       std::function<double(double)> d1, std::function<double(double)> d2);

/// Deviation of a profile from evenness: |d1(0)| plus max over sample
/// points of |f(s)-f(-s)| and |d1(s)+d1(-s)|, relative to scale.
double evenness_residual(const Profile& p);

/// Homogeneous ball (moment of inertia M about any axis) rolling inside a
/// surface of revolution with the given profile; alpha = (M + m r^2)/r^2.
struct SurfaceBallParams {
    double m = 1.0;
    double r = 0.25;
    double g = 9.81;
    double M = 0.025;
    Profile profile = paraboloid(0.5);

    double alpha() const { return (M + m * r * r) / (r * r); }
    void validate() const;
};

/// Ball rolling inside a vertical cylinder of radius rho (> r).
struct CylinderParams {
    double m = 1.0;
    double r = 0.25;
    double g = 9.81;
    double M = 0.025;
    double rho = 1.0;

    double alpha() const { return (M + m * r * r) / (r * r); }
    double nu1(double s4) const { return r * s4 / rho; }
    double nu2(double s4) const { return M * s4 / (alpha() * r * rho); }
    double sigma_g() const { return m * g / (alpha() * r); }
    void validate() const;
};

using Params = std::variant<DiskParams, RouthSphereParams, SurfaceBallParams, CylinderParams>;

enum class Variant { reduced4, extended5 };

std::string_view to_string(Variant v);

/// One reduced system, ready for integration and verification: vector
/// field, energy, Pfaffian data, the specific multiplier that makes the
/// system Hamiltonian, and the domain guard of the declared (extended)
/// domain.
struct SystemSpec {
    std::string name;
    Variant variant = Variant::reduced4;
    int dim = 4;
    std::vector<std::string> coords;
    std::function<bool(std::span<const double>)> domain_guard;
    VectorField vf;
    ScalarField energy;
    pfaff::PfaffianSpec pfaffian;
    ScalarField multiplier;               // Lambda12 for dim 4, f for dim 5
    std::optional<ScalarField> phi;       // variety function, dim-5 variants
    Params params;
};

SystemSpec make_disk(const DiskParams& p, Variant variant);
SystemSpec make_routh_sphere(const RouthSphereParams& p, Variant variant);
SystemSpec make_surface_ball(const SurfaceBallParams& p, Variant variant);
SystemSpec make_cylinder(const CylinderParams& p);  // reduced4 only

/// Dispatcher on system name: "disk", "routh_sphere", "surface_ball",
/// "cylinder". The cylinder admits only reduced4.
SystemSpec make_system(std::string_view name, const Params& params, Variant variant);

/// True iff p lies in the system's declared extended domain (reduced4
/// variants require the strict interior).
bool domain_guard(const SystemSpec& spec, std::span<const double> p);

/// Max-norm of the vector field; zero identifies equilibria.
double equilibrium_residual(const SystemSpec& spec, std::span<const double> p);

/// Jellet's integral j = I1 r s3 + I3 (a + r s1) s4 and k = s4 sqrt(P(s1));
/// p may be 4- or 5-dimensional (uses coordinates 1, 3, 4).
std::pair<double, double> jellet_integrals(const RouthSphereParams& p,
                                           std::span<const double> x);

/// The bivector the system's multiplier selects: build_r4 for dim 4,
/// build_r5 for dim 5.
BivectorField build_bivector(const SystemSpec& spec);

/// Coefficient curve of the system's non-autonomous linear subsystem
/// d/dx1 (x3, x4)^T = A(x1)(x3, x4)^T, with its validity interval.
linflow::CoefficientCurve coefficient_curve(const SystemSpec& spec);

/// Fifth coordinate that places a dim-4 state on the variety of the
/// corresponding extended system (sigma5 or p5).
double variety_fifth_coordinate(const SystemSpec& spec, std::span<const double> x4);

// --- cylinder-specific closed forms ------------------------------------

/// Closed-form flow of the reduced cylinder system; handles both the
/// oscillatory branch (s4 != 0) and the falling branch (|s4| < 1e-14).
Point cylinder_analytic(const CylinderParams& p, std::span<const double> x0, double t);

struct CylinderFrame {
    double omega1 = 0.0;
    double omega2 = 0.0;
    double omega3 = 0.0;
    double theta = 0.0;
    double z = 0.0;
};

/// Reconstruction of the unreduced motion from the reduced flow:
/// omega1 = s2 sin(theta) - s3 cos(theta), omega2 = -s2 cos(theta) - s3 sin(theta),
/// omega3 = s4, theta(t) = theta0 - nu1 t, z = s1(t).
CylinderFrame cylinder_reconstruct(const CylinderParams& p, std::span<const double> x0,
                                   double theta0, double t);

/// Energy of the unreduced cylinder motion at a frame.
double cylinder_frame_energy(const CylinderParams& p, const CylinderFrame& f);

/// The two compatible generators. Lambda1 annihilates {dc1, dc2} and
/// Lambda2 annihilates {dc1, dc3}; both send dE to the reduced vector
/// field under the sharp map.
BivectorField cylinder_lambda1(const CylinderParams& p);
BivectorField cylinder_lambda2(const CylinderParams& p);

/// Affine pencil (1 - lambda) Lambda1 + lambda Lambda2.
BivectorField cylinder_pencil(const CylinderParams& p, double lambda);

/// Closed-form Casimirs: c1 = s4, c2 = s3 - (s4/rho) s1,
/// c3 = (r s4/rho) s2^2 + (M s4/(alpha r rho)) s3^2 + (2 m g/(alpha r)) s3.
std::array<double, 3> cylinder_casimirs(const CylinderParams& p, std::span<const double> x);

/// The same Casimirs as smooth fields (for kernel checks).
std::array<ScalarField, 3> cylinder_casimir_fields(const CylinderParams& p);

}  // namespace ranktwo::systems
