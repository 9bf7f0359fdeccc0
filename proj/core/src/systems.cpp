#include "ranktwo/systems.hpp"

#include <cmath>

namespace ranktwo::systems {

namespace {

std::vector<std::string> sigma_names(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back("sigma" + std::to_string(i));
    return out;
}

std::vector<std::string> p_names(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back("p" + std::to_string(i));
    return out;
}

}  // namespace

void DiskParams::validate() const {
    require(m > 0.0 && r > 0.0 && g > 0.0, "disk: m, r, g must be positive");
}

void RouthSphereParams::validate() const {
    require(m > 0.0 && r > 0.0 && g > 0.0, "routh_sphere: m, r, g must be positive");
    require(0.0 < offset_a && offset_a < r, "routh_sphere: need 0 < offset_a < r");
    require(I1 > 0.0 && I3 > 0.0, "routh_sphere: moments of inertia must be positive");
}

void SurfaceBallParams::validate() const {
    require(m > 0.0 && r > 0.0 && g > 0.0 && M > 0.0, "surface_ball: m, r, g, M must be positive");
    require(profile.valid(), "surface_ball: profile not set");
    const double res = evenness_residual(profile);
    require(res < 1e-10, "surface_ball: profile fails the evenness check (residual " +
                             std::to_string(res) + ")");
}

void CylinderParams::validate() const {
    require(m > 0.0 && g > 0.0 && M > 0.0, "cylinder: m, g, M must be positive");
    require(rho > r && r > 0.0, "cylinder: need rho > r > 0");
}

std::string_view to_string(Variant v) {
    return v == Variant::reduced4 ? "reduced4" : "extended5";
}

// --- profiles -----------------------------------------------------------

namespace {

template <class F, class G, class H, class R>
Profile make_profile(std::string name, F f, G d1, H d2, R ratio) {
    Profile p;
    p.name = std::move(name);
    p.f_ = [f](double s) { return f(s); };
    p.fD_ = [f](Dual s) { return f(s); };
    p.d1_ = [d1](double s) { return d1(s); };
    p.d1D_ = [d1](Dual s) { return d1(s); };
    p.d2_ = [d2](double s) { return d2(s); };
    p.d2D_ = [d2](Dual s) { return d2(s); };
    p.ratio_ = [ratio](double s) { return ratio(s); };
    p.ratioD_ = [ratio](Dual s) { return ratio(s); };
    return p;
}

}  // namespace

Profile paraboloid(double c) {
    return make_profile(
        "paraboloid", [c](auto s) { return c * s * s; }, [c](auto s) { return 2.0 * c * s; },
        [c](auto s) { (void)s; return decltype(s)(2.0 * c); },
        [c](auto s) { (void)s; return decltype(s)(2.0 * c); });
}

Profile even_quartic(double c2, double c4) {
    return make_profile(
        "even_quartic", [c2, c4](auto s) { return c2 * s * s + c4 * s * s * s * s; },
        [c2, c4](auto s) { return 2.0 * c2 * s + 4.0 * c4 * s * s * s; },
        [c2, c4](auto s) { return 2.0 * c2 + 12.0 * c4 * s * s; },
        [c2, c4](auto s) { return 2.0 * c2 + 4.0 * c4 * s * s; });
}

Profile cosh_profile() {
    return make_profile(
        "cosh",
        [](auto s) {
            using std::cosh;
            return cosh(s) - 1.0;
        },
        [](auto s) {
            using std::sinh;
            return sinh(s);
        },
        [](auto s) {
            using std::cosh;
            return cosh(s);
        },
        [](auto s) {
            using std::sinh;
            if (value_of(s) == 0.0) return decltype(s)(1.0);
            return sinh(s) / s;
        });
}

Profile custom_profile(std::string name, std::function<double(double)> f,
                       std::function<double(double)> d1, std::function<double(double)> d2) {
    Profile p;
    p.name = std::move(name);
    p.f_ = f;
    p.d1_ = d1;
    p.d2_ = d2;
    p.ratio_ = [d1, d2](double s) { return s == 0.0 ? d2(0.0) : d1(s) / s; };
    p.fD_ = [f, d1](Dual s) { return Dual{f(s.v), s.d * d1(s.v)}; };
    p.d1D_ = [d1, d2](Dual s) { return Dual{d1(s.v), s.d * d2(s.v)}; };
    p.d2D_ = [d2](Dual s) {
        const double h = 1e-5 * std::max(1.0, std::abs(s.v));
        return Dual{d2(s.v), s.d * (d2(s.v + h) - d2(s.v - h)) / (2.0 * h)};
    };
    p.ratioD_ = [d1, d2](Dual s) {
        if (s.v == 0.0) return Dual{d2(0.0), 0.0};
        return Dual{d1(s.v), s.d * d2(s.v)} / s;
    };
    return p;
}

double evenness_residual(const Profile& p) {
    require(p.valid(), "evenness_residual: profile not set");
    double res = std::abs(p.d1(0.0));
    for (double s : {0.13, 0.4, 0.77, 1.0, 1.6}) {
        const double scale = 1.0 + std::abs(p.value(s));
        res = std::max(res, std::abs(p.value(s) - p.value(-s)) / scale);
        res = std::max(res, std::abs(p.d1(s) + p.d1(-s)) / scale);
    }
    return res;
}

// --- rolling disk -------------------------------------------------------

SystemSpec make_disk(const DiskParams& p, Variant variant) {
    p.validate();
    const double lam = p.lambda();

    SystemSpec spec;
    spec.name = "disk";
    spec.variant = variant;
    spec.dim = variant == Variant::extended5 ? 5 : 4;
    spec.coords = sigma_names(spec.dim);
    spec.params = p;

    spec.pfaffian.h3 = ScalarField::smooth(3, [](auto u) { return -2.0 * u[2]; });
    spec.pfaffian.h4 = ScalarField::smooth(3, [](auto u) {
        return -(2.0 / 3.0) * safe_div(u[1], 1.0 - u[0] * u[0]);
    });
    spec.pfaffian.phi = ScalarField::smooth(5, [](auto x) {
        return x[1] * x[1] + x[2] * x[2] - (1.0 - x[0] * x[0]) * x[4];
    });
    spec.pfaffian.phi_grad = CovectorField(
        5, {ScalarField::smooth(5, [](auto x) { return 2.0 * x[0] * x[4]; }),
            ScalarField::smooth(5, [](auto x) { return 2.0 * x[1]; }),
            ScalarField::smooth(5, [](auto x) { return 2.0 * x[2]; }), ScalarField::zero(5),
            ScalarField::smooth(5, [](auto x) { return -(1.0 - x[0] * x[0]); })});

    if (variant == Variant::extended5) {
        spec.domain_guard = [](std::span<const double> x) {
            const double a1 = std::abs(x[0]);
            if (a1 > 1.0) return false;
            if (a1 == 1.0) return x[1] * x[2] == 0.0;
            return true;
        };
        std::vector<ScalarField> v;
        v.push_back(ScalarField::smooth(5, [](auto x) { return x[1]; }));
        v.push_back(ScalarField::smooth(5, [lam](auto x) {
            const auto one = 1.0 - x[0] * x[0];
            return 1.2 * x[2] * x[3] - x[0] * x[4] + 0.8 * x[0] * safe_div(x[2] * x[2], one) +
                   lam * x[0] * guarded_sqrt(one);
        }));
        v.push_back(ScalarField::smooth(5, [](auto x) { return -2.0 * x[1] * x[3]; }));
        v.push_back(ScalarField::smooth(5, [](auto x) {
            return -(2.0 / 3.0) * safe_div(x[1] * x[2], 1.0 - x[0] * x[0]);
        }));
        v.push_back(ScalarField::smooth(5, [lam](auto x) {
            using T = std::remove_cvref_t<decltype(x[0])>;
            if (value_of(x[1]) == 0.0) return T(0.0);  // singular stratum
            const auto one = 1.0 - x[0] * x[0];
            return 2.0 * x[1] *
                   (safe_div(lam * x[0], guarded_sqrt(one)) +
                    0.8 * x[0] * safe_div(x[2] * x[2], one * one) -
                    0.8 * safe_div(x[2] * x[3], one));
        }));
        spec.vf = VectorField(5, std::move(v));
        spec.energy = ScalarField::smooth(5, [lam](auto x) {
            const auto one = 1.0 - x[0] * x[0];
            return 0.5 * x[4] + 0.6 * x[3] * x[3] - 0.4 * safe_div(x[2] * x[2], one) +
                   lam * guarded_sqrt(one);
        });
        spec.multiplier = ScalarField::constant(5, 1.0);
        spec.phi = spec.pfaffian.phi;
    } else {
        spec.domain_guard = [](std::span<const double> x) { return std::abs(x[0]) < 1.0; };
        std::vector<ScalarField> v;
        v.push_back(ScalarField::smooth(4, [](auto x) { return x[1]; }));
        v.push_back(ScalarField::smooth(4, [lam](auto x) {
            const auto one = 1.0 - x[0] * x[0];
            return 1.2 * x[2] * x[3] - x[0] * safe_div(x[1] * x[1], one) -
                   0.2 * x[0] * safe_div(x[2] * x[2], one) + lam * x[0] * guarded_sqrt(one);
        }));
        v.push_back(ScalarField::smooth(4, [](auto x) { return -2.0 * x[1] * x[3]; }));
        v.push_back(ScalarField::smooth(4, [](auto x) {
            return -(2.0 / 3.0) * safe_div(x[1] * x[2], 1.0 - x[0] * x[0]);
        }));
        spec.vf = VectorField(4, std::move(v));
        spec.energy = ScalarField::smooth(4, [lam](auto x) {
            const auto one = 1.0 - x[0] * x[0];
            return 0.5 * safe_div(x[1] * x[1], one) + 0.1 * safe_div(x[2] * x[2], one) +
                   0.6 * x[3] * x[3] + lam * guarded_sqrt(one);
        });
        spec.multiplier = ScalarField::smooth(4, [](auto x) { return 1.0 - x[0] * x[0]; });
    }
    return spec;
}

// --- Routh's sphere -----------------------------------------------------

namespace {

struct SphereCtx {
    double m, r, g, a, I1, I3;

    template <class T>
    T P(T s1) const {
        return I1 * I3 + m * r * r * I1 * (1.0 - s1 * s1) + m * I3 * sq(a + r * s1);
    }
    template <class T>
    T Tf(T s1) const {
        return I1 + m * r * r + m * a * a + 2.0 * m * r * a * s1;
    }
};

}  // namespace

SystemSpec make_routh_sphere(const RouthSphereParams& p, Variant variant) {
    p.validate();
    const SphereCtx c{p.m, p.r, p.g, p.offset_a, p.I1, p.I3};

    SystemSpec spec;
    spec.name = "routh_sphere";
    spec.variant = variant;
    spec.dim = variant == Variant::extended5 ? 5 : 4;
    spec.coords = sigma_names(spec.dim);
    spec.params = p;

    spec.pfaffian.h3 = ScalarField::smooth(3, [c](auto u) {
        return -c.I3 * (c.I3 + c.m * c.r * c.r + c.m * c.r * c.a * u[0]) *
               safe_div(u[2], c.P(u[0]));
    });
    spec.pfaffian.h4 = ScalarField::smooth(3, [c](auto u) {
        return c.m * c.r * (c.I1 * c.r * u[0] - c.I3 * (c.a + c.r * u[0])) *
               safe_div(u[2], c.P(u[0]));
    });
    spec.pfaffian.phi = ScalarField::smooth(5, [](auto x) {
        return x[1] * x[1] + x[2] * x[2] - (1.0 - x[0] * x[0]) * x[4];
    });
    spec.pfaffian.phi_grad = CovectorField(
        5, {ScalarField::smooth(5, [](auto x) { return 2.0 * x[0] * x[4]; }),
            ScalarField::smooth(5, [](auto x) { return 2.0 * x[1]; }),
            ScalarField::smooth(5, [](auto x) { return 2.0 * x[2]; }), ScalarField::zero(5),
            ScalarField::smooth(5, [](auto x) { return -(1.0 - x[0] * x[0]); })});

    if (variant == Variant::extended5) {
        spec.domain_guard = [](std::span<const double>) { return true; };
        std::vector<ScalarField> v;
        v.push_back(ScalarField::smooth(5, [](auto x) { return x[1]; }));
        v.push_back(ScalarField::smooth(5, [c](auto x) {
            const auto num = (c.I3 + c.m * c.r * c.r + c.m * c.r * c.a * x[0]) * x[2] * x[3] -
                             c.m * c.g * c.a * (1.0 - x[0] * x[0]) -
                             x[4] * (c.m * c.r * c.a +
                                     (c.I1 + c.m * c.a * c.a + c.m * c.r * c.r) * x[0] +
                                     c.m * c.r * c.a * x[0] * x[0]);
            return safe_div(num, c.Tf(x[0]));
        }));
        v.push_back(ScalarField::smooth(5, [c](auto x) {
            return -c.I3 * (c.I3 + c.m * c.r * c.r + c.m * c.r * c.a * x[0]) *
                   safe_div(x[1] * x[3], c.P(x[0]));
        }));
        v.push_back(ScalarField::smooth(5, [c](auto x) {
            return c.m * c.r * (c.I1 * c.r * x[0] - c.I3 * (c.a + c.r * x[0])) *
                   safe_div(x[1] * x[3], c.P(x[0]));
        }));
        v.push_back(ScalarField::smooth(5, [c](auto x) {
            const auto num = -2.0 * c.m * c.r * c.a * x[1] * x[4] - 2.0 * c.m * c.g * c.a * x[1] -
                             2.0 * c.m * c.r * c.r * (c.I3 - c.I1) *
                                 (c.I3 + c.m * c.r * c.r + c.m * c.r * c.a * x[0]) *
                                 safe_div(x[1] * x[2] * x[3], c.P(x[0]));
            return safe_div(num, c.Tf(x[0]));
        }));
        spec.vf = VectorField(5, std::move(v));
        spec.energy = ScalarField::smooth(5, [c](auto x) {
            return 0.5 * (c.Tf(x[0]) * x[4] + (c.I3 + c.m * c.r * c.r) * x[3] * x[3] -
                          c.m * c.r * c.r * sq(x[2] + x[0] * x[3])) +
                   c.m * c.a * (c.g * x[0] - c.r * x[2] * x[3]);
        });
        spec.multiplier = ScalarField::smooth(5, [c](auto x) {
            using T = std::remove_cvref_t<decltype(x[0])>;
            return safe_div(T(1.0), c.Tf(x[0]));
        });
        spec.phi = spec.pfaffian.phi;
    } else {
        spec.domain_guard = [](std::span<const double> x) { return std::abs(x[0]) < 1.0; };
        std::vector<ScalarField> v;
        v.push_back(ScalarField::smooth(4, [](auto x) { return x[1]; }));
        v.push_back(ScalarField::smooth(4, [c](auto x) {
            const auto s5 = safe_div(x[1] * x[1] + x[2] * x[2], 1.0 - x[0] * x[0]);
            const auto num = (c.I3 + c.m * c.r * c.r + c.m * c.r * c.a * x[0]) * x[2] * x[3] -
                             c.m * c.g * c.a * (1.0 - x[0] * x[0]) -
                             s5 * (c.m * c.r * c.a +
                                   (c.I1 + c.m * c.a * c.a + c.m * c.r * c.r) * x[0] +
                                   c.m * c.r * c.a * x[0] * x[0]);
            return safe_div(num, c.Tf(x[0]));
        }));
        v.push_back(ScalarField::smooth(4, [c](auto x) {
            return -c.I3 * (c.I3 + c.m * c.r * c.r + c.m * c.r * c.a * x[0]) *
                   safe_div(x[1] * x[3], c.P(x[0]));
        }));
        v.push_back(ScalarField::smooth(4, [c](auto x) {
            return c.m * c.r * (c.I1 * c.r * x[0] - c.I3 * (c.a + c.r * x[0])) *
                   safe_div(x[1] * x[3], c.P(x[0]));
        }));
        spec.vf = VectorField(4, std::move(v));
        spec.energy = ScalarField::smooth(4, [c](auto x) {
            const auto s5 = safe_div(x[1] * x[1] + x[2] * x[2], 1.0 - x[0] * x[0]);
            return 0.5 * (c.Tf(x[0]) * s5 + (c.I3 + c.m * c.r * c.r) * x[3] * x[3] -
                          c.m * c.r * c.r * sq(x[2] + x[0] * x[3])) +
                   c.m * c.a * (c.g * x[0] - c.r * x[2] * x[3]);
        });
        spec.multiplier = ScalarField::smooth(4, [c](auto x) {
            return safe_div(1.0 - x[0] * x[0], c.Tf(x[0]));
        });
    }
    return spec;
}

// --- ball on a surface of revolution ------------------------------------

namespace {

struct BallCtx {
    double m, r, g, M, alpha;
    Profile prof;

    double kM() const { return M / (alpha * r * r); }
    double kg() const { return m * g / alpha; }
};

}  // namespace

SystemSpec make_surface_ball(const SurfaceBallParams& p, Variant variant) {
    p.validate();
    const BallCtx c{p.m, p.r, p.g, p.M, p.alpha(), p.profile};
    const double al = p.alpha();

    SystemSpec spec;
    spec.name = "surface_ball";
    spec.variant = variant;
    spec.dim = variant == Variant::extended5 ? 5 : 4;
    spec.coords = p_names(spec.dim);
    spec.params = p;

    spec.pfaffian.h3 = ScalarField::smooth(3, [c](auto u) {
        const auto s = guarded_sqrt(2.0 * u[0]);
        const auto D = 1.0 + sq(c.prof.d1(s));
        return c.kM() * u[2] * c.prof.d2(s) / D;
    });
    spec.pfaffian.h4 = ScalarField::smooth(3, [c](auto u) {
        const auto s = guarded_sqrt(2.0 * u[0]);
        const auto D = 1.0 + sq(c.prof.d1(s));
        return -safe_div(u[1] * (c.prof.d2(s) / D - c.prof.ratio(s)), 2.0 * u[0]);
    });
    spec.pfaffian.phi = ScalarField::smooth(5, [](auto x) {
        return x[1] * x[1] + x[2] * x[2] - 4.0 * x[0] * x[4];
    });
    spec.pfaffian.phi_grad = CovectorField(
        5, {ScalarField::smooth(5, [](auto x) { return -4.0 * x[4]; }),
            ScalarField::smooth(5, [](auto x) { return 2.0 * x[1]; }),
            ScalarField::smooth(5, [](auto x) { return 2.0 * x[2]; }), ScalarField::zero(5),
            ScalarField::smooth(5, [](auto x) { return -4.0 * x[0]; })});

    if (variant == Variant::extended5) {
        spec.domain_guard = [](std::span<const double> x) { return x[0] >= 0.0; };
        std::vector<ScalarField> v;
        v.push_back(ScalarField::smooth(5, [](auto x) { return x[1]; }));
        v.push_back(ScalarField::smooth(5, [c](auto x) {
            const auto s = guarded_sqrt(2.0 * x[0]);
            const auto d1 = c.prof.d1(s);
            const auto R = c.prof.ratio(s);
            const auto D = 1.0 + sq(d1);
            return (-c.kM() * x[2] * x[3] * R - c.kg() * s * d1 + 2.0 * x[4] -
                    x[1] * x[1] * R * (c.prof.d2(s) - R)) /
                   D;
        }));
        v.push_back(ScalarField::smooth(5, [c](auto x) {
            const auto s = guarded_sqrt(2.0 * x[0]);
            const auto D = 1.0 + sq(c.prof.d1(s));
            return c.kM() * x[1] * x[3] * c.prof.d2(s) / D;
        }));
        v.push_back(ScalarField::smooth(5, [c](auto x) {
            const auto s = guarded_sqrt(2.0 * x[0]);
            const auto D = 1.0 + sq(c.prof.d1(s));
            return -safe_div(x[1] * x[2] * (c.prof.d2(s) / D - c.prof.ratio(s)), 2.0 * x[0]);
        }));
        v.push_back(ScalarField::smooth(5, [c](auto x) {
            const auto s = guarded_sqrt(2.0 * x[0]);
            const auto R = c.prof.ratio(s);
            const auto D = 1.0 + sq(c.prof.d1(s));
            return x[1] / D *
                   (safe_div((c.kM() * x[2] * x[3] - x[1] * x[1] * R) * (c.prof.d2(s) - R),
                             2.0 * x[0]) -
                    c.kg() * R - 2.0 * x[4] * sq(R));
        }));
        spec.vf = VectorField(5, std::move(v));
        spec.energy = ScalarField::smooth(5, [c, al](auto x) {
            const auto s = guarded_sqrt(2.0 * x[0]);
            const auto R = c.prof.ratio(s);
            return c.M / (2.0 * c.r * c.r) * x[3] * x[3] + al * x[4] +
                   0.5 * al * sq(R) * x[1] * x[1] + c.m * c.g * c.prof.value(s);
        });
        spec.multiplier = ScalarField::smooth(5, [c, al](auto x) {
            const auto s = guarded_sqrt(2.0 * x[0]);
            return 1.0 / (2.0 * al * (1.0 + sq(c.prof.d1(s))));
        });
        spec.phi = spec.pfaffian.phi;
    } else {
        spec.domain_guard = [](std::span<const double> x) { return x[0] > 0.0; };
        std::vector<ScalarField> v;
        v.push_back(ScalarField::smooth(4, [](auto x) { return x[1]; }));
        v.push_back(ScalarField::smooth(4, [c](auto x) {
            const auto s = guarded_sqrt(2.0 * x[0]);
            const auto d1 = c.prof.d1(s);
            const auto R = c.prof.ratio(s);
            const auto D = 1.0 + sq(d1);
            return (-c.kM() * x[2] * x[3] * R - c.kg() * s * d1 +
                    safe_div(x[1] * x[1] + x[2] * x[2], 2.0 * x[0]) -
                    x[1] * x[1] * R * (c.prof.d2(s) - R)) /
                   D;
        }));
        v.push_back(ScalarField::smooth(4, [c](auto x) {
            const auto s = guarded_sqrt(2.0 * x[0]);
            const auto D = 1.0 + sq(c.prof.d1(s));
            return c.kM() * x[1] * x[3] * c.prof.d2(s) / D;
        }));
        v.push_back(ScalarField::smooth(4, [c](auto x) {
            const auto s = guarded_sqrt(2.0 * x[0]);
            const auto D = 1.0 + sq(c.prof.d1(s));
            return -safe_div(x[1] * x[2] * (c.prof.d2(s) / D - c.prof.ratio(s)), 2.0 * x[0]);
        }));
        spec.vf = VectorField(4, std::move(v));
        spec.energy = ScalarField::smooth(4, [c, al](auto x) {
            const auto s = guarded_sqrt(2.0 * x[0]);
            const auto R = c.prof.ratio(s);
            return c.M / (2.0 * c.r * c.r) * x[3] * x[3] +
                   al * safe_div(x[1] * x[1] + x[2] * x[2], 4.0 * x[0]) +
                   0.5 * al * sq(R) * x[1] * x[1] + c.m * c.g * c.prof.value(s);
        });
        spec.multiplier = ScalarField::smooth(4, [c, al](auto x) {
            const auto s = guarded_sqrt(2.0 * x[0]);
            return 2.0 * x[0] / (al * (1.0 + sq(c.prof.d1(s))));
        });
    }
    return spec;
}

// --- ball in a cylinder ---------------------------------------------------

SystemSpec make_cylinder(const CylinderParams& p) {
    p.validate();
    const double al = p.alpha();
    const double m = p.m, r = p.r, g = p.g, M = p.M, rho = p.rho;

    SystemSpec spec;
    spec.name = "cylinder";
    spec.variant = Variant::reduced4;
    spec.dim = 4;
    spec.coords = sigma_names(4);
    spec.params = p;
    spec.domain_guard = [](std::span<const double>) { return true; };

    std::vector<ScalarField> v;
    v.push_back(ScalarField::smooth(4, [r](auto x) { return -r * x[1]; }));
    v.push_back(ScalarField::smooth(4, [M, al, r, rho, m, g](auto x) {
        return M * x[3] * x[2] / (al * r * rho) + m * g / (al * r);
    }));
    v.push_back(ScalarField::smooth(4, [r, rho](auto x) { return -(r / rho) * x[3] * x[1]; }));
    v.push_back(ScalarField::zero(4));
    spec.vf = VectorField(4, std::move(v));

    spec.energy = ScalarField::smooth(4, [m, r, M, g](auto x) {
        return 0.5 * (m * r * r * (x[1] * x[1] + x[3] * x[3]) +
                      M * (x[1] * x[1] + x[2] * x[2] + x[3] * x[3])) +
               m * g * x[0];
    });

    spec.pfaffian.h3 = ScalarField::smooth(3, [rho](auto u) { return u[2] / rho; });
    spec.pfaffian.h4 = ScalarField::zero(3);
    spec.multiplier = ScalarField::constant(4, -1.0 / (al * r));
    return spec;
}

// --- shared operations ----------------------------------------------------

SystemSpec make_system(std::string_view name, const Params& params, Variant variant) {
    if (name == "disk") {
        const auto* p = std::get_if<DiskParams>(&params);
        require(p != nullptr, "make_system: disk requires DiskParams");
        return make_disk(*p, variant);
    }
    if (name == "routh_sphere") {
        const auto* p = std::get_if<RouthSphereParams>(&params);
        require(p != nullptr, "make_system: routh_sphere requires RouthSphereParams");
        return make_routh_sphere(*p, variant);
    }
    if (name == "surface_ball") {
        const auto* p = std::get_if<SurfaceBallParams>(&params);
        require(p != nullptr, "make_system: surface_ball requires SurfaceBallParams");
        return make_surface_ball(*p, variant);
    }
    if (name == "cylinder") {
        const auto* p = std::get_if<CylinderParams>(&params);
        require(p != nullptr, "make_system: cylinder requires CylinderParams");
        if (variant == Variant::extended5)
            throw ContractError("make_system: the cylinder admits only the reduced4 variant");
        return make_cylinder(*p);
    }
    throw ContractError("make_system: unknown system '" + std::string(name) + "'");
}

bool domain_guard(const SystemSpec& spec, std::span<const double> p) {
    require(static_cast<int>(p.size()) == spec.dim, "domain_guard: dimension mismatch");
    return spec.domain_guard(p);
}

double equilibrium_residual(const SystemSpec& spec, std::span<const double> p) {
    require(domain_guard(spec, p), "equilibrium_residual: point outside the declared domain");
    const auto v = spec.vf(p);
    double r = 0.0;
    for (double vi : v) r = std::max(r, std::abs(vi));
    return r;
}

std::pair<double, double> jellet_integrals(const RouthSphereParams& p,
                                           std::span<const double> x) {
    require(x.size() >= 4, "jellet_integrals: need at least 4 coordinates");
    const double s1 = x[0], s3 = x[2], s4 = x[3];
    const double P = p.P(s1);
    require(P >= 0.0, "jellet_integrals: P(sigma1) must be nonnegative");
    const double j = p.I1 * p.r * s3 + p.I3 * (p.offset_a + p.r * s1) * s4;
    const double k = s4 * std::sqrt(P);
    return {j, k};
}

BivectorField build_bivector(const SystemSpec& spec) {
    if (spec.dim == 4) return pfaff::build_r4(spec.pfaffian, spec.multiplier);
    return pfaff::build_r5(spec.pfaffian, spec.multiplier);
}

linflow::CoefficientCurve coefficient_curve(const SystemSpec& spec) {
    linflow::CoefficientCurve curve;
    if (const auto* d = std::get_if<DiskParams>(&spec.params)) {
        (void)d;
        curve.A = [](double s1) {
            Eigen::Matrix2d A;
            A << 0.0, -2.0, -(2.0 / 3.0) / (1.0 - s1 * s1), 0.0;
            return A;
        };
        curve.x1_min = -1.0;
        curve.x1_max = 1.0;
    } else if (const auto* s = std::get_if<RouthSphereParams>(&spec.params)) {
        const RouthSphereParams q = *s;
        curve.A = [q](double s1) {
            const double P = q.P(s1);
            Eigen::Matrix2d A;
            A << 0.0, -q.I3 * (q.I3 + q.m * q.r * q.r + q.m * q.r * q.offset_a * s1) / P, 0.0,
                q.m * q.r * (q.I1 * q.r * s1 - q.I3 * (q.offset_a + q.r * s1)) / P;
            return A;
        };
        // P is quadratic in s1, positive at 0; restrict to the component of
        // {P > 0} containing the physical interval.
        const double A2 = q.m * q.r * q.r * (q.I3 - q.I1);
        const double A1 = 2.0 * q.m * q.I3 * q.r * q.offset_a;
        const double A0 = q.I1 * q.I3 + q.m * q.r * q.r * q.I1 + q.m * q.I3 * sq(q.offset_a);
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        auto consider_root = [&lo, &hi](double root) {
            if (root < 0.0) lo = std::max(lo, root);
            if (root > 0.0) hi = std::min(hi, root);
        };
        if (A2 == 0.0) {
            if (A1 != 0.0) consider_root(-A0 / A1);
        } else {
            const double disc = A1 * A1 - 4.0 * A2 * A0;
            if (disc >= 0.0) {
                const double sd = std::sqrt(disc);
                consider_root((-A1 + sd) / (2.0 * A2));
                consider_root((-A1 - sd) / (2.0 * A2));
            }
        }
        curve.x1_min = lo;
        curve.x1_max = hi;
    } else if (const auto* b = std::get_if<SurfaceBallParams>(&spec.params)) {
        const SurfaceBallParams q = *b;
        const double kM = q.M / (q.alpha() * q.r * q.r);
        curve.A = [q, kM](double p1) {
            const double s = std::sqrt(2.0 * p1);
            const double D = 1.0 + sq(q.profile.d1(s));
            Eigen::Matrix2d A;
            A << 0.0, kM * q.profile.d2(s) / D,
                -(q.profile.d2(s) / D - q.profile.ratio(s)) / (2.0 * p1), 0.0;
            return A;
        };
        curve.x1_min = 0.0;
    } else if (const auto* cy = std::get_if<CylinderParams>(&spec.params)) {
        const double rho = cy->rho;
        curve.A = [rho](double) {
            Eigen::Matrix2d A;
            A << 0.0, 1.0 / rho, 0.0, 0.0;
            return A;
        };
    }
    return curve;
}

double variety_fifth_coordinate(const SystemSpec& spec, std::span<const double> x4) {
    require(x4.size() >= 4, "variety_fifth_coordinate: need 4 coordinates");
    if (std::holds_alternative<DiskParams>(spec.params) ||
        std::holds_alternative<RouthSphereParams>(spec.params)) {
        const double one = 1.0 - x4[0] * x4[0];
        require(one > 0.0, "variety_fifth_coordinate: |sigma1| must be < 1");
        return (x4[1] * x4[1] + x4[2] * x4[2]) / one;
    }
    if (std::holds_alternative<SurfaceBallParams>(spec.params)) {
        require(x4[0] > 0.0, "variety_fifth_coordinate: p1 must be positive");
        return (x4[1] * x4[1] + x4[2] * x4[2]) / (4.0 * x4[0]);
    }
    throw ContractError("variety_fifth_coordinate: the cylinder has no extended variant");
}

// --- cylinder closed forms -------------------------------------------------

Point cylinder_analytic(const CylinderParams& p, std::span<const double> x0, double t) {
    require(x0.size() == 4, "cylinder_analytic: state must be 4-dimensional");
    const double s1 = x0[0], s2 = x0[1], s3 = x0[2], s4 = x0[3];
    const double sg = p.sigma_g();

    if (std::abs(s4) < 1e-14) {
        // Falling branch: sigma2 drifts linearly, the height is quadratic.
        return {s1 - p.r * (s2 * t + 0.5 * sg * t * t), s2 + sg * t, s3, s4};
    }
    const double n1 = p.nu1(s4);
    const double n2 = p.nu2(s4);
    const double w = std::sqrt(n1 * n2);  // n1*n2 = M s4^2/(alpha rho^2) > 0
    const double s2p0 = n2 * s3 + sg;
    const double cwt = std::cos(w * t), swt = std::sin(w * t);
    Point out(4);
    out[0] = s1 - p.r / (n1 * n2) * (s2p0 * (1.0 - cwt) + w * s2 * swt);
    out[1] = s2 * cwt + s2p0 / w * swt;
    out[2] = -sg / n2 + s2p0 / n2 * cwt - std::sqrt(n1 / n2) * s2 * swt;
    out[3] = s4;
    return out;
}

CylinderFrame cylinder_reconstruct(const CylinderParams& p, std::span<const double> x0,
                                   double theta0, double t) {
    const Point s = cylinder_analytic(p, x0, t);
    CylinderFrame f;
    f.theta = theta0 - p.nu1(x0[3]) * t;
    f.omega1 = s[1] * std::sin(f.theta) - s[2] * std::cos(f.theta);
    f.omega2 = -s[1] * std::cos(f.theta) - s[2] * std::sin(f.theta);
    f.omega3 = s[3];
    f.z = s[0];
    return f;
}

double cylinder_frame_energy(const CylinderParams& p, const CylinderFrame& f) {
    const double ww = f.omega1 * f.omega1 + f.omega2 * f.omega2 + f.omega3 * f.omega3;
    const double radial = f.omega1 * std::cos(f.theta) + f.omega2 * std::sin(f.theta);
    return 0.5 * ((p.M + p.m * p.r * p.r) * ww - p.m * p.r * p.r * radial * radial) +
           p.m * p.g * f.z;
}

BivectorField cylinder_lambda1(const CylinderParams& p) {
    // build_r4 with the constant multiplier -1/(alpha r); the normalization
    // is the one under which sharp(Lambda1, dE) equals the reduced vector
    // field exactly.
    pfaff::PfaffianSpec pf;
    const double rho = p.rho;
    pf.h3 = ScalarField::smooth(3, [rho](auto u) { return u[2] / rho; });
    pf.h4 = ScalarField::zero(3);
    return pfaff::build_r4(pf, ScalarField::constant(4, -1.0 / (p.alpha() * p.r)));
}

BivectorField cylinder_lambda2(const CylinderParams& p) {
    const double m = p.m, r = p.r, g = p.g, M = p.M, rho = p.rho, al = p.alpha();
    BivectorField biv(4);
    biv.set_upper(0, 1, ScalarField::smooth(4, [m, r, g, M, rho, al](auto x) {
                      return -(M * x[3] * x[2] / (al * r * rho) + m * g / (al * r)) / (m * g);
                  }));
    biv.set_upper(0, 2, ScalarField::smooth(4, [m, r, g, rho](auto x) {
                      return (r / rho) * x[3] * x[1] / (m * g);
                  }));
    return biv;
}

BivectorField cylinder_pencil(const CylinderParams& p, double lambda) {
    return (1.0 - lambda) * cylinder_lambda1(p) + lambda * cylinder_lambda2(p);
}

std::array<double, 3> cylinder_casimirs(const CylinderParams& p, std::span<const double> x) {
    require(x.size() == 4, "cylinder_casimirs: state must be 4-dimensional");
    const auto fields = cylinder_casimir_fields(p);
    return {fields[0](x), fields[1](x), fields[2](x)};
}

std::array<ScalarField, 3> cylinder_casimir_fields(const CylinderParams& p) {
    const double m = p.m, r = p.r, g = p.g, M = p.M, rho = p.rho, al = p.alpha();
    return {ScalarField::smooth(4, [](auto x) { return x[3]; }),
            ScalarField::smooth(4, [rho](auto x) { return x[2] - x[3] * x[0] / rho; }),
            ScalarField::smooth(4, [m, r, g, M, rho, al](auto x) {
                return (r / rho) * x[3] * x[1] * x[1] + M / (al * r * rho) * x[3] * x[2] * x[2] +
                       2.0 * m * g / (al * r) * x[2];
            })};
}

}  // namespace ranktwo::systems
