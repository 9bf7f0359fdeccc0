#pragma once

#include <cmath>
#include <concepts>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "ranktwo/dual.hpp"
#include "ranktwo/errors.hpp"

namespace ranktwo {

/// State coordinates of a point in R^n.
using Point = std::vector<double>;

namespace detail {

/// A callable usable as a smooth field body: one generic expression that
/// evaluates both on plain doubles (values) and on dual numbers (exact
/// partials).
template <class F>
concept SmoothExpr = requires(const F f, std::span<const double> xr, std::span<const Dual> xd) {
    { f(xr) } -> std::convertible_to<double>;
    { f(xd) } -> std::convertible_to<Dual>;
};

}  // namespace detail

/// Scalar function on an open subset of R^n.
///
/// Fields built with `smooth` carry exact first partials evaluated by
/// forward-mode dual numbers. Fields built with `from_values` fall back to
/// central finite differences with step 1e-5*max(1,|x_i|); the same finite
/// difference doubles as an independent cross-check of the analytic
/// partials in the test suite.
class ScalarField {
public:
    using ValueFn = std::function<double(std::span<const double>)>;
    using DualFn = std::function<Dual(std::span<const Dual>)>;

    ScalarField() = default;

    template <detail::SmoothExpr F>
    static ScalarField smooth(int dim, F f) {
        ScalarField s;
        s.dim_ = checked_dim(dim);
        s.value_ = [f](std::span<const double> x) -> double { return f(x); };
        s.dual_ = [f](std::span<const Dual> x) -> Dual { return f(x); };
        return s;
    }

    static ScalarField from_values(int dim, ValueFn f) {
        ScalarField s;
        s.dim_ = checked_dim(dim);
        s.value_ = std::move(f);
        return s;
    }

    static ScalarField constant(int dim, double c) {
        return smooth(dim, [c](auto x) { (void)x; return decltype(x[0])(c); });
    }

    static ScalarField zero(int dim) { return constant(dim, 0.0); }

    static ScalarField coordinate(int dim, int i) {
        require(0 <= i && i < dim, "coordinate index out of range");
        return smooth(dim, [i](auto x) { return x[static_cast<size_t>(i)]; });
    }

    int dim() const { return dim_; }
    bool valid() const { return static_cast<bool>(value_); }
    bool has_analytic_partials() const { return static_cast<bool>(dual_); }

    double operator()(std::span<const double> x) const {
        check_point(x);
        return value_(x);
    }

    Dual eval_dual(std::span<const Dual> x) const {
        require(static_cast<int>(x.size()) == dim_, "ScalarField: dimension mismatch");
        require(has_analytic_partials(), "ScalarField: no analytic evaluation path");
        return dual_(x);
    }

    /// Partial derivative with respect to coordinate i: exact when the field
    /// is smooth, central finite difference otherwise.
    double partial(int i, std::span<const double> x) const {
        check_point(x);
        require(0 <= i && i < dim_, "partial: coordinate index out of range");
        if (dual_) {
            std::vector<Dual> buf(x.begin(), x.end());
            buf[static_cast<size_t>(i)].d = 1.0;
            return dual_(std::span<const Dual>(buf)).d;
        }
        return fd_partial(i, x);
    }

    /// Finite-difference partial, always available.
    double fd_partial(int i, std::span<const double> x) const {
        check_point(x);
        const double h = 1e-5 * std::max(1.0, std::abs(x[static_cast<size_t>(i)]));
        std::vector<double> buf(x.begin(), x.end());
        buf[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] + h;
        const double fp = value_(buf);
        buf[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] - h;
        const double fm = value_(buf);
        return (fp - fm) / (2.0 * h);
    }

    std::vector<double> gradient(std::span<const double> x) const {
        std::vector<double> g(static_cast<size_t>(dim_));
        for (int i = 0; i < dim_; ++i) g[static_cast<size_t>(i)] = partial(i, x);
        return g;
    }

    /// Field on a (usually larger) space reading its arguments through an
    /// index map: g(x) = f(x[map[0]], ..., x[map[k-1]]). Lifts the
    /// (x1,x3,x4)-functions h3, h4 into R^4 or R^5.
    ScalarField pulled_back(int new_dim, std::vector<int> index_map) const {
        require(valid(), "pulled_back: empty field");
        require(static_cast<int>(index_map.size()) == dim_, "pulled_back: index map size mismatch");
        for (int idx : index_map) require(0 <= idx && idx < new_dim, "pulled_back: index out of range");
        ScalarField s;
        s.dim_ = new_dim;
        s.value_ = [f = value_, map = index_map](std::span<const double> x) -> double {
            std::vector<double> buf(map.size());
            for (size_t k = 0; k < map.size(); ++k) buf[k] = x[static_cast<size_t>(map[k])];
            return f(buf);
        };
        if (dual_) {
            s.dual_ = [f = dual_, map = index_map](std::span<const Dual> x) -> Dual {
                std::vector<Dual> buf(map.size());
                for (size_t k = 0; k < map.size(); ++k) buf[k] = x[static_cast<size_t>(map[k])];
                return f(buf);
            };
        }
        return s;
    }

    friend ScalarField operator+(const ScalarField& a, const ScalarField& b) {
        return combine(a, b, [](auto u, auto w) { return u + w; });
    }
    friend ScalarField operator-(const ScalarField& a, const ScalarField& b) {
        return combine(a, b, [](auto u, auto w) { return u - w; });
    }
    friend ScalarField operator*(const ScalarField& a, const ScalarField& b) {
        return combine(a, b, [](auto u, auto w) { return u * w; });
    }
    friend ScalarField operator*(double c, const ScalarField& a) {
        require(a.valid(), "field arithmetic on empty field");
        ScalarField s;
        s.dim_ = a.dim_;
        s.value_ = [c, f = a.value_](std::span<const double> x) { return c * f(x); };
        if (a.dual_) s.dual_ = [c, f = a.dual_](std::span<const Dual> x) { return Dual(c) * f(x); };
        return s;
    }
    ScalarField operator-() const { return -1.0 * (*this); }

private:
    static int checked_dim(int dim) {
        require(dim >= 1, "ScalarField: dimension must be positive");
        return dim;
    }

    void check_point(std::span<const double> x) const {
        require(valid(), "ScalarField: empty field");
        require(static_cast<int>(x.size()) == dim_, "ScalarField: dimension mismatch");
    }

    template <class Op>
    static ScalarField combine(const ScalarField& a, const ScalarField& b, Op op) {
        require(a.valid() && b.valid(), "field arithmetic on empty field");
        require(a.dim_ == b.dim_, "field arithmetic: dimension mismatch");
        ScalarField s;
        s.dim_ = a.dim_;
        s.value_ = [fa = a.value_, fb = b.value_, op](std::span<const double> x) {
            return op(fa(x), fb(x));
        };
        if (a.dual_ && b.dual_) {
            s.dual_ = [fa = a.dual_, fb = b.dual_, op](std::span<const Dual> x) {
                return op(fa(x), fb(x));
            };
        }
        return s;
    }

    int dim_ = 0;
    ValueFn value_;
    DualFn dual_;
};

namespace detail {

/// Shared implementation of an n-tuple of scalar fields.
class FieldTuple {
public:
    FieldTuple() = default;
    FieldTuple(int dim, std::vector<ScalarField> comps) : dim_(dim), comps_(std::move(comps)) {
        require(static_cast<int>(comps_.size()) == dim_, "field tuple: component count mismatch");
        for (const auto& c : comps_)
            require(c.valid() && c.dim() == dim_, "field tuple: component dimension mismatch");
    }

    int dim() const { return dim_; }
    bool valid() const { return dim_ > 0; }

    const ScalarField& component(int i) const {
        require(0 <= i && i < dim_, "component index out of range");
        return comps_[static_cast<size_t>(i)];
    }

    void eval(std::span<const double> x, std::span<double> out) const {
        require(static_cast<int>(out.size()) == dim_, "eval: output size mismatch");
        for (int i = 0; i < dim_; ++i) out[static_cast<size_t>(i)] = comps_[static_cast<size_t>(i)](x);
    }

    std::vector<double> operator()(std::span<const double> x) const {
        std::vector<double> out(static_cast<size_t>(dim_));
        eval(x, out);
        return out;
    }

protected:
    int dim_ = 0;
    std::vector<ScalarField> comps_;
};

}  // namespace detail

/// Vector field: n scalar component fields X^i.
class VectorField : public detail::FieldTuple {
public:
    VectorField() = default;
    VectorField(int dim, std::vector<ScalarField> comps) : FieldTuple(dim, std::move(comps)) {}
    static VectorField zero(int dim) {
        std::vector<ScalarField> c(static_cast<size_t>(dim), ScalarField::zero(dim));
        return {dim, std::move(c)};
    }
};

/// Covector field (1-form coefficients): n scalar fields alpha_i.
class CovectorField : public detail::FieldTuple {
public:
    CovectorField() = default;
    CovectorField(int dim, std::vector<ScalarField> comps) : FieldTuple(dim, std::move(comps)) {}
};

}  // namespace ranktwo
