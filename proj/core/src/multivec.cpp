#include "ranktwo/multivec.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace ranktwo {

BivectorField::BivectorField(int dim) : dim_(dim) {
    require(dim >= 2, "BivectorField: dimension must be at least 2");
    upper_.assign(static_cast<size_t>(upper_count(dim)), ScalarField::zero(dim));
}

int BivectorField::upper_index(int dim, int i, int j) {
    require(0 <= i && i < j && j < dim, "BivectorField: need 0 <= i < j < dim");
    // offset of row i = sum_{r<i} (dim-1-r)
    return i * (2 * dim - i - 1) / 2 + (j - i - 1);
}

void BivectorField::set_upper(int i, int j, ScalarField f) {
    require(f.valid() && f.dim() == dim_, "set_upper: component dimension mismatch");
    upper_[static_cast<size_t>(upper_index(dim_, i, j))] = std::move(f);
}

const ScalarField& BivectorField::upper(int i, int j) const {
    return upper_[static_cast<size_t>(upper_index(dim_, i, j))];
}

double BivectorField::component(int i, int j, std::span<const double> x) const {
    if (i == j) return 0.0;
    if (i < j) return upper(i, j)(x);
    return -upper(j, i)(x);
}

double BivectorField::component_partial(int l, int i, int j, std::span<const double> x) const {
    if (i == j) return 0.0;
    if (i < j) return upper(i, j).partial(l, x);
    return -upper(j, i).partial(l, x);
}

Eigen::MatrixXd BivectorField::matrix(std::span<const double> x) const {
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int j = i + 1; j < dim_; ++j) {
            const double w = upper(i, j)(x);
            W(i, j) = w;
            W(j, i) = -w;
        }
    }
    return W;
}

namespace {

BivectorField combine(const BivectorField& a, const BivectorField& b,
                      const std::function<ScalarField(const ScalarField&, const ScalarField&)>& op) {
    require(a.valid() && b.valid(), "bivector arithmetic on empty field");
    require(a.dim() == b.dim(), "bivector arithmetic: dimension mismatch");
    BivectorField out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) out.set_upper(i, j, op(a.upper(i, j), b.upper(i, j)));
    return out;
}

}  // namespace

BivectorField operator+(const BivectorField& a, const BivectorField& b) {
    return combine(a, b, [](const ScalarField& u, const ScalarField& w) { return u + w; });
}

BivectorField operator-(const BivectorField& a, const BivectorField& b) {
    return combine(a, b, [](const ScalarField& u, const ScalarField& w) { return u - w; });
}

BivectorField operator*(double c, const BivectorField& a) {
    require(a.valid(), "bivector arithmetic on empty field");
    BivectorField out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) out.set_upper(i, j, c * a.upper(i, j));
    return out;
}

int TrivectorValue::index(int dim, int i, int j, int k) {
    require(0 <= i && i < j && j < k && k < dim, "TrivectorValue: need 0 <= i < j < k < dim");
    // lexicographic position of (i,j,k) among increasing triples
    auto c2 = [](int m) { return m * (m - 1) / 2; };
    auto c3 = [](int m) { return m * (m - 1) * (m - 2) / 6; };
    return c3(dim) - c3(dim - i) + c2(dim - i - 1) - c2(dim - j) + (k - j - 1);
}

double TrivectorValue::at(int i, int j, int k) const {
    if (i == j || j == k || i == k) return 0.0;
    int a = i, b = j, c = k;
    double sign = 1.0;
    if (a > b) { std::swap(a, b); sign = -sign; }
    if (b > c) { std::swap(b, c); sign = -sign; }
    if (a > b) { std::swap(a, b); sign = -sign; }
    return sign * comp[static_cast<size_t>(index(dim, a, b, c))];
}

double TrivectorValue::max_abs() const {
    double m = 0.0;
    for (double v : comp) m = std::max(m, std::abs(v));
    return m;
}

TrivectorField::TrivectorField(int dim) : dim_(dim) {
    require(dim >= 3, "TrivectorField: dimension must be at least 3");
    comp_.assign(static_cast<size_t>(TrivectorValue::count(dim)), ScalarField::zero(dim));
}

void TrivectorField::set_comp(int i, int j, int k, ScalarField f) {
    require(f.valid() && f.dim() == dim_, "set_comp: component dimension mismatch");
    comp_[static_cast<size_t>(TrivectorValue::index(dim_, i, j, k))] = std::move(f);
}

TrivectorValue TrivectorField::operator()(std::span<const double> x) const {
    TrivectorValue t;
    t.dim = dim_;
    t.comp.reserve(comp_.size());
    for (const auto& f : comp_) t.comp.push_back(f(x));
    return t;
}

std::vector<double> sharp(const BivectorField& biv, std::span<const double> alpha,
                          std::span<const double> x) {
    const int n = biv.dim();
    require(static_cast<int>(alpha.size()) == n, "sharp: covector dimension mismatch");
    require(static_cast<int>(x.size()) == n, "sharp: point dimension mismatch");
    std::vector<double> v(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += biv.component(i, j, x) * alpha[static_cast<size_t>(j)];
        v[static_cast<size_t>(i)] = s;
    }
    return v;
}

std::vector<double> sharp(const BivectorField& biv, const CovectorField& alpha,
                          std::span<const double> x) {
    require(alpha.dim() == biv.dim(), "sharp: covector dimension mismatch");
    return sharp(biv, alpha(x), x);
}

TrivectorValue schouten_self(const BivectorField& biv, std::span<const double> x) {
    const int n = biv.dim();
    require(static_cast<int>(x.size()) == n, "schouten_self: point dimension mismatch");

    // W(x) and all first partials of the upper components.
    Eigen::MatrixXd W = biv.matrix(x);
    // G[l](i,j) = d_l W^{ij}, stored upper then antisymmetrized on the fly.
    std::vector<Eigen::MatrixXd> G(static_cast<size_t>(n));
    for (int l = 0; l < n; ++l) G[static_cast<size_t>(l)] = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto grad = biv.upper(i, j).gradient(x);
            for (int l = 0; l < n; ++l) {
                G[static_cast<size_t>(l)](i, j) = grad[static_cast<size_t>(l)];
                G[static_cast<size_t>(l)](j, i) = -grad[static_cast<size_t>(l)];
            }
        }
    }

    TrivectorValue t;
    t.dim = n;
    t.comp.assign(static_cast<size_t>(TrivectorValue::count(n)), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                double s = 0.0;
                for (int l = 0; l < n; ++l) {
                    const auto& Gl = G[static_cast<size_t>(l)];
                    s += W(i, l) * Gl(j, k) + W(j, l) * Gl(k, i) + W(k, l) * Gl(i, j);
                }
                t.comp[static_cast<size_t>(TrivectorValue::index(n, i, j, k))] = 2.0 * s;
            }
        }
    }
    return t;
}

TrivectorValue schouten_pair(const BivectorField& a, const BivectorField& b,
                             std::span<const double> x) {
    require(a.dim() == b.dim(), "schouten_pair: dimension mismatch");
    const TrivectorValue plus = schouten_self(a + b, x);
    const TrivectorValue minus = schouten_self(a - b, x);
    TrivectorValue t;
    t.dim = a.dim();
    t.comp.resize(plus.comp.size());
    for (size_t m = 0; m < t.comp.size(); ++m) t.comp[m] = 0.25 * (plus.comp[m] - minus.comp[m]);
    return t;
}

int rank_at(const BivectorField& biv, std::span<const double> x, double tol) {
    require(tol > 0.0, "rank_at: tolerance must be positive");
    const Eigen::MatrixXd W = biv.matrix(x);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(W);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    if (smax == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * smax) ++r;
    if (r % 2 != 0)
        throw ContractError("rank_at: thresholded rank of an antisymmetric matrix came out odd; "
                            "tolerance straddles a singular-value cluster");
    return r;
}

BivectorField scale(const BivectorField& biv, const ScalarField& a) {
    require(a.valid() && a.dim() == biv.dim(), "scale: factor dimension mismatch");
    BivectorField out(biv.dim());
    for (int i = 0; i < biv.dim(); ++i)
        for (int j = i + 1; j < biv.dim(); ++j) out.set_upper(i, j, a * biv.upper(i, j));
    return out;
}

BivectorField wedge(const VectorField& X, const VectorField& Y) {
    require(X.dim() == Y.dim(), "wedge: dimension mismatch");
    BivectorField out(X.dim());
    for (int i = 0; i < X.dim(); ++i)
        for (int j = i + 1; j < X.dim(); ++j)
            out.set_upper(i, j, X.component(i) * Y.component(j) - X.component(j) * Y.component(i));
    return out;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    require(X.dim() == Y.dim(), "lie_bracket: dimension mismatch");
    const int n = X.dim();
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        comps.push_back(ScalarField::from_values(n, [X, Y, i, n](std::span<const double> x) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) {
                s += X.component(j)(x) * Y.component(i).partial(j, x);
                s -= Y.component(j)(x) * X.component(i).partial(j, x);
            }
            return s;
        }));
    }
    return {n, std::move(comps)};
}

TrivectorField wedge3(const VectorField& X, const VectorField& Y, const VectorField& Z) {
    require(X.dim() == Y.dim() && Y.dim() == Z.dim(), "wedge3: dimension mismatch");
    const int n = X.dim();
    TrivectorField out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                out.set_comp(i, j, k,
                             ScalarField::from_values(n, [X, Y, Z, i, j, k](std::span<const double> x) {
                                 const double xi = X.component(i)(x), xj = X.component(j)(x),
                                              xk = X.component(k)(x);
                                 const double yi = Y.component(i)(x), yj = Y.component(j)(x),
                                              yk = Y.component(k)(x);
                                 const double zi = Z.component(i)(x), zj = Z.component(j)(x),
                                              zk = Z.component(k)(x);
                                 return xi * (yj * zk - yk * zj) - xj * (yi * zk - yk * zi) +
                                        xk * (yi * zj - yj * zi);
                             }));
            }
        }
    }
    return out;
}

}  // namespace ranktwo
