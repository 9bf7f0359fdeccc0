#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ranktwo/fields.hpp"

namespace ranktwo {

/// Bivector field on R^n, stored as the strictly upper triangular
/// components W^{ij} (i<j); the full matrix is recovered by antisymmetry,
/// so W + W^T = 0 holds exactly by construction.
class BivectorField {
public:
    BivectorField() = default;
    explicit BivectorField(int dim);  // zero bivector

    int dim() const { return dim_; }
    bool valid() const { return dim_ >= 2; }

    static int upper_count(int dim) { return dim * (dim - 1) / 2; }

    /// Flat index of the pair (i,j), i<j, in lexicographic order.
    static int upper_index(int dim, int i, int j);

    void set_upper(int i, int j, ScalarField f);
    const ScalarField& upper(int i, int j) const;

    /// Signed component W^{ij}(x); zero for i == j.
    double component(int i, int j, std::span<const double> x) const;

    /// Partial derivative d_l W^{ij} (x), signed.
    double component_partial(int l, int i, int j, std::span<const double> x) const;

    /// Full antisymmetric matrix W(x).
    Eigen::MatrixXd matrix(std::span<const double> x) const;

    friend BivectorField operator+(const BivectorField& a, const BivectorField& b);
    friend BivectorField operator-(const BivectorField& a, const BivectorField& b);
    friend BivectorField operator*(double c, const BivectorField& a);

private:
    int dim_ = 0;
    std::vector<ScalarField> upper_;
};

/// Components of a trivector at a single point, stored for i<j<k in
/// lexicographic order; the signed accessor supplies the antisymmetry.
struct TrivectorValue {
    int dim = 0;
    std::vector<double> comp;

    static int count(int dim) { return dim * (dim - 1) * (dim - 2) / 6; }
    static int index(int dim, int i, int j, int k);

    double at(int i, int j, int k) const;  // signed, any index order
    double max_abs() const;
};

/// Trivector field with scalar-field components for i<j<k.
class TrivectorField {
public:
    TrivectorField() = default;
    explicit TrivectorField(int dim);

    int dim() const { return dim_; }
    void set_comp(int i, int j, int k, ScalarField f);
    TrivectorValue operator()(std::span<const double> x) const;

private:
    int dim_ = 0;
    std::vector<ScalarField> comp_;
};

/// Sharp map applied to a covector alpha at x: v^i = sum_j W^{ij}(x) alpha_j.
/// This exact index placement is normative; it is the convention under
/// which the shipped reduced systems are Hamiltonian.
std::vector<double> sharp(const BivectorField& biv, std::span<const double> alpha,
                          std::span<const double> x);
std::vector<double> sharp(const BivectorField& biv, const CovectorField& alpha,
                          std::span<const double> x);

/// Schouten-Nijenhuis bracket of a bivector with itself at x:
///   [W,W]^{ijk} = 2 sum_l ( W^{il} d_l W^{jk} + W^{jl} d_l W^{ki} + W^{kl} d_l W^{ij} ).
/// Normalization is anchored to the Heisenberg wedge X ^ Y with
/// X = d_x - y d_z, Y = d_y + x d_z, whose (1,2,3) component is exactly 4.
TrivectorValue schouten_self(const BivectorField& biv, std::span<const double> x);

/// Pair bracket by polarization:
///   [A,B] = ([A+B,A+B] - [A-B,A-B]) / 4,
/// symmetric in its arguments for bivectors.
TrivectorValue schouten_pair(const BivectorField& a, const BivectorField& b,
                             std::span<const double> x);

/// Numerical rank of W(x): singular values above tol * sigma_max, zero if
/// the matrix vanishes. Antisymmetric matrices have even rank; an odd
/// thresholded count means the tolerance straddles a cluster and raises.
int rank_at(const BivectorField& biv, std::span<const double> x, double tol = 1e-9);

/// Componentwise product a * W^{ij}.
BivectorField scale(const BivectorField& biv, const ScalarField& a);

/// Wedge of two vector fields: W^{ij} = X^i Y^j - X^j Y^i.
BivectorField wedge(const VectorField& X, const VectorField& Y);

/// Lie bracket [X,Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i); components are
/// value-backed, partials by finite differences.
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// Wedge of three vector fields: T^{ijk} = det of the 3x3 minor formed by
/// components (i,j,k) of X, Y, Z.
TrivectorField wedge3(const VectorField& X, const VectorField& Y, const VectorField& Z);

}  // namespace ranktwo
