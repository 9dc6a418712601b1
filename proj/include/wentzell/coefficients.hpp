#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wentzell/expr.hpp"
#include "wentzell/mesh.hpp"

namespace wentzell {

/// Scalar coefficient given as a constant, a per-cell table, or a closed-form
/// expression. Per-cell tables are evaluable only at interior quadrature
/// points (they carry no boundary-node values).
class ScalarField {
public:
    ScalarField() : ScalarField(0.0) {}
    explicit ScalarField(double c) : kind_(Kind::constant), value_(c) {}

    static ScalarField constant(double c) { return ScalarField(c); }
    static ScalarField expression(const std::string& text);
    static ScalarField per_cell(Eigen::VectorXd values);

    /// Point evaluation; rejects per-cell tables.
    double at(double x, double y = 0.0) const;
    /// Evaluation at a quadrature point of cell `cell`; per-cell tables
    /// return the tabulated value.
    double on_cell(int cell, double x, double y = 0.0) const;

    bool is_constant() const { return kind_ == Kind::constant; }
    bool is_per_cell() const { return kind_ == Kind::per_cell; }
    bool is_expression() const { return kind_ == Kind::expr; }
    double constant_value() const { return value_; }
    const Eigen::VectorXd& table() const { return table_; }
    const std::string& expression_text() const { return expr_.text(); }

private:
    enum class Kind { constant, per_cell, expr };
    Kind kind_;
    double value_ = 0.0;
    Eigen::VectorXd table_;
    Expression expr_;
};

/// Symmetric matrix-valued diffusion coefficient Q. Either isotropic
/// (q(x)·Identity) or a full d x d entry table of scalar fields.
class MatrixField {
public:
    MatrixField() : MatrixField(ScalarField(1.0)) {}
    explicit MatrixField(ScalarField iso) : isotropic_(std::move(iso)) {}
    MatrixField(ScalarField qxx, ScalarField qxy, ScalarField qyy);

    Eigen::Matrix2d on_cell(int dimension, int cell, double x, double y) const;
    bool is_isotropic() const { return isotropic_.has_value(); }
    bool is_identity_constant() const {
        return isotropic_ && isotropic_->is_constant() && isotropic_->constant_value() == 1.0;
    }
    const ScalarField& isotropic() const { return *isotropic_; }
    const ScalarField& entry(int i, int j) const { return entries_[i][j]; }

private:
    std::optional<ScalarField> isotropic_;
    ScalarField entries_[2][2];
};

/// Coefficient data (Q, alpha, beta, gamma, delta) with the declared lower
/// bound eta and ellipticity constant kappa_Q.
struct CoefficientSet {
    MatrixField Q;
    ScalarField alpha{1.0};
    ScalarField beta{1.0};
    ScalarField gamma{0.0};
    ScalarField delta{0.0};
    double eta = 0.5;
    double kappa_q = 0.5;

    static CoefficientSet reference();
};

/// Interior quadrature points of a cell (midpoint in 1D, 2x2 tensor Gauss in
/// 2D) with weights; the same rule drives validation and assembly.
struct QuadPoint {
    double x, y, w;
};
std::vector<QuadPoint> cell_quadrature(const Mesh& mesh, int cell);

struct HypothesisCheck {
    std::string name;
    bool pass;
    double margin;   // min over samples of the defining inequality slack
};

struct ValidationReport {
    std::vector<HypothesisCheck> checks;
    bool all_pass = true;
    std::string to_json() const;
};

ValidationReport validate_coefficients(const Mesh& mesh, const CoefficientSet& coeffs);

/// Throws hypothesis-violation unless validate_coefficients passes.
void require_valid(const Mesh& mesh, const CoefficientSet& coeffs);

struct SymbolReport {
    bool elliptic = false;
    double min_symbol = 0.0;     // min of a0(x, xi) over samples, |xi| = 1
    double bound_constant = 0.0; // C with |lambda - a0| >= C (|lambda| + |xi|^4)
    int samples = 0;
    std::string to_json() const;
};

/// Evaluates the principal symbol a0(x, xi) = (xi' Q xi) * alpha * (xi' Q xi)
/// over interior quadrature points and unit directions, and estimates the
/// parameter-ellipticity constant on the rays arg(lambda) = +-sector_angle.
SymbolReport check_principal_symbol(const CoefficientSet& coeffs, const Mesh& mesh,
                                    double sector_angle, int samples);

inline double principal_symbol(const Eigen::Matrix2d& Q, double alpha, const Eigen::Vector2d& xi) {
    double quad = xi.dot(Q * xi);
    return quad * alpha * quad;
}

}  // namespace wentzell
