#include "wentzell/coefficients.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "wentzell/errors.hpp"

namespace wentzell {

ScalarField ScalarField::expression(const std::string& text) {
    ScalarField f;
    f.kind_ = Kind::expr;
    f.expr_ = Expression::parse(text);
    return f;
}

ScalarField ScalarField::per_cell(Eigen::VectorXd values) {
    ScalarField f;
    f.kind_ = Kind::per_cell;
    f.table_ = std::move(values);
    return f;
}

double ScalarField::at(double x, double y) const {
    switch (kind_) {
        case Kind::constant: return value_;
        case Kind::expr: return expr_.eval(x, y);
        case Kind::per_cell:
            throw Error(ErrorKind::config_error,
                        "per-cell coefficient table has no point evaluation");
    }
    return 0.0;
}

double ScalarField::on_cell(int cell, double x, double y) const {
    if (kind_ == Kind::per_cell) {
        if (cell < 0 || cell >= table_.size())
            throw Error(ErrorKind::shape_error, "per-cell table shorter than element count");
        return table_[cell];
    }
    return at(x, y);
}

MatrixField::MatrixField(ScalarField qxx, ScalarField qxy, ScalarField qyy) {
    entries_[0][0] = std::move(qxx);
    entries_[0][1] = qxy;
    entries_[1][0] = std::move(qxy);
    entries_[1][1] = std::move(qyy);
}

Eigen::Matrix2d MatrixField::on_cell(int dimension, int cell, double x, double y) const {
    Eigen::Matrix2d Q = Eigen::Matrix2d::Identity();
    if (isotropic_) {
        double q = isotropic_->on_cell(cell, x, y);
        Q(0, 0) = q;
        Q(1, 1) = dimension == 2 ? q : 1.0;
    } else {
        Q(0, 0) = entries_[0][0].on_cell(cell, x, y);
        if (dimension == 2) {
            Q(0, 1) = entries_[0][1].on_cell(cell, x, y);
            Q(1, 0) = entries_[1][0].on_cell(cell, x, y);
            Q(1, 1) = entries_[1][1].on_cell(cell, x, y);
        }
    }
    return Q;
}

CoefficientSet CoefficientSet::reference() {
    CoefficientSet c;
    c.Q = MatrixField(ScalarField(1.0));
    c.alpha = ScalarField(1.0);
    c.beta = ScalarField(1.0);
    c.gamma = ScalarField(0.0);
    c.delta = ScalarField(0.0);
    c.eta = 0.5;
    c.kappa_q = 0.5;
    return c;
}

std::vector<QuadPoint> cell_quadrature(const Mesh& mesh, int cell) {
    const auto& el = mesh.elements[cell];
    if (mesh.dimension == 1) {
        double x0 = mesh.nodes[el[0]][0], x1 = mesh.nodes[el[1]][0];
        return {{0.5 * (x0 + x1), 0.0, x1 - x0}};
    }
    double x0 = mesh.nodes[el[0]][0], y0 = mesh.nodes[el[0]][1];
    double x1 = mesh.nodes[el[2]][0], y1 = mesh.nodes[el[2]][1];
    const double g = 1.0 / std::sqrt(3.0);
    double hx = x1 - x0, hy = y1 - y0;
    double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
    std::vector<QuadPoint> pts;
    pts.reserve(4);
    for (double gx : {-g, g})
        for (double gy : {-g, g})
            pts.push_back({xm + 0.5 * hx * gx, ym + 0.5 * hy * gy, 0.25 * hx * hy});
    return pts;
}

namespace {

double min_eigenvalue_sym2(const Eigen::Matrix2d& Q, int dimension) {
    if (dimension == 1) return Q(0, 0);
    double tr = Q(0, 0) + Q(1, 1);
    double det = Q(0, 0) * Q(1, 1) - Q(0, 1) * Q(1, 0);
    double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
    return tr / 2 - disc;
}

}  // namespace

ValidationReport validate_coefficients(const Mesh& mesh, const CoefficientSet& coeffs) {
    ValidationReport rep;
    double asym = 0.0, min_q = std::numeric_limits<double>::infinity();
    double min_alpha = std::numeric_limits<double>::infinity();
    for (int cell = 0; cell < mesh.element_count(); ++cell) {
        for (const auto& qp : cell_quadrature(mesh, cell)) {
            Eigen::Matrix2d Q = coeffs.Q.on_cell(mesh.dimension, cell, qp.x, qp.y);
            if (mesh.dimension == 2) asym = std::max(asym, std::abs(Q(0, 1) - Q(1, 0)));
            min_q = std::min(min_q, min_eigenvalue_sym2(Q, mesh.dimension));
            min_alpha = std::min(min_alpha, coeffs.alpha.on_cell(cell, qp.x, qp.y));
        }
    }
    double min_beta = std::numeric_limits<double>::infinity();
    double min_delta = std::numeric_limits<double>::infinity();
    for (int bn : mesh.boundary_nodes) {
        double x = mesh.nodes[bn][0], y = mesh.nodes[bn][1];
        min_beta = std::min(min_beta, coeffs.beta.at(x, y));
        min_delta = std::min(min_delta, coeffs.delta.at(x, y));
    }
    rep.checks.push_back({"Q symmetric", asym <= 1e-12, 1e-12 - asym});
    rep.checks.push_back({"Q uniformly positive definite (min eig Q - kappa_Q)",
                          min_q - coeffs.kappa_q >= 0.0, min_q - coeffs.kappa_q});
    rep.checks.push_back({"alpha >= eta", min_alpha - coeffs.eta >= 0.0, min_alpha - coeffs.eta});
    rep.checks.push_back({"beta >= eta", min_beta - coeffs.eta >= 0.0, min_beta - coeffs.eta});
    rep.checks.push_back({"delta >= 0", min_delta >= 0.0, min_delta});
    for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

void require_valid(const Mesh& mesh, const CoefficientSet& coeffs) {
    ValidationReport rep = validate_coefficients(mesh, coeffs);
    if (rep.all_pass) return;
    std::string names;
    for (const auto& c : rep.checks)
        if (!c.pass) names += (names.empty() ? "" : ", ") + c.name;
    throw Error(ErrorKind::hypothesis_violation, "coefficient hypotheses violated: " + names);
}

std::string ValidationReport::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"all_pass\":" << (all_pass ? "true" : "false") << ",\"checks\":[";
    for (size_t i = 0; i < checks.size(); ++i) {
        if (i) os << ",";
        os << "{\"name\":\"" << checks[i].name << "\",\"pass\":" << (checks[i].pass ? "true" : "false")
           << ",\"margin\":" << checks[i].margin << "}";
    }
    os << "]}";
    return os.str();
}

SymbolReport check_principal_symbol(const CoefficientSet& coeffs, const Mesh& mesh,
                                    double sector_angle, int samples) {
    if (!(sector_angle > 0.0 && sector_angle < M_PI))
        throw Error(ErrorKind::precondition, "sector angle must lie in (0, pi)");
    if (samples < 1) throw Error(ErrorKind::precondition, "samples must be positive");

    SymbolReport rep;
    double a0_min = std::numeric_limits<double>::infinity();
    double a0_max = 0.0;
    std::vector<double> a0_values;
    int ndir = mesh.dimension == 1 ? 1 : samples;
    for (int cell = 0; cell < mesh.element_count(); ++cell) {
        for (const auto& qp : cell_quadrature(mesh, cell)) {
            Eigen::Matrix2d Q = coeffs.Q.on_cell(mesh.dimension, cell, qp.x, qp.y);
            double alpha = coeffs.alpha.on_cell(cell, qp.x, qp.y);
            for (int k = 0; k < ndir; ++k) {
                Eigen::Vector2d xi(1.0, 0.0);
                if (mesh.dimension == 2) {
                    double th = M_PI * k / ndir;
                    xi = Eigen::Vector2d(std::cos(th), std::sin(th));
                }
                double quad = mesh.dimension == 1 ? Q(0, 0) : xi.dot(Q * xi);
                double a0 = quad * alpha * quad;
                a0_values.push_back(a0);
                a0_min = std::min(a0_min, a0);
                a0_max = std::max(a0_max, a0);
                ++rep.samples;
            }
        }
    }
    rep.min_symbol = a0_min;
    if (!(a0_min > 0.0))
        throw Error(ErrorKind::not_elliptic, "principal symbol is not positive at a sample point");

    // |lambda - a0| >= C (|lambda| + |xi|^4) on the rays arg lambda = +-theta.
    // Homogeneity (xi -> s xi, lambda -> s^4 lambda) reduces the check to
    // |xi| = 1 with |lambda| swept over a geometric grid around the a0 range.
    double C = std::numeric_limits<double>::infinity();
    const std::complex<double> ray(std::cos(sector_angle), std::sin(sector_angle));
    std::vector<double> radii;
    radii.push_back(0.0);
    int nr = std::max(samples, 16);
    for (int i = 0; i <= nr; ++i) {
        double t = static_cast<double>(i) / nr;
        radii.push_back(a0_min * 1e-6 * std::pow(1e12 * a0_max / a0_min, t));
    }
    for (double a0 : a0_values) {
        for (double r : radii) {
            std::complex<double> lam = r * ray;
            double num = std::abs(lam - a0);
            C = std::min(C, num / (r + 1.0));
            num = std::abs(std::conj(lam) - a0);
            C = std::min(C, num / (r + 1.0));
        }
    }
    rep.bound_constant = C;
    rep.elliptic = C > 0.0;
    return rep;
}

std::string SymbolReport::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"elliptic\":" << (elliptic ? "true" : "false") << ",\"min_symbol\":" << min_symbol
       << ",\"bound_constant\":" << bound_constant << ",\"samples\":" << samples << "}";
    return os.str();
}

}  // namespace wentzell
