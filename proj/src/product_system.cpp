#include "wentzell/product_system.hpp"

#include <cmath>

#include "wentzell/errors.hpp"

namespace wentzell {

namespace {

Eigen::VectorXd boundary_beta_weights(const Mesh& mesh, const ScalarField& beta) {
    Eigen::VectorXd wb(mesh.boundary_count());
    for (int j = 0; j < mesh.boundary_count(); ++j) {
        int bn = mesh.boundary_nodes[j];
        double b = beta.at(mesh.nodes[bn][0], mesh.nodes[bn][1]);
        if (!(b > 0.0))
            throw Error(ErrorKind::hypothesis_violation, "beta must be bounded below by eta > 0");
        wb[j] = mesh.boundary_weights[j] / b;
    }
    return wb;
}

}  // namespace

Eigen::MatrixXd assemble_product_mass(const Mesh& mesh, const ScalarField& beta, MassMode mode) {
    Eigen::MatrixXd MH = assemble_mass(mesh, mode);
    Eigen::VectorXd wb = boundary_beta_weights(mesh, beta);
    for (int j = 0; j < mesh.boundary_count(); ++j) MH(mesh.boundary_nodes[j], mesh.boundary_nodes[j]) += wb[j];
    return MH;
}

const Eigen::LLT<Eigen::MatrixXd>& WentzellSystem::mass_llt() const {
    if (!mass_llt_) {
        Eigen::LLT<Eigen::MatrixXd> llt(M_H);
        if (llt.info() != Eigen::Success)
            throw Error(ErrorKind::not_spd, "product mass M_H is not SPD");
        mass_llt_ = std::move(llt);
    }
    return *mass_llt_;
}

WentzellSystem assemble_wentzell_form(std::shared_ptr<const RealizedOperator> op,
                                      const ScalarField& alpha, const ScalarField& gamma,
                                      const ScalarField& beta, int k) {
    if (k < 1) throw Error(ErrorKind::precondition, "order power k must be >= 1");
    const Mesh& mesh = *op->mesh;
    const int N = op->size();

    WentzellSystem sys;
    sys.op = op;
    sys.order_power = k;

    // alpha-weighted interior mass and its Cholesky factor
    Eigen::MatrixXd Malpha = assemble_mass(mesh, op->mode, &alpha);
    Eigen::LLT<Eigen::MatrixXd> llt_a(Malpha);
    if (llt_a.info() != Eigen::Success)
        throw Error(ErrorKind::assembly_error, "alpha-weighted mass is not SPD");

    // P = B_h for the fourth-order case, B_h^{2k} on the higher-order path
    Eigen::MatrixXd P;
    if (k == 1) {
        P = op->mass_llt().solve(op->system_matrix());
    } else {
        if (!op->q_is_identity || !op->delta_is_zero)
            throw Error(ErrorKind::unsupported,
                        "higher-order path (k > 1) requires Q = identity and delta = 0");
        Eigen::MatrixXd Y = op->mass_llt().solve(op->K);
        P = Y;
        for (int i = 1; i < 2 * k; ++i) P = Y * P;
    }
    Eigen::MatrixXd Gcore = llt_a.matrixU() * P;

    // boundary gamma weights beta^{-1} gamma w
    Eigen::VectorXd wb = boundary_beta_weights(mesh, beta);
    sys.beta_weights = wb;
    sys.gamma_weights.resize(mesh.boundary_count());
    sys.cneg = Eigen::VectorXd::Zero(N);
    int n_pos = 0;
    for (int j = 0; j < mesh.boundary_count(); ++j) {
        int bn = mesh.boundary_nodes[j];
        double c = gamma.at(mesh.nodes[bn][0], mesh.nodes[bn][1]) * wb[j];
        sys.gamma_weights[j] = c;
        if (c > 0.0)
            ++n_pos;
        else if (c < 0.0)
            sys.cneg[bn] += c;
    }
    sys.G.resize(Gcore.rows() + n_pos, N);
    sys.G.topRows(Gcore.rows()) = Gcore;
    int row = static_cast<int>(Gcore.rows());
    for (int j = 0; j < mesh.boundary_count(); ++j) {
        if (sys.gamma_weights[j] > 0.0) {
            sys.G.row(row).setZero();
            sys.G(row, mesh.boundary_nodes[j]) = std::sqrt(sys.gamma_weights[j]);
            ++row;
        }
    }

    // A = G'G + diag(cneg), exactly symmetric by construction
    sys.A = Eigen::MatrixXd::Zero(N, N);
    sys.A.selfadjointView<Eigen::Lower>().rankUpdate(sys.G.transpose());
    sys.A.triangularView<Eigen::StrictlyUpper>() = sys.A.transpose();
    sys.A.diagonal() += sys.cneg;

    sys.M_H = op->M;
    for (int j = 0; j < mesh.boundary_count(); ++j)
        sys.M_H(mesh.boundary_nodes[j], mesh.boundary_nodes[j]) += wb[j];
    sys.mass_llt();  // fail fast if not SPD

    sys.structural_kernel =
        op->delta_is_zero && (sys.gamma_weights.array() == 0.0).all();
    return sys;
}

WentzellSystem build_wentzell_system(const Mesh& mesh, const CoefficientSet& coeffs, MassMode mode,
                                     int k) {
    auto op = std::make_shared<RealizedOperator>(build_realized_operator(mesh, coeffs, mode));
    return assemble_wentzell_form(op, coeffs.alpha, coeffs.gamma, coeffs.beta, k);
}

ProductState project_to_coupled(const WentzellSystem& system, const ProductState& f) {
    const TraceMap& tr = system.trace();
    const int N = system.size();
    if (f.u1.size() != N || f.u2.size() != tr.size())
        throw Error(ErrorKind::shape_error, "project_to_coupled: state length mismatch");
    Eigen::VectorXd rhs =
        system.op->M * f.u1 + tr.scatter(system.beta_weights.cwiseProduct(f.u2), N);
    Eigen::VectorXd v1 = system.mass_llt().solve(rhs);
    return make_coupled(tr, std::move(v1));
}

double conserved_pairing(const WentzellSystem& system, const ProductState& f) {
    double interior = f.u1.dot(system.op->M.rowwise().sum());
    double boundary = system.beta_weights.dot(f.u2);
    return interior + boundary;
}

}  // namespace wentzell
