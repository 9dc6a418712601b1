#include "wentzell/elliptic.hpp"

#include <cmath>

#include "wentzell/errors.hpp"

namespace wentzell {

namespace {

// Q1 shape data on the reference square at a Gauss point (order 00,10,11,01).
struct ShapeEval {
    Eigen::Vector4d N;
    Eigen::Matrix<double, 2, 4> grad;  // physical gradients
};

ShapeEval q1_shapes(double gx, double gy, double hx, double hy) {
    ShapeEval s;
    s.N << 0.25 * (1 - gx) * (1 - gy), 0.25 * (1 + gx) * (1 - gy), 0.25 * (1 + gx) * (1 + gy),
        0.25 * (1 - gx) * (1 + gy);
    s.grad.row(0) << -0.25 * (1 - gy) * 2 / hx, 0.25 * (1 - gy) * 2 / hx,
        0.25 * (1 + gy) * 2 / hx, -0.25 * (1 + gy) * 2 / hx;
    s.grad.row(1) << -0.25 * (1 - gx) * 2 / hy, -0.25 * (1 + gx) * 2 / hy,
        0.25 * (1 + gx) * 2 / hy, 0.25 * (1 - gx) * 2 / hy;
    return s;
}

void add_symmetric(Eigen::MatrixXd& A, const std::vector<int>& dofs,
                   const Eigen::MatrixXd& local) {
    const int m = static_cast<int>(dofs.size());
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) A(dofs[a], dofs[b]) += local(a, b);
}

}  // namespace

Eigen::MatrixXd assemble_mass(const Mesh& mesh, MassMode mode, const ScalarField* weight) {
    const int N = mesh.node_count();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
    if (mesh.dimension == 1) {
        for (int e = 0; e < mesh.element_count(); ++e) {
            const auto& el = mesh.elements[e];
            double h = mesh.element_volumes[e];
            double c = 1.0;
            if (weight) {
                auto qp = cell_quadrature(mesh, e)[0];
                c = weight->on_cell(e, qp.x, qp.y);
            }
            Eigen::Matrix2d Me;
            Me << 2, 1, 1, 2;
            Me *= c * h / 6.0;
            add_symmetric(M, el, Me);
        }
    } else {
        for (int e = 0; e < mesh.element_count(); ++e) {
            const auto& el = mesh.elements[e];
            double hx = mesh.nodes[el[1]][0] - mesh.nodes[el[0]][0];
            double hy = mesh.nodes[el[3]][1] - mesh.nodes[el[0]][1];
            double xm = 0.5 * (mesh.nodes[el[0]][0] + mesh.nodes[el[1]][0]);
            double ym = 0.5 * (mesh.nodes[el[0]][1] + mesh.nodes[el[3]][1]);
            Eigen::Matrix4d Me = Eigen::Matrix4d::Zero();
            const double g = 1.0 / std::sqrt(3.0);
            for (double gx : {-g, g})
                for (double gy : {-g, g}) {
                    ShapeEval s = q1_shapes(gx, gy, hx, hy);
                    double c = 1.0;
                    if (weight)
                        c = weight->on_cell(e, xm + 0.5 * hx * gx, ym + 0.5 * hy * gy);
                    double wq = c * 0.25 * hx * hy;
                    for (int a = 0; a < 4; ++a)
                        for (int b = a; b < 4; ++b) {
                            double v = wq * s.N[a] * s.N[b];
                            Me(a, b) += v;
                            if (b != a) Me(b, a) += v;
                        }
                }
            add_symmetric(M, el, Me);
        }
    }
    if (mode == MassMode::lumped) {
        Eigen::VectorXd d = M.rowwise().sum();
        M.setZero();
        M.diagonal() = d;
    }
    return M;
}

StiffnessResult assemble_stiffness(const Mesh& mesh, const MatrixField& Q) {
    const int N = mesh.node_count();
    StiffnessResult out;
    out.K = Eigen::MatrixXd::Zero(N, N);
    if (mesh.dimension == 1) {
        out.factor_rows = Eigen::MatrixXd::Zero(mesh.element_count(), N);
        for (int e = 0; e < mesh.element_count(); ++e) {
            const auto& el = mesh.elements[e];
            double h = mesh.element_volumes[e];
            auto qp = cell_quadrature(mesh, e)[0];
            double q = Q.on_cell(1, e, qp.x, qp.y)(0, 0);
            if (!(q > 0.0))
                throw Error(ErrorKind::hypothesis_violation, "Q must be positive for assembly");
            double k = q / h;
            Eigen::Matrix2d Ke;
            Ke << k, -k, -k, k;
            add_symmetric(out.K, el, Ke);
            double r = std::sqrt(k);
            out.factor_rows(e, el[0]) = -r;
            out.factor_rows(e, el[1]) = r;
        }
        return out;
    }
    out.factor_rows = Eigen::MatrixXd::Zero(8 * mesh.element_count(), N);
    const double g = 1.0 / std::sqrt(3.0);
    int row = 0;
    for (int e = 0; e < mesh.element_count(); ++e) {
        const auto& el = mesh.elements[e];
        double hx = mesh.nodes[el[1]][0] - mesh.nodes[el[0]][0];
        double hy = mesh.nodes[el[3]][1] - mesh.nodes[el[0]][1];
        double xm = 0.5 * (mesh.nodes[el[0]][0] + mesh.nodes[el[1]][0]);
        double ym = 0.5 * (mesh.nodes[el[0]][1] + mesh.nodes[el[3]][1]);
        Eigen::Matrix4d Ke = Eigen::Matrix4d::Zero();
        for (double gx : {-g, g})
            for (double gy : {-g, g}) {
                ShapeEval s = q1_shapes(gx, gy, hx, hy);
                Eigen::Matrix2d Qv =
                    Q.on_cell(2, e, xm + 0.5 * hx * gx, ym + 0.5 * hy * gy);
                Qv = 0.5 * (Qv + Qv.transpose());
                double wq = 0.25 * hx * hy;
                Eigen::Matrix<double, 2, 4> QG = Qv * s.grad;
                for (int a = 0; a < 4; ++a)
                    for (int b = a; b < 4; ++b) {
                        double v = wq * s.grad.col(a).dot(QG.col(b));
                        Ke(a, b) += v;
                        if (b != a) Ke(b, a) += v;
                    }
                // factor rows: sqrt(wq) * L' grad with Qv = L L'
                Eigen::LLT<Eigen::Matrix2d> llt(Qv);
                if (llt.info() != Eigen::Success)
                    throw Error(ErrorKind::hypothesis_violation,
                                "Q not positive definite at a quadrature point");
                Eigen::Matrix<double, 2, 4> F = llt.matrixL().transpose() * s.grad;
                F *= std::sqrt(wq);
                for (int d = 0; d < 2; ++d, ++row)
                    for (int a = 0; a < 4; ++a) out.factor_rows(row, el[a]) = F(d, a);
            }
        // exact zero row sums (partition of unity)
        for (int a = 0; a < 4; ++a) {
            double offsum = 0.0;
            for (int b = 0; b < 4; ++b)
                if (b != a) offsum += Ke(a, b);
            Ke(a, a) = -offsum;
        }
        add_symmetric(out.K, el, Ke);
    }
    return out;
}

Eigen::VectorXd assemble_boundary_mass(const Mesh& mesh, const ScalarField& weight) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(mesh.node_count());
    for (int j = 0; j < mesh.boundary_count(); ++j) {
        int bn = mesh.boundary_nodes[j];
        d[bn] = weight.at(mesh.nodes[bn][0], mesh.nodes[bn][1]) * mesh.boundary_weights[j];
    }
    return d;
}

const Eigen::LLT<Eigen::MatrixXd>& RealizedOperator::mass_llt() const {
    if (!mass_llt_) {
        Eigen::LLT<Eigen::MatrixXd> llt(M);
        if (llt.info() != Eigen::Success)
            throw Error(ErrorKind::assembly_error, "interior mass matrix is not SPD");
        mass_llt_ = std::move(llt);
    }
    return *mass_llt_;
}

Eigen::VectorXd RealizedOperator::apply_mass_inverse(const Eigen::VectorXd& v) const {
    return mass_llt().solve(v);
}

Eigen::VectorXd RealizedOperator::apply_Bh(const Eigen::VectorXd& u) const {
    if (u.size() != size()) throw Error(ErrorKind::shape_error, "vector length mismatch");
    Eigen::VectorXd s = K * u;
    s += mgd.cwiseProduct(u);
    return apply_mass_inverse(s);
}

double RealizedOperator::semibound() const {
    if (semibound_) return *semibound_;
    const int N = size();
    // Rayleigh quotient through the factor rows: exact zero for constants.
    auto rayleigh = [&](const Eigen::VectorXd& x) {
        double num = (stiffness_factor * x).squaredNorm() + x.dot(mgd.cwiseProduct(x));
        double den = x.dot(M * x);
        return num / den;
    };
    // shifted inverse iteration on (S + M, M); deterministic start
    Eigen::MatrixXd B = system_matrix() + M;
    Eigen::LLT<Eigen::MatrixXd> llt(B);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::assembly_error, "shifted subsidiary operator is not SPD");
    Eigen::VectorXd x = Eigen::VectorXd::Ones(N);
    for (int i = 0; i < N; ++i) x[i] += 1e-3 * std::cos(2.0 * i + 0.7);
    x /= std::sqrt(x.dot(M * x));
    double lam = rayleigh(x);
    for (int it = 0; it < 200; ++it) {
        x = llt.solve(M * x);
        x /= std::sqrt(x.dot(M * x));
        double next = rayleigh(x);
        bool done = std::abs(next - lam) <= 1e-14 * std::max(1.0, std::abs(next));
        lam = next;
        if (done && it >= 3) break;
    }
    semibound_ = lam;
    return lam;
}

RealizedOperator discrete_realization(std::shared_ptr<const Mesh> mesh, Eigen::MatrixXd M_omega,
                                      StiffnessResult K, Eigen::VectorXd M_gamma_delta,
                                      MassMode mode) {
    RealizedOperator op;
    op.mesh = mesh;
    op.trace = boundary_trace_map(*mesh);
    op.mode = mode;
    op.M = std::move(M_omega);
    op.K = std::move(K.K);
    op.stiffness_factor = std::move(K.factor_rows);
    op.mgd = std::move(M_gamma_delta);
    if (op.mgd.size() != op.M.rows())
        throw Error(ErrorKind::shape_error, "boundary mass diagonal has wrong length");
    op.delta_is_zero = (op.mgd.array() == 0.0).all();
    if (mode == MassMode::lumped && (op.M.diagonal().array() <= 0.0).any())
        throw Error(ErrorKind::assembly_error, "lumped mass has a nonpositive diagonal entry");
    op.mass_llt();  // fail fast on a singular mass
    return op;
}

RealizedOperator build_realized_operator(const Mesh& mesh, const CoefficientSet& coeffs,
                                         MassMode mode) {
    require_valid(mesh, coeffs);
    auto meshp = std::make_shared<Mesh>(mesh);
    RealizedOperator op =
        discrete_realization(meshp, assemble_mass(mesh, mode), assemble_stiffness(mesh, coeffs.Q),
                             assemble_boundary_mass(mesh, coeffs.delta), mode);
    op.q_is_identity = coeffs.Q.is_identity_constant();
    return op;
}

Eigen::VectorXd weak_conormal_trace(const RealizedOperator& op, const Eigen::VectorXd& u,
                                    const Eigen::VectorXd& w) {
    if (u.size() != op.size() || w.size() != op.size())
        throw Error(ErrorKind::shape_error, "weak_conormal_trace: vector length mismatch");
    Eigen::VectorXd r = op.K * u - op.M * w;
    Eigen::VectorXd g = op.trace.restrict_to_boundary(r);
    return g.cwiseQuotient(op.trace.weight);
}

SecondOrderSolution solve_second_order(const RealizedOperator& op, double lambda,
                                       const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
    const int N = op.size();
    if (f.size() != N || g.size() != op.trace.size())
        throw Error(ErrorKind::shape_error, "solve_second_order: data length mismatch");
    if (lambda < 0.0) throw Error(ErrorKind::precondition, "lambda must be nonnegative");

    Eigen::VectorXd rhs = op.M * f + op.trace.scatter(g.cwiseProduct(op.trace.weight), N);
    Eigen::MatrixXd S = op.system_matrix();
    SecondOrderSolution sol;

    const bool singular_neumann = (lambda == 0.0) && op.delta_is_zero;
    if (!singular_neumann) {
        Eigen::MatrixXd B = S;
        B += lambda * op.M;
        Eigen::LLT<Eigen::MatrixXd> llt(B);
        if (llt.info() != Eigen::Success)
            throw Error(ErrorKind::not_spd, "stationary system is not positive definite");
        sol.u = llt.solve(rhs);
        sol.residual = (B * sol.u - rhs).norm() / std::max(rhs.norm(), 1e-300);
        return sol;
    }

    // Pure Neumann at lambda = 0: constants span the kernel. Solvable iff the
    // data are orthogonal to constants; the defect is int f + int g.
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(N);
    double defect = ones.dot(rhs);
    double scale = rhs.cwiseAbs().sum() + (op.M * f.cwiseAbs()).cwiseAbs().sum();
    if (std::abs(defect) > 1e-10 * std::max(scale, 1e-30))
        throw Error(ErrorKind::singular_system,
                    "incompatible Neumann data: compatibility defect (int f + int g) = " +
                        std::to_string(defect));
    Eigen::VectorXd m1 = op.M * ones;
    Eigen::VectorXd rhs0 = rhs - (defect / m1.dot(ones)) * m1;
    Eigen::MatrixXd B(N + 1, N + 1);
    B.setZero();
    B.topLeftCorner(N, N) = S;
    B.topRightCorner(N, 1) = m1;
    B.bottomLeftCorner(1, N) = m1.transpose();
    Eigen::VectorXd r(N + 1);
    r.head(N) = rhs0;
    r[N] = 0.0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    Eigen::VectorXd x = lu.solve(r);
    sol.u = x.head(N);
    sol.u -= (m1.dot(sol.u) / m1.dot(ones)) * ones;  // exact mean-zero representative
    sol.residual = (S * sol.u - rhs0).norm() / std::max(rhs0.norm(), 1e-300);
    sol.mean_zero_branch = true;
    return sol;
}

}  // namespace wentzell
