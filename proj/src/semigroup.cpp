#include "wentzell/semigroup.hpp"

#include <cmath>

#include "wentzell/errors.hpp"
#include "wentzell/parallel.hpp"

namespace wentzell {

Eigen::VectorXd modal_coefficients(const WentzellSystem& system, const EigenDecomposition& decomp,
                                   const Eigen::VectorXd& f) {
    if (f.size() != system.size())
        throw Error(ErrorKind::shape_error, "modal_coefficients: vector length mismatch");
    return decomp.eigenvectors.transpose() * (system.M_H * f);
}

Trajectory evolve_spectral(const WentzellSystem& system, const EigenDecomposition& decomp,
                           const Eigen::VectorXd& f, const std::vector<double>& times) {
    const int N = system.size();
    Eigen::VectorXd c = modal_coefficients(system, decomp, f);
    Trajectory traj;
    traj.method = "spectral";
    traj.times = times;
    traj.states.resize(N, static_cast<int>(times.size()));
    if (decomp.count() < N) {
        traj.truncated = true;
        double total = f.dot(system.M_H * f);
        traj.dropped_mass = std::max(0.0, total - c.squaredNorm());
    }
    parallel_for(static_cast<int>(times.size()), [&](int i) {
        Eigen::VectorXd damped =
            (-decomp.eigenvalues.array() * times[i]).exp().matrix().cwiseProduct(c);
        traj.states.col(i) = decomp.eigenvectors * damped;
    });
    return traj;
}

Trajectory step_theta(const WentzellSystem& system, const Eigen::VectorXd& f, double dt,
                      double theta, int nsteps) {
    const int N = system.size();
    if (f.size() != N) throw Error(ErrorKind::shape_error, "step_theta: vector length mismatch");
    if (!(dt > 0.0)) throw Error(ErrorKind::precondition, "step_theta: dt must be positive");
    if (theta < 0.5 || theta > 1.0)
        throw Error(ErrorKind::precondition, "step_theta: theta must lie in [0.5, 1]");
    if (nsteps < 0) throw Error(ErrorKind::precondition, "step_theta: nsteps must be >= 0");

    Trajectory traj;
    traj.method = "theta(" + std::to_string(theta) + "," + std::to_string(dt) + ")";
    traj.times.resize(nsteps + 1);
    traj.states.resize(N, nsteps + 1);
    for (int m = 0; m <= nsteps; ++m) traj.times[m] = dt * m;
    traj.states.col(0) = f;

    if (system.structural_kernel) {
        // Deflated stepping: B1 = Z'Z with Z = [L'; sqrt(theta dt) G]; the
        // kernel coefficient p is the exact invariant.
        const int rows = static_cast<int>(system.G.rows());
        Eigen::MatrixXd Z(N + rows, N);
        Z.topRows(N) = system.mass_llt().matrixU();
        Z.bottomRows(rows) = std::sqrt(theta * dt) * system.G;
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
        Eigen::MatrixXd R = qr.matrixQR().topRows(N).triangularView<Eigen::Upper>();

        Eigen::VectorXd khat = Eigen::VectorXd::Ones(N) / std::sqrt(system.total_mass());
        Eigen::VectorXd mk = system.M_H * khat;
        double p = mk.dot(f);
        Eigen::VectorXd v = f - p * khat;
        v -= (mk.dot(v)) * khat;
        for (int m = 1; m <= nsteps; ++m) {
            Eigen::VectorXd rhs = system.M_H * v;
            if (theta < 1.0) rhs -= (1.0 - theta) * dt * system.apply_A(v);
            Eigen::VectorXd y = R.transpose().triangularView<Eigen::Lower>().solve(rhs);
            v = R.triangularView<Eigen::Upper>().solve(y);
            v -= (mk.dot(v)) * khat;
            traj.states.col(m) = p * khat + v;
        }
        return traj;
    }

    Eigen::MatrixXd B1 = system.M_H + theta * dt * system.A;
    Eigen::LLT<Eigen::MatrixXd> llt(B1);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::not_spd,
                    "M_H + theta dt A is not positive definite (lambda_1 < 0 with this dt)");
    Eigen::VectorXd u = f;
    for (int m = 1; m <= nsteps; ++m) {
        Eigen::VectorXd rhs = system.M_H * u;
        if (theta < 1.0) rhs -= (1.0 - theta) * dt * system.apply_A(u);
        u = llt.solve(rhs);
        traj.states.col(m) = u;
    }
    return traj;
}

SteadyState steady_state(const WentzellSystem& system, const ProductState& f) {
    SteadyState out;
    const int N = system.size();
    bool gamma_zero = (system.gamma_weights.array() == 0.0).all();
    if (!gamma_zero || !system.op->delta_is_zero) {
        out.value = 0.0;
        out.decays_to_zero = true;
        out.state = Eigen::VectorXd::Zero(N);
        return out;
    }
    double paired = conserved_pairing(system, f);
    out.value = paired / system.total_mass();
    out.state = Eigen::VectorXd::Constant(N, out.value);
    return out;
}

PositivityReport positivity_scan(const WentzellSystem& system, const EigenDecomposition& decomp,
                                 const ProductState& f, const std::vector<double>& t_grid,
                                 double epsilon) {
    if ((f.u1.array() < 0.0).any() || (f.u2.array() < 0.0).any())
        throw Error(ErrorKind::precondition, "positivity_scan requires nonnegative initial data");
    if (f.u1.cwiseAbs().maxCoeff() == 0.0 && f.u2.cwiseAbs().maxCoeff() == 0.0)
        throw Error(ErrorKind::precondition, "positivity_scan requires a nonzero initial datum");
    if (t_grid.empty()) throw Error(ErrorKind::precondition, "positivity_scan: empty time grid");

    ProductState coupled = f.is_coupled(system.trace()) ? f : project_to_coupled(system, f);
    PositivityReport rep;
    rep.epsilon = epsilon >= 0.0
                      ? epsilon
                      : 1e-3 * conserved_pairing(system, coupled) / system.total_mass();
    Trajectory traj = evolve_spectral(system, decomp, coupled.u1, t_grid);
    rep.times = t_grid;
    rep.min_values.resize(t_grid.size());
    rep.dip_value = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < t_grid.size(); ++i) {
        int node = 0;
        double mn = traj.states.col(static_cast<int>(i)).minCoeff(&node);
        rep.min_values[i] = mn;
        if (mn < rep.dip_value) {
            rep.dip_value = mn;
            rep.dip_node = node;
            rep.dip_time = t_grid[i];
        }
    }
    // t0: smallest grid time after which the minimum stays >= epsilon
    int last_bad = -1;
    for (int i = static_cast<int>(t_grid.size()) - 1; i >= 0; --i) {
        if (rep.min_values[i] < rep.epsilon) {
            last_bad = i;
            break;
        }
    }
    if (last_bad < 0) {
        rep.t0 = 0.0;
        rep.t0_finite = true;
    } else if (last_bad + 1 < static_cast<int>(t_grid.size())) {
        rep.t0 = t_grid[last_bad + 1];
        rep.t0_finite = true;
    } else {
        rep.t0 = std::numeric_limits<double>::infinity();
        rep.t0_finite = false;
    }
    return rep;
}

}  // namespace wentzell
