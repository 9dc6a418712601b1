#include "wentzell/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wentzell/errors.hpp"

namespace wentzell {

EigenDecomposition eig_generalized(const WentzellSystem& system, int count) {
    const int N = system.size();
    if (count < 1 || count > N)
        throw Error(ErrorKind::precondition,
                    "eigenpair count must lie in [1, N]; got " + std::to_string(count) +
                        " with N = " + std::to_string(N));

    EigenDecomposition dec;
    const auto& llt = system.mass_llt();

    Eigen::VectorXd lam(N);
    Eigen::MatrixXd X(N, N);
    const bool definite = (system.cneg.array() == 0.0).all();
    if (definite) {
        // H = G L^{-T}; eigenvalues are sigma^2, eigenvectors L^{-T} v.
        Eigen::MatrixXd HT = llt.matrixL().solve(system.G.transpose());
        Eigen::BDCSVD<Eigen::MatrixXd> svd(HT.transpose(), Eigen::ComputeThinV);
        const Eigen::VectorXd& sv = svd.singularValues();  // descending
        const Eigen::MatrixXd& V = svd.matrixV();
        const int m = static_cast<int>(sv.size());
        for (int i = 0; i < N; ++i) {
            if (i < m) {
                int j = m - 1 - i;  // ascending
                lam[i] = sv[j] * sv[j];
                X.col(i) = V.col(j);
            } else {  // rank-deficient factor rows (never at desk scale)
                lam[i] = 0.0;
                X.col(i).setZero();
            }
        }
        X = llt.matrixU().solve(X);
    } else {
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(system.A, system.M_H);
        if (es.info() != Eigen::Success)
            throw Error(ErrorKind::not_spd, "generalized eigensolver failed on (A, M_H)");
        lam = es.eigenvalues();
        X = es.eigenvectors();
    }

    // Exact-kernel snap: with gamma == 0 and delta == 0 the constants span
    // the kernel of the assembled A (stiffness rows sum to zero exactly), so
    // the kernel eigenvector is taken as 1/||1||_H and the rest are
    // re-orthogonalized against it.
    if (system.structural_kernel && N >= 2) {
        Eigen::VectorXd ones = Eigen::VectorXd::Ones(N);
        double s2 = system.total_mass();
        double ray1 = (system.G * ones).squaredNorm() / s2;
        if (ray1 <= 1e-13 * std::max(lam[1], 1.0)) {
            Eigen::VectorXd khat = ones / std::sqrt(s2);
            lam[0] = ray1;
            X.col(0) = khat;
            Eigen::VectorXd mk = system.M_H * khat;
            for (int pass = 0; pass < 2; ++pass) {
                Eigen::RowVectorXd coef = mk.transpose() * X.rightCols(N - 1);
                X.rightCols(N - 1).noalias() -= khat * coef;
            }
            for (int j = 1; j < N; ++j) X.col(j) /= system.h_norm(X.col(j));
            dec.kernel_snapped = true;
        }
    }

    dec.eigenvalues = lam.head(count);
    dec.eigenvectors = X.leftCols(count);

    double a_norm = system.A.cwiseAbs().rowwise().sum().maxCoeff();
    dec.residuals.resize(count);
    for (int k = 0; k < count; ++k) {
        Eigen::VectorXd r = system.apply_A(dec.eigenvectors.col(k)) -
                            dec.eigenvalues[k] * (system.M_H * dec.eigenvectors.col(k));
        dec.residuals[k] = r.norm() / std::max(a_norm, 1e-300);
    }
    return dec;
}

int kernel_dimension(const EigenDecomposition& decomp, double tol) {
    if (decomp.count() == 0) return 0;
    double scale = std::max(1.0, std::abs(decomp.eigenvalues[decomp.count() - 1]));
    int n = 0;
    for (int k = 0; k < decomp.count(); ++k)
        if (std::abs(decomp.eigenvalues[k]) <= tol * scale) ++n;
    return n;
}

}  // namespace wentzell
