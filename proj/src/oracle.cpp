#include <cmath>
#include <vector>

#include "wentzell/errors.hpp"
#include "wentzell/parallel.hpp"
#include "wentzell/spectral.hpp"

namespace wentzell {

namespace {

struct BasisEval {
    // rows: value, first, second, third derivative; columns: the 4 basis fns
    Eigen::Matrix4d d;
};

// Basis {cosh wx, sinh wx, cos wx, sin wx}. At the right endpoint every row
// is premultiplied by exp(-w x) so the entries stay in floating range; a
// positive row scaling moves no roots.
BasisEval eval_trig(double omega, double x, bool scaled) {
    double C, S, c, s;
    if (scaled) {
        double e = std::exp(-2.0 * omega * x);
        C = 0.5 * (1.0 + e);
        S = 0.5 * (1.0 - e);
        double damp = std::exp(-omega * x);
        c = std::cos(omega * x) * damp;
        s = std::sin(omega * x) * damp;
    } else {
        C = std::cosh(omega * x);
        S = std::sinh(omega * x);
        c = std::cos(omega * x);
        s = std::sin(omega * x);
    }
    BasisEval b;
    double w1 = omega, w2 = omega * omega, w3 = w2 * omega;
    b.d.row(0) << C, S, c, s;
    b.d.row(1) << w1 * S, w1 * C, -w1 * s, w1 * c;
    b.d.row(2) << w2 * C, w2 * S, -w2 * c, -w2 * s;
    b.d.row(3) << w3 * S, w3 * C, w3 * s, -w3 * c;
    return b;
}

BasisEval eval_poly(double x) {
    BasisEval b;
    b.d.row(0) << 1.0, x, x * x, x * x * x;
    b.d.row(1) << 0.0, 1.0, 2.0 * x, 3.0 * x * x;
    b.d.row(2) << 0.0, 0.0, 2.0, 6.0 * x;
    b.d.row(3) << 0.0, 0.0, 0.0, 6.0;
    return b;
}

double boundary_determinant(double lambda, double q, double a, double b, double g, double d,
                            double length, bool poly) {
    double omega = poly ? 0.0 : std::pow(lambda / (a * q * q), 0.25);
    Eigen::Matrix4d D;
    int r = 0;
    for (int side = 0; side < 2; ++side) {
        double x = side == 0 ? 0.0 : length;
        double nu = side == 0 ? -1.0 : 1.0;
        BasisEval be = poly ? eval_poly(x) : eval_trig(omega, x, side == 1);
        // Robin row: nu q u' + d u
        D.row(r++) = nu * q * be.d.row(1) + d * be.d.row(0);
        // dynamic row: -b nu a q^2 u''' - b d a q u'' + (g - lambda) u
        D.row(r++) = -b * nu * a * q * q * be.d.row(3) - b * d * a * q * be.d.row(2) +
                     (g - lambda) * be.d.row(0);
    }
    for (int i = 0; i < 4; ++i) {
        double m = D.row(i).cwiseAbs().maxCoeff();
        if (m > 0.0) D.row(i) /= m;
    }
    return D.determinant();
}

}  // namespace

double oracle_determinant(double lambda, double q, double a, double b, double g, double d,
                          double length) {
    return boundary_determinant(lambda, q, a, b, g, d, length, false);
}

OracleResult oracle_eigenvalues_interval(double q, double a, double b, double g, double d,
                                         double length, int count) {
    if (!(q > 0.0 && a > 0.0 && b > 0.0))
        throw Error(ErrorKind::precondition, "oracle requires q, a, b > 0");
    if (d < 0.0) throw Error(ErrorKind::precondition, "oracle requires d >= 0");
    if (!(length > 0.0)) throw Error(ErrorKind::invalid_domain, "oracle requires length > 0");
    if (count < 1) throw Error(ErrorKind::precondition, "oracle requires count >= 1");

    std::vector<double> roots;
    if (std::abs(boundary_determinant(0.0, q, a, b, g, d, length, true)) <= 1e-12)
        roots.push_back(0.0);

    // geometric scan grid, 64 points per decade from 1e-6 to 1e8
    const double lo = 1e-6, hi = 1e8;
    const int per_decade = 64;
    const int npts = static_cast<int>(std::log10(hi / lo) * per_decade) + 1;
    std::vector<double> grid(npts), det(npts);
    for (int i = 0; i < npts; ++i)
        grid[i] = lo * std::pow(10.0, static_cast<double>(i) / per_decade);
    parallel_for(npts, [&](int i) {
        det[i] = boundary_determinant(grid[i], q, a, b, g, d, length, false);
    });

    for (int i = 1; i < npts && static_cast<int>(roots.size()) < count; ++i) {
        double f0 = det[i - 1], f1 = det[i];
        if (f0 == 0.0) {
            roots.push_back(grid[i - 1]);
            continue;
        }
        if (std::signbit(f0) == std::signbit(f1) || f1 == 0.0) {
            if (f1 == 0.0) roots.push_back(grid[i]);
            continue;
        }
        double a_ = grid[i - 1], b_ = grid[i];
        for (int it = 0; it < 200 && (b_ - a_) > 1e-10 * b_; ++it) {
            double mid = std::sqrt(a_ * b_);
            double fm = boundary_determinant(mid, q, a, b, g, d, length, false);
            if (fm == 0.0) {
                a_ = b_ = mid;
                break;
            }
            if (std::signbit(fm) == std::signbit(f0))
                a_ = mid;
            else
                b_ = mid;
        }
        roots.push_back(0.5 * (a_ + b_));
    }

    OracleResult out;
    out.complete = static_cast<int>(roots.size()) >= count;
    int n = std::min<int>(count, static_cast<int>(roots.size()));
    out.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) out.eigenvalues[i] = roots[i];
    return out;
}

}  // namespace wentzell
