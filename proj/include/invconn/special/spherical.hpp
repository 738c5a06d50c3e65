#pragma once

#include "invconn/core/groups.hpp"
#include "invconn/special/solution_space.hpp"

namespace invconn {

// kappa_j = psi(0, e_j) at x = lambda e_1, stored as the columns of a 3x3 matrix of su(2) coordinates.
struct SphericalSolution {
    double lambda = 0.0;
    Index dim = 0;
    RMat basis;  // 9 x dim, column-major vec of the kappa matrix
    RMat pattern;  // 9 x 3: the (r, s, t) directions
    double pattern_residual = 0.0;
    bool fitted = false;
    double r = 0.0, s = 0.0, t = 0.0;
    double a = 0.0, b = 0.0, c = 0.0;
    double fit_residual = 0.0;
};

inline RMat spherical_pattern(double r, double s, double t) {
    RMat k = RMat::Zero(3, 3);
    k(0, 0) = r;
    k(1, 1) = s;
    k(2, 1) = t;
    k(2, 2) = s;
    k(1, 2) = -t;
    return k;
}

// [tau_i, kappa_j] = 2 eps_{ijk} kappa_k for the listed axes i
inline RMat isotropy_constraints(const std::vector<int>& axes) {
    auto grp = su2();
    RMat a(0, 9);
    for (int i : axes) {
        const RMat ad = grp->ad_matrix(Vec::Unit(3, i));  // from matrix brackets
        const RMat rot = su2_covering_generator(i);       // 2 eps_{ijk} in (k, j)
        RMat block = left_multiply_rows(ad, 3) - right_multiply_rows(3, rot);
        RMat na(a.rows() + block.rows(), 9);
        na << a, block;
        a = std::move(na);
    }
    return a;
}

inline SphericalSolution spherical_solve(double lambda, const RMat* kappa = nullptr) {
    if (!(lambda > 0.0)) throw InvalidArgument("spherical_solve: lambda must be positive");
    SphericalSolution out;
    out.lambda = lambda;
    const RMat a = isotropy_constraints({0});
    out.basis = null_space(a);
    out.dim = out.basis.cols();
    if (out.dim != 3) throw InternalConsistency("spherical constraints do not have a 3-dimensional solution space");
    out.pattern.resize(9, 3);
    out.pattern.col(0) = vec(spherical_pattern(1, 0, 0));
    out.pattern.col(1) = vec(spherical_pattern(0, 1, 0));
    out.pattern.col(2) = vec(spherical_pattern(0, 0, 1));
    out.pattern_residual = (out.pattern - span_projector(out.basis) * out.pattern).norm();
    if (out.pattern_residual > 1e-9) throw InternalConsistency("solution space is not spanned by the (r, s, t) pattern");
    if (kappa) {
        const LeastSquares ls = min_norm_solve(out.pattern, vec(*kappa));
        out.fitted = true;
        out.r = ls.x(0);
        out.s = ls.x(1);
        out.t = ls.x(2);
        out.fit_residual = ls.residual;
        out.a = out.r;
        out.b = out.t / (2.0 * lambda);
        out.c = (out.r - out.s) / (4.0 * lambda * lambda);
    }
    return out;
}

// kappa matrix at lambda e_1 produced by (a, b, c)
inline RMat spherical_kappa(double lambda, double a, double b, double c) {
    return spherical_pattern(a, a - 4.0 * c * lambda * lambda, 2.0 * b * lambda);
}

// At x = 0 all three axes constrain: kappa_j = a tau_j.
inline LinearSolutionSpace spherical_origin_solve() {
    const RMat a = isotropy_constraints({0, 1, 2});
    return solve_affine(a, Vec::Zero(a.rows()));
}

// [z(x), psi(0, v)] - psi(z^{-1}[z(x), z(v)]) for v in the standard basis; max norm
inline double spherical_isotropy_residual(const RMat& kappa, const Vec& x) {
    double worst = 0.0;
    const Mat zx = zeta(x);
    for (int j = 0; j < 3; ++j) {
        const Vec v = Vec::Unit(3, j);
        const Mat lhs = bracket(zx, zeta(kappa * v));
        const Mat rhs = zeta(kappa * zeta_inv(bracket(zx, zeta(v))));
        worst = std::max(worst, (lhs - rhs).norm());
    }
    return worst;
}

} // namespace invconn
