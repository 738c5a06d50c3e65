#pragma once

#include "invconn/core/linalg.hpp"

#include <string>

namespace invconn {

constexpr double kFeasibilityTol = 1e-8;

// Affine family particular + span(nullspace) of solutions of A x = b.
struct LinearSolutionSpace {
    bool feasible = true;
    Vec particular;
    RMat nullspace;
    double residual = 0.0;        // least-squares residual of the particular solution
    double residual_bound = 0.0;  // lower bound on |A x - b| over all x when infeasible
    Index constraints = 0;
    Index unknowns = 0;

    Index dim() const { return nullspace.cols(); }
    Vec element(const Vec& c) const { return particular + nullspace * c; }
};

// Infeasible when the least-squares residual exceeds 1e3 times the tolerance.
inline LinearSolutionSpace solve_affine(const RMat& a, const Vec& b, double feasibility_tol = kFeasibilityTol) {
    LinearSolutionSpace out;
    out.constraints = a.rows();
    out.unknowns = a.cols();
    const LeastSquares ls = min_norm_solve(a, b);
    out.particular = ls.x;
    out.residual = ls.residual;
    out.nullspace = null_space(a);
    out.feasible = ls.residual <= 1e3 * feasibility_tol;
    out.residual_bound = out.feasible ? 0.0 : ls.residual;
    return out;
}

// Row block for X -> X h on column-major vec(X), X of size rows x h.size()
inline RMat right_multiply_rows(Index rows, const RMat& h) {
    const Index cols = h.rows();
    RMat m = RMat::Zero(rows * h.cols(), rows * cols);
    for (Index c = 0; c < h.cols(); ++c)
        for (Index j = 0; j < cols; ++j) m.block(c * rows, j * rows, rows, rows) = h(j, c) * RMat::Identity(rows, rows);
    return m;
}

// Row block for X -> A X on column-major vec(X), X of size a.cols() x cols
inline RMat left_multiply_rows(const RMat& a, Index cols) {
    RMat m = RMat::Zero(a.rows() * cols, a.cols() * cols);
    for (Index c = 0; c < cols; ++c) m.block(c * a.rows(), c * a.cols(), a.rows(), a.cols()) = a;
    return m;
}

inline RMat unvec(const Vec& v, Index rows, Index cols) { return Eigen::Map<const RMat>(v.data(), rows, cols); }

inline Vec vec(const RMat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

// Stack constraint blocks.
struct ConstraintSystem {
    RMat a;
    Vec b;
    std::vector<std::string> labels;  // one per block

    explicit ConstraintSystem(Index unknowns) : a(0, unknowns), b(0) {}

    void add(const RMat& rows, const Vec& rhs, const std::string& label) {
        RMat na(a.rows() + rows.rows(), a.cols());
        na << a, rows;
        Vec nb(b.size() + rhs.size());
        nb << b, rhs;
        a = std::move(na);
        b = std::move(nb);
        labels.push_back(label);
    }
};

} // namespace invconn
