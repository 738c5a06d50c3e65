#pragma once

#include "invconn/core/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace invconn {

using Index = Eigen::Index;
using Vec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using Mat = Eigen::MatrixXcd;
using Complex = std::complex<double>;

constexpr double kRankRelTol = 1e-7;

inline double rank_threshold(double largest_sv, double rel = kRankRelTol) {
    return rel * std::max(1.0, largest_sv);
}

struct SvdSummary {
    Vec singular_values;
    Index rank = 0;
    double threshold = 0.0;
    RMat null_space;   // orthonormal columns
    RMat range;        // orthonormal columns
};

inline SvdSummary svd_summary(const RMat& a, double rel = kRankRelTol) {
    SvdSummary out;
    const Index n = a.cols();
    if (a.rows() == 0 || n == 0) {
        out.null_space = RMat::Identity(n, n);
        out.range = RMat(a.rows(), 0);
        return out;
    }
    Eigen::JacobiSVD<RMat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.singular_values = svd.singularValues();
    out.threshold = rank_threshold(out.singular_values(0), rel);
    for (Index i = 0; i < out.singular_values.size(); ++i)
        if (out.singular_values(i) > out.threshold) ++out.rank;
    out.null_space = svd.matrixV().rightCols(n - out.rank);
    out.range = svd.matrixU().leftCols(out.rank);
    return out;
}

inline Index numerical_rank(const RMat& a, double rel = kRankRelTol) { return svd_summary(a, rel).rank; }

inline RMat null_space(const RMat& a, double rel = kRankRelTol) { return svd_summary(a, rel).null_space; }

struct LeastSquares {
    Vec x;             // minimum-norm solution
    double residual = 0.0;  // ||a x - b||
    Index rank = 0;
};

inline LeastSquares min_norm_solve(const RMat& a, const Vec& b, double rel = kRankRelTol) {
    if (a.rows() != b.size()) throw InvalidArgument("min_norm_solve: row count mismatch");
    LeastSquares out;
    out.x = Vec::Zero(a.cols());
    if (a.rows() == 0 || a.cols() == 0) {
        out.residual = b.norm();
        return out;
    }
    Eigen::JacobiSVD<RMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vec& sv = svd.singularValues();
    const double thr = rank_threshold(sv(0), rel);
    Vec utb = svd.matrixU().transpose() * b;
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > thr) {
            utb(i) /= sv(i);
            ++out.rank;
        } else {
            utb(i) = 0.0;
        }
    }
    out.x = svd.matrixV() * utb;
    out.residual = (a * out.x - b).norm();
    return out;
}

// Projector onto the column span; used to compare subspaces.
inline RMat span_projector(const RMat& basis) {
    if (basis.cols() == 0) return RMat::Zero(basis.rows(), basis.rows());
    auto s = svd_summary(basis);
    return s.range * s.range.transpose();
}

inline bool all_finite(const Vec& v) { return v.allFinite(); }

} // namespace invconn
