#pragma once

#include "invconn/core/errors.hpp"
#include "invconn/core/linalg.hpp"
#include "invconn/core/random.hpp"

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace invconn {

inline bool is_finite(const Mat& m) { return m.allFinite(); }

// Scaling and squaring with a diagonal [8/8] Pade approximant.
inline Mat mat_exp(const Mat& x) {
    if (x.rows() != x.cols()) throw InvalidArgument("mat_exp: matrix is not square");
    if (!is_finite(x)) throw InvalidArgument("mat_exp: non-finite entry");
    const Index n = x.rows();
    if (n == 0) return x;
    const double norm1 = x.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    const Mat a = x / std::ldexp(1.0, squarings);

    constexpr int q = 8;
    double c = 1.0;
    Mat num = Mat::Identity(n, n);
    Mat den = Mat::Identity(n, n);
    Mat power = Mat::Identity(n, n);
    for (int k = 1; k <= q; ++k) {
        c *= static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
        power = power * a;
        num += c * power;
        den += ((k % 2) ? -c : c) * power;
    }
    Eigen::PartialPivLU<Mat> lu(den);
    Mat e = lu.solve(num);
    for (int i = 0; i < squarings; ++i) e = e * e;
    return e;
}

inline Mat bracket(const Mat& a, const Mat& b) { return a * b - b * a; }

inline Mat checked_inverse(const Mat& g) {
    Eigen::FullPivLU<Mat> lu(g);
    if (!lu.isInvertible()) throw SingularMatrix("matrix is not invertible");
    return lu.inverse();
}

// Ad_g X = g X g^{-1}
inline Mat adjoint(const Mat& g, const Mat& x) { return g * x * checked_inverse(g); }

class LieGroup {
public:
    using Membership = std::function<bool(const Mat&, double)>;

    LieGroup(std::string name, Index ambient, std::vector<Mat> basis, Membership member,
             double member_tol = 1e-9)
        : name_(std::move(name)), ambient_(ambient), basis_(std::move(basis)), member_(std::move(member)),
          member_tol_(member_tol) {
        for (const auto& b : basis_)
            if (b.rows() != ambient_ || b.cols() != ambient_)
                throw InvalidArgument("LieGroup " + name_ + ": basis matrix has wrong shape");
        const Index d = dim();
        gram_ = RMat::Zero(d, d);
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j) gram_(i, j) = (basis_[i].adjoint() * basis_[j]).trace().real();
        if (d > 0) {
            gram_lu_ = Eigen::FullPivLU<RMat>(gram_);
            if (gram_lu_.rank() < d) throw InvalidArgument("LieGroup " + name_ + ": basis is not linearly independent");
        }
    }

    const std::string& name() const { return name_; }
    Index ambient_dim() const { return ambient_; }
    Index dim() const { return static_cast<Index>(basis_.size()); }
    const std::vector<Mat>& basis() const { return basis_; }
    const RMat& gram() const { return gram_; }
    double membership_tol() const { return member_tol_; }

    Mat identity() const { return Mat::Identity(ambient_, ambient_); }

    Mat algebra_matrix(const Vec& c) const {
        if (c.size() != dim()) throw InvalidArgument(name_ + ": coordinate vector has wrong length");
        Mat m = Mat::Zero(ambient_, ambient_);
        for (Index i = 0; i < dim(); ++i) m += c(i) * basis_[i];
        return m;
    }

    // Least squares against the real Gram matrix, then a residual check.
    Vec algebra_coords(const Mat& x, double rel_tol = 1e-9) const {
        if (x.rows() != ambient_ || x.cols() != ambient_)
            throw InvalidArgument(name_ + ": algebra matrix has wrong shape");
        const Index d = dim();
        Vec c = Vec::Zero(d);
        if (d > 0) {
            Vec rhs(d);
            for (Index i = 0; i < d; ++i) rhs(i) = (basis_[i].adjoint() * x).trace().real();
            c = gram_lu_.solve(rhs);
        }
        const double res = (x - algebra_matrix(c)).norm();
        if (!(res <= rel_tol * std::max(1.0, x.norm())))
            throw NotInAlgebra(name_ + ": matrix is not in the Lie algebra (residual " + std::to_string(res) + ")");
        return c;
    }

    double algebra_norm(const Vec& c) const {
        if (dim() == 0) return 0.0;
        return std::sqrt(std::max(0.0, c.dot(gram_ * c)));
    }

    Mat exp(const Vec& c) const { return mat_exp(algebra_matrix(c)); }

    bool contains(const Mat& g) const {
        if (g.rows() != ambient_ || g.cols() != ambient_ || !is_finite(g)) return false;
        return member_(g, member_tol_);
    }

    void require(const Mat& g, const std::string& what) const {
        if (!contains(g)) throw DomainError(what + ": element is not in " + name_);
    }

    Mat inverse(const Mat& g) const { return checked_inverse(g); }

    // matrix of Ad_g in the basis
    RMat adjoint_matrix(const Mat& g) const {
        const Mat gi = checked_inverse(g);
        RMat m(dim(), dim());
        for (Index j = 0; j < dim(); ++j) m.col(j) = algebra_coords(g * basis_[j] * gi, 1e-8);
        return m;
    }

    Vec adjoint_coords(const Mat& g, const Vec& c) const { return adjoint_matrix(g) * c; }

    Vec bracket_coords(const Vec& a, const Vec& b) const {
        return algebra_coords(bracket(algebra_matrix(a), algebra_matrix(b)), 1e-8);
    }

    RMat ad_matrix(const Vec& a) const {
        RMat m(dim(), dim());
        const Mat x = algebra_matrix(a);
        for (Index j = 0; j < dim(); ++j) m.col(j) = algebra_coords(bracket(x, basis_[j]), 1e-8);
        return m;
    }

    Mat random_element(Rng& rng, double scale = 1.0) const { return exp(rng.uniform_vec(dim(), -scale, scale)); }

private:
    std::string name_;
    Index ambient_;
    std::vector<Mat> basis_;
    Membership member_;
    double member_tol_;
    RMat gram_;
    Eigen::FullPivLU<RMat> gram_lu_;
};

using GroupPtr = std::shared_ptr<const LieGroup>;

} // namespace invconn
