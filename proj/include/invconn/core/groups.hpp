#pragma once

#include "invconn/core/lie_group.hpp"

#include <array>

namespace invconn {

namespace detail {

inline Mat unit(Index n, Index i, Index j) {
    Mat m = Mat::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

inline bool is_real(const Mat& m, double tol) { return m.imag().cwiseAbs().maxCoeff() <= tol; }

inline double levi_civita(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0.0;
    return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
}

} // namespace detail

// tau_k = -i sigma_k, so [tau_1, tau_2] = 2 tau_3 and cyclic.
inline Mat tau(int k) {
    const Complex i(0.0, 1.0);
    Mat t = Mat::Zero(2, 2);
    switch (k) {
    case 0: t << 0.0, -i, -i, 0.0; break;
    case 1: t << 0.0, -1.0, 1.0, 0.0; break;
    case 2: t << -i, 0.0, 0.0, i; break;
    default: throw InvalidArgument("tau: index must be 0, 1 or 2");
    }
    return t;
}

// R^3 -> su(2), v -> sum v_k tau_k
inline Mat zeta(const Vec& v) {
    if (v.size() != 3) throw InvalidArgument("zeta: expected a 3-vector");
    return v(0) * tau(0) + v(1) * tau(1) + v(2) * tau(2);
}

// Inverse of zeta; tr(tau_j^dagger tau_k) = 2 delta_jk.
inline Vec zeta_inv(const Mat& x, double rel_tol = 1e-9) {
    if (x.rows() != 2 || x.cols() != 2) throw InvalidArgument("zeta_inv: expected a 2x2 matrix");
    Vec v(3);
    for (int k = 0; k < 3; ++k) v(k) = 0.5 * (tau(k).adjoint() * x).trace().real();
    if ((x - zeta(v)).norm() > rel_tol * std::max(1.0, x.norm())) throw NotInAlgebra("zeta_inv: matrix is not in su(2)");
    return v;
}

inline bool in_su2(const Mat& s, double tol) {
    if (s.rows() != 2 || s.cols() != 2) return false;
    if ((s.adjoint() * s - Mat::Identity(2, 2)).norm() > tol * 10) return false;
    return std::abs(s.determinant() - Complex(1.0, 0.0)) <= tol * 10;
}

// Covering SU(2) -> SO(3); column j is the vector of s tau_j s^{-1}.
inline RMat su2_covering(const Mat& s) {
    if (!in_su2(s, 1e-9)) throw DomainError("su2_covering: element is not in SU(2)");
    RMat r(3, 3);
    const Mat si = s.adjoint();
    for (int j = 0; j < 3; ++j) r.col(j) = zeta_inv(s * tau(j) * si, 1e-8);
    return r;
}

// Differential of the covering: (rho_*(tau_i))_{kj} = 2 eps_{ijk}
inline RMat su2_covering_generator(int i) {
    RMat m = RMat::Zero(3, 3);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) m(k, j) = 2.0 * detail::levi_civita(i, j, k);
    return m;
}

inline GroupPtr su2() {
    return std::make_shared<LieGroup>("SU(2)", 2, std::vector<Mat>{tau(0), tau(1), tau(2)},
                                      [](const Mat& s, double tol) { return in_su2(s, tol); });
}

// one-parameter subgroup exp(t tau_k)
inline GroupPtr su2_circle(int k) {
    return std::make_shared<LieGroup>("U(1)_" + std::to_string(k + 1), 2, std::vector<Mat>{tau(k)},
                                      [k](const Mat& s, double tol) {
                                          return in_su2(s, tol) && bracket(s, tau(k)).norm() <= 10 * tol;
                                      });
}

inline GroupPtr trivial_group() {
    return std::make_shared<LieGroup>("{e}", 1, std::vector<Mat>{}, [](const Mat& s, double tol) {
        return std::abs(s(0, 0) - Complex(1.0, 0.0)) <= tol;
    });
}

inline GroupPtr positive_reals() {
    return std::make_shared<LieGroup>("R_{>0}", 1, std::vector<Mat>{Mat::Identity(1, 1)},
                                      [](const Mat& s, double tol) {
                                          return std::abs(s(0, 0).imag()) <= tol && s(0, 0).real() > 0.0;
                                      });
}

// R^n as unipotent (n+1)x(n+1) matrices
inline GroupPtr translations(Index n) {
    if (n < 1) throw InvalidArgument("translations: n must be positive");
    std::vector<Mat> basis;
    for (Index i = 0; i < n; ++i) basis.push_back(detail::unit(n + 1, i, n));
    return std::make_shared<LieGroup>("R^" + std::to_string(n), n + 1, std::move(basis),
                                      [n](const Mat& g, double tol) {
                                          Mat d = g - Mat::Identity(n + 1, n + 1);
                                          d.col(n).head(n).setZero();
                                          return d.norm() <= tol && detail::is_real(g, tol);
                                      });
}

inline Mat translation_element(const Vec& v) {
    const Index n = v.size();
    Mat g = Mat::Identity(n + 1, n + 1);
    g.col(n).head(n) = v.cast<Complex>();
    return g;
}

inline Vec translation_part(const Mat& g) { return g.col(g.cols() - 1).head(g.rows() - 1).real(); }

// E = R^3 x| SU(2) realised as diag(sigma, [[rho(sigma), v], [0, 1]]) in 6x6 matrices.
// Coordinates: (translation_1..3, rotation_1..3).
inline Mat euclid_element(const Vec& v, const Mat& sigma) {
    Mat g = Mat::Zero(6, 6);
    g.block(0, 0, 2, 2) = sigma;
    g.block(2, 2, 3, 3) = su2_covering(sigma).cast<Complex>();
    g.block(2, 5, 3, 1) = v.cast<Complex>();
    g(5, 5) = 1.0;
    return g;
}

inline Vec euclid_translation(const Mat& g) { return g.block(2, 5, 3, 1).real(); }
inline Mat euclid_rotation(const Mat& g) { return g.block(0, 0, 2, 2); }

inline GroupPtr euclid_su2() {
    std::vector<Mat> basis;
    for (Index i = 0; i < 3; ++i) basis.push_back(detail::unit(6, 2 + i, 5));
    for (int i = 0; i < 3; ++i) {
        Mat b = Mat::Zero(6, 6);
        b.block(0, 0, 2, 2) = tau(i);
        b.block(2, 2, 3, 3) = su2_covering_generator(i).cast<Complex>();
        basis.push_back(b);
    }
    return std::make_shared<LieGroup>("R^3 x| SU(2)", 6, std::move(basis), [](const Mat& g, double tol) {
        const Mat sigma = g.block(0, 0, 2, 2);
        if (!in_su2(sigma, tol)) return false;
        Mat expect = euclid_element(g.block(2, 5, 3, 1).real(), sigma);
        return (g - expect).norm() <= 10 * tol * std::max(1.0, g.norm());
    });
}

inline GroupPtr general_linear(Index n) {
    std::vector<Mat> basis;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) basis.push_back(detail::unit(n, i, j));
    return std::make_shared<LieGroup>("GL(" + std::to_string(n) + ")", n, std::move(basis),
                                      [](const Mat& g, double tol) {
                                          return detail::is_real(g, tol) && std::abs(g.determinant()) > tol;
                                      });
}

// invertible upper triangular matrices; basis E_ij, i <= j, row major
inline GroupPtr borel(Index n) {
    std::vector<Mat> basis;
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) basis.push_back(detail::unit(n, i, j));
    return std::make_shared<LieGroup>("B(" + std::to_string(n) + ")", n, std::move(basis),
                                      [n](const Mat& g, double tol) {
                                          if (!detail::is_real(g, tol)) return false;
                                          for (Index i = 0; i < n; ++i) {
                                              if (std::abs(g(i, i)) <= tol) return false;
                                              for (Index j = 0; j < i; ++j)
                                                  if (std::abs(g(i, j)) > tol) return false;
                                          }
                                          return true;
                                      });
}

} // namespace invconn
