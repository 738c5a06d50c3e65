#pragma once

#include "invconn/bundle/bundle.hpp"

namespace invconn {

// g~(p) = d/dt Phi(exp(t g), p) at t = 0
inline Vec fundamental_g(const BundleAction& a, const BundlePoint& p, const Vec& g) {
    const Mat x = a.group().algebra_matrix(g);
    return curve_velocity(a.bundle(), [&](double t) { return a.apply(mat_exp(t * x), p); }, a.fd_step());
}

// columns are the fundamental fields of the basis of the acting algebra
inline RMat fundamental_matrix(const BundleAction& a, const BundlePoint& p) {
    const Index d = a.group().dim();
    RMat m(a.bundle().total_dim(), d);
    for (Index i = 0; i < d; ++i) m.col(i) = fundamental_g(a, p, Vec::Unit(d, i));
    return m;
}

// s~(p) for the right action. In left-trivialised coordinates it is (0, s).
inline RMat vertical_matrix(const PrincipalBundle& b) {
    RMat m = RMat::Zero(b.total_dim(), b.fibre_dim());
    m.bottomRows(b.fibre_dim()).setIdentity();
    return m;
}

// same field by differentiating p exp(t s); used to cross-check the coordinates
inline Vec vertical_field_fd(const PrincipalBundle& b, const BundlePoint& p, const Vec& s, double h = kDefaultFdStep) {
    const Mat x = b.structure().algebra_matrix(s);
    return curve_velocity(b, [&](double t) { return BundlePoint{p.x, p.s * mat_exp(t * x)}; }, h);
}

// d_e phi_x : base block of the fundamental fields at (x, e)
inline RMat induced_infinitesimal(const BundleAction& a, const Vec& x) {
    return fundamental_matrix(a, {x, a.structure().identity()}).topRows(a.bundle().base_dim());
}

// d_{(e,e,p)} Theta (g, s, w) = g~(p) + w - s~(p)
inline Vec theta_differential(const BundleAction& a, const BundlePoint& p, const Vec& g, const Vec& s, const Vec& w) {
    return fundamental_g(a, p, g) + w - vertical_matrix(a.bundle()) * s;
}

// same by differentiating Theta along (q exp(t q_vec), c(t)); q_vec is left-trivialised
inline Vec theta_differential_fd(const BundleAction& a, const QElement& q, const BundlePoint& p, const Vec& g,
                                 const Vec& s, const Vec& w) {
    const Mat xg = a.group().algebra_matrix(g);
    const Mat xs = a.structure().algebra_matrix(s);
    auto c = curve_through(a.bundle(), p, w);
    return curve_velocity(
        a.bundle(),
        [&](double t) { return a.theta({q.g * mat_exp(t * xg), q.s * mat_exp(t * xs)}, c(t)); },
        a.fd_step());
}

// dL_q w for L_q = Theta(q, .)
inline Vec left_translate(const BundleAction& a, const QElement& q, const BundlePoint& p, const Vec& w) {
    return push_forward(a.bundle(), [&](const BundlePoint& x) { return a.theta(q, x); }, p, w, a.fd_step());
}

inline Vec right_translate(const PrincipalBundle& b, const Mat& s, const BundlePoint& p, const Vec& w,
                           double h = kDefaultFdStep) {
    return push_forward(b, [&](const BundlePoint& x) { return BundlePoint{x.x, x.s * s}; }, p, w, h);
}

// Infinitesimal stabiliser q_p = {(g, s) : g~(p) = s~(p)} and its graph map.
struct StabilizerData {
    RMat kernel;      // orthonormal basis of q_p in (g ; s) coordinates
    RMat g_part;      // projection to the acting algebra
    RMat s_part;
    RMat graph_map;   // phi_p : g_p -> s, as s_part * pinv(g_part); dimS x dimG
    Index dim = 0;
    RMat fundamental; // g~ columns at p
};

inline StabilizerData stabilizer_data(const BundleAction& a, const BundlePoint& p) {
    StabilizerData out;
    const Index dg = a.group().dim();
    const Index ds = a.structure().dim();
    out.fundamental = fundamental_matrix(a, p);
    RMat m(a.bundle().total_dim(), dg + ds);
    m << out.fundamental, -vertical_matrix(a.bundle());
    auto svd = svd_summary(m);
    out.kernel = svd.null_space;
    out.dim = out.kernel.cols();
    out.g_part = out.kernel.topRows(dg);
    out.s_part = out.kernel.bottomRows(ds);
    if (out.dim == 0) {
        out.graph_map = RMat::Zero(ds, dg);
    } else {
        out.graph_map = out.s_part * out.g_part.completeOrthogonalDecomposition().pseudoInverse();
    }
    return out;
}

// ||Theta(q, p) - p||; zero iff q is in the stabiliser Q_p
inline double stabilizer_defect(const BundleAction& a, const QElement& q, const BundlePoint& p) {
    return a.bundle().distance(a.theta(q, p), p);
}

} // namespace invconn
