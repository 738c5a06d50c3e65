#pragma once

#include "invconn/reduced/reduced_connection.hpp"

namespace invconn {

// omega_p(w) = rho(q) lambda_alpha(dL_{q^{-1}} w) with p = q p_alpha.
class Reconstruction {
public:
    explicit Reconstruction(ReducedPtr psi, double kernel_tol = kKernelGateTol)
        : psi_(std::move(psi)), kernel_tol_(kernel_tol) {
        if (!psi_) throw InvalidArgument("Reconstruction: missing reduced connection");
    }

    const ReducedConnection& reduced() const { return *psi_; }

    // lambda_alpha composed with a left inverse of d_{(e, p_alpha)} Theta.
    // The kernel gate runs on the same matrix before any value is used.
    Vec lambda_hat(Index alpha, const Vec& u, const Vec& v) const {
        const PhiCovering& c = psi_->covering();
        const Index dg = psi_->g_dim();
        const Index ds = psi_->s_dim();
        const Index k = c.patch(alpha).chart_dim;
        const RMat m = theta_patch_matrix(c, alpha, u);
        const SvdSummary svd = svd_summary(m);
        for (Index j = 0; j < svd.null_space.cols(); ++j) {
            const Vec n = svd.null_space.col(j);
            const double r = c.action().structure().algebra_norm(psi_->lambda(alpha, n.head(dg), n.tail(ds), u, n.segment(dg, k)));
            if (r > kernel_tol_)
                throw NotAReducedConnection("kernel of d Theta is not annihilated on patch " + c.patch(alpha).label +
                                            " (residual " + std::to_string(r) + ")");
        }
        const LeastSquares ls = min_norm_solve(m, v);
        if (ls.residual > decomposition_tol(v.norm()))
            throw PatchSurjectivity("patch " + c.patch(alpha).label + " is not a Theta-patch here");
        return psi_->lambda(alpha, ls.x.head(dg), ls.x.tail(ds), u, ls.x.segment(dg, k));
    }

    Vec evaluate(const BundlePoint& p, const Vec& w, const Transport& t) const {
        const PhiCovering& c = psi_->covering();
        const BundleAction& a = c.action();
        const QElement qi = q_inverse(t.q);
        const BundlePoint pa = c.patch(t.alpha).point(t.u);
        const Vec v = push_forward(a.bundle(), [&](const BundlePoint& x) { return a.theta(qi, x); }, p, w, a.fd_step());
        if (a.bundle().distance(a.theta(qi, p), pa) > 1e-8 * (1.0 + p.x.norm()))
            throw CoverageError("transport does not map p back onto its patch point");
        return a.rho(t.q, lambda_hat(t.alpha, t.u, v));
    }

    Vec operator()(const BundlePoint& p, const Vec& w) const {
        return evaluate(p, w, psi_->covering().transport(p));
    }

    ConnectionForm form() const {
        auto self = std::make_shared<Reconstruction>(*this);
        return {psi_->covering().action().bundle_ptr(),
                [self](const BundlePoint& p, const Vec& w) { return (*self)(p, w); },
                "reconstruct(" + psi_->label() + ")"};
    }

    // omega_alpha on T_q Q x T P_alpha; the Q tangent is given left-trivialised
    Vec extended(const QElement& q, const Vec& q_vec, Index alpha, const Vec& u, const Vec& w) const {
        const Index dg = psi_->g_dim();
        return psi_->covering().action().rho(q, psi_->lambda(alpha, q_vec.head(dg), q_vec.tail(psi_->s_dim()), u, w));
    }

private:
    ReducedPtr psi_;
    double kernel_tol_;
};

inline ConnectionForm reconstruct(ReducedPtr psi, double kernel_tol = kKernelGateTol) {
    return Reconstruction(std::move(psi), kernel_tol).form();
}

inline Vec reconstruct(ReducedPtr psi, const BundlePoint& p, const Vec& w) { return Reconstruction(std::move(psi))(p, w); }

// Sampled sup of |reconstruct(reduce(omega)) - omega|.
inline CheckSummary roundtrip_check(const ConnectionForm& omega, CoveringPtr covering, Index count,
                                    double tol = kConditionTol, std::uint64_t seed = 0) {
    CheckSummary out;
    out.name = "roundtrip";
    auto psi = std::make_shared<ReducedConnection>(reduce(omega, covering));
    Reconstruction rec(psi);
    const PrincipalBundle& b = covering->action().bundle();
    Rng rng(seed);
    for (Index i = 0; i < count; ++i) {
        const BundlePoint p = b.sample_point(rng);
        const Vec w = rng.uniform_vec(b.total_dim());
        const double r = b.structure().algebra_norm(rec(p, w) - omega(p, w));
        out.record(static_cast<long>(i), r, r <= tol);
    }
    return out;
}

} // namespace invconn
