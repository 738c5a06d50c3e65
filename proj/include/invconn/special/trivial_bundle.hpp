#pragma once

#include "invconn/reduced/reduced_connection.hpp"

namespace invconn {

// psi : g x TM -> s on the trivial bundle; x -> dimS x (dimG + dim M).
using BaseReduced = std::function<RMat(const Vec&)>;

inline BaseReduced base_reduced(const ReducedConnection& psi, Index alpha = 0) {
    auto c = psi;
    return [c, alpha](const Vec& x) { return c.matrix(alpha, x); };
}

inline Vec base_psi(const BaseReduced& psi, const Vec& g, const Vec& x, const Vec& v) {
    Vec gv(g.size() + v.size());
    gv << g, v;
    return guarded_call(psi, x, "reduced map")* gv;
}

// Conditions on M x {e}: (i) kernel, (ii) psi^+(dL_q v) = rho(q) psi(0, v),
// (iii) psi(Ad_q g, 0) = rho(q) psi(g, 0). Draws match check_reduced_conditions
// for the same seed so the two reports can be compared entry by entry.
inline std::vector<ConditionReport> trivial_bundle_verify(const BaseReduced& psi, const BundleAction& a,
                                                          const std::vector<TransporterSample>& samples,
                                                          Index tangent_draws, double tol = kConditionTol,
                                                          std::uint64_t seed = 0) {
    const PrincipalBundle& b = a.bundle();
    const LieGroup& s_grp = a.structure();
    const Index dg = a.group().dim();
    const Index k = b.base_dim();
    const Mat e = s_grp.identity();
    std::vector<ConditionReport> out;
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (const auto& t : samples) {
        const BundlePoint px{t.u_alpha, e};
        const BundlePoint py{t.u_beta, e};
        if (b.distance(a.theta(t.q, px), py) > 1e-9 * (1.0 + t.u_beta.norm()))
            throw InternalConsistency("trivial bundle sample does not map (x, e) to (y, e)");
        const RMat rho = a.rho_matrix(t.q);
        const RMat ad_q = a.group().adjoint_matrix(t.q.g);
        for (Index d = 0; d < tangent_draws; ++d) {
            const Vec v = rng.uniform_vec(k);
            const Vec lq = curve_velocity(b, [&](double h) { return a.theta(t.q, BundlePoint{px.x + h * v, e}); },
                                          a.fd_step());
            ConditionReport r;
            r.sample_id = t.id;
            r.condition = "ii";
            r.draw = d;
            r.lhs = base_psi(psi, Vec::Zero(dg), t.u_beta, b.base_part(lq)) + b.fibre_part(lq);
            r.rhs = rho * base_psi(psi, Vec::Zero(dg), t.u_alpha, v);
            r.residual = s_grp.algebra_norm(r.lhs - r.rhs);
            r.pass = r.residual <= tol;
            out.push_back(std::move(r));
        }
        for (Index d = 0; d < tangent_draws; ++d) {
            const Vec g = rng.uniform_vec(dg);
            ConditionReport r;
            r.sample_id = t.id;
            r.condition = "iii";
            r.draw = d;
            r.lhs = base_psi(psi, ad_q * g, t.u_beta, Vec::Zero(k));
            r.rhs = rho * base_psi(psi, g, t.u_alpha, Vec::Zero(k));
            r.residual = s_grp.algebra_norm(r.lhs - r.rhs);
            r.pass = r.residual <= tol;
            out.push_back(std::move(r));
        }
        // kernel of (g, v, s) -> g~(y, e) + v - s~
        const RMat gt = fundamental_matrix(a, py);
        RMat m(b.total_dim(), dg + k + s_grp.dim());
        m << gt, RMat::Identity(b.total_dim(), k), -vertical_matrix(b);
        const RMat ker = null_space(m);
        for (Index j = 0; j < ker.cols(); ++j) {
            const Vec n = ker.col(j);
            ConditionReport r;
            r.sample_id = t.id;
            r.condition = "i";
            r.draw = j;
            r.lhs = base_psi(psi, n.head(dg), t.u_beta, n.segment(dg, k)) - n.tail(s_grp.dim());
            r.rhs = Vec::Zero(s_grp.dim());
            r.residual = s_grp.algebra_norm(r.lhs);
            r.pass = r.residual <= tol;
            out.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace invconn
