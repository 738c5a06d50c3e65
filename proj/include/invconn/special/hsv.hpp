#pragma once

#include "invconn/reduced/reduced_connection.hpp"

namespace invconn {

// Patch P_0 along which the stabiliser Q_p = {(h, phi(h)) : h in H} is constant.
struct HsvData {
    GroupPtr h_group;                       // H, realised in the matrices of G
    std::function<Mat(const Mat&)> phi;     // H -> S
    Index patch_index = 0;
};

struct HsvReport {
    std::vector<ConditionReport> conditions;  // "i''", "ii''", "iii''"
    double stabilizer_drift = 0.0;
    double tangent_invariance = 0.0;          // dL_q(T P_0) inside T P_0
    double homomorphism_defect = 0.0;         // Theta((h, phi(h)), p) vs p
    Index patch_dim = 0;
    Index expected_dim = 0;

    bool pass() const {
        for (const auto& c : conditions)
            if (!c.pass) return false;
        return true;
    }
};

// d_e phi on the basis of the Lie algebra of H
inline RMat hsv_phi_differential(const HsvData& d, const LieGroup& s, double h = kDefaultFdStep) {
    const LieGroup& hg = *d.h_group;
    RMat out(s.dim(), hg.dim());
    for (Index i = 0; i < hg.dim(); ++i) {
        const Mat x = hg.basis()[static_cast<std::size_t>(i)];
        const Mat diff = (d.phi(mat_exp(h * x)) - d.phi(mat_exp(-h * x))) / (2.0 * h);
        out.col(i) = s.algebra_coords(diff, 1e-7);
    }
    return out;
}

inline HsvReport hsv_verify(const ReducedConnection& psi, const HsvData& d, Index count, double tol = kConditionTol,
                            std::uint64_t seed = 0) {
    const PhiCovering& c = psi.covering();
    const BundleAction& a = c.action();
    const Patch& patch = c.patch(d.patch_index);
    const LieGroup& g = a.group();
    const LieGroup& s = a.structure();
    const LieGroup& hg = *d.h_group;
    const Index dg = g.dim();
    const Index k = patch.chart_dim;
    HsvReport rep;
    rep.patch_dim = k;
    rep.expected_dim = a.bundle().base_dim() - (dg - hg.dim());
    if (rep.patch_dim != rep.expected_dim)
        throw PreconditionError("patch dimension differs from dim M - (dim G - dim H)");

    RMat h_in_g(dg, hg.dim());
    for (Index i = 0; i < hg.dim(); ++i) h_in_g.col(i) = g.algebra_coords(hg.basis()[static_cast<std::size_t>(i)]);
    const RMat dphi = hsv_phi_differential(d, s, a.fd_step());
    RMat expected_q(dg + s.dim(), hg.dim());
    expected_q << h_in_g, dphi;
    const RMat proj_expected = span_projector(expected_q);

    Rng rng(seed);
    for (Index i = 0; i < count; ++i) {
        const Vec u = patch.sample(rng);
        const BundlePoint p = patch.point(u);
        const StabilizerData st = stabilizer_data(a, p);
        const double drift = (span_projector(st.kernel) - proj_expected).norm();
        rep.stabilizer_drift = std::max(rep.stabilizer_drift, drift);
        if (drift > 1e-7) throw PreconditionError("stabiliser changes along the patch " + patch.label);

        const Mat h = hg.random_element(rng);
        const Mat sh = d.phi(h);
        const QElement q{h, sh};
        rep.homomorphism_defect = std::max(rep.homomorphism_defect, stabilizer_defect(a, q, p));
        if (k > 0) {
            const RMat j = chart_jacobian(a.bundle(), patch, u, a.fd_step());
            const RMat pj = span_projector(j);
            for (Index col = 0; col < k; ++col) {
                const Vec moved = left_translate(a, q, p, j.col(col));
                rep.tangent_invariance = std::max(rep.tangent_invariance, (moved - pj * moved).norm());
            }
        }
        const RMat ad_s = s.adjoint_matrix(sh);
        const RMat ad_h = g.adjoint_matrix(h);
        const long id = static_cast<long>(i);
        for (Index b = 0; b < hg.dim(); ++b) {
            ConditionReport r;
            r.sample_id = id;
            r.condition = "i''";
            r.draw = b;
            r.lhs = psi.psi(d.patch_index, h_in_g.col(b), u, Vec::Zero(k));
            r.rhs = dphi.col(b);
            r.residual = s.algebra_norm(r.lhs - r.rhs);
            r.pass = r.residual <= tol;
            rep.conditions.push_back(std::move(r));
        }
        {
            const Vec w = rng.uniform_vec(k);
            ConditionReport r;
            r.sample_id = id;
            r.condition = "ii''";
            r.lhs = psi.psi(d.patch_index, Vec::Zero(dg), u, w);
            r.rhs = ad_s * r.lhs;
            r.residual = s.algebra_norm(r.lhs - r.rhs);
            r.pass = r.residual <= tol;
            rep.conditions.push_back(std::move(r));
        }
        {
            const Vec gv = rng.uniform_vec(dg);
            ConditionReport r;
            r.sample_id = id;
            r.condition = "iii''";
            r.lhs = psi.psi(d.patch_index, ad_h * gv, u, Vec::Zero(k));
            r.rhs = ad_s * psi.psi(d.patch_index, gv, u, Vec::Zero(k));
            r.residual = s.algebra_norm(r.lhs - r.rhs);
            r.pass = r.residual <= tol;
            rep.conditions.push_back(std::move(r));
        }
    }
    if (rep.homomorphism_defect > 1e-8) throw PreconditionError("phi does not describe the stabiliser");
    if (rep.tangent_invariance > 1e-6) throw PreconditionError("stabiliser does not preserve the patch tangent space");
    return rep;
}

} // namespace invconn
