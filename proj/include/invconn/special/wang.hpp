#pragma once

#include "invconn/reduced/reconstruct.hpp"
#include "invconn/special/solution_space.hpp"

namespace invconn {

// Linear maps psi : g -> s with psi = d_e phi_p on the stabiliser algebra and
// psi o Ad_h = Ad_{phi_p(h)} o psi. psi is stored column-major, dimS x dimG.
struct WangSolution {
    LinearSolutionSpace space;
    Index s_dim = 0;
    Index g_dim = 0;
    Index stabilizer_dim = 0;
    Index finite_elements = 0;  // group elements used beyond the identity component

    RMat matrix(const Vec& c) const { return unvec(space.element(c), s_dim, g_dim); }
    RMat particular() const { return unvec(space.particular, s_dim, g_dim); }
    RMat direction(Index i) const { return unvec(space.nullspace.col(i), s_dim, g_dim); }
};

// phi_p(h) for h in the stabiliser G_{pi(p)}: Phi(h, p) = p phi_p(h)
inline Mat stabilizer_homomorphism(const BundleAction& a, const BundlePoint& p, const Mat& h) {
    const BundlePoint img = a.apply(h, p);
    if ((img.x - p.x).norm() > 1e-9 * (1.0 + p.x.norm()))
        throw InvalidArgument("group element does not fix the base point");
    return checked_inverse(p.s) * img.s;
}

inline WangSolution wang_solve(const BundleAction& a, const BundlePoint& p, const std::vector<Mat>& extra_elements = {}) {
    const RMat dphi = induced_infinitesimal(a, p.x);
    if (numerical_rank(dphi) != a.bundle().base_dim())
        throw PreconditionError("the induced action is not locally transitive at the base point");
    const LieGroup& g = a.group();
    const LieGroup& s = a.structure();
    const Index dg = g.dim();
    const Index ds = s.dim();
    const StabilizerData st = stabilizer_data(a, p);

    ConstraintSystem sys(ds * dg);
    for (Index j = 0; j < st.dim; ++j) {
        const Vec h = st.g_part.col(j);
        const Vec sv = st.s_part.col(j);
        sys.add(right_multiply_rows(ds, h), sv, "stabiliser value");
        const RMat adh = g.ad_matrix(h);
        const RMat ads = s.ad_matrix(sv);
        sys.add(right_multiply_rows(ds, adh) - left_multiply_rows(ads, dg), Vec::Zero(ds * dg), "stabiliser bracket");
    }
    for (const Mat& h : extra_elements) {
        const Mat sigma = stabilizer_homomorphism(a, p, h);
        sys.add(right_multiply_rows(ds, g.adjoint_matrix(h)) - left_multiply_rows(s.adjoint_matrix(sigma), dg),
                Vec::Zero(ds * dg), "stabiliser element");
    }

    WangSolution out;
    out.s_dim = ds;
    out.g_dim = dg;
    out.stabilizer_dim = st.dim;
    out.finite_elements = static_cast<Index>(extra_elements.size());
    out.space = solve_affine(sys.a, sys.b);
    return out;
}

// Constant reduced connection on a single point covering.
inline ReducedPtr wang_reduced(CoveringPtr covering, const RMat& psi, const std::string& label) {
    return std::make_shared<ReducedConnection>(
        covering, std::vector<ReducedConnection::PatchMap>{[psi](const Vec&) { return psi; }}, label);
}

} // namespace invconn
