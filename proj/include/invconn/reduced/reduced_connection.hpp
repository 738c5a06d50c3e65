#pragma once

#include "invconn/bundle/connection_form.hpp"
#include "invconn/core/report.hpp"
#include "invconn/patches/patches.hpp"

namespace invconn {

constexpr double kConditionTol = 1e-6;
constexpr double kKernelGateTol = 1e-7;

inline double decomposition_tol(double target_norm) { return 1e-7 * (1.0 + target_norm); }

// psi_alpha(g, u, w) = M_alpha(u) [g ; w], one matrix-valued map per patch.
class ReducedConnection {
public:
    using PatchMap = std::function<RMat(const Vec&)>;

    ReducedConnection(CoveringPtr covering, std::vector<PatchMap> maps, std::string label)
        : covering_(std::move(covering)), maps_(std::move(maps)), label_(std::move(label)) {
        if (!covering_) throw InvalidArgument("ReducedConnection: missing covering");
        if (maps_.size() != covering_->patches().size())
            throw InvalidArgument("ReducedConnection: need one map per patch");
    }

    const PhiCovering& covering() const { return *covering_; }
    const CoveringPtr& covering_ptr() const { return covering_; }
    const std::string& label() const { return label_; }
    Index g_dim() const { return covering_->action().group().dim(); }
    Index s_dim() const { return covering_->action().structure().dim(); }

    RMat matrix(Index alpha, const Vec& u) const {
        const Patch& p = covering_->patch(alpha);
        if (!p.contains(u)) throw EvaluationError(label_ + ": chart point outside patch " + p.label, u);
        RMat m = guarded_call(maps_[static_cast<std::size_t>(alpha)], u, label_);
        if (m.rows() != s_dim() || m.cols() != g_dim() + p.chart_dim)
            throw InvalidArgument(label_ + ": reduced matrix has wrong shape on patch " + p.label);
        return m;
    }

    Vec psi(Index alpha, const Vec& g, const Vec& u, const Vec& w) const {
        Vec gw(g.size() + w.size());
        gw << g, w;
        return matrix(alpha, u) * gw;
    }

    Vec lambda(Index alpha, const Vec& g, const Vec& s, const Vec& u, const Vec& w) const {
        return psi(alpha, g, u, w) - s;
    }

private:
    CoveringPtr covering_;
    std::vector<PatchMap> maps_;
    std::string label_;
};

using ReducedPtr = std::shared_ptr<const ReducedConnection>;

// (Phi^* omega) restricted to g x T P_alpha
inline ReducedConnection reduce(const ConnectionForm& omega, CoveringPtr covering) {
    std::vector<ReducedConnection::PatchMap> maps;
    const PhiCovering& c = *covering;
    for (std::size_t alpha = 0; alpha < c.patches().size(); ++alpha) {
        maps.push_back([omega, covering, alpha](const Vec& u) -> RMat {
            const PhiCovering& cov = *covering;
            const Patch& patch = cov.patch(static_cast<Index>(alpha));
            const BundlePoint p = patch.point(u);
            const RMat g = fundamental_matrix(cov.action(), p);
            const RMat j = chart_jacobian(cov.action().bundle(), patch, u, cov.action().fd_step());
            RMat cols(g.rows(), g.cols() + j.cols());
            cols << g, j;
            return omega.matrix(p) * cols;
        });
    }
    return ReducedConnection(std::move(covering), std::move(maps), "reduce(" + omega.provenance + ")");
}

// [g~ | J | -s~] at a patch point; unknown order (g, w, s)
inline RMat theta_patch_matrix(const PhiCovering& c, Index alpha, const Vec& u) {
    const BundleAction& a = c.action();
    const Patch& patch = c.patch(alpha);
    const BundlePoint p = patch.point(u);
    const RMat g = fundamental_matrix(a, p);
    const RMat j = chart_jacobian(a.bundle(), patch, u, a.fd_step());
    RMat m(a.bundle().total_dim(), g.cols() + j.cols() + a.structure().dim());
    m << g, j, -vertical_matrix(a.bundle());
    return m;
}

struct Decomposition {
    Vec g, w, s;
    double residual = 0.0;
    double target_norm = 0.0;
    RMat kernel;  // kernel of the decomposition matrix, (g, w, s) order
};

inline Decomposition split_decomposition(const Vec& x, Index dg, Index k, Index ds) {
    Decomposition d;
    d.g = x.head(dg);
    d.w = x.segment(dg, k);
    d.s = x.tail(ds);
    return d;
}

// Solve d_{(e, p_beta)} Theta (g, w, s) = dL_q (w_alpha) by minimum-norm least squares.
inline Decomposition decompose_transport(const PhiCovering& c, const TransporterSample& t, const Vec& w_alpha,
                                         const RMat* beta_matrix = nullptr) {
    const BundleAction& a = c.action();
    const Patch& pa = c.patch(t.alpha);
    if (w_alpha.size() != pa.chart_dim) throw InvalidArgument("decompose_transport: chart tangent has wrong length");
    Vec target = Vec::Zero(a.bundle().total_dim());
    if (pa.chart_dim > 0)
        target = curve_velocity(a.bundle(), [&](double s) { return a.theta(t.q, pa.point(t.u_alpha + s * w_alpha)); },
                                a.fd_step());
    const RMat m = beta_matrix ? *beta_matrix : theta_patch_matrix(c, t.beta, t.u_beta);
    const LeastSquares ls = min_norm_solve(m, target);
    const Index dg = a.group().dim();
    const Index k = c.patch(t.beta).chart_dim;
    Decomposition d = split_decomposition(ls.x, dg, k, a.structure().dim());
    d.residual = ls.residual;
    d.target_norm = target.norm();
    d.kernel = null_space(m);
    if (d.residual > decomposition_tol(d.target_norm))
        throw PatchSurjectivity("patch " + c.patch(t.beta).label + " is not a Theta-patch at the sample point (residual " +
                                std::to_string(d.residual) + ")");
    return d;
}

struct ConditionReport {
    Index sample_id = 0;
    std::string condition;  // "i", "ii" or "kernel-a"
    Index draw = 0;
    Vec lhs, rhs;
    double residual = 0.0;
    double decomposition_residual = 0.0;
    bool pass = false;
};

// Residuals of the two reduced-connection conditions and of the kernel condition.
inline std::vector<ConditionReport> check_reduced_conditions(const ReducedConnection& psi,
                                                             const std::vector<TransporterSample>& samples,
                                                             Index tangent_draws, double tol = kConditionTol,
                                                             std::uint64_t seed = 0) {
    const PhiCovering& c = psi.covering();
    const BundleAction& a = c.action();
    const LieGroup& s_grp = a.structure();
    const Index dg = a.group().dim();
    std::vector<ConditionReport> out;
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (const auto& t : samples) {
        verify_transporter(c, t);
        const Index ka = c.patch(t.alpha).chart_dim;
        const Index kb = c.patch(t.beta).chart_dim;
        const RMat mb = theta_patch_matrix(c, t.beta, t.u_beta);
        const RMat rho = a.rho_matrix(t.q);
        const RMat ad_q = a.group().adjoint_matrix(t.q.g);
        for (Index d = 0; d < tangent_draws; ++d) {
            const Vec wa = rng.uniform_vec(ka);
            const Decomposition dec = decompose_transport(c, t, wa, &mb);
            ConditionReport r;
            r.sample_id = t.id;
            r.condition = "i";
            r.draw = d;
            r.lhs = psi.psi(t.beta, dec.g, t.u_beta, dec.w) - dec.s;
            r.rhs = rho * psi.psi(t.alpha, Vec::Zero(dg), t.u_alpha, wa);
            r.residual = s_grp.algebra_norm(r.lhs - r.rhs);
            r.decomposition_residual = dec.residual;
            r.pass = r.residual <= tol && dec.residual <= decomposition_tol(dec.target_norm);
            out.push_back(std::move(r));
        }
        for (Index d = 0; d < tangent_draws; ++d) {
            const Vec g = rng.uniform_vec(dg);
            ConditionReport r;
            r.sample_id = t.id;
            r.condition = "ii";
            r.draw = d;
            r.lhs = psi.psi(t.beta, ad_q * g, t.u_beta, Vec::Zero(kb));
            r.rhs = rho * psi.psi(t.alpha, g, t.u_alpha, Vec::Zero(ka));
            r.residual = s_grp.algebra_norm(r.lhs - r.rhs);
            r.pass = r.residual <= tol;
            out.push_back(std::move(r));
        }
        const RMat ker = null_space(mb);
        for (Index j = 0; j < ker.cols(); ++j) {
            const Vec n = ker.col(j);
            ConditionReport r;
            r.sample_id = t.id;
            r.condition = "kernel-a";
            r.draw = j;
            r.lhs = psi.lambda(t.beta, n.head(dg), n.tail(s_grp.dim()), t.u_beta, n.segment(dg, kb));
            r.rhs = Vec::Zero(s_grp.dim());
            r.residual = s_grp.algebra_norm(r.lhs);
            r.pass = r.residual <= tol;
            out.push_back(std::move(r));
        }
    }
    return out;
}

inline CheckSummary summarize(const std::vector<ConditionReport>& reports, const std::string& name) {
    CheckSummary s;
    s.name = name;
    for (const auto& r : reports) s.record(r.sample_id, r.residual, r.pass);
    return s;
}

// Left side of condition (i) for the minimum-norm decomposition and for a
// second one shifted by a random kernel element.
struct DecompositionPair {
    Vec first, second;
    double residual_first = 0.0, residual_second = 0.0;
    Index kernel_dim = 0;
};

inline DecompositionPair condition_i_two_ways(const ReducedConnection& psi, const TransporterSample& t, const Vec& w_alpha,
                                              Rng& rng) {
    const PhiCovering& c = psi.covering();
    const BundleAction& a = c.action();
    const Index dg = a.group().dim();
    const Index kb = c.patch(t.beta).chart_dim;
    const Index ds = a.structure().dim();
    const RMat mb = theta_patch_matrix(c, t.beta, t.u_beta);
    const Decomposition d1 = decompose_transport(c, t, w_alpha, &mb);
    Vec x(dg + kb + ds);
    x << d1.g, d1.w, d1.s;
    DecompositionPair out;
    out.kernel_dim = d1.kernel.cols();
    Vec x2 = x;
    if (out.kernel_dim > 0) x2 += d1.kernel * rng.uniform_vec(out.kernel_dim, -2.0, 2.0);
    Vec target = mb * x;  // same right-hand side up to the decomposition residual
    out.residual_first = d1.residual;
    out.residual_second = d1.residual + (mb * x2 - target).norm();
    out.first = psi.psi(t.beta, x.head(dg), t.u_beta, x.segment(dg, kb)) - x.tail(ds);
    out.second = psi.psi(t.beta, x2.head(dg), t.u_beta, x2.segment(dg, kb)) - x2.tail(ds);
    return out;
}

} // namespace invconn
