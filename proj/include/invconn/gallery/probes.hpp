#pragma once

#include "invconn/gallery/examples.hpp"

namespace invconn {

struct ObstructionRow {
    std::string label;
    double value = 0.0;
    double reference = 0.0;
    double residual = 0.0;
    bool ok = true;
};

struct ObstructionReport {
    std::string example;
    std::string verdict;     // "infeasible", "unique" or "diverges"
    bool conditional = false;
    std::string assumption;
    std::vector<ObstructionRow> rows;
    std::string note;

    bool pass() const {
        for (const auto& r : rows)
            if (!r.ok) return false;
        return true;
    }
    double max_residual() const {
        double m = 0.0;
        for (const auto& r : rows) m = std::max(m, r.residual);
        return m;
    }
};

namespace gallery {

// Linear constraints on Psi (dimS x (dimG + k), column major) at p = (0, e):
// kernel condition, then (i) for the adversarial transporter along h = E_n1,
// then (ii) for every basis vector of the algebra.
struct BruhatSystem {
    ConstraintSystem kernel_and_ii;
    ConstraintSystem all;
    RMat rows_i;
    Vec rhs_i;
    double hand_decomposition_residual = 0.0;
    explicit BruhatSystem(Index unknowns) : kernel_and_ii(unknowns), all(unknowns) {}
};

inline BruhatSystem bruhat_system(const ExampleCase& ex) {
    const PhiCovering& c = *ex.covering;
    const BundleAction& a = c.action();
    const LieGroup& g = a.group();
    const Index n = ex.n;
    const Index dg = g.dim();
    const Index ds = a.structure().dim();
    const Index k = a.bundle().base_dim();
    const Index cols = dg + k;
    BruhatSystem sys(ds * cols);
    const TransporterSample& t = c.adversarial().at(0);

    // kernel of d Theta at (e, p)
    const RMat mb = theta_patch_matrix(c, 0, t.u_beta);
    const RMat ker = null_space(mb);
    for (Index j = 0; j < ker.cols(); ++j) {
        const Vec nv = ker.col(j);
        const RMat r = right_multiply_rows(ds, nv.head(cols));
        sys.kernel_and_ii.add(r, nv.tail(ds), "kernel");
        sys.all.add(r, nv.tail(ds), "kernel");
    }

    // (i) along h = E_n1 (last lower entry of the first column is index of (n-1, 0))
    const auto idx = lower_entries(n);
    Index h_index = 0;
    for (std::size_t q = 0; q < idx.size(); ++q)
        if (idx[q].first == n - 1 && idx[q].second == 0) h_index = static_cast<Index>(q);
    const Vec h = Vec::Unit(k, h_index);
    const Decomposition dec = decompose_transport(c, t, h, &mb);
    Vec gw(cols), zh(cols);
    gw << dec.g, dec.w;
    zh << Vec::Zero(dg), h;
    const RMat rho = a.rho_matrix(t.q);
    sys.rows_i = right_multiply_rows(ds, gw) - rho * right_multiply_rows(ds, zh);
    sys.rhs_i = dec.s;
    sys.all.add(sys.rows_i, sys.rhs_i, "(i)");

    // the decomposition (E11 - E1n - Enn, h, 0) written out by hand
    Mat gm = Mat::Zero(n, n);
    gm(0, 0) = 1.0;
    gm(0, n - 1) -= 1.0;
    gm(n - 1, n - 1) -= 1.0;
    Vec hand(dg + k + ds);
    hand << g.algebra_coords(gm), h, Vec::Zero(ds);
    const Vec target = curve_velocity(a.bundle(), [&](double s) { return a.theta(t.q, c.patch(0).point(t.u_alpha + s * h)); },
                                      a.fd_step());
    sys.hand_decomposition_residual = (mb * hand - target).norm();

    // (ii) on a basis of g
    const RMat adq = g.adjoint_matrix(t.q.g);
    for (Index j = 0; j < dg; ++j) {
        Vec lhs(cols), rhs(cols);
        lhs << adq.col(j), Vec::Zero(k);
        rhs << Vec::Unit(dg, j), Vec::Zero(k);
        const RMat r = right_multiply_rows(ds, lhs) - rho * right_multiply_rows(ds, rhs);
        sys.kernel_and_ii.add(r, Vec::Zero(ds), "(ii)");
        sys.all.add(r, Vec::Zero(ds), "(ii)");
    }
    return sys;
}

inline ObstructionReport bruhat_probe(const ExampleCase& ex, std::uint64_t seed, Index candidates = 20) {
    ObstructionReport rep;
    rep.example = ex.name;
    const LieGroup& s = ex.action->structure();
    const BruhatSystem sys = bruhat_system(ex);
    const LinearSolutionSpace full = solve_affine(sys.all.a, sys.all.b);
    rep.verdict = full.feasible ? "feasible" : "infeasible";
    rep.rows.push_back({"least-squares residual of kernel + (i) + (ii)", full.residual, 0.0, 0.0, !full.feasible});
    rep.rows.push_back({"hand decomposition residual", sys.hand_decomposition_residual, 0.0,
                        sys.hand_decomposition_residual, sys.hand_decomposition_residual <= 1e-7});

    // Candidates satisfy kernel + (ii); the (1,1) entry of (i) stays at 1.
    const LinearSolutionSpace part = solve_affine(sys.kernel_and_ii.a, sys.kernel_and_ii.b);
    rep.rows.push_back({"kernel + (ii) feasible", part.feasible ? 1.0 : 0.0, 1.0, 0.0, part.feasible});
    Rng rng(seed);
    double worst = 0.0;
    double first = 0.0;
    for (Index i = 0; i < candidates; ++i) {
        const Vec x = part.element(rng.uniform_vec(part.dim(), -5.0, 5.0));
        const Vec viol = sys.rows_i * x - sys.rhs_i;
        const double entry = std::abs(s.algebra_matrix(viol)(0, 0).real());
        if (i == 0) first = entry;
        worst = std::max(worst, std::abs(entry - 1.0));
    }
    rep.rows.push_back({"(1,1) entry of the violated (i) equation", first, 1.0, worst, worst <= 1e-9});
    rep.note = std::to_string(candidates) + " random candidates for the free unknowns psi(0, .)";
    return rep;
}

inline ObstructionReport scale_probe(const ExampleCase& ex, std::uint64_t seed) {
    ObstructionReport rep;
    rep.example = ex.name;
    rep.conditional = true;
    rep.assumption = "conditional on continuity at 0 (psi bounded near x = 0)";
    const BundleAction& a = *ex.action;
    const PrincipalBundle& b = a.bundle();
    const Index dg = a.group().dim();
    Rng rng(seed);
    Vec x0;
    do x0 = rng.uniform_vec(3);
    while (x0.norm() < 0.2);
    const RMat kmat = rng.uniform_mat(3, 3);  // non-invariant candidate psi_{x0}(0, .)
    const Mat e = b.structure().identity();
    double worst = 0.0;
    for (double l : {0.5, 1.0, 2.0, 4.0}) {
        const QElement q{Mat::Constant(1, 1, Complex(l, 0.0)), e};
        RMat d(3, 3), sig(3, 3);
        for (Index j = 0; j < 3; ++j) {
            const Vec v = Vec::Unit(3, j);
            const Vec lq = curve_velocity(b, [&](double h) { return a.theta(q, BundlePoint{x0 + h * v, e}); }, a.fd_step());
            d.col(j) = b.base_part(lq);
            sig.col(j) = b.fibre_part(lq);
        }
        // transport condition Y d + sig = K for Y = psi_{l x0}(0, .)
        const RMat y = (kmat - sig) * d.inverse();
        const double r = (l * y - kmat).cwiseAbs().maxCoeff();
        worst = std::max(worst, r);
        rep.rows.push_back({"psi_{lambda x}(0, .) lambda / psi_x(0, .) at lambda = " + gallery::format_double(l), l * y(0, 0) / kmat(0, 0),
                            1.0, r, r <= 1e-8});
    }
    // kernel condition psi_x(g, 0) = psi_x(0, g x) at a sample point
    const RMat gt = fundamental_matrix(a, BundlePoint{x0, e});
    RMat m(b.total_dim(), dg + 3 + 3);
    m << gt, RMat::Identity(b.total_dim(), 3), -vertical_matrix(b);
    const RMat ker = null_space(m);
    double kres = 0.0;
    for (Index j = 0; j < ker.cols(); ++j) {
        const Vec nv = ker.col(j);
        const double gcoef = nv(0);
        kres = std::max(kres, (nv.segment(dg, 3) + gcoef * x0).norm() + nv.tail(3).norm());
    }
    rep.rows.push_back({"kernel direction (g, -g x, 0)", static_cast<double>(ker.cols()), 1.0, kres,
                        ker.cols() == 1 && kres <= 1e-8});
    // psi = 0 forces omega = omega_0
    const ReducedConnection psi0 = reduce(mc_form(ex.action->bundle_ptr()), ex.covering);
    double zres = 0.0;
    for (int i = 0; i < 20; ++i) zres = std::max(zres, psi0.matrix(0, b.sample_base(rng)).cwiseAbs().maxCoeff());
    rep.rows.push_back({"max |reduce(omega_0)|", zres, 0.0, zres, zres <= 1e-10});
    rep.verdict = worst <= 1e-8 ? "unique" : "undetermined";
    rep.note = "decay psi_{lambda x}(0, w) = psi_x(0, w) / lambda, then psi(g, 0) = psi(0, g x) = 0";
    return rep;
}

inline ObstructionReport semihomogeneous_probe(const ExampleCase& ex) {
    ObstructionReport rep;
    rep.example = ex.name;
    const ReducedConnection psi = reduce(ex.known.at(0).form, ex.covering);
    const LieGroup& s = ex.action->structure();
    const Index dg = ex.action->group().dim();
    std::vector<double> vals;
    bool increasing = true;
    for (int k = 1; k <= 10; ++k) {
        const double y = std::pow(10.0, -k);
        const Vec val = psi.matrix(0, (Vec(1) << y).finished()).col(dg);
        const double v = s.algebra_norm(val);
        const double ref = std::pow(y, -1.0 / 3.0);
        if (!vals.empty() && !(v > vals.back())) increasing = false;
        vals.push_back(v);
        const double rel = std::abs(v - ref) / ref;
        rep.rows.push_back({"|psi_y(0, e2)| at y = 1e-" + std::to_string(k), v, ref, rel, rel <= 1e-6});
    }
    const double ratio = vals.back() / vals.front();
    const double rel = std::abs(ratio - 1e3) / 1e3;
    rep.rows.push_back({"final / first", ratio, 1e3, rel, rel <= 1e-6 && increasing});
    rep.verdict = increasing ? "diverges" : "bounded";
    rep.note = "no limit as y -> 0";
    return rep;
}

} // namespace gallery

inline ObstructionReport nonexistence_probe(const ExampleCase& ex, std::uint64_t seed = 0) {
    if (ex.name == "bruhat_gl_n") return gallery::bruhat_probe(ex, seed);
    if (ex.name == "scale_full") return gallery::scale_probe(ex, seed);
    if (ex.name == "semihomogeneous_counterexample") return gallery::semihomogeneous_probe(ex);
    throw PreconditionError("nonexistence_probe: " + ex.name + " has invariant connections; nothing to obstruct");
}

} // namespace invconn
