#pragma once

#include "invconn/reduced/reduced_connection.hpp"

namespace invconn {

inline CheckSummary named(const std::string& n) {
    CheckSummary s;
    s.name = n;
    return s;
}

struct AxiomReport {
    CheckSummary vertical = named("vertical");
    CheckSummary equivariance = named("right-equivariance");
    CheckSummary type_rho = named("type-rho");
    CheckSummary invariance = named("invariance");

    bool pass() const { return vertical.pass && equivariance.pass && type_rho.pass && invariance.pass; }
    CheckSummary combined(const std::string& name = "axioms") const {
        CheckSummary s;
        s.name = name;
        for (const auto* c : {&vertical, &equivariance, &type_rho, &invariance}) s.merge(*c);
        return s;
    }
};

// Four identities at seeded samples; residuals in the Frobenius norm of the algebra.
// Samples whose translates leave the domain of the action are redrawn.
inline AxiomReport check_connection_axioms(const ConnectionForm& omega, const BundleAction& a, Index count,
                                           double tol = kConditionTol, std::uint64_t seed = 0) {
    AxiomReport rep;
    const PrincipalBundle& b = a.bundle();
    const LieGroup& s_grp = b.structure();
    const double h = a.fd_step();
    Rng rng(seed);
    for (Index i = 0; i < count; ++i) {
        for (int attempt = 0;; ++attempt) {
            try {
                const BundlePoint p = b.sample_point(rng);
                const Vec w = rng.uniform_vec(b.total_dim());
                const Vec sv = rng.uniform_vec(s_grp.dim());
                const Mat s = s_grp.random_element(rng);
                const QElement q = a.random_q(rng);
                const Mat g = a.group().random_element(rng);

                const Vec om = omega(p, w);
                const double r1 = s_grp.algebra_norm(omega(p, vertical_field_fd(b, p, sv, h)) - sv);
                const double r2 = s_grp.algebra_norm(omega(b.right(p, s), right_translate(b, s, p, w, h)) -
                                                     s_grp.adjoint_coords(checked_inverse(s), om));
                const double r3 = s_grp.algebra_norm(omega(a.theta(q, p), left_translate(a, q, p, w)) - a.rho(q, om));
                const Vec dphi = push_forward(b, [&](const BundlePoint& x) { return a.apply(g, x); }, p, w, h);
                const double r4 = s_grp.algebra_norm(omega(a.apply(g, p), dphi) - om);
                const long id = static_cast<long>(i);
                rep.vertical.record(id, r1, r1 <= tol);
                rep.equivariance.record(id, r2, r2 <= tol);
                rep.type_rho.record(id, r3, r3 <= tol);
                rep.invariance.record(id, r4, r4 <= tol);
                break;
            } catch (const EvaluationError&) {
                if (attempt >= 100) throw SamplingExhausted("axiom check: samples keep leaving the domain");
            }
        }
    }
    return rep;
}

} // namespace invconn
