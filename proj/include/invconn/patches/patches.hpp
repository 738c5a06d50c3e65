#pragma once

#include "invconn/bundle/vector_fields.hpp"

namespace invconn {

// Chart-presented immersed submanifold u -> p(u) of the bundle.
struct Patch {
    std::string label;
    Index chart_dim = 0;
    std::function<bool(const Vec&)> in_domain;
    std::function<BundlePoint(const Vec&)> immersion;
    std::function<Vec(Rng&)> sample_chart;
    std::function<RMat(const Vec&)> jacobian;  // optional, in bundle tangent coordinates

    bool contains(const Vec& u) const { return u.size() == chart_dim && u.allFinite() && (!in_domain || in_domain(u)); }

    BundlePoint point(const Vec& u) const {
        if (!contains(u)) throw EvaluationError("patch " + label + ": chart point outside the domain", u);
        try {
            BundlePoint p = immersion(u);
            if (!p.x.allFinite() || !p.s.allFinite()) throw EvaluationError("patch " + label + ": non-finite point", u);
            return p;
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw EvaluationError("patch " + label + ": " + e.what(), u);
        }
    }

    Vec sample(Rng& rng) const {
        if (chart_dim == 0) return Vec(0);
        for (int attempt = 0; attempt < 1000; ++attempt) {
            Vec u = sample_chart(rng);
            if (contains(u)) return u;
        }
        throw SamplingExhausted("patch " + label + ": chart sampler keeps leaving the domain");
    }
};

inline Patch section_patch(const PrincipalBundle& b, std::string label = "M x {e}") {
    const Mat e = b.structure().identity();
    auto bp = std::make_shared<PrincipalBundle>(b);
    const Index n = b.base_dim();
    const Index total = b.total_dim();
    return {std::move(label), n, [bp](const Vec& x) { return bp->in_base(x); },
            [e](const Vec& x) { return BundlePoint{x, e}; }, [bp](Rng& rng) { return bp->sample_base(rng); },
            [n, total](const Vec&) -> RMat { return RMat::Identity(total, n); }};
}

inline Patch point_patch(const BundlePoint& p, std::string label) {
    return {std::move(label), 0, [](const Vec&) { return true; }, [p](const Vec&) { return p; },
            [](Rng&) { return Vec(0); }, {}};
}

inline RMat chart_jacobian_fd(const PrincipalBundle& b, const Patch& patch, const Vec& u, double h = kDefaultFdStep) {
    RMat j(b.total_dim(), patch.chart_dim);
    for (Index i = 0; i < patch.chart_dim; ++i) {
        const Vec e = Vec::Unit(patch.chart_dim, i);
        j.col(i) = curve_velocity(b, [&](double t) { return patch.point(u + t * e); }, h);
    }
    return j;
}

// Columns d/du_i p(u) in bundle tangent coordinates. An analytic Jacobian is
// preferred and cross-checked whenever the difference stencil stays in the chart.
inline RMat chart_jacobian(const PrincipalBundle& b, const Patch& patch, const Vec& u, double h = kDefaultFdStep) {
    if (!patch.jacobian) return chart_jacobian_fd(b, patch, u, h);
    if (!patch.contains(u)) throw EvaluationError("patch " + patch.label + ": chart point outside the domain", u);
    const RMat j = guarded_call(patch.jacobian, u, "patch " + patch.label);
    if (j.rows() != b.total_dim() || j.cols() != patch.chart_dim)
        throw InvalidArgument("patch " + patch.label + ": Jacobian has wrong shape");
    bool stencil_inside = true;
    for (Index i = 0; i < patch.chart_dim && stencil_inside; ++i) {
        const Vec e = Vec::Unit(patch.chart_dim, i);
        stencil_inside = patch.contains(u + h * e) && patch.contains(u - h * e);
    }
    if (stencil_inside) {
        const RMat fd = chart_jacobian_fd(b, patch, u, h);
        for (Index i = 0; i < patch.chart_dim; ++i)
            if ((fd.col(i) - j.col(i)).norm() > 1e-4 * (1.0 + j.col(i).norm()))
                throw InternalConsistency("patch " + patch.label + ": analytic Jacobian disagrees with finite difference");
    }
    return j;
}

struct PatchRankReport {
    bool is_patch = false;
    Index rank = 0;
    Index required = 0;
    Index immersion_rank = 0;
    Vec singular_values;
};

// rank of [J | g~_i | s~_j] against dim P
inline PatchRankReport is_theta_patch(const BundleAction& a, const Patch& patch, const Vec& u) {
    const PrincipalBundle& b = a.bundle();
    const BundlePoint p = patch.point(u);
    const RMat j = chart_jacobian(b, patch, u, a.fd_step());
    const RMat g = fundamental_matrix(a, p);
    RMat m(b.total_dim(), j.cols() + g.cols() + b.fibre_dim());
    m << j, g, vertical_matrix(b);
    auto svd = svd_summary(m);
    PatchRankReport r;
    r.rank = svd.rank;
    r.required = b.total_dim();
    r.singular_values = svd.singular_values;
    r.immersion_rank = numerical_rank(j);
    r.is_patch = r.rank == r.required && r.immersion_rank == patch.chart_dim;
    return r;
}

// dim M - dim G + dim G_x, dim G_x = dim ker d_e phi_x
inline Index min_patch_dim(const BundleAction& a, const Vec& x) {
    const RMat d = induced_infinitesimal(a, x);
    const Index stab = d.cols() - numerical_rank(d);
    return a.bundle().base_dim() - a.group().dim() + stab;
}

struct TransporterSample {
    Index id = 0;
    Index alpha = 0;
    Index beta = 0;
    Vec u_alpha;
    Vec u_beta;
    QElement q;
    std::string origin;  // "seeded" or the name of an adversarial probe
};

// Point p written as Theta(q, p_alpha(u)).
struct Transport {
    QElement q;
    Index alpha = 0;
    Vec u;
};

class PhiCovering;

using TransporterStrategy = std::function<TransporterSample(const PhiCovering&, Rng&)>;
using TransportOracle = std::function<Transport(const BundlePoint&)>;
using RandomTransportOracle = std::function<Transport(const BundlePoint&, Rng&)>;

class PhiCovering {
public:
    PhiCovering(ActionPtr action, std::vector<Patch> patches, TransporterStrategy strategy, TransportOracle transport,
                std::string strategy_name)
        : action_(std::move(action)), patches_(std::move(patches)), strategy_(std::move(strategy)),
          transport_(std::move(transport)), strategy_name_(std::move(strategy_name)) {
        if (!action_) throw InvalidArgument("PhiCovering: missing action");
        if (patches_.empty()) throw InvalidArgument("PhiCovering: no patches");
    }

    const BundleAction& action() const { return *action_; }
    const ActionPtr& action_ptr() const { return action_; }
    const std::vector<Patch>& patches() const { return patches_; }
    const Patch& patch(Index alpha) const {
        if (alpha < 0 || alpha >= static_cast<Index>(patches_.size())) throw InvalidArgument("PhiCovering: bad patch index");
        return patches_[static_cast<std::size_t>(alpha)];
    }
    const std::string& strategy_name() const { return strategy_name_; }

    bool has_strategy() const { return static_cast<bool>(strategy_); }
    TransporterSample draw(Rng& rng) const {
        if (!strategy_) throw PreconditionError("covering has no transporter strategy");
        return strategy_(*this, rng);
    }

    std::vector<TransporterSample>& adversarial() { return adversarial_; }
    const std::vector<TransporterSample>& adversarial() const { return adversarial_; }

    // Oracle answer, re-verified.
    Transport transport(const BundlePoint& p) const {
        if (!transport_) throw CoverageError("covering has no transport oracle");
        action_->bundle().require(p, "transport");
        Transport t;
        try {
            t = transport_(p);
        } catch (const Error& e) {
            throw CoverageError(std::string("transport oracle failed: ") + e.what());
        }
        check_transport(p, t);
        return t;
    }

    void set_alternative_transport(RandomTransportOracle alt) { alt_transport_ = std::move(alt); }
    bool has_alternative_transport() const { return static_cast<bool>(alt_transport_); }
    Transport alternative_transport(const BundlePoint& p, Rng& rng) const {
        if (!alt_transport_) throw CoverageError("covering has no alternative transport oracle");
        Transport t = alt_transport_(p, rng);
        check_transport(p, t);
        return t;
    }

    double transport_defect(const BundlePoint& p, const Transport& t) const {
        return action_->bundle().distance(action_->theta(t.q, patch(t.alpha).point(t.u)), p);
    }

private:
    void check_transport(const BundlePoint& p, const Transport& t) const {
        const double d = transport_defect(p, t);
        if (!(d <= 1e-9 * (1.0 + p.x.norm())))
            throw CoverageError("transport oracle returned q with Theta(q, p_alpha) != p (defect " + std::to_string(d) + ")");
    }

    ActionPtr action_;
    std::vector<Patch> patches_;
    TransporterStrategy strategy_;
    TransportOracle transport_;
    RandomTransportOracle alt_transport_;
    std::string strategy_name_;
    std::vector<TransporterSample> adversarial_;
};

using CoveringPtr = std::shared_ptr<const PhiCovering>;

inline double transporter_defect(const PhiCovering& c, const TransporterSample& t) {
    const BundlePoint pa = c.patch(t.alpha).point(t.u_alpha);
    const BundlePoint pb = c.patch(t.beta).point(t.u_beta);
    return c.action().bundle().distance(c.action().theta(t.q, pa), pb);
}

inline void verify_transporter(const PhiCovering& c, const TransporterSample& t) {
    const double d = transporter_defect(c, t);
    if (!(d <= 1e-9 * (1.0 + t.u_beta.norm())))
        throw InternalConsistency("transporter sample " + std::to_string(t.id) + " does not satisfy q p_alpha = p_beta (defect " +
                                  std::to_string(d) + ")");
}

// Adversarial samples first, then `count` seeded ones; ids follow list order.
inline std::vector<TransporterSample> sample_transporters(const PhiCovering& c, Index count, std::uint64_t seed) {
    std::vector<TransporterSample> out;
    for (const auto& t : c.adversarial()) out.push_back(t);
    Rng rng(seed);
    for (Index i = 0; i < count; ++i) {
        TransporterSample t;
        bool ok = false;
        for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
            try {
                t = c.draw(rng);
                ok = true;
            } catch (const EvaluationError&) {
                // landed outside the domain of the action or a chart; redraw
            } catch (const DomainError&) {
            }
        }
        if (!ok) throw SamplingExhausted("transporter strategy " + c.strategy_name() + " did not land on a patch");
        t.origin = "seeded";
        out.push_back(t);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].id = static_cast<Index>(i);
        verify_transporter(c, out[i]);
    }
    return out;
}

// (a) single patch M x {e}: Phi(g, (x, e)) = (y, sigma) gives q = (g, sigma).
inline TransporterStrategy trivial_bundle_strategy(Index alpha = 0, double scale = 1.0) {
    return [alpha, scale](const PhiCovering& c, Rng& rng) {
        const BundleAction& a = c.action();
        const Patch& patch = c.patch(alpha);
        const Vec x = patch.sample(rng);
        const Mat g = a.group().random_element(rng, scale);
        const BundlePoint img = a.apply(g, patch.point(x));
        if (!patch.contains(img.x)) throw EvaluationError("image left the patch", img.x);
        TransporterSample t;
        t.alpha = t.beta = alpha;
        t.u_alpha = x;
        t.u_beta = img.x;
        t.q = {g, img.s};
        return t;
    };
}

// (b) single point patch {p}: exponentiate the stabiliser algebra
inline TransporterStrategy stabilizer_strategy(Index alpha = 0, double scale = 1.0) {
    return [alpha, scale](const PhiCovering& c, Rng& rng) {
        const BundleAction& a = c.action();
        const BundlePoint p = c.patch(alpha).point(Vec(0));
        const StabilizerData st = stabilizer_data(a, p);
        TransporterSample t;
        t.alpha = t.beta = alpha;
        t.u_alpha = t.u_beta = Vec(0);
        if (st.dim == 0) {
            t.q = a.q_identity();
        } else {
            const Vec coef = rng.uniform_vec(st.dim, -scale, scale);
            t.q = a.q_exp(st.kernel * coef);
        }
        return t;
    };
}

} // namespace invconn
