#pragma once

#include "invconn/core/groups.hpp"
#include "invconn/core/smooth_map.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace invconn {

// Point (x, s) of the trivial bundle M x S.
struct BundlePoint {
    Vec x;
    Mat s;
};

// Tangent vectors at (x, s) are stored as one vector [v ; sigma]: v is the base
// velocity and sigma the coordinates of s^{-1} s' in the basis of the fibre algebra.
class PrincipalBundle {
public:
    PrincipalBundle(Index base_dim, GroupPtr structure, std::function<bool(const Vec&)> in_base,
                    std::function<Vec(Rng&)> sample_base, std::string base_label)
        : base_dim_(base_dim), structure_(std::move(structure)), in_base_(std::move(in_base)),
          sample_base_(std::move(sample_base)), base_label_(std::move(base_label)) {
        if (!structure_) throw InvalidArgument("PrincipalBundle: missing structure group");
    }

    Index base_dim() const { return base_dim_; }
    Index fibre_dim() const { return structure_->dim(); }
    Index total_dim() const { return base_dim_ + structure_->dim(); }
    const LieGroup& structure() const { return *structure_; }
    const GroupPtr& structure_ptr() const { return structure_; }
    const std::string& base_label() const { return base_label_; }

    bool in_base(const Vec& x) const { return x.size() == base_dim_ && x.allFinite() && in_base_(x); }

    bool contains(const BundlePoint& p) const { return in_base(p.x) && structure_->contains(p.s); }

    void require(const BundlePoint& p, const std::string& what) const {
        if (!in_base(p.x)) throw EvaluationError(what + ": base point outside " + base_label_, p.x);
        structure_->require(p.s, what);
    }

    BundlePoint right(const BundlePoint& p, const Mat& s) const {
        structure_->require(s, "right action");
        return {p.x, p.s * s};
    }

    Vec sample_base(Rng& rng) const {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            Vec x = sample_base_(rng);
            if (in_base(x)) return x;
        }
        throw SamplingExhausted("base sampler of " + base_label_ + " keeps leaving the domain");
    }

    BundlePoint sample_point(Rng& rng) const { return {sample_base(rng), structure_->random_element(rng)}; }

    double distance(const BundlePoint& a, const BundlePoint& b) const {
        return (a.x - b.x).norm() + (a.s - b.s).norm();
    }

    Vec base_part(const Vec& w) const { return w.head(base_dim_); }
    Vec fibre_part(const Vec& w) const { return w.tail(fibre_dim()); }

    Vec join(const Vec& v, const Vec& sigma) const {
        Vec w(total_dim());
        w << v, sigma;
        return w;
    }

private:
    Index base_dim_;
    GroupPtr structure_;
    std::function<bool(const Vec&)> in_base_;
    std::function<Vec(Rng&)> sample_base_;
    std::string base_label_;
};

using BundlePtr = std::shared_ptr<const PrincipalBundle>;

using BundleCurve = std::function<BundlePoint(double)>;

// t -> (x + t v, s exp(t sigma))
inline BundleCurve curve_through(const PrincipalBundle& b, const BundlePoint& p, const Vec& w) {
    const Vec v = b.base_part(w);
    const Mat xs = b.structure().algebra_matrix(b.fibre_part(w));
    return [p, v, xs](double t) { return BundlePoint{p.x + t * v, p.s * mat_exp(t * xs)}; };
}

// Central difference velocity in bundle tangent coordinates.
inline Vec curve_velocity(const PrincipalBundle& b, const BundleCurve& c, double h = kDefaultFdStep) {
    const BundlePoint p0 = c(0.0);
    const BundlePoint pp = c(h);
    const BundlePoint pm = c(-h);
    const Vec v = (pp.x - pm.x) / (2.0 * h);
    const Mat ds = checked_inverse(p0.s) * (pp.s - pm.s) / (2.0 * h);
    // a difference quotient only lies in the algebra up to O(h^2)
    return b.join(v, b.structure().algebra_coords(ds, 1e-7));
}

inline Vec push_forward(const PrincipalBundle& b, const std::function<BundlePoint(const BundlePoint&)>& f,
                        const BundlePoint& p, const Vec& w, double h = kDefaultFdStep) {
    auto c = curve_through(b, p, w);
    return curve_velocity(b, [&](double t) { return f(c(t)); }, h);
}

// Element (g, s) of Q = G x S.
struct QElement {
    Mat g;
    Mat s;
};

inline QElement q_mul(const QElement& a, const QElement& b) { return {a.g * b.g, a.s * b.s}; }
inline QElement q_inverse(const QElement& a) { return {checked_inverse(a.g), checked_inverse(a.s)}; }

// Left action of G on M x S by principal bundle automorphisms.
class BundleAction {
public:
    using Phi = std::function<BundlePoint(const Mat&, const BundlePoint&)>;

    BundleAction(BundlePtr bundle, GroupPtr group, Phi phi, std::string label, double fd_step = kDefaultFdStep)
        : bundle_(std::move(bundle)), group_(std::move(group)), phi_(std::move(phi)), label_(std::move(label)),
          fd_step_(fd_step) {
        if (!bundle_ || !group_) throw InvalidArgument("BundleAction: missing bundle or group");
    }

    const PrincipalBundle& bundle() const { return *bundle_; }
    const BundlePtr& bundle_ptr() const { return bundle_; }
    const LieGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    const LieGroup& structure() const { return bundle_->structure(); }
    const std::string& label() const { return label_; }
    double fd_step() const { return fd_step_; }

    Index q_dim() const { return group_->dim() + structure().dim(); }

    BundlePoint apply(const Mat& g, const BundlePoint& p) const {
        group_->require(g, label_);
        bundle_->require(p, label_);
        BundlePoint out;
        try {
            out = phi_(g, p);
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw EvaluationError(label_ + ": " + e.what(), p.x);
        }
        if (!out.x.allFinite() || !out.s.allFinite())
            throw EvaluationError(label_ + ": non-finite image", p.x);
        bundle_->require(out, label_ + " (image)");
        return out;
    }

    // Theta((g, s), p) = Phi(g, p) s^{-1}
    BundlePoint theta(const QElement& q, const BundlePoint& p) const {
        structure().require(q.s, "theta");
        BundlePoint out = apply(q.g, p);
        out.s = out.s * checked_inverse(q.s);
        return out;
    }

    Vec rho(const QElement& q, const Vec& c) const { return structure().adjoint_coords(q.s, c); }
    RMat rho_matrix(const QElement& q) const { return structure().adjoint_matrix(q.s); }

    QElement q_identity() const { return {group_->identity(), structure().identity()}; }

    // random element exp(g) x exp(s) with uniform coordinates
    QElement random_q(Rng& rng, double scale = 1.0) const {
        Mat g = group_->random_element(rng, scale);
        Mat s = structure().random_element(rng, scale);
        return {g, s};
    }

    QElement q_exp(const Vec& gs) const {
        return {group_->exp(gs.head(group_->dim())), structure().exp(gs.tail(structure().dim()))};
    }

private:
    BundlePtr bundle_;
    GroupPtr group_;
    Phi phi_;
    std::string label_;
    double fd_step_;
};

using ActionPtr = std::shared_ptr<const BundleAction>;

struct InducedPoint {
    Vec y;
    double spread = 0.0;  // max deviation over the fibre probes
};

// phi(g, x): base part of Phi(g, (x, s)) for a few fibre probes s.
inline InducedPoint induced_action(const BundleAction& a, const Mat& g, const Vec& x, const std::vector<Mat>& probes) {
    InducedPoint out;
    std::vector<Mat> ps = probes;
    if (ps.empty()) ps.push_back(a.structure().identity());
    out.y = a.apply(g, {x, ps.front()}).x;
    for (std::size_t i = 1; i < ps.size(); ++i)
        out.spread = std::max(out.spread, (a.apply(g, {x, ps[i]}).x - out.y).norm());
    return out;
}

} // namespace invconn
