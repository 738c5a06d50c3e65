#pragma once

#include "invconn/bundle/vector_fields.hpp"

namespace invconn {

// S-algebra valued 1-form on the bundle, evaluated in tangent coordinates.
struct ConnectionForm {
    BundlePtr bundle;
    std::function<Vec(const BundlePoint&, const Vec&)> evaluate;
    std::string provenance;

    Vec operator()(const BundlePoint& p, const Vec& w) const {
        if (w.size() != bundle->total_dim()) throw InvalidArgument("connection form: tangent has wrong dimension");
        Vec out = guarded_call([&](const Vec&) { return evaluate(p, w); }, p.x, provenance);
        if (out.size() != bundle->fibre_dim()) throw InvalidArgument("connection form: value has wrong dimension");
        return out;
    }

    // dimS x dimP matrix of omega_p
    RMat matrix(const BundlePoint& p) const {
        const Index n = bundle->total_dim();
        RMat m(bundle->fibre_dim(), n);
        for (Index i = 0; i < n; ++i) m.col(i) = (*this)(p, Vec::Unit(n, i));
        return m;
    }

    static ConnectionForm from_matrix(BundlePtr b, std::function<RMat(const BundlePoint&)> m, std::string label) {
        return {std::move(b), [m](const BundlePoint& p, const Vec& w) -> Vec { return m(p) * w; }, std::move(label)};
    }
};

// s^{-1} ds, the flat connection of the trivial bundle
inline ConnectionForm maurer_cartan_form(BundlePtr b) {
    const Index k = b->base_dim();
    const Index d = b->fibre_dim();
    return {b, [k, d](const BundlePoint&, const Vec& w) -> Vec { return w.segment(k, d); }, "fibre projection"};
}

// ker omega_p; spans a complement of the vertical space when omega is a connection
inline RMat horizontal_space(const ConnectionForm& w, const BundlePoint& p) {
    const RMat m = w.matrix(p);
    RMat h = null_space(m);
    const Index k = w.bundle->base_dim();
    RMat both(m.cols(), h.cols() + w.bundle->fibre_dim());
    both << h, vertical_matrix(*w.bundle);
    if (h.cols() != k || numerical_rank(both) != m.cols())
        throw DegenerateConnection("horizontal space is not complementary to the vertical space");
    return h;
}

} // namespace invconn
