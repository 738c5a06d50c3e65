#pragma once

#include "invconn/core/errors.hpp"
#include "invconn/core/linalg.hpp"

#include <functional>
#include <optional>
#include <string>

namespace invconn {

constexpr double kDefaultFdStep = 1e-5;

// Map between coordinate spaces with an optional analytic differential.
struct SmoothMap {
    Index domain_dim = 0;
    Index codomain_dim = 0;
    std::function<Vec(const Vec&)> evaluate;
    std::function<Vec(const Vec&, const Vec&)> differential;  // (x, v) -> df_x(v); may be empty
    double fd_step = kDefaultFdStep;
    std::string label;

    Vec operator()(const Vec& x) const;
};

// Calls f and turns exceptions and non-finite output into EvaluationError.
template <class F>
auto guarded_call(const F& f, const Vec& x, const std::string& label) -> decltype(f(x)) {
    try {
        auto y = f(x);
        if (!y.allFinite()) throw EvaluationError(label + ": non-finite value", x);
        return y;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw EvaluationError(label + ": " + e.what(), x);
    }
}

inline Vec SmoothMap::operator()(const Vec& x) const {
    if (x.size() != domain_dim) throw InvalidArgument(label + ": input has wrong dimension");
    Vec y = guarded_call(evaluate, x, label);
    if (y.size() != codomain_dim) throw InvalidArgument(label + ": output has wrong dimension");
    return y;
}

inline Vec central_difference(const SmoothMap& f, const Vec& x, const Vec& v, double h) {
    if (!(h > 0.0)) throw InvalidArgument("central_difference: step must be positive");
    return (f(x + h * v) - f(x - h * v)) / (2.0 * h);
}

// df_x(v). A supplied analytic differential is cross-checked against the
// finite difference before being returned.
inline Vec fd_differential(const SmoothMap& f, const Vec& x, const Vec& v) {
    if (v.size() != f.domain_dim) throw InvalidArgument(f.label + ": tangent has wrong dimension");
    const Vec fd = central_difference(f, x, v, f.fd_step);
    if (!f.differential) return fd;
    Vec an = guarded_call([&](const Vec& p) { return f.differential(p, v); }, x, f.label);
    if ((an - fd).norm() > 1e-4 * (1.0 + v.norm()))
        throw InternalConsistency(f.label + ": analytic differential disagrees with finite difference");
    return an;
}

inline RMat fd_jacobian(const SmoothMap& f, const Vec& x) {
    RMat j(f.codomain_dim, f.domain_dim);
    for (Index i = 0; i < f.domain_dim; ++i) j.col(i) = fd_differential(f, x, Vec::Unit(f.domain_dim, i));
    return j;
}

} // namespace invconn
