#pragma once

#include "invconn/reduced/axioms.hpp"
#include "invconn/reduced/reconstruct.hpp"
#include "invconn/special/hsv.hpp"
#include "invconn/special/spherical.hpp"
#include "invconn/special/trivial_bundle.hpp"
#include "invconn/special/wang.hpp"

#include <map>
#include <optional>
#include <sstream>

namespace invconn {

struct KnownConnection {
    std::string label;
    std::string parameters;
    ConnectionForm form;
};

// Fibre-transitive data for the Wang solver.
struct WangData {
    ActionPtr action;
    CoveringPtr covering;            // single point {p}
    std::vector<Mat> elements;       // stabiliser elements beyond exp of the algebra
    Index expected_dim = 0;
    std::function<ConnectionForm(double)> family;  // c -> omega^c, affine in c
    std::vector<double> family_params;
    std::string coverage;
};

struct HsvCase {
    CoveringPtr covering;
    HsvData data;
    std::function<ReducedPtr(std::uint64_t)> candidate;
    Index candidates = 5;
};

struct ExampleOptions {
    Index n = 2;               // bruhat size
    double fd_step = kDefaultFdStep;
};

struct ExampleCase {
    std::string name;
    std::string citation;
    ActionPtr action;
    CoveringPtr covering;
    std::vector<KnownConnection> known;
    std::map<std::string, std::string> expected;  // check -> "pass", "fail", "infeasible", "unique", "diverges"
    std::optional<WangData> wang;
    std::optional<HsvCase> hsv;
    std::vector<ReducedPtr> candidates;           // reduced data not computed from a known connection
    bool trivial_bundle = false;                  // covering is M x {e} with transporters (g, sigma)
    Index n = 0;

    const KnownConnection& connection(const std::string& label) const {
        for (const auto& k : known)
            if (k.label == label) return k;
        throw NotFound(name + ": no known connection " + label);
    }
};

using CasePtr = std::shared_ptr<const ExampleCase>;

namespace gallery {

inline PrincipalBundle euclidean_bundle(Index n, GroupPtr s, std::string label = "") {
    if (label.empty()) label = "R^" + std::to_string(n);
    return PrincipalBundle(n, std::move(s), [](const Vec&) { return true; },
                           [n](Rng& rng) { return rng.uniform_vec(n); }, std::move(label));
}

inline BundlePtr share(PrincipalBundle b) { return std::make_shared<const PrincipalBundle>(std::move(b)); }

inline ConnectionForm mc_form(BundlePtr b) {
    ConnectionForm f = maurer_cartan_form(std::move(b));
    f.provenance = "omega_0";
    return f;
}

// omega(v, sigma) = Ad_{s^{-1}} A(x) v + sigma, A(x) of size dimS x dim M
inline ConnectionForm base_linear_form(BundlePtr b, std::function<RMat(const Vec&)> a, std::string label) {
    const Index k = b->base_dim();
    const Index d = b->fibre_dim();
    const GroupPtr s = b->structure_ptr();
    return {b,
            [a, s, k, d](const BundlePoint& p, const Vec& w) -> Vec {
                return s->adjoint_coords(checked_inverse(p.s), a(p.x) * w.head(k)) + w.segment(k, d);
            },
            std::move(label)};
}

// 3x3 matrix of v -> zeta^{-1}[zeta(x), zeta(v)]
inline RMat bracket_with(const Vec& x) {
    const Mat z = zeta(x);
    RMat m(3, 3);
    for (int j = 0; j < 3; ++j) m.col(j) = zeta_inv(bracket(z, tau(j)), 1e-8);
    return m;
}

inline RMat seeded_matrix(std::uint64_t seed, std::uint64_t salt, Index r, Index c) {
    Rng rng(seed);
    Rng sub = rng.split(salt);
    return sub.uniform_mat(r, c);
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace gallery
} // namespace invconn
