#pragma once

#include "invconn/gallery/example_case.hpp"

#include <cmath>

namespace invconn {
namespace gallery {

inline const Vec& complement_w0() {
    static const Vec w0 = (Vec(3) << 0.5, -0.25, 1.0).finished();
    return w0;
}

// G-coordinates and W-coefficient of x = pr_G x + t w0
inline Vec homogeneous_pr_g(const Vec& x) { return (Vec(2) << x(0) - 0.5 * x(2), x(1) + 0.25 * x(2)).finished(); }

// [A(u) | B(u)] with A(u) = A0 + sin(u) A1 and B(u) = B0 + u B1
inline RMat homogeneous_psi_matrix(std::uint64_t seed, double u) {
    const RMat a0 = seeded_matrix(seed, 1, 3, 2), a1 = seeded_matrix(seed, 2, 3, 2);
    const RMat b0 = seeded_matrix(seed, 3, 3, 1), b1 = seeded_matrix(seed, 4, 3, 1);
    RMat m(3, 3);
    m << a0 + std::sin(u) * a1, b0 + u * b1;
    return m;
}

inline ConnectionForm homogeneous_connection(BundlePtr b, std::uint64_t seed) {
    const GroupPtr s = b->structure_ptr();
    return {b,
            [s, seed](const BundlePoint& p, const Vec& w) -> Vec {
                const Vec v = w.head(3);
                Vec gw(3);
                gw << homogeneous_pr_g(v), v(2);
                return s->adjoint_coords(checked_inverse(p.s), homogeneous_psi_matrix(seed, p.x(2)) * gw) + w.tail(3);
            },
            "omega^psi[" + std::to_string(seed) + "]"};
}

// R^3 x SU(2) with R^3 acting by translations: fibre transitive, trivial stabiliser.
inline WangData translations_only_wang() {
    auto b = share(euclidean_bundle(3, su2()));
    auto a = std::make_shared<const BundleAction>(
        b, translations(3), [](const Mat& g, const BundlePoint& p) { return BundlePoint{p.x + translation_part(g), p.s}; },
        "translations of R^3");
    const BundlePoint o{Vec::Zero(3), Mat::Identity(2, 2)};
    auto cov = std::make_shared<const PhiCovering>(
        a, std::vector<Patch>{point_patch(o, "{(0,e)}")}, stabilizer_strategy(),
        [](const BundlePoint& p) { return Transport{{translation_element(p.x), checked_inverse(p.s)}, 0, Vec(0)}; },
        "stabiliser exponential");
    WangData w;
    w.action = a;
    w.covering = cov;
    w.expected_dim = 9;
    w.coverage = "stabiliser is trivial";
    return w;
}

inline ExampleCase build_homogeneous(const ExampleOptions& opt) {
    auto b = share(euclidean_bundle(3, su2()));
    auto a = std::make_shared<const BundleAction>(
        b, translations(2),
        [](const Mat& g, const BundlePoint& p) {
            const Vec t = translation_part(g);
            Vec y = p.x;
            y(0) += t(0);
            y(1) += t(1);
            return BundlePoint{y, p.s};
        },
        "translations along span(e1, e2)", opt.fd_step);
    const Vec w0 = complement_w0();
    RMat jw = RMat::Zero(6, 1);
    jw.col(0).head(3) = w0;
    Patch w{"W x {e}", 1, {}, [w0](const Vec& u) { return BundlePoint{u(0) * w0, Mat::Identity(2, 2)}; },
            [](Rng& rng) { return rng.uniform_vec(1, -2.0, 2.0); }, [jw](const Vec&) { return jw; }};
    TransporterStrategy strat = [](const PhiCovering& c, Rng& rng) {
        TransporterSample t;
        t.u_alpha = t.u_beta = c.patch(0).sample(rng);
        t.q = c.action().q_identity();
        return t;
    };
    auto cov = std::make_shared<PhiCovering>(
        a, std::vector<Patch>{w}, strat,
        [](const BundlePoint& p) {
            return Transport{{translation_element(homogeneous_pr_g(p.x)), checked_inverse(p.s)}, 0,
                             (Vec(1) << p.x(2)).finished()};
        },
        "identity on W");
    ExampleCase ex;
    ex.name = "homogeneous";
    ex.citation = "translation-invariant connections on R^3 x SU(2), G = span(e1, e2), W = span(w0)";
    ex.action = a;
    ex.covering = cov;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
        ex.known.push_back({"omega^psi[" + std::to_string(seed) + "]", "psi_u = [A0 + sin(u) A1 | B0 + u B1], seed " +
                            std::to_string(seed), homogeneous_connection(b, seed)});
    ex.known.push_back({"omega_0", "psi = 0", mc_form(b)});
    ex.expected = {{"axioms", "pass"}, {"conditions", "pass"}, {"roundtrip", "pass"}, {"wang", "pass"}};
    ex.wang = translations_only_wang();
    return ex;
}

// E = R^3 x| SU(2) acting by (v, sigma)(x, s) = (rho(sigma) x + v, sigma s)
inline ConnectionForm isotropic_connection(BundlePtr b, double c) {
    return base_linear_form(b, [c](const Vec&) -> RMat { return c * RMat::Identity(3, 3); },
                            "omega^c[" + format_double(c) + "]");
}

inline ExampleCase build_homogeneous_isotropic(const ExampleOptions& opt) {
    auto b = share(euclidean_bundle(3, su2()));
    auto a = std::make_shared<const BundleAction>(
        b, euclid_su2(),
        [](const Mat& g, const BundlePoint& p) {
            const RMat r = g.block(2, 2, 3, 3).real();
            return BundlePoint{r * p.x + euclid_translation(g), euclid_rotation(g) * p.s};
        },
        "E = R^3 x| SU(2)", opt.fd_step);
    const BundlePoint o{Vec::Zero(3), Mat::Identity(2, 2)};
    auto cov = std::make_shared<PhiCovering>(
        a, std::vector<Patch>{point_patch(o, "{(0,e)}")}, stabilizer_strategy(),
        [](const BundlePoint& p) { return Transport{{euclid_element(p.x, p.s), Mat::Identity(2, 2)}, 0, Vec(0)}; },
        "stabiliser exponential");
    const GroupPtr s = su2();
    cov->set_alternative_transport([s](const BundlePoint& p, Rng& rng) {
        const Mat sigma = s->random_element(rng, 2.0);
        return Transport{{euclid_element(p.x, sigma), checked_inverse(p.s) * sigma}, 0, Vec(0)};
    });
    ExampleCase ex;
    ex.name = "homogeneous_isotropic";
    ex.citation = "Euclidean group R^3 x| SU(2) on R^3 x SU(2), single point covering";
    ex.action = a;
    ex.covering = cov;
    for (double c : {-1.0, 0.0, 1.0, 2.0})
        ex.known.push_back({"omega^c[" + format_double(c) + "]", "c = " + format_double(c), isotropic_connection(b, c)});
    ex.expected = {{"axioms", "pass"}, {"conditions", "pass"}, {"roundtrip", "pass"}, {"wang", "pass"}};
    WangData w;
    w.action = a;
    w.covering = cov;
    w.elements = {euclid_element(Vec::Zero(3), -Mat::Identity(2, 2)), euclid_element(Vec::Zero(3), s->exp(Vec::Unit(3, 1) * 0.7))};
    w.expected_dim = 1;
    w.family = [b](double c) { return isotropic_connection(b, c); };
    w.family_params = {-1.0, 0.0, 1.0, 2.0};
    w.coverage = "identity component of the stabiliser plus 2 sampled elements (stabiliser SU(2) is connected)";
    ex.wang = w;
    return ex;
}

// same group, fibre left alone: (v, sigma)(x, s) = (rho(sigma) x + v, s)
inline ExampleCase build_euclid_alt_lift(const ExampleOptions& opt) {
    auto b = share(euclidean_bundle(3, su2()));
    auto a = std::make_shared<const BundleAction>(
        b, euclid_su2(),
        [](const Mat& g, const BundlePoint& p) {
            const RMat r = g.block(2, 2, 3, 3).real();
            return BundlePoint{r * p.x + euclid_translation(g), p.s};
        },
        "E acting on the base only", opt.fd_step);
    const BundlePoint o{Vec::Zero(3), Mat::Identity(2, 2)};
    auto cov = std::make_shared<PhiCovering>(
        a, std::vector<Patch>{point_patch(o, "{(0,e)}")}, stabilizer_strategy(),
        [](const BundlePoint& p) {
            return Transport{{euclid_element(p.x, Mat::Identity(2, 2)), checked_inverse(p.s)}, 0, Vec(0)};
        },
        "stabiliser exponential");
    const GroupPtr s = su2();
    cov->set_alternative_transport([s](const BundlePoint& p, Rng& rng) {
        return Transport{{euclid_element(p.x, s->random_element(rng, 2.0)), checked_inverse(p.s)}, 0, Vec(0)};
    });
    ExampleCase ex;
    ex.name = "euclid_alt_lift";
    ex.citation = "Euclidean group acting on the base of R^3 x SU(2) only";
    ex.action = a;
    ex.covering = cov;
    ex.known.push_back({"omega_0", "psi = 0", mc_form(b)});
    ex.expected = {{"axioms", "pass"}, {"conditions", "pass"}, {"roundtrip", "pass"}, {"wang", "pass"}};
    WangData w;
    w.action = a;
    w.covering = cov;
    w.elements = {euclid_element(Vec::Zero(3), -Mat::Identity(2, 2))};
    w.expected_dim = 0;
    w.family = [b](double) { return mc_form(b); };
    w.family_params = {0.0};
    w.coverage = "identity component of the stabiliser plus 1 sampled element";
    ex.wang = w;
    return ex;
}

inline ActionPtr scaling_action(BundlePtr b, double fd_step) {
    return std::make_shared<const BundleAction>(
        b, positive_reals(), [](const Mat& g, const BundlePoint& p) { return BundlePoint{g(0, 0).real() * p.x, p.s}; },
        "scaling", fd_step);
}

// psi_x(g, v) = K v + g K x: satisfies the kernel condition, not the transport condition
inline RMat scale_candidate_matrix(const RMat& k, const Vec& x) {
    RMat m(3, 4);
    m << k * x, k;
    return m;
}

inline ExampleCase build_scale_full(const ExampleOptions& opt) {
    auto b = share(euclidean_bundle(3, su2()));
    auto a = scaling_action(b, opt.fd_step);
    auto cov = std::make_shared<PhiCovering>(
        a, std::vector<Patch>{section_patch(*b)}, trivial_bundle_strategy(),
        [](const BundlePoint& p) { return Transport{{Mat::Identity(1, 1), checked_inverse(p.s)}, 0, p.x}; },
        "(g, sigma) on M x {e}");
    cov->set_alternative_transport([](const BundlePoint& p, Rng& rng) {
        const double l = rng.uniform(0.5, 2.0);
        return Transport{{Mat::Constant(1, 1, Complex(l, 0.0)), checked_inverse(p.s)}, 0, p.x / l};
    });
    ExampleCase ex;
    ex.name = "scale_full";
    ex.citation = "R_{>0} scaling R^3 x SU(2); omega_0 is the only invariant connection";
    ex.action = a;
    ex.covering = cov;
    ex.known.push_back({"omega_0", "psi = 0", mc_form(b)});
    ex.expected = {{"axioms", "pass"}, {"conditions", "pass"}, {"roundtrip", "pass"}, {"trivial", "pass"}, {"probe", "unique"}};
    ex.trivial_bundle = true;
    return ex;
}

// unit sphere charts on |u| < 2: north chart covers k3 < 0.6, south chart k3 > -0.6
inline Vec sphere_chart(int chart, const Vec& u) {
    const double r2 = u.squaredNorm();
    const double d = 1.0 + r2;
    const double sign = chart == 0 ? 1.0 : -1.0;
    return (Vec(3) << 2.0 * u(0) / d, 2.0 * u(1) / d, sign * (r2 - 1.0) / d).finished();
}

inline RMat sphere_chart_jacobian(int chart, const Vec& u) {
    const double d = 1.0 + u.squaredNorm();
    const double sign = chart == 0 ? 1.0 : -1.0;
    RMat j(3, 2);
    for (int i = 0; i < 2; ++i) {
        for (int a = 0; a < 2; ++a) j(a, i) = (a == i ? 2.0 / d : 0.0) - 4.0 * u(a) * u(i) / (d * d);
        j(2, i) = sign * 4.0 * u(i) / (d * d);
    }
    return j;
}

inline Vec sphere_chart_inverse(int chart, const Vec& k) {
    const double den = chart == 0 ? 1.0 - k(2) : 1.0 + k(2);
    return (Vec(2) << k(0) / den, k(1) / den).finished();
}

inline Patch sphere_patch(int chart) {
    return {chart == 0 ? "K_north" : "K_south", 2, [](const Vec& u) { return u.squaredNorm() < 4.0; },
            [chart](const Vec& u) { return BundlePoint{sphere_chart(chart, u), Mat::Identity(2, 2)}; },
            [](Rng& rng) { return rng.uniform_vec(2, -1.9, 1.9); },
            [chart](const Vec& u) {
                RMat j = RMat::Zero(6, 2);
                j.topRows(3) = sphere_chart_jacobian(chart, u);
                return j;
            }};
}

// A(k) and B(k) of a pointwise linear psi on the sphere
inline RMat punctured_a(std::uint64_t seed, const Vec& k) {
    return seeded_matrix(seed, 11, 3, 1) + k(0) * seeded_matrix(seed, 12, 3, 1) + k(1) * k(2) * seeded_matrix(seed, 13, 3, 1);
}
inline RMat punctured_b(std::uint64_t seed, const Vec& k) {
    return seeded_matrix(seed, 14, 3, 3) + k(2) * seeded_matrix(seed, 15, 3, 3) + k(0) * k(1) * seeded_matrix(seed, 16, 3, 3);
}

// psi_alpha(g, u, w) = A(k) g + B(k) dk(w)
inline ReducedPtr punctured_psi(CoveringPtr cov, std::uint64_t seed) {
    std::vector<ReducedConnection::PatchMap> maps;
    for (int chart = 0; chart < 2; ++chart)
        maps.push_back([seed, chart](const Vec& u) -> RMat {
            const Vec k = sphere_chart(chart, u);
            RMat m(3, 3);
            m << punctured_a(seed, k), punctured_b(seed, k) * sphere_chart_jacobian(chart, u);
            return m;
        });
    return std::make_shared<const ReducedConnection>(cov, std::move(maps), "psi_K[" + std::to_string(seed) + "]");
}

// Ad_{s^{-1}} [A(k) <v, k> / |x| + B(k) pr_perp(v) / |x|] + sigma with k = x / |x|
inline ConnectionForm punctured_connection(BundlePtr b, std::uint64_t seed) {
    const GroupPtr s = b->structure_ptr();
    return {b,
            [s, seed](const BundlePoint& p, const Vec& w) -> Vec {
                const double r = p.x.norm();
                const Vec k = p.x / r;
                const Vec v = w.head(3);
                const double par = v.dot(k);
                const Vec perp = v - par * k;
                const Vec val = punctured_a(seed, k) * (par / r) + punctured_b(seed, k) * (perp / r);
                return s->adjoint_coords(checked_inverse(p.s), val) + w.tail(3);
            },
            "omega^psi_K[" + std::to_string(seed) + "]"};
}

inline ExampleCase build_scale_punctured(const ExampleOptions& opt) {
    constexpr double delta = 1e-6;
    auto b = share(PrincipalBundle(
        3, su2(), [](const Vec& x) { return x.norm() > delta; },
        [](Rng& rng) {
            Vec x;
            do x = rng.uniform_vec(3);
            while (x.norm() < 0.1);
            return x;
        },
        "R^3 \\ {0}"));
    auto a = scaling_action(b, opt.fd_step);
    TransporterStrategy strat = [](const PhiCovering& c, Rng& rng) {
        Vec k;
        do k = rng.uniform_vec(3);
        while (k.norm() < 0.1);
        k.normalize();
        TransporterSample t;
        t.q = c.action().q_identity();
        if (std::abs(k(2)) < 0.6) {
            t.alpha = rng.unit() < 0.5 ? 0 : 1;
            t.beta = 1 - t.alpha;
        } else {
            t.alpha = t.beta = k(2) <= 0.0 ? 0 : 1;
        }
        t.u_alpha = sphere_chart_inverse(static_cast<int>(t.alpha), k);
        t.u_beta = sphere_chart_inverse(static_cast<int>(t.beta), k);
        return t;
    };
    auto transport_for = [](const BundlePoint& p, int chart) {
        const double r = p.x.norm();
        const Vec k = p.x / r;
        return Transport{{Mat::Constant(1, 1, Complex(r, 0.0)), checked_inverse(p.s)}, chart, sphere_chart_inverse(chart, k)};
    };
    auto cov = std::make_shared<PhiCovering>(
        a, std::vector<Patch>{sphere_patch(0), sphere_patch(1)}, strat,
        [transport_for](const BundlePoint& p) { return transport_for(p, p.x(2) <= 0.0 ? 0 : 1); },
        "chart changes on the unit sphere");
    cov->set_alternative_transport([transport_for](const BundlePoint& p, Rng& rng) {
        const double k3 = p.x(2) / p.x.norm();
        int chart = k3 <= 0.0 ? 0 : 1;
        if (std::abs(k3) < 0.6 && rng.unit() < 0.5) chart = 1 - chart;
        return transport_for(p, chart);
    });
    CoveringPtr shared_cov = cov;
    ExampleCase ex;
    ex.name = "scale_punctured";
    ex.citation = "R_{>0} scaling (R^3 \\ {0}) x SU(2), covering by the unit sphere";
    ex.action = a;
    ex.covering = shared_cov;
    ex.known.push_back({"omega_0", "psi = 0", mc_form(b)});
    ex.known.push_back({"omega^psi_K[1]", "A(k) = A0 + k1 A1 + k2 k3 A2, B(k) = B0 + k3 B1 + k1 k2 B2, seed 1",
                        punctured_connection(b, 1)});
    ex.expected = {{"axioms", "pass"}, {"conditions", "pass"}, {"roundtrip", "pass"}, {"hsv", "pass"}};
    HsvCase h;
    h.covering = shared_cov;
    h.data.h_group = trivial_group();
    h.data.phi = [](const Mat&) -> Mat { return Mat::Identity(2, 2); };
    h.data.patch_index = 0;
    h.candidate = [shared_cov](std::uint64_t seed) { return punctured_psi(shared_cov, seed); };
    ex.hsv = h;
    return ex;
}

// omega^abc = Ad_{s^{-1}} [a z(v) + b [z(x), z(v)] + c [z(x), [z(x), z(v)]]] + sigma
inline ConnectionForm spherical_connection(BundlePtr b, std::function<double(double)> fa, std::function<double(double)> fb,
                                           std::function<double(double)> fc, std::string label) {
    return base_linear_form(
        b,
        [fa, fb, fc](const Vec& x) -> RMat {
            const double r2 = x.squaredNorm();
            const RMat bx = bracket_with(x);
            return fa(r2) * RMat::Identity(3, 3) + fb(r2) * bx + fc(r2) * bx * bx;
        },
        std::move(label));
}

inline ActionPtr rotation_action(BundlePtr b, double fd_step) {
    return std::make_shared<const BundleAction>(
        b, su2(), [](const Mat& g, const BundlePoint& p) { return BundlePoint{su2_covering(g) * p.x, g * p.s}; },
        "SU(2) rotations", fd_step);
}

inline ExampleCase build_spherical_lqg(const ExampleOptions& opt) {
    auto b = share(euclidean_bundle(3, su2()));
    auto a = rotation_action(b, opt.fd_step);
    auto cov = std::make_shared<PhiCovering>(
        a, std::vector<Patch>{section_patch(*b)}, trivial_bundle_strategy(),
        [](const BundlePoint& p) { return Transport{{Mat::Identity(2, 2), checked_inverse(p.s)}, 0, p.x}; },
        "(g, sigma) on M x {e}");
    const GroupPtr s = su2();
    cov->set_alternative_transport([s](const BundlePoint& p, Rng& rng) {
        const Mat sigma = s->random_element(rng, 2.0);
        return Transport{{sigma, checked_inverse(p.s) * sigma}, 0, su2_covering(sigma).transpose() * p.x};
    });
    ExampleCase ex;
    ex.name = "spherical_lqg";
    ex.citation = "SU(2) rotating R^3 x SU(2); the spherically symmetric family omega^abc";
    ex.action = a;
    ex.covering = cov;
    ex.known.push_back({"omega^abc", "a = 1, b = |x|^2, c = 1/(1 + |x|^2)",
                        spherical_connection(b, [](double) { return 1.0; }, [](double r2) { return r2; },
                                             [](double r2) { return 1.0 / (1.0 + r2); }, "omega^abc")});
    ex.known.push_back({"omega^abc[1,0,0]", "a = 1, b = c = 0",
                        spherical_connection(b, [](double) { return 1.0; }, [](double) { return 0.0; },
                                             [](double) { return 0.0; }, "omega^abc[1,0,0]")});
    ex.known.push_back({"omega_0", "a = b = c = 0", mc_form(b)});
    ex.expected = {{"axioms", "pass"}, {"conditions", "pass"}, {"roundtrip", "pass"}, {"trivial", "pass"}};
    ex.trivial_bundle = true;
    return ex;
}

// ---- Bruhat chart of GL(n): p = l(x) u with l unit lower triangular, u in B

inline std::vector<std::pair<Index, Index>> lower_entries(Index n) {
    std::vector<std::pair<Index, Index>> out;
    for (Index i = 1; i < n; ++i)
        for (Index j = 0; j < i; ++j) out.emplace_back(i, j);
    return out;
}

inline Mat unit_lower(Index n, const Vec& x) {
    Mat l = Mat::Identity(n, n);
    const auto idx = lower_entries(n);
    for (std::size_t k = 0; k < idx.size(); ++k) l(idx[k].first, idx[k].second) = x(static_cast<Index>(k));
    return l;
}

// Doolittle without pivoting; false when a leading minor vanishes
inline bool lu_no_pivot(const Mat& m, Mat& l, Mat& u) {
    const Index n = m.rows();
    l = Mat::Identity(n, n);
    u = Mat::Zero(n, n);
    const double scale = std::max(1.0, m.norm());
    for (Index k = 0; k < n; ++k) {
        for (Index j = k; j < n; ++j) {
            Complex acc = m(k, j);
            for (Index p = 0; p < k; ++p) acc -= l(k, p) * u(p, j);
            u(k, j) = acc;
        }
        if (std::abs(u(k, k)) < 1e-12 * scale) return false;
        for (Index i = k + 1; i < n; ++i) {
            Complex acc = m(i, k);
            for (Index p = 0; p < k; ++p) acc -= l(i, p) * u(p, k);
            l(i, k) = acc / u(k, k);
        }
    }
    return true;
}

inline Vec lower_coords(const Mat& l) {
    const auto idx = lower_entries(l.rows());
    Vec x(static_cast<Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) x(static_cast<Index>(k)) = l(idx[k].first, idx[k].second).real();
    return x;
}

inline Mat bruhat_b(Index n) {
    Mat b = Mat::Identity(n, n);
    b(0, n - 1) = 1.0;
    return b;
}

// psi = [id | B w], a natural guess that cannot satisfy both conditions
inline ReducedPtr bruhat_candidate(CoveringPtr cov, std::uint64_t seed) {
    const Index dg = cov->action().group().dim();
    const Index k = cov->action().bundle().base_dim();
    const RMat bw = seeded_matrix(seed, 21, dg, k);
    const RMat m = (RMat(dg, dg + k) << RMat::Identity(dg, dg), bw).finished();
    return std::make_shared<const ReducedConnection>(
        cov, std::vector<ReducedConnection::PatchMap>{[m](const Vec&) { return m; }}, "psi_B[" + std::to_string(seed) + "]");
}

inline ExampleCase build_bruhat(const ExampleOptions& opt) {
    const Index n = opt.n;
    if (n < 2 || n > 4) throw InvalidArgument("bruhat_gl_n: n must be between 2 and 4");
    const Index m = n * (n - 1) / 2;
    auto b = share(PrincipalBundle(
        m, borel(n), [](const Vec&) { return true; }, [m](Rng& rng) { return rng.uniform_vec(m); },
        "L_" + std::to_string(n)));
    auto a = std::make_shared<const BundleAction>(
        b, borel(n),
        [n](const Mat& g, const BundlePoint& p) {
            Mat l, u;
            if (!lu_no_pivot(g * unit_lower(n, p.x), l, u))
                throw EvaluationError("g l(x) leaves the big Bruhat cell", p.x);
            return BundlePoint{lower_coords(l), u * p.s};
        },
        "B(" + std::to_string(n) + ") on GL(" + std::to_string(n) + ")", opt.fd_step);
    auto cov = std::make_shared<PhiCovering>(
        a, std::vector<Patch>{section_patch(*b, "L x {e}")}, trivial_bundle_strategy(0, 0.5),
        [n](const BundlePoint& p) { return Transport{{Mat::Identity(n, n), checked_inverse(p.s)}, 0, p.x}; },
        "(g, sigma) on L x {e}");
    TransporterSample adv;
    adv.u_alpha = adv.u_beta = Vec::Zero(m);
    adv.q = {bruhat_b(n), bruhat_b(n)};
    adv.origin = "q = (b, b), b = e + E_1n";
    cov->adversarial().push_back(adv);
    CoveringPtr shared_cov = cov;
    ExampleCase ex;
    ex.name = "bruhat_gl_n";
    ex.citation = "upper triangular B acting on GL(" + std::to_string(n) + ") = L x B; no invariant connection";
    ex.action = a;
    ex.covering = shared_cov;
    ex.candidates = {bruhat_candidate(shared_cov, 1), bruhat_candidate(shared_cov, 2)};
    ex.expected = {{"conditions", "fail"}, {"probe", "infeasible"}};
    ex.n = n;
    return ex;
}

// ---- semihomogeneous counterexample on {y != 0} x SU(2)

inline Vec semihomogeneous_direction() { return (Vec(3) << 0.0, 0.0, 1.0 / std::sqrt(2.0)).finished(); }

inline ConnectionForm semihomogeneous_connection(BundlePtr b) {
    const GroupPtr s = b->structure_ptr();
    const Vec dir = semihomogeneous_direction();
    return {b,
            [s, dir](const BundlePoint& p, const Vec& w) -> Vec {
                const double f = 1.0 / std::cbrt(p.x(1));
                return s->adjoint_coords(checked_inverse(p.s), w(1) * f * dir) + w.tail(3);
            },
            "omega^f"};
}

inline ExampleCase build_semihomogeneous(const ExampleOptions& opt) {
    auto b = share(PrincipalBundle(
        2, su2(), [](const Vec& x) { return x(1) != 0.0; },
        [](Rng& rng) {
            Vec x;
            do x = rng.uniform_vec(2);
            while (std::abs(x(1)) < 0.05);
            return x;
        },
        "{y != 0}"));
    auto a = std::make_shared<const BundleAction>(
        b, translations(1),
        [](const Mat& g, const BundlePoint& p) {
            Vec y = p.x;
            y(0) += translation_part(g)(0);
            return BundlePoint{y, p.s};
        },
        "translations along e1", opt.fd_step);
    const Mat e = Mat::Identity(2, 2);
    Patch w{"W x {e}", 1, [](const Vec& u) { return u(0) != 0.0; },
            [e](const Vec& u) { return BundlePoint{(Vec(2) << 0.0, u(0)).finished(), e}; },
            [](Rng& rng) { return rng.uniform_vec(1); },
            [](const Vec&) {
                RMat j = RMat::Zero(5, 1);
                j(1, 0) = 1.0;
                return j;
            }};
    Patch t{"t -> (t, t^3)", 1, [](const Vec& u) { return u(0) != 0.0; },
            [e](const Vec& u) { return BundlePoint{(Vec(2) << u(0), u(0) * u(0) * u(0)).finished(), e}; },
            [](Rng& rng) { return rng.uniform_vec(1); },
            [](const Vec& u) {
                RMat j = RMat::Zero(5, 1);
                j(0, 0) = 1.0;
                j(1, 0) = 3.0 * u(0) * u(0);
                return j;
            }};
    TransporterStrategy strat = [](const PhiCovering& c, Rng& rng) {
        double y;
        do y = rng.uniform(-1.0, 1.0);
        while (std::abs(y) < 0.05);
        TransporterSample s;
        const double kind = rng.unit();
        const double r = std::cbrt(y);
        if (kind < 1.0 / 3.0) {
            s.u_alpha = s.u_beta = (Vec(1) << y).finished();
            s.q = c.action().q_identity();
        } else if (kind < 2.0 / 3.0) {
            s.beta = 1;
            s.u_alpha = (Vec(1) << y).finished();
            s.u_beta = (Vec(1) << r).finished();
            s.q = {translation_element((Vec(1) << r).finished()), Mat::Identity(2, 2)};
        } else {
            s.alpha = 1;
            s.u_alpha = (Vec(1) << r).finished();
            s.u_beta = (Vec(1) << y).finished();
            s.q = {translation_element((Vec(1) << -r).finished()), Mat::Identity(2, 2)};
        }
        return s;
    };
    auto cov = std::make_shared<PhiCovering>(
        a, std::vector<Patch>{w, t}, strat,
        [](const BundlePoint& p) {
            return Transport{{translation_element(p.x.head(1)), checked_inverse(p.s)}, 0, p.x.tail(1)};
        },
        "translations between W and the cubic");
    ExampleCase ex;
    ex.name = "semihomogeneous_counterexample";
    ex.citation = "translations of {y != 0} x SU(2) with f(y) = y^(-1/3); no smooth extension to y = 0";
    ex.action = a;
    ex.covering = cov;
    ex.known.push_back({"omega^f", "f(y) = y^(-1/3), s = tau_3 / sqrt(2)", semihomogeneous_connection(b)});
    ex.expected = {{"axioms", "pass"}, {"conditions", "pass"}, {"roundtrip", "pass"}, {"probe", "diverges"}};
    return ex;
}

} // namespace gallery

struct CatalogueEntry {
    std::string name;
    std::string citation;
    std::function<ExampleCase(const ExampleOptions&)> build;
};

inline const std::vector<CatalogueEntry>& example_catalogue() {
    static const std::vector<CatalogueEntry> cat = [] {
        std::vector<CatalogueEntry> c = {
            {"homogeneous", "", gallery::build_homogeneous},
            {"homogeneous_isotropic", "", gallery::build_homogeneous_isotropic},
            {"euclid_alt_lift", "", gallery::build_euclid_alt_lift},
            {"scale_full", "", gallery::build_scale_full},
            {"scale_punctured", "", gallery::build_scale_punctured},
            {"spherical_lqg", "", gallery::build_spherical_lqg},
            {"bruhat_gl_n", "", gallery::build_bruhat},
            {"semihomogeneous_counterexample", "", gallery::build_semihomogeneous},
        };
        for (auto& e : c) e.citation = e.build(ExampleOptions{}).citation;
        return c;
    }();
    return cat;
}

inline std::vector<std::string> example_names() {
    std::vector<std::string> out;
    for (const auto& e : example_catalogue()) out.push_back(e.name);
    return out;
}

inline ExampleCase build_example(const std::string& name, const ExampleOptions& opt = {}) {
    for (const auto& e : example_catalogue())
        if (e.name == name) return e.build(opt);
    std::string all;
    for (const auto& n : example_names()) all += (all.empty() ? "" : ", ") + n;
    throw NotFound("unknown example '" + name + "'; available: " + all);
}

} // namespace invconn
