// One line per acceptance criterion; exit status is the number of failed criteria.
#include "invconn/cli/cli.hpp"

#include <cstdio>

using namespace invconn;

namespace {

struct Line {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

Line lie_core() {
    Line l;
    double br = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Mat rhs = Mat::Zero(2, 2);
            for (int k = 0; k < 3; ++k) rhs += 2.0 * detail::levi_civita(i, j, k) * tau(k);
            br = std::max(br, (bracket(tau(i), tau(j)) - rhs).norm());
        }
    l.require(br <= 1e-12, "bracket " + sci(br));
    const GroupPtr s = su2();
    Rng rng(1);
    double hom = 0.0, rod = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Mat g = s->random_element(rng, 2.0), h = s->random_element(rng, 2.0);
        hom = std::max(hom, (s->adjoint_matrix(g * h) - s->adjoint_matrix(g) * s->adjoint_matrix(h)).norm());
        hom = std::max(hom, (su2_covering(g * h) - su2_covering(g) * su2_covering(h)).norm());
        const double alpha = rng.uniform(-M_PI, M_PI);
        Vec n = rng.uniform_vec(3);
        n.normalize();
        RMat k(3, 3);
        k << 0, -n(2), n(1), n(2), 0, -n(0), -n(1), n(0), 0;
        const RMat r = RMat::Identity(3, 3) + std::sin(alpha) * k + (1.0 - std::cos(alpha)) * k * k;
        rod = std::max(rod, (su2_covering(mat_exp(0.5 * alpha * zeta(n))) - r).norm());
    }
    l.require(hom <= 1e-9, "homomorphism " + sci(hom));
    l.require(rod <= 1e-9, "Rodrigues " + sci(rod));
    if (l.ok) l.detail = "bracket " + sci(br) + ", homomorphisms " + sci(hom) + ", Rodrigues " + sci(rod);
    return l;
}

Line axioms() {
    Line l;
    double worst = 0.0;
    int count = 0;
    auto run = [&](const ExampleCase& ex, const std::string& label) {
        const AxiomReport r = check_connection_axioms(ex.connection(label).form, *ex.action, 200, 1e-6, 11);
        const CheckSummary c = r.combined();
        worst = std::max(worst, c.max_residual);
        ++count;
        l.require(r.pass() && c.max_residual <= 1e-6, ex.name + " " + label + " " + sci(c.max_residual));
    };
    const ExampleCase sph = build_example("spherical_lqg");
    run(sph, "omega^abc");
    run(sph, "omega_0");
    const ExampleCase iso = build_example("homogeneous_isotropic");
    for (const char* c : {"omega^c[-1]", "omega^c[0]", "omega^c[1]", "omega^c[2]"}) run(iso, c);
    const ExampleCase hom = build_example("homogeneous");
    for (int s = 1; s <= 5; ++s) run(hom, "omega^psi[" + std::to_string(s) + "]");
    if (l.ok) l.detail = std::to_string(count) + " connections x 200 samples, max residual " + sci(worst);
    return l;
}

Line roundtrip() {
    Line l;
    double worst = 0.0;
    int count = 0;
    for (const auto& name : example_names()) {
        const ExampleCase ex = build_example(name);
        for (const auto& k : ex.known) {
            const CheckSummary s = roundtrip_check(k.form, ex.covering, 200, 1e-6, 12);
            worst = std::max(worst, s.max_residual);
            ++count;
            l.require(s.pass, name + " " + k.label + " " + sci(s.max_residual));
        }
    }
    const ExampleCase sp = build_example("scale_punctured");
    double back = 0.0;
    Rng rng(13);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const ReducedPtr psi = sp.hsv->candidate(seed);
        const ReducedConnection again = reduce(reconstruct(psi), sp.covering);
        for (Index alpha = 0; alpha < 2; ++alpha)
            for (int i = 0; i < 20; ++i) {
                const Vec u = sp.covering->patch(alpha).sample(rng);
                back = std::max(back, (again.matrix(alpha, u) - psi->matrix(alpha, u)).norm());
            }
    }
    l.require(back <= 1e-6, "reduce(reconstruct(psi)) " + sci(back));
    if (l.ok) l.detail = std::to_string(count) + " known connections " + sci(worst) + ", 5 psi on scale_punctured " + sci(back);
    return l;
}

Line wang() {
    Line l;
    RunConfig cfg;
    cfg.samples = 100;
    const ExampleCase iso = build_example("homogeneous_isotropic");
    const CheckOutcome w = run_check(iso, "wang", cfg);
    const WangSolution si = wang_solve(*iso.wang->action, iso.wang->covering->patch(0).point(Vec(0)), iso.wang->elements);
    l.require(si.space.dim() == 1, "isotropic dimension " + std::to_string(si.space.dim()));
    l.require(w.outcome == "pass" && w.max_residual <= 1e-8, "family " + sci(w.max_residual));
    const ExampleCase alt = build_example("euclid_alt_lift");
    const Index da = wang_solve(*alt.wang->action, alt.wang->covering->patch(0).point(Vec(0)), alt.wang->elements).space.dim();
    l.require(da == 0, "alt lift dimension " + std::to_string(da));
    const WangData tr = gallery::translations_only_wang();
    const Index dt = wang_solve(*tr.action, tr.covering->patch(0).point(Vec(0))).space.dim();
    l.require(dt == 3 * 3, "translations dimension " + std::to_string(dt));
    if (l.ok)
        l.detail = "dimensions 1 / 0 / " + std::to_string(dt) + ", family residual " + sci(w.max_residual) + " at 100 points";
    return l;
}

Line bruhat() {
    Line l;
    for (Index n : {2, 3}) {
        ExampleOptions opt;
        opt.n = n;
        const ExampleCase ex = build_example("bruhat_gl_n", opt);
        const ObstructionReport r = nonexistence_probe(ex, 5);
        l.require(r.verdict == "infeasible", "n = " + std::to_string(n) + " verdict " + r.verdict);
        bool found = false;
        for (const auto& row : r.rows)
            if (row.label.find("(1,1)") != std::string::npos) {
                found = true;
                l.require(row.residual <= 1e-9, "n = " + std::to_string(n) + " (1,1) deviation " + sci(row.residual));
                l.detail += (l.ok ? ("n = " + std::to_string(n) + ": entry " + std::to_string(row.value) + ", max deviation " +
                                     sci(row.residual) + " over 20 candidates  ")
                                  : "");
            }
        l.require(found, "no (1,1) row");
    }
    return l;
}

Line scale() {
    Line l;
    const ObstructionReport r = nonexistence_probe(build_example("scale_full"), 3);
    double decay = 0.0;
    for (const auto& row : r.rows) {
        if (row.label.find("lambda =") != std::string::npos) decay = std::max(decay, row.residual);
        l.require(row.ok, row.label + " " + sci(row.residual));
    }
    l.require(decay <= 1e-8, "decay " + sci(decay));
    l.require(r.verdict == "unique" && r.conditional, "verdict " + r.verdict);
    if (l.ok) l.detail = "decay " + sci(decay) + " at 4 lambdas, psi = 0 " + r.assumption;
    return l;
}

Line divergence() {
    Line l;
    const ObstructionReport r = nonexistence_probe(build_example("semihomogeneous_counterexample"));
    l.require(r.verdict == "diverges", "verdict " + r.verdict);
    bool increasing = true;
    for (std::size_t i = 1; i + 1 < r.rows.size(); ++i) increasing = increasing && r.rows[i].value > r.rows[i - 1].value;
    l.require(increasing, "not strictly increasing");
    const ObstructionRow& last = r.rows.back();
    l.require(last.residual <= 1e-6, "ratio " + std::to_string(last.value));
    if (l.ok) l.detail = "final/first " + std::to_string(last.value) + ", relative error " + sci(last.residual);
    return l;
}

Line decomposition() {
    Line l;
    const ExampleCase ex = build_example("spherical_lqg");
    const ReducedConnection psi = reduce(ex.connection("omega^abc").form, ex.covering);
    const auto samples = sample_transporters(*ex.covering, 200, 14);
    Rng rng(14);
    double worst = 0.0;
    Index kdim = 0;
    for (const auto& t : samples) {
        const DecompositionPair d = condition_i_two_ways(psi, t, rng.uniform_vec(3), rng);
        kdim = std::max(kdim, d.kernel_dim);
        worst = std::max(worst, (d.first - d.second).norm());
    }
    l.require(kdim > 0, "no kernel to shift along");
    l.require(worst <= 1e-8, "difference " + sci(worst));
    if (l.ok) l.detail = std::to_string(samples.size()) + " samples, kernel dim " + std::to_string(kdim) + ", max difference " + sci(worst);
    return l;
}

Line equivalence() {
    Line l;
    // (i) <-> (ii), (ii) <-> (iii), kernel <-> (i): same draws in the same order
    const std::map<std::string, std::string> partner = {{"i", "ii"}, {"ii", "iii"}, {"kernel-a", "i"}};
    double worst = 0.0;
    std::size_t compared = 0, failing = 0;
    auto compare = [&](const ExampleCase& ex, const ReducedConnection& psi) {
        const auto samples = sample_transporters(*ex.covering, 200, 15);
        const auto gen = check_reduced_conditions(psi, samples, 2, 1e-6, 15);
        const auto tri = trivial_bundle_verify(base_reduced(psi), *ex.action, samples, 2, 1e-6, 15);
        l.require(gen.size() == tri.size(), ex.name + " report sizes differ");
        for (std::size_t i = 0; i < std::min(gen.size(), tri.size()); ++i) {
            l.require(partner.at(gen[i].condition) == tri[i].condition && gen[i].sample_id == tri[i].sample_id,
                      ex.name + " entry " + std::to_string(i) + " misaligned");
            l.require(gen[i].pass == tri[i].pass, ex.name + " verdict differs at entry " + std::to_string(i));
            worst = std::max(worst, std::abs(gen[i].residual - tri[i].residual));
            if (!gen[i].pass) ++failing;
            ++compared;
        }
    };
    for (const char* name : {"spherical_lqg", "scale_full"}) {
        const ExampleCase ex = build_example(name);
        for (const auto& k : ex.known) compare(ex, reduce(k.form, ex.covering));
    }
    // and one reduced map that fails, on the scale action
    const ExampleCase sf = build_example("scale_full");
    const RMat k = gallery::seeded_matrix(2, 3, 3, 3);
    compare(sf, ReducedConnection(sf.covering, {[k](const Vec& x) { return gallery::scale_candidate_matrix(k, x); }}, "K"));
    l.require(failing > 0, "the failing candidate did not fail");
    l.require(worst <= 1e-7, "residual gap " + sci(worst));
    if (l.ok)
        l.detail = std::to_string(compared) + " entries (" + std::to_string(failing) + " failing in both), max gap " + sci(worst);
    return l;
}

Line determinism() {
    Line l;
    auto once = [] {
        std::ostringstream out, err;
        const int code = run_cli(std::vector<std::string>{"verify", "spherical_lqg", "--seed", "7", "--format", "structured"}, out, err);
        return std::make_pair(code, out.str());
    };
    const auto a = once(), b = once();
    l.require(a.first == kExitMatch && b.first == kExitMatch, "exit " + std::to_string(a.first));
    l.require(!a.second.empty() && a.second == b.second, "reports differ");
    if (l.ok) l.detail = std::to_string(a.second.size()) + " identical bytes";
    return l;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, Line (*)()>> criteria = {
        {"Lie-core exactness", lie_core},
        {"connection axioms", axioms},
        {"bijection roundtrip", roundtrip},
        {"Wang solver", wang},
        {"Bruhat nonexistence", bruhat},
        {"scale-action uniqueness", scale},
        {"counterexample divergence", divergence},
        {"decomposition independence", decomposition},
        {"trivial-bundle equivalence", equivalence},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Line l;
        try {
            l = criteria[i].second();
        } catch (const std::exception& e) {
            l.ok = false;
            l.detail = std::string("exception: ") + e.what();
        }
        if (!l.ok) ++failed;
        std::printf("criterion %2zu %-28s %s  %s\n", i + 1, criteria[i].first.c_str(), l.ok ? "PASS" : "FAIL", l.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed;
}
