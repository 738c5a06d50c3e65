#pragma once

#include "invconn/gallery/probes.hpp"

#include <set>

namespace invconn {

inline const std::vector<std::string>& check_names() {
    static const std::vector<std::string> n = {"axioms", "conditions", "roundtrip", "wang", "trivial", "hsv", "gauge", "probe"};
    return n;
}

struct RunConfig {
    std::string command = "verify";
    std::string example;
    std::vector<std::string> checks;  // empty: the command's defaults
    Index samples = 100;
    Index tangent_draws = 3;
    std::uint64_t seed = 0;
    double tol = kConditionTol;
    double fd_step = kDefaultFdStep;
    Index n = 2;
    std::string output;
    std::string format = "text";
};

struct CheckOutcome {
    std::string name;
    std::string outcome;   // what was observed: "pass", "fail", "infeasible", ...
    std::string expected;  // empty when the check does not apply
    double max_residual = 0.0;
    long samples = 0;
    std::vector<long> failures;
    std::string note;

    bool applicable() const { return !expected.empty(); }
    bool matches() const { return !applicable() || outcome == expected; }
    std::string verdict() const {
        if (!applicable()) return "not-applicable";
        if (outcome == expected) return outcome == "pass" ? "pass" : outcome + " (expected)";
        return outcome + " (expected " + expected + ")";
    }
};

struct RunReport {
    RunConfig config;
    std::vector<CheckOutcome> checks;
    double wall_seconds = 0.0;

    bool all_match() const {
        for (const auto& c : checks)
            if (!c.matches()) return false;
        return true;
    }
};

inline void validate_checks(const std::vector<std::string>& checks) {
    const auto& known = check_names();
    for (const auto& c : checks)
        if (std::find(known.begin(), known.end(), c) == known.end()) {
            std::string all;
            for (const auto& k : known) all += (all.empty() ? "" : ",") + k;
            throw InvalidArgument("unknown check '" + c + "' (known: " + all + ")");
        }
}

inline bool check_applies(const ExampleCase& ex, const std::string& name) {
    if (name == "axioms" || name == "roundtrip") return !ex.known.empty();
    if (name == "conditions") return !ex.known.empty() || !ex.candidates.empty();
    if (name == "wang") return ex.wang.has_value();
    if (name == "trivial") return ex.trivial_bundle && !ex.known.empty();
    if (name == "hsv") return ex.hsv.has_value();
    if (name == "probe") return ex.expected.count("probe") > 0;
    return false;  // gauge: no gallery example is a gauge action
}

inline std::vector<std::string> default_checks(const ExampleCase& ex, const std::string& command) {
    std::vector<std::string> out;
    std::vector<std::string> pool;
    if (command == "solve") pool = {"wang", "trivial"};
    else if (command == "probe") pool = {"probe"};
    else pool = {"axioms", "conditions", "roundtrip", "wang", "trivial", "hsv"};
    for (const auto& c : pool)
        if (check_applies(ex, c) || command == "probe") out.push_back(c);
    return out;
}

namespace detail {

inline std::string count_of(std::size_t n, const std::string& word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

inline CheckOutcome from_summary(const std::string& name, const CheckSummary& s) {
    CheckOutcome o;
    o.name = name;
    o.outcome = s.pass ? "pass" : "fail";
    o.max_residual = s.max_residual;
    o.samples = s.samples;
    o.failures = s.failures;
    o.note = s.note;
    return o;
}

// sample ids are offset per connection so that failures stay distinguishable
inline void absorb(CheckSummary& into, const CheckSummary& part, long offset) {
    CheckSummary shifted = part;
    for (auto& f : shifted.failures) f += offset;
    into.merge(shifted);
}

inline CheckOutcome run_axioms(const ExampleCase& ex, const RunConfig& cfg) {
    CheckSummary all = named("axioms");
    long offset = 0;
    std::string worst;
    double worst_r = -1.0;
    for (const auto& k : ex.known) {
        const CheckSummary s = check_connection_axioms(k.form, *ex.action, cfg.samples, cfg.tol, cfg.seed).combined();
        absorb(all, s, offset);
        offset += static_cast<long>(cfg.samples);
        if (s.max_residual > worst_r) {
            worst_r = s.max_residual;
            worst = k.label;
        }
    }
    all.note = count_of(ex.known.size(), "connection") + ", largest residual on " + worst;
    return from_summary("axioms", all);
}

inline std::vector<std::pair<std::string, ReducedPtr>> reduced_inputs(const ExampleCase& ex) {
    std::vector<std::pair<std::string, ReducedPtr>> out;
    for (const auto& k : ex.known) out.push_back({k.label, std::make_shared<const ReducedConnection>(reduce(k.form, ex.covering))});
    for (const auto& c : ex.candidates) out.push_back({c->label(), c});
    return out;
}

inline CheckOutcome run_conditions(const ExampleCase& ex, const RunConfig& cfg) {
    const auto samples = sample_transporters(*ex.covering, cfg.samples, cfg.seed);
    CheckSummary all = named("conditions");
    long offset = 0;
    Index failing = 0;
    const auto inputs = reduced_inputs(ex);
    for (const auto& [label, psi] : inputs) {
        const CheckSummary s = summarize(check_reduced_conditions(*psi, samples, cfg.tangent_draws, cfg.tol, cfg.seed), label);
        if (!s.pass) ++failing;
        absorb(all, s, offset);
        offset += static_cast<long>(samples.size());
    }
    all.note = count_of(inputs.size(), "reduced connection") + ", " + std::to_string(failing) + " failing, " +
               count_of(ex.covering->adversarial().size(), "adversarial transporter");
    return from_summary("conditions", all);
}

inline CheckOutcome run_roundtrip(const ExampleCase& ex, const RunConfig& cfg) {
    CheckSummary all = named("roundtrip");
    long offset = 0;
    for (const auto& k : ex.known) {
        absorb(all, roundtrip_check(k.form, ex.covering, cfg.samples, cfg.tol, cfg.seed), offset);
        offset += static_cast<long>(cfg.samples);
    }
    all.note = count_of(ex.known.size(), "connection");
    return from_summary("roundtrip", all);
}

// dimension, family membership (<= 1e-8) and axioms of the reconstruction
inline CheckOutcome run_wang(const ExampleCase& ex, const RunConfig& cfg) {
    const WangData& w = *ex.wang;
    Rng r0(0);
    const BundlePoint p = w.covering->patch(0).point(w.covering->patch(0).sample(r0));
    const WangSolution sol = wang_solve(*w.action, p, w.elements);
    CheckSummary s = named("wang");
    const bool dim_ok = sol.space.feasible && sol.space.dim() == w.expected_dim;
    s.record(0, dim_ok ? 0.0 : 1.0, dim_ok);
    Rng rng(cfg.seed);
    long id = 1;
    for (double c : w.family_params) {
        const ConnectionForm ref = w.family(c);
        const RMat target = reduce(ref, w.covering).matrix(0, Vec(0));
        const Vec rel = vec(target) - sol.space.particular;
        const Vec t = sol.space.dim() > 0 ? Vec(min_norm_solve(sol.space.nullspace, rel).x) : Vec(0);
        const RMat psi = sol.matrix(t);
        const double member = (psi - target).norm();
        const ConnectionForm rec = reconstruct(wang_reduced(w.covering, psi, "wang"));
        double worst = member;
        for (Index i = 0; i < cfg.samples; ++i) {
            const BundlePoint q = w.action->bundle().sample_point(rng);
            const Vec v = rng.uniform_vec(w.action->bundle().total_dim());
            worst = std::max(worst, w.action->structure().algebra_norm(rec(q, v) - ref(q, v)));
        }
        s.record(id++, worst, worst <= 1e-8);
    }
    // one generic element of the solution space
    const RMat generic = sol.matrix(rng.uniform_vec(sol.space.dim()));
    const CheckSummary ax =
        check_connection_axioms(reconstruct(wang_reduced(w.covering, generic, "wang")), *w.action, cfg.samples, cfg.tol, cfg.seed)
            .combined();
    s.record(id, ax.max_residual, ax.pass);
    s.note = "dimension " + std::to_string(sol.space.dim()) + " (expected " + std::to_string(w.expected_dim) + "), " +
             count_of(w.family_params.size(), "family member") + "; " + w.coverage;
    return from_summary("wang", s);
}

inline CheckOutcome run_trivial(const ExampleCase& ex, const RunConfig& cfg) {
    const auto samples = sample_transporters(*ex.covering, cfg.samples, cfg.seed);
    CheckSummary all = named("trivial");
    long offset = 0;
    for (const auto& k : ex.known) {
        const ReducedConnection psi = reduce(k.form, ex.covering);
        absorb(all, summarize(trivial_bundle_verify(base_reduced(psi), *ex.action, samples, cfg.tangent_draws, cfg.tol, cfg.seed), k.label),
               offset);
        offset += static_cast<long>(samples.size());
    }
    all.note = "conditions (i)-(iii) on M x {e}, " + count_of(ex.known.size(), "connection");
    return from_summary("trivial", all);
}

inline CheckOutcome run_hsv(const ExampleCase& ex, const RunConfig& cfg) {
    const HsvCase& h = *ex.hsv;
    CheckSummary all = named("hsv");
    const Index count = std::max<Index>(1, cfg.samples / 10);
    for (Index i = 0; i < h.candidates; ++i) {
        const ReducedPtr psi = h.candidate(cfg.seed + static_cast<std::uint64_t>(i));
        const HsvReport rep = hsv_verify(*psi, h.data, count, cfg.tol, cfg.seed);
        CheckSummary s = summarize(rep.conditions, psi->label());
        s.merge(check_connection_axioms(reconstruct(psi), *ex.action, count, cfg.tol, cfg.seed).combined());
        absorb(all, s, static_cast<long>(i) * static_cast<long>(count));
    }
    all.note = std::to_string(h.candidates) + " candidates, " + std::to_string(count) + " samples each";
    return from_summary("hsv", all);
}

inline CheckOutcome run_probe(const ExampleCase& ex, const RunConfig& cfg) {
    const ObstructionReport rep = nonexistence_probe(ex, cfg.seed);
    CheckOutcome o;
    o.name = "probe";
    o.outcome = rep.pass() ? rep.verdict : "inconclusive";
    o.max_residual = rep.max_residual();
    o.samples = static_cast<long>(rep.rows.size());
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        if (!rep.rows[i].ok) o.failures.push_back(static_cast<long>(i));
    o.note = rep.note;
    if (rep.conditional) o.note += "; " + rep.assumption;
    return o;
}

} // namespace detail

inline CheckOutcome run_check(const ExampleCase& ex, const std::string& name, const RunConfig& cfg) {
    if (!check_applies(ex, name)) {
        CheckOutcome o;
        o.name = name;
        o.outcome = "not-applicable";
        if (name == "gauge") o.note = "the action moves base points";
        else if (name == "probe") o.note = "invariant connections exist; nothing to obstruct";
        else o.note = "no data for this check";
        return o;
    }
    CheckOutcome o;
    if (name == "axioms") o = detail::run_axioms(ex, cfg);
    else if (name == "conditions") o = detail::run_conditions(ex, cfg);
    else if (name == "roundtrip") o = detail::run_roundtrip(ex, cfg);
    else if (name == "wang") o = detail::run_wang(ex, cfg);
    else if (name == "trivial") o = detail::run_trivial(ex, cfg);
    else if (name == "hsv") o = detail::run_hsv(ex, cfg);
    else o = detail::run_probe(ex, cfg);
    auto it = ex.expected.find(name);
    o.expected = it == ex.expected.end() ? "pass" : it->second;
    if (o.failures.size() > 20) o.failures.resize(20);
    return o;
}

inline RunReport run_checks(const ExampleCase& ex, const RunConfig& cfg) {
    RunReport rep;
    rep.config = cfg;
    validate_checks(cfg.checks);
    rep.config.example = ex.name;
    if (rep.config.checks.empty()) rep.config.checks = default_checks(ex, cfg.command);
    for (const auto& c : rep.config.checks) rep.checks.push_back(run_check(ex, c, rep.config));
    return rep;
}

} // namespace invconn
