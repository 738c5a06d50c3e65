#pragma once

#include "invconn/bundle/bundle.hpp"
#include "invconn/core/report.hpp"

namespace invconn {

// Local sections s_a(x) = (x, f_a(x)) over chart domains U_a, local forms chi_a
// (dimS x dim M matrices) and transition data delta_ab(g, x) in S with
// s_b(x) = Phi(g, s_a(x)) delta_ab(g, x).
struct GaugeChart {
    std::string label;
    std::function<bool(const Vec&)> in_domain;
    std::function<Mat(const Vec&)> section;
    std::function<RMat(const Vec&)> chi;
};

struct GaugeData {
    std::vector<GaugeChart> charts;
    std::function<Mat(Index, Index, const Mat&, const Vec&)> delta;
};

struct GaugeSample {
    Index alpha = 0, beta = 0;
    Mat g;
    Vec x, v;
};

// mu_ab(g, v) = delta^{-1} d_x delta(g, .)(v), by central differences in x
inline Vec gauge_mu(const GaugeData& d, const LieGroup& s, Index alpha, Index beta, const Mat& g, const Vec& x,
                    const Vec& v, double h = kDefaultFdStep) {
    const Mat dd = (d.delta(alpha, beta, g, x + h * v) - d.delta(alpha, beta, g, x - h * v)) / (2.0 * h);
    return s.algebra_coords(checked_inverse(d.delta(alpha, beta, g, x)) * dd, 1e-7);
}

// Residual of chi_b(v) = Ad_{delta^{-1}} chi_a(v) + mu_ab(g, v) at every sample.
inline CheckSummary gauge_consistency_check(const BundleAction& a, const GaugeData& d,
                                            const std::vector<GaugeSample>& samples, double tol = kConditionTol) {
    const LieGroup& s = a.structure();
    CheckSummary out;
    out.name = "gauge";
    long id = 0;
    for (const auto& smp : samples) {
        const GaugeChart& ca = d.charts.at(static_cast<std::size_t>(smp.alpha));
        const GaugeChart& cb = d.charts.at(static_cast<std::size_t>(smp.beta));
        if (!ca.in_domain(smp.x) || !cb.in_domain(smp.x)) throw InvalidArgument("gauge sample outside the chart overlap");
        const BundlePoint sa{smp.x, ca.section(smp.x)};
        const BundlePoint img = a.apply(smp.g, sa);
        if ((img.x - smp.x).norm() > 1e-9 * (1.0 + smp.x.norm()))
            throw PreconditionError("the action moves base points; it is not a gauge action");
        const Mat delta = d.delta(smp.alpha, smp.beta, smp.g, smp.x);
        if ((img.s * delta - cb.section(smp.x)).norm() > 1e-9)
            throw PreconditionError("sections and transition data are inconsistent");
        const Vec lhs = cb.chi(smp.x) * smp.v;
        const Vec rhs = s.adjoint_coords(checked_inverse(delta), ca.chi(smp.x) * smp.v) +
                        gauge_mu(d, s, smp.alpha, smp.beta, smp.g, smp.x, smp.v, a.fd_step());
        const double r = s.algebra_norm(lhs - rhs);
        out.record(id++, r, r <= tol);
    }
    return out;
}

} // namespace invconn
