#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace invconn {

// Seeded stream. The double conversion is done by hand so that draws are
// identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    Eigen::VectorXd uniform_vec(Eigen::Index n, double lo = -1.0, double hi = 1.0) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(lo, hi);
        return v;
    }

    Eigen::MatrixXd uniform_mat(Eigen::Index r, Eigen::Index c, double lo = -1.0, double hi = 1.0) {
        Eigen::MatrixXd m(r, c);
        for (Eigen::Index j = 0; j < c; ++j)
            for (Eigen::Index i = 0; i < r; ++i) m(i, j) = uniform(lo, hi);
        return m;
    }

    // independent child stream, e.g. one per check
    Rng split(std::uint64_t salt) {
        std::seed_seq seq{static_cast<std::uint32_t>(next() >> 32), static_cast<std::uint32_t>(salt),
                          static_cast<std::uint32_t>(salt >> 32)};
        std::uint64_t s[1];
        std::uint32_t w[2];
        seq.generate(w, w + 2);
        s[0] = (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
        return Rng(s[0]);
    }

private:
    std::mt19937_64 eng_;
};

} // namespace invconn
