#include "invconn/core/groups.hpp"
#include "invconn/core/smooth_map.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <numbers>

using namespace invconn;

namespace {

// independent oracles
Mat taylor_exp(const Mat& x, int terms = 60) {
    Mat sum = Mat::Identity(x.rows(), x.cols());
    Mat term = sum;
    for (int k = 1; k < terms; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

RMat rodrigues(double angle, Vec n) {
    n.normalize();
    RMat k(3, 3);
    k << 0, -n(2), n(1), n(2), 0, -n(0), -n(1), n(0), 0;
    return RMat::Identity(3, 3) + std::sin(angle) * k + (1 - std::cos(angle)) * k * k;
}

Mat random_complex(Rng& rng, Index n, double scale) {
    Mat m(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) m(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return scale * m / m.norm();
}

double eps(int i, int j, int k) { return (j - i) * (k - i) * (k - j) / 2.0; }

} // namespace

TEST(MatExp, IdentityAtZero) {
    EXPECT_LE((mat_exp(Mat::Zero(3, 3)) - Mat::Identity(3, 3)).norm(), 0.0);
}

TEST(MatExp, DiagonalTau3) {
    const Mat e = mat_exp(std::numbers::pi / 2 * tau(2));
    Mat expect = Mat::Zero(2, 2);
    expect(0, 0) = std::exp(Complex(0, -std::numbers::pi / 2));
    expect(1, 1) = std::exp(Complex(0, std::numbers::pi / 2));
    EXPECT_LE((e - expect).norm(), 1e-14);
    EXPECT_LE((e - tau(2)).norm(), 1e-14);
}

TEST(MatExp, NilpotentTerminates) {
    Mat e12 = Mat::Zero(2, 2);
    e12(0, 1) = 1;
    EXPECT_LE((mat_exp(e12) - (Mat::Identity(2, 2) + e12)).norm(), 1e-15);
}

TEST(MatExp, AgreesWithReferenceUpToNormTen) {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const double scale = 10.0 * (trial + 1) / 60.0;
        const Index n = 2 + trial % 5;
        const Mat x = random_complex(rng, n, scale);
        const Mat ref = x.exp();
        EXPECT_LE((mat_exp(x) - ref).norm(), 1e-12 * ref.norm()) << "scale " << scale;
    }
}

TEST(MatExp, AgreesWithSeriesForSmallArguments) {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const Mat x = random_complex(rng, 4, 0.8);
        EXPECT_LE((mat_exp(x) - taylor_exp(x)).norm(), 1e-14);
    }
}

TEST(MatExp, RejectsBadInput) {
    EXPECT_THROW(mat_exp(Mat::Zero(2, 3)), InvalidArgument);
    Mat x = Mat::Zero(2, 2);
    x(0, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(mat_exp(x), InvalidArgument);
}

TEST(Bracket, TauRelations) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Mat expect = Mat::Zero(2, 2);
            for (int k = 0; k < 3; ++k) expect += 2.0 * eps(i, j, k) * tau(k);
            EXPECT_LE((bracket(tau(i), tau(j)) - expect).norm(), 1e-12);
        }
    EXPECT_LE((bracket(tau(0), tau(1)) - 2.0 * tau(2)).norm(), 0.0);
}

TEST(Bracket, AntisymmetricAndGl2) {
    Rng rng(3);
    const Mat x = random_complex(rng, 3, 1.0);
    EXPECT_LE(bracket(x, x).norm(), 1e-15);
    Mat e11 = Mat::Zero(2, 2), e12 = Mat::Zero(2, 2);
    e11(0, 0) = 1;
    e12(0, 1) = 1;
    EXPECT_LE((bracket(e11, e12) - e12).norm(), 0.0);
}

TEST(Adjoint, IdentityAndBorelExample) {
    Rng rng(4);
    const Mat x = random_complex(rng, 2, 1.0);
    EXPECT_LE((adjoint(Mat::Identity(2, 2), x) - x).norm(), 1e-15);
    Mat b = Mat::Identity(2, 2);
    b(0, 1) = 1;
    Mat e21 = Mat::Zero(2, 2);
    e21(1, 0) = 1;
    Mat expect(2, 2);
    expect << 1, -1, 1, -1;  // E21 + E11 - E12 - E22
    EXPECT_LE((adjoint(b, e21) - expect).norm(), 1e-15);
}

TEST(Adjoint, MatchesProductOracleOnSu2) {
    auto s = su2();
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const Mat g = s->random_element(rng);
        EXPECT_LE((adjoint(g, tau(0)) - g * tau(0) * g.adjoint()).norm(), 1e-14);
    }
}

TEST(Adjoint, SingularMatrixRejected) { EXPECT_THROW(adjoint(Mat::Zero(2, 2), tau(0)), SingularMatrix); }

TEST(Adjoint, IsARepresentation) {
    Rng rng(6);
    for (const auto& grp : {su2(), euclid_su2(), borel(3), general_linear(2)}) {
        for (int i = 0; i < 100; ++i) {
            const Mat g = grp->random_element(rng);
            const Mat h = grp->random_element(rng);
            const RMat lhs = grp->adjoint_matrix(g * h);
            const RMat rhs = grp->adjoint_matrix(g) * grp->adjoint_matrix(h);
            ASSERT_LE((lhs - rhs).norm(), 1e-9) << grp->name();
        }
    }
}

TEST(Covering, IdentityAndMinusIdentity) {
    EXPECT_LE((su2_covering(Mat::Identity(2, 2)) - RMat::Identity(3, 3)).norm(), 1e-15);
    EXPECT_LE((su2_covering(-Mat::Identity(2, 2)) - RMat::Identity(3, 3)).norm(), 1e-15);
}

TEST(Covering, IsAHomomorphismIntoSO3) {
    auto s = su2();
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const Mat a = s->random_element(rng);
        const Mat b = s->random_element(rng);
        const RMat ra = su2_covering(a);
        EXPECT_LE((su2_covering(a * b) - ra * su2_covering(b)).norm(), 1e-9);
        EXPECT_LE((ra.transpose() * ra - RMat::Identity(3, 3)).norm(), 1e-9);
        EXPECT_NEAR(ra.determinant(), 1.0, 1e-9);
    }
}

TEST(Covering, HalfAngleExponentialIsRodriguesRotation) {
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const double angle = rng.uniform(-std::numbers::pi, std::numbers::pi);
        Vec n = rng.uniform_vec(3);
        n.normalize();
        const RMat r = su2_covering(mat_exp(0.5 * angle * zeta(n)));
        EXPECT_LE((r - rodrigues(angle, n)).norm(), 1e-9);
    }
}

TEST(Covering, GeneratorMatchesDerivative) {
    for (int i = 0; i < 3; ++i) {
        const double h = 1e-5;
        const RMat d = (su2_covering(mat_exp(h * tau(i))) - su2_covering(mat_exp(-h * tau(i)))) / (2 * h);
        EXPECT_LE((d - su2_covering_generator(i)).norm(), 1e-8);
    }
}

TEST(Covering, RejectsNonUnitary) {
    EXPECT_THROW(su2_covering(2.0 * Mat::Identity(2, 2)), DomainError);
}

TEST(Zeta, RoundTripAndRejection) {
    const Vec v = (Vec(3) << 0.3, -1.2, 2.0).finished();
    EXPECT_LE((zeta_inv(zeta(v)) - v).norm(), 1e-15);
    EXPECT_THROW(zeta_inv(Mat::Identity(2, 2)), NotInAlgebra);
}

TEST(LieGroup, ExpStaysInGroupAndCoordinatesRoundTrip) {
    Rng rng(9);
    for (const auto& grp : {su2(), positive_reals(), translations(3), euclid_su2(), borel(2), borel(4),
                            general_linear(3), su2_circle(0)}) {
        for (int i = 0; i < 20; ++i) {
            const Vec c = rng.uniform_vec(grp->dim());
            EXPECT_TRUE(grp->contains(grp->exp(c))) << grp->name();
            EXPECT_LE((grp->algebra_coords(grp->algebra_matrix(c)) - c).norm(), 1e-12) << grp->name();
        }
        EXPECT_TRUE(grp->contains(grp->identity()));
    }
}

TEST(LieGroup, MembershipRejects) {
    EXPECT_FALSE(su2()->contains(2.0 * Mat::Identity(2, 2)));
    EXPECT_FALSE(positive_reals()->contains(-Mat::Identity(1, 1)));
    Mat lower = Mat::Identity(2, 2);
    lower(1, 0) = 0.5;
    EXPECT_FALSE(borel(2)->contains(lower));
    EXPECT_THROW(su2()->require(Mat::Zero(2, 2), "test"), DomainError);
}

TEST(LieGroup, CoordinatesRejectOutsideAlgebra) {
    EXPECT_THROW(su2()->algebra_coords(Mat::Identity(2, 2)), NotInAlgebra);
    Mat lower = Mat::Zero(2, 2);
    lower(1, 0) = 1.0;
    EXPECT_THROW(borel(2)->algebra_coords(lower), NotInAlgebra);
}

TEST(LieGroup, FrobeniusNorm) {
    auto s = su2();
    const Vec c = (Vec(3) << 1.0, 2.0, -2.0).finished();
    EXPECT_NEAR(s->algebra_norm(c), s->algebra_matrix(c).norm(), 1e-14);
}

TEST(LieGroup, EuclidProductIsSemidirect) {
    auto e = euclid_su2();
    auto s = su2();
    Rng rng(10);
    for (int i = 0; i < 20; ++i) {
        const Vec v = rng.uniform_vec(3), w = rng.uniform_vec(3);
        const Mat a = s->random_element(rng), b = s->random_element(rng);
        const Mat prod = euclid_element(v, a) * euclid_element(w, b);
        const Mat expect = euclid_element(v + su2_covering(a) * w, a * b);
        EXPECT_LE((prod - expect).norm(), 1e-12);
        EXPECT_TRUE(e->contains(prod));
    }
}

TEST(LieGroup, BracketOfExpCurveIsAdjointDerivative) {
    Rng rng(13);
    for (int i = 0; i < 20; ++i) {
        const Mat x = random_complex(rng, 3, 1.0);
        const Mat y = random_complex(rng, 3, 1.0);
        SmoothMap f;
        f.domain_dim = 1;
        f.codomain_dim = 18;
        f.label = "conjugation";
        f.evaluate = [&](const Vec& t) {
            const Mat m = mat_exp(t(0) * x) * y * mat_exp(-t(0) * x);
            Vec out(18);
            for (Index k = 0; k < 9; ++k) {
                out(k) = m(k % 3, k / 3).real();
                out(9 + k) = m(k % 3, k / 3).imag();
            }
            return out;
        };
        const Vec d = fd_differential(f, Vec::Zero(1), Vec::Ones(1));
        const Mat br = bracket(x, y);
        for (Index k = 0; k < 9; ++k) {
            EXPECT_NEAR(d(k), br(k % 3, k / 3).real(), 1e-6);
            EXPECT_NEAR(d(9 + k), br(k % 3, k / 3).imag(), 1e-6);
        }
    }
}

TEST(SmoothMapFd, LinearMap) {
    Rng rng(14);
    const RMat a = rng.uniform_mat(3, 4);
    SmoothMap f{4, 3, [&](const Vec& x) -> Vec { return a * x; }, {}, kDefaultFdStep, "linear"};
    const Vec x = rng.uniform_vec(4), v = rng.uniform_vec(4);
    EXPECT_LE((fd_differential(f, x, v) - a * v).norm(), 1e-10);
}

TEST(SmoothMapFd, ExpCurveAndQuadratic) {
    const Mat x = 0.7 * tau(1) + 0.2 * tau(2);
    SmoothMap g{1, 4, [&](const Vec& t) {
                    const Mat m = mat_exp(t(0) * x);
                    return Vec((Vec(4) << m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag()).finished());
                },
                {}, kDefaultFdStep, "exp entries"};
    const Vec d = fd_differential(g, Vec::Zero(1), Vec::Ones(1));
    EXPECT_NEAR(d(0), x(0, 0).real(), 1e-8);
    EXPECT_NEAR(d(1), x(0, 0).imag(), 1e-8);
    EXPECT_NEAR(d(2), x(0, 1).real(), 1e-8);
    EXPECT_NEAR(d(3), x(0, 1).imag(), 1e-8);

    SmoothMap q{3, 1, [](const Vec& y) { return Vec::Constant(1, y.squaredNorm()); }, {}, kDefaultFdStep, "quadratic"};
    const Vec p = (Vec(3) << 0.3, -0.4, 1.1).finished();
    const Vec v = (Vec(3) << 1.0, 0.5, -0.2).finished();
    EXPECT_NEAR(fd_differential(q, p, v)(0), 2 * p.dot(v), 1e-8);
}

TEST(SmoothMapFd, LinearInDirection) {
    SmoothMap f{2, 2, [](const Vec& x) { return Vec((Vec(2) << std::sin(x(0)) * x(1), std::exp(x(0) - x(1))).finished()); },
                {}, kDefaultFdStep, "nonlinear"};
    Rng rng(15);
    for (int i = 0; i < 50; ++i) {
        const Vec x = rng.uniform_vec(2), v = rng.uniform_vec(2) / 2, w = rng.uniform_vec(2) / 2;
        const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1);
        const Vec lhs = fd_differential(f, x, a * v + b * w);
        const Vec rhs = a * fd_differential(f, x, v) + b * fd_differential(f, x, w);
        EXPECT_LE((lhs - rhs).norm(), 1e-6);
    }
}

TEST(SmoothMapFd, AnalyticDifferentialCrossChecked) {
    SmoothMap good{1, 1, [](const Vec& x) { return Vec::Constant(1, x(0) * x(0)); },
                   [](const Vec& x, const Vec& v) { return Vec::Constant(1, 2 * x(0) * v(0)); }, kDefaultFdStep, "sq"};
    EXPECT_NEAR(fd_differential(good, Vec::Constant(1, 3.0), Vec::Ones(1))(0), 6.0, 1e-12);
    SmoothMap bad = good;
    bad.differential = [](const Vec& x, const Vec& v) { return Vec::Constant(1, 3 * x(0) * v(0)); };
    EXPECT_THROW(fd_differential(bad, Vec::Constant(1, 3.0), Vec::Ones(1)), InternalConsistency);
}

TEST(SmoothMapFd, EvaluationErrorCarriesPoint) {
    SmoothMap f{1, 1, [](const Vec& x) -> Vec {
                    if (x(0) > 0.5) throw std::runtime_error("outside");
                    return x;
                },
                {}, kDefaultFdStep, "partial"};
    try {
        fd_differential(f, Vec::Constant(1, 0.5), Vec::Ones(1));
        FAIL() << "expected an evaluation error";
    } catch (const EvaluationError& e) {
        EXPECT_NEAR(e.point()(0), 0.5 + 1e-5, 1e-12);
    }
}

TEST(RngStream, DeterministicAndInRange) {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        const double x = a.unit();
        EXPECT_EQ(x, b.unit());
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
    }
    EXPECT_NE(Rng(1).next(), Rng(2).next());
}
