#include <random>

#include "doctest.h"
#include "mpdre/linalg.hpp"

using namespace mpdre;

namespace {

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return m;
}

Eigen::MatrixXd mat1(double a) {
    Eigen::MatrixXd m(1, 1);
    m << a;
    return m;
}

SymMat random_nonsingular_sym(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        Eigen::MatrixXd m(n, n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) m(r, c) = u(rng);
        }
        SymMat s = symmetrize(m);
        if (sym_eigenvalues(s).cwiseAbs().minCoeff() > 1e-3) return s;
    }
}

}  // namespace

TEST_CASE("symmetrize basic examples") {
    CHECK(symmetrize(mat2(1, 2, 2, 1)).mat() == mat2(1, 2, 2, 1));
    CHECK(symmetrize(mat2(0, 1, 3, 0)).mat() == mat2(0, 2, 2, 0));
    CHECK(symmetrize(mat1(5)).mat() == mat1(5));
    CHECK(symmetrize(mat2(0, 1, 3, 0)).max_asymmetry() == doctest::Approx(2.0));
}

TEST_CASE("symmetrize rejects non-finite input") {
    Eigen::MatrixXd bad = mat2(1, 2, 2, 1);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(symmetrize(bad), InvalidMatrix);
    bad(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(symmetrize(bad), InvalidMatrix);
}

TEST_CASE("symmetrize is idempotent") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const SymMat s = random_nonsingular_sym(rng, 3);
        CHECK(symmetrize(s.mat()).mat() == s.mat());
    }
}

TEST_CASE("definiteness checks") {
    const Tolerances tol;
    CHECK(is_negative_definite(symmetrize(mat2(-1, 0, 0, -2)), tol));
    CHECK_FALSE(is_negative_definite(symmetrize(mat1(0)), tol));
    // Eigenvalues -1 +- 1.1: the top one is 0.1 > 0.
    CHECK_FALSE(is_negative_definite(symmetrize(mat2(-1, 1.1, 1.1, -1)), tol));

    CHECK(is_positive_definite(symmetrize(mat2(2, 0, 0, 3)), tol));
    CHECK_FALSE(is_positive_definite(symmetrize(mat1(0)), tol));
    // Eigenvalues 3 and -1.
    CHECK_FALSE(is_positive_definite(symmetrize(mat2(1, 2, 2, 1)), tol));
}

TEST_CASE("negative definiteness mirrors positive definiteness of the negation") {
    std::mt19937_64 rng(17);
    const Tolerances tol;
    for (int trial = 0; trial < 50; ++trial) {
        const SymMat s = random_nonsingular_sym(rng, 3);
        CHECK(is_negative_definite(s, tol) == is_positive_definite(-s, tol));
    }
}

TEST_CASE("invert scalar and identity examples") {
    const Tolerances tol;
    CHECK(invert(symmetrize(mat1(2)), tol).mat() == mat1(0.5));
    CHECK(invert(SymMat::identity(3), tol).mat().isApprox(Eigen::MatrixXd::Identity(3, 3)));
    CHECK(invert(symmetrize(mat1(-0.5)), tol).mat() == mat1(-2));

    double residual = -1.0;
    (void)invert(symmetrize(mat2(2, 1, 1, 3)), tol, &residual);
    CHECK(residual >= 0.0);
    CHECK(residual < 1e-12);
}

TEST_CASE("invert rejects near-singular input") {
    const Tolerances tol;
    CHECK_THROWS_AS(invert(SymMat::zero(2), tol), SingularPivot);
    CHECK_THROWS_AS(invert(symmetrize(mat2(1, 1, 1, 1)), tol), SingularPivot);
}

TEST_CASE("invert round-trips within tolerance") {
    std::mt19937_64 rng(23);
    const Tolerances tol;
    for (int trial = 0; trial < 30; ++trial) {
        const SymMat s = random_nonsingular_sym(rng, 4);
        const SymMat back = invert(invert(s, tol), tol);
        CHECK((back.mat() - s.mat()).norm() <= tol.match_rtol * (1.0 + s.norm_fro()));
    }
}

TEST_CASE("block matrix assembly and negation") {
    const SymMat b11 = symmetrize(mat2(1, 0, 0, 2));
    const SymMat b22 = symmetrize(mat2(-1, 0.5, 0.5, -2));
    const Eigen::MatrixXd b12 = mat2(0.1, 0.2, 0.3, 0.4);
    const BlockSymMat blk(b11, b12, b22);

    const Eigen::MatrixXd full = blk.assembled();
    CHECK(full.rows() == 4);
    CHECK(full == full.transpose());
    CHECK(full.topRightCorner(2, 2) == b12);
    CHECK(blk.b21() == b12.transpose());

    const BlockSymMat neg = -blk;
    CHECK(neg.assembled() == -full);

    CHECK_THROWS_AS(BlockSymMat(b11, Eigen::MatrixXd::Zero(3, 3), b22), InvalidMatrix);
}

TEST_CASE("relative deviation helper") {
    const SymMat a = symmetrize(mat1(1.0));
    const SymMat b = symmetrize(mat1(1.0 + 1e-9));
    CHECK(rel_dev(a, a) == 0.0);
    CHECK(rel_dev(b, a) == doctest::Approx(0.5e-9));
}
