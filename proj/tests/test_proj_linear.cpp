#include "qfib/proj_linear.hpp"

#include <gtest/gtest.h>

#include "qfib/rng.hpp"

using namespace qfib;

namespace {

Mat rational_mat(long dim, std::vector<long> vals, long L = 1) {
    Mat m(dim, L);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) m.at(i, j) = CycNum::from_int(L, vals[i * dim + j]);
    return m;
}

Mat random_invertible(Rng& rng, long dim, long L) {
    for (;;) {
        Mat m(dim, L);
        for (long i = 0; i < dim; ++i)
            for (long j = 0; j < dim; ++j) m.at(i, j) = CycNum::from_int(L, rng.range(-9, 9));
        if (!m.determinant().is_zero()) return m;
    }
}

ProjPoint pt2(long L, long x, long y) {
    return ProjPoint({CycNum::from_int(L, x), CycNum::from_int(L, y)});
}

Mat diag_roots(long L, std::vector<long> exps) {
    std::vector<CycNum> d;
    for (long e : exps) d.push_back(root_of_unity(L, e));
    return Mat::diagonal(d);
}

}  // namespace

TEST(ProjLinear, ProjEq) {
    Rng rng(3);
    Mat a = random_invertible(rng, 3, 3);
    ProjMap A(a);
    ProjMap A2(a.scaled(CycNum::from_int(3, 2)));
    EXPECT_TRUE(proj_eq(A, A2));

    ProjMap id(Mat::identity(3, 3));
    ProjMap shift(Mat::cyclic_shift(3, 3));
    EXPECT_FALSE(proj_eq(id, shift));

    ProjMap d(diag_roots(3, {0, 1, 2}));
    ProjMap zd(diag_roots(3, {0, 1, 2}).scaled(root_of_unity(3, 1)));
    EXPECT_TRUE(proj_eq(d, zd));

    try {
        proj_eq(id, ProjMap(Mat::identity(2, 3)));
        FAIL() << "expected DimMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::dim_mismatch);
    }
}

TEST(ProjLinear, ProjOrder) {
    for (long n = 2; n <= 8; ++n) {
        std::vector<long> exps;
        for (long i = 0; i < n; ++i) exps.push_back(i);
        EXPECT_EQ(proj_order(ProjMap(diag_roots(n, exps))), n);
        EXPECT_EQ(proj_order(ProjMap(Mat::cyclic_shift(n, 1))), n);
    }
    EXPECT_EQ(proj_order(ProjMap(Mat::identity(4, 1))), 1);

    try {
        proj_order(ProjMap(rational_mat(2, {1, 1, 0, 1})), 50);
        FAIL() << "expected OrderExceedsCap";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::order_exceeds_cap);
    }
}

TEST(ProjLinear, Nullspace) {
    EXPECT_TRUE(nullspace(Mat::identity(3, 1)).empty());
    EXPECT_EQ(nullspace(Mat(3, 1)).size(), 3u);

    Mat d(3, 1);
    d.at(1, 1) = CycNum::one(1);
    d.at(2, 2) = CycNum::one(1);
    auto basis = nullspace(d);
    ASSERT_EQ(basis.size(), 1u);
    EXPECT_TRUE(basis[0][0].is_one());
    EXPECT_TRUE(basis[0][1].is_zero());
    EXPECT_TRUE(basis[0][2].is_zero());
}

TEST(ProjLinear, FixedPointsDiagonal) {
    auto pts = fixed_points(ProjMap(diag_roots(3, {0, 1, 2})));
    ASSERT_EQ(pts.size(), 3u);
    std::vector<CycNum> e1{CycNum::one(3), CycNum::zero(3), CycNum::zero(3)};
    EXPECT_TRUE(std::count(pts.begin(), pts.end(), ProjPoint(e1)) == 1);
}

TEST(ProjLinear, FixedPointsShift) {
    // Independent route: solve (N - omega I) v = 0 for each cube root omega.
    ProjMap shift(Mat::cyclic_shift(3, 3));
    auto pts = fixed_points(shift);
    ASSERT_EQ(pts.size(), 3u);
    for (long e = 0; e < 3; ++e) {
        Mat b = shift.lift() - Mat::identity(3, 3).scaled(root_of_unity(3, e));
        auto kern = nullspace(b);
        ASSERT_EQ(kern.size(), 1u);
        ProjPoint expected(kern[0]);
        EXPECT_EQ(std::count(pts.begin(), pts.end(), expected), 1) << "omega exponent " << e;
        EXPECT_EQ(shift.apply(expected), expected);
        // The eigenvector for omega is [1 : omega : omega^2].
        ProjPoint closed_form({CycNum::one(3), root_of_unity(3, e), root_of_unity(3, 2 * e)});
        EXPECT_EQ(expected, closed_form);
    }
}

TEST(ProjLinear, FixedPointsNonIsolated) {
    try {
        fixed_points(ProjMap(rational_mat(3, {1, 0, 0, 0, -1, 0, 0, 0, -1})));
        FAIL() << "expected NonIsolatedFixedLocus";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::non_isolated_fixed_locus);
    }
}

TEST(ProjLinear, FixedPointsConductorTooSmall) {
    try {
        fixed_points(ProjMap(Mat::cyclic_shift(3, 1)));
        FAIL() << "expected ConductorTooSmall";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::conductor_too_small);
        EXPECT_EQ(e.suggested_conductor, 3);
    }
}

TEST(ProjLinear, FixedPointsScaledLifts) {
    // Rational and root-of-unity rescales of the lift must not change anything.
    Mat base = diag_roots(3, {0, 1, 2});
    auto reference = fixed_points(ProjMap(base));
    EXPECT_EQ(fixed_points(ProjMap(base.scaled(CycNum::from_int(3, 3)))), reference);
    EXPECT_EQ(fixed_points(ProjMap(base.scaled(root_of_unity(3, 1)))), reference);
    EXPECT_EQ(fixed_points(ProjMap(base.scaled(root_of_unity(3, 1).scaled(Rational(-5, 7))))), reference);
}

TEST(ProjLinear, FixedPointsOfConjugates) {
    Rng rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        Mat xi = random_invertible(rng, 3, 12);
        Mat m = xi * diag_roots(12, {0, 4, 8}) * xi.inverse();  // distinct cube roots
        auto pts = fixed_points(ProjMap(m));
        ASSERT_EQ(pts.size(), 3u);
        ProjMap pm(m);
        for (const auto& p : pts) EXPECT_EQ(pm.apply(p), p);
    }
}

TEST(ProjLinear, SymPowerMatchesClassifiedGenerators) {
    for (long n = 1; n <= 4; ++n) {
        // diag(-1,1) induces the alternating-sign diagonal.
        Mat neg(2, 1);
        neg.at(0, 0) = CycNum::from_int(1, -1);
        neg.at(1, 1) = CycNum::one(1);
        std::vector<CycNum> alt;
        for (long i = 0; i <= n; ++i) alt.push_back(CycNum::from_int(1, i % 2 ? -1 : 1));
        EXPECT_TRUE(proj_eq(ProjMap(sym_power(neg, n)), ProjMap(Mat::diagonal(alt))));

        // The swap induces full coordinate reversal.
        Mat swap(2, 1);
        swap.at(0, 1) = CycNum::one(1);
        swap.at(1, 0) = CycNum::one(1);
        EXPECT_TRUE(proj_eq(ProjMap(sym_power(swap, n)), ProjMap(Mat::reversal(n + 1, 1))));

        // diag(zeta_3, 1) induces diag(1, zeta_3, ..., zeta_3^n).
        Mat z(2, 3);
        z.at(0, 0) = root_of_unity(3, 1);
        z.at(1, 1) = CycNum::one(3);
        std::vector<long> exps;
        for (long i = 0; i <= n; ++i) exps.push_back(i);
        EXPECT_TRUE(proj_eq(ProjMap(sym_power(z, n)), ProjMap(diag_roots(3, exps))));

        EXPECT_EQ(sym_power(Mat::identity(2, 1), n), Mat::identity(n + 1, 1));
    }
}

TEST(ProjLinear, SymPowerIsHomomorphism) {
    Rng rng(5);
    for (long n : {2L, 3L, 5L}) {
        for (int trial = 0; trial < 15; ++trial) {
            Mat m = random_invertible(rng, 2, 4);
            Mat k = random_invertible(rng, 2, 4);
            EXPECT_TRUE(proj_eq(ProjMap(sym_power(m * k, n)), ProjMap(sym_power(m, n) * sym_power(k, n))));
            EXPECT_TRUE(proj_eq(ProjMap(sym_power(m, n) * sym_power(m.inverse(), n)),
                                ProjMap(Mat::identity(n + 1, 4))));
        }
    }
}

TEST(ProjLinear, FormFromRoots) {
    const long n = 3;
    auto out = form_from_roots(std::vector<ProjPoint>(n, pt2(1, 0, 1)));
    ProjPoint e0({CycNum::one(1), CycNum::zero(1), CycNum::zero(1), CycNum::zero(1)});
    EXPECT_EQ(out, e0);

    // Two affine points give the elementary symmetric coordinates.
    auto two = form_from_roots({pt2(1, 5, 1), pt2(1, -2, 1)});
    ProjPoint expected({CycNum::one(1), CycNum::from_int(1, 3), CycNum::from_int(1, -10)});
    EXPECT_EQ(two, expected);

    // Both points at infinity: the open-set formula degenerates but the
    // product of forms does not.
    auto inf = form_from_roots({pt2(1, 1, 0), pt2(1, 1, 0)});
    ProjPoint e2({CycNum::zero(1), CycNum::zero(1), CycNum::one(1)});
    EXPECT_EQ(inf, e2);
}

TEST(ProjLinear, FormFromRootsSymmetric) {
    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<ProjPoint> tup;
        for (int i = 0; i < 4; ++i) {
            long x = rng.range(-9, 9), y = rng.range(-9, 9);
            if (x == 0 && y == 0) x = 1;
            tup.push_back(pt2(1, x, y));
        }
        auto base = form_from_roots(tup);
        for (int s = 0; s < 5; ++s) {
            std::swap(tup[rng.range(0, 3)], tup[rng.range(0, 3)]);
            EXPECT_EQ(form_from_roots(tup), base);
        }
    }
}

TEST(ProjLinear, SymPowerNaturality) {
    // For every M and point tuple P: sym_power(M)(form(P)) = form(M.P).
    Rng rng(13);
    for (long n : {1L, 2L, 4L}) {
        for (int trial = 0; trial < 20; ++trial) {
            Mat m = random_invertible(rng, 2, 4);
            ProjMap pm(m);
            ProjMap sp(sym_power(m, n));
            std::vector<ProjPoint> tup;
            for (long i = 0; i < n; ++i) {
                long x = rng.range(-9, 9), y = rng.range(-9, 9);
                if (x == 0 && y == 0) y = 1;
                tup.push_back(pt2(4, x, y));
            }
            std::vector<ProjPoint> moved;
            for (const auto& p : tup) moved.push_back(pm.apply(p));
            EXPECT_EQ(sp.apply(form_from_roots(tup)), form_from_roots(moved));
        }
    }
}

TEST(ProjLinear, CommutationCheck) {
    Mat neg(2, 1);
    neg.at(0, 0) = CycNum::from_int(1, -1);
    neg.at(1, 1) = CycNum::one(1);
    for (long n : {2L, 3L, 5L})
        EXPECT_TRUE(commutation_check(ProjMap(sym_power(neg, n)), ProjMap(neg), 20));

    // The identity does not descend the sign flip (n = 1: the map is a bijection).
    EXPECT_FALSE(commutation_check(ProjMap(Mat::identity(2, 1)), ProjMap(neg), 20));

    Mat z(2, 3);
    z.at(0, 0) = root_of_unity(3, 1);
    z.at(1, 1) = CycNum::one(3);
    for (long n : {2L, 4L})
        EXPECT_TRUE(commutation_check(ProjMap(sym_power(z, n)), ProjMap(z), 20));
}
