#ifndef QFIB_CANONICAL_HPP
#define QFIB_CANONICAL_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "qfib/proj_linear.hpp"

namespace qfib {

/// Result of normalizing a commuting pair of order-n classes in PGL_n with
/// disjoint n-point fixed sets: a conjugator xi with
///   xi * phi * xi^{-1} = diag(1, lambda, ..., lambda^{n-1})   (projectively)
///   xi * psi * xi^{-1} = the standard n-cycle
/// where lambda is the discovered primitive n-th root of unity. lambda is
/// reported as found; forcing a particular primitive root is left to callers
/// that have a reason to prefer one.
struct CanonPairResult {
    ProjMap xi;
    ProjMap phi_canon;
    ProjMap psi_canon;
    CycNum lambda;
};

namespace detail {

// Weighted-cycle shape test: superdiagonal entries plus the bottom-left
// corner, everything else zero. Returns the weights (v_1..v_{n-1}, v_0).
inline std::optional<std::vector<CycNum>> weighted_cycle_entries(const Mat& m) {
    const long n = m.dim();
    std::vector<CycNum> weights;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            bool on_cycle = (j == i + 1) || (i == n - 1 && j == 0);
            if (on_cycle && m.at(i, j).is_zero()) return std::nullopt;
            if (!on_cycle && !m.at(i, j).is_zero()) return std::nullopt;
        }
    for (long i = 0; i + 1 < n; ++i) weights.push_back(m.at(i, i + 1));
    weights.push_back(m.at(n - 1, 0));
    return weights;
}

// Rescales the lift so that lift^k = I exactly, using the same scalar
// discovery as fixed_points. Fails with ConductorTooSmall if no k-th root of
// the order-k scalar is reachable in the working field.
inline Mat unitize_lift(const Mat& lift, long k) {
    Mat power = lift.pow(k);
    if (!power.is_scalar()) raise(errc::invariant_mismatch, "order-k power is not scalar");
    const CycNum c = power.at(0, 0);
    if (c.is_one()) return lift;
    const long L = lift.conductor();
    std::vector<CycNum> rescales{CycNum::one(L)};
    for (long i = 0; i < lift.dim(); ++i)
        for (long j = 0; j < lift.dim(); ++j)
            if (!lift.at(i, j).is_zero()) rescales.push_back(lift.at(i, j));
    for (const CycNum& e : rescales) {
        if (auto s = kth_root_of_scalar(c * e.pow(-k), k)) return lift.scaled((e * *s).inverse());
    }
    Error err(errc::conductor_too_small, "cannot normalize lift to have trivial order-k scalar");
    if (auto r = as_root_of_unity(c)) err.suggested_conductor = lcm_long(L, lcm_long(2, k * r->order));
    throw err;
}

}  // namespace detail

/// The explicit diagonal conjugator for a weighted cyclic permutation whose
/// weights multiply to 1: returns D = diag(v_0, v_0 v_1, ..., v_0...v_{n-2}, 1)
/// with D * M * D^{-1} equal to the standard cycle exactly.
inline ProjMap diagonal_rescale(const ProjMap& m) {
    auto weights = detail::weighted_cycle_entries(m.lift());
    if (!weights) raise(errc::not_weighted_cycle, "lift is not a weighted cyclic permutation");
    const long n = m.dim();
    const long L = m.conductor();
    // weights = (v_1, ..., v_{n-1}, v_0)
    CycNum prod = CycNum::one(L);
    for (const auto& w : *weights) prod *= w;
    if (!prod.is_one()) raise(errc::product_not_one, "cycle weights do not multiply to 1; rescale the lift first");
    const CycNum v0 = weights->back();
    std::vector<CycNum> d(n, CycNum::one(L));
    CycNum acc = v0;
    for (long i = 0; i + 1 < n; ++i) {
        d[i] = acc;
        acc *= (*weights)[i];
    }
    d[n - 1] = CycNum::one(L);
    return ProjMap(Mat::diagonal(d));
}

/// Normal form for a commuting pair (phi, psi) in PGL_n, both of order n with
/// n isolated fixed points each and disjoint fixed sets. The algorithm walks
/// the classical proof: diagonalize phi on its fixed points, read psi as a
/// permutation of them, reject anything that is not a full cycle, reorder the
/// eigenbasis along the cycle, kill the cycle weights with diagonal_rescale,
/// and certify the eigenvalue ratio lambda as a primitive n-th root.
inline CanonPairResult canonical_commuting_pair(const ProjMap& phi_in, const ProjMap& psi_in) {
    if (phi_in.dim() != psi_in.dim()) raise(errc::dim_mismatch, "pair dimensions differ");
    const long n = phi_in.dim();

    // Work at a conductor that contains zeta_n.
    const long L = lcm_long(lcm_long(phi_in.conductor(), psi_in.conductor()), n);
    ProjMap phi = phi_in.embedded(L);
    ProjMap psi = psi_in.embedded(L);

    if (proj_order(phi) != n || proj_order(psi) != n)
        raise(errc::wrong_order, "both classes must have projective order n = dim");
    if (!proj_eq(phi * psi, psi * phi)) raise(errc::not_commuting, "classes do not commute in PGL");

    auto fix_phi = fixed_points(phi);
    auto fix_psi = fixed_points(psi);
    if (static_cast<long>(fix_phi.size()) != n || static_cast<long>(fix_psi.size()) != n)
        raise(errc::wrong_order, "fixed-point counts differ from n");
    for (const auto& p : fix_phi)
        for (const auto& q : fix_psi)
            if (p == q) raise(errc::fixed_sets_not_disjoint, "shared fixed point");

    // psi normalized so that psi^n = I; then every matrix of psi in an
    // eigenbasis of phi has cycle weights multiplying to 1.
    Mat psi_unit = detail::unitize_lift(psi.lift(), n);

    // Eigenbasis of phi, columns ordered lexicographically (fix_phi is sorted).
    Mat basis(n, L);
    for (long j = 0; j < n; ++j) {
        const auto& v = fix_phi[j].coords();
        for (long i = 0; i < n; ++i) basis.at(i, j) = v[i];
    }
    Mat basis_inv = basis.inverse();
    Mat psi_in_basis = basis_inv * psi_unit * basis;

    // psi permutes Fix(phi); read the permutation from the matrix columns.
    std::vector<long> image(n, -1);
    for (long j = 0; j < n; ++j) {
        long target = -1;
        for (long i = 0; i < n; ++i) {
            if (psi_in_basis.at(i, j).is_zero()) continue;
            if (target >= 0) raise(errc::invariant_mismatch, "psi does not permute the eigenbasis");
            target = i;
        }
        image[j] = target;
    }

    // Must be one n-cycle; shorter cycles would merge eigenvalues of psi.
    std::vector<long> cycle{0};
    {
        std::vector<bool> seen(n, false);
        seen[0] = true;
        long cur = image[0];
        while (cur != 0) {
            if (cur < 0 || seen[cur]) raise(errc::not_full_cycle, "psi splits into shorter cycles");
            seen[cur] = true;
            cycle.push_back(cur);
            cur = image[cur];
        }
        if (static_cast<long>(cycle.size()) != n) raise(errc::not_full_cycle, "psi splits into shorter cycles");
    }

    // Reorder so that psi maps basis vector w_j to a multiple of w_{j-1}
    // (the standard-cycle shape). Walking the psi-cycle backwards from its
    // lexicographically largest point keeps an already-canonical pair fixed.
    long start_pos = 0;
    for (long t = 1; t < n; ++t)
        if (lex_less(fix_phi[cycle[start_pos]], fix_phi[cycle[t]])) start_pos = t;
    std::vector<long> order(n);
    order[0] = cycle[start_pos];
    for (long j = 1; j < n; ++j) order[j] = cycle[(start_pos + n - j) % n];

    Mat reordered(n, L);
    for (long j = 0; j < n; ++j) {
        const auto& v = fix_phi[order[j]].coords();
        for (long i = 0; i < n; ++i) reordered.at(i, j) = v[i];
    }
    Mat reordered_inv = reordered.inverse();
    Mat psi_cycle = reordered_inv * psi_unit * reordered;
    if (!detail::weighted_cycle_entries(psi_cycle))
        raise(errc::invariant_mismatch, "reordered psi is not a weighted cycle");

    ProjMap d = diagonal_rescale(ProjMap(psi_cycle));
    // xi = (reordered * D^{-1})^{-1}: then xi psi xi^{-1} = D psi_cycle D^{-1} = N.
    Mat xi_mat = d.lift() * reordered_inv;
    ProjMap xi(xi_mat);
    ProjMap psi_canon = ProjMap(xi_mat * psi_unit * xi_mat.inverse());
    Mat phi_conj = xi_mat * phi.lift() * xi_mat.inverse();

    // phi in the new basis is diagonal; normalize its first entry to 1 and
    // read lambda off the ratio of consecutive eigenvalues.
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (i != j && !phi_conj.at(i, j).is_zero())
                raise(errc::invariant_mismatch, "phi not diagonal in the cycle basis");
    Mat phi_canon_mat = phi_conj.scaled(phi_conj.at(0, 0).inverse());
    CycNum lambda = phi_canon_mat.at(1, 1);
    for (long i = 0; i + 1 < n; ++i)
        if (phi_canon_mat.at(i + 1, i + 1) != phi_canon_mat.at(i, i) * lambda)
            raise(errc::invariant_mismatch, "eigenvalues are not a geometric progression");
    auto lam = as_root_of_unity(lambda);
    if (!lam || lam->order != n) raise(errc::invariant_mismatch, "lambda is not a primitive n-th root of unity");

    CanonPairResult result{xi, ProjMap(phi_canon_mat), psi_canon, lambda};
    // Certificate: the returned forms really are the conjugated inputs.
    if (!proj_eq(result.phi_canon, ProjMap(xi_mat * phi.lift() * xi_mat.inverse())) ||
        !proj_eq(result.psi_canon, ProjMap(Mat::cyclic_shift(n, L))))
        raise(errc::invariant_mismatch, "canonicalization certificate failed");
    return result;
}

/// Conjugator taking a finite-order class in PGL_2 with isolated fixed points
/// to diag(zeta_m, 1), m = proj_order. Accepts orders 2, 3, 4, 6.
inline ProjMap canonical_cyclic_pgl2(const ProjMap& m_in) {
    if (m_in.dim() != 2) raise(errc::dim_mismatch, "expected a class in PGL_2");
    const long m = proj_order(m_in);
    if (m != 2 && m != 3 && m != 4 && m != 6) raise(errc::wrong_order, "order must be 2, 3, 4 or 6");

    long L = lcm_long(m_in.conductor(), lcm_long(m, 2));
    ProjMap map = m_in.embedded(L);
    std::vector<ProjPoint> pts;
    for (;;) {
        try {
            pts = fixed_points(map);
            break;
        } catch (const Error& e) {
            if (e.code() == errc::conductor_too_small && e.suggested_conductor > L) {
                L = e.suggested_conductor;
                map = m_in.embedded(L);
                continue;
            }
            throw;
        }
    }
    if (pts.size() != 2) raise(errc::non_isolated_fixed_locus, "expected two isolated fixed points");

    auto build = [&](const ProjPoint& a, const ProjPoint& b) {
        Mat basis(2, L);
        for (long i = 0; i < 2; ++i) {
            basis.at(i, 0) = a.coords()[i];
            basis.at(i, 1) = b.coords()[i];
        }
        return basis;
    };
    // Two candidate orderings of the eigenbasis; pick the one whose
    // diagonalization has ratio exactly zeta_m. Lex-descending order first so
    // an already-canonical diag(zeta_m, 1) keeps the identity conjugator.
    const CycNum zeta = primitive_root_in(L, m);
    for (int flip = 0; flip < 2; ++flip) {
        Mat basis = flip ? build(pts[0], pts[1]) : build(pts[1], pts[0]);
        Mat conj = basis.inverse() * map.lift() * basis;
        CycNum ratio = conj.at(0, 0) * conj.at(1, 1).inverse();
        if (ratio == zeta) return ProjMap(basis.inverse());
    }
    raise(errc::invariant_mismatch, "eigenvalue ratio is not a primitive m-th root");
}

/// Conjugator taking a commuting pair of involutions generating a Klein group
/// in PGL_2 to the pair (diag(-1,1), swap).
inline ProjMap canonical_klein_pgl2(const ProjMap& m1_in, const ProjMap& m2_in) {
    if (m1_in.dim() != 2 || m2_in.dim() != 2) raise(errc::dim_mismatch, "expected classes in PGL_2");
    if (proj_order(m1_in) != 2 || proj_order(m2_in) != 2) raise(errc::wrong_order, "generators must be involutions");
    if (!proj_eq(m1_in * m2_in, m2_in * m1_in)) raise(errc::not_commuting, "generators do not commute");
    if (proj_eq(m1_in, m2_in)) raise(errc::not_klein, "generators coincide; group has order 2");

    long L = lcm_long(lcm_long(m1_in.conductor(), m2_in.conductor()), 2);
    ProjMap m1 = m1_in.embedded(L);
    // Diagonalize the first involution.
    ProjMap xi1 = [&] {
        for (;;) {
            try {
                return canonical_cyclic_pgl2(m1);
            } catch (const Error& e) {
                if (e.code() == errc::conductor_too_small && e.suggested_conductor > L) {
                    L = e.suggested_conductor;
                    m1 = m1_in.embedded(L);
                    continue;
                }
                throw;
            }
        }
    }();
    L = xi1.conductor();
    Mat k = xi1.lift() * m2_in.embedded(L).lift() * xi1.lift().inverse();
    // k commutes with diag(-1,1) and is not projectively diagonal-equal to it,
    // so it must be antidiagonal.
    if (!k.at(0, 0).is_zero() || !k.at(1, 1).is_zero() || k.at(0, 1).is_zero() || k.at(1, 0).is_zero())
        raise(errc::not_klein, "second generator does not exchange the fixed points of the first");
    // Normalize k to an exact involution: k^2 = (bc) I, so divide by a square
    // root of bc, which the scalar root finder supplies.
    CycNum bc = k.at(0, 1) * k.at(1, 0);
    auto s = detail::kth_root_of_scalar(bc, 2);
    if (!s) {
        Error err(errc::conductor_too_small, "no square root for the involution scalar");
        err.suggested_conductor = 0;
        throw err;
    }
    Mat k_unit = k.scaled(s->inverse());  // now [[0, g],[1/g, 0]] with g = k01/s
    CycNum g = k_unit.at(0, 1);
    Mat fix = Mat::diagonal({g, CycNum::one(L)});  // conj by diag(g,1) sends k_unit to swap
    Mat xi_mat = fix.inverse() * xi1.lift();
    ProjMap xi(xi_mat);

    Mat neg = Mat::diagonal({CycNum::from_int(L, -1), CycNum::one(L)});
    Mat swap(2, L);
    swap.at(0, 1) = CycNum::one(L);
    swap.at(1, 0) = CycNum::one(L);
    if (!proj_eq(ProjMap(xi_mat * m1_in.embedded(L).lift() * xi_mat.inverse()), ProjMap(neg)) ||
        !proj_eq(ProjMap(xi_mat * m2_in.embedded(L).lift() * xi_mat.inverse()), ProjMap(swap)))
        raise(errc::invariant_mismatch, "Klein canonicalization certificate failed");
    return xi;
}

/// Conjugator taking one involution (or a commuting faithful pair of
/// involutions) in PGL_3 to the representatives diag(1,-1,1) and, for a pair,
/// the coordinate reversal. Lifts are first normalized inside SL_3, where a
/// faithful linear copy of the group exists and the involution lift is unique;
/// the three joint eigenlines are then matched to the fixed eigenbasis of the
/// reversal.
inline ProjMap canonical_involutions_pgl3(const std::vector<ProjMap>& gens) {
    if (gens.empty() || gens.size() > 2) raise(errc::dim_mismatch, "expected one or two generators");
    for (const auto& g : gens) {
        if (g.dim() != 3) raise(errc::dim_mismatch, "expected classes in PGL_3");
        if (proj_order(g) != 2) raise(errc::wrong_order, "generators must be involutions");
    }
    long L = 2;
    for (const auto& g : gens) L = lcm_long(L, g.conductor());

    // The unique det-1 involution lift: for M^2 = cI and det M = d the rescale
    // by c/d gives both det 1 and square I (c^3 = d^2 holds identically).
    auto sl_involution = [&](const ProjMap& g) {
        Mat lift = g.embedded(L).lift();
        Mat sq = lift * lift;
        if (!sq.is_scalar()) raise(errc::invariant_mismatch, "square of involution lift is not scalar");
        CycNum c = sq.at(0, 0);
        CycNum d = lift.determinant();
        Mat out = lift.scaled(c * d.inverse());
        if (!(out * out == Mat::identity(3, L))) raise(errc::invariant_mismatch, "SL involution lift failed");
        return out;
    };

    std::vector<Mat> invs;
    for (const auto& g : gens) invs.push_back(sl_involution(g));
    if (invs.size() == 2) {
        if (!proj_eq(gens[0] * gens[1], gens[1] * gens[0])) raise(errc::not_commuting, "generators do not commute");
        if (proj_eq(ProjMap(invs[0]), ProjMap(invs[1])))
            raise(errc::not_faithful, "generators coincide; the group has order 2, not 4");
        // Commuting Klein generators have exactly commuting SL lifts.
        if (!(invs[0] * invs[1] == invs[1] * invs[0]))
            raise(errc::not_faithful, "no faithful linear lift of the generated group");
    }

    auto plus_space = [&](const Mat& m) { return nullspace(m - Mat::identity(3, L)); };
    auto minus_space = [&](const Mat& m) {
        return nullspace(m - Mat::identity(3, L).scaled(CycNum::from_int(L, -1)));
    };

    // Columns of the diagonalizing basis, ordered so that the first generator
    // becomes diag(-1, 1, -1) (the SL lift of diag(1,-1,1)) and, for a pair,
    // the second becomes diag(-1, -1, 1).
    std::vector<std::vector<CycNum>> cols(3);
    if (invs.size() == 1) {
        auto plus = plus_space(invs[0]);
        auto minus = minus_space(invs[0]);
        if (plus.size() != 1 || minus.size() != 2)
            raise(errc::not_faithful, "involution lacks the expected 1+2 eigenspace split");
        cols[0] = minus[0];
        cols[1] = plus[0];
        cols[2] = minus[1];
    } else {
        // Joint sign patterns (s1, s2) of the commuting pair: the (+,-) line is
        // the plus-space of M1, the (-,+) line the plus-space of M2, and the
        // (-,-) line the plus-space of the product.
        auto pm = plus_space(invs[0]);
        auto mp = plus_space(invs[1]);
        auto mm = plus_space(invs[0] * invs[1]);
        if (pm.size() != 1 || mp.size() != 1 || mm.size() != 1)
            raise(errc::not_faithful, "joint eigenlines are not three distinct lines");
        cols[0] = mm[0];
        cols[1] = pm[0];
        cols[2] = mp[0];
    }

    // Pin the column scaling (first nonzero coordinate = 1) so the output is
    // deterministic and canonical inputs get the identity conjugator.
    for (auto& col : cols) col = ProjPoint(col).normalized().coords();
    Mat q(3, L);
    for (long j = 0; j < 3; ++j)
        for (long i = 0; i < 3; ++i) q.at(i, j) = cols[j][i];
    Mat q_inv = q.inverse();

    Mat xi_mat = q_inv;
    if (invs.size() == 2) {
        // Fixed basis change diagonalizing the reversal: columns (1,0,1), (0,1,0), (1,0,-1).
        Mat b(3, L);
        b.at(0, 0) = CycNum::one(L);
        b.at(2, 0) = CycNum::one(L);
        b.at(1, 1) = CycNum::one(L);
        b.at(0, 2) = CycNum::one(L);
        b.at(2, 2) = CycNum::from_int(L, -1);
        xi_mat = b * q_inv;
    }
    ProjMap xi(xi_mat);

    Mat delta = Mat::diagonal({CycNum::one(L), CycNum::from_int(L, -1), CycNum::one(L)});
    if (!proj_eq(ProjMap(xi_mat * invs[0] * xi_mat.inverse()), ProjMap(delta)))
        raise(errc::invariant_mismatch, "involution canonicalization certificate failed");
    if (invs.size() == 2 &&
        !proj_eq(ProjMap(xi_mat * invs[1] * xi_mat.inverse()), ProjMap(Mat::reversal(3, L))))
        raise(errc::invariant_mismatch, "involution pair certificate failed");
    return xi;
}

}  // namespace qfib

#endif
