#ifndef QFIB_PROJ_LINEAR_HPP
#define QFIB_PROJ_LINEAR_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "qfib/matrix.hpp"
#include "qfib/rng.hpp"

namespace qfib {

/// A point of projective space: nonzero coordinate vector up to scale.
class ProjPoint {
  public:
    explicit ProjPoint(std::vector<CycNum> coords) : coords_(std::move(coords)) {
        bool nonzero = false;
        for (const auto& c : coords_) nonzero = nonzero || !c.is_zero();
        if (coords_.empty() || !nonzero) raise(errc::parse_error, "projective point needs a nonzero coordinate");
    }

    long dim() const { return static_cast<long>(coords_.size()); }
    long conductor() const { return coords_[0].conductor(); }
    const std::vector<CycNum>& coords() const { return coords_; }

    /// Scale-canonical representative: first nonzero coordinate equals 1.
    ProjPoint normalized() const {
        for (const auto& c : coords_) {
            if (c.is_zero()) continue;
            CycNum inv = c.inverse();
            std::vector<CycNum> out;
            out.reserve(coords_.size());
            for (const auto& x : coords_) out.push_back(x.is_zero() ? x : x * inv);
            return ProjPoint(std::move(out));
        }
        raise(errc::parse_error, "zero projective point");
    }

    ProjPoint embedded(long L) const {
        std::vector<CycNum> out;
        out.reserve(coords_.size());
        for (const auto& c : coords_) out.push_back(embed(c, L));
        return ProjPoint(std::move(out));
    }

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
        if (a.dim() != b.dim()) raise(errc::dim_mismatch, "point dimensions differ");
        return a.normalized().coords_ == b.normalized().coords_;
    }
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const ProjPoint& p) {
        os << "[";
        for (long i = 0; i < p.dim(); ++i) os << (i ? " : " : "") << p.coords_[i];
        return os << "]";
    }

  private:
    std::vector<CycNum> coords_;
};

/// Total order on normalized coordinate vectors; used wherever a
/// deterministic choice among points is needed.
inline bool lex_less(const std::vector<CycNum>& a, const std::vector<CycNum>& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        const auto& ca = a[i].coeffs();
        const auto& cb = b[i].coeffs();
        if (ca != cb) return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
    }
    return a.size() < b.size();
}

inline bool lex_less(const ProjPoint& a, const ProjPoint& b) {
    return lex_less(a.normalized().coords(), b.normalized().coords());
}

/// An element of PGL: an invertible lift, compared only up to nonzero scalar.
class ProjMap {
  public:
    explicit ProjMap(Mat lift) : lift_(std::move(lift)) {
        if (lift_.determinant().is_zero()) raise(errc::division_by_zero, "projective map needs an invertible lift");
    }

    long dim() const { return lift_.dim(); }
    long conductor() const { return lift_.conductor(); }
    const Mat& lift() const { return lift_; }

    ProjMap embedded(long L) const { return ProjMap(lift_.embedded(L)); }
    ProjMap inverse() const { return ProjMap(lift_.inverse()); }

    friend ProjMap operator*(const ProjMap& a, const ProjMap& b) { return ProjMap(a.lift_ * b.lift_); }

    ProjPoint apply(const ProjPoint& p) const {
        if (p.dim() != dim()) raise(errc::dim_mismatch, "point/map dimensions differ");
        return ProjPoint(lift_.apply(p.coords()));
    }

    friend std::ostream& operator<<(std::ostream& os, const ProjMap& m) { return os << m.lift_; }

  private:
    Mat lift_;
};

/// True iff A and B agree in PGL, i.e. the lifts differ by a nonzero scalar.
inline bool proj_eq(const ProjMap& a, const ProjMap& b) {
    if (a.dim() != b.dim()) raise(errc::dim_mismatch, "projective maps of different dimension");
    const Mat& ma = a.lift();
    const Mat& mb = b.lift();
    if (ma.conductor() != mb.conductor()) raise(errc::conductor_mismatch, "embed maps to a common conductor first");
    const long n = ma.dim();
    std::optional<CycNum> scale;
    for (long i = 0; i < n && !scale; ++i)
        for (long j = 0; j < n && !scale; ++j)
            if (!ma.at(i, j).is_zero()) {
                if (mb.at(i, j).is_zero()) return false;
                scale = mb.at(i, j) * ma.at(i, j).inverse();
            }
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (mb.at(i, j) != ma.at(i, j) * *scale) return false;
    return true;
}

/// Least k <= cap with lift^k scalar; the order of the class in PGL.
inline long proj_order(const ProjMap& a, long cap = 64) {
    Mat power = a.lift();
    for (long k = 1; k <= cap; ++k) {
        if (power.is_scalar()) return k;
        power = power * a.lift();
    }
    raise(errc::order_exceeds_cap, "no scalar power up to cap " + std::to_string(cap));
}

namespace detail {

// Finds mu in the working field with mu^k = c, for c of the shape
// (positive rational) * (root of unity). That covers every scalar this
// artifact produces; anything fancier reports failure and the caller can
// rescale the lift or extend the conductor.
inline std::optional<CycNum> kth_root_of_scalar(const CycNum& c, long k) {
    const long L = c.conductor();
    const long R = lcm_long(2, L);
    const CycNum g = (L % 2 == 0) ? root_of_unity(L, 1) : -root_of_unity(L, 1);
    const CycNum ginv = g.inverse();
    CycNum z = c;
    for (long t = 0; t < R; ++t) {
        if (auto q = z.as_rational(); q && *q > 0) {
            if (auto rho = rational_kth_root(*q, static_cast<unsigned>(k))) {
                // Need u = g^s with u^k = g^t, i.e. s*k = t (mod R).
                long d = gcd_long(k % R == 0 ? R : k % R, R);
                if (t % d == 0) {
                    long km = (k % R + R) % R;
                    // Solve s*km = t mod R by scanning the d candidates.
                    for (long s = 0; s < R; ++s) {
                        if ((static_cast<long long>(s) * km - t) % R == 0)
                            return CycNum::from_rational(L, *rho) * g.pow(s);
                    }
                }
            }
        }
        z *= ginv;
    }
    return std::nullopt;
}

}  // namespace detail

/// Isolated fixed points of a finite-order projective map: one point per
/// one-dimensional eigenspace of a lift. Eigenvalues are discovered as
/// mu * zeta_k^j where mu^k = c and lift^k = c * I; the search for mu also
/// tries the lift rescaled by each of its entries, which succeeds for every
/// matrix in scope here (conjugates of root-of-unity canonical forms, possibly
/// scaled by rationals and roots of unity).
inline std::vector<ProjPoint> fixed_points(const ProjMap& a, long order_cap = 64) {
    const long m = a.dim();
    const long L = a.conductor();
    const long k = proj_order(a, order_cap);
    const long R = lcm_long(2, L);
    if (R % k != 0) {
        Error err(errc::conductor_too_small, "zeta_" + std::to_string(k) + " not in working field");
        err.suggested_conductor = lcm_long(L, k);
        throw err;
    }

    Mat power = a.lift().pow(k);
    if (!power.is_scalar()) raise(errc::invariant_mismatch, "order-k power is not scalar");
    const CycNum c = power.at(0, 0);

    // Candidate rescales of the lift: identity first, then each nonzero entry.
    std::vector<CycNum> rescales{CycNum::one(L)};
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j) {
            const CycNum& e = a.lift().at(i, j);
            if (!e.is_zero() && std::find(rescales.begin(), rescales.end(), e) == rescales.end())
                rescales.push_back(e);
        }

    std::optional<CycNum> mu;
    std::optional<Mat> work;
    for (const CycNum& e : rescales) {
        CycNum ck = c * e.pow(-k);
        if (auto r = detail::kth_root_of_scalar(ck, k)) {
            mu = r;
            work = a.lift().scaled(e.inverse());
            break;
        }
    }
    if (!mu) {
        Error err(errc::conductor_too_small, "no k-th root of the order-k scalar in the working field");
        if (auto r = as_root_of_unity(c)) err.suggested_conductor = lcm_long(L, lcm_long(k * r->order, 2));
        throw err;
    }

    const CycNum zeta = primitive_root_in(L, k);
    std::vector<CycNum> lambdas;
    {
        CycNum lambda = *mu;
        for (long j = 0; j < k; ++j) {
            lambdas.push_back(lambda);
            lambda *= zeta;
        }
    }

    // Fast path: eigenvectors via spectral-projector products. For each
    // candidate eigenvalue, prod_{t != j} (M - lambda_t I) maps any generic
    // vector into the lambda_j eigenspace; this needs no field inversions.
    // The lift is diagonalizable (its minimal polynomial divides x^k - c,
    // which is squarefree), so eigenspace dimensions add up to m; each present
    // eigenvalue contributes one point exactly when all eigenspaces are lines.
    std::vector<ProjPoint> points;
    for (long j = 0; j < k; ++j) {
        std::vector<CycNum> v;
        for (long basis = 0; basis < m; ++basis) {
            std::vector<CycNum> cur(m, CycNum::zero(L));
            cur[basis] = CycNum::one(L);
            for (long t = 0; t < k; ++t) {
                if (t == j) continue;
                std::vector<CycNum> next = work->apply(cur);
                for (long i = 0; i < m; ++i) next[i] -= lambdas[t] * cur[i];
                cur = std::move(next);
            }
            bool nonzero = false;
            for (const auto& x : cur) nonzero = nonzero || !x.is_zero();
            if (nonzero) {
                v = std::move(cur);
                break;
            }
        }
        if (!v.empty()) points.push_back(ProjPoint(std::move(v)).normalized());
    }
    if (static_cast<long>(points.size()) < m) {
        // Ambiguous: either a fat eigenspace or eigenvalues outside the field.
        // Classify with the exact nullspace route.
        long total_dim = 0;
        for (long j = 0; j < k; ++j) {
            Mat b = *work - Mat::identity(m, L).scaled(lambdas[j]);
            auto kern = nullspace(b);
            if (kern.size() >= 2)
                raise(errc::non_isolated_fixed_locus, "eigenspace of dimension " + std::to_string(kern.size()));
            total_dim += static_cast<long>(kern.size());
        }
        Error err(errc::conductor_too_small, "eigenvalues escape the working field");
        err.suggested_conductor = lcm_long(L, 2 * k * k);
        throw err;
    }
    std::sort(points.begin(), points.end(), [](const ProjPoint& x, const ProjPoint& y) { return lex_less(x, y); });
    return points;
}

/// Induced action of a 2x2 matrix on binary forms of degree n, in the basis
/// where coordinate i is the coefficient of T^{n-i} S^i. Satisfies
/// sym_power(M*N, n) = sym_power(M, n) * sym_power(N, n).
inline Mat sym_power(const Mat& m, long n) {
    if (m.dim() != 2) raise(errc::dim_mismatch, "sym_power takes a 2x2 matrix");
    const long L = m.conductor();
    const CycNum &a = m.at(0, 0), &b = m.at(0, 1), &c = m.at(1, 0), &d = m.at(1, 1);
    Mat out(n + 1, L);
    // Column i = coefficients of (d T + b S)^{n-i} (c T + a S)^i.
    for (long i = 0; i <= n; ++i) {
        std::vector<CycNum> poly{CycNum::one(L)};
        auto mul_linear = [&](const CycNum& t_coef, const CycNum& s_coef) {
            std::vector<CycNum> next(poly.size() + 1, CycNum::zero(L));
            for (size_t j = 0; j < poly.size(); ++j) {
                if (poly[j].is_zero()) continue;
                if (!t_coef.is_zero()) next[j] += poly[j] * t_coef;
                if (!s_coef.is_zero()) next[j + 1] += poly[j] * s_coef;
            }
            poly = std::move(next);
        };
        for (long rep = 0; rep < n - i; ++rep) mul_linear(d, b);
        for (long rep = 0; rep < i; ++rep) mul_linear(c, a);
        for (long r = 0; r <= n; ++r) out.at(r, i) = poly[r];
    }
    return out;
}

inline ProjMap sym_power(const ProjMap& m, long n) { return ProjMap(sym_power(m.lift(), n)); }

/// Coefficients of the product of linear forms prod_i (y_i T + x_i S) for
/// points [x_i : y_i]; coordinate i is the coefficient of T^{n-i} S^i. This is
/// the map identifying P^n with the n-th symmetric power of P^1; it is total,
/// symmetric in its arguments, and natural for sym_power.
inline ProjPoint form_from_roots(const std::vector<ProjPoint>& points) {
    if (points.empty()) raise(errc::dim_mismatch, "need at least one point");
    const long L = points[0].conductor();
    std::vector<CycNum> poly{CycNum::one(L)};
    for (const auto& p : points) {
        if (p.dim() != 2) raise(errc::dim_mismatch, "roots live on the projective line");
        if (p.conductor() != L) raise(errc::conductor_mismatch, "mixed conductors among roots");
        const CycNum& x = p.coords()[0];
        const CycNum& y = p.coords()[1];
        std::vector<CycNum> next(poly.size() + 1, CycNum::zero(L));
        for (size_t j = 0; j < poly.size(); ++j) {
            if (poly[j].is_zero()) continue;
            if (!y.is_zero()) next[j] += poly[j] * y;
            if (!x.is_zero()) next[j + 1] += poly[j] * x;
        }
        poly = std::move(next);
    }
    return ProjPoint(std::move(poly));
}

namespace detail {

inline std::vector<std::vector<ProjPoint>> commutation_tuples(long n, long L, long samples, Rng rng) {
    auto pt = [&](long x, long y) {
        return ProjPoint({CycNum::from_int(L, x), CycNum::from_int(L, y)});
    };
    std::vector<std::vector<ProjPoint>> tuples;
    // Fixed degenerate tuples first: they exercise the points where the
    // open-set coordinate formula for the quotient map breaks down.
    tuples.push_back(std::vector<ProjPoint>(n, pt(1, 0)));
    tuples.push_back(std::vector<ProjPoint>(n, pt(0, 1)));
    {
        std::vector<ProjPoint> mixed;
        for (long i = 0; i < n; ++i) mixed.push_back(i % 2 ? pt(0, 1) : pt(1, 0));
        tuples.push_back(std::move(mixed));
        std::vector<ProjPoint> affine;
        for (long i = 0; i < n; ++i) affine.push_back(pt(i + 1, 1));
        tuples.push_back(std::move(affine));
    }
    for (long s = 0; s < samples; ++s) {
        std::vector<ProjPoint> tup;
        for (long i = 0; i < n; ++i) {
            long x = rng.range(-9, 9), y = rng.range(-9, 9);
            if (x == 0 && y == 0) y = 1;
            tup.push_back(pt(x, y));
        }
        tuples.push_back(std::move(tup));
    }
    return tuples;
}

}  // namespace detail

/// Checks that T descends the diagonal P^1-action tbar through the symmetric
/// power map: T(form_from_roots(P)) = form_from_roots(tbar . P) projectively,
/// over fixed degenerate tuples and `samples` seeded pseudorandom ones.
inline bool commutation_check(const ProjMap& t, const ProjMap& tbar, long samples, std::uint64_t seed = 1) {
    if (tbar.dim() != 2) raise(errc::dim_mismatch, "tbar must act on the projective line");
    const long n = t.dim() - 1;
    if (n < 1) raise(errc::dim_mismatch, "T must act on P^n with n >= 1");
    const long L = lcm_long(t.conductor(), tbar.conductor());
    const ProjMap te = t.embedded(L);
    const ProjMap tb = tbar.embedded(L);
    for (const auto& tup : detail::commutation_tuples(n, L, samples, Rng(seed))) {
        std::vector<ProjPoint> moved;
        moved.reserve(tup.size());
        for (const auto& p : tup) moved.push_back(tb.apply(p));
        if (te.apply(form_from_roots(tup)) != form_from_roots(moved)) return false;
    }
    return true;
}

}  // namespace qfib

#endif
