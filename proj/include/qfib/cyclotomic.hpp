#ifndef QFIB_CYCLOTOMIC_HPP
#define QFIB_CYCLOTOMIC_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "qfib/errors.hpp"
#include "qfib/rational.hpp"

namespace qfib {

inline long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace detail {

// Exact division of integer polynomials, divisor monic. Remainder must vanish.
inline std::vector<long long> poly_divide_exact(std::vector<long long> num,
                                                const std::vector<long long>& den) {
    const size_t dd = den.size() - 1;
    if (num.size() < den.size()) raise(errc::invariant_mismatch, "degree underflow in poly division");
    std::vector<long long> quot(num.size() - dd, 0);
    for (size_t i = num.size(); i-- > dd;) {
        long long c = num[i];
        if (c == 0) continue;
        quot[i - dd] = c;
        for (size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * den[k];
    }
    for (long long c : num)
        if (c != 0) raise(errc::invariant_mismatch, "non-exact poly division");
    return quot;
}

// Cyclotomic polynomials, built bottom-up over divisors so the cache never
// re-enters itself: Phi_L = (x^L - 1) / prod_{d | L, d < L} Phi_d.
inline std::vector<long long> cyclotomic_poly(long L) {
    static std::mutex mtx;
    static std::map<long, std::vector<long long>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    for (long d = 1; d <= L; ++d) {
        if (L % d != 0 || cache.count(d)) continue;
        std::vector<long long> num(d + 1, 0);
        num[0] = -1;
        num[d] = 1;
        for (long e = 1; e < d; ++e)
            if (d % e == 0) num = poly_divide_exact(std::move(num), cache.at(e));
        cache.emplace(d, std::move(num));
    }
    return cache.at(L);
}

struct ConductorData {
    long L = 0;
    long phi = 0;
    std::vector<long long> cyclo;                  // monic, degree phi
    std::vector<std::vector<Integer>> pow_table;   // x^{phi+t} mod cyclo, t = 0..phi-2
};

inline const ConductorData& conductor_data(long L) {
    static std::mutex mtx;
    static std::map<long, std::unique_ptr<ConductorData>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(L);
    if (it != cache.end()) return *it->second;

    auto data = std::make_unique<ConductorData>();
    data->L = L;
    data->phi = euler_phi(L);
    data->cyclo = cyclotomic_poly(L);
    const long phi = data->phi;
    // x^{phi+t} mod cyclo, built incrementally: x^{phi} = -(low part of cyclo), then
    // multiply by x and fold the overflowing coefficient back in.
    std::vector<Integer> cur(phi);
    for (long i = 0; i < phi; ++i) cur[i] = -data->cyclo[i];
    data->pow_table.reserve(phi > 0 ? phi - 1 : 0);
    for (long t = 0; t + 1 < phi; ++t) {
        data->pow_table.push_back(cur);
        Integer top = cur[phi - 1];
        for (long i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (long i = 0; i < phi; ++i) cur[i] -= top * data->cyclo[i];
    }
    auto& ref = *data;
    cache.emplace(L, std::move(data));
    return ref;
}

}  // namespace detail

/// An element of the cyclotomic field Q(zeta_L), stored as exact rational
/// coordinates over the power basis {1, zeta, ..., zeta^{phi(L)-1}} reduced
/// modulo the L-th cyclotomic polynomial. Representation is canonical:
/// two values at the same conductor are equal iff their coefficient vectors are.
class CycNum {
  public:
    CycNum() : conductor_(1), coeffs_(1, Rational(0)) {}

    CycNum(long conductor, std::vector<Rational> coeffs) : conductor_(conductor), coeffs_(std::move(coeffs)) {
        if (conductor_ < 1) raise(errc::parse_error, "conductor must be positive");
        const long phi = detail::conductor_data(conductor_).phi;
        if (static_cast<long>(coeffs_.size()) != phi)
            raise(errc::parse_error, "coefficient count does not match phi(conductor)");
    }

    static CycNum zero(long L) { return from_rational(L, Rational(0)); }
    static CycNum one(long L) { return from_rational(L, Rational(1)); }

    static CycNum from_rational(long L, const Rational& q) {
        std::vector<Rational> c(detail::conductor_data(L).phi, Rational(0));
        c[0] = q;
        return CycNum(L, std::move(c));
    }

    static CycNum from_int(long L, long v) { return from_rational(L, Rational(v)); }

    long conductor() const { return conductor_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    bool is_one() const {
        if (coeffs_[0] != 1) return false;
        for (size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }

    /// The constant coefficient when the value is rational, empty otherwise.
    std::optional<Rational> as_rational() const {
        for (size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return std::nullopt;
        return coeffs_[0];
    }

    friend bool operator==(const CycNum& a, const CycNum& b) {
        if (a.conductor_ != b.conductor_)
            raise(errc::conductor_mismatch, "equality across conductors; embed first");
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    friend CycNum operator+(const CycNum& a, const CycNum& b) {
        check_same(a, b);
        std::vector<Rational> c(a.coeffs_);
        for (size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
        return CycNum(a.conductor_, std::move(c), unchecked{});
    }

    friend CycNum operator-(const CycNum& a, const CycNum& b) {
        check_same(a, b);
        std::vector<Rational> c(a.coeffs_);
        for (size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs_[i];
        return CycNum(a.conductor_, std::move(c), unchecked{});
    }

    friend CycNum operator-(const CycNum& a) {
        std::vector<Rational> c(a.coeffs_);
        for (auto& x : c) x = -x;
        return CycNum(a.conductor_, std::move(c), unchecked{});
    }

    friend CycNum operator*(const CycNum& a, const CycNum& b) {
        check_same(a, b);
        const auto& data = detail::conductor_data(a.conductor_);
        const long phi = data.phi;
        std::vector<Rational> conv(2 * phi - 1, Rational(0));
        for (long i = 0; i < phi; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (long j = 0; j < phi; ++j) {
                if (b.coeffs_[j] == 0) continue;
                conv[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        std::vector<Rational> c(conv.begin(), conv.begin() + phi);
        for (long t = 0; t + phi < 2 * phi - 1; ++t) {
            const Rational& over = conv[phi + t];
            if (over == 0) continue;
            const auto& row = data.pow_table[t];
            for (long i = 0; i < phi; ++i)
                if (row[i] != 0) c[i] += over * Rational(row[i]);
        }
        return CycNum(a.conductor_, std::move(c), unchecked{});
    }

    friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }

    CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
    CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
    CycNum& operator*=(const CycNum& o) { return *this = *this * o; }
    CycNum& operator/=(const CycNum& o) { return *this = *this / o; }

    CycNum scaled(const Rational& q) const {
        std::vector<Rational> c(coeffs_);
        for (auto& x : c) x *= q;
        return CycNum(conductor_, std::move(c), unchecked{});
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against the
    /// cyclotomic polynomial (irreducible over Q, so any nonzero value is a unit).
    CycNum inverse() const {
        if (is_zero()) raise(errc::division_by_zero, "inverse of zero");
        const auto& data = detail::conductor_data(conductor_);
        std::vector<Rational> r0(data.cyclo.size());
        for (size_t i = 0; i < data.cyclo.size(); ++i) r0[i] = Rational(data.cyclo[i]);
        std::vector<Rational> r1(coeffs_);
        trim(r1);
        std::vector<Rational> t0{Rational(0)}, t1{Rational(1)};
        while (degree(r1) > 0) {
            auto [q, r] = divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            auto t2 = sub(t0, mul(q, t1));
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        // r1 is now a nonzero constant (gcd of the irreducible modulus and a unit).
        const Rational c = r1[0];
        std::vector<Rational> out(data.phi, Rational(0));
        for (size_t i = 0; i < t1.size() && i < out.size(); ++i) out[i] = t1[i] / c;
        // t1 may exceed phi-1 in degree only transiently; reduce defensively.
        if (t1.size() > static_cast<size_t>(data.phi)) {
            std::vector<Rational> full(t1);
            for (auto& x : full) x /= c;
            return CycNum(conductor_, reduce(conductor_, std::move(full)), unchecked{});
        }
        return CycNum(conductor_, std::move(out), unchecked{});
    }

    CycNum pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        CycNum acc = CycNum::one(conductor_);
        CycNum base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base = (e >>= 1) ? base * base : base;
        }
        return acc;
    }

    friend std::ostream& operator<<(std::ostream& os, const CycNum& x) {
        os << "Cyc(" << x.conductor_ << ";";
        for (size_t i = 0; i < x.coeffs_.size(); ++i) os << (i ? "," : " ") << rational_to_string(x.coeffs_[i]);
        return os << ")";
    }

    std::string str() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    /// Reduce an arbitrary-degree rational polynomial in zeta_L to the power basis.
    static std::vector<Rational> reduce(long L, std::vector<Rational> poly) {
        const auto& data = detail::conductor_data(L);
        const long phi = data.phi;
        for (size_t d = poly.size(); d-- > static_cast<size_t>(phi);) {
            const Rational c = poly[d];
            if (c == 0) continue;
            poly[d] = 0;
            for (long k = 0; k < phi; ++k)
                if (data.cyclo[k] != 0) poly[d - phi + k] -= c * Rational(data.cyclo[k]);
        }
        poly.resize(phi, Rational(0));
        return poly;
    }

  private:
    struct unchecked {};
    CycNum(long conductor, std::vector<Rational> coeffs, unchecked)
        : conductor_(conductor), coeffs_(std::move(coeffs)) {}

    static void check_same(const CycNum& a, const CycNum& b) {
        if (a.conductor_ != b.conductor_)
            raise(errc::conductor_mismatch, "mixed conductors; embed operands first");
    }

    static long degree(const std::vector<Rational>& p) {
        for (size_t i = p.size(); i-- > 0;)
            if (p[i] != 0) return static_cast<long>(i);
        return -1;
    }

    static void trim(std::vector<Rational>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    }

    static std::vector<Rational> sub(const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> r(std::max(a.size(), b.size()), Rational(0));
        for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
        for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        trim(r);
        return r;
    }

    static std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        }
        trim(r);
        return r;
    }

    static std::pair<std::vector<Rational>, std::vector<Rational>> divmod(std::vector<Rational> num,
                                                                          const std::vector<Rational>& den) {
        long dn = degree(num), dd = degree(den);
        if (dd < 0) raise(errc::division_by_zero, "polynomial division by zero");
        std::vector<Rational> quot(dn >= dd ? dn - dd + 1 : 0, Rational(0));
        const Rational lead = den[dd];
        for (long i = dn; i >= dd; --i) {
            if (num[i] == 0) continue;
            Rational c = num[i] / lead;
            quot[i - dd] = c;
            for (long k = 0; k <= dd; ++k) num[i - dd + k] -= c * den[k];
        }
        trim(num);
        return {std::move(quot), std::move(num)};
    }

    long conductor_;
    std::vector<Rational> coeffs_;
};

/// zeta_L^{j mod L}, reduced over the power basis.
inline CycNum root_of_unity(long L, long j) {
    if (L < 1) raise(errc::parse_error, "conductor must be positive");
    long e = j % L;
    if (e < 0) e += L;
    const long phi = detail::conductor_data(L).phi;
    std::vector<Rational> poly(e + 1, Rational(0));
    poly[e] = 1;
    if (e < phi) {
        poly.resize(phi, Rational(0));
        return CycNum(L, std::move(poly));
    }
    return CycNum(L, CycNum::reduce(L, std::move(poly)));
}

/// Same field element re-expressed in Q(zeta_{L_target}); requires
/// conductor(x) | L_target. Ring homomorphism.
inline CycNum embed(const CycNum& x, long L_target) {
    const long L = x.conductor();
    if (L_target < 1 || L_target % L != 0)
        raise(errc::not_a_divisor, "conductor " + std::to_string(L) + " does not divide " + std::to_string(L_target));
    if (L_target == L) return x;
    const long ratio = L_target / L;
    const auto& src = x.coeffs();
    std::vector<Rational> poly((src.size() - 1) * ratio + 1, Rational(0));
    for (size_t k = 0; k < src.size(); ++k) poly[k * ratio] = src[k];
    return CycNum(L_target, CycNum::reduce(L_target, std::move(poly)));
}

/// Embeds both operands into the least common conductor.
inline std::pair<CycNum, CycNum> align(const CycNum& a, const CycNum& b) {
    long L = lcm_long(a.conductor(), b.conductor());
    return {embed(a, L), embed(b, L)};
}

struct RootOfUnity {
    long order = 1;     // multiplicative order k
    long exponent = 0;  // x = zeta_k^exponent, gcd(exponent, k) = 1
};

/// Recognizes x as a root of unity. Every root of unity in Q(zeta_L) has
/// order dividing lcm(2, L), so the search over that cyclic group is complete.
inline std::optional<RootOfUnity> as_root_of_unity(const CycNum& x) {
    const long L = x.conductor();
    const long R = lcm_long(2, L);
    // Generator of the root-of-unity group of the field.
    const CycNum g = (L % 2 == 0) ? root_of_unity(L, 1) : -root_of_unity(L, 1);
    const long e = (L % 2 == 0) ? 1 : L + 2;  // g = zeta_R^e
    CycNum cur = CycNum::one(L);
    for (long t = 0; t < R; ++t) {
        if (cur == x) {
            long j0 = static_cast<long>((static_cast<long long>(e) * t) % R);
            long d = gcd_long(j0, R);
            if (j0 == 0) return RootOfUnity{1, 0};
            return RootOfUnity{R / d, j0 / d};
        }
        cur *= g;
    }
    return std::nullopt;
}

/// Principal primitive k-th root zeta_k inside Q(zeta_L). Requires k | lcm(2, L).
inline CycNum primitive_root_in(long L, long k) {
    const long R = lcm_long(2, L);
    if (k < 1 || R % k != 0) {
        Error err(errc::conductor_too_small,
                  "zeta_" + std::to_string(k) + " does not lie in Q(zeta_" + std::to_string(L) + ")");
        err.suggested_conductor = lcm_long(L, k);
        throw err;
    }
    const CycNum g = (L % 2 == 0) ? root_of_unity(L, 1) : -root_of_unity(L, 1);
    return g.pow(R / k);
}

}  // namespace qfib

#endif
