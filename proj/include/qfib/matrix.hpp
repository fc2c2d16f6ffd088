#ifndef QFIB_MATRIX_HPP
#define QFIB_MATRIX_HPP

#include <ostream>
#include <vector>

#include "qfib/cyclotomic.hpp"
#include "qfib/errors.hpp"

namespace qfib {

/// Square matrix over one cyclotomic field. Plain Mat may be singular
/// (nullspace input); invertibility is enforced by ProjMap, not here.
class Mat {
  public:
    Mat(long dim, long conductor)
        : dim_(dim), conductor_(conductor), entries_(dim * dim, CycNum::zero(conductor)) {
        if (dim < 1) raise(errc::dim_mismatch, "matrix dimension must be positive");
    }

    static Mat identity(long dim, long conductor) {
        Mat m(dim, conductor);
        for (long i = 0; i < dim; ++i) m.at(i, i) = CycNum::one(conductor);
        return m;
    }

    static Mat diagonal(const std::vector<CycNum>& d) {
        Mat m(static_cast<long>(d.size()), d.at(0).conductor());
        for (size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
        return m;
    }

    /// Superdiagonal ones plus a bottom-left corner one: e_j -> e_{j-1 mod dim}.
    static Mat cyclic_shift(long dim, long conductor) {
        Mat m(dim, conductor);
        for (long i = 0; i + 1 < dim; ++i) m.at(i, i + 1) = CycNum::one(conductor);
        m.at(dim - 1, 0) = CycNum::one(conductor);
        return m;
    }

    /// Coordinate reversal z_i -> z_{dim-1-i}.
    static Mat reversal(long dim, long conductor) {
        Mat m(dim, conductor);
        for (long i = 0; i < dim; ++i) m.at(i, dim - 1 - i) = CycNum::one(conductor);
        return m;
    }

    long dim() const { return dim_; }
    long conductor() const { return conductor_; }

    CycNum& at(long i, long j) { return entries_[i * dim_ + j]; }
    const CycNum& at(long i, long j) const { return entries_[i * dim_ + j]; }

    friend bool operator==(const Mat& a, const Mat& b) {
        check_compatible(a, b);
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    friend Mat operator*(const Mat& a, const Mat& b) {
        check_compatible(a, b);
        Mat r(a.dim_, a.conductor_);
        for (long i = 0; i < a.dim_; ++i)
            for (long k = 0; k < a.dim_; ++k) {
                const CycNum& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (long j = 0; j < a.dim_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) += aik * b.at(k, j);
                }
            }
        return r;
    }

    friend Mat operator-(const Mat& a, const Mat& b) {
        check_compatible(a, b);
        Mat r(a.dim_, a.conductor_);
        for (size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] = a.entries_[i] - b.entries_[i];
        return r;
    }

    Mat scaled(const CycNum& s) const {
        Mat r(dim_, conductor_);
        for (size_t i = 0; i < entries_.size(); ++i)
            if (!entries_[i].is_zero()) r.entries_[i] = entries_[i] * s;
        return r;
    }

    Mat embedded(long L) const {
        Mat r(dim_, L);
        for (long i = 0; i < dim_; ++i)
            for (long j = 0; j < dim_; ++j) r.at(i, j) = embed(at(i, j), L);
        return r;
    }

    std::vector<CycNum> apply(const std::vector<CycNum>& v) const {
        if (static_cast<long>(v.size()) != dim_) raise(errc::dim_mismatch, "vector length != matrix dim");
        std::vector<CycNum> r(dim_, CycNum::zero(conductor_));
        for (long i = 0; i < dim_; ++i)
            for (long j = 0; j < dim_; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }

    Mat pow(long e) const {
        Mat acc = identity(dim_, conductor_);
        Mat base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    bool is_scalar() const {
        const CycNum& d = at(0, 0);
        for (long i = 0; i < dim_; ++i)
            for (long j = 0; j < dim_; ++j) {
                if (i == j ? (at(i, j) != d) : !at(i, j).is_zero()) return false;
            }
        return true;
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    CycNum determinant() const {
        Mat work = *this;
        CycNum det = CycNum::one(conductor_);
        for (long col = 0; col < dim_; ++col) {
            long pivot = -1;
            for (long r = col; r < dim_; ++r)
                if (!work.at(r, col).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) return CycNum::zero(conductor_);
            if (pivot != col) {
                for (long j = 0; j < dim_; ++j) std::swap(work.at(pivot, j), work.at(col, j));
                det = -det;
            }
            det *= work.at(col, col);
            CycNum inv = work.at(col, col).inverse();
            for (long r = col + 1; r < dim_; ++r) {
                if (work.at(r, col).is_zero()) continue;
                CycNum f = work.at(r, col) * inv;
                for (long j = col; j < dim_; ++j) work.at(r, j) -= f * work.at(col, j);
            }
        }
        return det;
    }

    Mat inverse() const {
        Mat work = *this;
        Mat inv = identity(dim_, conductor_);
        for (long col = 0; col < dim_; ++col) {
            long pivot = -1;
            for (long r = col; r < dim_; ++r)
                if (!work.at(r, col).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) raise(errc::division_by_zero, "inverse of singular matrix");
            if (pivot != col)
                for (long j = 0; j < dim_; ++j) {
                    std::swap(work.at(pivot, j), work.at(col, j));
                    std::swap(inv.at(pivot, j), inv.at(col, j));
                }
            CycNum f = work.at(col, col).inverse();
            for (long j = 0; j < dim_; ++j) {
                work.at(col, j) *= f;
                inv.at(col, j) *= f;
            }
            for (long r = 0; r < dim_; ++r) {
                if (r == col || work.at(r, col).is_zero()) continue;
                CycNum g = work.at(r, col);
                for (long j = 0; j < dim_; ++j) {
                    work.at(r, j) -= g * work.at(col, j);
                    inv.at(r, j) -= g * inv.at(col, j);
                }
            }
        }
        return inv;
    }

    friend std::ostream& operator<<(std::ostream& os, const Mat& m) {
        os << "Mat" << m.dim_ << "[";
        for (long i = 0; i < m.dim_; ++i) {
            os << (i ? "; " : "");
            for (long j = 0; j < m.dim_; ++j) os << (j ? ", " : "") << m.at(i, j);
        }
        return os << "]";
    }

  private:
    static void check_compatible(const Mat& a, const Mat& b) {
        if (a.dim_ != b.dim_) raise(errc::dim_mismatch, "matrix dimensions differ");
        if (a.conductor_ != b.conductor_) raise(errc::conductor_mismatch, "matrix conductors differ; embed first");
    }

    long dim_;
    long conductor_;
    std::vector<CycNum> entries_;
};

/// Basis of the right kernel of M, rows in reduced echelon form (each basis
/// vector has a unit leading coordinate at a distinct free column). Empty when
/// M is invertible.
inline std::vector<std::vector<CycNum>> nullspace(const Mat& m) {
    const long n = m.dim();
    const long L = m.conductor();
    Mat work = m;
    std::vector<long> pivot_col;
    long row = 0;
    for (long col = 0; col < n && row < n; ++col) {
        long pr = -1;
        for (long r = row; r < n; ++r)
            if (!work.at(r, col).is_zero()) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        if (pr != row)
            for (long j = 0; j < n; ++j) std::swap(work.at(pr, j), work.at(row, j));
        CycNum f = work.at(row, col).inverse();
        for (long j = 0; j < n; ++j) work.at(row, j) *= f;
        for (long r = 0; r < n; ++r) {
            if (r == row || work.at(r, col).is_zero()) continue;
            CycNum g = work.at(r, col);
            for (long j = 0; j < n; ++j) work.at(r, j) -= g * work.at(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (long c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<CycNum>> basis;
    for (long free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<CycNum> v(n, CycNum::zero(L));
        v[free] = CycNum::one(L);
        for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -work.at(static_cast<long>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace qfib

#endif
