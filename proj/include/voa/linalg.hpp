#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace voa {

using QVec = std::vector<Rational>;
using QMat = std::vector<std::vector<Rational>>;

// ---------------------------------------------------------------------------
// Dense exact routines (small matrices: Gram inverses, sl2-triple solves).
// Pivoting is "first structurally nonzero" so results are deterministic.
// ---------------------------------------------------------------------------

inline QMat q_identity(std::size_t n) {
    QMat m(n, QVec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline QMat q_invert(QMat a) {
    const std::size_t n = a.size();
    QMat inv = q_identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && is_zero(a[piv][col])) ++piv;
        if (piv == n) throw std::invalid_argument("q_invert: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || is_zero(a[r][col])) continue;
            Rational f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// One exact solution of A x = b with free variables set to 0; nullopt if
// inconsistent. A is m x n, row-major.
inline std::optional<QVec> q_solve(QMat a, QVec b) {
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a[0].size();
    std::vector<long> pivot_col(m, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        while (piv < m && is_zero(a[piv][col])) ++piv;
        if (piv == m) continue;
        std::swap(a[piv], a[row]);
        std::swap(b[piv], b[row]);
        Rational d = a[row][col];
        for (std::size_t j = col; j < n; ++j) a[row][j] /= d;
        b[row] /= d;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || is_zero(a[r][col])) continue;
            Rational f = a[r][col];
            for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[row][j];
            b[r] -= f * b[row];
        }
        pivot_col[row] = static_cast<long>(col);
        ++row;
    }
    for (std::size_t r = row; r < m; ++r)
        if (!is_zero(b[r])) return std::nullopt;
    QVec x(n, Rational(0));
    for (std::size_t r = 0; r < row; ++r) x[static_cast<std::size_t>(pivot_col[r])] = b[r];
    return x;
}

inline long q_rank(QMat a) {
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a[0].size();
    long rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        while (piv < m && is_zero(a[piv][col])) ++piv;
        if (piv == m) continue;
        std::swap(a[piv], a[row]);
        for (std::size_t r = row + 1; r < m; ++r) {
            if (is_zero(a[r][col])) continue;
            Rational f = a[r][col] / a[row][col];
            for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Sparse fraction-free elimination over Z for kernel computations.
// Rows are cleared of denominators on entry; row combinations stay integral
// and are reduced by their content, so entries never leave Z.
// ---------------------------------------------------------------------------

class SparseRowMatrix {
public:
    explicit SparseRowMatrix(long ncols) : ncols_(ncols) {}

    long ncols() const { return ncols_; }
    std::size_t nrows() const { return rows_.size(); }

    void add_row(const std::map<long, Rational>& row) {
        Integer lcm = 1;
        for (const auto& [c, v] : row) {
            if (c < 0 || c >= ncols_) throw std::out_of_range("SparseRowMatrix: column out of range");
            if (!is_zero(v)) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
        }
        std::map<long, Integer> irow;
        for (const auto& [c, v] : row) {
            if (is_zero(v)) continue;
            irow[c] = v.get_num() * (lcm / v.get_den());
        }
        if (!irow.empty()) rows_.push_back(reduce(std::move(irow)));
    }

    long rank() const {
        auto [pivots, free_cols] = eliminate();
        (void)free_cols;
        return static_cast<long>(pivots.size());
    }

    // Kernel basis vectors, one per free column in increasing column order,
    // each scaled to a primitive integer vector with positive leading entry.
    std::vector<QVec> kernel_basis() const {
        auto [pivots, free_cols] = eliminate();
        std::vector<QVec> basis;
        basis.reserve(free_cols.size());
        for (long fc : free_cols) {
            QVec v(static_cast<std::size_t>(ncols_), Rational(0));
            v[static_cast<std::size_t>(fc)] = 1;
            for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
                const auto& [pcol, prow] = *it;
                Rational acc(0);
                for (const auto& [c, val] : prow) {
                    if (c == pcol) continue;
                    if (!is_zero(v[static_cast<std::size_t>(c)]))
                        acc += Rational(val) * v[static_cast<std::size_t>(c)];
                }
                Rational pv(prow.at(pcol));
                v[static_cast<std::size_t>(pcol)] = -acc / pv;
            }
            normalize_primitive(v);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    static void normalize_primitive(QVec& v) {
        Integer lcm = 1;
        for (const auto& x : v)
            if (!is_zero(x)) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
        Integer gcd = 0;
        for (const auto& x : v) {
            if (is_zero(x)) continue;
            Integer n = x.get_num() * (lcm / x.get_den());
            mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), n.get_mpz_t());
        }
        if (gcd == 0) return;
        Rational scale(lcm, gcd);
        scale.canonicalize();
        int lead = 0;
        for (const auto& x : v) {
            if (!is_zero(x)) {
                lead = sgn(x);
                break;
            }
        }
        if (lead < 0) scale = -scale;
        for (auto& x : v) {
            x *= scale;
            x.canonicalize();
        }
    }

private:
    using IRow = std::map<long, Integer>;

    static IRow reduce(IRow row) {
        Integer g = 0;
        for (const auto& [c, v] : row) {
            (void)c;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
        if (g > 1)
            for (auto& [c, v] : row) {
                (void)c;
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
            }
        return row;
    }

    // Row echelon form; pivot = first remaining row (in input order) with a
    // structurally nonzero entry in the current column.
    std::pair<std::vector<std::pair<long, IRow>>, std::vector<long>> eliminate() const {
        std::vector<IRow> work = rows_;
        std::vector<bool> used(work.size(), false);
        std::vector<std::pair<long, IRow>> pivots;
        std::vector<long> free_cols;
        for (long col = 0; col < ncols_; ++col) {
            std::size_t piv = work.size();
            for (std::size_t r = 0; r < work.size(); ++r) {
                if (used[r]) continue;
                auto it = work[r].find(col);
                if (it != work[r].end() && it->second != 0) {
                    piv = r;
                    break;
                }
            }
            if (piv == work.size()) {
                free_cols.push_back(col);
                continue;
            }
            used[piv] = true;
            const Integer pval = work[piv].at(col);
            for (std::size_t r = 0; r < work.size(); ++r) {
                if (used[r]) continue;
                auto it = work[r].find(col);
                if (it == work[r].end() || it->second == 0) continue;
                const Integer rval = it->second;
                IRow next;
                for (const auto& [c, v] : work[r]) {
                    Integer nv = pval * v;
                    auto pit = work[piv].find(c);
                    if (pit != work[piv].end()) nv -= rval * pit->second;
                    if (nv != 0) next[c] = std::move(nv);
                }
                for (const auto& [c, v] : work[piv]) {
                    if (work[r].count(c)) continue;
                    Integer nv = -rval * v;
                    if (nv != 0) next[c] = std::move(nv);
                }
                work[r] = reduce(std::move(next));
            }
            pivots.emplace_back(col, work[piv]);
        }
        return {std::move(pivots), std::move(free_cols)};
    }

    long ncols_;
    std::vector<IRow> rows_;
};

}  // namespace voa
