#pragma once

// Independent oracles for the test suites. These deliberately avoid the
// library's straightening engine and sparse elimination: the Killing form is
// computed from ad-matrix traces, words are straightened by a free-algebra
// rewriter with a different control flow and no memoization, and null spaces
// come from a dense rational elimination over the full monomial basis.

#include <map>
#include <vector>

#include <voa/voa.hpp>

namespace voa::testing {

inline Rational killing_form(const LieAlgebraData& g, const Element& x, const Element& y) {
    const QMat ax = ad_matrix(g, x);
    const QMat ay = ad_matrix(g, y);
    Rational tr(0);
    const auto n = static_cast<std::size_t>(g.dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) tr += ax[i][l] * ay[l][i];
    return tr;
}

// ---------------------------------------------------------------------------
// Free-algebra straightening: pending words live in a coefficient map (the
// free module on words, so equal words merge) keyed by a rewriting measure in
// descending order. Every rewrite strictly decreases the measure, so each
// distinct word is extracted at most once; annihilators are taken leftmost
// and inversions rightmost, the opposite scan order of the library engine,
// and there is no canonical-form memo table.
// ---------------------------------------------------------------------------

inline std::map<PBWMonomial, Rational> free_straighten(const LieAlgebraData& g, const Rational& k, Word start) {
    std::map<PBWMonomial, Rational> out;

    auto key = [&](const ModeOp& op) {
        auto [cls, idx] = gen_of_basis(g, op.basis);
        return std::tuple<int, int, int>{cls, idx, -op.mode};
    };
    using Measure = std::tuple<long, long, long>;
    auto measure = [&](const Word& w) -> Measure {
        long disp = 0, inversions = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i].mode >= 0) disp += static_cast<long>(w.size() - 1 - i);
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j)
                if (key(w[i]) > key(w[j])) ++inversions;
        return {static_cast<long>(w.size()), disp, inversions};
    };

    std::map<std::pair<Measure, Word>, Rational, std::greater<>> work;
    auto push = [&](Word w, const Rational& c) {
        if (is_zero(c)) return;
        std::pair<Measure, Word> mk{measure(w), std::move(w)};
        auto [it, inserted] = work.emplace(std::move(mk), c);
        if (!inserted) {
            it->second += c;
            if (is_zero(it->second)) work.erase(it);
        }
    };
    push(std::move(start), Rational(1));

    while (!work.empty()) {
        auto node = work.extract(work.begin());
        const Word w = std::move(node.key().second);
        const Rational c = std::move(node.mapped());
        const std::size_t n = w.size();

        std::size_t pos = n;
        bool has_annihilator = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (w[i].mode < 0) continue;
            has_annihilator = true;
            if (i + 1 < n && w[i + 1].mode < 0) {
                pos = i;  // leftmost annihilator with a creation operator to its right
                break;
            }
        }
        if (has_annihilator && pos == n) continue;  // annihilator suffix kills the vacuum
        if (!has_annihilator) {
            for (std::size_t i = n; i-- > 1;)
                if (key(w[i - 1]) > key(w[i])) {
                    pos = i - 1;
                    break;
                }
        }
        if (pos == n) {
            std::vector<Factor> fs;
            for (const auto& op : w) {
                auto [cls, idx] = gen_of_basis(g, op.basis);
                fs.push_back({cls, idx, op.mode, 1});
            }
            PBWMonomial m = PBWMonomial::from_factors(std::move(fs));
            auto it = out.find(m);
            if (it == out.end()) out.emplace(std::move(m), c);
            else {
                it->second += c;
                if (is_zero(it->second)) out.erase(it);
            }
            continue;
        }

        const ModeOp a = w[pos], b = w[pos + 1];
        Word swapped = w;
        std::swap(swapped[pos], swapped[pos + 1]);
        push(std::move(swapped), c);
        for (const auto& [basis, coeff] : g.bracket_basis(a.basis, b.basis)) {
            Word shorter(w.begin(), w.begin() + static_cast<long>(pos));
            shorter.push_back({basis, a.mode + b.mode});
            shorter.insert(shorter.end(), w.begin() + static_cast<long>(pos) + 2, w.end());
            push(std::move(shorter), c * coeff);
        }
        if (a.mode + b.mode == 0 && a.mode != 0) {
            const Rational pairing = g.form_basis(a.basis, b.basis);
            if (!is_zero(pairing)) {
                Word shorter(w.begin(), w.begin() + static_cast<long>(pos));
                shorter.insert(shorter.end(), w.begin() + static_cast<long>(pos) + 2, w.end());
                push(std::move(shorter), c * Rational(a.mode) * pairing * k);
            }
        }
    }
    return out;
}

inline VAVector oracle_normal_order(const LieAlgebraData& g, const Rational& k, const Word& w) {
    VAVector v = VAVector::zero(k);
    v.terms = free_straighten(g, k, w);
    return v;
}

inline VAVector oracle_act(const LieAlgebraData& g, int basis, int mode, const VAVector& v) {
    VAVector out = VAVector::zero(v.k);
    for (const auto& [z, c] : v.terms) {
        Word w;
        w.push_back({basis, mode});
        for (const auto& f : z.factors)
            for (int i = 0; i < f.exp; ++i) w.push_back({basis_of_gen(g, f.cls, f.idx), f.mode});
        for (const auto& [m, cc] : free_straighten(g, v.k, w)) out.add_term(m, c * cc);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Colored partition count: coefficient of q^delta in prod_n (1 - q^n)^{-d}.
// ---------------------------------------------------------------------------

inline unsigned long long binomial(long n, long r) {
    if (r < 0 || r > n) return 0;
    unsigned long long out = 1;
    for (long i = 1; i <= r; ++i) out = out * static_cast<unsigned long long>(n - r + i) / static_cast<unsigned long long>(i);
    return out;
}

inline unsigned long long colored_partition_count(long colors, long delta) {
    std::vector<unsigned long long> dp(static_cast<std::size_t>(delta) + 1, 0);
    dp[0] = 1;
    for (long n = 1; n <= delta; ++n) {
        std::vector<unsigned long long> next(dp.size(), 0);
        for (long s = 0; s <= delta; ++s) {
            if (dp[static_cast<std::size_t>(s)] == 0) continue;
            for (long j = 0; s + n * j <= delta; ++j)
                next[static_cast<std::size_t>(s + n * j)] +=
                    dp[static_cast<std::size_t>(s)] * binomial(colors + j - 1, j);
        }
        dp = std::move(next);
    }
    return dp[static_cast<std::size_t>(delta)];
}

// ---------------------------------------------------------------------------
// Dense null-space oracle over the full degree slice. Monomials are
// enumerated by a multiset recursion over (generator, mode) atoms in basis
// order (Cartan generators first), the action uses the free-algebra
// rewriter, and the kernel comes from dense rational Gauss-Jordan.
// ---------------------------------------------------------------------------

inline std::vector<PBWMonomial> oracle_degree_basis(const LieAlgebraData& g, long delta) {
    std::vector<PBWMonomial> out;
    std::vector<Factor> acc;
    // atoms (basis index b, mode n) ordered by (b, n)
    auto rec = [&](auto&& self, int min_b, int min_n, long remaining) -> void {
        if (remaining == 0) {
            out.push_back(PBWMonomial::from_factors(acc));
            return;
        }
        for (int b = min_b; b < g.dim; ++b) {
            const long start = b == min_b ? min_n : 1;
            for (long n = start; n <= remaining; ++n) {
                auto [cls, idx] = gen_of_basis(g, b);
                acc.push_back({cls, idx, static_cast<int>(-n), 1});
                self(self, b, static_cast<int>(n), remaining - n);
                acc.pop_back();
            }
        }
    };
    rec(rec, 0, 1, delta);
    return out;
}

inline std::vector<VAVector> dense_singular_oracle(const LieAlgebraData& g, const Rational& k, long delta) {
    const std::vector<PBWMonomial> basis = oracle_degree_basis(g, delta);
    const long ncols = static_cast<long>(basis.size());

    std::vector<std::pair<int, int>> ops;
    for (int j = 0; j < g.num_positive(); ++j) ops.emplace_back(g.e_index(j), 0);
    ops.emplace_back(g.f_index(g.theta_index), 1);

    std::vector<QVec> rows;
    for (const auto& [op, mode] : ops) {
        std::map<PBWMonomial, long> row_index;
        std::vector<QVec> block;
        for (long col = 0; col < ncols; ++col) {
            VAVector mono = VAVector::zero(k);
            mono.add_term(basis[static_cast<std::size_t>(col)], Rational(1));
            const VAVector image = oracle_act(g, op, mode, mono);
            for (const auto& [m, c] : image.terms) {
                auto it = row_index.find(m);
                if (it == row_index.end()) {
                    it = row_index.emplace(m, static_cast<long>(block.size())).first;
                    block.emplace_back(static_cast<std::size_t>(ncols), Rational(0));
                }
                block[static_cast<std::size_t>(it->second)][static_cast<std::size_t>(col)] = c;
            }
        }
        for (auto& r : block) rows.push_back(std::move(r));
    }

    // dense Gauss-Jordan
    const std::size_t m = rows.size();
    std::vector<long> pivot_of_col(static_cast<std::size_t>(ncols), -1);
    std::size_t rank = 0;
    for (long col = 0; col < ncols && rank < m; ++col) {
        std::size_t piv = rank;
        while (piv < m && is_zero(rows[piv][static_cast<std::size_t>(col)])) ++piv;
        if (piv == m) continue;
        std::swap(rows[piv], rows[rank]);
        const Rational d = rows[rank][static_cast<std::size_t>(col)];
        for (long j = 0; j < ncols; ++j) rows[rank][static_cast<std::size_t>(j)] /= d;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == rank || is_zero(rows[r][static_cast<std::size_t>(col)])) continue;
            const Rational f = rows[r][static_cast<std::size_t>(col)];
            for (long j = 0; j < ncols; ++j) rows[r][static_cast<std::size_t>(j)] -= f * rows[rank][static_cast<std::size_t>(j)];
        }
        pivot_of_col[static_cast<std::size_t>(col)] = static_cast<long>(rank);
        ++rank;
    }

    std::vector<VAVector> kernel;
    for (long fc = 0; fc < ncols; ++fc) {
        if (pivot_of_col[static_cast<std::size_t>(fc)] >= 0) continue;
        VAVector v = VAVector::zero(k);
        v.add_term(basis[static_cast<std::size_t>(fc)], Rational(1));
        for (long col = 0; col < ncols; ++col) {
            const long pr = pivot_of_col[static_cast<std::size_t>(col)];
            if (pr < 0) continue;
            const Rational& entry = rows[static_cast<std::size_t>(pr)][static_cast<std::size_t>(fc)];
            if (!is_zero(entry)) v.add_term(basis[static_cast<std::size_t>(col)], -entry);
        }
        kernel.push_back(std::move(v));
    }
    return kernel;
}

// exact span membership over the union of monomial supports
inline bool in_span(const std::vector<VAVector>& basis, const VAVector& v) {
    std::map<PBWMonomial, std::size_t> rows;
    auto row_of = [&](const PBWMonomial& m) {
        auto it = rows.find(m);
        if (it == rows.end()) it = rows.emplace(m, rows.size()).first;
        return it->second;
    };
    for (const auto& b : basis)
        for (const auto& [m, c] : b.terms) row_of(m);
    for (const auto& [m, c] : v.terms) row_of(m);
    QMat a(rows.size(), QVec(basis.size(), Rational(0)));
    QVec rhs(rows.size(), Rational(0));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (const auto& [m, c] : basis[j].terms) a[row_of(m)][j] = c;
    for (const auto& [m, c] : v.terms) rhs[row_of(m)] = c;
    return q_solve(std::move(a), std::move(rhs)).has_value();
}

inline bool same_span(const std::vector<VAVector>& a, const std::vector<VAVector>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& v : a)
        if (!in_span(b, v)) return false;
    for (const auto& v : b)
        if (!in_span(a, v)) return false;
    return true;
}

}  // namespace voa::testing
