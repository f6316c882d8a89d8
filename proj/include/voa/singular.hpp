#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "grpoisson.hpp"
#include "linalg.hpp"
#include "sugawara.hpp"

namespace voa {

// ---------------------------------------------------------------------------
// Graded weight spaces of V^k(g) and exact singular-vector search.
// ---------------------------------------------------------------------------

struct WeightSpaceBasis {
    AlgebraSpec spec;
    Rational k;
    long delta = 0;
    std::optional<std::vector<long>> weight;
    std::vector<PBWMonomial> monomials;  // deterministic order
    std::map<PBWMonomial, long> index;
};

namespace detail {

// multisets of (mode n >= 1, exp >= 1) with sum n*exp == s, parts increasing
inline void mode_partitions(long s, long min_mode, std::vector<std::pair<int, int>>& cur,
                            std::vector<std::vector<std::pair<int, int>>>& out) {
    if (s == 0) {
        out.push_back(cur);
        return;
    }
    for (long n = min_mode; n <= s; ++n)
        for (long e = 1; n * e <= s; ++e) {
            cur.emplace_back(static_cast<int>(n), static_cast<int>(e));
            mode_partitions(s - n * e, n + 1, cur, out);
            cur.pop_back();
        }
}

}  // namespace detail

inline WeightSpaceBasis weight_space_basis(const LieAlgebraData& g, const Rational& k, long delta,
                                           std::optional<std::vector<long>> weight = std::nullopt) {
    if (delta < 0) throw std::invalid_argument("weight_space_basis requires delta >= 0");
    WeightSpaceBasis out;
    out.spec = g.spec;
    out.k = k;
    out.delta = delta;
    out.weight = weight;

    // generators in canonical block order
    std::vector<std::pair<int, int>> gens;
    for (int j = 0; j < g.num_positive(); ++j) gens.emplace_back(GEN_E, j);
    for (int j = 0; j < g.num_positive(); ++j) gens.emplace_back(GEN_F, j);
    for (int a = 0; a < g.rank; ++a) gens.emplace_back(GEN_H, a);

    std::vector<std::vector<std::vector<std::pair<int, int>>>> parts(static_cast<std::size_t>(delta) + 1);
    for (long s = 0; s <= delta; ++s) {
        std::vector<std::pair<int, int>> cur;
        detail::mode_partitions(s, 1, cur, parts[static_cast<std::size_t>(s)]);
    }

    std::vector<Factor> acc;
    auto emit = [&]() {
        PBWMonomial m = PBWMonomial::from_factors(acc);
        if (weight && m.weight(g) != *weight) return;
        out.monomials.push_back(std::move(m));
    };
    auto rec = [&](auto&& self, std::size_t gi, long remaining) -> void {
        if (gi == gens.size()) {
            if (remaining == 0) emit();
            return;
        }
        const auto [cls, idx] = gens[gi];
        for (long s = 0; s <= remaining; ++s)
            for (const auto& part : parts[static_cast<std::size_t>(s)]) {
                const std::size_t base = acc.size();
                for (const auto& [n, e] : part) acc.push_back({cls, idx, -n, e});
                self(self, gi + 1, remaining - s);
                acc.resize(base);
            }
    };
    rec(rec, 0, delta);

    std::sort(out.monomials.begin(), out.monomials.end());
    for (long i = 0; i < static_cast<long>(out.monomials.size()); ++i)
        out.index.emplace(out.monomials[static_cast<std::size_t>(i)], i);
    return out;
}

// indices of the simple positive roots (heights are sorted, so these lead)
inline std::vector<int> simple_root_indices(const LieAlgebraData& g) {
    std::vector<int> out;
    for (int j = 0; j < g.num_positive(); ++j)
        if (g.heights[static_cast<std::size_t>(j)] == 1) out.push_back(j);
    return out;
}

// singular vector test: e_alpha(0) v = 0 for all alpha in Delta_+ and
// f_theta(1) v = 0
inline bool is_singular(const LieAlgebraData& g, const VAVector& v) {
    if (v.is_zero()) throw std::invalid_argument("is_singular on the zero vector");
    Straightener s(g, v.k);
    for (int j = 0; j < g.num_positive(); ++j)
        if (!s.act(g.e_index(j), 0, v).is_zero()) return false;
    return s.act(g.f_index(g.theta_index), 1, v).is_zero();
}

// graded-side analogue on S(t^{-1}g[t^{-1}])
inline bool is_gt_singular(const LieAlgebraData& g, const PolyElement& p) {
    if (p.is_zero()) throw std::invalid_argument("is_gt_singular on the zero element");
    for (int j = 0; j < g.num_positive(); ++j)
        if (!gt_act(g, g.e_index(j), 0, p).is_zero()) return false;
    return gt_act(g, g.f_index(g.theta_index), 1, p).is_zero();
}

struct SingularVectorInfo {
    VAVector v;
    long min_depth = 0;
    PolyElement zhu_image;
    bool zhu_nonzero = false;
};

struct SingularReport {
    AlgebraSpec spec;
    Rational k;
    long delta = 0;
    long kernel_dim = 0;
    std::vector<SingularVectorInfo> vectors;
};

// Stack the matrices of e_{alpha_i}(0) for simple alpha_i and of f_theta(1)
// on the degree-delta slice and compute the exact kernel. Every kernel vector
// is cross-checked against the full positive-root singularity test.
inline SingularReport find_singular_at(const LieAlgebraData& g, const Rational& k, long delta,
                                       std::optional<std::vector<long>> weight = std::nullopt) {
    SingularReport rep;
    rep.spec = g.spec;
    rep.k = k;
    rep.delta = delta;

    WeightSpaceBasis basis = weight_space_basis(g, k, delta, weight);
    const long ncols = static_cast<long>(basis.monomials.size());
    if (ncols == 0) return rep;

    std::vector<std::pair<int, int>> ops;  // (basis index, mode)
    for (int j : simple_root_indices(g)) ops.emplace_back(g.e_index(j), 0);
    ops.emplace_back(g.f_index(g.theta_index), 1);

    Straightener str(g, k);
    SparseRowMatrix mat(ncols);
    for (const auto& [op_basis, mode] : ops) {
        WeightSpaceBasis target = weight_space_basis(g, k, delta - mode);
        std::vector<std::map<long, Rational>> rows(target.monomials.size());
        for (long col = 0; col < ncols; ++col) {
            VAVector mono = VAVector::zero(k);
            mono.add_term(basis.monomials[static_cast<std::size_t>(col)], Rational(1));
            VAVector image = str.act(op_basis, mode, mono);
            for (const auto& [m, c] : image.terms) {
                auto it = target.index.find(m);
                if (it == target.index.end()) throw std::logic_error("image monomial outside target slice");
                rows[static_cast<std::size_t>(it->second)][col] = c;
            }
        }
        for (const auto& row : rows)
            if (!row.empty()) mat.add_row(row);
    }

    const auto kernel = mat.kernel_basis();
    rep.kernel_dim = static_cast<long>(kernel.size());
    for (const auto& coords : kernel) {
        SingularVectorInfo info;
        info.v = VAVector::zero(k);
        for (long c = 0; c < ncols; ++c)
            info.v.add_term(basis.monomials[static_cast<std::size_t>(c)], coords[static_cast<std::size_t>(c)]);
        if (!is_singular(g, info.v)) throw std::logic_error("kernel vector fails the full singularity test");
        info.min_depth = info.v.min_depth();
        info.zhu_image = zhu_project(info.v);
        info.zhu_nonzero = !info.zhu_image.is_zero();
        rep.vectors.push_back(std::move(info));
    }
    return rep;
}

inline std::vector<SingularReport> find_singular(const LieAlgebraData& g, const Rational& k, long delta_max,
                                                 std::optional<std::vector<long>> weight = std::nullopt) {
    if (delta_max < 1) throw std::invalid_argument("find_singular requires delta_max >= 1");
    std::vector<SingularReport> out;
    for (long delta = 1; delta <= delta_max; ++delta) out.push_back(find_singular_at(g, k, delta, weight));
    return out;
}

inline long default_delta_max(const LieAlgebraData& g) {
    if (g.rank == 1) return 6;
    if (g.rank == 2) return 4;
    return 3;
}

// ---------------------------------------------------------------------------
// Level classification.
// ---------------------------------------------------------------------------

// V^k(g) is not simple iff r_vee (k + h_vee) lies in Q_{>=0} \ {1/m}.
inline bool gorelik_kac_not_simple(const LieAlgebraData& g, const Rational& k) {
    const Rational v = Rational(g.lacing) * (k + Rational(g.dual_coxeter));
    if (sgn(v) < 0) return false;
    return v.get_num() != 1;
}

// k + h_vee = p/q in lowest terms with p,q >= 1 and p >= h_vee (if
// gcd(r_vee, q) = 1) or p >= h (otherwise).
inline bool is_admissible(const LieAlgebraData& g, const Rational& k) {
    const Rational t = k + Rational(g.dual_coxeter);
    if (sgn(t) <= 0) return false;
    const Integer& p = t.get_num();
    const Integer& q = t.get_den();
    Integer r(g.lacing), c;
    mpz_gcd(c.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
    const Integer bound(c == 1 ? g.dual_coxeter : g.coxeter);
    return p >= bound;
}

// ---------------------------------------------------------------------------
// Zhu-image nonvanishing: away from the critical level, every singular
// vector found up to delta_max must have minimal depth 0, i.e. a nonzero
// image in the Zhu C2-algebra.
// ---------------------------------------------------------------------------

struct ZhuImageVerdict {
    bool pass = true;
    std::vector<SingularReport> reports;
    std::optional<VAVector> counterexample;
};

inline ZhuImageVerdict verify_zhu_nonvanishing(const LieAlgebraData& g, const Rational& k, long delta_max) {
    if (k == critical_level(g))
        throw critical_level_error("critical level: see the critical counterexample instead");
    ZhuImageVerdict verdict;
    verdict.reports = find_singular(g, k, delta_max);
    for (const auto& rep : verdict.reports)
        for (const auto& info : rep.vectors)
            if (info.min_depth != 0) {
                verdict.pass = false;
                if (!verdict.counterexample) verdict.counterexample = info.v;
            }
    return verdict;
}

// ---------------------------------------------------------------------------
// Critical level k = -h_vee: the Sugawara vector S is singular of depth 0,
// while T S is singular of positive depth with vanishing Zhu image; on the
// graded side the same happens for the translates of the quadratic invariant.
// ---------------------------------------------------------------------------

struct CriticalGradedWitness {
    long j = 0;
    long depth = 0;
    bool gt_singular = false;
    bool zhu_zero = false;
};

struct CriticalReport {
    Rational k;
    VAVector S;
    bool S_singular = false;
    long S_depth = 0;
    PolyElement S_zhu;
    VAVector TS;
    bool TS_singular = false;
    long TS_depth = 0;
    PolyElement TS_zhu;
    std::vector<CriticalGradedWitness> graded;
};

inline CriticalReport critical_counterexample(const LieAlgebraData& g, long j_max = 4) {
    CriticalReport rep;
    rep.k = critical_level(g);
    rep.S = sugawara_vector(g, rep.k);
    rep.S_singular = is_singular(g, rep.S);
    rep.S_depth = rep.S.min_depth();
    rep.S_zhu = zhu_project(rep.S);
    rep.TS = translate(rep.S);
    rep.TS_singular = is_singular(g, rep.TS);
    rep.TS_depth = rep.TS.min_depth();
    rep.TS_zhu = zhu_project(rep.TS);

    PolyElement p = quadratic_casimir(g);
    for (long j = 0; j <= j_max; ++j) {
        CriticalGradedWitness w;
        w.j = j;
        w.depth = p.min_depth();
        w.gt_singular = is_gt_singular(g, p);
        w.zhu_zero = zhu_project(p).is_zero();
        rep.graded.push_back(w);
        p = translate(p);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Structural checks on singular vectors and on the shape of Ltilde_{-1}
// images, used by the property suites.
// ---------------------------------------------------------------------------

// Among the minimal-depth monomials of w with maximal deg^(0)_{-1}, the
// minus block is trivial.
inline bool symbol_extremal_minus_trivial(const VAVector& w) {
    const PolyElement sym = symbol(w);
    long dmax = 0;
    for (const auto& [m, c] : sym.terms) dmax = std::max(dmax, m.deg0m1());
    for (const auto& [m, c] : sym.terms)
        if (m.deg0m1() == dmax && m.block_degree(GEN_F) != 0) return false;
    return true;
}

// Extremal monomials of w: among those with trivial minus block, take the
// ones maximizing deg^(0)_{-1}, then the ones maximizing the plus-block
// degree.
inline std::vector<PBWMonomial> extremal_monomials(const VAVector& w) {
    std::vector<PBWMonomial> j1;
    for (const auto& [m, c] : w.terms)
        if (m.block_degree(GEN_F) == 0) j1.push_back(m);
    if (j1.empty()) return {};
    long d01 = 0;
    for (const auto& m : j1) d01 = std::max(d01, m.deg0m1());
    long dplus = 0;
    for (const auto& m : j1)
        if (m.deg0m1() == d01) dplus = std::max(dplus, m.block_degree(GEN_E));
    std::vector<PBWMonomial> out;
    for (const auto& m : j1)
        if (m.deg0m1() == d01 && m.block_degree(GEN_E) == dplus) out.push_back(m);
    return out;
}

// extremal monomials of a singular vector have depth-0 plus block and total
// depth 0
inline bool extremal_monomials_depth_zero(const VAVector& w) {
    for (const auto& m : extremal_monomials(w))
        if (m.block_depth(GEN_E) != 0 || m.depth() != 0) return false;
    return true;
}

// Shape conditions (a)-(d) on the PBW monomials of Ltilde_{-1} z.
inline bool ltilde_shape_check(SugawaraContext& ctx, const PBWMonomial& z) {
    VAVector vz = VAVector::zero(ctx.level());
    vz.add_term(z, Rational(1));
    const VAVector image = ctx.Ltilde_minus1(vz);
    const PBWMonomial zminus = z.block(GEN_F);
    const PBWMonomial zzero = z.block(GEN_H);
    const long dplus = z.block_degree(GEN_E);
    const long dzero = z.block_degree(GEN_H);
    for (const auto& [x, c] : image.terms) {
        const PBWMonomial xminus = x.block(GEN_F);
        const PBWMonomial xzero = x.block(GEN_H);
        if (x.block_degree(GEN_E) > dplus + 1 || x.block_degree(GEN_H) > dzero + 1) return false;  // (a)
        if (!zminus.is_one() && xminus.is_one()) return false;                                     // (b)
        if (xminus == zminus && !(x.block_degree(GEN_H) == dzero + 1 || xzero == zzero)) return false;  // (c)
        if (x.block_degree(GEN_H) == dzero + 1 &&
            !(xminus == zminus && x.block_degree(GEN_E) <= dplus))
            return false;  // (d)
    }
    return true;
}

// Case classification (1)-(4) for z with trivial minus block and depth-0 plus
// block.
inline bool ltilde_case_check(SugawaraContext& ctx, const PBWMonomial& z) {
    if (z.block_degree(GEN_F) != 0 || z.block_depth(GEN_E) != 0)
        throw std::invalid_argument("ltilde_case_check: monomial not of the stated shape");
    VAVector vz = VAVector::zero(ctx.level());
    vz.add_term(z, Rational(1));
    const VAVector image = ctx.Ltilde_minus1(vz);
    const PBWMonomial zzero = z.block(GEN_H);
    const long dplus = z.block_degree(GEN_E);
    const long dzero = z.block_degree(GEN_H);
    const long d01 = z.deg0m1();
    for (const auto& [y, c] : image.terms) {
        if (y.block_degree(GEN_F) != 0) continue;  // (4)
        const bool case1 = y.block_depth(GEN_E) >= 1 && y.block_degree(GEN_E) <= dplus && y.block(GEN_H) == zzero;
        const bool case2 = y.block_depth(GEN_E) == 0 && y.block_degree(GEN_E) <= dplus - 1 &&
                           y.block_degree(GEN_H) > dzero && y.deg0m1() == d01;
        const bool case3 = y.block_depth(GEN_E) >= 1 && y.block_degree(GEN_E) <= dplus - 1 && y.deg0m1() == d01 + 1;
        if (!case1 && !case2 && !case3) return false;
    }
    return true;
}

// Leading-term formula: for z with trivial minus block,
//   Ltilde_{-1} z = (k+h_vee)^{-1} z^(+) t_delta(-1) z^(0) + y^1,
// delta = gamma - sum_j a_{j,1} beta_j, with y^1 constrained as stated.
inline bool ltilde_leading_term_check(SugawaraContext& ctx, const PBWMonomial& z) {
    if (z.block_degree(GEN_F) != 0)
        throw std::invalid_argument("ltilde_leading_term_check: monomial has nontrivial minus block");
    const LieAlgebraData& g = ctx.algebra();
    VAVector vz = VAVector::zero(ctx.level());
    vz.add_term(z, Rational(1));
    VAVector residual = ctx.Ltilde_minus1(vz);

    std::vector<long> delta(static_cast<std::size_t>(g.rank), 0);
    for (const auto& f : z.factors) {
        if (f.cls != GEN_E || f.mode == -1) continue;
        const auto& beta = g.positive_roots[static_cast<std::size_t>(f.idx)];
        for (int a = 0; a < g.rank; ++a) delta[static_cast<std::size_t>(a)] += f.exp * beta[static_cast<std::size_t>(a)];
    }
    const Element tdelta = g.cartan_dual_of_weight(delta);
    const Rational scale = Rational(1) / (ctx.level() + Rational(g.dual_coxeter));
    for (const auto& [a, c] : tdelta) {
        std::vector<Factor> fs = z.factors;
        fs.push_back({GEN_H, a, -1, 1});
        residual.add_term(PBWMonomial::from_factors(std::move(fs)), -scale * c);
    }

    const long d01 = z.deg0m1();
    const long dplus = z.block_degree(GEN_E);
    for (const auto& [y, c] : residual.terms) {
        const bool classA = y.deg0m1() == d01 + 1 && y.block_degree(GEN_E) <= dplus - 1;
        const bool classB = y.deg0m1() <= d01;
        if (!classA && !classB) return false;
    }
    return true;
}

}  // namespace voa
