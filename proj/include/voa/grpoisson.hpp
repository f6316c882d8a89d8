#pragma once

#include <stdexcept>
#include <string>

#include "pbw.hpp"

namespace voa {

// ---------------------------------------------------------------------------
// The commutative side S(t^{-1} g[t^{-1}]) = gr V^k(g). Monomials share the
// canonical factor representation with the PBW side; here the order carries
// no algebraic meaning and products just merge factor multisets.
// ---------------------------------------------------------------------------

using PolyMonomial = PBWMonomial;

struct PolyElement {
    std::map<PolyMonomial, Rational> terms;

    static PolyElement zero() { return {}; }
    static PolyElement unit() {
        PolyElement p;
        p.terms.emplace(PolyMonomial::one(), Rational(1));
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const PolyMonomial& m, const Rational& c) {
        if (voa::is_zero(c)) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (voa::is_zero(it->second)) terms.erase(it);
        }
    }

    PolyElement& operator+=(const PolyElement& o) {
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }

    PolyElement& operator-=(const PolyElement& o) {
        for (const auto& [m, c] : o.terms) add_term(m, -c);
        return *this;
    }

    PolyElement& operator*=(const Rational& c) {
        if (voa::is_zero(c)) {
            terms.clear();
            return *this;
        }
        for (auto& [m, v] : terms) v *= c;
        return *this;
    }

    friend PolyElement operator+(PolyElement a, const PolyElement& b) { return a += b; }
    friend PolyElement operator-(PolyElement a, const PolyElement& b) { return a -= b; }
    friend PolyElement operator*(const Rational& c, PolyElement p) { return p *= c; }

    bool operator==(const PolyElement& o) const { return terms == o.terms; }

    long min_depth() const {
        if (terms.empty()) throw std::invalid_argument("min_depth of zero element");
        long d = terms.begin()->first.depth();
        for (const auto& [m, c] : terms) d = std::min(d, m.depth());
        return d;
    }

    std::string to_string() const {
        if (terms.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms) {
            const Rational mag = abs(c);
            if (first)
                out += sgn(c) < 0 ? "-" : "";
            else
                out += sgn(c) < 0 ? " - " : " + ";
            first = false;
            if (mag != Rational(1)) out += rat_string(mag) + " * ";
            out += m.to_string();
        }
        return out;
    }
};

inline PolyMonomial poly_mul(const PolyMonomial& a, const PolyMonomial& b) {
    std::vector<Factor> fs = a.factors;
    fs.insert(fs.end(), b.factors.begin(), b.factors.end());
    return PolyMonomial::from_factors(std::move(fs));
}

inline PolyElement poly_mul(const PolyElement& a, const PolyElement& b) {
    PolyElement out;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) out.add_term(poly_mul(ma, mb), ca * cb);
    return out;
}

// ---------------------------------------------------------------------------
// g[t]-action on S(t^{-1}g[t^{-1}]): x(m) for m >= 0 acts as the derivation
// replacing a factor y(-n) with [x,y](m-n) when n - m > 0 and killing 1.
// ---------------------------------------------------------------------------

inline PolyElement gt_act(const LieAlgebraData& g, int basis, long m, const PolyElement& p) {
    if (m < 0) throw std::invalid_argument("gt_act requires mode m >= 0; negative modes multiply instead");
    PolyElement out;
    for (const auto& [z, c] : p.terms) {
        for (std::size_t i = 0; i < z.factors.size(); ++i) {
            const Factor& f = z.factors[i];
            const long n = -f.mode;
            if (n - m <= 0) continue;
            const Element& br = g.bracket_basis(basis, basis_of_gen(g, f.cls, f.idx));
            if (br.empty()) continue;
            std::vector<Factor> base = z.factors;
            if (base[i].exp == 1)
                base.erase(base.begin() + static_cast<long>(i));
            else
                base[i].exp -= 1;
            for (const auto& [b, coeff] : br) {
                auto [cls, idx] = gen_of_basis(g, b);
                std::vector<Factor> fs = base;
                fs.push_back({cls, idx, static_cast<int>(m - n), 1});
                out.add_term(PolyMonomial::from_factors(std::move(fs)), c * Rational(f.exp) * coeff);
            }
        }
    }
    return out;
}

inline PolyElement gt_act(const LieAlgebraData& g, const Element& x, long m, const PolyElement& p) {
    PolyElement out;
    for (const auto& [b, c] : x) {
        PolyElement part = gt_act(g, b, m, p);
        part *= c;
        out += part;
    }
    return out;
}

// T on the graded side: x(-n) -> n x(-n-1).
inline PolyElement translate(const PolyElement& p) {
    PolyElement out;
    for (const auto& [z, c] : p.terms) {
        for (std::size_t i = 0; i < z.factors.size(); ++i) {
            const Factor& f = z.factors[i];
            std::vector<Factor> fs = z.factors;
            if (fs[i].exp == 1)
                fs.erase(fs.begin() + static_cast<long>(i));
            else
                fs[i].exp -= 1;
            fs.push_back({f.cls, f.idx, f.mode - 1, 1});
            out.add_term(PolyMonomial::from_factors(std::move(fs)), c * Rational(f.exp) * Rational(-f.mode));
        }
    }
    return out;
}

// Principal symbol: the minimal-depth part of v, viewed in gr V^k(g).
inline PolyElement symbol(const VAVector& v) {
    if (v.is_zero()) throw std::invalid_argument("symbol of the zero vector");
    const long p = v.min_depth();
    PolyElement out;
    for (const auto& [m, c] : v.terms)
        if (m.depth() == p) out.add_term(m, c);
    return out;
}

// Zhu C2 projection onto C[g*]: kills every monomial containing a factor of
// mode <= -2; survivors are polynomials in g via x(-1) -> x.
inline PolyElement zhu_project(const PolyElement& p) {
    PolyElement out;
    for (const auto& [m, c] : p.terms)
        if (m.depth() == 0) out.add_term(m, c);
    return out;
}

inline PolyElement zhu_project(const VAVector& v) {
    PolyElement out;
    for (const auto& [m, c] : v.terms)
        if (m.depth() == 0) out.add_term(m, c);
    return out;
}

// The quadratic invariant p_1 = 1/2 sum_i x_i(-1) x^i(-1) in S(t^{-1}g[t^{-1}]).
inline PolyElement quadratic_casimir(const LieAlgebraData& g) {
    PolyElement out;
    for (int a = 0; a < g.rank; ++a)
        for (int b = 0; b < g.rank; ++b) {
            const Rational& c = g.gram_inv[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (is_zero(c)) continue;
            out.add_term(PolyMonomial::from_factors({{GEN_H, a, -1, 1}, {GEN_H, b, -1, 1}}), c / 2);
        }
    for (int j = 0; j < g.num_positive(); ++j)
        out.add_term(PolyMonomial::from_factors({{GEN_E, j, -1, 1}, {GEN_F, j, -1, 1}}), Rational(1));
    return out;
}

// Depth-0 elements printed as polynomials on g*, e.g. "e[1]^2".
inline std::string gstar_string(const PolyElement& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms) {
        if (m.depth() != 0) throw std::invalid_argument("gstar_string: element not supported on mode -1");
        const Rational mag = abs(c);
        if (first)
            out += sgn(c) < 0 ? "-" : "";
        else
            out += sgn(c) < 0 ? " - " : " + ";
        first = false;
        if (mag != Rational(1)) out += rat_string(mag) + " * ";
        if (m.is_one()) {
            out += "1";
            continue;
        }
        bool inner_first = true;
        for (const auto& f : m.factors) {
            if (!inner_first) out += "*";
            inner_first = false;
            out += f.cls == GEN_E ? "e" : (f.cls == GEN_F ? "f" : "h");
            out += "[" + std::to_string(f.idx + 1) + "]";
            if (f.exp > 1) out += "^" + std::to_string(f.exp);
        }
    }
    return out;
}

inline PolyElement parse_poly_element(std::string_view s, const LieAlgebraData& g) {
    PolyElement p;
    for (auto& t : detail::parse_terms(s, g)) p.add_term(PolyMonomial::from_factors(std::move(t.factors)), t.coeff);
    return p;
}

}  // namespace voa
