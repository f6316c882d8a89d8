#pragma once

#include <compare>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "rootsys.hpp"

namespace voa {

// ---------------------------------------------------------------------------
// PBW monomials z = z^(+) z^(-) z^(0) 1: e-block, then f-block, then Cartan
// block; within a block factors are sorted by generator index and then by
// increasing |mode|. All modes are strictly negative.
// ---------------------------------------------------------------------------

enum GenClass : int { GEN_E = 0, GEN_F = 1, GEN_H = 2 };

struct Factor {
    int cls = GEN_E;  // block
    int idx = 0;      // 0-based positive-root index (e/f) or Cartan index (h)
    int mode = -1;    // < 0
    int exp = 1;      // >= 1

    std::tuple<int, int, int> key() const { return {cls, idx, -mode}; }
    auto operator<=>(const Factor&) const = default;
};

struct PBWMonomial {
    std::vector<Factor> factors;  // sorted by key(), exponents merged

    static PBWMonomial one() { return {}; }

    static PBWMonomial from_factors(std::vector<Factor> fs) {
        for (const auto& f : fs) {
            if (f.mode >= 0) throw std::invalid_argument("PBW factor with nonnegative mode");
            if (f.exp < 1) throw std::invalid_argument("PBW factor with exponent < 1");
        }
        std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) { return a.key() < b.key(); });
        PBWMonomial m;
        for (const auto& f : fs) {
            if (!m.factors.empty() && m.factors.back().key() == f.key())
                m.factors.back().exp += f.exp;
            else
                m.factors.push_back(f);
        }
        return m;
    }

    bool is_one() const { return factors.empty(); }

    long degree() const {
        long d = 0;
        for (const auto& f : factors) d += static_cast<long>(f.exp) * (-f.mode);
        return d;
    }

    long depth() const {
        long d = 0;
        for (const auto& f : factors) d += static_cast<long>(f.exp) * (-f.mode - 1);
        return d;
    }

    long deg0m1() const {
        long d = 0;
        for (const auto& f : factors)
            if (f.cls == GEN_H && f.mode == -1) d += f.exp;
        return d;
    }

    long block_degree(int cls) const {
        long d = 0;
        for (const auto& f : factors)
            if (f.cls == cls) d += f.exp;
        return d;
    }

    long block_depth(int cls) const {
        long d = 0;
        for (const auto& f : factors)
            if (f.cls == cls) d += static_cast<long>(f.exp) * (-f.mode - 1);
        return d;
    }

    PBWMonomial block(int cls) const {
        PBWMonomial m;
        for (const auto& f : factors)
            if (f.cls == cls) m.factors.push_back(f);
        return m;
    }

    std::vector<long> weight(const LieAlgebraData& g) const {
        std::vector<long> w(static_cast<std::size_t>(g.rank), 0);
        for (const auto& f : factors) {
            if (f.cls == GEN_H) continue;
            const long s = f.cls == GEN_E ? f.exp : -f.exp;
            const auto& beta = g.positive_roots[static_cast<std::size_t>(f.idx)];
            for (int a = 0; a < g.rank; ++a) w[static_cast<std::size_t>(a)] += s * beta[static_cast<std::size_t>(a)];
        }
        return w;
    }

    std::string to_string() const {
        if (factors.empty()) return "1";
        std::string out;
        for (const auto& f : factors) {
            out += f.cls == GEN_E ? "e" : (f.cls == GEN_F ? "f" : "h");
            out += "[" + std::to_string(f.idx + 1) + "](" + std::to_string(f.mode) + ")";
            if (f.exp > 1) out += "^" + std::to_string(f.exp);
            out += " * ";
        }
        out += "1";
        return out;
    }

    auto operator<=>(const PBWMonomial&) const = default;
};

struct MonomialStats {
    long degree = 0;
    long depth = 0;
    long deg0m1 = 0;
    std::vector<long> weight;
};

inline MonomialStats stats(const LieAlgebraData& g, const PBWMonomial& m) {
    return {m.degree(), m.depth(), m.deg0m1(), m.weight(g)};
}

inline std::tuple<PBWMonomial, PBWMonomial, PBWMonomial> decompose(const PBWMonomial& m) {
    return {m.block(GEN_E), m.block(GEN_F), m.block(GEN_H)};
}

// (cls, idx) of a basis element of g
inline std::pair<int, int> gen_of_basis(const LieAlgebraData& g, int b) {
    if (g.is_h(b)) return {GEN_H, b};
    if (g.is_e(b)) return {GEN_E, g.root_of(b)};
    return {GEN_F, g.root_of(b)};
}

inline int basis_of_gen(const LieAlgebraData& g, int cls, int idx) {
    switch (cls) {
        case GEN_E: return g.e_index(idx);
        case GEN_F: return g.f_index(idx);
        default: return g.h_index(idx);
    }
}

// ---------------------------------------------------------------------------
// VAVector: finite Q-linear combination of PBW monomials at a fixed level k.
// ---------------------------------------------------------------------------

struct VAVector {
    Rational k;
    std::map<PBWMonomial, Rational> terms;

    static VAVector vacuum(const Rational& level) {
        VAVector v;
        v.k = level;
        v.terms.emplace(PBWMonomial::one(), Rational(1));
        return v;
    }

    static VAVector zero(const Rational& level) {
        VAVector v;
        v.k = level;
        return v;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const PBWMonomial& m, const Rational& c) {
        if (voa::is_zero(c)) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (voa::is_zero(it->second)) terms.erase(it);
        }
    }

    long max_degree() const {
        long d = 0;
        for (const auto& [m, c] : terms) d = std::max(d, m.degree());
        return d;
    }

    long min_depth() const {
        if (terms.empty()) throw std::invalid_argument("min_depth of zero vector");
        long d = terms.begin()->first.depth();
        for (const auto& [m, c] : terms) d = std::min(d, m.depth());
        return d;
    }

    VAVector& operator+=(const VAVector& o) {
        if (k != o.k) throw std::invalid_argument("level mismatch in VAVector sum");
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }

    VAVector& operator-=(const VAVector& o) {
        if (k != o.k) throw std::invalid_argument("level mismatch in VAVector sum");
        for (const auto& [m, c] : o.terms) add_term(m, -c);
        return *this;
    }

    VAVector& operator*=(const Rational& c) {
        if (voa::is_zero(c)) {
            terms.clear();
            return *this;
        }
        for (auto& [m, v] : terms) v *= c;
        return *this;
    }

    friend VAVector operator+(VAVector a, const VAVector& b) { return a += b; }
    friend VAVector operator-(VAVector a, const VAVector& b) { return a -= b; }
    friend VAVector operator*(const Rational& c, VAVector v) { return v *= c; }

    bool operator==(const VAVector& o) const { return k == o.k && terms == o.terms; }

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

// ---------------------------------------------------------------------------
// Straightening: words in the affine generators x(m) are rewritten to the PBW
// basis with [x(m), y(n)] = [x,y](m+n) + m (x|y) delta_{m+n,0} k. Each swap
// strictly decreases (word length, annihilator displacement, inversions), so
// the rewriting terminates. Results are memoized per (word); the level is
// fixed per Straightener.
// ---------------------------------------------------------------------------

struct ModeOp {
    int basis = 0;
    int mode = 0;
    auto operator<=>(const ModeOp&) const = default;
};

using Word = std::vector<ModeOp>;

class Straightener {
public:
    Straightener(const LieAlgebraData& g, Rational level) : g_(&g), k_(std::move(level)) {}

    const LieAlgebraData& algebra() const { return *g_; }
    const Rational& level() const { return k_; }

    // word applied to the vacuum
    VAVector normal_order(const Word& w) {
        VAVector out = VAVector::zero(k_);
        out.terms = straighten(w);
        return out;
    }

    VAVector act(int basis, int mode, const VAVector& v) {
        if (v.k != k_) throw std::invalid_argument("level mismatch in act");
        VAVector out = VAVector::zero(k_);
        for (const auto& [z, c] : v.terms) {
            Word w;
            w.push_back({basis, mode});
            append_monomial(w, z);
            const auto res = straighten(w);
            for (const auto& [m, cc] : res) out.add_term(m, c * cc);
        }
        return out;
    }

    VAVector act(const Element& x, int mode, const VAVector& v) {
        VAVector out = VAVector::zero(k_);
        for (const auto& [b, c] : x) {
            VAVector part = act(b, mode, v);
            part *= c;
            out += part;
        }
        return out;
    }

private:
    using TermMap = std::map<PBWMonomial, Rational>;

    void append_monomial(Word& w, const PBWMonomial& z) const {
        for (const auto& f : z.factors) {
            const ModeOp op{basis_of_gen(*g_, f.cls, f.idx), f.mode};
            for (int i = 0; i < f.exp; ++i) w.push_back(op);
        }
    }

    std::tuple<int, int, int> op_key(const ModeOp& op) const {
        auto [cls, idx] = gen_of_basis(*g_, op.basis);
        return {cls, idx, -op.mode};
    }

    TermMap straighten(const Word& w) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(w);
            if (it != memo_.end()) return it->second;
        }
        TermMap result = compute(w);
        {
            std::lock_guard<std::mutex> lock(mu_);
            memo_.emplace(w, result);
        }
        return result;
    }

    TermMap compute(const Word& w) {
        const std::size_t n = w.size();
        if (n == 0) return {{PBWMonomial::one(), Rational(1)}};

        // annihilators move right and die on the vacuum
        std::size_t swap_at = n;
        for (std::size_t i = n; i-- > 0;) {
            if (w[i].mode >= 0) {
                if (i == n - 1) return {};
                swap_at = i;
                break;
            }
        }
        if (swap_at == n) {
            // all modes negative: bubble the leftmost inversion
            for (std::size_t i = 0; i + 1 < n; ++i) {
                if (op_key(w[i]) > op_key(w[i + 1])) {
                    swap_at = i;
                    break;
                }
            }
            if (swap_at == n) {
                std::vector<Factor> fs;
                fs.reserve(n);
                for (const auto& op : w) {
                    auto [cls, idx] = gen_of_basis(*g_, op.basis);
                    fs.push_back({cls, idx, op.mode, 1});
                }
                return {{PBWMonomial::from_factors(std::move(fs)), Rational(1)}};
            }
        }

        const ModeOp a = w[swap_at], b = w[swap_at + 1];
        TermMap out;
        auto accumulate = [&](const TermMap& part, const Rational& c) {
            for (const auto& [m, v] : part) {
                auto it = out.find(m);
                if (it == out.end()) {
                    Rational cv = c * v;
                    if (!is_zero(cv)) out.emplace(m, std::move(cv));
                } else {
                    it->second += c * v;
                    if (is_zero(it->second)) out.erase(it);
                }
            }
        };

        Word swapped = w;
        std::swap(swapped[swap_at], swapped[swap_at + 1]);
        accumulate(straighten(swapped), Rational(1));

        const Element& br = g_->bracket_basis(a.basis, b.basis);
        if (!br.empty()) {
            Word shorter;
            shorter.reserve(n - 1);
            shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<long>(swap_at));
            shorter.push_back({0, a.mode + b.mode});
            shorter.insert(shorter.end(), w.begin() + static_cast<long>(swap_at) + 2, w.end());
            for (const auto& [basis, c] : br) {
                shorter[swap_at] = {basis, a.mode + b.mode};
                accumulate(straighten(shorter), c);
            }
        }

        if (a.mode + b.mode == 0 && a.mode != 0) {
            const Rational pairing = g_->form_basis(a.basis, b.basis);
            if (!is_zero(pairing)) {
                Word shorter;
                shorter.reserve(n - 2);
                shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<long>(swap_at));
                shorter.insert(shorter.end(), w.begin() + static_cast<long>(swap_at) + 2, w.end());
                accumulate(straighten(shorter), Rational(a.mode) * pairing * k_);
            }
        }
        return out;
    }

    const LieAlgebraData* g_;
    Rational k_;
    std::map<Word, TermMap> memo_;
    std::mutex mu_;
};

// Convenience wrappers building a transient straightener.
inline VAVector act(const LieAlgebraData& g, int basis, int mode, const VAVector& v) {
    Straightener s(g, v.k);
    return s.act(basis, mode, v);
}

inline VAVector act(const LieAlgebraData& g, const Element& x, int mode, const VAVector& v) {
    Straightener s(g, v.k);
    return s.act(x, mode, v);
}

inline VAVector normal_order(const LieAlgebraData& g, const Word& w, const Rational& k) {
    Straightener s(g, k);
    return s.normal_order(w);
}

// Translation operator T: the derivation with T(x(-n)) = n x(-n-1), T(1) = 0.
// On PBW monomials it acts factor by factor; no straightening is needed since
// the replacement stays inside the same block slot.
inline VAVector translate(const VAVector& v) {
    VAVector out = VAVector::zero(v.k);
    for (const auto& [z, c] : v.terms) {
        for (std::size_t i = 0; i < z.factors.size(); ++i) {
            const Factor& f = z.factors[i];
            std::vector<Factor> fs = z.factors;
            if (fs[i].exp == 1)
                fs.erase(fs.begin() + static_cast<long>(i));
            else
                fs[i].exp -= 1;
            fs.push_back({f.cls, f.idx, f.mode - 1, 1});
            out.add_term(PBWMonomial::from_factors(std::move(fs)), c * Rational(f.exp) * Rational(-f.mode));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Textual element syntax: "e[1](-1)^2 * h[1](-3) * 1"; linear combinations
// with exact rational coefficients, e.g. "3/2 * e[1](-1) * 1 + f[2](-2) * 1".
// ---------------------------------------------------------------------------

namespace detail {

struct ParsedTerm {
    Rational coeff = Rational(1);
    std::vector<Factor> factors;
};

inline std::vector<ParsedTerm> parse_terms(std::string_view s, const LieAlgebraData& g) {
    std::vector<ParsedTerm> out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    };
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("element parse error at position " + std::to_string(i) + ": " + what +
                                    " in '" + std::string(s) + "'");
    };
    auto read_uint = [&]() -> long {
        std::size_t start = i;
        long v = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            v = v * 10 + (s[i] - '0');
            if (v > 1000000) fail("number out of range");
            ++i;
        }
        if (i == start) fail("expected digit");
        return v;
    };

    skip_ws();
    if (i == s.size()) fail("empty element");
    while (i < s.size()) {
        ParsedTerm term;
        skip_ws();
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') term.coeff = Rational(-1);
            ++i;
        }
        bool any_factor = false;
        bool expect_factor = true;
        while (expect_factor) {
            skip_ws();
            if (i >= s.size()) fail("unexpected end of input");
            const char c = s[i];
            if (c >= '0' && c <= '9') {
                // rational literal; "1" alone denotes the vacuum
                long num = read_uint();
                if (i < s.size() && s[i] == '/') {
                    ++i;
                    long den = read_uint();
                    if (den == 0) fail("zero denominator");
                    term.coeff *= rat(num, den);
                } else {
                    term.coeff *= Rational(num);
                }
                any_factor = true;
            } else if (c == 'e' || c == 'f' || c == 'h') {
                ++i;
                const int cls = c == 'e' ? GEN_E : (c == 'f' ? GEN_F : GEN_H);
                skip_ws();
                if (i >= s.size() || s[i] != '[') fail("expected '['");
                ++i;
                long idx = read_uint();
                const long max_idx = cls == GEN_H ? g.rank : g.num_positive();
                if (idx < 1 || idx > max_idx) fail("generator index out of range");
                if (i >= s.size() || s[i] != ']') fail("expected ']'");
                ++i;
                skip_ws();
                if (i >= s.size() || s[i] != '(') fail("expected '('");
                ++i;
                skip_ws();
                bool neg = false;
                if (i < s.size() && s[i] == '-') {
                    neg = true;
                    ++i;
                }
                long mode = read_uint();
                if (!neg || mode == 0) fail("PBW modes must be strictly negative");
                skip_ws();
                if (i >= s.size() || s[i] != ')') fail("expected ')'");
                ++i;
                long exp = 1;
                skip_ws();
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    skip_ws();
                    exp = read_uint();
                    if (exp < 1) fail("exponent must be >= 1");
                }
                term.factors.push_back(
                    {cls, static_cast<int>(idx - 1), static_cast<int>(-mode), static_cast<int>(exp)});
                any_factor = true;
            } else {
                fail("expected generator, rational, or '1'");
            }
            skip_ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        if (!any_factor) fail("empty term");
        out.push_back(std::move(term));
        skip_ws();
        if (i < s.size() && s[i] != '+' && s[i] != '-') fail("expected '+' or '-'");
    }
    return out;
}

}  // namespace detail

inline PBWMonomial parse_monomial(std::string_view s, const LieAlgebraData& g) {
    auto terms = detail::parse_terms(s, g);
    if (terms.size() != 1 || terms[0].coeff != Rational(1))
        throw std::invalid_argument("expected a single monomial: '" + std::string(s) + "'");
    return PBWMonomial::from_factors(std::move(terms[0].factors));
}

inline VAVector parse_va_element(std::string_view s, const LieAlgebraData& g, const Rational& k) {
    VAVector v = VAVector::zero(k);
    for (auto& t : detail::parse_terms(s, g))
        v.add_term(PBWMonomial::from_factors(std::move(t.factors)), t.coeff);
    return v;
}

}  // namespace voa
