#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "pbw.hpp"

namespace voa {

class critical_level_error : public std::domain_error {
public:
    explicit critical_level_error(const std::string& what) : std::domain_error(what) {}
};

inline Rational critical_level(const LieAlgebraData& g) { return Rational(-g.dual_coxeter); }

// Dual pairs (x_i, x^i) with (x_i | x^j) = delta_ij: the Cartan part uses the
// inverse Gram matrix, and the dual of e_beta is f_beta and vice versa.
inline std::vector<std::pair<Element, Element>> dual_pairs(const LieAlgebraData& g) {
    std::vector<std::pair<Element, Element>> pairs;
    pairs.reserve(static_cast<std::size_t>(g.dim));
    for (int a = 0; a < g.rank; ++a) {
        Element dual;
        for (int b = 0; b < g.rank; ++b)
            elem_add(dual, b, g.gram_inv[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
        pairs.emplace_back(std::move(dual), elem_basis(g.h_index(a)));
    }
    for (int j = 0; j < g.num_positive(); ++j)
        pairs.emplace_back(elem_basis(g.f_index(j)), elem_basis(g.e_index(j)));
    for (int j = 0; j < g.num_positive(); ++j)
        pairs.emplace_back(elem_basis(g.e_index(j)), elem_basis(g.f_index(j)));
    return pairs;
}

// S = 1/2 sum_i x_i(-1) x^i(-1) 1, defined at every level including the
// critical one.
inline VAVector sugawara_vector(const LieAlgebraData& g, const Rational& k) {
    Straightener s(g, k);
    const VAVector vac = VAVector::vacuum(k);
    VAVector out = VAVector::zero(k);
    for (const auto& [xi, xup] : dual_pairs(g)) out += s.act(xi, -1, s.act(xup, -1, vac));
    out *= rat(1, 2);
    return out;
}

// Sugawara operators L_n at non-critical level, with grading-exact truncation
// of the mode sums.
class SugawaraContext {
public:
    SugawaraContext(const LieAlgebraData& g, Rational level)
        : g_(&g), k_(std::move(level)), pairs_(dual_pairs(g)), str_(g, k_) {
        if (k_ == critical_level(g)) throw critical_level_error("critical level: Sugawara undefined");
    }

    const LieAlgebraData& algebra() const { return *g_; }
    const Rational& level() const { return k_; }
    const std::vector<std::pair<Element, Element>>& pairs() const { return pairs_; }

    Rational central_charge() const { return k_ * Rational(g_->dim) / (k_ + Rational(g_->dual_coxeter)); }

    VAVector L(long n, const VAVector& v) {
        if (v.k != k_) throw std::invalid_argument("level mismatch in Sugawara action");
        VAVector out = VAVector::zero(k_);
        if (v.is_zero()) return out;
        const long delta = v.max_degree();
        if (n == 0) {
            for (const auto& [xi, xup] : pairs_) out += apply(xi, 0, xup, 0, v);
            for (long m = 1; m <= delta; ++m)
                for (const auto& [xi, xup] : pairs_) {
                    out += apply(xi, -m, xup, m, v);
                    out += apply(xup, -m, xi, m, v);
                }
        } else {
            for (long m = 1; m <= delta - n; ++m)
                for (const auto& [xi, xup] : pairs_) out += apply(xi, -m, xup, m + n, v);
            for (long m = 0; m <= delta; ++m)
                for (const auto& [xi, xup] : pairs_) out += apply(xup, n - m, xi, m, v);
        }
        out *= Rational(1) / (Rational(2) * (k_ + Rational(g_->dual_coxeter)));
        return out;
    }

    // truncated translation operator: the self-pairing part of the normally
    // ordered sum for L_{-1}, which is all that survives on singular vectors
    VAVector Ltilde_minus1(const VAVector& v) {
        if (v.k != k_) throw std::invalid_argument("level mismatch in Sugawara action");
        VAVector out = VAVector::zero(k_);
        for (int a = 0; a < g_->rank; ++a) {
            Element dual;
            for (int b = 0; b < g_->rank; ++b)
                elem_add(dual, b, g_->gram_inv[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
            out += str_.act(g_->h_index(a), -1, str_.act(dual, 0, v));
        }
        for (int j = 0; j < g_->num_positive(); ++j)
            out += str_.act(g_->e_index(j), -1, str_.act(g_->f_index(j), 0, v));
        out *= Rational(1) / (k_ + Rational(g_->dual_coxeter));
        return out;
    }

    Straightener& straightener() { return str_; }

private:
    VAVector apply(const Element& outer, long outer_mode, const Element& inner, long inner_mode, const VAVector& v) {
        VAVector t = str_.act(inner, static_cast<int>(inner_mode), v);
        if (t.is_zero()) return t;
        return str_.act(outer, static_cast<int>(outer_mode), t);
    }

    const LieAlgebraData* g_;
    Rational k_;
    std::vector<std::pair<Element, Element>> pairs_;
    Straightener str_;
};

}  // namespace voa
