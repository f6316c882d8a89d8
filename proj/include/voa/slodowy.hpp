#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbw.hpp"

namespace voa {

// ---------------------------------------------------------------------------
// sl2-triples through a nilpotent f, centralizers g^e, the slice f + g^e with
// its contracting C*-action, and the rank certificate behind the submersion
// property of G x S_f -> g.
// ---------------------------------------------------------------------------

struct Sl2Triple {
    Element e, h, f;
};

inline QVec elem_to_vec(const LieAlgebraData& g, const Element& x) {
    QVec v(static_cast<std::size_t>(g.dim), Rational(0));
    for (const auto& [i, c] : x) v[static_cast<std::size_t>(i)] = c;
    return v;
}

inline Element vec_to_elem(const QVec& v) {
    Element x;
    for (std::size_t i = 0; i < v.size(); ++i) elem_add(x, static_cast<int>(i), v[i]);
    return x;
}

// matrix of ad(x) in the fixed basis, column j = [x, b_j]
inline QMat ad_matrix(const LieAlgebraData& g, const Element& x) {
    const auto n = static_cast<std::size_t>(g.dim);
    QMat m(n, QVec(n, Rational(0)));
    for (int j = 0; j < g.dim; ++j) {
        Element col = g.bracket(x, elem_basis(j));
        for (const auto& [i, c] : col) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
    }
    return m;
}

inline QMat mat_mul(const QMat& a, const QMat& b) {
    const std::size_t n = a.size();
    QMat out(n, QVec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            if (is_zero(a[i][l])) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (is_zero(b[l][j])) continue;
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    return out;
}

inline bool is_zero_mat(const QMat& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (!is_zero(x)) return false;
    return true;
}

inline bool is_ad_nilpotent(const LieAlgebraData& g, const Element& x) {
    QMat p = ad_matrix(g, x);
    for (int it = 0; it < 10 && !is_zero_mat(p); ++it) p = mat_mul(p, p);
    return is_zero_mat(p);
}

// Jacobson-Morosov in two exact linear solves: first h = [f,u] with
// [h,f] = -2f (i.e. ad(f)^2 u = 2f), then e from [e,f] = h, [h,e] = 2e.
inline Sl2Triple complete_triple(const Element& f, const LieAlgebraData& g) {
    if (f.empty()) throw std::invalid_argument("zero element has no sl2-triple");
    if (!is_ad_nilpotent(g, f)) throw std::invalid_argument("element is not nilpotent");

    const auto n = static_cast<std::size_t>(g.dim);
    const QMat adf = ad_matrix(g, f);
    const QMat adf2 = mat_mul(adf, adf);
    QVec rhs = elem_to_vec(g, f);
    for (auto& x : rhs) x *= 2;
    auto u = q_solve(adf2, rhs);
    if (!u) throw std::logic_error("Jacobson-Morosov: no h with [h,f] = -2f");
    Element h = g.bracket(f, vec_to_elem(*u));

    const QMat adh = ad_matrix(g, h);
    QMat stacked(2 * n, QVec(n, Rational(0)));
    QVec b(2 * n, Rational(0));
    const QVec hv = elem_to_vec(g, h);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            stacked[i][j] = adf[i][j];
            stacked[n + i][j] = adh[i][j];
        }
        stacked[n + i][i] -= 2;
        b[i] = -hv[i];
    }
    auto ev = q_solve(stacked, b);
    if (!ev) throw std::logic_error("Jacobson-Morosov: no e completing the triple");
    Sl2Triple t;
    t.e = vec_to_elem(*ev);
    t.h = std::move(h);
    t.f = f;
    return t;
}

// ---------------------------------------------------------------------------
// ad(h)-grading of g. Eigenvalues of ad(h) for a triple are integers; the
// candidate range comes from a Gershgorin bound on the exact matrix.
// ---------------------------------------------------------------------------

struct HGrading {
    // (eigenvalue, homogeneous basis of the eigenspace)
    std::vector<std::pair<long, std::vector<QVec>>> spaces;
};

inline HGrading h_grading(const LieAlgebraData& g, const Element& h) {
    const auto n = static_cast<std::size_t>(g.dim);
    const QMat adh = ad_matrix(g, h);
    Rational bound(0);
    for (std::size_t i = 0; i < n; ++i) {
        Rational row(0);
        for (std::size_t j = 0; j < n; ++j) row += abs(adh[i][j]);
        if (row > bound) bound = row;
    }
    const long jmax = static_cast<long>(Integer(bound.get_num() / bound.get_den()).get_si()) + 1;

    HGrading grading;
    std::size_t total = 0;
    for (long j = -jmax; j <= jmax; ++j) {
        SparseRowMatrix rows(static_cast<long>(n));
        for (std::size_t i = 0; i < n; ++i) {
            std::map<long, Rational> row;
            for (std::size_t c = 0; c < n; ++c) {
                Rational v = adh[i][c];
                if (i == c) v -= Rational(j);
                if (!is_zero(v)) row[static_cast<long>(c)] = v;
            }
            if (!row.empty()) rows.add_row(row);
        }
        auto kernel = rows.kernel_basis();
        if (kernel.empty()) continue;
        total += kernel.size();
        grading.spaces.emplace_back(j, std::move(kernel));
    }
    if (total != n) throw std::logic_error("ad(h) is not diagonalizable with integer eigenvalues");
    return grading;
}

// ---------------------------------------------------------------------------
// Slice data: homogeneous basis of g^e = ker ad(e) with ad(h)-eigenvalues.
// ---------------------------------------------------------------------------

struct SliceData {
    Sl2Triple triple;
    std::vector<std::pair<Element, long>> centralizer;  // (basis vector, eigenvalue j >= 0)
};

inline SliceData slice(const Sl2Triple& triple, const LieAlgebraData& g) {
    const auto n = static_cast<std::size_t>(g.dim);
    const QMat ade = ad_matrix(g, triple.e);
    const HGrading grading = h_grading(g, triple.h);

    SliceData out;
    out.triple = triple;
    std::size_t expected = n;
    {
        QMat full = ade;
        expected = n - static_cast<std::size_t>(q_rank(std::move(full)));
    }
    for (const auto& [j, basis] : grading.spaces) {
        // restrict ad(e) to the eigenspace: columns are images of its basis
        SparseRowMatrix rows(static_cast<long>(basis.size()));
        std::vector<std::map<long, Rational>> rowmaps(n);
        for (std::size_t bcol = 0; bcol < basis.size(); ++bcol) {
            for (std::size_t i = 0; i < n; ++i) {
                Rational acc(0);
                for (std::size_t c = 0; c < n; ++c)
                    if (!is_zero(ade[i][c]) && !is_zero(basis[bcol][c])) acc += ade[i][c] * basis[bcol][c];
                if (!is_zero(acc)) rowmaps[i][static_cast<long>(bcol)] = acc;
            }
        }
        for (const auto& row : rowmaps)
            if (!row.empty()) rows.add_row(row);
        for (const auto& combo : rows.kernel_basis()) {
            QVec vec(n, Rational(0));
            for (std::size_t bcol = 0; bcol < basis.size(); ++bcol) {
                if (is_zero(combo[bcol])) continue;
                for (std::size_t i = 0; i < n; ++i) vec[i] += combo[bcol] * basis[bcol][i];
            }
            if (j < 0) throw std::logic_error("centralizer of e has a negative ad(h)-eigenvalue");
            out.centralizer.emplace_back(vec_to_elem(vec), j);
        }
    }
    if (out.centralizer.size() != expected) throw std::logic_error("centralizer dimension mismatch");
    return out;
}

// rho_tilde(t) x = t^{2+j} x_j on ad(h)-eigencomponents; fixes f and contracts
// the slice since every g^e-eigenvalue is >= 0.
inline Element rho_tilde(const Rational& t, const Element& x, const Sl2Triple& triple, const LieAlgebraData& g) {
    if (is_zero(t)) throw std::invalid_argument("rho_tilde requires t != 0");
    const auto n = static_cast<std::size_t>(g.dim);
    const HGrading grading = h_grading(g, triple.h);

    // solve for the eigencomponents of x in the concatenated eigenbasis
    std::vector<std::pair<long, QVec>> columns;
    for (const auto& [j, basis] : grading.spaces)
        for (const auto& v : basis) columns.emplace_back(j, v);
    QMat m(n, QVec(columns.size(), Rational(0)));
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (std::size_t i = 0; i < n; ++i) m[i][c] = columns[c].second[i];
    auto coeffs = q_solve(m, elem_to_vec(g, x));
    if (!coeffs) throw std::logic_error("eigenbasis does not span g");

    QVec result(n, Rational(0));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (is_zero((*coeffs)[c])) continue;
        const long exp = 2 + columns[c].first;
        Rational factor(1);
        if (exp >= 0) {
            mpz_pow_ui(factor.get_num_mpz_t(), t.get_num_mpz_t(), static_cast<unsigned long>(exp));
            mpz_pow_ui(factor.get_den_mpz_t(), t.get_den_mpz_t(), static_cast<unsigned long>(exp));
        } else {
            mpz_pow_ui(factor.get_num_mpz_t(), t.get_den_mpz_t(), static_cast<unsigned long>(-exp));
            mpz_pow_ui(factor.get_den_mpz_t(), t.get_num_mpz_t(), static_cast<unsigned long>(-exp));
        }
        factor.canonicalize();
        for (std::size_t i = 0; i < n; ++i) result[i] += factor * (*coeffs)[c] * columns[c].second[i];
    }
    return vec_to_elem(result);
}

struct SubmersionCert {
    bool pass = false;
    long rank = 0;
    long dim = 0;
};

// rank [basis of g^e | ad(f) g] = dim g, the linear-algebra content of the
// submersion at (1_G, f).
inline SubmersionCert submersion_certificate(const Sl2Triple& triple, const LieAlgebraData& g) {
    const auto n = static_cast<std::size_t>(g.dim);
    SliceData sl = slice(triple, g);
    const QMat adf = ad_matrix(g, triple.f);
    QMat m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i].reserve(sl.centralizer.size() + n);
        for (const auto& [x, j] : sl.centralizer) {
            (void)j;
            auto it = x.find(static_cast<int>(i));
            m[i].push_back(it == x.end() ? Rational(0) : it->second);
        }
        for (std::size_t c = 0; c < n; ++c) m[i].push_back(adf[i][c]);
    }
    SubmersionCert cert;
    cert.dim = g.dim;
    cert.rank = q_rank(std::move(m));
    cert.pass = cert.rank == g.dim;
    return cert;
}

// Nilpotent library: "regular" = sum of simple-root f's, "minimal" = f_theta,
// otherwise an element string whose factors are all in mode -1.
inline Element nilpotent_from_spec(std::string_view spec, const LieAlgebraData& g) {
    if (spec == "regular") {
        Element f;
        for (int j = 0; j < g.num_positive(); ++j)
            if (g.heights[static_cast<std::size_t>(j)] == 1) elem_add(f, g.f_index(j), Rational(1));
        return f;
    }
    if (spec == "minimal") return elem_basis(g.f_index(g.theta_index));
    VAVector v = parse_va_element(spec, g, Rational(0));
    Element out;
    for (const auto& [m, c] : v.terms) {
        if (m.factors.size() != 1 || m.factors.front().exp != 1 || m.factors.front().mode != -1)
            throw std::invalid_argument("nilpotent spec must be a combination of mode -1 generators");
        const auto& f = m.factors.front();
        elem_add(out, basis_of_gen(g, f.cls, f.idx), c);
    }
    return out;
}

}  // namespace voa
