#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace voa {

// ---------------------------------------------------------------------------
// Algebra specification "X<rank>", families A..G.
// ---------------------------------------------------------------------------

struct AlgebraSpec {
    char family = 'A';
    int rank = 1;

    void validate() const {
        auto bad = [&](const std::string& why) {
            throw std::invalid_argument("invalid algebra " + to_string() + ": " + why);
        };
        switch (family) {
            case 'A':
                if (rank < 1) bad("A requires rank >= 1");
                break;
            case 'B':
                if (rank < 2) bad("B requires rank >= 2");
                break;
            case 'C':
                if (rank < 2) bad("C requires rank >= 2");
                break;
            case 'D':
                if (rank < 3) bad("D requires rank >= 3");
                break;
            case 'E':
                if (rank < 6 || rank > 8) bad("E requires rank in {6,7,8}");
                break;
            case 'F':
                if (rank != 4) bad("F requires rank 4");
                break;
            case 'G':
                if (rank != 2) bad("G requires rank 2");
                break;
            default:
                bad("unknown family");
        }
    }

    std::string to_string() const { return std::string(1, family) + std::to_string(rank); }

    static AlgebraSpec parse(std::string_view s) {
        if (s.size() < 2) throw std::invalid_argument("algebra spec too short: '" + std::string(s) + "'");
        AlgebraSpec spec;
        spec.family = s[0];
        int r = 0;
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("algebra spec rank must be numeric: '" + std::string(s) + "'");
            r = r * 10 + (s[i] - '0');
            if (r > 1000) throw std::invalid_argument("algebra spec rank out of range");
        }
        spec.rank = r;
        spec.validate();
        return spec;
    }
};

// Sparse vector in the fixed basis of g: basis index -> rational coefficient.
using Element = std::map<int, Rational>;

inline void elem_add(Element& dst, int idx, const Rational& c) {
    if (is_zero(c)) return;
    auto it = dst.find(idx);
    if (it == dst.end()) {
        dst.emplace(idx, c);
    } else {
        it->second += c;
        if (is_zero(it->second)) dst.erase(it);
    }
}

inline Element elem_scale(Element e, const Rational& c) {
    if (is_zero(c)) return {};
    for (auto& [i, v] : e) v *= c;
    return e;
}

inline Element elem_sum(const Element& a, const Element& b) {
    Element out = a;
    for (const auto& [i, v] : b) elem_add(out, i, v);
    return out;
}

inline Element elem_basis(int idx) { return Element{{idx, Rational(1)}}; }

// ---------------------------------------------------------------------------
// LieAlgebraData: indexed Chevalley-style basis with exact structure
// constants and the normalized invariant form ((theta|theta) = 2).
//
// Basis layout: indices 0..l-1 are the simple coroots h_1..h_l, then the
// positive-root vectors e_{beta_1}..e_{beta_q}, then f_{beta_1}..f_{beta_q},
// with positive roots sorted by height and lexicographically within a height.
// ---------------------------------------------------------------------------

struct LieAlgebraData {
    AlgebraSpec spec;
    int dim = 0;   // d
    int rank = 0;  // l

    std::vector<std::vector<int>> positive_roots;  // coords in simple-root basis
    std::vector<int> heights;
    int theta_index = -1;

    std::vector<std::vector<Element>> table;  // d x d bracket table
    QMat gram;                                // (h_a | h_b), l x l
    QMat gram_inv;
    std::vector<Rational> simple_d;    // (alpha_a|alpha_a)/2 per simple root
    std::vector<Rational> root_norm2;  // (beta|beta) per positive root

    long coxeter = 0;       // h
    long dual_coxeter = 0;  // h_vee
    long lacing = 0;        // r_vee

    int num_positive() const { return (dim - rank) / 2; }
    int h_index(int a) const { return a; }
    int e_index(int j) const { return rank + j; }
    int f_index(int j) const { return rank + num_positive() + j; }

    bool is_h(int i) const { return i < rank; }
    bool is_e(int i) const { return i >= rank && i < rank + num_positive(); }
    bool is_f(int i) const { return i >= rank + num_positive(); }
    // root index of an e/f basis element
    int root_of(int i) const { return is_e(i) ? i - rank : i - rank - num_positive(); }

    std::string basis_name(int i) const {
        if (is_h(i)) return "h[" + std::to_string(i + 1) + "]";
        if (is_e(i)) return "e[" + std::to_string(root_of(i) + 1) + "]";
        return "f[" + std::to_string(root_of(i) + 1) + "]";
    }

    // h-weight of a basis vector, in simple-root coordinates.
    std::vector<long> weight_of(int i) const {
        std::vector<long> w(static_cast<std::size_t>(rank), 0);
        if (is_h(i)) return w;
        const auto& beta = positive_roots[static_cast<std::size_t>(root_of(i))];
        const long s = is_e(i) ? 1 : -1;
        for (int a = 0; a < rank; ++a) w[static_cast<std::size_t>(a)] = s * beta[static_cast<std::size_t>(a)];
        return w;
    }

    Element bracket_basis(int i, int j) const { return table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    Element bracket(const Element& x, const Element& y) const {
        Element out;
        for (const auto& [i, ci] : x)
            for (const auto& [j, cj] : y) {
                const Element& t = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                Rational c = ci * cj;
                for (const auto& [b, v] : t) elem_add(out, b, c * v);
            }
        return out;
    }

    Rational form_basis(int i, int j) const {
        if (is_h(i) && is_h(j)) return gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (is_e(i) && is_f(j) && root_of(i) == root_of(j)) return 1;
        if (is_f(i) && is_e(j) && root_of(i) == root_of(j)) return 1;
        return 0;
    }

    Rational form(const Element& x, const Element& y) const {
        Rational out(0);
        for (const auto& [i, ci] : x)
            for (const auto& [j, cj] : y) out += ci * cj * form_basis(i, j);
        return out;
    }

    // Cartan element t_mu dual to the weight mu = sum_a mu_a alpha_a under the
    // normalized form: t_mu = sum_a mu_a d_a h_a.
    Element cartan_dual_of_weight(const std::vector<long>& mu) const {
        Element out;
        for (int a = 0; a < rank; ++a)
            elem_add(out, a, Rational(mu[static_cast<std::size_t>(a)]) * simple_d[static_cast<std::size_t>(a)]);
        return out;
    }

    // value beta(h_a) for a stored positive root
    Rational root_on_coroot(int root_idx, int a) const {
        Rational out(0);
        const auto& beta = positive_roots[static_cast<std::size_t>(root_idx)];
        for (int b = 0; b < rank; ++b)
            out += Rational(beta[static_cast<std::size_t>(b)]) * simple_d[static_cast<std::size_t>(b)] *
                   gram[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        // (t_beta | h_a) with t_beta = sum_b beta_b d_b h_b
        return out;
    }
};

namespace detail {

// ---- simply-laced parents --------------------------------------------------

struct Diagram {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // oriented u -> v
    bool adjacent(int i, int j) const {
        for (const auto& [u, v] : edges)
            if ((u == i && v == j) || (u == j && v == i)) return true;
        return false;
    }
};

inline Diagram chain_toward(int n, int center) {
    Diagram d;
    d.n = n;
    for (int i = 0; i + 1 < n; ++i) {
        if (i + 1 <= center)
            d.edges.emplace_back(i, i + 1);
        else
            d.edges.emplace_back(i + 1, i);
    }
    return d;
}

inline Diagram diagram_A(int n) { return chain_toward(n, n - 1); }

inline Diagram diagram_D(int n) {
    // chain 0..n-3 with fork nodes n-2, n-1 attached to n-3
    Diagram d;
    d.n = n;
    for (int i = 0; i + 1 < n - 2; ++i) d.edges.emplace_back(i, i + 1);
    d.edges.emplace_back(n - 3, n - 2);
    d.edges.emplace_back(n - 3, n - 1);
    return d;
}

inline Diagram diagram_E(int n) {
    Diagram d;
    d.n = n;
    d.edges.emplace_back(0, 2);
    d.edges.emplace_back(2, 3);
    d.edges.emplace_back(1, 3);
    for (int i = 3; i + 1 < n; ++i) d.edges.emplace_back(i, i + 1);
    return d;
}

struct FoldingPlan {
    Diagram diagram;                        // oriented, sigma-invariant
    std::vector<int> sigma;                 // node permutation
    std::vector<std::vector<int>> node_orbits;  // target node -> parent nodes
};

inline FoldingPlan folding_plan(const AlgebraSpec& spec) {
    FoldingPlan plan;
    const int l = spec.rank;
    auto identity_plan = [&](Diagram d) {
        plan.diagram = std::move(d);
        plan.sigma.resize(static_cast<std::size_t>(plan.diagram.n));
        for (int i = 0; i < plan.diagram.n; ++i) plan.sigma[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < plan.diagram.n; ++i) plan.node_orbits.push_back({i});
    };
    switch (spec.family) {
        case 'A':
            identity_plan(diagram_A(l));
            break;
        case 'D':
            identity_plan(diagram_D(l));
            break;
        case 'E':
            identity_plan(diagram_E(l));
            break;
        case 'C': {
            // fixed points of the order-2 symmetry of A_{2l-1}
            const int n = 2 * l - 1;
            plan.diagram = chain_toward(n, l - 1);
            plan.sigma.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) plan.sigma[static_cast<std::size_t>(i)] = n - 1 - i;
            for (int a = 0; a + 1 < l; ++a) plan.node_orbits.push_back({a, n - 1 - a});
            plan.node_orbits.push_back({l - 1});
            break;
        }
        case 'B': {
            // fixed points of the fork swap of D_{l+1}
            const int n = l + 1;
            Diagram d;
            d.n = n;
            for (int i = 0; i + 1 < n - 2; ++i) d.edges.emplace_back(i, i + 1);
            d.edges.emplace_back(n - 3, n - 2);
            d.edges.emplace_back(n - 3, n - 1);
            plan.diagram = std::move(d);
            plan.sigma.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) plan.sigma[static_cast<std::size_t>(i)] = i;
            std::swap(plan.sigma[static_cast<std::size_t>(n - 2)], plan.sigma[static_cast<std::size_t>(n - 1)]);
            for (int a = 0; a + 1 < l; ++a) plan.node_orbits.push_back({a});
            plan.node_orbits.push_back({n - 2, n - 1});
            break;
        }
        case 'F': {
            // fixed points of the order-2 symmetry of E6
            Diagram d;
            d.n = 6;
            d.edges = {{0, 2}, {2, 3}, {1, 3}, {5, 4}, {4, 3}};
            plan.diagram = std::move(d);
            plan.sigma = {5, 1, 4, 3, 2, 0};
            plan.node_orbits = {{1}, {3}, {2, 4}, {0, 5}};
            break;
        }
        case 'G': {
            // fixed points of the triality rotation of D4
            Diagram d;
            d.n = 4;
            d.edges = {{1, 0}, {1, 2}, {1, 3}};
            plan.diagram = std::move(d);
            plan.sigma = {2, 1, 3, 0};
            plan.node_orbits = {{0, 2, 3}, {1}};
            break;
        }
        default:
            throw std::invalid_argument("unknown family");
    }
    return plan;
}

// Parent-side element: Cartan part in the root-lattice basis plus root-vector
// coefficients keyed by signed root id.
struct ParentElem {
    QVec cartan;                  // coords in simple roots of the parent
    std::map<int, Rational> ev;  // signed root id -> coefficient
};

struct Parent {
    int n = 0;
    std::vector<std::vector<int>> lattice_form;  // (alpha_i|alpha_j): 2 / -1 / 0
    std::vector<std::vector<int>> eps_bit;       // 1 where eps(alpha_i,alpha_j) = -1
    std::vector<std::vector<int>> pos_roots;     // sorted by height then lex
    std::map<std::vector<int>, int> pos_id;

    int num_pos() const { return static_cast<int>(pos_roots.size()); }

    // signed ids: j in [0, q) positive root j; j in [q, 2q) negative of j - q
    std::vector<int> coords_of_signed(int id) const {
        const int q = num_pos();
        std::vector<int> c = pos_roots[static_cast<std::size_t>(id < q ? id : id - q)];
        if (id >= q)
            for (auto& x : c) x = -x;
        return c;
    }
    int signed_id(const std::vector<int>& coords) const {
        auto it = pos_id.find(coords);
        if (it != pos_id.end()) return it->second;
        std::vector<int> neg = coords;
        for (auto& x : neg) x = -x;
        it = pos_id.find(neg);
        if (it != pos_id.end()) return it->second + num_pos();
        return -1;
    }

    int eps(const std::vector<int>& u, const std::vector<int>& v) const {
        long parity = 0;
        for (int i = 0; i < n; ++i) {
            if (u[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; j < n; ++j)
                if (eps_bit[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                    parity += static_cast<long>(u[static_cast<std::size_t>(i)]) * v[static_cast<std::size_t>(j)];
        }
        return (parity % 2 + 2) % 2 == 0 ? 1 : -1;
    }

    Rational blf(const QVec& u, const QVec& v) const {
        Rational out(0);
        for (int i = 0; i < n; ++i) {
            if (is_zero(u[static_cast<std::size_t>(i)])) continue;
            for (int j = 0; j < n; ++j)
                out += u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] *
                       lattice_form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        return out;
    }

    Rational blf_root(const QVec& u, const std::vector<int>& beta) const {
        QVec b;
        b.reserve(beta.size());
        for (int x : beta) b.emplace_back(x);
        return blf(u, b);
    }

    // [x, y] from the lattice construction:
    //   [t_u, E_beta] = (u|beta) E_beta
    //   [E_beta, E_gamma] = eps(beta,gamma) E_{beta+gamma}   if beta+gamma is a root
    //   [E_beta, E_{-beta}] = eps(beta,-beta) t_beta
    ParentElem bracket(const ParentElem& x, const ParentElem& y) const {
        ParentElem out;
        out.cartan.assign(static_cast<std::size_t>(n), Rational(0));
        auto add_ev = [&](int id, const Rational& c) {
            if (is_zero(c)) return;
            auto [it, inserted] = out.ev.emplace(id, c);
            if (!inserted) {
                it->second += c;
                if (is_zero(it->second)) out.ev.erase(it);
            }
        };
        for (const auto& [idy, cy] : y.ev) {
            std::vector<int> beta = coords_of_signed(idy);
            Rational c = blf_root(x.cartan, beta) * cy;
            add_ev(idy, c);
        }
        for (const auto& [idx, cx] : x.ev) {
            std::vector<int> beta = coords_of_signed(idx);
            Rational c = blf_root(y.cartan, beta) * cx;
            add_ev(idx, -c);
        }
        for (const auto& [idx, cx] : x.ev) {
            std::vector<int> beta = coords_of_signed(idx);
            for (const auto& [idy, cy] : y.ev) {
                std::vector<int> gamma = coords_of_signed(idy);
                std::vector<int> sum(beta.size());
                bool zero = true;
                for (std::size_t i = 0; i < beta.size(); ++i) {
                    sum[i] = beta[i] + gamma[i];
                    if (sum[i] != 0) zero = false;
                }
                const Rational c = cx * cy;
                if (zero) {
                    // eps(beta,-beta) = -1 always, kept via eps() for uniformity
                    const int s = eps(beta, gamma);
                    for (std::size_t i = 0; i < beta.size(); ++i)
                        out.cartan[i] += Rational(s) * Rational(beta[i]) * c;
                } else {
                    const int id = signed_id(sum);
                    if (id >= 0) add_ev(id, Rational(eps(beta, gamma)) * c);
                }
            }
        }
        return out;
    }

    Rational form(const ParentElem& x, const ParentElem& y) const {
        Rational out = blf(x.cartan, y.cartan);
        const int q = num_pos();
        for (const auto& [idx, cx] : x.ev) {
            const int opp = idx < q ? idx + q : idx - q;
            auto it = y.ev.find(opp);
            if (it == y.ev.end()) continue;
            std::vector<int> beta = coords_of_signed(idx);
            std::vector<int> nbeta = coords_of_signed(opp);
            out += Rational(eps(beta, nbeta)) * cx * it->second;
        }
        return out;
    }
};

inline Parent make_parent(const Diagram& d) {
    Parent p;
    p.n = d.n;
    p.lattice_form.assign(static_cast<std::size_t>(d.n), std::vector<int>(static_cast<std::size_t>(d.n), 0));
    p.eps_bit.assign(static_cast<std::size_t>(d.n), std::vector<int>(static_cast<std::size_t>(d.n), 0));
    for (int i = 0; i < d.n; ++i) {
        p.lattice_form[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
        p.eps_bit[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    }
    for (const auto& [u, v] : d.edges) {
        p.lattice_form[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = -1;
        p.lattice_form[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = -1;
        p.eps_bit[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    }

    // positive-root closure via root strings
    std::set<std::vector<int>> roots;
    std::vector<std::vector<int>> frontier;
    for (int i = 0; i < d.n; ++i) {
        std::vector<int> a(static_cast<std::size_t>(d.n), 0);
        a[static_cast<std::size_t>(i)] = 1;
        roots.insert(a);
        frontier.push_back(a);
    }
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& beta : frontier) {
            for (int i = 0; i < d.n; ++i) {
                std::vector<int> gamma = beta;
                gamma[static_cast<std::size_t>(i)] += 1;
                if (roots.count(gamma)) continue;
                // p = how far the alpha_i-string extends downward from beta
                int down = 0;
                std::vector<int> probe = beta;
                for (;;) {
                    probe[static_cast<std::size_t>(i)] -= 1;
                    bool neg = true, zero = true;
                    for (int x : probe) {
                        if (x != 0) zero = false;
                        if (x > 0) neg = false;
                    }
                    if (!zero && !neg && roots.count(probe))
                        ++down;
                    else
                        break;
                }
                long pairing = 0;
                for (int j = 0; j < d.n; ++j)
                    pairing += static_cast<long>(beta[static_cast<std::size_t>(j)]) *
                               p.lattice_form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (down - pairing > 0) {
                    roots.insert(gamma);
                    next.push_back(gamma);
                }
            }
        }
        frontier = std::move(next);
    }
    p.pos_roots.assign(roots.begin(), roots.end());
    std::sort(p.pos_roots.begin(), p.pos_roots.end(), [](const auto& a, const auto& b) {
        long ha = 0, hb = 0;
        for (int x : a) ha += x;
        for (int x : b) hb += x;
        if (ha != hb) return ha < hb;
        return a < b;
    });
    for (int j = 0; j < static_cast<int>(p.pos_roots.size()); ++j)
        p.pos_id[p.pos_roots[static_cast<std::size_t>(j)]] = j;
    return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// build(): assemble LieAlgebraData. Simply-laced types come straight from the
// lattice construction; B, C, F, G are the fixed-point subalgebras of a
// diagram automorphism of their simply-laced parent.
// ---------------------------------------------------------------------------

inline LieAlgebraData build(const AlgebraSpec& spec) {
    spec.validate();
    using detail::Parent;
    using detail::ParentElem;

    detail::FoldingPlan plan = detail::folding_plan(spec);
    Parent parent = detail::make_parent(plan.diagram);
    const int np = parent.n;
    const int l = spec.rank;
    const int q_up = parent.num_pos();

    auto apply_sigma = [&](const std::vector<int>& coords) {
        std::vector<int> out(coords.size(), 0);
        for (int i = 0; i < np; ++i)
            out[static_cast<std::size_t>(plan.sigma[static_cast<std::size_t>(i)])] = coords[static_cast<std::size_t>(i)];
        return out;
    };

    // node index -> target simple index
    std::vector<int> node_target(static_cast<std::size_t>(np), -1);
    for (int a = 0; a < l; ++a)
        for (int i : plan.node_orbits[static_cast<std::size_t>(a)]) node_target[static_cast<std::size_t>(i)] = a;

    // sigma-orbits on positive roots, keyed by restricted coordinates
    struct RootOrbit {
        std::vector<int> restricted;      // coords in target simple roots
        std::vector<int> members;         // parent positive root ids
    };
    std::vector<RootOrbit> orbits;
    std::map<std::vector<int>, int> orbit_of_restricted;
    {
        std::vector<bool> seen(static_cast<std::size_t>(q_up), false);
        for (int j = 0; j < q_up; ++j) {
            if (seen[static_cast<std::size_t>(j)]) continue;
            RootOrbit orb;
            std::vector<int> cur = parent.pos_roots[static_cast<std::size_t>(j)];
            for (;;) {
                const int id = parent.pos_id.at(cur);
                if (seen[static_cast<std::size_t>(id)]) break;
                seen[static_cast<std::size_t>(id)] = true;
                orb.members.push_back(id);
                cur = apply_sigma(cur);
            }
            std::sort(orb.members.begin(), orb.members.end());
            orb.restricted.assign(static_cast<std::size_t>(l), 0);
            const auto& rep = parent.pos_roots[static_cast<std::size_t>(orb.members.front())];
            for (int i = 0; i < np; ++i)
                orb.restricted[static_cast<std::size_t>(node_target[static_cast<std::size_t>(i)])] +=
                    rep[static_cast<std::size_t>(i)];
            if (orbit_of_restricted.count(orb.restricted))
                throw std::logic_error("folding: restricted root not unique");
            orbit_of_restricted[orb.restricted] = static_cast<int>(orbits.size());
            orbits.push_back(std::move(orb));
        }
    }

    // sort downstairs roots by height then lex
    std::vector<int> order(orbits.size());
    for (std::size_t i = 0; i < orbits.size(); ++i) order[i] = static_cast<int>(i);
    auto height_of = [](const std::vector<int>& c) {
        long h = 0;
        for (int x : c) h += x;
        return h;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& ra = orbits[static_cast<std::size_t>(a)].restricted;
        const auto& rb = orbits[static_cast<std::size_t>(b)].restricted;
        const long ha = height_of(ra), hb = height_of(rb);
        if (ha != hb) return ha < hb;
        return ra < rb;
    });

    const int q = static_cast<int>(orbits.size());
    LieAlgebraData g;
    g.spec = spec;
    g.rank = l;
    g.dim = l + 2 * q;

    for (int j = 0; j < q; ++j) {
        const auto& orb = orbits[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
        g.positive_roots.push_back(orb.restricted);
        g.heights.push_back(static_cast<int>(height_of(orb.restricted)));
    }
    g.theta_index = q - 1;
    if (q >= 2 && g.heights[static_cast<std::size_t>(q - 1)] == g.heights[static_cast<std::size_t>(q - 2)])
        throw std::logic_error("highest root is not unique");

    // downstairs basis as parent elements
    std::vector<ParentElem> basis(static_cast<std::size_t>(g.dim));
    std::vector<QVec> coroot_vec(static_cast<std::size_t>(l));  // cartan coords of h_a
    for (int a = 0; a < l; ++a) {
        const auto& nodes = plan.node_orbits[static_cast<std::size_t>(a)];
        QVec t(static_cast<std::size_t>(np), Rational(0));
        const Rational inv_r(1, static_cast<unsigned long>(nodes.size()));
        for (int i : nodes) t[static_cast<std::size_t>(i)] = inv_r;
        const Rational norm2 = parent.blf(t, t);
        g.simple_d.push_back(norm2 / 2);
        QVec h = t;
        const Rational scale = Rational(2) / norm2;
        for (auto& x : h) x *= scale;
        coroot_vec[static_cast<std::size_t>(a)] = h;
        ParentElem pe;
        pe.cartan = h;
        basis[static_cast<std::size_t>(a)] = std::move(pe);
    }
    for (int j = 0; j < q; ++j) {
        const auto& orb = orbits[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
        const auto r = static_cast<unsigned long>(orb.members.size());
        ParentElem e, f;
        e.cartan.assign(static_cast<std::size_t>(np), Rational(0));
        f.cartan.assign(static_cast<std::size_t>(np), Rational(0));
        for (int id : orb.members) {
            e.ev[id] = Rational(1);
            f.ev[id + q_up] = Rational(-1, r);
        }
        basis[static_cast<std::size_t>(g.e_index(j))] = std::move(e);
        basis[static_cast<std::size_t>(g.f_index(j))] = std::move(f);

        // root norm downstairs
        QVec t(static_cast<std::size_t>(np), Rational(0));
        for (int a = 0; a < l; ++a) {
            const Rational c =
                Rational(orb.restricted[static_cast<std::size_t>(a)]) * g.simple_d[static_cast<std::size_t>(a)];
            for (int i = 0; i < np; ++i)
                t[static_cast<std::size_t>(i)] += c * coroot_vec[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
        }
        g.root_norm2.push_back(parent.blf(t, t));
    }

    // express a sigma-invariant parent element in the downstairs basis
    QMat cartan_solve(static_cast<std::size_t>(np), QVec(static_cast<std::size_t>(l), Rational(0)));
    for (int i = 0; i < np; ++i)
        for (int a = 0; a < l; ++a)
            cartan_solve[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] =
                coroot_vec[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
    auto express = [&](const ParentElem& x) -> Element {
        Element out;
        bool has_cartan = false;
        for (const auto& c : x.cartan)
            if (!is_zero(c)) has_cartan = true;
        if (has_cartan) {
            auto sol = q_solve(cartan_solve, x.cartan);
            if (!sol) throw std::logic_error("folding: cartan part not sigma-invariant");
            for (int a = 0; a < l; ++a) elem_add(out, a, (*sol)[static_cast<std::size_t>(a)]);
        }
        for (int j = 0; j < q; ++j) {
            const auto& orb = orbits[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
            const int rep = orb.members.front();
            auto it = x.ev.find(rep);
            if (it != x.ev.end()) elem_add(out, g.e_index(j), it->second);
            it = x.ev.find(rep + q_up);
            if (it != x.ev.end())
                elem_add(out, g.f_index(j), -Rational(static_cast<long>(orb.members.size())) * it->second);
        }
        // exactness check: reconstruct and compare
        ParentElem rec;
        rec.cartan.assign(static_cast<std::size_t>(np), Rational(0));
        for (const auto& [idx, c] : out) {
            const ParentElem& b = basis[static_cast<std::size_t>(idx)];
            for (int i = 0; i < np; ++i) rec.cartan[static_cast<std::size_t>(i)] += c * b.cartan[static_cast<std::size_t>(i)];
            for (const auto& [id, v] : b.ev) {
                auto [jt, ins] = rec.ev.emplace(id, c * v);
                if (!ins) {
                    jt->second += c * v;
                    if (is_zero(jt->second)) rec.ev.erase(jt);
                }
            }
        }
        for (int i = 0; i < np; ++i)
            if (rec.cartan[static_cast<std::size_t>(i)] != x.cartan[static_cast<std::size_t>(i)])
                throw std::logic_error("folding: element outside fixed subalgebra (cartan)");
        std::map<int, Rational> xe;
        for (const auto& [id, v] : x.ev)
            if (!is_zero(v)) xe[id] = v;
        if (xe != rec.ev) throw std::logic_error("folding: element outside fixed subalgebra (roots)");
        return out;
    };

    g.table.assign(static_cast<std::size_t>(g.dim), std::vector<Element>(static_cast<std::size_t>(g.dim)));
    for (int i = 0; i < g.dim; ++i)
        for (int j = i + 1; j < g.dim; ++j) {
            Element br = express(parent.bracket(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]));
            g.table[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = elem_scale(br, Rational(-1));
            g.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(br);
        }

    // normalized form on the Cartan and the (e|f) pairing sanity check
    g.gram.assign(static_cast<std::size_t>(l), QVec(static_cast<std::size_t>(l), Rational(0)));
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b)
            g.gram[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                parent.form(basis[static_cast<std::size_t>(a)], basis[static_cast<std::size_t>(b)]);
    g.gram_inv = q_invert(g.gram);
    for (int j = 0; j < q; ++j) {
        if (parent.form(basis[static_cast<std::size_t>(g.e_index(j))], basis[static_cast<std::size_t>(g.f_index(j))]) !=
            Rational(1))
            throw std::logic_error("(e_beta|f_beta) != 1");
    }
    if (g.root_norm2[static_cast<std::size_t>(g.theta_index)] != Rational(2))
        throw std::logic_error("(theta|theta) != 2");

    // numerology
    g.coxeter = 1 + g.heights[static_cast<std::size_t>(g.theta_index)];
    {
        Rational hv(1);
        const auto& theta = g.positive_roots[static_cast<std::size_t>(g.theta_index)];
        for (int a = 0; a < l; ++a)
            hv += Rational(theta[static_cast<std::size_t>(a)]) * g.simple_d[static_cast<std::size_t>(a)];
        if (hv.get_den() != 1) throw std::logic_error("dual Coxeter number not integral");
        g.dual_coxeter = static_cast<long>(hv.get_num().get_si());
        Rational min_norm = g.root_norm2.front();
        for (const auto& r : g.root_norm2)
            if (r < min_norm) min_norm = r;
        Rational rv = Rational(2) / min_norm;
        if (rv.get_den() != 1) throw std::logic_error("lacing number not integral");
        g.lacing = static_cast<long>(rv.get_num().get_si());
    }
    return g;
}

inline LieAlgebraData build(std::string_view spec_string) { return build(AlgebraSpec::parse(spec_string)); }

}  // namespace voa
