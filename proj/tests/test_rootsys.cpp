#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace voa;

namespace {

const std::vector<std::string> kSoundnessAlgebras = {"A1", "A2", "B2", "C2", "G2"};

long jacobi_failures(const LieAlgebraData& g) {
    long fails = 0;
    for (int x = 0; x < g.dim; ++x)
        for (int y = 0; y < g.dim; ++y)
            for (int z = 0; z < g.dim; ++z) {
                Element s = elem_sum(elem_sum(g.bracket(elem_basis(x), g.bracket_basis(y, z)),
                                              g.bracket(elem_basis(y), g.bracket_basis(z, x))),
                                     g.bracket(elem_basis(z), g.bracket_basis(x, y)));
                if (!s.empty()) ++fails;
            }
    return fails;
}

long invariance_failures(const LieAlgebraData& g) {
    long fails = 0;
    for (int x = 0; x < g.dim; ++x)
        for (int y = 0; y < g.dim; ++y)
            for (int z = 0; z < g.dim; ++z)
                if (!is_zero(g.form(g.bracket_basis(x, y), elem_basis(z)) +
                             g.form(elem_basis(y), g.bracket_basis(x, z))))
                    ++fails;
    return fails;
}

// c_{alpha,beta} from [e_alpha, e_beta] = c e_{alpha+beta}; negative roots via
// e_{-alpha} = f_alpha.
Rational structure_constant(const LieAlgebraData& g, int from_e, bool from_negative, int to_e_target, int onto) {
    const Element br = g.bracket_basis(from_negative ? g.f_index(from_e) : g.e_index(from_e), g.e_index(to_e_target));
    Rational c(0);
    for (const auto& [b, v] : br)
        if (b == onto) c = v;
    return c;
}

}  // namespace

TEST_CASE("algebra spec validation") {
    CHECK(AlgebraSpec::parse("A1").rank == 1);
    CHECK(AlgebraSpec::parse("E8").family == 'E');
    CHECK(AlgebraSpec::parse("D10").rank == 10);
    CHECK_THROWS_AS(AlgebraSpec::parse("A0"), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraSpec::parse("B1"), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraSpec::parse("C1"), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraSpec::parse("D2"), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraSpec::parse("E5"), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraSpec::parse("E9"), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraSpec::parse("F3"), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraSpec::parse("G3"), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraSpec::parse("X2"), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraSpec::parse("A"), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraSpec::parse("Ax"), std::invalid_argument);
}

TEST_CASE("A1 numerology and normalized form") {
    LieAlgebraData g = build("A1");
    CHECK(g.dim == 3);
    CHECK(g.rank == 1);
    CHECK(g.num_positive() == 1);
    CHECK(g.coxeter == 2);
    CHECK(g.dual_coxeter == 2);
    CHECK(g.lacing == 1);
    // Killing form of sl2 divided by 2 h_vee = 4
    CHECK(g.gram[0][0] == Rational(2));
    CHECK(voa::testing::killing_form(g, elem_basis(0), elem_basis(0)) == Rational(8));
    // [e, f] = h, [h, e] = 2e
    CHECK(g.bracket_basis(g.e_index(0), g.f_index(0)) == elem_basis(0));
    CHECK(g.bracket_basis(0, g.e_index(0)) == Element{{g.e_index(0), Rational(2)}});
}

TEST_CASE("numerology across families") {
    struct Row {
        const char* name;
        int dim;
        long h, hv, rv;
    };
    for (const Row& r : {Row{"A2", 8, 3, 3, 1}, Row{"B2", 10, 4, 3, 2}, Row{"C2", 10, 4, 3, 2},
                         Row{"G2", 14, 6, 4, 3}, Row{"B3", 21, 6, 5, 2}, Row{"C3", 21, 6, 4, 2},
                         Row{"D4", 28, 6, 6, 1}, Row{"D5", 45, 8, 8, 1}, Row{"F4", 52, 12, 9, 2},
                         Row{"B4", 36, 8, 7, 2}, Row{"C4", 36, 8, 5, 2}, Row{"A5", 35, 6, 6, 1},
                         Row{"E6", 78, 12, 12, 1}, Row{"E7", 133, 18, 18, 1}, Row{"E8", 248, 30, 30, 1}}) {
        LieAlgebraData g = build(r.name);
        INFO(r.name);
        CHECK(g.dim == r.dim);
        CHECK(g.coxeter == r.h);
        CHECK(g.dual_coxeter == r.hv);
        CHECK(g.lacing == r.rv);
        CHECK(g.num_positive() == (g.dim - g.rank) / 2);
    }
}

TEST_CASE("normalized form equals Killing form over 2 h_vee") {
    for (const auto& name : kSoundnessAlgebras) {
        LieAlgebraData g = build(name);
        INFO(name);
        const Rational scale(2 * g.dual_coxeter);
        for (int i = 0; i < g.dim; ++i)
            for (int j = 0; j < g.dim; ++j)
                CHECK(voa::testing::killing_form(g, elem_basis(i), elem_basis(j)) == scale * g.form_basis(i, j));
    }
}

TEST_CASE("Jacobi identity and form invariance on all basis triples") {
    for (const auto& name : kSoundnessAlgebras) {
        LieAlgebraData g = build(name);
        INFO(name);
        CHECK(jacobi_failures(g) == 0);
        CHECK(invariance_failures(g) == 0);
    }
}

TEST_CASE("bracket is bilinear and alternating") {
    LieAlgebraData g = build("A2");
    Element x = elem_sum(elem_basis(g.e_index(0)), elem_scale(elem_basis(1), rat(3, 2)));
    Element y = elem_sum(elem_basis(g.f_index(2)), elem_scale(elem_basis(g.e_index(1)), rat(-2)));
    CHECK(g.bracket(x, x).empty());
    CHECK(g.bracket(x, y) == elem_scale(g.bracket(y, x), Rational(-1)));
    Element lhs = g.bracket(elem_sum(x, y), y);
    Element rhs = elem_sum(g.bracket(x, y), g.bracket(y, y));
    CHECK(lhs == rhs);
}

TEST_CASE("root vectors and structure constants") {
    LieAlgebraData g = build("A2");
    // heights are sorted and nondecreasing; theta is the unique highest root
    for (int j = 0; j + 1 < g.num_positive(); ++j)
        CHECK(g.heights[static_cast<std::size_t>(j)] <= g.heights[static_cast<std::size_t>(j + 1)]);
    CHECK(g.theta_index == g.num_positive() - 1);
    CHECK(g.root_norm2[static_cast<std::size_t>(g.theta_index)] == Rational(2));

    // [e_alpha, e_beta] = c e_{alpha+beta} with c nonzero when alpha+beta is a root
    const Element br = g.bracket_basis(g.e_index(0), g.e_index(1));
    REQUIRE(br.size() == 1);
    CHECK(br.begin()->first == g.e_index(2));
    CHECK(!is_zero(br.begin()->second));

    // [e_beta, f_beta] lies in the Cartan subalgebra for every positive root
    for (const auto& name : kSoundnessAlgebras) {
        LieAlgebraData a = build(name);
        for (int j = 0; j < a.num_positive(); ++j)
            for (const auto& [b, c] : a.bracket_basis(a.e_index(j), a.f_index(j))) CHECK(a.is_h(b));
    }
}

TEST_CASE("structure constant antisymmetry relation c_{-a,a+b} = -c_{-b,a+b}") {
    for (const auto& name : kSoundnessAlgebras) {
        LieAlgebraData g = build(name);
        INFO(name);
        std::map<std::vector<int>, int> root_index;
        for (int j = 0; j < g.num_positive(); ++j) root_index[g.positive_roots[static_cast<std::size_t>(j)]] = j;
        long checked = 0;
        for (int a = 0; a < g.num_positive(); ++a)
            for (int b = 0; b < g.num_positive(); ++b) {
                std::vector<int> sum = g.positive_roots[static_cast<std::size_t>(a)];
                for (int i = 0; i < g.rank; ++i) sum[static_cast<std::size_t>(i)] += g.positive_roots[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)];
                auto it = root_index.find(sum);
                if (it == root_index.end()) continue;
                const int ab = it->second;
                // c_{-a, a+b}: coefficient of e_b in [f_a, e_{a+b}]
                const Rational c1 = structure_constant(g, a, true, ab, g.e_index(b));
                const Rational c2 = structure_constant(g, b, true, ab, g.e_index(a));
                CHECK(c1 == -c2);
                CHECK(!is_zero(c1));
                ++checked;
            }
        if (g.rank >= 2) CHECK(checked > 0);  // rank 1 has no summable pairs
    }
}

TEST_CASE("form is symmetric with (e|f) = 1 pairs only") {
    LieAlgebraData g = build("C2");
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j) CHECK(g.form_basis(i, j) == g.form_basis(j, i));
    for (int j = 0; j < g.num_positive(); ++j) {
        CHECK(g.form_basis(g.e_index(j), g.f_index(j)) == Rational(1));
        for (int l = 0; l < g.num_positive(); ++l) {
            CHECK(g.form_basis(g.e_index(j), g.e_index(l)) == Rational(0));
            CHECK(g.form_basis(g.f_index(j), g.f_index(l)) == Rational(0));
        }
    }
}

TEST_CASE("deterministic construction") {
    LieAlgebraData a = build("G2");
    LieAlgebraData b = build("G2");
    CHECK(a.positive_roots == b.positive_roots);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) CHECK(a.bracket_basis(i, j) == b.bracket_basis(i, j));
    CHECK(a.gram == b.gram);
}

TEST_CASE("dual Coxeter number from the Killing norm of t_theta") {
    for (const auto& name : kSoundnessAlgebras) {
        LieAlgebraData g = build(name);
        INFO(name);
        std::vector<long> theta(g.positive_roots[static_cast<std::size_t>(g.theta_index)].begin(),
                                g.positive_roots[static_cast<std::size_t>(g.theta_index)].end());
        const Element t_theta = g.cartan_dual_of_weight(theta);
        // kappa(t_theta, t_theta) = 2 h_vee (theta|theta) = 4 h_vee
        CHECK(voa::testing::killing_form(g, t_theta, t_theta) == Rational(4 * g.dual_coxeter));
    }
}
