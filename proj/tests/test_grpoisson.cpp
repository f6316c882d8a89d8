#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace voa;

namespace {

PolyElement poly_monomial(const LieAlgebraData& g, const std::string& s) {
    PolyElement p;
    p.add_term(parse_monomial(s, g), Rational(1));
    return p;
}

}  // namespace

TEST_CASE("g[t]-action basics") {
    LieAlgebraData g = build("A1");
    CHECK(gt_act(g, g.e_index(0), 0, PolyElement::unit()).is_zero());
    CHECK(gt_act(g, 0, 3, PolyElement::unit()).is_zero());

    // e_theta(0) . f_theta(-1) = [e,f](-1) = h(-1)
    PolyElement r = gt_act(g, g.e_index(0), 0, poly_monomial(g, "f[1](-1) * 1"));
    CHECK(r == poly_monomial(g, "h[1](-1) * 1"));

    // the mode constraint n - m > 0 kills the term
    CHECK(gt_act(g, g.f_index(0), 2, poly_monomial(g, "e[1](-1) * 1")).is_zero());
    CHECK(gt_act(g, g.f_index(0), 1, poly_monomial(g, "e[1](-1) * 1")).is_zero());
    CHECK(!gt_act(g, g.f_index(0), 1, poly_monomial(g, "e[1](-2) * 1")).is_zero());

    CHECK_THROWS_AS(gt_act(g, 0, -1, PolyElement::unit()), std::invalid_argument);
}

TEST_CASE("degree is preserved and depth drops by m (homogeneous action)") {
    LieAlgebraData g = build("A2");
    Rng rng(12321);
    for (int instance = 0; instance < 30; ++instance) {
        PolyMonomial z = random_monomial(g, rng, rng.uniform(1, 5));
        PolyElement p;
        p.add_term(z, Rational(1));
        const long m = rng.uniform(0, 3);
        const int x = static_cast<int>(rng.uniform(0, g.dim - 1));
        PolyElement image = gt_act(g, x, m, p);
        for (const auto& [mono, c] : image.terms) {
            CHECK(mono.block_degree(GEN_E) + mono.block_degree(GEN_F) + mono.block_degree(GEN_H) ==
                  z.block_degree(GEN_E) + z.block_degree(GEN_F) + z.block_degree(GEN_H));
            CHECK(mono.depth() == z.depth() - m);
        }
    }
}

TEST_CASE("principal symbol") {
    LieAlgebraData g = build("A1");
    const Rational k = rat(1);
    VAVector single = VAVector::zero(k);
    single.add_term(parse_monomial("f[1](-2) * h[1](-1) * 1", g), rat(7));
    PolyElement sym = symbol(single);
    REQUIRE(sym.terms.size() == 1);
    CHECK(sym.terms.begin()->first == parse_monomial("f[1](-2) * h[1](-1) * 1", g));
    CHECK(sym.terms.begin()->second == rat(7));

    VAVector mixed = parse_va_element("e[1](-1) * 1 + h[1](-2) * 1", g, k);
    CHECK(symbol(mixed) == poly_monomial(g, "e[1](-1) * 1"));

    // the depth-0 part of the Sugawara vector is the quadratic invariant
    VAVector S = sugawara_vector(g, k);
    CHECK(S.min_depth() == 0);
    CHECK(symbol(S) == quadratic_casimir(g));

    CHECK_THROWS_AS(symbol(VAVector::zero(k)), std::invalid_argument);
}

TEST_CASE("Zhu projection") {
    LieAlgebraData g = build("A1");
    const Rational k = rat(1);
    CHECK(gstar_string(zhu_project(poly_monomial(g, "e[1](-1)^2 * 1"))) == "e[1]^2");
    CHECK(zhu_project(poly_monomial(g, "h[1](-2) * 1")).is_zero());

    // zhu(v) = zhu(symbol(v)) for every v
    Rng rng(515151);
    for (int instance = 0; instance < 25; ++instance) {
        VAVector v = random_vector(g, rng, k, 4);
        CHECK(zhu_project(v) == zhu_project(symbol(v)));
        CHECK(zhu_project(v).is_zero() == (v.min_depth() > 0));
    }
}

TEST_CASE("translation derivation on the graded side") {
    LieAlgebraData g = build("A1");
    CHECK(translate(poly_monomial(g, "e[1](-1) * 1")) == poly_monomial(g, "e[1](-2) * 1"));
    CHECK(translate(PolyElement::unit()).is_zero());
    PolyElement two_factors = translate(poly_monomial(g, "h[1](-2) * 1"));
    REQUIRE(two_factors.terms.size() == 1);
    CHECK(two_factors.terms.begin()->second == rat(2));

    PolyElement p = quadratic_casimir(g);
    for (long j = 0; j <= 5; ++j) {
        CHECK(p.min_depth() == j);
        p = translate(p);
    }
}

TEST_CASE("quadratic invariant") {
    LieAlgebraData a1 = build("A1");
    CHECK(quadratic_casimir(a1) == parse_poly_element("1/4 * h[1](-1)^2 * 1 + e[1](-1) * f[1](-1) * 1", a1));
    for (const auto& name : {std::string("A1"), std::string("A2"), std::string("C2")}) {
        LieAlgebraData g = build(name);
        PolyElement p1 = quadratic_casimir(g);
        INFO(name);
        for (int b = 0; b < g.dim; ++b) CHECK(gt_act(g, b, 0, p1).is_zero());
        CHECK(!zhu_project(p1).is_zero());
    }
}

TEST_CASE("translates of the invariant stay g[t]-singular with depth j") {
    for (const auto& name : {std::string("A1"), std::string("A2")}) {
        LieAlgebraData g = build(name);
        PolyElement p = quadratic_casimir(g);
        for (long j = 0; j <= 4; ++j) {
            INFO(name << " j=" << j);
            CHECK(p.min_depth() == j);
            CHECK(is_gt_singular(g, p));
            CHECK(zhu_project(p).is_zero() == (j >= 1));
            p = translate(p);
        }
    }
}

TEST_CASE("symbol intertwines the actions when no leading terms cancel") {
    LieAlgebraData g = build("A1");
    const Rational k = rat(1, 3);
    Straightener s(g, k);
    Rng rng(909090);
    long checked = 0;
    for (int instance = 0; instance < 60; ++instance) {
        PBWMonomial z = random_monomial(g, rng, rng.uniform(1, 4));
        const long m = rng.uniform(0, 2);
        const int x = static_cast<int>(rng.uniform(0, g.dim - 1));
        VAVector v = VAVector::zero(k);
        v.add_term(z, Rational(1));
        VAVector image = s.act(x, static_cast<int>(m), v);
        if (image.is_zero()) continue;
        if (image.min_depth() != z.depth() - m) continue;  // leading-term cancellation
        PolyElement pz;
        pz.add_term(z, Rational(1));
        CHECK(symbol(image) == gt_act(g, x, m, pz));
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("poly element parsing and printing") {
    LieAlgebraData g = build("A2");
    PolyElement p = parse_poly_element("2 * e[1](-1) * f[2](-3) * 1 - 1/3 * h[2](-1)^2 * 1", g);
    CHECK(parse_poly_element(p.to_string(), g) == p);
    CHECK(poly_mul(poly_monomial(g, "e[1](-1) * 1"), poly_monomial(g, "e[1](-1) * 1")) ==
          poly_monomial(g, "e[1](-1)^2 * 1"));
}
