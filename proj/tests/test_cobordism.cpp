#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kh/cobordism.hpp"
#include "kh/matcat.hpp"
#include "support/gen.hpp"

using namespace kh;

namespace {

CobLin saddle_2strand() {
    auto bot = make_smoothing(4, {{0, 1}, {2, 3}});
    auto top = make_smoothing(4, {{0, 3}, {2, 1}});
    ReducedCobordism c;
    c.block = {0, 0, 0, 0};
    c.dots = {0};
    CobLin f(bot, top);
    f.add_term(c, 1);
    return f;
}

Coeff scalar_of(const CobLin& f) {
    REQUIRE(f.bottom.boundary_count == 0);
    REQUIRE(f.bottom.loops.empty());
    if (f.terms.empty()) return 0;
    REQUIRE(f.terms.size() == 1);
    REQUIRE(f.terms.begin()->first.block.empty());
    return f.terms.begin()->second;
}

}  // namespace

TEST_CASE("closed surface evaluation: sphere, dotted sphere, two dots, torus") {
    auto circle = OrientedSmoothing::closed({1});
    CobLin cup = deloop_cup(circle, 0, false);       // {} -> O
    CobLin dcup = deloop_cup(circle, 0, true);
    CobLin cap = deloop_cap(circle, 0, false);       // O -> {}
    CobLin dcap = deloop_cap(circle, 0, true);

    CHECK(scalar_of(compose_cob(cup, cap)) == 0);    // sphere
    CHECK(scalar_of(compose_cob(cup, dcap)) == 1);   // dotted sphere
    CHECK(scalar_of(compose_cob(dcup, cap)) == 1);
    CHECK(scalar_of(compose_cob(dcup, dcap)) == 0);  // two dots

    // bent tube {} -> {O, O} glued to its reverse: a torus, value 2
    auto two = OrientedSmoothing::closed({1, 1});
    ReducedCobordism bent;
    bent.block = {0, 0};
    bent.dots = {0};
    CobLin birth(OrientedSmoothing::closed({}), two);
    birth.add_term(bent, 1);
    CobLin death(two, OrientedSmoothing::closed({}));
    death.add_term(bent, 1);
    CHECK(scalar_of(compose_cob(birth, death)) == 2);
}

TEST_CASE("delooping isomorphism identities") {
    // the composites that make O = {}{+1} (+) {}{-1} an isomorphism
    auto circle = OrientedSmoothing::closed({1});
    CobLin fwd_plus = deloop_cap(circle, 0, true);
    CobLin fwd_minus = deloop_cap(circle, 0, false);
    CobLin bwd_plus = deloop_cup(circle, 0, false);
    CobLin bwd_minus = deloop_cup(circle, 0, true);

    CHECK(scalar_of(compose_cob(bwd_plus, fwd_plus)) == 1);
    CHECK(scalar_of(compose_cob(bwd_minus, fwd_minus)) == 1);
    CHECK(scalar_of(compose_cob(bwd_plus, fwd_minus)) == 0);
    CHECK(scalar_of(compose_cob(bwd_minus, fwd_plus)) == 0);

    // neck cutting: cup.dcap + dcup.cap = identity on the circle
    CobLin neck = compose_cob(fwd_plus, bwd_plus);
    neck += compose_cob(fwd_minus, bwd_minus);
    CHECK(neck.terms == identity_cobordism(circle).terms);
}

TEST_CASE("degree of basic cobordisms") {
    khtest::Rng rng(101);
    for (int k = 0; k <= 4; ++k) {
        auto s = khtest::random_smoothing(rng, k, 1);
        auto id = identity_cobordism(s);
        CHECK(degree(s, s, id.terms.begin()->first) == 0);
    }
    auto sad = saddle_2strand();
    CHECK(degree(sad.bottom, sad.top, sad.terms.begin()->first) == -1);

    auto arc = make_smoothing(2, {{0, 1}});
    ReducedCobordism dotted;
    dotted.block = {0, 0};
    dotted.dots = {1};
    CHECK(degree(arc, arc, dotted) == -2);
}

TEST_CASE("category laws for compose_cob") {
    khtest::Rng rng(2024);
    for (int it = 0; it < 200; ++it) {
        int k = khtest::uniform(rng, 0, 3);
        auto s = khtest::random_smoothing(rng, k);
        auto t = khtest::random_smoothing(rng, k);
        auto f = khtest::random_coblin(rng, s, t);
        auto idf = compose_cob(identity_cobordism(s), f);
        auto fid = compose_cob(f, identity_cobordism(t));
        CHECK(idf.terms == f.terms);
        CHECK(fid.terms == f.terms);
    }
}

TEST_CASE("compose_cob is associative and bilinear") {
    khtest::Rng rng(5150);
    for (int it = 0; it < 300; ++it) {
        int k = khtest::uniform(rng, 0, 3);
        auto s = khtest::random_smoothing(rng, k);
        auto t = khtest::random_smoothing(rng, k);
        auto u = khtest::random_smoothing(rng, k);
        auto v = khtest::random_smoothing(rng, k);
        auto f = khtest::random_coblin(rng, s, t);
        auto g = khtest::random_coblin(rng, t, u);
        auto h = khtest::random_coblin(rng, u, v);
        auto lhs = compose_cob(compose_cob(f, g), h);
        auto rhs = compose_cob(f, compose_cob(g, h));
        CHECK(lhs.terms == rhs.terms);

        auto g2 = khtest::random_coblin(rng, t, u);
        CobLin gsum = g;
        gsum += g2;
        auto left = compose_cob(f, gsum);
        auto right = compose_cob(f, g);
        right += compose_cob(f, g2);
        CHECK(left.terms == right.terms);
    }
}

TEST_CASE("degree is additive under composition") {
    khtest::Rng rng(77);
    int checked = 0;
    while (checked < 100) {
        int k = khtest::uniform(rng, 0, 3);
        auto s = khtest::random_smoothing(rng, k);
        auto t = khtest::random_smoothing(rng, k);
        auto u = khtest::random_smoothing(rng, k);
        auto f = khtest::random_cobordism(rng, s, t);
        auto g = khtest::random_cobordism(rng, t, u);
        auto fg = compose_cob(f, g);
        if (fg.is_zero()) continue;
        int df = degree(s, t, f.terms.begin()->first);
        int dg = degree(t, u, g.terms.begin()->first);
        for (const auto& [c, x] : fg.terms) CHECK(degree(s, u, c) == df + dg);
        ++checked;
    }
}

TEST_CASE("boundary mismatch is rejected") {
    auto s = make_smoothing(2, {{0, 1}});
    auto t = make_smoothing(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(compose_cob(identity_cobordism(s), identity_cobordism(t)), Error);
}

TEST_CASE("mat_compose: identity, associativity, shape errors") {
    khtest::Rng rng(31337);
    for (int it = 0; it < 30; ++it) {
        int k = khtest::uniform(rng, 0, 2);
        MatObject A, B, C;
        for (int i = 0, n = khtest::uniform(rng, 1, 3); i < n; ++i)
            A.push_back({khtest::random_smoothing(rng, k), khtest::uniform(rng, -2, 2)});
        for (int i = 0, n = khtest::uniform(rng, 1, 3); i < n; ++i)
            B.push_back({khtest::random_smoothing(rng, k), khtest::uniform(rng, -2, 2)});
        for (int i = 0, n = khtest::uniform(rng, 1, 3); i < n; ++i)
            C.push_back({khtest::random_smoothing(rng, k), khtest::uniform(rng, -2, 2)});

        MatMorphism F = MatMorphism::zero(A, B), G = MatMorphism::zero(B, C);
        for (int i = 0; i < F.rows(); ++i)
            for (int j = 0; j < F.cols(); ++j)
                F.cells[i][j] = khtest::random_coblin(rng, A[j].s, B[i].s, 1);
        for (int i = 0; i < G.rows(); ++i)
            for (int j = 0; j < G.cols(); ++j)
                G.cells[i][j] = khtest::random_coblin(rng, B[j].s, C[i].s, 1);

        auto GF = mat_compose(G, F);
        CHECK(GF.rows() == int(C.size()));
        CHECK(GF.cols() == int(A.size()));
        auto FI = mat_compose(F, MatMorphism::identity(A));
        for (int i = 0; i < F.rows(); ++i)
            for (int j = 0; j < F.cols(); ++j) CHECK(FI.cells[i][j].terms == F.cells[i][j].terms);

        MatObject D;
        for (int i = 0, n = khtest::uniform(rng, 1, 2); i < n; ++i)
            D.push_back({khtest::random_smoothing(rng, k), 0});
        MatMorphism H = MatMorphism::zero(C, D);
        for (int i = 0; i < H.rows(); ++i)
            for (int j = 0; j < H.cols(); ++j)
                H.cells[i][j] = khtest::random_coblin(rng, C[j].s, D[i].s, 1);
        auto lhs = mat_compose(mat_compose(H, G), F);
        auto rhs = mat_compose(H, mat_compose(G, F));
        for (int i = 0; i < lhs.rows(); ++i)
            for (int j = 0; j < lhs.cols(); ++j)
                CHECK(lhs.cells[i][j].terms == rhs.cells[i][j].terms);
    }

    MatObject A{{make_smoothing(2, {{0, 1}}), 0}};
    MatObject B{{make_smoothing(2, {{0, 1}}), 0}, {make_smoothing(2, {{0, 1}}), 1}};
    auto F = MatMorphism::zero(A, B);
    CHECK_THROWS_AS(mat_compose(F, F), Error);
}
