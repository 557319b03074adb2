#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bcj/random_gen.hpp"

using namespace bcj;

namespace {

IntVector ivec(const std::string& text, const GenusContext& ctx) {
    return parse_int_vector(text, ctx);
}

void check_gram_is_standard(const IntSymplecticSubgroup& u) {
    for (std::size_t i = 0; i < u.pairs.size(); ++i) {
        CHECK(int_form(u.pairs[i].x, u.pairs[i].y) == 1);
        for (std::size_t j = 0; j < u.pairs.size(); ++j) {
            if (i == j) continue;
            CHECK(int_form(u.pairs[i].x, u.pairs[j].x) == 0);
            CHECK(int_form(u.pairs[i].x, u.pairs[j].y) == 0);
            CHECK(int_form(u.pairs[i].y, u.pairs[j].y) == 0);
        }
    }
}

} // namespace

TEST_CASE("integral intersection numbers") {
    GenusContext ctx(2);
    CHECK(int_form(ivec("a1", ctx), ivec("b1", ctx)) == 1);
    CHECK(int_form(ivec("b1", ctx), ivec("a1", ctx)) == -1);
    CHECK(int_form(ivec("a1 + 2b2", ctx), ivec("a2", ctx)) == -2);
    CHECK_THROWS_AS(int_form(ivec("a1", ctx), IntVector(6)), DimensionMismatch);
}

TEST_CASE("pair and subgroup invariants are enforced") {
    GenusContext ctx(2);
    CHECK_THROWS_AS(IntSymplecticPair(ivec("3a1", ctx), ivec("b1", ctx)), NotSymplectic);
    IntSymplecticPair p1(ivec("a1", ctx), ivec("b1", ctx));
    IntSymplecticPair p2(ivec("a2", ctx), ivec("b2", ctx));
    IntSymplecticPair bad(ivec("a1 + a2", ctx), ivec("b2", ctx));
    CHECK_NOTHROW(IntSymplecticSubgroup({p1, p2}));
    CHECK_THROWS_AS(IntSymplecticSubgroup({p1, bad}), NotSymplectic);
}

TEST_CASE("express recovers exact coefficients") {
    GenusContext ctx(2);
    IntSymplecticSubgroup full = extend_to_symplectic_basis(IntSymplecticSubgroup{}, ctx);
    auto coeffs = express(ivec("a1", ctx), full);
    CHECK(coeffs == std::vector<IntScalar>{1, 0, 0, 0});
    CHECK(express(ivec("2a1 + 3b2", ctx), full) == std::vector<IntScalar>{2, 0, 0, 3});
    IntSymplecticSubgroup u1{{IntSymplecticPair(ivec("a1", ctx), ivec("b1", ctx))}};
    CHECK_THROWS_AS(express(ivec("a2", ctx), u1), NotInSpan);
}

TEST_CASE("basis extension produces exact standard Gram matrices") {
    GenusContext c1(1);
    check_gram_is_standard(extend_to_symplectic_basis(IntSymplecticSubgroup{}, c1));

    GenusContext c2(2);
    IntSymplecticSubgroup partial{{IntSymplecticPair(ivec("a1", c2), ivec("b1", c2))}};
    IntSymplecticSubgroup full = extend_to_symplectic_basis(partial, c2);
    CHECK(full.rank() == 4);
    check_gram_is_standard(full);

    IntSymplecticSubgroup tilted{{IntSymplecticPair(ivec("a1 + 2a2", c2), ivec("b1", c2))}};
    check_gram_is_standard(extend_to_symplectic_basis(tilted, c2));

    std::mt19937_64 rng(59);
    for (int g = 2; g <= 5; ++g) {
        GenusContext ctx(g);
        for (int t = 0; t < 40; ++t) {
            int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(g));
            IntSymplecticSubgroup start = standard_block(1, m, ctx);
            IntSymplecticSubgroup moved = random_transvected(rng, start, ctx, 4, false);
            IntSymplecticSubgroup full2 = extend_to_symplectic_basis(moved, ctx);
            CHECK(full2.rank() == ctx.dim());
            check_gram_is_standard(full2);
        }
    }
}

TEST_CASE("orthogonal complement bases") {
    GenusContext c3(3);
    IntSymplecticSubgroup u{{IntSymplecticPair(ivec("a1", c3), ivec("b1", c3))}};
    IntSymplecticSubgroup comp = orthogonal_complement_basis(u, c3);
    CHECK(comp.rank() == 4);
    CHECK(orthogonal(u, comp));
    check_gram_is_standard(comp);

    IntSymplecticSubgroup full = extend_to_symplectic_basis(IntSymplecticSubgroup{}, c3);
    CHECK(orthogonal_complement_basis(full, c3).rank() == 0);

    std::mt19937_64 rng(61);
    GenusContext c4(4);
    for (int t = 0; t < 50; ++t) {
        IntSymplecticSubgroup moved =
            random_transvected(rng, standard_block(1, 2, c4), c4, 5, false);
        IntSymplecticSubgroup c = orthogonal_complement_basis(moved, c4);
        CHECK(moved.rank() + c.rank() == c4.dim());
        CHECK(orthogonal(moved, c));
        check_gram_is_standard(c);
    }
}

TEST_CASE("mod-2 reduction commutes with the integral constructions") {
    std::mt19937_64 rng(67);
    GenusContext c4(4);
    for (int t = 0; t < 50; ++t) {
        IntSymplecticSubgroup moved =
            random_transvected(rng, standard_block(1, 2, c4), c4, 5, false);
        IntSymplecticSubgroup full = extend_to_symplectic_basis(moved, c4);
        // reduction of an integral symplectic basis is a GF(2) symplectic basis
        Gf2SymplecticSubspace red = mod2_subspace(full, c4);
        CHECK(red.space.dim() == c4.dim());
        for (std::size_t i = 0; i < red.sbasis.size(); ++i)
            for (std::size_t j = 0; j < red.sbasis.size(); ++j) {
                CHECK(gf2_form(red.sbasis[i].first, red.sbasis[j].second, c4) == (i == j ? 1 : 0));
                CHECK(gf2_form(red.sbasis[i].first, red.sbasis[j].first, c4) == 0);
            }
        CHECK(sigma_of_int_subgroup(moved, c4).poly ==
              sigma_of_subspace(mod2_subspace(moved, c4), c4).poly);
    }
    // mod-2 reduction kills even components
    GenusContext c2(2);
    IntSymplecticSubgroup u{{IntSymplecticPair(ivec("a1 + 2b2", c2), ivec("b1", c2))}};
    CHECK(format_poly(sigma_of_int_subgroup(u, c2).poly) == "a1*b1");
}

TEST_CASE("lattice keys identify subgroups up to basis change") {
    GenusContext c2(2);
    IntSymplecticSubgroup u{{IntSymplecticPair(ivec("a1", c2), ivec("b1", c2))}};
    //同 lattice, different basis: (a1, a1 + b1)
    IntSymplecticSubgroup v{{IntSymplecticPair(ivec("a1", c2), ivec("a1 + b1", c2))}};
    IntSymplecticSubgroup w{{IntSymplecticPair(ivec("a2", c2), ivec("b2", c2))}};
    CHECK(lattice_key(u) == lattice_key(v));
    CHECK(lattice_key(u) != lattice_key(w));
    CHECK(subgroup_contains_subgroup(u, v));
}

TEST_CASE("primitive representatives with the odd-even-even pattern") {
    auto r = primitive_odd_rep(3, 0, 0);
    CHECK((r[0] == 1 && r[1] == 0 && r[2] == 0));
    r = primitive_odd_rep(3, 6, 12);
    CHECK((r[0] == 1 && r[1] == 2 && r[2] == 4));
    r = primitive_odd_rep(5, 2, 0);
    CHECK((r[0] == 5 && r[1] == 2 && r[2] == 0));
    r = primitive_odd_rep(-3, 6, 0);
    CHECK((r[0] == 1 && r[1] == -2 && r[2] == 0));
    CHECK_THROWS_AS(primitive_odd_rep(2, 0, 0), BadParityPattern);
    CHECK_THROWS_AS(primitive_odd_rep(1, 1, 0), BadParityPattern);
}

TEST_CASE("parity bezout identity") {
    auto check_identity = [](const IntScalar& a1, const IntScalar& a2, const IntScalar& a3) {
        auto b = solve_parity_bezout(a1, a2, a3);
        CHECK((2 * a1 + 1) * (2 * b[0] + 1) + 4 * a2 * b[1] + 4 * a3 * b[2] == 1);
    };
    check_identity(0, 0, 0);
    check_identity(1, 1, 0);
    check_identity(2, 0, 1);
    CHECK_THROWS_AS(solve_parity_bezout(1, 3, 0), NotCoprime);

    std::mt19937_64 rng(71);
    int done = 0;
    while (done < 10000) {
        IntScalar a1 = static_cast<long>(rng() % 2001) - 1000;
        IntScalar a2 = static_cast<long>(rng() % 2001) - 1000;
        IntScalar a3 = static_cast<long>(rng() % 2001) - 1000;
        using boost::multiprecision::gcd;
        if (gcd(gcd(IntScalar(2 * a1 + 1), a2), a3) != 1) continue;
        check_identity(a1, a2, a3);
        ++done;
    }
}

TEST_CASE("adapted U2' construction") {
    GenusContext c4(4);
    IntSymplecticPair u1(ivec("a1", c4), ivec("b1", c4));
    IntSymplecticPair u2(ivec("a2", c4), ivec("b2", c4));

    SECTION("trivial representative") {
        AdaptedU2 a = build_adapted_U2prime(u1, u2, ivec("a2", c4), c4);
        CHECK(a.u2prime.x == ivec("a2", c4));
        CHECK(a.u2prime.y == ivec("b2", c4));
        CHECK(a.d == 1);
    }
    SECTION("x2 already primitive") {
        AdaptedU2 a = build_adapted_U2prime(u1, u2, ivec("a2 + 2b2", c4), c4);
        CHECK(a.u2prime.x == ivec("a2 + 2b2", c4));
        CHECK(int_form(a.u2prime.x, a.u2prime.y) == 1);
    }
    SECTION("residual along the complement") {
        AdaptedU2 a = build_adapted_U2prime(u1, u2, ivec("3a2 + 2a3", c4), c4);
        CHECK(a.u2prime.x == ivec("3a2 + 2a3", c4));
        CHECK(int_form(a.u2prime.x, a.u2prime.y) == 1);
    }
    SECTION("parity precondition") {
        CHECK_THROWS_AS(build_adapted_U2prime(u1, u2, ivec("a1", c4), c4), BadParityPattern);
    }
    SECTION("randomized postconditions") {
        std::mt19937_64 rng(73);
        for (int t = 0; t < 1000; ++t) {
            IntVector x2 = ivec("a2", c4) + IntScalar(2) * random_small_int_vector(rng, c4, 3);
            AdaptedU2 a = build_adapted_U2prime(u1, u2, x2, c4);
            // unimodularity
            CHECK(int_form(a.u2prime.x, a.u2prime.y) == 1);
            // orthogonality to U1
            IntSymplecticSubgroup u1g{{u1}}, u2pg{{a.u2prime}};
            CHECK(orthogonal(u1g, u2pg));
            // mod-2 reductions match (a2, b2)
            CHECK(a.u2prime.x.mod2() == ivec("a2", c4).mod2());
            CHECK(a.u2prime.y.mod2() == ivec("b2", c4).mod2());
            // exact decomposition of x2 in the adapted frame
            CHECK(x2 == (2 * a.zeta1) * ivec("a1", c4) + (2 * a.eta1) * ivec("b1", c4) +
                            a.d * a.u2prime.x);
            CHECK((a.d & 1) == 1);
        }
    }
}

TEST_CASE("V1' construction") {
    GenusContext c4(4);
    auto std_basis = extend_to_symplectic_basis(IntSymplecticSubgroup{}, c4);
    V1Frame frame{ivec("a1", c4), ivec("b1", c4), ivec("a2", c4), ivec("b2", c4),
                  ivec("a3", c4), ivec("a4", c4), ivec("b4", c4)};

    SECTION("all coefficients zero") {
        IntSymplecticPair p = build_V1prime(V1Coefficients{0, 0, 0, 0, 0, 0, 0}, frame);
        CHECK(p.x == ivec("a1 + 2a4", c4));
        CHECK(p.y == ivec("b1", c4));
    }
    SECTION("invalid frame is rejected") {
        V1Frame broken = frame;
        broken.b2p = ivec("b1", c4);
        CHECK_THROWS_AS(build_V1prime(V1Coefficients{0, 0, 0, 0, 0, 0, 0}, broken), FrameInvalid);
    }
    SECTION("randomized postconditions") {
        std::mt19937_64 rng(79);
        for (int t = 0; t < 100; ++t) {
            auto r = [&](int lo, int hi) {
                return IntScalar(static_cast<long>(rng() % static_cast<unsigned>(hi - lo + 1)) + lo);
            };
            V1Coefficients cs{r(-3, 3), r(-3, 3), r(-3, 3), r(-3, 3), r(-3, 3), r(-3, 3), r(-3, 3)};
            IntSymplecticPair p = build_V1prime(cs, frame);
            CHECK(int_form(p.x, p.y) == 1);
            CHECK(p.x.mod2() == frame.a1.mod2());
            CHECK(p.y.mod2() == frame.b1.mod2());
            // orthogonal to the V2 synthesized from the same coefficients
            IntVector x2 = (2 * cs.zeta1) * frame.a1 + (2 * cs.eta1) * frame.b1 +
                           (2 * cs.zeta2p + 1) * frame.a2p;
            IntVector y2 = (2 * cs.lambda1) * frame.a1 + (2 * cs.mu1) * frame.b1 +
                           (2 * cs.lambda2p) * frame.a2p + (2 * cs.mu2p + 1) * frame.b2p +
                           IntScalar(2) * frame.a3p;
            CHECK(int_form(p.x, x2) == 0);
            CHECK(int_form(p.x, y2) == 0);
            CHECK(int_form(p.y, x2) == 0);
            CHECK(int_form(p.y, y2) == 0);
        }
    }
}

TEST_CASE("integer vector text syntax round-trips") {
    GenusContext c4(4);
    for (std::string s : {"2a1 - b3 + 4b4", "a1", "-a1 + b2", "0"}) {
        CHECK(format_int_vector(parse_int_vector(s, c4)) == s);
    }
    CHECK_THROWS_AS(parse_int_vector("a9", c4), DimensionMismatch);
    CHECK_THROWS_AS(parse_int_vector("", c4), ParseError);
}
