#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bcj/arf_ideal.hpp"
#include "bcj/random_gen.hpp"

using namespace bcj;

namespace {

BoolPoly poly(const std::string& text, const GenusContext& ctx) { return parse_poly(text, ctx); }

BoolPoly random_poly(std::mt19937_64& rng, const GenusContext& ctx, int terms) {
    BoolPoly p(ctx.g);
    for (int i = 0; i < terms; ++i)
        p.monos.push_back(static_cast<Monomial>(rng()) & ctx.full_mask());
    detail::sort_and_cancel(p.monos);
    return p;
}

// number of generator assignments on which the polynomial evaluates to 1
std::uint64_t support_size(const BoolPoly& p, const GenusContext& ctx) {
    std::uint64_t n = 0;
    for (std::uint64_t point = 0; point < (std::uint64_t(1) << ctx.dim()); ++point) {
        int val = 0;
        for (Monomial m : p.monos)
            if ((m & ~static_cast<Monomial>(point)) == 0) val ^= 1;  // all variables set
        n += static_cast<std::uint64_t>(val);
    }
    return n;
}

} // namespace

TEST_CASE("bar expansion of homology classes") {
    GenusContext ctx(2);
    CHECK(bar(parse_gf2_vector("a1", ctx), ctx) == poly("a1", ctx));
    CHECK(bar(parse_gf2_vector("a1+b1", ctx), ctx) == poly("a1 + b1 + 1", ctx));
    CHECK(bar(parse_gf2_vector("a1+a2", ctx), ctx) == poly("a1 + a2", ctx));
    CHECK(bar(Gf2Vector(0, 4), ctx).is_zero());
}

TEST_CASE("relation (1) holds for all pairs") {
    // exhaustive at g <= 2
    for (int g = 1; g <= 2; ++g) {
        GenusContext ctx(g);
        for (std::uint32_t x = 0; x <= ctx.full_mask(); ++x)
            for (std::uint32_t y = 0; y <= ctx.full_mask(); ++y) {
                Gf2Vector vx(x, ctx.dim()), vy(y, ctx.dim());
                BoolPoly rhs = add(bar(vx, ctx), bar(vy, ctx));
                if (gf2_form(vx, vy, ctx)) rhs = add(rhs, BoolPoly::one(ctx));
                CHECK(bar(vx + vy, ctx) == rhs);
            }
    }
    // randomized at g <= 4
    std::mt19937_64 rng(3);
    for (int g = 3; g <= 4; ++g) {
        GenusContext ctx(g);
        for (int t = 0; t < 1000; ++t) {
            Gf2Vector vx(static_cast<std::uint32_t>(rng()) & ctx.full_mask(), ctx.dim());
            Gf2Vector vy(static_cast<std::uint32_t>(rng()) & ctx.full_mask(), ctx.dim());
            BoolPoly rhs = add(bar(vx, ctx), bar(vy, ctx));
            if (gf2_form(vx, vy, ctx)) rhs = add(rhs, BoolPoly::one(ctx));
            CHECK(bar(vx + vy, ctx) == rhs);
        }
    }
}

TEST_CASE("ring structure: idempotent, commutative, associative, unital") {
    GenusContext ctx(2);
    BoolPoly xa1 = poly("a1", ctx);
    CHECK(mul(xa1, xa1) == xa1);
    BoolPoly p = poly("a1*b1 + a2 + 1", ctx);
    CHECK(mul(BoolPoly::one(ctx), p) == p);
    BoolPoly q = poly("a1 + 1", ctx);
    CHECK(mul(q, q) == q);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        BoolPoly a = random_poly(rng, ctx, 3), b = random_poly(rng, ctx, 3),
                 c = random_poly(rng, ctx, 2);
        CHECK(mul(a, b) == mul(b, a));
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, a) == a);
        CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    }
}

TEST_CASE("arf element") {
    CHECK(format_poly(arf(GenusContext(1))) == "a1*b1");
    CHECK(format_poly(arf(GenusContext(2))) == "a1*b1 + a2*b2");
    CHECK(arf(GenusContext(3)).monos.size() == 3);
    CHECK(degree_at_most(arf(GenusContext(2)), 2));
    CHECK_FALSE(degree_at_most(arf(GenusContext(2)), 1));
    CHECK(degree_at_most(poly("a1*b1*a2", GenusContext(2)), 3));
}

TEST_CASE("ideal echelon spans the monomial multiples of arf") {
    for (int g = 1; g <= 4; ++g) {
        GenusContext ctx(g);
        auto ideal = build_arf_ideal(ctx);
        // dimension oracle: in a Boolean ring the principal ideal of f has
        // one dimension per point of supp(f)
        CHECK(static_cast<std::uint64_t>(ideal->dim()) == support_size(arf(ctx), ctx));
        CHECK(ideal->contains(arf(ctx)));
        std::mt19937_64 rng(17);
        for (int t = 0; t < 20; ++t) {
            Monomial m = static_cast<Monomial>(rng()) & ctx.full_mask();
            BoolPoly mono(ctx.g);
            mono.monos = {m};
            CHECK(ideal->contains(mul(mono, arf(ctx))));
        }
    }
    GenusContext c2(2);
    auto ideal2 = build_arf_ideal(c2);
    CHECK(ideal2->contains(poly("a1*b1 + a1*a2*b2", c2)));  // a1 * arf
}

TEST_CASE("normal forms are canonical coset representatives") {
    GenusContext ctx(3);
    auto ideal = build_arf_ideal(ctx);
    CHECK(normal_form(arf(ctx), ideal.get()).is_zero());
    CHECK(normal_form(poly("a1*b1 + a2*b2 + a3*b3", ctx), ideal.get()).is_zero());
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        BoolPoly p = random_poly(rng, ctx, 4), q = random_poly(rng, ctx, 4);
        BoolPoly np = normal_form(p, ideal.get());
        CHECK(normal_form(np, ideal.get()) == np);                                 // idempotent
        CHECK(normal_form(add(p, q), ideal.get()) ==
              add(normal_form(p, ideal.get()), normal_form(q, ideal.get())));     // linear
        CHECK(normal_form(mul(p, arf(ctx)), ideal.get()).is_zero());               // kills multiples
        // membership characterization in a Boolean ring: h in (f) iff h*f = h
        CHECK((normal_form(p, ideal.get()).is_zero()) == (mul(p, arf(ctx)) == p));
    }
    // no ideal: identity (the boundary-surface algebra)
    BoolPoly p = poly("a3*b3", ctx);
    CHECK(normal_form(p, nullptr) == p);
}

TEST_CASE("degree-2 fast path agrees with the echelon on its whole domain") {
    for (int g = 1; g <= 5; ++g) {
        GenusContext ctx(g);
        auto ideal = build_arf_ideal(ctx);
        std::vector<Monomial> monos = {0};
        for (int i = 0; i < ctx.dim(); ++i) monos.push_back(1u << i);
        for (int i = 0; i < ctx.dim(); ++i)
            for (int j = i + 1; j < ctx.dim(); ++j) monos.push_back((1u << i) | (1u << j));
        for (Monomial m : monos) {
            BoolPoly p(ctx.g);
            p.monos = {m};
            CHECK(sigma_normal_form(p, ctx) == normal_form(p, ideal.get()));
        }
        std::mt19937_64 rng(29);
        for (int t = 0; t < 100; ++t) {
            BoolPoly p(ctx.g);
            for (int i = 0; i < 5; ++i) p.monos.push_back(monos[rng() % monos.size()]);
            detail::sort_and_cancel(p.monos);
            CHECK(sigma_normal_form(p, ctx) == normal_form(p, ideal.get()));
        }
    }
}

TEST_CASE("quotient dimensions in degree 2") {
    for (int g = 1; g <= 5; ++g) {
        GenusContext ctx(g);
        PolyEchelon ech;
        std::vector<Monomial> monos = {0};
        for (int i = 0; i < ctx.dim(); ++i) monos.push_back(1u << i);
        for (int i = 0; i < ctx.dim(); ++i)
            for (int j = i + 1; j < ctx.dim(); ++j) monos.push_back((1u << i) | (1u << j));
        CHECK(monos.size() == 1 + std::size_t(2 * g) + std::size_t(g * (2 * g - 1)));
        for (Monomial m : monos) {
            BoolPoly p(ctx.g);
            p.monos = {m};
            ech.insert(sigma_normal_form(p, ctx));
        }
        CHECK(ech.rank() == 2 * g * g + g);
        CHECK(B2PrimeBasis(ctx).dim() == 2 * g * g + g);
    }
}

TEST_CASE("ideal construction refuses unsupported genus") {
    CHECK_THROWS_AS(ArfIdealBasis(GenusContext(8)), UnsupportedGenus);
}

TEST_CASE("symplectic substitution action") {
    GenusContext ctx(2);
    BoolPoly p = poly("a1*b1 + a2 + 1", ctx);
    CHECK(sp_action(p, Gf2Matrix::identity(ctx), ctx) == p);

    // swap a1 <-> b1 fixes the arf element
    Gf2Matrix swap = Gf2Matrix::identity(ctx);
    std::swap(swap.cols[0], swap.cols[1]);
    REQUIRE(swap.is_symplectic(ctx));
    CHECK(sp_action(arf(ctx), swap, ctx) == arf(ctx));

    // transvection along a1
    Gf2Matrix tv = Gf2Matrix::transvection(1u, ctx);
    CHECK(sp_action(arf(ctx), tv, ctx) == arf(ctx));

    // a non-symplectic matrix is rejected
    Gf2Matrix bad = Gf2Matrix::identity(ctx);
    bad.cols[1] = bad.cols[0];
    CHECK_THROWS_AS(sp_action(p, bad, ctx), NotSymplectic);
}

TEST_CASE("sp_action is functorial and fixes arf") {
    std::mt19937_64 rng(31);
    for (int g = 2; g <= 4; ++g) {
        GenusContext ctx(g);
        for (int t = 0; t < (g == 4 ? 100 : 250); ++t) {
            Gf2Matrix m1 = random_transvection_product(rng, ctx, 3);
            Gf2Matrix m2 = random_transvection_product(rng, ctx, 3);
            BoolPoly p = random_poly(rng, ctx, 3);
            CHECK(sp_action(p, m1.compose(m2), ctx) == sp_action(sp_action(p, m2, ctx), m1, ctx));
            CHECK(sp_action(arf(ctx), m1, ctx) == arf(ctx));
        }
    }
}

TEST_CASE("polynomial text syntax round-trips exactly") {
    GenusContext ctx(2);
    for (std::string s : {"a1*b1 + a2*b2 + 1", "1", "a1", "a1*b1*a2*b2", "b2 + 1"}) {
        CHECK(format_poly(parse_poly(s, ctx)) == s);
    }
    CHECK(parse_poly("0", ctx).is_zero());
    CHECK(format_poly(BoolPoly::zero(ctx)) == "0");
    // duplicate terms cancel mod 2
    CHECK(parse_poly("a1 + a1", ctx).is_zero());
    CHECK_THROWS_AS(parse_poly("a9", ctx), DimensionMismatch);
    CHECK_THROWS_AS(parse_poly("x1", ctx), ParseError);
    std::mt19937_64 rng(37);
    for (int t = 0; t < 200; ++t) {
        BoolPoly p = random_poly(rng, ctx, 4);
        CHECK(parse_poly(format_poly(p), ctx) == p);
    }
}
