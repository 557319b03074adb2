#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "bcj/random_gen.hpp"
#include "bcj/sigma.hpp"

using namespace bcj;

namespace {

SigmaValue sigma_text(const std::string& subspace, const GenusContext& ctx,
                      SigmaMode mode = SigmaMode::closed) {
    return sigma_of_subspace(parse_gf2_subspace(subspace, ctx), ctx, mode);
}

// sum of bar products over an arbitrary (not necessarily canonical) list of
// basis pairs, reduced; used to probe basis independence directly
BoolPoly sigma_formula(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                       const GenusContext& ctx) {
    BoolPoly acc(ctx.g);
    for (auto [x, y] : pairs)
        acc = add(acc, mul(bar(Gf2Vector(x, ctx.dim()), ctx), bar(Gf2Vector(y, ctx.dim()), ctx)));
    return sigma_normal_form(acc, ctx);
}

} // namespace

TEST_CASE("sigma of standard splittings") {
    GenusContext c2(2);
    CHECK(format_poly(sigma_text("a1,b1", c2).poly) == "a1*b1");
    CHECK(format_poly(sigma_text("a1,b1,a2,b2", c2).poly) == "a1*b1 + a2*b2");

    GenusContext c3(3);
    // both splittings of one curve denote the same class
    SigmaValue v = sigma_text("a3,b3", c3);
    SigmaValue vperp = sigma_text("a1,b1,a2,b2", c3);
    CHECK(v.poly == vperp.poly);
    CHECK(format_poly(v.poly) == "a1*b1 + a2*b2");
    CHECK(degree_at_most(v.poly, 2));
    CHECK(v.poly == sigma_normal_form(v.poly, c3));

    // boundary mode has no quotient
    CHECK(format_poly(sigma_text("a3,b3", c3, SigmaMode::boundary).poly) == "a3*b3");
}

TEST_CASE("sigma is independent of the basis choice") {
    GenusContext c3(3);
    // exhaustive: all 6 ordered symplectic bases of every 2-dim subspace
    for (auto [u, v] : all_symplectic_2subspaces(c3)) {
        BoolPoly reference = sigma_of_pair(u, v, c3).poly;
        std::uint32_t w = u ^ v;
        for (auto [x, y] : {std::pair{u, v}, {v, u}, {u, w}, {w, u}, {v, w}, {w, v}}) {
            REQUIRE(form_raw(x, y) == 1);
            CHECK(sigma_formula({{x, y}}, c3) == reference);
        }
    }
    // randomized re-symplectizations of larger subspaces at g = 4: in-span
    // transvections map a symplectic basis to another basis of the same span
    std::mt19937_64 rng(41);
    GenusContext c4(4);
    for (int t = 0; t < 500; ++t) {
        int m = 1 + static_cast<int>(rng() % 2);  // rank 2 or 4
        Gf2Matrix mv = random_transvection_product(rng, c4, 5);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        std::uint32_t span_bits = 0;
        for (int i = 0; i < m; ++i) {
            pairs.emplace_back(mv.apply(1u << (2 * i)), mv.apply(1u << (2 * i + 1)));
            span_bits |= pairs.back().first | pairs.back().second;
        }
        BoolPoly reference = sigma_formula(pairs, c4);
        // rebase via a transvection along a vector of the span
        std::vector<std::uint32_t> elements;
        for (auto [x, y] : pairs) {
            elements.push_back(x);
            elements.push_back(y);
        }
        std::uint32_t dir = elements[rng() % elements.size()] ^
                            (rng() % 2 ? elements[rng() % elements.size()] : 0u);
        if (dir == 0) dir = elements.front();
        auto tv = [&](std::uint32_t x) { return form_raw(x, dir) ? (x ^ dir) : x; };
        std::vector<std::pair<std::uint32_t, std::uint32_t>> rebased;
        for (auto [x, y] : pairs) rebased.emplace_back(tv(x), tv(y));
        CHECK(sigma_formula(rebased, c4) == reference);
    }
}

TEST_CASE("unordered splitting symmetry: sigma(V) = sigma(V-perp)") {
    GenusContext c3(3);
    // exhaustive over all symplectic subspaces at g = 3: both trivial ones,
    // all 336 of dimension 2, and their 4-dimensional complements
    Gf2Subspace zero;
    zero.ambient_dim = c3.dim();
    CHECK(sigma_of_subspace(zero, c3).poly ==
          sigma_of_subspace(orthogonal_complement(zero, c3), c3).poly);
    for (auto [u, v] : all_symplectic_2subspaces(c3)) {
        Gf2Subspace s = pair_subspace(u, v, c3).space;
        Gf2Subspace c = orthogonal_complement(s, c3);
        CHECK(sigma_of_subspace(s, c3).poly == sigma_of_subspace(c, c3).poly);
        CHECK(sigma_of_subspace(c, c3).poly == sigma_of_subspace(s, c3).poly);
    }
    // sampled at g = 4
    std::mt19937_64 rng(43);
    GenusContext c4(4);
    for (int t = 0; t < 500; ++t) {
        int m = 1 + static_cast<int>(rng() % 3);
        Gf2Matrix mv = random_transvection_product(rng, c4, 6);
        std::vector<Gf2Vector> gens;
        for (int i = 0; i < 2 * m; ++i)
            gens.emplace_back(mv.apply(1u << i), c4.dim());
        Gf2Subspace s = Gf2Subspace::span(gens, c4);
        REQUIRE(is_symplectic(s, c4));
        CHECK(sigma_of_subspace(s, c4).poly ==
              sigma_of_subspace(orthogonal_complement(s, c4), c4).poly);
    }
}

TEST_CASE("sigma is injective on 2-dimensional subspaces for g <= 3") {
    for (int g = 1; g <= 3; ++g) {
        GenusContext ctx(g);
        std::set<std::vector<Monomial>> values;
        std::uint64_t n = 0;
        enumerate_symplectic_2subspaces(ctx, [&](std::uint32_t u, std::uint32_t v) {
            ++n;
            values.insert(sigma_of_pair(u, v, ctx).poly.monos);
        });
        CHECK(values.size() == n);
    }
}

TEST_CASE("pants additivity of sigma") {
    std::mt19937_64 rng(47);
    GenusContext c4(4);
    for (int t = 0; t < 200; ++t) {
        Gf2Matrix mv = random_transvection_product(rng, c4, 6);
        auto block = [&](int first, int count) {
            std::vector<Gf2Vector> gens;
            for (int i = 0; i < 2 * count; ++i)
                gens.emplace_back(mv.apply(1u << (2 * (first - 1) + i)), c4.dim());
            return Gf2Subspace::span(gens, c4);
        };
        Gf2Subspace v1 = block(1, 1), v2 = block(2, 1);
        Gf2Subspace v12 = block(1, 2);
        Gf2Subspace v3 = orthogonal_complement(v12, c4);
        BoolPoly s1 = sigma_of_subspace(v1, c4).poly;
        BoolPoly s2 = sigma_of_subspace(v2, c4).poly;
        BoolPoly s12 = sigma_of_subspace(v12, c4).poly;
        CHECK(sigma_normal_form(add(s1, s2), c4) == s12);
        CHECK(s12 == sigma_of_subspace(v3, c4).poly);
    }
}

TEST_CASE("sigma is equivariant for the symplectic action") {
    std::mt19937_64 rng(53);
    for (int g = 3; g <= 4; ++g) {
        GenusContext ctx(g);
        for (int t = 0; t < 100; ++t) {
            Gf2Matrix m = random_transvection_product(rng, ctx, 5);
            auto subs = all_symplectic_2subspaces(ctx);
            auto [u, v] = subs[rng() % subs.size()];
            BoolPoly moved = sigma_of_pair(m.apply(u), m.apply(v), ctx).poly;
            BoolPoly acted = sigma_normal_form(sp_action(sigma_of_pair(u, v, ctx).poly, m, ctx), ctx);
            CHECK(moved == acted);
        }
    }
}

TEST_CASE("genus-1 recovery round-trips") {
    GenusContext c3(3);
    SigmaValue s = sigma_text("a1,b1", c3);
    auto rec = recover_genus1_subspace(s, c3);
    CHECK(rec.space == parse_gf2_subspace("a1,b1", c3));

    // exhaustive round-trip over all 336 subspaces
    for (auto [u, v] : all_symplectic_2subspaces(c3)) {
        auto back = recover_genus1_subspace(sigma_of_pair(u, v, c3), c3);
        CHECK(back.space == pair_subspace(u, v, c3).space);
    }

    // a genus-2 value has no genus-1 preimage
    GenusContext c4(4);
    CHECK_THROWS_AS(recover_genus1_subspace(sigma_text("a1,b1,a2,b2", c4), c4), NotGenus1Sigma);
}
