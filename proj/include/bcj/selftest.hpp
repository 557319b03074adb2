#ifndef BCJ_SELFTEST_HPP
#define BCJ_SELFTEST_HPP

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "bcj/homology_bounds.hpp"
#include "bcj/random_gen.hpp"

namespace bcj {

// Property suites runnable from the CLI. Quick level keeps the whole run
// under a minute; full level raises trial counts and genus ranges.
inline bool run_selftest(bool full, std::uint64_t seed, unsigned threads, std::ostream& out) {
    (void)threads;
    bool all_ok = true;
    auto suite = [&](const std::string& name, const std::function<void()>& body) {
        auto start = std::chrono::steady_clock::now();
        try {
            body();
            double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            std::ostringstream ss;
            ss.setf(std::ios::fixed);
            ss.precision(2);
            ss << "[PASS] " << name << " (" << dt << "s)";
            out << ss.str() << "\n";
        } catch (const std::exception& e) {
            all_ok = false;
            out << "[FAIL] " << name << ": " << e.what() << "\n";
        }
    };
    auto require = [](bool cond, const std::string& msg) {
        if (!cond) throw DomainError(msg);
    };

    suite("gf2 form identities", [&] {
        std::mt19937_64 rng(seed);
        for (int g = 1; g <= (full ? 4 : 3); ++g) {
            GenusContext ctx(g);
            for (int t = 0; t < (full ? 2000 : 400); ++t) {
                std::uint32_t u = static_cast<std::uint32_t>(rng()) & ctx.full_mask();
                std::uint32_t v = static_cast<std::uint32_t>(rng()) & ctx.full_mask();
                std::uint32_t w = static_cast<std::uint32_t>(rng()) & ctx.full_mask();
                require(form_raw(u ^ v, w) == (form_raw(u, w) ^ form_raw(v, w)), "bilinearity");
                require(form_raw(u, u) == 0, "alternating");
            }
        }
    });

    suite("subspace enumeration counts", [&] {
        for (int g = 1; g <= (full ? 4 : 3); ++g) {
            GenusContext ctx(g);
            std::uint64_t n = 0;
            enumerate_symplectic_2subspaces(ctx, [&](std::uint32_t, std::uint32_t) { ++n; });
            require(n == symplectic_2subspace_count(g), "count formula at g=" + std::to_string(g));
        }
    });

    suite("complement involution and symplectic bases", [&] {
        std::mt19937_64 rng(seed + 1);
        for (int g = 2; g <= (full ? 4 : 3); ++g) {
            GenusContext ctx(g);
            for (int t = 0; t < (full ? 200 : 50); ++t) {
                std::vector<Gf2Vector> gens;
                for (int i = 0; i < 3; ++i)
                    gens.emplace_back(random_nonzero_vector(rng, ctx), ctx.dim());
                Gf2Subspace s = Gf2Subspace::span(gens, ctx);
                Gf2Subspace c = orthogonal_complement(s, ctx);
                require(orthogonal_complement(c, ctx) == s, "complement involution");
                require(s.dim() + c.dim() == ctx.dim(), "dimension count");
            }
        }
        GenusContext c3(3);
        for (auto [u, v] : all_symplectic_2subspaces(c3)) {
            auto sympl = symplectic_basis_of(pair_subspace(u, v, c3).space, c3);
            require(sympl.sbasis.size() == 1, "one pair");
            require(gf2_form(sympl.sbasis[0].first, sympl.sbasis[0].second, c3) == 1, "pairing");
        }
    });

    suite("boolean relation (1) and products", [&] {
        std::mt19937_64 rng(seed + 2);
        GenusContext c2(2);
        for (std::uint32_t x = 0; x <= c2.full_mask(); ++x)
            for (std::uint32_t y = 0; y <= c2.full_mask(); ++y) {
                Gf2Vector vx(x, 4), vy(y, 4);
                BoolPoly lhs = bar(vx + vy, c2);
                BoolPoly rhs = add(bar(vx, c2), bar(vy, c2));
                if (gf2_form(vx, vy, c2)) rhs = add(rhs, BoolPoly::one(c2));
                require(lhs == rhs, "relation (1) exhaustive at g=2");
            }
        for (int g = 3; g <= 4; ++g) {
            GenusContext ctx(g);
            for (int t = 0; t < (full ? 500 : 100); ++t) {
                Gf2Vector vx(static_cast<std::uint32_t>(rng()) & ctx.full_mask(), ctx.dim());
                Gf2Vector vy(static_cast<std::uint32_t>(rng()) & ctx.full_mask(), ctx.dim());
                BoolPoly lhs = bar(vx + vy, ctx);
                BoolPoly rhs = add(bar(vx, ctx), bar(vy, ctx));
                if (gf2_form(vx, vy, ctx)) rhs = add(rhs, BoolPoly::one(ctx));
                require(lhs == rhs, "relation (1) randomized");
                BoolPoly p = mul(bar(vx, ctx), bar(vy, ctx));
                require(mul(p, p) == p, "idempotence");
            }
        }
    });

    suite("quotient algebra dimensions", [&] {
        for (int g = 1; g <= (full ? 5 : 4); ++g) {
            GenusContext ctx(g);
            // echelonize normal forms of all degree-<=2 monomials
            PolyEchelon ech;
            std::vector<Monomial> monos = {0};
            for (int i = 0; i < ctx.dim(); ++i) monos.push_back(1u << i);
            for (int i = 0; i < ctx.dim(); ++i)
                for (int j = i + 1; j < ctx.dim(); ++j) monos.push_back((1u << i) | (1u << j));
            for (Monomial m : monos) {
                BoolPoly p(ctx.g);
                p.monos = {m};
                ech.insert(sigma_normal_form(p, ctx));
            }
            require(ech.rank() == 2 * g * g + g, "dim B_2' = 2g^2+g at g=" + std::to_string(g));
        }
    });

    suite("arf basis independence under the symplectic action", [&] {
        std::mt19937_64 rng(seed + 3);
        int trials = full ? 1000 : 100;
        for (int t = 0; t < trials; ++t) {
            int g = 2 + static_cast<int>(rng() % 3);
            GenusContext ctx(g);
            Gf2Matrix m = random_transvection_product(rng, ctx, 1 + static_cast<int>(rng() % 8));
            require(sp_action(arf(ctx), m, ctx) == arf(ctx), "sp_action must fix arf");
        }
    });

    suite("sigma symmetry and recovery", [&] {
        GenusContext c3(3);
        auto subs = all_symplectic_2subspaces(c3);
        std::set<std::vector<Monomial>> values;
        for (auto [u, v] : subs) {
            SigmaValue s = sigma_of_pair(u, v, c3);
            values.insert(s.poly.monos);
            Gf2Subspace comp = orthogonal_complement(pair_subspace(u, v, c3).space, c3);
            require(sigma_of_subspace(comp, c3).poly == s.poly, "sigma(V) = sigma(V-perp)");
        }
        require(values.size() == subs.size(), "sigma injective on rank-2 subspaces at g=3");
        std::mt19937_64 rng(seed + 4);
        int n = full ? static_cast<int>(subs.size()) : 50;
        for (int t = 0; t < n; ++t) {
            auto [u, v] = subs[full ? static_cast<std::size_t>(t) : rng() % subs.size()];
            auto rec = recover_genus1_subspace(sigma_of_pair(u, v, c3), c3);
            require(rec.space == pair_subspace(u, v, c3).space, "recovery round-trip");
        }
    });

    suite("certificate pipeline", [&] {
        std::mt19937_64 rng(seed + 5);
        int trials = full ? 100 : 10;
        GenusContext c4(4);
        for (int t = 0; t < trials; ++t) {
            // one symplectic map moves the standard splitting to p; a second
            // level-2 map perturbs p into a sigma-matched q
            auto moved = random_transvected(
                rng, direct_sum(standard_block(1, 1, c4), standard_block(2, 1, c4)), c4, 4, false);
            auto perturbed = random_transvected(rng, moved, c4, 4, true);
            CycleSystem p(c4, {IntSymplecticSubgroup{{moved.pairs[0]}},
                               IntSymplecticSubgroup{{moved.pairs[1]}}});
            CycleSystem q(c4, {IntSymplecticSubgroup{{perturbed.pairs[1]}},
                               IntSymplecticSubgroup{{perturbed.pairs[0]}}});
            auto verdict = decide_equal_genus1(p, q);
            require(verdict.kind == DecideVerdict::Kind::Equal, "expected Equal verdict");
            require(static_cast<bool>(verify_certificate(*verdict.certificate)), "certificate must verify");
        }
    });

    suite("tree census and reduction", [&] {
        for (int g = 3; g <= (full ? 4 : 3); ++g) {
            for (int k = 1; k <= 2 * g - 3; ++k) {
                for (const PartitionTree& t : enumerate_admissible_trees(g, k)) {
                    auto asg = realize_splitting(t);
                    SigmaWedge total = tree_sigma_k(t, asg);
                    WedgeElement sum;
                    B2PrimeBasis basis{GenusContext(t.g)};
                    sum.ambient_dim = basis.dim();
                    sum.k = k;
                    for (const CycleSystem& sys : reduce_to_genus1(t))
                        sum = sum + sigma_k(sys).w;
                    require(sum == total.w, "reduction preserves sigma_k");
                    if (k >= g) require(reduce_to_genus1(t).empty(), "empty reduction for k >= g");
                    if (k < g)
                        require(total.w.is_zero() == vanishes_main3(t), "vanishing criterion");
                }
            }
        }
    });

    return all_ok;
}

} // namespace bcj

#endif
