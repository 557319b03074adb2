#ifndef BCJ_RANDOM_GEN_HPP
#define BCJ_RANDOM_GEN_HPP

#include <random>

#include "bcj/int_symplectic.hpp"

namespace bcj {

inline std::uint32_t random_nonzero_vector(std::mt19937_64& rng, const GenusContext& ctx) {
    std::uint32_t mask = ctx.full_mask();
    std::uint32_t v = 0;
    while (v == 0) v = static_cast<std::uint32_t>(rng()) & mask;
    return v;
}

inline Gf2Matrix random_transvection_product(std::mt19937_64& rng, const GenusContext& ctx,
                                             int count) {
    Gf2Matrix m = Gf2Matrix::identity(ctx);
    for (int i = 0; i < count; ++i)
        m = Gf2Matrix::transvection(random_nonzero_vector(rng, ctx), ctx).compose(m);
    return m;
}

// integral symplectic transvection x -> x + (x.v) v
inline IntVector int_transvect(const IntVector& x, const IntVector& v) {
    return x + int_form(x, v) * v;
}

inline IntVector random_small_int_vector(std::mt19937_64& rng, const GenusContext& ctx,
                                         int max_abs = 2) {
    IntVector v(ctx.dim());
    for (auto& c : v.c)
        c = static_cast<long>(rng() % (2 * static_cast<unsigned long>(max_abs) + 1)) - max_abs;
    return v;
}

// product of `count` random integral transvections, applied to every basis
// vector of the subgroup; squares of transvections when level2 is set, so
// the map is trivial mod 2 and preserves all sigma values
inline IntSymplecticSubgroup random_transvected(std::mt19937_64& rng,
                                                const IntSymplecticSubgroup& u,
                                                const GenusContext& ctx, int count,
                                                bool level2) {
    std::vector<IntVector> twists;
    for (int i = 0; i < count; ++i) {
        IntVector v = random_small_int_vector(rng, ctx);
        if (v.is_zero()) v = IntVector::basis(0, ctx);
        twists.push_back(std::move(v));
    }
    auto apply = [&](IntVector x) {
        for (const auto& v : twists) {
            x = int_transvect(x, v);
            if (level2) x = int_transvect(x, v);
        }
        return x;
    };
    std::vector<IntSymplecticPair> ps;
    for (const auto& p : u.pairs) ps.emplace_back(apply(p.x), apply(p.y));
    return IntSymplecticSubgroup(std::move(ps));
}

} // namespace bcj

#endif
