#ifndef BCJ_SIGMA_HPP
#define BCJ_SIGMA_HPP

#include "bcj/arf_ideal.hpp"
#include "bcj/gf2.hpp"

namespace bcj {

enum class SigmaMode { closed, boundary };

// Value of the twist homomorphism on a separating twist, as a normal-form
// quadratic Boolean polynomial. Closed mode reduces mod (Arf); boundary mode
// keeps the plain algebra of the one-boundary surface.
struct SigmaValue {
    BoolPoly poly;
    SigmaMode mode = SigmaMode::closed;

    bool operator==(const SigmaValue& o) const {
        return mode == o.mode && poly == o.poly;
    }
};

// sum_i bar(x_i) bar(y_i) over the symplectic basis pairs, then normal form;
// independent of the basis choice.
inline SigmaValue sigma_of_subspace(const Gf2SymplecticSubspace& V, const GenusContext& ctx,
                                    SigmaMode mode = SigmaMode::closed) {
    BoolPoly acc(ctx.g);
    for (const auto& [x, y] : V.sbasis) {
        if (gf2_form(x, y, ctx) != 1 )
            throw NotSymplectic("sigma_of_subspace: basis pair does not pair to 1");
        acc = add(acc, mul(bar(x, ctx), bar(y, ctx)));
    }
    if (mode == SigmaMode::closed) acc = sigma_normal_form(acc, ctx);
    return SigmaValue{acc, mode};
}

inline SigmaValue sigma_of_subspace(const Gf2Subspace& s, const GenusContext& ctx,
                                    SigmaMode mode = SigmaMode::closed) {
    return sigma_of_subspace(symplectic_basis_of(s, ctx), ctx, mode);
}

inline SigmaValue sigma_of_pair(std::uint32_t u, std::uint32_t v, const GenusContext& ctx,
                                SigmaMode mode = SigmaMode::closed) {
    BoolPoly p = mul(bar(Gf2Vector(u, ctx.dim()), ctx), bar(Gf2Vector(v, ctx.dim()), ctx));
    if (mode == SigmaMode::closed) p = sigma_normal_form(p, ctx);
    return SigmaValue{p, mode};
}

// Inversion for genus-1 values: exhaustive pair search with early exit. When
// s is the sigma value of a 2-dimensional symplectic subspace, that subspace
// is the unique preimage.
inline Gf2SymplecticSubspace recover_genus1_subspace(const SigmaValue& s, const GenusContext& ctx) {
    const std::uint64_t top = ctx.full_mask();
    for (std::uint64_t a = 1; a <= top; ++a) {
        for (std::uint64_t b = a + 1; b <= top; ++b) {
            std::uint32_t aa = static_cast<std::uint32_t>(a);
            std::uint32_t bb = static_cast<std::uint32_t>(b);
            if (!form_raw(aa, bb)) continue;
            if (sigma_of_pair(aa, bb, ctx, s.mode).poly == s.poly)
                return pair_subspace(aa, bb, ctx);
        }
    }
    throw NotGenus1Sigma("no rank-2 symplectic subspace has this sigma value");
}

} // namespace bcj

#endif
