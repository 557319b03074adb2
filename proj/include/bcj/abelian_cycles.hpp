#ifndef BCJ_ABELIAN_CYCLES_HPP
#define BCJ_ABELIAN_CYCLES_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bcj/int_symplectic.hpp"
#include "bcj/wedge.hpp"

namespace bcj {

// Splitting data of an abelian cycle of separating twists: k pairwise
// orthogonal symplectic subgroups. Ordered storage, but every invariant is
// order-free (coefficients are mod 2 and the cycle is alternating), so
// equality compares canonical lattice keys as multisets.
struct CycleSystem {
    GenusContext ctx;
    std::vector<IntSymplecticSubgroup> parts;

    CycleSystem(const GenusContext& c, std::vector<IntSymplecticSubgroup> ps)
        : ctx(c), parts(std::move(ps)) {
        if (parts.empty()) throw HypothesisViolation("cycle system needs k >= 1 parts");
        for (const auto& p : parts)
            if (p.rank() > 0 && p.ambient_dim() != ctx.dim())
                throw DimensionMismatch("cycle system part has wrong ambient dimension");
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = i + 1; j < parts.size(); ++j)
                if (!orthogonal(parts[i], parts[j]))
                    throw HypothesisViolation("cycle system parts must be pairwise orthogonal");
    }

    int k() const { return static_cast<int>(parts.size()); }

    std::vector<std::string> sorted_keys() const {
        std::vector<std::string> keys;
        keys.reserve(parts.size());
        for (const auto& p : parts) keys.push_back(lattice_key(p));
        std::sort(keys.begin(), keys.end());
        return keys;
    }
    bool same_system(const CycleSystem& o) const { return sorted_keys() == o.sorted_keys(); }
};

// Image of the cycle under the induced map into the k-th exterior power of
// the degree-<=2 quotient algebra, coordinatized in the canonical monomial
// basis of B_2' normal forms.
struct SigmaWedge {
    int g = 0;
    WedgeElement w;

    bool operator==(const SigmaWedge&) const = default;
};

inline SigmaWedge sigma_k(const CycleSystem& sys) {
    B2PrimeBasis basis(sys.ctx);
    std::vector<std::vector<std::uint16_t>> parts;
    parts.reserve(sys.parts.size());
    for (const auto& p : sys.parts)
        parts.push_back(basis.coordinates(sigma_of_int_subgroup(p, sys.ctx).poly));
    return SigmaWedge{sys.ctx.g, wedge(parts, basis.dim())};
}

// The linear relation criterion: with every V_i inside U (rank U >= 6) or
// every V_i inside U-perp (rank U-perp >= 6), the cycles sum to zero exactly
// when the sigma values sum to 0 or to sigma(U).
inline bool relation_holds(const IntSymplecticSubgroup& u,
                           const std::vector<IntSymplecticSubgroup>& vs, const GenusContext& ctx) {
    if (ctx.g < 4) throw HypothesisViolation("relation criterion requires g >= 4");
    bool all_inside = true, all_ortho = true;
    for (const auto& v : vs) {
        if (!subgroup_contains_subgroup(u, v)) all_inside = false;
        if (!orthogonal(u, v)) all_ortho = false;
    }
    if (all_inside && u.rank() >= 6) {
        // containment orientation
    } else if (all_ortho && ctx.dim() - u.rank() >= 6) {
        // complement orientation
    } else {
        throw HypothesisViolation(
            "need all V_i inside U with rank(U) >= 6, or all V_i orthogonal to U with "
            "rank(U-perp) >= 6");
    }
    BoolPoly sum(ctx.g);
    for (const auto& v : vs) sum = add(sum, sigma_of_int_subgroup(v, ctx).poly);
    sum = sigma_normal_form(sum, ctx);
    return sum.is_zero() || sum == sigma_of_int_subgroup(u, ctx).poly;
}

// ---- certificates -----------------------------------------------------------

enum class StepRule { KeyRelation, Gen3Subsurface };

// Subgroups travel through certificates as flat basis lists x1,y1,x2,y2,...
using RawSubgroup = std::vector<IntVector>;

inline RawSubgroup flatten(const IntSymplecticSubgroup& u) { return u.basis_vectors(); }

inline IntSymplecticSubgroup unflatten(const RawSubgroup& raw) {
    if (raw.size() % 2 != 0) throw NotSymplectic("basis list must pair up");
    std::vector<IntSymplecticPair> ps;
    for (std::size_t i = 0; i < raw.size(); i += 2) ps.emplace_back(raw[i], raw[i + 1]);
    return IntSymplecticSubgroup(std::move(ps));
}

// One elementary equality of k=2 cycles. KeyRelation keeps the witness
// subgroup fixed and swaps the other slot for a sigma-equal subgroup inside
// its complement (or inside the witness); Gen3Subsurface replays the rank-6
// subsurface lemma with witness W and ordered slots (X1, X2) -> (Y1, Y2).
struct CertStep {
    StepRule rule;
    std::vector<RawSubgroup> lhs, rhs;
    RawSubgroup witness;
};

struct Certificate {
    int g = 0;
    std::vector<CertStep> steps;
};

struct VerifyResult {
    bool ok = true;
    std::vector<std::string> diagnostics;

    explicit operator bool() const { return ok; }
    void fail(const std::string& msg) {
        ok = false;
        diagnostics.push_back(msg);
    }
};

namespace detail {

inline std::optional<IntSymplecticSubgroup> checked_subgroup(const RawSubgroup& raw,
                                                             VerifyResult& res,
                                                             const std::string& where) {
    try {
        return unflatten(raw);
    } catch (const DomainError& e) {
        res.fail(where + ": " + e.what());
        return std::nullopt;
    }
}

} // namespace detail

// Replays every step's rule hypotheses exactly; returns false with one
// diagnostic per failed hypothesis.
inline VerifyResult verify_certificate(const Certificate& cert) {
    VerifyResult res;
    GenusContext ctx(cert.g);
    std::vector<std::string> prev_keys;
    for (std::size_t si = 0; si < cert.steps.size(); ++si) {
        const CertStep& step = cert.steps[si];
        const std::string tag = "step " + std::to_string(si);
        if (step.lhs.size() != 2 || step.rhs.size() != 2) {
            res.fail(tag + ": steps must relate k=2 systems");
            continue;
        }
        std::vector<IntSymplecticSubgroup> lhs, rhs;
        bool parts_ok = true;
        for (std::size_t i = 0; i < 2 && parts_ok; ++i) {
            auto l = detail::checked_subgroup(step.lhs[i], res, tag + ": lhs part " + std::to_string(i));
            auto r = detail::checked_subgroup(step.rhs[i], res, tag + ": rhs part " + std::to_string(i));
            if (!l || !r) { parts_ok = false; break; }
            lhs.push_back(std::move(*l));
            rhs.push_back(std::move(*r));
        }
        if (!parts_ok) continue;
        if (!orthogonal(lhs[0], lhs[1])) res.fail(tag + ": lhs parts not orthogonal");
        if (!orthogonal(rhs[0], rhs[1])) res.fail(tag + ": rhs parts not orthogonal");

        std::vector<std::string> lhs_keys = {lattice_key(lhs[0]), lattice_key(lhs[1])};
        std::vector<std::string> rhs_keys = {lattice_key(rhs[0]), lattice_key(rhs[1])};
        std::sort(lhs_keys.begin(), lhs_keys.end());
        std::sort(rhs_keys.begin(), rhs_keys.end());
        if (!prev_keys.empty() && prev_keys != lhs_keys)
            res.fail(tag + ": chain broken (lhs differs from previous rhs)");
        prev_keys = rhs_keys;

        auto witness = detail::checked_subgroup(step.witness, res, tag + ": witness");
        if (!witness) continue;

        if (step.rule == StepRule::KeyRelation) {
            const IntSymplecticSubgroup& u = *witness;
            std::string ukey = lattice_key(u);
            int li = lattice_key(lhs[0]) == ukey ? 0 : (lattice_key(lhs[1]) == ukey ? 1 : -1);
            int ri = lattice_key(rhs[0]) == ukey ? 0 : (lattice_key(rhs[1]) == ukey ? 1 : -1);
            if (li < 0 || ri < 0) {
                res.fail(tag + ": fixed subgroup U does not appear on both sides");
                continue;
            }
            const IntSymplecticSubgroup& v = lhs[1 - li];
            const IntSymplecticSubgroup& vp = rhs[1 - ri];
            bool inside = subgroup_contains_subgroup(u, v) && subgroup_contains_subgroup(u, vp);
            bool ortho = orthogonal(u, v) && orthogonal(u, vp);
            if (inside && u.rank() >= 6) {
                // containment orientation
            } else if (ortho && ctx.dim() - u.rank() >= 6) {
                // complement orientation
            } else {
                res.fail(tag + ": KeyRelation containment/rank hypothesis fails");
            }
            if (!(sigma_of_int_subgroup(v, ctx) == sigma_of_int_subgroup(vp, ctx)))
                res.fail(tag + ": KeyRelation requires sigma(V) = sigma(V')");
        } else {
            const IntSymplecticSubgroup& w = *witness;
            if (w.rank() != 6) res.fail(tag + ": W must have rank 6");
            const IntSymplecticSubgroup &x1 = lhs[0], &x2 = lhs[1], &y1 = rhs[0], &y2 = rhs[1];
            for (const auto* s : {&x1, &x2, &y1, &y2})
                if (s->rank() != 2) res.fail(tag + ": Gen3Subsurface slots must have rank 2");
            if (!subgroup_contains_subgroup(w, x1) || !subgroup_contains_subgroup(w, x2) ||
                !subgroup_contains_subgroup(w, y1) || !subgroup_contains_subgroup(w, y2))
                res.fail(tag + ": W must contain X1, X2, Y1, Y2");
            if (!orthogonal(x1, x2)) res.fail(tag + ": X1 and X2 must be orthogonal");
            if (!orthogonal(y1, y2)) res.fail(tag + ": Y1 and Y2 must be orthogonal");
            if (!subgroup_contains_subgroup(direct_sum(x1, x2), y2))
                res.fail(tag + ": Y2 must lie in X1 + X2");
            if (!(sigma_of_int_subgroup(x1, ctx) == sigma_of_int_subgroup(y1, ctx)))
                res.fail(tag + ": requires sigma(X1) = sigma(Y1)");
            if (!(sigma_of_int_subgroup(x2, ctx) == sigma_of_int_subgroup(y2, ctx)))
                res.fail(tag + ": requires sigma(X2) = sigma(Y2)");
        }
    }
    return res;
}

// ---- the equality decision ---------------------------------------------------

struct DecideVerdict {
    enum class Kind { Equal, DistinctBySigma, Inconclusive } kind;
    std::optional<Certificate> certificate;
    std::vector<std::string> notes;
};

namespace detail {

// SL(2, Z) lift of an invertible 2x2 GF(2) matrix: take 0/1 entries and
// negate the second row when the integer determinant is -1.
inline std::array<std::array<IntScalar, 2>, 2> lift_gl2(int p, int q, int r, int s) {
    std::array<std::array<IntScalar, 2>, 2> m = {{{IntScalar(p), IntScalar(q)},
                                                  {IntScalar(r), IntScalar(s)}}};
    IntScalar det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det == -1) {
        m[1][0] = -m[1][0];
        m[1][1] = -m[1][1];
    }
    return m;
}

// symplectic basis (x2, y2) of V with x2 = a mod 2 and y2 = b mod 2;
// requires that V reduces mod 2 to span{a, b}
inline IntSymplecticPair align_basis_mod2(const IntSymplecticPair& v, const Gf2Vector& a,
                                          const Gf2Vector& b, const GenusContext& ctx) {
    Gf2Vector xb = v.x.mod2(), yb = v.y.mod2();
    // coordinates of xb, yb in the symplectic frame (a, b)
    int c11 = gf2_form(xb, b, ctx), c12 = gf2_form(a, xb, ctx);
    int c21 = gf2_form(yb, b, ctx), c22 = gf2_form(a, yb, ctx);
    if (!((xb == Gf2Vector((c11 ? a.bits : 0u) ^ (c12 ? b.bits : 0u), ctx.dim())) &&
          (yb == Gf2Vector((c21 ? a.bits : 0u) ^ (c22 ? b.bits : 0u), ctx.dim()))))
        throw HypothesisViolation("subgroup does not reduce to span{a, b} mod 2");
    // inverse of [[c11,c12],[c21,c22]] over GF(2) is [[c22,c12],[c21,c11]]
    auto d = lift_gl2(c22, c12, c21, c11);
    IntVector x2 = d[0][0] * v.x + d[0][1] * v.y;
    IntVector y2 = d[1][0] * v.x + d[1][1] * v.y;
    return IntSymplecticPair(std::move(x2), std::move(y2));
}

inline CertStep key_relation_step(const IntSymplecticSubgroup& fixed,
                                  const IntSymplecticSubgroup& lhs_other,
                                  const IntSymplecticSubgroup& rhs_other) {
    CertStep s;
    s.rule = StepRule::KeyRelation;
    s.lhs = {flatten(fixed), flatten(lhs_other)};
    s.rhs = {flatten(fixed), flatten(rhs_other)};
    s.witness = flatten(fixed);
    return s;
}

} // namespace detail

// Decides A(p1, p2) = A(q1, q2) for rank-2 parts at g >= 4. When the sigma
// multisets match, replays the constructive proof into a four-step
// certificate; when the wedge invariants differ the cycles are distinct;
// otherwise no verdict is available.
inline DecideVerdict decide_equal_genus1(const CycleSystem& p, const CycleSystem& q) {
    const GenusContext& ctx = p.ctx;
    if (ctx.g < 4) throw HypothesisViolation("decision procedure requires g >= 4");
    if (!(q.ctx == ctx)) throw ContextMismatch("systems from different contexts");
    if (p.k() != 2 || q.k() != 2) throw HypothesisViolation("systems must have k = 2");
    for (const auto& sys : {p, q})
        for (const auto& part : sys.parts)
            if (part.rank() != 2) throw HypothesisViolation("all four parts must have rank 2");

    SigmaValue sp1 = sigma_of_int_subgroup(p.parts[0], ctx);
    SigmaValue sp2 = sigma_of_int_subgroup(p.parts[1], ctx);
    SigmaValue sq1 = sigma_of_int_subgroup(q.parts[0], ctx);
    SigmaValue sq2 = sigma_of_int_subgroup(q.parts[1], ctx);

    bool straight = sp1 == sq1 && sp2 == sq2;
    bool swapped = sp1 == sq2 && sp2 == sq1;
    if (straight || swapped) {
        Certificate cert;
        cert.g = ctx.g;
        if (p.same_system(q)) return DecideVerdict{DecideVerdict::Kind::Equal, cert, {}};

        const IntSymplecticSubgroup& u1 = p.parts[0];
        const IntSymplecticSubgroup& u2 = p.parts[1];
        const IntSymplecticSubgroup& v1 = straight ? q.parts[0] : q.parts[1];
        const IntSymplecticSubgroup& v2 = straight ? q.parts[1] : q.parts[0];
        const IntSymplecticPair &pu1 = u1.pairs[0], &pu2 = u2.pairs[0];

        // basis of V2 reducing to (a2, b2) mod 2
        IntSymplecticPair v2b =
            detail::align_basis_mod2(v2.pairs[0], pu2.x.mod2(), pu2.y.mod2(), ctx);
        const IntVector& x2 = v2b.x;
        const IntVector& y2 = v2b.y;

        // adapted replacement for U2 inside the complement of U1
        AdaptedU2 adapted = build_adapted_U2prime(pu1, pu2, x2, ctx);
        IntSymplecticSubgroup u2p{{adapted.u2prime}};
        cert.steps.push_back(detail::key_relation_step(u1, u2, u2p));

        // decomposition of y2 against the frame (a1, b1, a2', b2')
        const IntVector &a1 = pu1.x, &b1 = pu1.y;
        const IntVector &a2p = adapted.u2prime.x, &b2p = adapted.u2prime.y;
        IntScalar lam1 = int_form(y2, b1) / 2;
        IntScalar mu1 = -int_form(y2, a1) / 2;
        IntScalar lam2p = int_form(y2, b2p) / 2;
        IntScalar mu2p = (-int_form(y2, a2p) - 1) / 2;
        IntVector resid = y2 - (2 * lam1) * a1 - (2 * mu1) * b1 - (2 * lam2p) * a2p -
                          (2 * mu2p + 1) * b2p;

        IntSymplecticSubgroup frame4{{IntSymplecticPair(a1, b1), adapted.u2prime}};
        IntVector a3p, b3p;
        IntScalar lam3p = 0;
        if (!resid.is_zero()) {
            IntScalar ct = content(resid);
            a3p = resid;
            for (auto& c : a3p.c) c /= ct;
            IntScalar sign = 1;
            for (const auto& c : a3p.c) {
                if (c == 0) continue;
                if (c < 0) sign = -1;
                break;
            }
            if (sign < 0)
                for (auto& c : a3p.c) c = -c;
            lam3p = sign * ct / 2;
            b3p = project(detail::dual_partner(a3p), frame4).second;
        } else {
            IntSymplecticSubgroup comp = orthogonal_complement_basis(frame4, ctx);
            a3p = comp.pairs.front().x;
            b3p = comp.pairs.front().y;
        }

        IntSymplecticSubgroup frame6 =
            direct_sum(frame4, IntSymplecticSubgroup{{IntSymplecticPair(a3p, b3p)}});
        IntSymplecticSubgroup comp6 = orthogonal_complement_basis(frame6, ctx);
        const IntVector& a4p = comp6.pairs.front().x;
        const IntVector& b4p = comp6.pairs.front().y;

        V1Frame frame{a1, b1, a2p, b2p, a3p, a4p, b4p};
        V1Coefficients cs{adapted.zeta1, adapted.eta1, lam1, mu1, lam2p, mu2p,
                          (adapted.d - 1) / 2};
        IntSymplecticPair v1p_pair = build_V1prime(cs, frame);
        IntSymplecticSubgroup v1p{{v1p_pair}};

        IntVector y2p = y2 - (2 * lam3p) * a3p;
        IntSymplecticSubgroup v2p{{IntSymplecticPair(x2, y2p)}};

        // close the chain inside the rank-6 frame W = <a1,b1,a2',b2',a4',b4'>
        IntSymplecticSubgroup w =
            direct_sum(frame4, IntSymplecticSubgroup{{IntSymplecticPair(a4p, b4p)}});
        CertStep g3;
        g3.rule = StepRule::Gen3Subsurface;
        g3.lhs = {flatten(u1), flatten(u2p)};
        g3.rhs = {flatten(v1p), flatten(v2p)};
        g3.witness = flatten(w);
        cert.steps.push_back(g3);

        cert.steps.push_back(detail::key_relation_step(v1p, v2p, v2));
        cert.steps.push_back(detail::key_relation_step(v2, v1p, v1));
        return DecideVerdict{DecideVerdict::Kind::Equal, cert, {}};
    }

    if (!(sigma_k(p) == sigma_k(q)))
        return DecideVerdict{DecideVerdict::Kind::DistinctBySigma, std::nullopt, {}};

    // sigma multisets differ but the wedge invariants agree; the calculus
    // decides neither direction here, so record the instance for study
    std::vector<std::string> notes;
    notes.push_back("sigma(p) = {" + format_poly(sp1.poly) + "} , {" + format_poly(sp2.poly) + "}");
    notes.push_back("sigma(q) = {" + format_poly(sq1.poly) + "} , {" + format_poly(sq2.poly) + "}");
    return DecideVerdict{DecideVerdict::Kind::Inconclusive, std::nullopt, std::move(notes)};
}

} // namespace bcj

#endif
