#ifndef BCJ_INT_SYMPLECTIC_HPP
#define BCJ_INT_SYMPLECTIC_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bcj/int_vector.hpp"
#include "bcj/sigma.hpp"

namespace bcj {

struct IntSymplecticPair {
    IntVector x, y;

    IntSymplecticPair() = default;
    IntSymplecticPair(IntVector xx, IntVector yy) : x(std::move(xx)), y(std::move(yy)) {
        if (int_form(x, y) != 1)
            throw NotSymplectic("pair must satisfy x.y = 1, got " + int_form(x, y).str());
    }
    bool operator==(const IntSymplecticPair&) const = default;
};

// Direct summand of Z^{2g} on which the form restricts unimodularly, carried
// by a symplectic basis: the 2m basis vectors have Gram matrix exactly J.
struct IntSymplecticSubgroup {
    std::vector<IntSymplecticPair> pairs;

    IntSymplecticSubgroup() = default;
    explicit IntSymplecticSubgroup(std::vector<IntSymplecticPair> ps) : pairs(std::move(ps)) {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = i + 1; j < pairs.size(); ++j) {
                if (int_form(pairs[i].x, pairs[j].x) != 0 || int_form(pairs[i].x, pairs[j].y) != 0 ||
                    int_form(pairs[i].y, pairs[j].x) != 0 || int_form(pairs[i].y, pairs[j].y) != 0)
                    throw NotSymplectic("basis pairs are not pairwise orthogonal");
            }
    }
    int rank() const { return 2 * static_cast<int>(pairs.size()); }
    int ambient_dim() const { return pairs.empty() ? 0 : pairs.front().x.dim(); }
    std::vector<IntVector> basis_vectors() const {
        std::vector<IntVector> out;
        out.reserve(pairs.size() * 2);
        for (const auto& p : pairs) {
            out.push_back(p.x);
            out.push_back(p.y);
        }
        return out;
    }
    bool operator==(const IntSymplecticSubgroup&) const = default;
};

inline IntSymplecticSubgroup standard_block(int first_handle, int genus, const GenusContext& ctx) {
    std::vector<IntSymplecticPair> ps;
    for (int j = 0; j < genus; ++j) {
        int i = first_handle + j;
        ps.emplace_back(IntVector::basis(GenusContext::a_index(i), ctx),
                        IntVector::basis(GenusContext::b_index(i), ctx));
    }
    return IntSymplecticSubgroup(std::move(ps));
}

inline bool orthogonal(const IntSymplecticSubgroup& u, const IntSymplecticSubgroup& v) {
    for (const auto& a : u.basis_vectors())
        for (const auto& b : v.basis_vectors())
            if (int_form(a, b) != 0) return false;
    return true;
}

inline IntSymplecticSubgroup direct_sum(const IntSymplecticSubgroup& u,
                                        const IntSymplecticSubgroup& v) {
    std::vector<IntSymplecticPair> ps = u.pairs;
    ps.insert(ps.end(), v.pairs.begin(), v.pairs.end());
    return IntSymplecticSubgroup(std::move(ps));
}

// component of v in the subgroup plus the orthogonal residual; the x_i
// coefficient is v.y_i, the y_i coefficient is -(v.x_i)
inline std::pair<std::vector<IntScalar>, IntVector> project(const IntVector& v,
                                                            const IntSymplecticSubgroup& u) {
    std::vector<IntScalar> coeffs;
    IntVector resid = v;
    for (const auto& p : u.pairs) {
        IntScalar cx = int_form(v, p.y);
        IntScalar cy = -int_form(v, p.x);
        coeffs.push_back(cx);
        coeffs.push_back(cy);
        resid = resid - cx * p.x - cy * p.y;
    }
    return {std::move(coeffs), std::move(resid)};
}

// exact coefficients via symplectic duality
inline std::vector<IntScalar> express(const IntVector& v, const IntSymplecticSubgroup& basis) {
    auto [coeffs, resid] = project(v, basis);
    if (!resid.is_zero())
        throw NotInSpan("vector has a component outside the subgroup");
    return coeffs;
}

inline bool subgroup_contains(const IntSymplecticSubgroup& u, const IntVector& v) {
    return project(v, u).second.is_zero();
}

inline bool subgroup_contains_subgroup(const IntSymplecticSubgroup& outer,
                                       const IntSymplecticSubgroup& inner) {
    for (const auto& v : inner.basis_vectors())
        if (!subgroup_contains(outer, v)) return false;
    return true;
}

namespace detail {

inline void sign_normalize(IntVector& v) {
    for (const auto& x : v.c) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v.c) y = -y;
        break;
    }
}

// integral u with v.u = 1; requires the pairing values of v to be coprime
inline IntVector dual_partner(const IntVector& v) {
    const int n = v.dim();
    IntScalar d = 0;
    IntVector comb(n);
    for (int i = 0; i < n; ++i) {
        IntVector e(n);
        e.c[static_cast<std::size_t>(i)] = 1;
        IntScalar f = int_form(v, e);
        if (f == 0) continue;
        if (d == 0) {
            d = f < 0 ? IntScalar(-f) : f;
            comb = IntVector(n);
            comb.c[static_cast<std::size_t>(i)] = f < 0 ? -1 : 1;
        } else {
            auto [d2, s, t] = xgcd(d, f);
            comb = s * comb;
            comb.c[static_cast<std::size_t>(i)] += t;
            d = d2;
        }
        if (d == 1) break;
    }
    if (d != 1) throw NotUnimodular("no integral dual partner exists (vector not primitive)");
    return comb;
}

} // namespace detail

// Extends the partial symplectic set to a full symplectic basis of Z^{2g}.
// Each round picks the lowest-index standard vector with nonzero projection
// into the complement, normalizes content and sign, and finds its dual via
// extended gcd on the pairing values.
inline IntSymplecticSubgroup extend_to_symplectic_basis(const IntSymplecticSubgroup& partial,
                                                        const GenusContext& ctx) {
    if (!partial.pairs.empty() && partial.ambient_dim() != ctx.dim())
        throw DimensionMismatch("partial basis lives in a different ambient dimension");
    std::vector<IntSymplecticPair> pairs = partial.pairs;
    while (static_cast<int>(pairs.size()) < ctx.g) {
        IntSymplecticSubgroup span{pairs};
        IntVector v;
        bool found = false;
        for (int i = 0; i < ctx.dim(); ++i) {
            IntVector w = project(IntVector::basis(i, ctx), span).second;
            if (!w.is_zero()) {
                v = std::move(w);
                found = true;
                break;
            }
        }
        if (!found) throw NotUnimodular("orthogonal complement of the partial basis is degenerate");
        IntScalar ct = content(v);
        for (auto& x : v.c) x /= ct;
        detail::sign_normalize(v);
        IntVector u = detail::dual_partner(v);
        IntVector y = project(u, span).second;  // v . y = v . u = 1
        pairs.emplace_back(std::move(v), std::move(y));
    }
    return IntSymplecticSubgroup(std::move(pairs));
}

// symplectic basis of U-perp; ranks add to 2g and all pairings with U vanish
inline IntSymplecticSubgroup orthogonal_complement_basis(const IntSymplecticSubgroup& u,
                                                         const GenusContext& ctx) {
    IntSymplecticSubgroup full = extend_to_symplectic_basis(u, ctx);
    std::vector<IntSymplecticPair> extra(full.pairs.begin() + static_cast<std::ptrdiff_t>(u.pairs.size()),
                                         full.pairs.end());
    return IntSymplecticSubgroup(std::move(extra));
}

inline Gf2SymplecticSubspace mod2_subspace(const IntSymplecticSubgroup& u, const GenusContext& ctx) {
    Gf2SymplecticSubspace s;
    std::vector<Gf2Vector> gens;
    for (const auto& p : u.pairs) {
        Gf2Vector x = p.x.mod2();
        Gf2Vector y = p.y.mod2();
        s.sbasis.emplace_back(x, y);
        gens.push_back(x);
        gens.push_back(y);
    }
    s.space = Gf2Subspace::span(gens, ctx);
    return s;
}

// sigma depends only on the mod-2 reduction of the subgroup
inline SigmaValue sigma_of_int_subgroup(const IntSymplecticSubgroup& u, const GenusContext& ctx,
                                        SigmaMode mode = SigmaMode::closed) {
    if (!u.pairs.empty() && u.ambient_dim() != ctx.dim())
        throw DimensionMismatch("subgroup lives in a different ambient dimension");
    BoolPoly acc(ctx.g);
    for (const auto& p : u.pairs)
        acc = add(acc, mul(bar(p.x.mod2(), ctx), bar(p.y.mod2(), ctx)));
    if (mode == SigmaMode::closed) acc = sigma_normal_form(acc, ctx);
    return SigmaValue{acc, mode};
}

// ---- canonical lattice keys -------------------------------------------------

namespace detail {

inline IntScalar floor_div(const IntScalar& a, const IntScalar& b) {
    IntScalar q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace detail

// Row Hermite normal form; unique canonical basis of the row lattice.
inline std::vector<std::vector<IntScalar>> hermite_normal_form(
    std::vector<std::vector<IntScalar>> rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
        std::size_t piv = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i][col] != 0) { piv = i; break; }
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            while (rows[i][col] != 0) {
                auto [d, s, t] = xgcd(rows[r][col], rows[i][col]);
                IntScalar qr = rows[r][col] / d, qi = rows[i][col] / d;
                for (std::size_t c = 0; c < cols; ++c) {
                    IntScalar nr = s * rows[r][c] + t * rows[i][c];
                    IntScalar ni = qi * rows[r][c] - qr * rows[i][c];
                    rows[r][c] = nr;
                    rows[i][c] = ni;
                }
            }
        }
        if (rows[r][col] < 0)
            for (auto& x : rows[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            IntScalar q = detail::floor_div(rows[i][col], rows[r][col]);
            if (q != 0)
                for (std::size_t c = 0; c < cols; ++c) rows[i][c] -= q * rows[r][c];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

inline std::string lattice_key(const IntSymplecticSubgroup& u) {
    std::vector<std::vector<IntScalar>> rows;
    for (const auto& v : u.basis_vectors()) rows.push_back(v.c);
    auto hnf = hermite_normal_form(std::move(rows));
    std::string key;
    for (const auto& row : hnf) {
        for (const auto& x : row) {
            key += x.str();
            key += ',';
        }
        key += ';';
    }
    return key;
}

// ---- the explicit integer constructions -------------------------------------

// Divide a coefficient triple with parity pattern (odd, even, even) by its
// (odd) content, normalizing the first coefficient positive.
inline std::array<IntScalar, 3> primitive_odd_rep(const IntScalar& c1, const IntScalar& c2,
                                                  const IntScalar& c3) {
    using boost::multiprecision::gcd;
    if ((c1 & 1) == 0 || (c2 & 1) != 0 || (c3 & 1) != 0)
        throw BadParityPattern("expected coefficients (odd, even, even)");
    IntScalar d = gcd(gcd(c1, c2), c3);
    if (d < 0) d = -d;
    if (c1 < 0) d = -d;
    return {c1 / d, c2 / d, c3 / d};
}

// Integers (b1, b2, b3) with (2a1+1)(2b1+1) + 4 a2 b2 + 4 a3 b3 = 1, via
// extended gcd of (2a1+1, 4a2, 4a3); the unit cofactor of the odd slot is
// forced odd, so b1 = (x-1)/2 is integral.
inline std::array<IntScalar, 3> solve_parity_bezout(const IntScalar& a1, const IntScalar& a2,
                                                    const IntScalar& a3) {
    IntScalar u = 2 * a1 + 1;
    auto [d1, s, t] = xgcd(u, 4 * a2);
    auto [d2, p, q] = xgcd(d1, 4 * a3);
    if (d2 != 1) throw NotCoprime("gcd(2a1+1, a2, a3) must be 1");
    IntScalar x = p * s;
    IntScalar b2 = p * t;
    IntScalar b3 = q;
    if ((x & 1) == 0) throw NotCoprime("internal: unit cofactor came out even");
    return {(x - 1) / 2, b2, b3};
}

// Output of the U_2' adaptation: the replacement pair, the auxiliary
// complement pair (a3, b3), and the decomposition data of x2 in the frame,
//   x2 = 2*zeta1*a1 + 2*eta1*b1 + d*a2', with d odd.
struct AdaptedU2 {
    IntSymplecticPair u2prime;
    IntVector a3, b3;
    IntScalar zeta1, eta1;
    IntScalar d;  // 2*zeta2' + 1
};

inline AdaptedU2 build_adapted_U2prime(const IntSymplecticPair& u1, const IntSymplecticPair& u2,
                                       const IntVector& x2, const GenusContext& ctx) {
    if (ctx.g < 4) throw HypothesisViolation("construction requires g >= 4");
    IntSymplecticSubgroup u1g{{u1}};
    IntSymplecticSubgroup u2g{{u2}};
    if (!orthogonal(u1g, u2g)) throw HypothesisViolation("U1 and U2 must be orthogonal");
    if (!(x2.mod2() == u2.x.mod2()))
        throw BadParityPattern("x2 must reduce to a2 mod 2");

    const IntVector &a1 = u1.x, &b1 = u1.y, &a2 = u2.x, &b2 = u2.y;
    IntScalar two_zeta1 = int_form(x2, b1);
    IntScalar two_eta1 = -int_form(x2, a1);
    IntScalar cb = int_form(x2, b2);        // 2*zeta2 + 1
    IntScalar ca = -int_form(x2, a2);       // 2*eta2
    IntVector resid = x2 - two_zeta1 * a1 - two_eta1 * b1 - cb * a2 - ca * b2;

    IntVector a3, b3;
    IntScalar two_zeta3 = 0;
    if (!resid.is_zero()) {
        IntScalar ct = content(resid);  // even: resid = 2 * (integral vector)
        a3 = resid;
        for (auto& x : a3.c) x /= ct;
        IntScalar sign = 1;
        for (const auto& x : a3.c) {
            if (x == 0) continue;
            if (x < 0) sign = -1;
            break;
        }
        if (sign < 0)
            for (auto& x : a3.c) x = -x;
        two_zeta3 = sign * ct;
        IntSymplecticSubgroup frame4 = direct_sum(u1g, u2g);
        IntVector u = detail::dual_partner(a3);
        b3 = project(u, frame4).second;
    } else {
        IntSymplecticSubgroup comp = orthogonal_complement_basis(direct_sum(u1g, u2g), ctx);
        a3 = comp.pairs.front().x;
        b3 = comp.pairs.front().y;
    }

    auto alpha = primitive_odd_rep(cb, ca, two_zeta3);
    IntScalar d = cb / alpha[0];
    auto beta = solve_parity_bezout((alpha[0] - 1) / 2, alpha[1] / 2, alpha[2] / 2);
    IntVector a2p = alpha[0] * a2 + alpha[1] * b2 + alpha[2] * a3;
    IntVector b2p = (2 * beta[0] + 1) * b2 - (2 * beta[1]) * a2 + (2 * beta[2]) * b3;
    return AdaptedU2{IntSymplecticPair(std::move(a2p), std::move(b2p)),
                     std::move(a3), std::move(b3),
                     two_zeta1 / 2, two_eta1 / 2, d};
}

// Frame for the V_1' construction; the required pairing table is
//   a1.b1 = a2'.b2' = a4'.b4' = 1, all other pairings zero.
struct V1Frame {
    IntVector a1, b1, a2p, b2p, a3p, a4p, b4p;
};

struct V1Coefficients {
    IntScalar zeta1, eta1, lambda1, mu1, lambda2p, mu2p, zeta2p;
};

inline IntSymplecticPair build_V1prime(const V1Coefficients& cs, const V1Frame& f) {
    const IntVector* vecs[7] = {&f.a1, &f.b1, &f.a2p, &f.b2p, &f.a3p, &f.a4p, &f.b4p};
    // expected Gram: dual pairs (0,1), (2,3), (5,6); everything else 0
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) {
            IntScalar expect = 0;
            if ((i == 0 && j == 1) || (i == 2 && j == 3) || (i == 5 && j == 6)) expect = 1;
            if (int_form(*vecs[i], *vecs[j]) != expect)
                throw FrameInvalid("frame pairing table violated at (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
        }
    IntScalar A = 2 * cs.zeta2p + 1;
    IntScalar B = 2 * cs.mu2p + 1;
    IntVector x1p = (A * B) * f.a1 + (2 * cs.eta1 * B) * f.b2p +
                    (4 * cs.eta1 * cs.lambda2p - 2 * cs.mu1 * A) * f.a2p + IntScalar(2) * f.a4p;
    IntVector y1base = (A * B) * f.b1 - (2 * cs.zeta1 * B) * f.b2p +
                       (2 * cs.lambda1 * A - 4 * cs.zeta1 * cs.lambda2p) * f.a2p;
    IntScalar r = int_form(x1p, y1base);
    if ((1 - r) % 4 != 0)
        throw FrameInvalid("form value before the nu term must be 1 mod 4");
    IntScalar nu = (1 - r) / 4;
    IntVector y1p = y1base + (2 * nu) * f.b4p;
    return IntSymplecticPair(std::move(x1p), std::move(y1p));
}

} // namespace bcj

#endif
