#ifndef BCJ_BOOLEAN_POLY_HPP
#define BCJ_BOOLEAN_POLY_HPP

#include <algorithm>
#include <map>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "bcj/gf2.hpp"

namespace bcj {

// A square-free monomial in the 2g variables is the bitmask of its variable
// set, in the same interleaved coordinate layout as Gf2Vector. The empty set
// is the constant monomial 1.
using Monomial = std::uint32_t;

inline int monomial_degree(Monomial m) { return std::popcount(m); }

// graded lexicographic order key: degree first, then mask value, with
// variable priority a_1 < b_1 < a_2 < ... < b_g
inline std::uint64_t monomial_key(Monomial m) {
    return (std::uint64_t(monomial_degree(m)) << 32) | m;
}

// Element of B(S): set of square-free monomials with implicit GF(2)
// coefficients, kept sorted ascending by monomial_key.
struct BoolPoly {
    std::vector<Monomial> monos;
    int g = 0;

    BoolPoly() = default;
    explicit BoolPoly(int genus) : g(genus) {}

    static BoolPoly zero(const GenusContext& ctx) { return BoolPoly(ctx.g); }
    static BoolPoly one(const GenusContext& ctx) {
        BoolPoly p(ctx.g);
        p.monos.push_back(0);
        return p;
    }
    static BoolPoly generator(int coord, const GenusContext& ctx) {
        BoolPoly p(ctx.g);
        p.monos.push_back(1u << coord);
        return p;
    }

    bool is_zero() const { return monos.empty(); }
    // max degree of members; -1 for the zero polynomial
    int degree() const { return monos.empty() ? -1 : monomial_degree(monos.back()); }
    bool contains(Monomial m) const {
        return std::binary_search(monos.begin(), monos.end(), m,
                                  [](Monomial x, Monomial y) { return monomial_key(x) < monomial_key(y); });
    }
    bool operator==(const BoolPoly&) const = default;
};

inline bool degree_at_most(const BoolPoly& p, int k) { return p.degree() <= k; }

namespace detail {

inline void sort_and_cancel(std::vector<Monomial>& v) {
    std::sort(v.begin(), v.end(),
              [](Monomial x, Monomial y) { return monomial_key(x) < monomial_key(y); });
    std::size_t out = 0;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if ((j - i) % 2 == 1) v[out++] = v[i];
        i = j;
    }
    v.resize(out);
}

} // namespace detail

inline BoolPoly add(const BoolPoly& p, const BoolPoly& q) {
    if (p.g != q.g) throw ContextMismatch("polynomial sum: different genus contexts");
    BoolPoly r(p.g);
    r.monos.reserve(p.monos.size() + q.monos.size());
    std::size_t i = 0, j = 0;
    while (i < p.monos.size() || j < q.monos.size()) {
        if (j == q.monos.size() ||
            (i < p.monos.size() && monomial_key(p.monos[i]) < monomial_key(q.monos[j])))
            r.monos.push_back(p.monos[i++]);
        else if (i == p.monos.size() || monomial_key(q.monos[j]) < monomial_key(p.monos[i]))
            r.monos.push_back(q.monos[j++]);
        else { ++i; ++j; }
    }
    return r;
}

// Distribute; the product of square-free monomials is the union of their
// variable sets (idempotence), with char-2 cancellation.
inline BoolPoly mul(const BoolPoly& p, const BoolPoly& q) {
    if (p.g != q.g) throw ContextMismatch("polynomial product: different genus contexts");
    BoolPoly r(p.g);
    r.monos.reserve(p.monos.size() * q.monos.size());
    for (Monomial a : p.monos)
        for (Monomial b : q.monos) r.monos.push_back(a | b);
    detail::sort_and_cancel(r.monos);
    return r;
}

// bar(x) for x = sum of basis classes: the unique expansion consistent with
// relation (1): sum of the generators of x's support plus the parity of the
// number of intersecting support pairs. bar(0) = 0.
inline BoolPoly bar(const Gf2Vector& x, const GenusContext& ctx) {
    if (x.dim != ctx.dim()) throw DimensionMismatch("bar: vector length must equal 2g");
    BoolPoly p(ctx.g);
    if (x.bits == 0) return p;
    for (int c = 0; c < ctx.dim(); ++c)
        if (x.bits & (1u << c)) p.monos.push_back(1u << c);
    // pairs {a_i, b_i} both present each contribute e_i . e_j = 1
    if (std::popcount(x.bits & (x.bits >> 1) & kEvenBits) & 1) p.monos.insert(p.monos.begin(), 0);
    return p;
}

// Arf = sum_j a_j b_j over the standard symplectic basis
inline BoolPoly arf(const GenusContext& ctx) {
    BoolPoly p(ctx.g);
    for (int j = 1; j <= ctx.g; ++j)
        p.monos.push_back((1u << GenusContext::a_index(j)) | (1u << GenusContext::b_index(j)));
    return p;
}

inline Monomial arf_lead_monomial(const GenusContext& ctx) {
    return (1u << GenusContext::a_index(ctx.g)) | (1u << GenusContext::b_index(ctx.g));
}

// Incremental GF(2) echelon over sparse polynomials, keyed by leading
// monomial; enough for rank and span-membership questions in tests.
class PolyEchelon {
public:
    // true if p was independent of the current span
    bool insert(BoolPoly p) {
        while (!p.is_zero()) {
            auto it = rows_.find(monomial_key(p.monos.back()));
            if (it == rows_.end()) {
                rows_.emplace(monomial_key(p.monos.back()), std::move(p));
                return true;
            }
            p = add(p, it->second);
        }
        return false;
    }
    BoolPoly reduce(BoolPoly p) const {
        while (!p.is_zero()) {
            auto it = rows_.find(monomial_key(p.monos.back()));
            if (it == rows_.end()) break;
            p = add(p, it->second);
        }
        return p;
    }
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    std::map<std::uint64_t, BoolPoly> rows_;
};

// ---- Sp(2g, Z/2) substitution action ---------------------------------------

// A GF(2) matrix as its columns: column i is the image of e_i.
struct Gf2Matrix {
    std::vector<std::uint32_t> cols;
    int dim = 0;

    static Gf2Matrix identity(const GenusContext& ctx) {
        Gf2Matrix m;
        m.dim = ctx.dim();
        for (int i = 0; i < m.dim; ++i) m.cols.push_back(1u << i);
        return m;
    }
    std::uint32_t apply(std::uint32_t v) const {
        std::uint32_t r = 0;
        while (v) {
            int c = std::countr_zero(v);
            v &= v - 1;
            r ^= cols[c];
        }
        return r;
    }
    // this * o (apply o first)
    Gf2Matrix compose(const Gf2Matrix& o) const {
        Gf2Matrix m;
        m.dim = dim;
        m.cols.reserve(o.cols.size());
        for (std::uint32_t c : o.cols) m.cols.push_back(apply(c));
        return m;
    }
    bool is_symplectic(const GenusContext& ctx) const {
        for (int i = 0; i < ctx.dim(); ++i)
            for (int j = i + 1; j < ctx.dim(); ++j)
                if (form_raw(cols[i], cols[j]) != form_raw(1u << i, 1u << j)) return false;
        return true;
    }
    static Gf2Matrix transvection(std::uint32_t v, const GenusContext& ctx) {
        Gf2Matrix m;
        m.dim = ctx.dim();
        for (int i = 0; i < m.dim; ++i) {
            std::uint32_t e = 1u << i;
            m.cols.push_back(form_raw(e, v) ? (e ^ v) : e);
        }
        return m;
    }
};

// Substitute each generator x_{e_i} by bar(M e_i) and extend multiplicatively
// and additively; a ring automorphism of B(S).
inline BoolPoly sp_action(const BoolPoly& p, const Gf2Matrix& M, const GenusContext& ctx) {
    if (M.dim != ctx.dim()) throw DimensionMismatch("sp_action: matrix dimension");
    if (!M.is_symplectic(ctx)) throw NotSymplectic("sp_action: matrix does not preserve the form");
    BoolPoly result(ctx.g);
    std::vector<BoolPoly> gen_images(ctx.dim());
    for (int i = 0; i < ctx.dim(); ++i)
        gen_images[i] = bar(Gf2Vector(M.cols[i], ctx.dim()), ctx);
    for (Monomial m : p.monos) {
        BoolPoly term = BoolPoly::one(ctx);
        std::uint32_t rest = m;
        while (rest) {
            int c = std::countr_zero(rest);
            rest &= rest - 1;
            term = mul(term, gen_images[c]);
        }
        result = add(result, term);
    }
    return result;
}

// ---- text syntax ------------------------------------------------------------
// terms joined by "+", monomial = variables joined by "*", e.g.
// "a1*b1 + a2*b2 + 1"; print order is degree-descending, mask-ascending.

inline std::string format_poly(const BoolPoly& p) {
    if (p.is_zero()) return "0";
    std::vector<Monomial> order = p.monos;
    std::sort(order.begin(), order.end(), [](Monomial x, Monomial y) {
        if (monomial_degree(x) != monomial_degree(y))
            return monomial_degree(x) > monomial_degree(y);
        return x < y;
    });
    std::string out;
    for (Monomial m : order) {
        if (!out.empty()) out += " + ";
        if (m == 0) { out += "1"; continue; }
        std::string term;
        for (int c = 0; c < 32; ++c) {
            if (!(m & (1u << c))) continue;
            if (!term.empty()) term += "*";
            term += GenusContext::coord_name(c);
        }
        out += term;
    }
    return out;
}

inline BoolPoly parse_poly(const std::string& text, const GenusContext& ctx) {
    BoolPoly p(ctx.g);
    std::vector<Monomial> monos;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i >= text.size()) throw ParseError("empty polynomial literal");
    while (i < text.size()) {
        skip_ws();
        Monomial m = 0;
        bool saw_factor = false;
        while (true) {
            skip_ws();
            if (i < text.size() && text[i] == '1' &&
                (i + 1 >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
                ++i;
                saw_factor = true;
            } else if (i < text.size() && (text[i] == 'a' || text[i] == 'b')) {
                char kind = text[i++];
                std::size_t start = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (start == i) throw ParseError("variable missing index: " + text);
                int idx = std::stoi(text.substr(start, i - start));
                if (idx < 1 || idx > ctx.g)
                    throw DimensionMismatch("variable out of range for g=" + std::to_string(ctx.g));
                m |= 1u << (kind == 'a' ? GenusContext::a_index(idx) : GenusContext::b_index(idx));
                saw_factor = true;
            } else if (!saw_factor && i < text.size() && text[i] == '0' ) {
                ++i;
                skip_ws();
                if (i != text.size()) throw ParseError("unexpected input after 0: " + text);
                return p;
            } else {
                throw ParseError("expected monomial factor in: " + text);
            }
            skip_ws();
            if (i < text.size() && text[i] == '*') { ++i; continue; }
            break;
        }
        monos.push_back(m);
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] != '+') throw ParseError("expected '+' in polynomial: " + text);
        ++i;
    }
    p.monos = std::move(monos);
    detail::sort_and_cancel(p.monos);
    return p;
}

} // namespace bcj

#endif
