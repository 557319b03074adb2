#ifndef BCJ_GF2_HPP
#define BCJ_GF2_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bcj/errors.hpp"
#include "bcj/util.hpp"

namespace bcj {

// Homology coordinates are interleaved: bit 2(i-1) is a_i, bit 2(i-1)+1 is
// b_i, so the symplectic form is a fixed stride-2 mask operation.
inline constexpr std::uint32_t kEvenBits = 0x55555555u;

struct GenusContext {
    int g = 0;

    GenusContext() = default;
    explicit GenusContext(int genus) : g(genus) {
        if (g < 1 || g > 16)
            throw UnsupportedGenus("genus must be in [1, 16], got " + std::to_string(g));
    }
    int dim() const { return 2 * g; }
    std::uint32_t full_mask() const {
        return dim() == 32 ? 0xffffffffu : ((1u << dim()) - 1u);
    }
    // variable/coordinate index of a_i resp. b_i (1-based i)
    static int a_index(int i) { return 2 * (i - 1); }
    static int b_index(int i) { return 2 * (i - 1) + 1; }
    static std::string coord_name(int idx) {
        return (idx % 2 == 0 ? "a" : "b") + std::to_string(idx / 2 + 1);
    }
    bool operator==(const GenusContext&) const = default;
};

struct Gf2Vector {
    std::uint32_t bits = 0;
    int dim = 0;

    Gf2Vector() = default;
    Gf2Vector(std::uint32_t b, int d) : bits(b), dim(d) {}
    static Gf2Vector basis(int coord, const GenusContext& ctx) {
        return Gf2Vector(1u << coord, ctx.dim());
    }
    bool is_zero() const { return bits == 0; }
    Gf2Vector operator+(const Gf2Vector& o) const {
        if (dim != o.dim) throw DimensionMismatch("vector lengths differ");
        return Gf2Vector(bits ^ o.bits, dim);
    }
    bool operator==(const Gf2Vector&) const = default;
};

// mod 2 intersection number in the interleaved layout
inline int form_raw(std::uint32_t u, std::uint32_t v) {
    std::uint32_t t = (u & (v >> 1) & kEvenBits) ^ ((u >> 1) & v & kEvenBits);
    return std::popcount(t) & 1;
}

inline int gf2_form(const Gf2Vector& u, const Gf2Vector& v, const GenusContext& ctx) {
    if (u.dim != ctx.dim() || v.dim != ctx.dim())
        throw DimensionMismatch("gf2_form: lengths must equal 2g");
    return form_raw(u.bits, v.bits);
}

// J*v in coordinates, i.e. the linear functional x -> x.v as a bitmask:
// form(x, v) = popcount(x & dual_raw(v)) mod 2.
inline std::uint32_t dual_raw(std::uint32_t v) {
    return ((v & kEvenBits) << 1) | ((v >> 1) & kEvenBits);
}

namespace detail {

// Reduced row echelon form over GF(2); pivot = lowest set bit, rows kept
// sorted by pivot, every pivot cleared from all other rows. The result is
// the canonical basis of the span.
inline std::vector<std::uint32_t> rref(std::vector<std::uint32_t> rows) {
    std::vector<std::uint32_t> basis;
    for (std::uint32_t r : rows) {
        for (std::uint32_t b : basis) {
            if (r & (b & -b)) r ^= b;  // b & -b isolates b's pivot bit
        }
        if (r) basis.push_back(r);
    }
    // clear each pivot from the other rows, then order by pivot
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::uint32_t piv = basis[i] & -basis[i];
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (j != i && (basis[j] & piv)) basis[j] ^= basis[i];
    }
    std::sort(basis.begin(), basis.end(),
              [](std::uint32_t x, std::uint32_t y) { return (x & -x) < (y & -y); });
    return basis;
}

} // namespace detail

struct Gf2Subspace {
    std::vector<std::uint32_t> basis;  // reduced row echelon, sorted by pivot
    int ambient_dim = 0;

    Gf2Subspace() = default;
    static Gf2Subspace span(const std::vector<Gf2Vector>& gens, const GenusContext& ctx) {
        std::vector<std::uint32_t> rows;
        rows.reserve(gens.size());
        for (const auto& v : gens) {
            if (v.dim != ctx.dim())
                throw DimensionMismatch("subspace generator length must equal 2g");
            rows.push_back(v.bits);
        }
        Gf2Subspace s;
        s.ambient_dim = ctx.dim();
        s.basis = detail::rref(std::move(rows));
        return s;
    }
    static Gf2Subspace from_rref(std::vector<std::uint32_t> rows, int ambient) {
        Gf2Subspace s;
        s.ambient_dim = ambient;
        s.basis = std::move(rows);
        return s;
    }
    int dim() const { return static_cast<int>(basis.size()); }
    bool contains(std::uint32_t v) const {
        for (std::uint32_t b : basis)
            if (v & (b & -b)) v ^= b;
        return v == 0;
    }
    bool operator==(const Gf2Subspace&) const = default;
};

struct Gf2SymplecticSubspace {
    Gf2Subspace space;
    std::vector<std::pair<Gf2Vector, Gf2Vector>> sbasis;

    int dim() const { return 2 * static_cast<int>(sbasis.size()); }
};

// Gram matrix of the form restricted to s is invertible over GF(2).
inline bool is_symplectic(const Gf2Subspace& s, const GenusContext& ctx) {
    (void)ctx;
    const int k = s.dim();
    if (k == 0) return true;
    if (k % 2 != 0) return false;
    // Gaussian elimination on the k x k Gram matrix packed in uint32 rows
    std::vector<std::uint32_t> gram(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (form_raw(s.basis[i], s.basis[j])) gram[i] |= 1u << j;
    int rank = 0;
    for (int col = 0; col < k; ++col) {
        int piv = -1;
        for (int r = rank; r < k; ++r)
            if (gram[r] & (1u << col)) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(gram[rank], gram[piv]);
        for (int r = 0; r < k; ++r)
            if (r != rank && (gram[r] & (1u << col))) gram[r] ^= gram[rank];
        ++rank;
    }
    return rank == k;
}

// Deterministic symplectic Gram-Schmidt: always pair the lowest-index
// remaining vector with the first partner of nonzero pairing.
inline Gf2SymplecticSubspace symplectic_basis_of(const Gf2Subspace& s, const GenusContext& ctx) {
    if (!is_symplectic(s, ctx))
        throw NotSymplectic("symplectic_basis_of: form is degenerate on the subspace");
    std::vector<std::uint32_t> work = s.basis;
    Gf2SymplecticSubspace out;
    out.space = s;
    while (!work.empty()) {
        std::uint32_t x = work.front();
        std::size_t yi = 0;
        for (std::size_t j = 1; j < work.size(); ++j)
            if (form_raw(x, work[j])) { yi = j; break; }
        if (yi == 0) throw NotSymplectic("symplectic_basis_of: no pairing partner");
        std::uint32_t y = work[yi];
        std::vector<std::uint32_t> rest;
        rest.reserve(work.size() - 2);
        for (std::size_t j = 1; j < work.size(); ++j) {
            if (j == yi) continue;
            std::uint32_t w = work[j];
            if (form_raw(w, y)) w ^= x;
            if (form_raw(w, x)) w ^= y;
            rest.push_back(w);
        }
        out.sbasis.emplace_back(Gf2Vector(x, ctx.dim()), Gf2Vector(y, ctx.dim()));
        work = std::move(rest);
    }
    return out;
}

// Kernel of the pairing maps against s's basis.
inline Gf2Subspace orthogonal_complement(const Gf2Subspace& s, const GenusContext& ctx) {
    const int n = ctx.dim();
    // rows of the constraint matrix: x |-> popcount(x & dual(b)) mod 2
    std::vector<std::uint32_t> constraints;
    constraints.reserve(s.basis.size());
    for (std::uint32_t b : s.basis) constraints.push_back(dual_raw(b));
    constraints = detail::rref(std::move(constraints));
    // standard kernel construction: free columns parameterize the kernel
    std::vector<int> pivot_of_col(n, -1);
    for (std::size_t i = 0; i < constraints.size(); ++i)
        pivot_of_col[std::countr_zero(constraints[i])] = static_cast<int>(i);
    std::vector<std::uint32_t> kernel;
    for (int c = 0; c < n; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::uint32_t v = 1u << c;
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            if (constraints[i] & (1u << c))
                v |= 1u << std::countr_zero(constraints[i]);
        }
        kernel.push_back(v);
    }
    return Gf2Subspace::from_rref(detail::rref(std::move(kernel)), n);
}

// The canonical (RREF) basis pair of span{u, v}; requires independence.
inline std::pair<std::uint32_t, std::uint32_t> canonical_pair(std::uint32_t u, std::uint32_t v) {
    if (std::countr_zero(u) > std::countr_zero(v)) std::swap(u, v);
    if (std::countr_zero(u) == std::countr_zero(v)) v ^= u;
    if (u & (v & -v)) u ^= v;
    return {u, v};
}

// Yields each 2-dimensional symplectic subspace exactly once, as its RREF
// basis pair, in lexicographic order of that pair. A span is emitted when
// the scanning pair (u, v) is itself the canonical pair, so no dedup state
// is needed and index ranges are independently consumable.
inline void enumerate_symplectic_2subspaces(
    const GenusContext& ctx,
    const std::function<void(std::uint32_t, std::uint32_t)>& emit) {
    const std::uint64_t top = ctx.full_mask();
    for (std::uint64_t u = 1; u <= top; ++u) {
        for (std::uint64_t v = 1; v <= top; ++v) {
            if (u == v) continue;
            std::uint32_t uu = static_cast<std::uint32_t>(u);
            std::uint32_t vv = static_cast<std::uint32_t>(v);
            if (!form_raw(uu, vv)) continue;
            auto [r1, r2] = canonical_pair(uu, vv);
            if (r1 == uu && r2 == vv) emit(uu, vv);
        }
    }
}

inline std::vector<std::pair<std::uint32_t, std::uint32_t>>
all_symplectic_2subspaces(const GenusContext& ctx) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    enumerate_symplectic_2subspaces(
        ctx, [&](std::uint32_t u, std::uint32_t v) { out.emplace_back(u, v); });
    return out;
}

// (2^{2g}-1) * 2^{2g-1} / 6
inline std::uint64_t symplectic_2subspace_count(int g) {
    std::uint64_t n = std::uint64_t(1) << (2 * g);
    return (n - 1) * (n / 2) / 6;
}

inline Gf2SymplecticSubspace pair_subspace(std::uint32_t u, std::uint32_t v,
                                           const GenusContext& ctx) {
    Gf2SymplecticSubspace s;
    auto [r1, r2] = canonical_pair(u, v);
    s.space = Gf2Subspace::from_rref({r1, r2}, ctx.dim());
    s.sbasis.emplace_back(Gf2Vector(u, ctx.dim()), Gf2Vector(v, ctx.dim()));
    return s;
}

// ---- text syntax -----------------------------------------------------------
// vectors: sums of basis labels, e.g. "a1+b2"; subspaces: comma-separated
// generator lists, e.g. "a1+b2, b1".

inline Gf2Vector parse_gf2_vector(const std::string& text, const GenusContext& ctx) {
    std::uint32_t bits = 0;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i < text.size() && text[i] == '0' && i + 1 == text.size()) return Gf2Vector(0, ctx.dim());
    bool expect_term = true;
    while (i < text.size()) {
        skip_ws();
        if (i >= text.size()) break;
        if (!expect_term) {
            if (text[i] != '+') throw ParseError("expected '+' in vector: " + text);
            ++i;
            skip_ws();
        }
        if (i >= text.size() || (text[i] != 'a' && text[i] != 'b'))
            throw ParseError("expected basis label in vector: " + text);
        char kind = text[i++];
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw ParseError("basis label missing index: " + text);
        int idx = std::stoi(text.substr(start, i - start));
        if (idx < 1 || idx > ctx.g)
            throw DimensionMismatch("basis label out of range for g=" + std::to_string(ctx.g));
        bits ^= 1u << (kind == 'a' ? GenusContext::a_index(idx) : GenusContext::b_index(idx));
        expect_term = false;
    }
    if (expect_term) throw ParseError("empty vector literal");
    return Gf2Vector(bits, ctx.dim());
}

inline std::string format_gf2_vector(const Gf2Vector& v) {
    if (v.bits == 0) return "0";
    std::string out;
    for (int c = 0; c < v.dim; ++c) {
        if (!(v.bits & (1u << c))) continue;
        if (!out.empty()) out += "+";
        out += GenusContext::coord_name(c);
    }
    return out;
}

inline Gf2Subspace parse_gf2_subspace(const std::string& text, const GenusContext& ctx) {
    std::vector<Gf2Vector> gens;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string part = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
        if (part.find_first_not_of(" \t") != std::string::npos)
            gens.push_back(parse_gf2_vector(part, ctx));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (gens.empty()) throw ParseError("empty subspace literal");
    return Gf2Subspace::span(gens, ctx);
}

inline std::string format_gf2_subspace(const Gf2Subspace& s) {
    if (s.basis.empty()) return "0";
    std::string out;
    for (std::uint32_t r : s.basis) {
        if (!out.empty()) out += ", ";
        out += format_gf2_vector(Gf2Vector(r, s.ambient_dim));
    }
    return out;
}

} // namespace bcj

#endif
