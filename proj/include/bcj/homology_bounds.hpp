#ifndef BCJ_HOMOLOGY_BOUNDS_HPP
#define BCJ_HOMOLOGY_BOUNDS_HPP

#include <chrono>
#include <mutex>
#include <random>
#include <set>
#include <unordered_set>

#include "bcj/curve_systems.hpp"
#include "bcj/util.hpp"

namespace bcj {

struct DimReport {
    int g = 0;
    int k = 2;
    std::uint64_t upper_bound = 0;
    std::uint64_t lower_bound = 0;
    int sigma_ambient_dim = 0;  // dim of the wedge-square of the B_2' coordinate space
    double elapsed_seconds = 0.0;
};

// number of distinct sigma values of genus-1 separating twists; by the
// rank-2 injectivity lemma this equals the 2-dimensional symplectic
// subspace count for g = 1 and every g >= 3
inline std::uint64_t count_genus1_sigmas(int g) {
    GenusContext ctx(g);
    std::set<std::vector<Monomial>> values;
    enumerate_symplectic_2subspaces(ctx, [&](std::uint32_t u, std::uint32_t v) {
        values.insert(sigma_of_pair(u, v, ctx).poly.monos);
    });
    return values.size();
}

namespace detail {

// 2-dimensional symplectic subspaces inside the complement of the span of
// (u, v), counted by direct enumeration of the complement's elements
inline std::uint64_t complement_2subspace_count(std::uint32_t u, std::uint32_t v,
                                                const GenusContext& ctx) {
    Gf2Subspace comp = orthogonal_complement(
        Gf2Subspace::span({Gf2Vector(u, ctx.dim()), Gf2Vector(v, ctx.dim())}, ctx), ctx);
    const int d = comp.dim();
    std::vector<std::uint32_t> elems;
    elems.reserve(std::size_t(1) << d);
    for (std::uint32_t sel = 1; sel < (1u << d); ++sel) {
        std::uint32_t e = 0;
        for (int i = 0; i < d; ++i)
            if (sel & (1u << i)) e ^= comp.basis[static_cast<std::size_t>(i)];
        elems.push_back(e);
    }
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
            std::uint32_t a = elems[i], b = elems[j];
            if (!form_raw(a, b)) continue;
            auto [r1, r2] = canonical_pair(a, b);
            if ((r1 == a && r2 == b) || (r1 == b && r2 == a)) ++count;
        }
    return count;
}

} // namespace detail

// Spanning-set size for the genus-1 generators: unordered pairs of
// orthogonal 2-dimensional symplectic subspaces, computed as the product
// formula after verifying that the per-subspace complement count is
// constant (exhaustively at g = 4, sampled above).
inline std::uint64_t upper_bound_h2(int g) {
    if (g < 4) throw HypothesisViolation("upper bound argument requires g >= 4");
    GenusContext ctx(g);
    auto subspaces = all_symplectic_2subspaces(ctx);
    std::vector<std::size_t> check_indices;
    if (g == 4) {
        check_indices.resize(subspaces.size());
        for (std::size_t i = 0; i < subspaces.size(); ++i) check_indices[i] = i;
    } else {
        std::mt19937_64 rng(0x5eedu + static_cast<unsigned>(g));
        for (int t = 0; t < 100; ++t)
            check_indices.push_back(rng() % subspaces.size());
    }
    std::uint64_t per_v = 0;
    for (std::size_t idx : check_indices) {
        auto [u, v] = subspaces[idx];
        std::uint64_t c = detail::complement_2subspace_count(u, v, ctx);
        if (per_v == 0) per_v = c;
        else if (c != per_v)
            throw DomainError("per-subspace complement count is not constant");
    }
    std::uint64_t total = subspaces.size() * per_v;
    if (total % 2 != 0) throw DomainError("pair double-count must be even");
    return total / 2;
}

// GF(2) rank of the span of the wedge invariants of all orthogonal genus-1
// pairs; a lower bound for the dimension because the invariant is linear.
inline std::uint64_t lower_bound_h2(int g, unsigned threads = 1) {
    if (g < 3) throw HypothesisViolation("lower bound stream requires g >= 3");
    GenusContext ctx(g);
    B2PrimeBasis basis(ctx);
    auto subspaces = all_symplectic_2subspaces(ctx);
    const std::size_t n = subspaces.size();
    std::vector<std::vector<std::uint16_t>> coords(n);
    for (std::size_t i = 0; i < n; ++i)
        coords[i] = basis.coordinates(sigma_of_pair(subspaces[i].first, subspaces[i].second, ctx).poly);

    const std::size_t ambient = WedgeRankStream::binomial(static_cast<std::size_t>(basis.dim()), 2);
    WedgeRankStream shared(basis.dim(), 2);
    std::mutex mu;
    parallel_ranges(n, threads, [&](std::size_t lo, std::size_t hi) {
        WedgeRankStream local(basis.dim(), 2);
        std::vector<std::size_t> idxbuf;
        for (std::size_t i = lo; i < hi; ++i) {
            auto [u1, v1] = subspaces[i];
            for (std::size_t j = i + 1; j < n; ++j) {
                auto [u2, v2] = subspaces[j];
                if (form_raw(u1, u2) || form_raw(u1, v2) || form_raw(v1, u2) || form_raw(v1, v2))
                    continue;
                idxbuf.clear();
                for (std::uint16_t a : coords[i])
                    for (std::uint16_t b : coords[j]) {
                        if (a == b) continue;
                        std::uint16_t lo16 = std::min(a, b), hi16 = std::max(a, b);
                        idxbuf.push_back(lo16 + std::size_t(hi16) * (hi16 - 1) / 2);
                    }
                local.insert_indices(idxbuf);
                if (static_cast<std::size_t>(local.rank()) == ambient) break;
            }
            if (static_cast<std::size_t>(local.rank()) == ambient) break;
        }
        std::lock_guard<std::mutex> lock(mu);
        shared.merge(local);
    });
    return static_cast<std::uint64_t>(shared.rank());
}

inline DimReport dim_bounds(int g, unsigned threads = 1) {
    auto start = std::chrono::steady_clock::now();
    DimReport r;
    r.g = g;
    r.k = 2;
    GenusContext ctx(g);
    B2PrimeBasis basis(ctx);
    r.sigma_ambient_dim = static_cast<int>(WedgeRankStream::binomial(static_cast<std::size_t>(basis.dim()), 2));
    r.upper_bound = upper_bound_h2(g);
    r.lower_bound = lower_bound_h2(g, threads);
    if (r.lower_bound > r.upper_bound)
        throw DomainError("lower bound exceeded upper bound");
    r.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

// ---- census -------------------------------------------------------------------

struct CensusRow {
    std::string tree;
    int k = 0;
    bool has_genus0 = false;
    bool sigma_k_zero = false;
};

inline std::vector<CensusRow> census(int g, int k) {
    if (k < 1 || k > 2 * g - 3)
        throw HypothesisViolation("census requires 1 <= k <= 2g-3");
    std::vector<CensusRow> rows;
    for (const PartitionTree& t : enumerate_admissible_trees(g, k)) {
        CensusRow row;
        row.tree = canonical_tree_string(t);
        row.k = k;
        row.has_genus0 = std::any_of(t.genus.begin(), t.genus.end(), [](int x) { return x == 0; });
        row.sigma_k_zero = tree_sigma_k(t, realize_splitting(t)).w.is_zero();
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace bcj

#endif
