#ifndef BCJ_WEDGE_HPP
#define BCJ_WEDGE_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bcj/errors.hpp"

namespace bcj {

// Element of the k-th exterior power of a labeled GF(2) space: a set of
// k-element index subsets, with char-2 cancellation applied on construction.
struct WedgeElement {
    int ambient_dim = 0;
    int k = 0;
    std::vector<std::vector<std::uint16_t>> terms;  // each sorted; list sorted

    bool is_zero() const { return terms.empty(); }
    bool operator==(const WedgeElement&) const = default;

    WedgeElement operator+(const WedgeElement& o) const {
        if (ambient_dim != o.ambient_dim || k != o.k)
            throw MixedShapes("wedge sum: shapes differ");
        WedgeElement r;
        r.ambient_dim = ambient_dim;
        r.k = k;
        // symmetric difference of two sorted term lists
        std::size_t i = 0, j = 0;
        while (i < terms.size() || j < o.terms.size()) {
            if (j == o.terms.size() || (i < terms.size() && terms[i] < o.terms[j]))
                r.terms.push_back(terms[i++]);
            else if (i == terms.size() || o.terms[j] < terms[i])
                r.terms.push_back(o.terms[j++]);
            else { ++i; ++j; }
        }
        return r;
    }
};

namespace detail {

inline void cancel_terms(std::vector<std::vector<std::uint16_t>>& terms) {
    std::sort(terms.begin(), terms.end());
    std::vector<std::vector<std::uint16_t>> out;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if ((j - i) % 2 == 1) out.push_back(terms[i]);
        i = j;
    }
    terms = std::move(out);
}

} // namespace detail

// Multilinear alternating expansion of v_1 ^ ... ^ v_k over GF(2); each part
// is given by its support (sorted list of coordinate indices, all < n).
inline WedgeElement wedge(const std::vector<std::vector<std::uint16_t>>& parts, int ambient_dim) {
    if (parts.empty()) throw MixedShapes("wedge: need at least one part");
    for (const auto& p : parts)
        for (std::uint16_t idx : p)
            if (idx >= ambient_dim) throw DimensionMismatch("wedge: coordinate out of range");
    WedgeElement w;
    w.ambient_dim = ambient_dim;
    w.k = static_cast<int>(parts.size());

    std::vector<std::uint16_t> choice(parts.size());
    std::vector<std::vector<std::uint16_t>> raw;
    // depth-first choice of one index per part, indices pairwise distinct
    std::vector<std::size_t> pos(parts.size(), 0);
    std::size_t depth = 0;
    while (true) {
        if (depth == parts.size()) {
            std::vector<std::uint16_t> t(choice.begin(), choice.end());
            std::sort(t.begin(), t.end());
            raw.push_back(std::move(t));
            --depth;
            ++pos[depth];
        }
        while (true) {
            if (pos[depth] >= parts[depth].size()) {
                if (depth == 0) {
                    detail::cancel_terms(raw);
                    w.terms = std::move(raw);
                    return w;
                }
                pos[depth] = 0;
                --depth;
                ++pos[depth];
                continue;
            }
            std::uint16_t cand = parts[depth][pos[depth]];
            bool dup = false;
            for (std::size_t d = 0; d < depth; ++d)
                if (choice[d] == cand) { dup = true; break; }
            if (dup) { ++pos[depth]; continue; }
            choice[depth] = cand;
            ++depth;
            break;
        }
    }
}

// Streaming GF(2) rank accumulator over the C(n, k) coordinate space of
// k-subset terms. State is the current echelon; rows insert with plain
// forward reduction (rank needs no back-substitution). Workers can batch
// into local streams and merge.
class WedgeRankStream {
public:
    WedgeRankStream(int ambient_dim, int k)
        : n_(ambient_dim), k_(k), dim_(binomial(ambient_dim, k)) {
        words_ = (dim_ + 63) / 64;
        row_of_pivot_.assign(dim_, -1);
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    std::size_t term_space_dim() const { return dim_; }

    // colex rank of a sorted k-subset
    std::size_t term_index(const std::vector<std::uint16_t>& term) const {
        std::size_t r = 0;
        for (std::size_t i = 0; i < term.size(); ++i) r += binomial(term[i], i + 1);
        return r;
    }

    void insert(const WedgeElement& w) {
        if (w.ambient_dim != n_ || w.k != k_)
            throw MixedShapes("rank stream: element shape differs");
        scratch_.assign(words_, 0);
        for (const auto& t : w.terms) {
            std::size_t idx = term_index(t);
            scratch_[idx / 64] ^= std::uint64_t(1) << (idx % 64);
        }
        insert_scratch();
    }

    // raw insert for callers that toggle term indices themselves
    void insert_indices(const std::vector<std::size_t>& indices) {
        scratch_.assign(words_, 0);
        for (std::size_t idx : indices)
            scratch_[idx / 64] ^= std::uint64_t(1) << (idx % 64);
        insert_scratch();
    }

    void merge(const WedgeRankStream& other) {
        for (const auto& row : other.rows_) {
            scratch_ = row;
            insert_scratch();
        }
    }

    static std::size_t binomial(std::size_t n, std::size_t k) {
        if (k > n) return 0;
        std::size_t r = 1;
        for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
        return r;
    }

private:
    void insert_scratch() {
        while (true) {
            std::size_t lead = dim_;
            for (std::size_t w = 0; w < words_; ++w) {
                if (scratch_[w]) {
                    lead = w * 64 + std::countr_zero(scratch_[w]);
                    break;
                }
            }
            if (lead >= dim_) return;  // reduced to zero
            int r = row_of_pivot_[lead];
            if (r < 0) {
                row_of_pivot_[lead] = static_cast<int>(rows_.size());
                rows_.push_back(scratch_);
                return;
            }
            const auto& row = rows_[static_cast<std::size_t>(r)];
            for (std::size_t w = 0; w < words_; ++w) scratch_[w] ^= row[w];
        }
    }

    int n_;
    int k_;
    std::size_t dim_;
    std::size_t words_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<int> row_of_pivot_;
    std::vector<std::uint64_t> scratch_;
};

// GF(2) rank of the span of a list of wedge elements.
inline int rank_of_span(const std::vector<WedgeElement>& elems) {
    if (elems.empty()) return 0;
    for (const auto& e : elems)
        if (e.ambient_dim != elems.front().ambient_dim || e.k != elems.front().k)
            throw MixedShapes("rank_of_span: mixed shapes");
    WedgeRankStream s(elems.front().ambient_dim, elems.front().k);
    for (const auto& e : elems) s.insert(e);
    return s.rank();
}

} // namespace bcj

#endif
