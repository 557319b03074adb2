#ifndef BCJ_ARF_IDEAL_HPP
#define BCJ_ARF_IDEAL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "bcj/boolean_poly.hpp"

namespace bcj {

// Echelonized GF(2) basis of the principal ideal (Arf) inside B(S), stored
// densely over monomial positions ordered descending by the graded-lex key,
// so a row's leading monomial is its first set bit. Rows are kept in reduced
// echelon form; normal forms against this basis are canonical coset
// representatives.
//
// The ideal is inherently 2^{2g}-dimensional in storage, hence the genus
// guard; every degree-<=2 computation in the library uses the equivalent
// fast path below instead and works for all supported genera.
class ArfIdealBasis {
public:
    static constexpr int kMaxIdealGenus = 7;

    explicit ArfIdealBasis(const GenusContext& ctx) : g_(ctx.g) {
        if (ctx.g > kMaxIdealGenus)
            throw UnsupportedGenus("explicit Arf ideal echelon requires g <= " +
                                   std::to_string(kMaxIdealGenus));
        n_monos_ = std::size_t(1) << (2 * ctx.g);
        words_ = (n_monos_ + 63) / 64;
        // position = rank under descending (degree, mask)
        std::vector<std::uint32_t> by_key(n_monos_);
        for (std::size_t m = 0; m < n_monos_; ++m) by_key[m] = static_cast<std::uint32_t>(m);
        std::sort(by_key.begin(), by_key.end(), [](std::uint32_t x, std::uint32_t y) {
            return monomial_key(x) > monomial_key(y);
        });
        pos_of_mono_.resize(n_monos_);
        mono_of_pos_ = std::move(by_key);
        for (std::size_t p = 0; p < n_monos_; ++p) pos_of_mono_[mono_of_pos_[p]] = static_cast<std::uint32_t>(p);
        row_of_pivot_.assign(n_monos_, -1);

        const BoolPoly arf_poly = arf(ctx);
        std::vector<Monomial> multiple;
        for (std::size_t m = 0; m < n_monos_; ++m) {
            multiple.clear();
            for (Monomial am : arf_poly.monos) multiple.push_back(static_cast<Monomial>(m) | am);
            detail::sort_and_cancel(multiple);
            insert(multiple);
        }
    }

    int genus() const { return g_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    // canonical coset representative of p modulo (Arf)
    BoolPoly reduce(const BoolPoly& p) const {
        if (p.g != g_) throw ContextMismatch("normal_form: polynomial from a different context");
        std::vector<std::uint64_t> acc(words_, 0);
        densify(p.monos, acc);
        // single ascending pass: rows are RREF, so a row XOR never touches
        // positions below its pivot
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t skipped = 0;  // irreducible bits already passed in this word
            while (true) {
                std::uint64_t pending = acc[w] & ~skipped;
                if (!pending) break;
                std::size_t bit = std::countr_zero(pending);
                int r = row_of_pivot_[w * 64 + bit];
                if (r < 0) {
                    skipped |= std::uint64_t(1) << bit;
                    continue;
                }
                const auto& row = rows_[static_cast<std::size_t>(r)];
                for (std::size_t w2 = w; w2 < words_; ++w2) acc[w2] ^= row[w2];
            }
        }
        return sparsify(acc);
    }

    bool contains(const BoolPoly& p) const { return reduce(p).is_zero(); }

    // the echelon rows as polynomials, in pivot order
    std::vector<BoolPoly> rows_as_polys() const {
        std::vector<std::pair<std::size_t, std::size_t>> order;  // (pivot pos, row idx)
        for (std::size_t pos = 0; pos < n_monos_; ++pos)
            if (row_of_pivot_[pos] >= 0) order.emplace_back(pos, row_of_pivot_[pos]);
        std::vector<BoolPoly> out;
        out.reserve(order.size());
        for (auto& [pos, r] : order) out.push_back(sparsify(rows_[r]));
        return out;
    }

private:
    void densify(const std::vector<Monomial>& monos, std::vector<std::uint64_t>& acc) const {
        std::fill(acc.begin(), acc.end(), 0);
        for (Monomial m : monos) {
            std::size_t pos = pos_of_mono_[m];
            acc[pos / 64] ^= std::uint64_t(1) << (pos % 64);
        }
    }
    BoolPoly sparsify(const std::vector<std::uint64_t>& acc) const {
        BoolPoly p(g_);
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = acc[w];
            while (bits) {
                std::size_t pos = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                p.monos.push_back(mono_of_pos_[pos]);
            }
        }
        detail::sort_and_cancel(p.monos);
        return p;
    }

    void insert(const std::vector<Monomial>& monos) {
        std::vector<std::uint64_t> acc(words_, 0);
        densify(monos, acc);
        // full reduction against the current RREF
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t skipped = 0;
            while (true) {
                std::uint64_t pending = acc[w] & ~skipped;
                if (!pending) break;
                std::size_t bit = std::countr_zero(pending);
                int r = row_of_pivot_[w * 64 + bit];
                if (r < 0) {
                    skipped |= std::uint64_t(1) << bit;
                    continue;
                }
                const auto& row = rows_[static_cast<std::size_t>(r)];
                for (std::size_t w2 = w; w2 < words_; ++w2) acc[w2] ^= row[w2];
            }
        }
        std::size_t lead = n_monos_;
        for (std::size_t w = 0; w < words_; ++w)
            if (acc[w]) { lead = w * 64 + std::countr_zero(acc[w]); break; }
        if (lead >= n_monos_) return;
        // back-substitute the new pivot out of existing rows
        std::size_t lw = lead / 64;
        std::uint64_t lbit = std::uint64_t(1) << (lead % 64);
        for (auto& row : rows_) {
            if (row[lw] & lbit)
                for (std::size_t w2 = lw; w2 < words_; ++w2) row[w2] ^= acc[w2];
        }
        row_of_pivot_[lead] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(acc));
    }

    int g_;
    std::size_t n_monos_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint32_t> pos_of_mono_;
    std::vector<std::uint32_t> mono_of_pos_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<int> row_of_pivot_;
};

inline std::shared_ptr<const ArfIdealBasis> build_arf_ideal(const GenusContext& ctx) {
    // built once per genus and shared read-only across threads
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const ArfIdealBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(ctx.g);
    if (it != cache.end()) return it->second;
    auto ideal = std::make_shared<const ArfIdealBasis>(ctx);
    cache.emplace(ctx.g, ideal);
    return ideal;
}

// Reduces p's monomials against the echelon until irreducible; with no ideal
// this is the identity (the boundary-surface algebra has no quotient).
inline BoolPoly normal_form(const BoolPoly& p, const ArfIdealBasis* ideal) {
    if (!ideal) return p;
    return ideal->reduce(p);
}

// Canonical normal form of a degree-<=2 polynomial modulo (Arf): the only
// ideal pivot in degree <= 2 is Arf's leading monomial a_g b_g (every other
// row of the echelon is led by a monomial of degree >= 3), so reduction is a
// single conditional XOR with Arf. Agrees with ArfIdealBasis::reduce on its
// domain and needs no exponential echelon, so it serves every genus.
inline BoolPoly sigma_normal_form(const BoolPoly& p, const GenusContext& ctx) {
    if (p.degree() > 2)
        throw DomainError("sigma_normal_form: polynomial degree exceeds 2");
    if (p.contains(arf_lead_monomial(ctx))) return add(p, arf(ctx));
    return p;
}

// The canonical monomial basis of B_2' normal forms: all degree-<=2
// monomials except a_g b_g, ordered ascending by the graded-lex key.
// dim = 2g^2 + g.
struct B2PrimeBasis {
    std::vector<Monomial> monos;
    GenusContext ctx;

    explicit B2PrimeBasis(const GenusContext& c) : ctx(c) {
        const Monomial excluded = arf_lead_monomial(c);
        monos.push_back(0);
        for (int i = 0; i < c.dim(); ++i) monos.push_back(1u << i);
        std::vector<Monomial> quads;
        for (int i = 0; i < c.dim(); ++i)
            for (int j = i + 1; j < c.dim(); ++j) {
                Monomial m = (1u << i) | (1u << j);
                if (m != excluded) quads.push_back(m);
            }
        std::sort(quads.begin(), quads.end());
        monos.insert(monos.end(), quads.begin(), quads.end());
    }

    int dim() const { return static_cast<int>(monos.size()); }

    int index_of(Monomial m) const {
        auto it = std::lower_bound(monos.begin(), monos.end(), m,
                                   [](Monomial x, Monomial y) { return monomial_key(x) < monomial_key(y); });
        if (it == monos.end() || *it != m)
            throw DomainError("monomial not in the B_2' basis");
        return static_cast<int>(it - monos.begin());
    }

    // coordinates (support) of a normal-form polynomial of degree <= 2
    std::vector<std::uint16_t> coordinates(const BoolPoly& p) const {
        std::vector<std::uint16_t> out;
        out.reserve(p.monos.size());
        for (Monomial m : p.monos) out.push_back(static_cast<std::uint16_t>(index_of(m)));
        return out;
    }
};

} // namespace bcj

#endif
