#ifndef BCJ_INT_VECTOR_HPP
#define BCJ_INT_VECTOR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "bcj/gf2.hpp"

namespace bcj {

using IntScalar = boost::multiprecision::cpp_int;

// Homology class with integer coordinates, same interleaved layout as
// Gf2Vector: index 2(i-1) is a_i, index 2(i-1)+1 is b_i.
struct IntVector {
    std::vector<IntScalar> c;

    IntVector() = default;
    explicit IntVector(int dim) : c(static_cast<std::size_t>(dim)) {}
    static IntVector basis(int coord, const GenusContext& ctx) {
        IntVector v(ctx.dim());
        v.c[static_cast<std::size_t>(coord)] = 1;
        return v;
    }
    int dim() const { return static_cast<int>(c.size()); }
    bool is_zero() const {
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }
    IntVector operator+(const IntVector& o) const {
        if (dim() != o.dim()) throw DimensionMismatch("vector lengths differ");
        IntVector r(dim());
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    IntVector operator-(const IntVector& o) const {
        if (dim() != o.dim()) throw DimensionMismatch("vector lengths differ");
        IntVector r(dim());
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    friend IntVector operator*(const IntScalar& s, const IntVector& v) {
        IntVector r(v.dim());
        for (std::size_t i = 0; i < v.c.size(); ++i) r.c[i] = s * v.c[i];
        return r;
    }
    bool operator==(const IntVector&) const = default;

    Gf2Vector mod2() const {
        std::uint32_t bits = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            if ((c[i] & 1) != 0) bits |= 1u << i;
        return Gf2Vector(bits, dim());
    }
};

// algebraic intersection number: sum_i (x[a_i] y[b_i] - x[b_i] y[a_i])
inline IntScalar int_form(const IntVector& x, const IntVector& y) {
    if (x.dim() != y.dim()) throw DimensionMismatch("int_form: lengths differ");
    IntScalar r = 0;
    for (int i = 0; i + 1 < x.dim(); i += 2)
        r += x.c[static_cast<std::size_t>(i)] * y.c[static_cast<std::size_t>(i + 1)] -
             x.c[static_cast<std::size_t>(i + 1)] * y.c[static_cast<std::size_t>(i)];
    return r;
}

// extended gcd: returns (g, s, t) with s*a + t*b = g >= 0
inline std::tuple<IntScalar, IntScalar, IntScalar> xgcd(IntScalar a, IntScalar b) {
    IntScalar s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        IntScalar q = a / b;
        IntScalar r = a - q * b;
        a = b; b = r;
        IntScalar s2 = s0 - q * s1; s0 = s1; s1 = s2;
        IntScalar t2 = t0 - q * t1; t0 = t1; t1 = t2;
    }
    if (a < 0) { a = -a; s0 = -s0; t0 = -t0; }
    return {a, s0, t0};
}

inline IntScalar content(const IntVector& v) {
    IntScalar g = 0;
    for (const auto& x : v.c) g = boost::multiprecision::gcd(g, x);
    return g;
}

// ---- text syntax ------------------------------------------------------------
// signed integer combinations of basis labels, e.g. "2a1 - b3 + 4b4".

inline IntVector parse_int_vector(const std::string& text, const GenusContext& ctx) {
    IntVector v(ctx.dim());
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i < text.size() && text[i] == '0' && text.find_first_not_of(" \t", i + 1) == std::string::npos)
        return v;
    bool any = false;
    while (i < text.size()) {
        skip_ws();
        if (i >= text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (any) {
            throw ParseError("expected '+' or '-' between terms: " + text);
        }
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        IntScalar coeff = (start == i) ? IntScalar(1) : IntScalar(text.substr(start, i - start));
        skip_ws();
        if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
        if (i >= text.size() || (text[i] != 'a' && text[i] != 'b'))
            throw ParseError("expected basis label in vector: " + text);
        char kind = text[i++];
        start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw ParseError("basis label missing index: " + text);
        int idx = std::stoi(text.substr(start, i - start));
        if (idx < 1 || idx > ctx.g)
            throw DimensionMismatch("basis label out of range for g=" + std::to_string(ctx.g));
        int coord = kind == 'a' ? GenusContext::a_index(idx) : GenusContext::b_index(idx);
        v.c[static_cast<std::size_t>(coord)] += sign * coeff;
        any = true;
        skip_ws();
    }
    if (!any) throw ParseError("empty vector literal");
    return v;
}

inline std::string format_int_vector(const IntVector& v) {
    std::string out;
    for (int i = 0; i < v.dim(); ++i) {
        const IntScalar& x = v.c[static_cast<std::size_t>(i)];
        if (x == 0) continue;
        IntScalar mag = x < 0 ? IntScalar(-x) : x;
        if (out.empty())
            out += x < 0 ? "-" : "";
        else
            out += x < 0 ? " - " : " + ";
        if (mag != 1) out += mag.str();
        out += GenusContext::coord_name(i);
    }
    return out.empty() ? "0" : out;
}

} // namespace bcj

#endif
