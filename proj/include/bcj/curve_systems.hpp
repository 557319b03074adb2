#ifndef BCJ_CURVE_SYSTEMS_HPP
#define BCJ_CURVE_SYSTEMS_HPP

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "bcj/abelian_cycles.hpp"

namespace bcj {

// Genus-labeled tree encoding an admissible separating-curve system: vertices
// are complementary subsurfaces, edges are the twist curves.
struct PartitionTree {
    int g = 0;                              // ambient genus
    std::vector<int> genus;                 // per vertex
    std::vector<std::pair<int, int>> edges; // tree edges

    int vertex_count() const { return static_cast<int>(genus.size()); }
    int k() const { return static_cast<int>(edges.size()); }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(genus.size());
        for (int e = 0; e < k(); ++e) {
            adj[static_cast<std::size_t>(edges[e].first)].push_back(e);
            adj[static_cast<std::size_t>(edges[e].second)].push_back(e);
        }
        return adj;
    }
    int degree(int v) const {
        int d = 0;
        for (const auto& [a, b] : edges) d += (a == v) + (b == v);
        return d;
    }
    int other_end(int e, int v) const {
        return edges[static_cast<std::size_t>(e)].first == v
                   ? edges[static_cast<std::size_t>(e)].second
                   : edges[static_cast<std::size_t>(e)].first;
    }
    // vertices on v's side of tree - e
    std::vector<int> side_of(int e, int v) const {
        std::vector<int> seen;
        std::vector<bool> mark(genus.size(), false);
        seen.push_back(v);
        mark[static_cast<std::size_t>(v)] = true;
        auto adj = adjacency();
        for (std::size_t i = 0; i < seen.size(); ++i) {
            for (int e2 : adj[static_cast<std::size_t>(seen[i])]) {
                if (e2 == e) continue;
                int u = other_end(e2, seen[i]);
                if (!mark[static_cast<std::size_t>(u)]) {
                    mark[static_cast<std::size_t>(u)] = true;
                    seen.push_back(u);
                }
            }
        }
        return seen;
    }
    int side_genus(int e, int v) const {
        int s = 0;
        for (int u : side_of(e, v)) s += genus[static_cast<std::size_t>(u)];
        return s;
    }
};

// ---- text format: nested parentheses "genus(child)(child)..." ---------------

inline PartitionTree parse_tree(const std::string& text, int ambient_g) {
    PartitionTree t;
    t.g = ambient_g;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    std::function<int()> parse_vertex = [&]() -> int {
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw ParseError("expected vertex genus in tree: " + text);
        int v = static_cast<int>(t.genus.size());
        t.genus.push_back(std::stoi(text.substr(start, i - start)));
        skip_ws();
        while (i < text.size() && text[i] == '(') {
            ++i;
            int child = parse_vertex();
            t.edges.emplace_back(v, child);
            skip_ws();
            if (i >= text.size() || text[i] != ')') throw ParseError("unbalanced '(' in tree: " + text);
            ++i;
            skip_ws();
        }
        return v;
    };
    parse_vertex();
    skip_ws();
    if (i != text.size()) throw ParseError("trailing input after tree: " + text);
    return t;
}

namespace detail {

inline std::string rooted_tree_string(const PartitionTree& t, int v, int parent_edge,
                                      const std::vector<std::vector<int>>& adj) {
    std::vector<std::string> children;
    for (int e : adj[static_cast<std::size_t>(v)]) {
        if (e == parent_edge) continue;
        children.push_back(rooted_tree_string(t, t.other_end(e, v), e, adj));
    }
    std::sort(children.begin(), children.end());
    std::string s = std::to_string(t.genus[static_cast<std::size_t>(v)]);
    for (const auto& c : children) s += "(" + c + ")";
    return s;
}

} // namespace detail

// canonical representative of the isomorphism class: minimum rooted string
// over all roots; doubles as the parseable text form
inline std::string canonical_tree_string(const PartitionTree& t) {
    auto adj = t.adjacency();
    std::string best;
    for (int v = 0; v < t.vertex_count(); ++v) {
        std::string s = detail::rooted_tree_string(t, v, -1, adj);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

// empty list iff the tree is an admissible separating-curve system
inline std::vector<std::string> validate_tree(const PartitionTree& t) {
    std::vector<std::string> bad;
    const int n = t.vertex_count();
    if (n == 0) {
        bad.push_back("tree has no vertices");
        return bad;
    }
    for (const auto& [a, b] : t.edges)
        if (a < 0 || a >= n || b < 0 || b >= n || a == b) {
            bad.push_back("edge endpoints out of range");
            return bad;
        }
    if (t.k() != n - 1) bad.push_back("edge count must be vertex count - 1");
    // connectivity (acyclicity follows with the edge count)
    if (t.k() == n - 1) {
        std::vector<int> comp = t.side_of(-1, 0);
        if (static_cast<int>(comp.size()) != n) bad.push_back("tree is not connected");
    }
    int total = std::accumulate(t.genus.begin(), t.genus.end(), 0);
    if (total != t.g)
        bad.push_back("vertex genera sum to " + std::to_string(total) + ", ambient genus is " +
                      std::to_string(t.g));
    for (int v = 0; v < n; ++v) {
        if (t.genus[static_cast<std::size_t>(v)] < 0)
            bad.push_back("vertex " + std::to_string(v) + " has negative genus");
        int d = t.degree(v);
        if (d == 1 && t.genus[static_cast<std::size_t>(v)] == 0)
            bad.push_back("vertex " + std::to_string(v) + ": inessential curve (genus-0 cap)");
        if (d == 2 && t.genus[static_cast<std::size_t>(v)] == 0)
            bad.push_back("vertex " + std::to_string(v) + ": isotopic curves (genus-0 annulus)");
    }
    if (t.k() > 2 * t.g - 3)
        bad.push_back("k exceeds 2g-3");  // consequence of the other constraints
    return bad;
}

// the smaller of the two side genera
inline int curve_genus(const PartitionTree& t, int e) {
    auto [a, b] = t.edges[static_cast<std::size_t>(e)];
    return std::min(t.side_genus(e, a), t.side_genus(e, b));
}

struct EdgeClass {
    bool outermost = false;
    int cap_vertex = -1;
    bool grouping = false;
    int cb_vertex = -1;
    std::vector<int> grouped_edges;  // OP_i, the outermost edges in the cap base side
};

struct Classification {
    std::vector<EdgeClass> edges;
    bool simple = false;  // every cap has genus 1
};

namespace detail {

inline bool edge_outermost(const PartitionTree& t, int e) {
    auto [a, b] = t.edges[static_cast<std::size_t>(e)];
    return t.degree(a) == 1 || t.degree(b) == 1;
}

// true iff every edge in v's side of tree - e is outermost
inline bool side_all_outermost(const PartitionTree& t, int e, int v) {
    auto side = t.side_of(e, v);
    std::vector<bool> in_side(t.genus.size(), false);
    for (int u : side) in_side[static_cast<std::size_t>(u)] = true;
    for (int e2 = 0; e2 < t.k(); ++e2) {
        if (e2 == e) continue;
        auto [a, b] = t.edges[static_cast<std::size_t>(e2)];
        if (in_side[static_cast<std::size_t>(a)] && in_side[static_cast<std::size_t>(b)] &&
            !edge_outermost(t, e2))
            return false;
    }
    return true;
}

} // namespace detail

inline Classification classify(const PartitionTree& t) {
    Classification out;
    out.edges.resize(static_cast<std::size_t>(t.k()));
    bool simple = true;
    for (int e = 0; e < t.k(); ++e) {
        EdgeClass& ec = out.edges[static_cast<std::size_t>(e)];
        auto [a, b] = t.edges[static_cast<std::size_t>(e)];
        bool la = t.degree(a) == 1, lb = t.degree(b) == 1;
        if (la || lb) {
            ec.outermost = true;
            // single-edge trees have two cap candidates; the lower-index leaf
            // is the canonical cap
            ec.cap_vertex = la && lb ? std::min(a, b) : (la ? a : b);
            if (t.genus[static_cast<std::size_t>(ec.cap_vertex)] != 1) simple = false;
            continue;
        }
        // grouping: some side of e contains only outermost edges
        bool qa = detail::side_all_outermost(t, e, a);
        bool qb = detail::side_all_outermost(t, e, b);
        if (!qa && !qb) continue;
        ec.grouping = true;
        int cb;
        if (qa && qb) {
            int ga = t.side_genus(e, a), gb = t.side_genus(e, b);
            cb = ga < gb ? a : (gb < ga ? b : std::min(a, b));
        } else {
            cb = qa ? a : b;
        }
        ec.cb_vertex = cb;
        auto side = t.side_of(e, cb);
        std::vector<bool> in_side(t.genus.size(), false);
        for (int u : side) in_side[static_cast<std::size_t>(u)] = true;
        for (int e2 = 0; e2 < t.k(); ++e2) {
            if (e2 == e) continue;
            auto [x, y] = t.edges[static_cast<std::size_t>(e2)];
            if (in_side[static_cast<std::size_t>(x)] && in_side[static_cast<std::size_t>(y)])
                ec.grouped_edges.push_back(e2);
        }
    }
    out.simple = simple;
    return out;
}

// ---- canonical splitting -----------------------------------------------------

struct SplittingAssignment {
    std::vector<IntSymplecticSubgroup> vertex_subgroups;
    std::vector<std::vector<int>> vertex_handles;  // 1-based handle indices
};

// DFS from the lowest-index vertex, neighbors in ascending order; assign
// consecutive standard pairs (a_i, b_i) to each vertex
inline SplittingAssignment realize_splitting(const PartitionTree& t) {
    GenusContext ctx(t.g);
    SplittingAssignment asg;
    asg.vertex_subgroups.resize(static_cast<std::size_t>(t.vertex_count()));
    asg.vertex_handles.resize(static_cast<std::size_t>(t.vertex_count()));
    auto adj = t.adjacency();
    std::vector<bool> seen(t.genus.size(), false);
    std::vector<int> stack = {0};
    seen[0] = true;
    int next_handle = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int j = 0; j < t.genus[static_cast<std::size_t>(v)]; ++j)
            asg.vertex_handles[static_cast<std::size_t>(v)].push_back(next_handle++);
        asg.vertex_subgroups[static_cast<std::size_t>(v)] = standard_block(
            asg.vertex_handles[static_cast<std::size_t>(v)].empty()
                ? 1
                : asg.vertex_handles[static_cast<std::size_t>(v)].front(),
            t.genus[static_cast<std::size_t>(v)], ctx);
        std::vector<int> nbrs;
        for (int e : adj[static_cast<std::size_t>(v)]) nbrs.push_back(t.other_end(e, v));
        std::sort(nbrs.begin(), nbrs.end(), std::greater<int>());
        for (int u : nbrs)
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                stack.push_back(u);
            }
    }
    return asg;
}

// sigma of the direct sum of the vertex subgroups on one side of the edge;
// the canonical side is the smaller-genus one, tie-broken by lower vertex
// index, and both sides give the same class (tested property).
inline SigmaValue edge_sigma_side(const PartitionTree& t, const SplittingAssignment& asg, int e,
                                  int side_vertex, const GenusContext& ctx) {
    BoolPoly acc(ctx.g);
    for (int v : t.side_of(e, side_vertex)) {
        const auto& sub = asg.vertex_subgroups[static_cast<std::size_t>(v)];
        acc = add(acc, sigma_of_int_subgroup(sub, ctx, SigmaMode::boundary).poly);
    }
    return SigmaValue{sigma_normal_form(acc, ctx), SigmaMode::closed};
}

inline int canonical_side_vertex(const PartitionTree& t, int e) {
    auto [a, b] = t.edges[static_cast<std::size_t>(e)];
    int ga = t.side_genus(e, a), gb = t.side_genus(e, b);
    if (ga != gb) return ga < gb ? a : b;
    return std::min(a, b);
}

inline SigmaValue edge_sigma(const PartitionTree& t, const SplittingAssignment& asg, int e) {
    GenusContext ctx(t.g);
    return edge_sigma_side(t, asg, e, canonical_side_vertex(t, e), ctx);
}

// wedge of all edge sigmas (edge order is irrelevant mod 2)
inline SigmaWedge tree_sigma_k(const PartitionTree& t, const SplittingAssignment& asg) {
    GenusContext ctx(t.g);
    B2PrimeBasis basis(ctx);
    std::vector<std::vector<std::uint16_t>> parts;
    parts.reserve(static_cast<std::size_t>(t.k()));
    for (int e = 0; e < t.k(); ++e)
        parts.push_back(basis.coordinates(edge_sigma(t, asg, e).poly));
    return SigmaWedge{t.g, wedge(parts, basis.dim())};
}

// vanishing criterion for k < g: the cycle is zero iff some complementary
// subsurface has genus 0
inline bool vanishes_main3(const PartitionTree& t) {
    if (t.k() >= t.g) throw HypothesisViolation("criterion requires k < g");
    for (int v = 0; v < t.vertex_count(); ++v)
        if (t.genus[static_cast<std::size_t>(v)] == 0) return true;
    return false;
}

// ---- genus-1 reduction --------------------------------------------------------

namespace detail {

struct ReduceState {
    std::vector<std::vector<int>> handles;  // per vertex, 1-based
    std::vector<std::pair<int, int>> edges;

    int vertex_count() const { return static_cast<int>(handles.size()); }
    int k() const { return static_cast<int>(edges.size()); }
    int degree(int v) const {
        int d = 0;
        for (const auto& [a, b] : edges) d += (a == v) + (b == v);
        return d;
    }
    int other_end(int e, int v) const {
        return edges[static_cast<std::size_t>(e)].first == v
                   ? edges[static_cast<std::size_t>(e)].second
                   : edges[static_cast<std::size_t>(e)].first;
    }
    std::vector<int> side_of(int e, int v) const {
        std::vector<int> seen = {v};
        std::vector<bool> mark(handles.size(), false);
        mark[static_cast<std::size_t>(v)] = true;
        for (std::size_t i = 0; i < seen.size(); ++i) {
            for (int e2 = 0; e2 < k(); ++e2) {
                if (e2 == e) continue;
                auto [a, b] = edges[static_cast<std::size_t>(e2)];
                int u = -1;
                if (a == seen[i]) u = b;
                else if (b == seen[i]) u = a;
                if (u >= 0 && !mark[static_cast<std::size_t>(u)]) {
                    mark[static_cast<std::size_t>(u)] = true;
                    seen.push_back(u);
                }
            }
        }
        return seen;
    }
    bool edge_outermost(int e) const {
        auto [a, b] = edges[static_cast<std::size_t>(e)];
        return degree(a) == 1 || degree(b) == 1;
    }
    bool side_all_outermost(int e, int v) const {
        auto side = side_of(e, v);
        std::vector<bool> in_side(handles.size(), false);
        for (int u : side) in_side[static_cast<std::size_t>(u)] = true;
        for (int e2 = 0; e2 < k(); ++e2) {
            if (e2 == e) continue;
            auto [a, b] = edges[static_cast<std::size_t>(e2)];
            if (in_side[static_cast<std::size_t>(a)] && in_side[static_cast<std::size_t>(b)] &&
                !edge_outermost(e2))
                return false;
        }
        return true;
    }
    // cap of an outermost edge: its leaf endpoint, lower index when both are
    int cap_vertex(int e) const {
        auto [a, b] = edges[static_cast<std::size_t>(e)];
        bool la = degree(a) == 1, lb = degree(b) == 1;
        if (la && lb) return std::min(a, b);
        return la ? a : b;
    }
};

inline void reduce_rec(const ReduceState& st, const GenusContext& ctx,
                       std::vector<CycleSystem>& out) {
    const int k = st.k();
    if (k == 0) return;

    // stage 1: split the lowest-index cap of genus >= 2 into genus-1 caps
    int split_cap = -1, split_edge = -1;
    for (int e = 0; e < k; ++e) {
        if (!st.edge_outermost(e)) continue;
        int c = st.cap_vertex(e);
        if (st.handles[static_cast<std::size_t>(c)].size() >= 2 &&
            (split_cap < 0 || c < split_cap)) {
            split_cap = c;
            split_edge = e;
        }
    }
    if (split_cap >= 0) {
        int w = st.other_end(split_edge, split_cap);
        const auto all = st.handles[static_cast<std::size_t>(split_cap)];
        for (int s : all) {
            ReduceState child = st;
            child.handles[static_cast<std::size_t>(split_cap)] = {s};
            for (int h : all)
                if (h != s) child.handles[static_cast<std::size_t>(w)].push_back(h);
            std::sort(child.handles[static_cast<std::size_t>(w)].begin(),
                      child.handles[static_cast<std::size_t>(w)].end());
            reduce_rec(child, ctx, out);
        }
        return;
    }

    // stage 2: grouping curves (all caps genus 1 now). A genus-0 cap base
    // kills the cycle; otherwise expand the lowest-index grouping edge over
    // the handles of its cap base.
    int group_edge = -1, group_cb = -1;
    for (int e = 0; e < k; ++e) {
        if (st.edge_outermost(e)) continue;
        auto [a, b] = st.edges[static_cast<std::size_t>(e)];
        bool qa = st.side_all_outermost(e, a);
        bool qb = st.side_all_outermost(e, b);
        if (!qa && !qb) continue;
        if ((qa && st.handles[static_cast<std::size_t>(a)].empty()) ||
            (qb && st.handles[static_cast<std::size_t>(b)].empty()))
            return;  // genus-0 cap base: the whole cycle vanishes
        if (group_edge < 0) {
            group_edge = e;
            if (qa && qb) {
                int ga = 0, gb = 0;
                for (int u : st.side_of(e, a)) ga += static_cast<int>(st.handles[static_cast<std::size_t>(u)].size());
                for (int u : st.side_of(e, b)) gb += static_cast<int>(st.handles[static_cast<std::size_t>(u)].size());
                group_cb = ga < gb ? a : (gb < ga ? b : std::min(a, b));
            } else {
                group_cb = qa ? a : b;
            }
        }
    }
    if (group_edge >= 0) {
        int v = group_cb;
        int w = st.other_end(group_edge, v);
        const auto all = st.handles[static_cast<std::size_t>(v)];
        for (int s : all) {
            ReduceState child = st;
            // re-point v's other edges at w; v becomes the new genus-1 cap
            for (int e2 = 0; e2 < k; ++e2) {
                if (e2 == group_edge) continue;
                auto& [a, b] = child.edges[static_cast<std::size_t>(e2)];
                if (a == v) a = w;
                if (b == v) b = w;
            }
            child.handles[static_cast<std::size_t>(v)] = {s};
            for (int h : all)
                if (h != s) child.handles[static_cast<std::size_t>(w)].push_back(h);
            std::sort(child.handles[static_cast<std::size_t>(w)].begin(),
                      child.handles[static_cast<std::size_t>(w)].end());
            reduce_rec(child, ctx, out);
        }
        return;
    }

    // terminal: every edge is outermost with a genus-1 cap. A genus-0 center
    // (three or more curves bounding a pair of pants) kills the cycle.
    for (int v = 0; v < st.vertex_count(); ++v)
        if (st.degree(v) >= 2 && st.handles[static_cast<std::size_t>(v)].empty()) return;
    std::vector<IntSymplecticSubgroup> parts;
    parts.reserve(static_cast<std::size_t>(k));
    for (int e = 0; e < k; ++e) {
        int c = st.cap_vertex(e);
        parts.push_back(standard_block(st.handles[static_cast<std::size_t>(c)].front(), 1, ctx));
    }
    out.emplace_back(ctx, std::move(parts));
}

} // namespace detail

// Formal GF(2) sum of genus-1 systems whose sigma_k total equals the tree's:
// caps of genus h split into h genus-1 caps, grouping curves with genus-0
// cap bases kill their branch, grouping curves with positive-genus cap bases
// expand over the cap base's handles. Empty for k >= g.
inline std::vector<CycleSystem> reduce_to_genus1(const PartitionTree& t) {
    auto bad = validate_tree(t);
    if (!bad.empty()) throw HypothesisViolation("invalid tree: " + bad.front());
    GenusContext ctx(t.g);
    SplittingAssignment asg = realize_splitting(t);
    detail::ReduceState st;
    st.handles = asg.vertex_handles;
    st.edges = t.edges;
    std::vector<CycleSystem> out;
    detail::reduce_rec(st, ctx, out);
    return out;
}

// ---- enumeration up to isomorphism --------------------------------------------

namespace detail {

inline std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int n) {
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (int v : seq) ++deg[static_cast<std::size_t>(v)];
    std::vector<std::pair<int, int>> edges;
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
        if (deg[static_cast<std::size_t>(v)] == 1) leaves.insert(v);
    std::vector<int> work = seq;
    for (int v : work) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.emplace_back(leaf, v);
        if (--deg[static_cast<std::size_t>(v)] == 1) leaves.insert(v);
    }
    int u = *leaves.begin(), v = *std::next(leaves.begin());
    edges.emplace_back(u, v);
    return edges;
}

inline void compositions(int total, int slots, std::vector<int>& cur,
                         const std::function<void(const std::vector<int>&)>& emit) {
    if (slots == 1) {
        cur.push_back(total);
        emit(cur);
        cur.pop_back();
        return;
    }
    for (int first = 0; first <= total; ++first) {
        cur.push_back(first);
        compositions(total - first, slots - 1, cur, emit);
        cur.pop_back();
    }
}

} // namespace detail

// All admissible genus-labeled trees with k edges on ambient genus g, one
// representative per isomorphism class, sorted by canonical string.
inline std::vector<PartitionTree> enumerate_admissible_trees(int g, int k) {
    const int n = k + 1;
    std::vector<PartitionTree> out;
    if (k < 1) return out;

    // tree shapes on n vertices, deduplicated by unlabeled canonical form
    std::vector<std::vector<std::pair<int, int>>> shapes;
    {
        std::set<std::string> seen;
        auto try_shape = [&](const std::vector<std::pair<int, int>>& edges) {
            PartitionTree t;
            t.g = 0;
            t.genus.assign(static_cast<std::size_t>(n), 0);
            t.edges = edges;
            std::string key = canonical_tree_string(t);
            if (seen.insert(key).second) shapes.push_back(edges);
        };
        if (n == 2) {
            try_shape({{0, 1}});
        } else {
            std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
            std::vector<int> mult(static_cast<std::size_t>(n), 0);
            while (true) {
                // degree profile prune: admissibility needs every leaf and
                // degree-2 vertex to carry genus, so at least
                // (#mult-0 + #mult-1) genus in total
                std::fill(mult.begin(), mult.end(), 0);
                for (int v : seq) ++mult[static_cast<std::size_t>(v)];
                int needed = 0;
                for (int v = 0; v < n; ++v)
                    if (mult[static_cast<std::size_t>(v)] <= 1) ++needed;
                if (needed <= g) try_shape(detail::prufer_decode(seq, n));
                int pos = n - 3;
                while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == n - 1)
                    seq[static_cast<std::size_t>(pos--)] = 0;
                if (pos < 0) break;
                ++seq[static_cast<std::size_t>(pos)];
            }
        }
    }

    std::set<std::string> seen;
    for (const auto& edges : shapes) {
        std::vector<int> cur;
        detail::compositions(g, n, cur, [&](const std::vector<int>& genera) {
            PartitionTree t;
            t.g = g;
            t.genus = genera;
            t.edges = edges;
            if (!validate_tree(t).empty()) return;
            std::string key = canonical_tree_string(t);
            if (seen.insert(key).second) out.push_back(parse_tree(key, g));
        });
    }
    std::sort(out.begin(), out.end(), [](const PartitionTree& a, const PartitionTree& b) {
        return canonical_tree_string(a) < canonical_tree_string(b);
    });
    return out;
}

} // namespace bcj

#endif
