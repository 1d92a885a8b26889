#pragma once

// Mobius graphs: ribbon graphs whose edges carry a twist color in {+1, -1},
// taken up to vertex flips.
//
// File format (line oriented, '#' comments):
//   vertex: h0 h1 h2 ...     half-edges in cyclic order
//   edge: hA hB +            untwisted edge ('-' for twisted)
//
// A labeling assigns a group element x_h to every half-edge. Vertex V with
// cyclic order (h1 ... hn) contributes the constraint x_h1 ... x_hn = 1, and
// an edge {a, b} of color c the constraint x_a x_b^c = 1. G_Gamma counts the
// labelings satisfying all constraints.

#include "repvar/chartab.hpp"
#include "repvar/common.hpp"
#include "repvar/fingroup.hpp"
#include "repvar/homcount.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace repvar {

struct MobiusEdge {
    std::uint32_t a = 0, b = 0;
    int color = 1;

    friend bool operator==(const MobiusEdge&, const MobiusEdge&) = default;
};

class MobiusGraph {
public:
    /// Validates and renumbers half-edges densely (by increasing id). The only
    /// vertex allowed to be empty is the sole vertex of an edgeless graph.
    MobiusGraph(std::vector<std::vector<std::uint32_t>> vertices, std::vector<MobiusEdge> edges);

    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    std::size_t num_half_edges() const noexcept { return 2 * edges_.size(); }

    const std::vector<std::vector<std::uint32_t>>& vertices() const noexcept { return vertices_; }
    const std::vector<MobiusEdge>& edges() const noexcept { return edges_; }

    std::size_t vertex_of(std::uint32_t h) const { return vertex_of_[h]; }
    std::size_t position_of(std::uint32_t h) const { return position_[h]; }
    std::size_t edge_of(std::uint32_t h) const { return edge_of_[h]; }
    std::uint32_t partner(std::uint32_t h) const {
        const auto& e = edges_[edge_of_[h]];
        return e.a == h ? e.b : e.a;
    }
    bool is_loop(std::size_t edge) const { return vertex_of_[edges_[edge].a] == vertex_of_[edges_[edge].b]; }

    /// Next / previous half-edge in the cyclic order at its vertex.
    std::uint32_t succ(std::uint32_t h) const {
        const auto& cyc = vertices_[vertex_of_[h]];
        return cyc[(position_[h] + 1) % cyc.size()];
    }
    std::uint32_t pred(std::uint32_t h) const {
        const auto& cyc = vertices_[vertex_of_[h]];
        return cyc[(position_[h] + cyc.size() - 1) % cyc.size()];
    }

    /// Same graph with each vertex cycle rotated to start at its smallest half-edge
    /// and each edge listed with a < b; edges sorted.
    MobiusGraph canonical() const;

    /// Equality of canonical forms (cyclic rotations and edge orientation ignored).
    bool same_as(const MobiusGraph& other) const {
        const auto x = canonical(), y = other.canonical();
        return x.vertices_ == y.vertices_ && x.edges_ == y.edges_;
    }

private:
    std::vector<std::vector<std::uint32_t>> vertices_;
    std::vector<MobiusEdge> edges_;
    std::vector<std::size_t> vertex_of_, position_, edge_of_;
};

inline MobiusGraph::MobiusGraph(std::vector<std::vector<std::uint32_t>> vertices, std::vector<MobiusEdge> edges) {
    if (vertices.empty()) throw InvalidInput("graph has no vertices");
    std::map<std::uint32_t, std::size_t> in_vertex, in_edge;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (vertices[v].empty() && !(vertices.size() == 1 && edges.empty()))
            throw InvalidInput("vertex " + std::to_string(v) + " has no half-edges");
        for (auto h : vertices[v])
            if (!in_vertex.emplace(h, v).second)
                throw InvalidInput("duplicate membership: half-edge " + std::to_string(h) + " is listed twice in vertices");
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].color != 1 && edges[e].color != -1) throw InvalidInput("edge color must be +1 or -1");
        if (edges[e].a == edges[e].b) throw InvalidInput("edge joins a half-edge to itself");
        for (auto h : {edges[e].a, edges[e].b})
            if (!in_edge.emplace(h, e).second)
                throw InvalidInput("duplicate membership: half-edge " + std::to_string(h) + " is in two edges");
    }
    for (const auto& [h, v] : in_vertex)
        if (!in_edge.count(h)) throw InvalidInput("dangling half-edge " + std::to_string(h) + " (no edge)");
    for (const auto& [h, e] : in_edge)
        if (!in_vertex.count(h)) throw InvalidInput("dangling half-edge " + std::to_string(h) + " (no vertex)");

    std::map<std::uint32_t, std::uint32_t> dense;
    for (const auto& [h, v] : in_vertex) dense.emplace(h, static_cast<std::uint32_t>(dense.size()));
    for (auto& cyc : vertices)
        for (auto& h : cyc) h = dense.at(h);
    for (auto& e : edges) {
        e.a = dense.at(e.a);
        e.b = dense.at(e.b);
    }
    vertices_ = std::move(vertices);
    edges_ = std::move(edges);

    const std::size_t n = 2 * edges_.size();
    vertex_of_.assign(n, 0);
    position_.assign(n, 0);
    edge_of_.assign(n, 0);
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        for (std::size_t i = 0; i < vertices_[v].size(); ++i) {
            vertex_of_[vertices_[v][i]] = v;
            position_[vertices_[v][i]] = i;
        }
    for (std::size_t e = 0; e < edges_.size(); ++e) edge_of_[edges_[e].a] = edge_of_[edges_[e].b] = e;

    // Connectivity.
    std::vector<bool> seen(vertices_.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (auto h : vertices_[v]) {
            const auto w = vertex_of_[partner(h)];
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw InvalidInput("disconnected graph");
}

inline MobiusGraph MobiusGraph::canonical() const {
    auto verts = vertices_;
    for (auto& c : verts) std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    auto es = edges_;
    for (auto& e : es)
        if (e.a > e.b) std::swap(e.a, e.b);
    std::sort(es.begin(), es.end(), [](const MobiusEdge& x, const MobiusEdge& y) { return x.a < y.a; });
    return MobiusGraph(std::move(verts), std::move(es));
}

// ---------------------------------------------------------------------------
// Text format

inline MobiusGraph parse_graph(std::string_view text) {
    std::vector<std::vector<std::uint32_t>> vertices;
    std::vector<MobiusEdge> edges;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(lineno) + ": " + msg); };
    auto read_id = [&](const std::string& tok) {
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            fail("half-edge ids are nonnegative integers, got '" + tok + "'");
        if (tok.size() > 9) fail("half-edge id too large");
        return static_cast<std::uint32_t>(std::stoul(tok));
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (head == "vertex:") {
            std::vector<std::uint32_t> cyc;
            for (const auto& t : toks) cyc.push_back(read_id(t));
            vertices.push_back(std::move(cyc));
        } else if (head == "edge:") {
            if (toks.size() != 3) fail("expected 'edge: hA hB +|-'");
            int color = 0;
            if (toks[2] == "+" || toks[2] == "+1" || toks[2] == "1") color = 1;
            if (toks[2] == "-" || toks[2] == "-1") color = -1;
            if (color == 0) fail("edge color must be '+' or '-'");
            edges.push_back({read_id(toks[0]), read_id(toks[1]), color});
        } else {
            fail("unknown directive '" + head + "'");
        }
    }
    return MobiusGraph(std::move(vertices), std::move(edges));
}

inline MobiusGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_graph(ss.str());
}

inline std::string format_graph(const MobiusGraph& g) {
    std::ostringstream os;
    for (const auto& cyc : g.vertices()) {
        os << "vertex:";
        for (auto h : cyc) os << ' ' << h;
        os << '\n';
    }
    for (const auto& e : g.edges()) os << "edge: " << e.a << ' ' << e.b << ' ' << (e.color > 0 ? '+' : '-') << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Moves

/// Reverse the cyclic order at `v`; negate every non-loop edge at `v` (loops are negated twice).
inline MobiusGraph vertex_flip(const MobiusGraph& g, std::size_t v) {
    if (v >= g.num_vertices()) throw InvalidInput("no such vertex");
    auto verts = g.vertices();
    auto edges = g.edges();
    std::reverse(verts[v].begin(), verts[v].end());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const bool at_a = g.vertex_of(edges[e].a) == v, at_b = g.vertex_of(edges[e].b) == v;
        if (at_a != at_b) edges[e].color = -edges[e].color;
    }
    return MobiusGraph(std::move(verts), std::move(edges));
}

namespace detail {

/// Merge V and W along the untwisted edge (hv at V, hw at W): V's cycle after hv, then W's cycle after hw.
inline MobiusGraph splice(const MobiusGraph& g, std::size_t edge, std::vector<std::uint32_t> merged_tail_w,
                          std::vector<MobiusEdge> edges) {
    const auto& ed = g.edges()[edge];
    const std::size_t v = g.vertex_of(ed.a), w = g.vertex_of(ed.b);
    std::vector<std::uint32_t> merged;
    const auto& cv = g.vertices()[v];
    for (std::size_t i = 1; i < cv.size(); ++i) merged.push_back(cv[(g.position_of(ed.a) + i) % cv.size()]);
    merged.insert(merged.end(), merged_tail_w.begin(), merged_tail_w.end());
    std::vector<std::vector<std::uint32_t>> verts;
    for (std::size_t u = 0; u < g.num_vertices(); ++u) {
        if (u == w) continue;
        verts.push_back(u == v ? merged : g.vertices()[u]);
    }
    edges.erase(edges.begin() + std::ptrdiff_t(edge));
    return MobiusGraph(std::move(verts), std::move(edges));
}

}  // namespace detail

/// Contract an edge between distinct vertices. A twisted edge is first untwisted
/// by flipping its second endpoint.
inline MobiusGraph contract_edge(const MobiusGraph& g, std::size_t edge) {
    if (edge >= g.num_edges()) throw InvalidInput("no such edge");
    if (g.is_loop(edge)) throw InvalidInput("cannot contract a loop");
    const auto& ed = g.edges()[edge];
    if (ed.color < 0) return contract_edge(vertex_flip(g, g.vertex_of(ed.b)), edge);
    const auto& cw = g.vertices()[g.vertex_of(ed.b)];
    std::vector<std::uint32_t> tail;
    for (std::size_t i = 1; i < cw.size(); ++i) tail.push_back(cw[(g.position_of(ed.b) + i) % cw.size()]);
    return detail::splice(g, edge, std::move(tail), g.edges());
}

/// Contraction of a twisted edge written out in one step: W's cycle is read
/// backwards from the half-edge before hw, and W's other non-loop edges flip color.
inline MobiusGraph contract_edge_direct(const MobiusGraph& g, std::size_t edge) {
    if (edge >= g.num_edges()) throw InvalidInput("no such edge");
    if (g.is_loop(edge)) throw InvalidInput("cannot contract a loop");
    const auto& ed = g.edges()[edge];
    if (ed.color > 0) return contract_edge(g, edge);
    const std::size_t w = g.vertex_of(ed.b);
    const auto& cw = g.vertices()[w];
    std::vector<std::uint32_t> tail;
    for (std::size_t i = 1; i < cw.size(); ++i) tail.push_back(cw[(g.position_of(ed.b) + cw.size() - i) % cw.size()]);
    auto edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (e == edge) continue;
        const bool at_a = g.vertex_of(edges[e].a) == w, at_b = g.vertex_of(edges[e].b) == w;
        if (at_a != at_b) edges[e].color = -edges[e].color;
    }
    return detail::splice(g, edge, std::move(tail), std::move(edges));
}

// ---------------------------------------------------------------------------
// Surface

struct SurfaceClassification {
    std::size_t v = 0, e = 0, f = 0;
    int chi = 0;
    bool orientable = true;
    SurfaceKind kind;
};

/// Number of boundary cycles, traced on (half-edge, local orientation) flags;
/// each face is traced once in each direction.
inline std::size_t count_faces(const MobiusGraph& g) {
    const std::size_t n = g.num_half_edges();
    if (n == 0) return 1;
    std::vector<bool> seen(2 * n, false);
    std::size_t orbits = 0;
    for (std::size_t start = 0; start < 2 * n; ++start) {
        if (seen[start]) continue;
        ++orbits;
        std::size_t flag = start;
        while (!seen[flag]) {
            seen[flag] = true;
            const auto h = static_cast<std::uint32_t>(flag / 2);
            const int s = flag % 2 ? -1 : 1;
            const auto other = g.partner(h);
            const int s2 = s * g.edges()[g.edge_of(h)].color;
            const auto next = s2 > 0 ? g.succ(other) : g.pred(other);
            flag = 2 * std::size_t(next) + (s2 > 0 ? 0 : 1);
        }
    }
    if (orbits % 2) throw std::logic_error("face tracing produced an odd number of oriented boundary walks");
    return orbits / 2;
}

/// Orientable iff flips along a spanning tree can make every edge untwisted.
inline bool is_orientable(const MobiusGraph& g) {
    std::vector<int> sign(g.num_vertices(), 0);
    sign[0] = 1;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (auto h : g.vertices()[v]) {
            const auto w = g.vertex_of(g.partner(h));
            if (!sign[w]) {
                sign[w] = sign[v] * g.edges()[g.edge_of(h)].color;
                stack.push_back(w);
            }
        }
    }
    for (const auto& e : g.edges())
        if (e.color * sign[g.vertex_of(e.a)] * sign[g.vertex_of(e.b)] < 0) return false;
    return true;
}

inline SurfaceClassification classify_surface(const MobiusGraph& g) {
    SurfaceClassification c;
    c.v = g.num_vertices();
    c.e = g.num_edges();
    c.f = count_faces(g);
    c.chi = int(c.v) - int(c.e) + int(c.f);
    c.orientable = is_orientable(g);
    c.kind = SurfaceKind::from_euler(c.chi, c.orientable);
    return c;
}

// ---------------------------------------------------------------------------
// Evaluation

struct GraphEvaluation {
    BigInt value;
    double work = 0;
};

/// Direct count of labelings: each propagator fixes its second half-edge from
/// the first, leaving |G|^e assignments; vertices are checked as soon as all
/// their half-edges are labeled.
inline GraphEvaluation evaluate_graph_direct(const FiniteGroup& grp, const MobiusGraph& g,
                                             const EnumerationOptions& opt = {}) {
    const std::size_t e = g.num_edges();
    GraphEvaluation out;
    out.work = std::pow(double(grp.order()), double(e)) * double(2 * e + 1);
    if (out.work > opt.budget) throw BudgetExceeded("graph evaluation exceeds the evaluation budget", out.work, opt.budget);
    if (e == 0) {
        out.value = 1;
        return out;
    }

    // Vertices become checkable once the largest edge index touching them is assigned.
    std::vector<std::vector<std::size_t>> ready(e);
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        std::size_t last = 0;
        for (auto h : g.vertices()[v]) last = std::max(last, g.edge_of(h));
        ready[last].push_back(v);
    }

    auto run = [&](element_t first, std::uint64_t& count) {
        std::vector<element_t> label(g.num_half_edges(), 0);
        std::vector<element_t> value(e, 0);
        auto set_edge = [&](std::size_t i, element_t t) {
            const auto& ed = g.edges()[i];
            label[ed.a] = t;
            label[ed.b] = ed.color > 0 ? grp.inv(t) : t;
        };
        auto vertices_ok = [&](std::size_t i) {
            for (auto v : ready[i]) {
                element_t acc = grp.identity();
                for (auto h : g.vertices()[v]) acc = grp.mul(acc, label[h]);
                if (acc != grp.identity()) return false;
            }
            return true;
        };
        set_edge(0, first);
        if (!vertices_ok(0)) return;
        if (e == 1) {
            ++count;
            return;
        }
        std::vector<element_t> next(e, 0);
        std::size_t d = 1;
        while (d >= 1) {
            if (next[d] == grp.order()) {
                --d;
                continue;
            }
            set_edge(d, next[d]++);
            if (!vertices_ok(d)) continue;
            if (d + 1 == e) {
                ++count;
            } else {
                ++d;
                next[d] = 0;
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(grp.order())));
    std::vector<std::uint64_t> counts(workers, 0);
    auto job = [&](unsigned t) {
        for (element_t x = t; x < grp.order(); x += workers) run(x, counts[t]);
    };
    if (workers == 1) {
        job(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(job, t);
        for (auto& th : pool) th.join();
    }
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    out.value = total;
    return out;
}

/// |G|^(f-1) |Hom(pi_1(S), G)| with the hom count from the character table.
inline BigInt evaluate_graph_formula(const FiniteGroup& grp, const CharacterTable& t, const MobiusGraph& g) {
    const auto cls = classify_surface(g);
    const auto hom = surface_hom_count_character(grp, t, cls.kind);
    return ipow(BigInt(grp.order()), static_cast<unsigned>(cls.f - 1)) * hom.count;
}

// ---------------------------------------------------------------------------
// Random graphs

/// A connected Mobius graph with `v` vertices and `e` edges (e >= v - 1, e >= 1), random colors and cyclic orders.
inline MobiusGraph random_graph(std::mt19937_64& rng, std::size_t v, std::size_t e) {
    if (v == 0 || e == 0 || e + 1 < v || 2 * e < v) throw InvalidInput("no connected graph with these counts");
    for (;;) {
        std::vector<std::uint32_t> halves(2 * e);
        std::iota(halves.begin(), halves.end(), 0u);
        std::shuffle(halves.begin(), halves.end(), rng);
        // Each vertex gets at least one half-edge.
        std::vector<std::vector<std::uint32_t>> verts(v);
        for (std::size_t i = 0; i < v; ++i) verts[i].push_back(halves[i]);
        for (std::size_t i = v; i < 2 * e; ++i)
            verts[std::uniform_int_distribution<std::size_t>(0, v - 1)(rng)].push_back(halves[i]);
        std::vector<std::uint32_t> order(2 * e);
        std::iota(order.begin(), order.end(), 0u);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<MobiusEdge> edges;
        for (std::size_t i = 0; i < e; ++i)
            edges.push_back({order[2 * i], order[2 * i + 1], std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1});
        try {
            return MobiusGraph(std::move(verts), std::move(edges));
        } catch (const InvalidInput&) {
            // disconnected; draw again
        }
    }
}

}  // namespace repvar
