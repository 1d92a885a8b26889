#pragma once

// Naive reference implementations used as test oracles. Nothing here calls the
// library: groups are explicit element lists with a multiplication closure, words
// are strings, and graph labelings enumerate every half-edge independently.

#include <algorithm>
#include <cctype>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace oracle {

/// A finite group given by explicit elements and a product on indices.
struct Group {
    std::size_t n = 0;
    std::size_t e = 0;
    std::function<std::size_t(std::size_t, std::size_t)> mul;

    std::size_t inv(std::size_t x) const {
        for (std::size_t y = 0; y < n; ++y)
            if (mul(x, y) == e) return y;
        return n;
    }
};

using Perm = std::vector<int>;

/// All products of the generators, as permutations of {0..deg-1}; product (pq)(x) = p(q(x)).
inline std::vector<Perm> perm_closure(const std::vector<Perm>& gens) {
    const std::size_t deg = gens.front().size();
    Perm id(deg);
    for (std::size_t i = 0; i < deg; ++i) id[i] = int(i);
    std::set<Perm> seen{id};
    std::vector<Perm> frontier{id};
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                Perm q(deg);
                for (std::size_t i = 0; i < deg; ++i) q[i] = p[g[i]];
                if (seen.insert(q).second) next.push_back(q);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

inline Group from_perms(const std::vector<Perm>& gens) {
    auto elems = std::make_shared<std::vector<Perm>>(perm_closure(gens));
    auto index = std::make_shared<std::map<Perm, std::size_t>>();
    for (std::size_t i = 0; i < elems->size(); ++i) (*index)[(*elems)[i]] = i;
    Group g;
    g.n = elems->size();
    Perm id(gens.front().size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = int(i);
    g.e = index->at(id);
    g.mul = [elems, index](std::size_t a, std::size_t b) {
        const auto& p = (*elems)[a];
        const auto& q = (*elems)[b];
        Perm r(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
        return index->at(r);
    };
    return g;
}

inline Group cyclic(std::size_t n) {
    Group g;
    g.n = n;
    g.e = 0;
    g.mul = [n](std::size_t a, std::size_t b) { return (a + b) % n; };
    return g;
}

inline Group symmetric3() { return from_perms({{1, 0, 2}, {1, 2, 0}}); }
inline Group symmetric4() { return from_perms({{1, 0, 2, 3}, {1, 2, 3, 0}}); }
inline Group dihedral4() { return from_perms({{1, 2, 3, 0}, {3, 2, 1, 0}}); }
inline Group alternating4() { return from_perms({{1, 2, 0, 3}, {1, 0, 3, 2}}); }

/// Unit quaternions {±1, ±i, ±j, ±k} with Hamilton's product.
inline Group quaternion8() {
    using Q = std::array<int, 4>;
    static const std::vector<Q> units = {{1, 0, 0, 0},  {-1, 0, 0, 0}, {0, 1, 0, 0},  {0, -1, 0, 0},
                                         {0, 0, 1, 0},  {0, 0, -1, 0}, {0, 0, 0, 1},  {0, 0, 0, -1}};
    Group g;
    g.n = 8;
    g.e = 0;
    g.mul = [](std::size_t a, std::size_t b) {
        const Q& p = units[a];
        const Q& q = units[b];
        const Q r = {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
                     p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
                     p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
                     p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
        return std::size_t(std::find(units.begin(), units.end(), r) - units.begin());
    };
    return g;
}

/// Word as a string over letters: lowercase = generator, uppercase = inverse.
inline std::size_t eval(const Group& g, const std::string& w, const std::vector<std::size_t>& x) {
    std::size_t acc = g.e;
    for (char c : w) {
        const bool inverse = std::isupper(static_cast<unsigned char>(c));
        const std::size_t v = x[std::size_t(std::tolower(static_cast<unsigned char>(c)) - 'a')];
        acc = g.mul(acc, inverse ? g.inv(v) : v);
    }
    return acc;
}

/// Free reduction by stack.
inline std::string reduce(const std::string& w) {
    std::string out;
    for (char c : w) {
        if (!out.empty() && out.back() != c &&
            std::tolower(static_cast<unsigned char>(out.back())) == std::tolower(static_cast<unsigned char>(c)))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

/// Number of tuples in G^k with every relator evaluating to the identity.
inline std::uint64_t hom_count(const Group& g, std::size_t k, const std::vector<std::string>& relators) {
    std::vector<std::size_t> x(k, 0);
    std::uint64_t count = 0;
    for (;;) {
        bool ok = true;
        for (const auto& r : relators) ok = ok && eval(g, r, x) == g.e;
        count += ok;
        std::size_t i = 0;
        while (i < k && ++x[i] == g.n) x[i++] = 0;
        if (i == k) break;
    }
    return count;
}

/// |preimage of w| for each element w under a single relator.
inline std::vector<std::uint64_t> fibers(const Group& g, std::size_t k, const std::string& relator) {
    std::vector<std::uint64_t> f(g.n, 0);
    std::vector<std::size_t> x(k, 0);
    for (;;) {
        ++f[eval(g, relator, x)];
        std::size_t i = 0;
        while (i < k && ++x[i] == g.n) x[i++] = 0;
        if (i == k) break;
    }
    return f;
}

inline std::size_t num_classes(const Group& g) {
    std::set<std::set<std::size_t>> classes;
    for (std::size_t x = 0; x < g.n; ++x) {
        std::set<std::size_t> cls;
        for (std::size_t y = 0; y < g.n; ++y) cls.insert(g.mul(g.mul(y, x), g.inv(y)));
        classes.insert(cls);
    }
    return classes.size();
}

inline std::size_t centralizer(const Group& g, std::size_t x) {
    std::size_t c = 0;
    for (std::size_t y = 0; y < g.n; ++y) c += g.mul(y, x) == g.mul(x, y);
    return c;
}

inline std::string orientable_relator(unsigned genus) {
    std::string w;
    for (unsigned i = 0; i < genus; ++i) {
        const char a = char('a' + 2 * i), b = char('a' + 2 * i + 1);
        w += {a, b, char(std::toupper(a)), char(std::toupper(b))};
    }
    return w;
}

inline std::string nonorientable_relator(unsigned k) {
    std::string w;
    for (unsigned i = 0; i < k; ++i) w += std::string(2, char('a' + i));
    return w;
}

/// Half-edge labelings of a ribbon graph with every half-edge enumerated independently (|G|^(2e) tuples).
struct Graph {
    std::vector<std::vector<int>> vertices;
    std::vector<std::array<int, 3>> edges;  // a, b, color
};

inline std::uint64_t graph_labelings(const Group& g, const Graph& gr) {
    std::size_t h = 0;
    for (const auto& v : gr.vertices) h += v.size();
    std::vector<std::size_t> x(h, 0);
    std::uint64_t count = 0;
    for (;;) {
        bool ok = true;
        for (const auto& e : gr.edges) {
            const std::size_t a = x[e[0]], b = x[e[1]];
            ok = ok && g.mul(a, e[2] > 0 ? b : g.inv(b)) == g.e;
        }
        for (const auto& v : gr.vertices) {
            std::size_t acc = g.e;
            for (int i : v) acc = g.mul(acc, x[i]);
            ok = ok && acc == g.e;
        }
        count += ok;
        std::size_t i = 0;
        while (i < h && ++x[i] == g.n) x[i++] = 0;
        if (i == h) break;
    }
    return count;
}

/// zeta(s) by Euler-Maclaurin with N = 20 and four Bernoulli corrections.
inline double zeta(unsigned s) {
    const int n = 20;
    long double sum = 0;
    for (int k = n - 1; k >= 1; --k) sum += std::pow((long double)k, -(long double)s);
    const long double N = n;
    sum += std::pow(N, 1.0L - s) / (s - 1.0L) + 0.5L * std::pow(N, -(long double)s);
    sum += (1.0L / 12) * s * std::pow(N, -(long double)s - 1);
    sum -= (1.0L / 720) * s * (s + 1.0L) * (s + 2.0L) * std::pow(N, -(long double)s - 3);
    sum += (1.0L / 30240) * s * (s + 1.0L) * (s + 2.0L) * (s + 3.0L) * (s + 4.0L) * std::pow(N, -(long double)s - 5);
    sum -= (1.0L / 1209600) * s * (s + 1.0L) * (s + 2.0L) * (s + 3.0L) * (s + 4.0L) * (s + 5.0L) * (s + 6.0L) *
           std::pow(N, -(long double)s - 7);
    return double(sum);
}

}  // namespace oracle
