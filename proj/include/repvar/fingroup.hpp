#pragma once

// Concrete finite groups on dense element indices 0..order-1.
//
// Catalog orderings (fixed; every report depends on them):
//   Zn   element i is a^i, product (i + j) mod n.
//   Dn   dihedral group of order 2n; index i + n*s stands for r^i s^s
//        (rotations first, then reflections r^i s), with s r = r^-1 s.
//   Q8   1, -1, i, -i, j, -j, k, -k.
//   Sn   permutations of {1..n} in lexicographic order of their one-line notation.
//   An   even permutations of {1..n}, same lexicographic order.
// Permutation products compose right to left: (p q)(x) = p(q(x)).
// Permutation-generator input is closed breadth-first from the identity,
// appending g*s for each generator s in the given order.

#include "repvar/common.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace repvar {

/// Partition of a group into conjugacy classes, ordered by minimal element index.
struct ConjugacyData {
    std::vector<std::size_t> class_of;
    std::vector<std::size_t> class_sizes;
    std::vector<element_t> representatives;  // the minimal element of each class

    std::size_t size() const noexcept { return class_sizes.size(); }
};

namespace detail {

using Perm = std::vector<std::uint16_t>;

inline std::string perm_key(const std::uint16_t* p, std::size_t degree) {
    return std::string(reinterpret_cast<const char*>(p), degree * sizeof(std::uint16_t));
}

/// Elements stored as permutations with a reverse index; backs multiplication above the table threshold.
struct PermStore {
    std::size_t degree = 0;
    std::vector<std::uint16_t> images;  // order * degree
    std::unordered_map<std::string, element_t> index;

    const std::uint16_t* at(element_t x) const { return images.data() + std::size_t(x) * degree; }

    element_t add(const Perm& p) {
        const auto id = static_cast<element_t>(index.size());
        images.insert(images.end(), p.begin(), p.end());
        index.emplace(perm_key(p.data(), degree), id);
        return id;
    }

    element_t find(const Perm& p) const {
        auto it = index.find(perm_key(p.data(), degree));
        if (it == index.end()) throw InvalidInput("permutation product left the element set");
        return it->second;
    }

    Perm compose(element_t a, element_t b) const {
        const auto* pa = at(a);
        const auto* pb = at(b);
        Perm r(degree);
        for (std::size_t i = 0; i < degree; ++i) r[i] = pa[pb[i]];
        return r;
    }
};

inline std::string cycle_label(const std::uint16_t* p, std::size_t degree) {
    std::vector<bool> seen(degree, false);
    std::string out;
    for (std::size_t i = 0; i < degree; ++i) {
        if (seen[i] || p[i] == i) continue;
        out += '(';
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out += ' ';
            out += std::to_string(j + 1);
            first = false;
            j = p[j];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

}  // namespace detail

class FiniteGroup {
public:
    enum class Kind { Table, Cyclic, Dihedral, Permutation };

    std::size_t order() const noexcept { return order_; }
    element_t identity() const noexcept { return identity_; }
    const std::string& name() const noexcept { return name_; }
    const std::string& label(element_t x) const { return labels_.at(x); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool has_table() const noexcept { return !table_.empty(); }

    element_t mul(element_t a, element_t b) const {
        if (!table_.empty()) return table_[std::size_t(a) * order_ + b];
        return slow_mul(a, b);
    }
    element_t inv(element_t a) const { return inv_[a]; }
    element_t conj(element_t g, element_t x) const { return mul(mul(g, x), inv_[g]); }

    const ConjugacyData& classes() const noexcept { return classes_; }
    std::size_t class_of(element_t x) const { return classes_.class_of[x]; }
    std::size_t identity_class() const { return classes_.class_of[identity_]; }

    /// Full multiplication table, row = left factor.
    std::vector<element_t> table() const {
        if (!table_.empty()) return table_;
        std::vector<element_t> t(order_ * order_);
        for (element_t a = 0; a < order_; ++a)
            for (element_t b = 0; b < order_; ++b) t[std::size_t(a) * order_ + b] = slow_mul(a, b);
        return t;
    }

    /// Text form accepted by `parse_table_text`: the order, then the index matrix.
    std::string table_text() const {
        std::ostringstream os;
        os << order_ << '\n';
        for (element_t a = 0; a < order_; ++a) {
            for (element_t b = 0; b < order_; ++b) os << (b ? " " : "") << mul(a, b);
            os << '\n';
        }
        return os.str();
    }

    // Constructors for the supported realizations. All validate and compute conjugacy data.
    static FiniteGroup from_table(std::vector<element_t> table, std::size_t order, std::string name = "table");
    static FiniteGroup cyclic(std::size_t n);
    static FiniteGroup dihedral(std::size_t n);
    static FiniteGroup quaternion8();
    static FiniteGroup from_permutations(std::vector<detail::Perm> perms, std::string name);
    static FiniteGroup closure(const std::vector<detail::Perm>& generators, std::size_t order_budget,
                               std::string name);

private:
    FiniteGroup() = default;

    element_t slow_mul(element_t a, element_t b) const {
        switch (kind_) {
        case Kind::Cyclic:
            return static_cast<element_t>((std::size_t(a) + b) % order_);
        case Kind::Dihedral: {
            const std::size_t n = order_ / 2;
            const std::size_t i = a % n, s = a / n, j = b % n, t = b / n;
            const std::size_t rot = s ? (i + n - j) % n : (i + j) % n;
            return static_cast<element_t>(rot + n * ((s + t) % 2));
        }
        case Kind::Permutation:
            return perms_->find(perms_->compose(a, b));
        case Kind::Table:
            break;
        }
        return table_[std::size_t(a) * order_ + b];
    }

    void finish(bool build_table);
    void compute_classes();

    Kind kind_ = Kind::Table;
    std::size_t order_ = 0;
    element_t identity_ = 0;
    std::string name_;
    std::vector<element_t> table_;
    std::vector<element_t> inv_;
    std::vector<std::string> labels_;
    std::shared_ptr<const detail::PermStore> perms_;
    ConjugacyData classes_;
};

inline void FiniteGroup::finish(bool build_table) {
    if (build_table && table_.empty() && order_ <= kTableThreshold) {
        std::vector<element_t> t(order_ * order_);
        for (element_t a = 0; a < order_; ++a)
            for (element_t b = 0; b < order_; ++b) t[std::size_t(a) * order_ + b] = slow_mul(a, b);
        table_ = std::move(t);
    }
    if (inv_.empty()) {
        inv_.assign(order_, 0);
        if (kind_ == Kind::Permutation) {
            detail::Perm q(perms_->degree);
            for (element_t a = 0; a < order_; ++a) {
                const auto* p = perms_->at(a);
                for (std::size_t i = 0; i < perms_->degree; ++i) q[p[i]] = static_cast<std::uint16_t>(i);
                inv_[a] = perms_->find(q);
            }
        } else {
            for (element_t a = 0; a < order_; ++a) {
                element_t b = 0;
                while (mul(a, b) != identity_) ++b;
                inv_[a] = b;
            }
        }
    }
    compute_classes();
}

inline void FiniteGroup::compute_classes() {
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    ConjugacyData cd;
    cd.class_of.assign(order_, unset);
    for (element_t x = 0; x < order_; ++x) {
        if (cd.class_of[x] != unset) continue;
        const std::size_t id = cd.class_sizes.size();
        std::size_t size = 0;
        for (element_t g = 0; g < order_; ++g) {
            const element_t y = conj(g, x);
            if (cd.class_of[y] == unset) {
                cd.class_of[y] = id;
                ++size;
            }
        }
        cd.class_sizes.push_back(size);
        cd.representatives.push_back(x);
    }
    classes_ = std::move(cd);
}

inline FiniteGroup FiniteGroup::from_table(std::vector<element_t> table, std::size_t order, std::string name) {
    if (order == 0) throw InvalidInput("group order must be positive");
    if (table.size() != order * order) throw InvalidInput("table must have order*order entries");
    for (auto v : table)
        if (v >= order) throw InvalidInput("table entry " + std::to_string(v) + " out of range");
    auto at = [&](std::size_t a, std::size_t b) { return table[a * order + b]; };

    // Latin square: every row and column is a permutation.
    std::vector<std::size_t> stamp(order, 0);
    std::size_t tick = 0;
    for (std::size_t a = 0; a < order; ++a) {
        ++tick;
        for (std::size_t b = 0; b < order; ++b) {
            if (stamp[at(a, b)] == tick) throw InvalidInput("row " + std::to_string(a) + " repeats an element");
            stamp[at(a, b)] = tick;
        }
        ++tick;
        for (std::size_t b = 0; b < order; ++b) {
            if (stamp[at(b, a)] == tick) throw InvalidInput("column " + std::to_string(a) + " repeats an element");
            stamp[at(b, a)] = tick;
        }
    }
    std::size_t e = order;
    for (std::size_t c = 0; c < order && e == order; ++c) {
        bool ok = true;
        for (std::size_t x = 0; x < order && ok; ++x) ok = at(c, x) == x && at(x, c) == x;
        if (ok) e = c;
    }
    if (e == order) throw InvalidInput("table has no identity element");

    auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
        if (at(at(a, b), c) != at(a, at(b, c)))
            throw InvalidInput("multiplication is not associative at (" + std::to_string(a) + "," +
                               std::to_string(b) + "," + std::to_string(c) + ")");
    };
    if (order <= 60) {
        for (std::size_t a = 0; a < order; ++a)
            for (std::size_t b = 0; b < order; ++b)
                for (std::size_t c = 0; c < order; ++c) assoc(a, b, c);
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<std::size_t> pick(0, order - 1);
        for (int i = 0; i < 200000; ++i) assoc(pick(rng), pick(rng), pick(rng));
    }

    FiniteGroup g;
    g.kind_ = Kind::Table;
    g.order_ = order;
    g.identity_ = static_cast<element_t>(e);
    g.name_ = std::move(name);
    g.table_ = std::move(table);
    g.labels_.reserve(order);
    for (std::size_t i = 0; i < order; ++i) g.labels_.push_back("g" + std::to_string(i));
    g.finish(false);
    return g;
}

inline FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    if (n == 0) throw InvalidInput("Z0 is not a finite group");
    FiniteGroup g;
    g.kind_ = Kind::Cyclic;
    g.order_ = n;
    g.name_ = "Z" + std::to_string(n);
    for (std::size_t i = 0; i < n; ++i) g.labels_.push_back(i == 0 ? "e" : i == 1 ? "a" : "a^" + std::to_string(i));
    g.finish(true);
    return g;
}

inline FiniteGroup FiniteGroup::dihedral(std::size_t n) {
    if (n == 0) throw InvalidInput("D0 is not a finite group");
    FiniteGroup g;
    g.kind_ = Kind::Dihedral;
    g.order_ = 2 * n;
    g.name_ = "D" + std::to_string(n);
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t i = 0; i < n; ++i) {
            std::string r = i == 0 ? "" : i == 1 ? "r" : "r^" + std::to_string(i);
            if (s) r += r.empty() ? "s" : " s";
            g.labels_.push_back(r.empty() ? "e" : r);
        }
    g.finish(true);
    return g;
}

inline FiniteGroup FiniteGroup::quaternion8() {
    // Index 2u + n encodes (-1)^n * unit[u], units 1, i, j, k.
    static constexpr int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static constexpr int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<element_t> t(64);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const int ua = a / 2, ub = b / 2;
            const int sign = (a % 2 + b % 2 + unit_sign[ua][ub]) % 2;
            t[a * 8 + b] = static_cast<element_t>(2 * unit_mul[ua][ub] + sign);
        }
    FiniteGroup g = from_table(std::move(t), 8, "Q8");
    g.labels_ = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    return g;
}

inline FiniteGroup FiniteGroup::from_permutations(std::vector<detail::Perm> perms, std::string name) {
    if (perms.empty()) throw InvalidInput("empty permutation list");
    auto store = std::make_shared<detail::PermStore>();
    store->degree = perms.front().size();
    for (const auto& p : perms) store->add(p);
    FiniteGroup g;
    g.kind_ = Kind::Permutation;
    g.order_ = perms.size();
    g.name_ = std::move(name);
    detail::Perm id(store->degree);
    std::iota(id.begin(), id.end(), std::uint16_t{0});
    g.identity_ = store->find(id);
    for (element_t x = 0; x < g.order_; ++x) g.labels_.push_back(detail::cycle_label(store->at(x), store->degree));
    g.perms_ = std::move(store);
    g.finish(true);
    return g;
}

inline FiniteGroup FiniteGroup::closure(const std::vector<detail::Perm>& generators, std::size_t order_budget,
                                        std::string name) {
    std::size_t degree = 0;
    for (const auto& p : generators) degree = std::max(degree, p.size());
    if (degree == 0) degree = 1;
    auto extend = [&](detail::Perm p) {
        const auto old = p.size();
        p.resize(degree);
        for (std::size_t i = old; i < degree; ++i) p[i] = static_cast<std::uint16_t>(i);
        return p;
    };
    detail::PermStore store;
    store.degree = degree;
    detail::Perm id(degree);
    std::iota(id.begin(), id.end(), std::uint16_t{0});
    store.add(id);
    std::vector<detail::Perm> gens;
    for (const auto& p : generators) gens.push_back(extend(p));
    std::vector<detail::Perm> elements{id};
    for (std::size_t head = 0; head < elements.size(); ++head) {
        for (const auto& s : gens) {
            detail::Perm h(degree);
            for (std::size_t i = 0; i < degree; ++i) h[i] = elements[head][s[i]];
            if (store.index.count(detail::perm_key(h.data(), degree))) continue;
            if (elements.size() >= order_budget)
                throw BudgetExceeded("generated group exceeds the order budget", double(elements.size() + 1),
                                     double(order_budget));
            store.add(h);
            elements.push_back(std::move(h));
        }
    }
    return from_permutations(std::move(elements), std::move(name));
}

/// Conjugacy classes, ordered by their minimal element index.
inline const ConjugacyData& conjugacy_classes(const FiniteGroup& g) { return g.classes(); }

inline std::size_t centralizer_order(const FiniteGroup& g, element_t x) {
    std::size_t n = 0;
    for (element_t y = 0; y < g.order(); ++y)
        if (g.mul(y, x) == g.mul(x, y)) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Group specifications

/// Parse "(1 2 3)(4 5)"-style disjoint cycles (1-based points) into an image array.
inline detail::Perm parse_cycles(std::string_view text) {
    std::vector<std::vector<std::size_t>> cycles;
    std::size_t degree = 0;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i == text.size()) throw ParseError("empty permutation", i);
    while (i < text.size()) {
        if (text[i] != '(') throw ParseError("expected '(' in cycle notation", i);
        ++i;
        std::vector<std::size_t> cyc;
        for (;;) {
            skip();
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw ParseError("expected a positive integer point", i);
            std::size_t v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + std::size_t(text[i] - '0');
                if (v > 65535) throw ParseError("point too large", i);
                ++i;
            }
            if (v == 0) throw ParseError("points are positive integers", i);
            cyc.push_back(v);
            degree = std::max(degree, v);
        }
        cycles.push_back(std::move(cyc));
        skip();
    }
    detail::Perm p(degree);
    std::iota(p.begin(), p.end(), std::uint16_t{0});
    std::vector<bool> used(degree + 1, false);
    for (const auto& c : cycles) {
        for (auto v : c) {
            if (used[v]) throw ParseError("point " + std::to_string(v) + " occurs twice; cycles must be disjoint");
            used[v] = true;
        }
        for (std::size_t k = 0; k < c.size(); ++k)
            p[c[k] - 1] = static_cast<std::uint16_t>(c[(k + 1) % c.size()] - 1);
    }
    return p;
}

/// Parse the whitespace-separated table format: the order, then order*order 0-based entries.
inline FiniteGroup parse_table_text(std::string_view text, std::string name = "table") {
    std::istringstream is{std::string(text)};
    long long order = 0;
    if (!(is >> order) || order <= 0) throw ParseError("table must start with a positive order");
    if (order > 100000) throw ParseError("table order too large");
    std::vector<element_t> t;
    t.reserve(std::size_t(order * order));
    long long v = 0;
    while (is >> v) {
        if (v < 0 || v >= order) throw InvalidInput("table entry " + std::to_string(v) + " out of range");
        t.push_back(static_cast<element_t>(v));
    }
    if (!is.eof()) throw ParseError("non-integer token in table");
    if (t.size() != std::size_t(order * order))
        throw ParseError("expected " + std::to_string(order * order) + " table entries, found " +
                         std::to_string(t.size()));
    return FiniteGroup::from_table(std::move(t), std::size_t(order), std::move(name));
}

namespace detail {

inline FiniteGroup symmetric_like(std::size_t n, bool even_only, std::size_t order_budget) {
    if (n == 0) throw InvalidInput("degree must be positive");
    std::size_t order = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        order *= i;
        if (order > 2 * order_budget + 2) break;
    }
    if (even_only && n >= 2) order /= 2;
    if (order > order_budget)
        throw BudgetExceeded("catalog group exceeds the order budget", double(order), double(order_budget));
    Perm p(n);
    std::iota(p.begin(), p.end(), std::uint16_t{0});
    std::vector<Perm> elems;
    do {
        if (even_only) {
            std::size_t inversions = 0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b) inversions += p[a] > p[b];
            if (inversions % 2) continue;
        }
        elems.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return FiniteGroup::from_permutations(std::move(elems), (even_only ? "A" : "S") + std::to_string(n));
}

}  // namespace detail

/// Build a group from `name` (Zn, Sn, An, Dn, Q8), `perm: <cycles>, ...`, or `table: <path>`.
inline FiniteGroup build_group(std::string_view spec, std::size_t order_budget = kDefaultOrderBudget) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    spec = trim(spec);
    if (spec.rfind("perm:", 0) == 0) {
        std::string_view body = spec.substr(5);
        std::vector<detail::Perm> gens;
        std::size_t depth = 0, start = 0;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            const char c = i < body.size() ? body[i] : ',';
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) throw ParseError("unbalanced ')'", 5 + i);
                --depth;
            }
            if (c == ',' && depth == 0) {
                auto piece = trim(body.substr(start, i - start));
                if (piece.empty()) throw ParseError("empty generator", 5 + start);
                gens.push_back(parse_cycles(piece));
                start = i + 1;
            }
        }
        if (depth != 0) throw ParseError("unbalanced '('");
        return FiniteGroup::closure(gens, order_budget, std::string(spec));
    }
    if (spec.rfind("table:", 0) == 0) {
        const std::string path(trim(spec.substr(6)));
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open table file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        FiniteGroup g = parse_table_text(ss.str(), "table:" + path);
        if (g.order() > order_budget)
            throw BudgetExceeded("table group exceeds the order budget", double(g.order()), double(order_budget));
        return g;
    }
    if (spec == "Q8") return FiniteGroup::quaternion8();
    if (spec.size() >= 2 && std::string_view("ZSAD").find(spec[0]) != std::string_view::npos &&
        std::all_of(spec.begin() + 1, spec.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        if (spec.size() > 8) throw ParseError("catalog index too large");
        const std::size_t n = std::stoul(std::string(spec.substr(1)));
        const std::size_t order = spec[0] == 'Z' ? n : spec[0] == 'D' ? 2 * n : 0;
        if (order > order_budget)
            throw BudgetExceeded("catalog group exceeds the order budget", double(order), double(order_budget));
        switch (spec[0]) {
        case 'Z': return FiniteGroup::cyclic(n);
        case 'D': return FiniteGroup::dihedral(n);
        case 'S': return detail::symmetric_like(n, false, order_budget);
        default: return detail::symmetric_like(n, true, order_budget);
        }
    }
    throw ParseError("unrecognized group spec '" + std::string(spec) + "'");
}

/// Catalog groups of order at most `max_order`, in a fixed order (Z, D, S, A, Q8).
inline std::vector<std::string> catalog_names(std::size_t max_order) {
    std::vector<std::string> out;
    for (std::size_t n = 1; n <= max_order; ++n) out.push_back("Z" + std::to_string(n));
    for (std::size_t n = 1; 2 * n <= max_order; ++n) out.push_back("D" + std::to_string(n));
    std::size_t f = 1;
    for (std::size_t n = 1; n <= 12; ++n) {
        f *= n;
        if (f <= max_order) out.push_back("S" + std::to_string(n));
        if ((n < 2 ? 1 : f / 2) <= max_order) out.push_back("A" + std::to_string(n));
    }
    if (max_order >= 8) out.push_back("Q8");
    return out;
}

}  // namespace repvar
