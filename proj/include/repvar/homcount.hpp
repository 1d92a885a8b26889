#pragma once

// Homomorphism counts and volume distributions of finitely presented groups
// into finite groups, by exhaustive enumeration of the presentation map and
// by character sums.

#include "repvar/chartab.hpp"
#include "repvar/classfn.hpp"
#include "repvar/common.hpp"
#include "repvar/fingroup.hpp"
#include "repvar/words.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace repvar {

/// Closed surface: orientable of genus g >= 0, or non-orientable with k >= 1 cross-caps.
struct SurfaceKind {
    bool orientable = true;
    unsigned genus = 0;  // g when orientable, cross-cap count k otherwise

    static SurfaceKind orientable_genus(unsigned g) { return {true, g}; }
    static SurfaceKind crosscaps(unsigned k) {
        if (k == 0) throw InvalidInput("cross-cap genus must be at least 1");
        return {false, k};
    }
    static SurfaceKind from_euler(int chi, bool orientable) {
        if (orientable) {
            if (chi > 2 || (2 - chi) % 2) throw InvalidInput("no orientable surface with chi = " + std::to_string(chi));
            return orientable_genus(static_cast<unsigned>((2 - chi) / 2));
        }
        if (chi > 1) throw InvalidInput("no non-orientable surface with chi = " + std::to_string(chi));
        return crosscaps(static_cast<unsigned>(2 - chi));
    }

    int euler_characteristic() const { return orientable ? 2 - 2 * int(genus) : 2 - int(genus); }

    Presentation presentation() const {
        return orientable ? orientable_surface_presentation(genus) : nonorientable_surface_presentation(genus);
    }

    std::string to_string() const {
        std::string s = orientable ? "orientable genus " : "non-orientable cross-cap genus ";
        return s + std::to_string(genus) + " (chi=" + std::to_string(euler_characteristic()) + ")";
    }

    friend bool operator==(const SurfaceKind&, const SurfaceKind&) = default;
};

enum class Method { Brute, Character };

inline const char* method_name(Method m) { return m == Method::Brute ? "brute" : "character"; }

struct EnumerationOptions {
    double budget = default_eval_budget();  // relator-letter evaluations
    unsigned threads = default_threads();
};

struct IrrepTerm {
    std::size_t irrep = 0;
    long long dim = 0;
    int fs = 1;
    Rational value;
};

struct HomCountReport {
    BigInt count;
    Method method = Method::Brute;
    std::string group;
    std::size_t group_order = 0;
    std::string presentation;
    std::vector<IrrepTerm> terms;  // character method only
    double work = 0;               // relator-letter evaluations (brute) or table terms (character)
    double seconds = 0;
};

namespace detail {

/// Per depth d (generators 0..d-1 assigned), the letters each relator gains.
struct EvaluationPlan {
    std::size_t k = 0;
    std::size_t r = 0;
    std::vector<std::vector<std::vector<Letter>>> steps;  // [d][relator], d = 1..k
    std::vector<std::vector<bool>> complete;              // [d][relator]: fully evaluated at depth d
    double work = 0;
};

inline EvaluationPlan make_plan(const Presentation& p, double group_order) {
    EvaluationPlan plan;
    plan.k = p.num_generators();
    plan.r = p.num_relators();
    plan.steps.assign(plan.k + 1, std::vector<std::vector<Letter>>(plan.r));
    plan.complete.assign(plan.k + 1, std::vector<bool>(plan.r, false));
    for (std::size_t rho = 0; rho < plan.r; ++rho) {
        const auto& ls = p.relators[rho].letters();
        std::size_t done = 0;
        for (std::size_t d = 1; d <= plan.k; ++d) {
            while (done < ls.size() && ls[done].gen < d) plan.steps[d][rho].push_back(ls[done++]);
            plan.complete[d][rho] = done == ls.size();
        }
        if (done != ls.size()) throw InvalidInput("relator uses an undeclared generator");
    }
    for (std::size_t d = 1; d <= plan.k; ++d) {
        double letters = 1;  // the assignment itself
        for (std::size_t rho = 0; rho < plan.r; ++rho) letters += double(plan.steps[d][rho].size());
        plan.work += std::pow(group_order, double(d)) * letters;
    }
    return plan;
}

/// Depth-first odometer over G^k with cached relator prefixes.
/// `leaf(values)` receives the relator values of a full assignment. With
/// `prune`, subtrees where a completed relator is not the identity are skipped.
template <class Leaf>
void enumerate_subtree(const FiniteGroup& g, const EvaluationPlan& plan, element_t first, bool prune, Leaf& leaf) {
    const std::size_t k = plan.k, r = plan.r;
    std::vector<element_t> assign(k, 0);
    std::vector<element_t> partial((k + 1) * r, g.identity());
    auto extend = [&](std::size_t d) {  // fill depth d from depth d-1; false if pruned
        for (std::size_t rho = 0; rho < r; ++rho) {
            element_t acc = partial[(d - 1) * r + rho];
            for (const auto& l : plan.steps[d][rho]) {
                const element_t x = assign[l.gen];
                acc = g.mul(acc, l.exp > 0 ? x : g.inv(x));
            }
            partial[d * r + rho] = acc;
            if (prune && plan.complete[d][rho] && acc != g.identity()) return false;
        }
        return true;
    };
    assign[0] = first;
    if (!extend(1)) return;
    if (k == 1) {
        leaf(&partial[k * r]);
        return;
    }
    // Iterative odometer over depths 2..k.
    std::size_t d = 2;
    std::vector<element_t> next(k + 1, 0);
    next[2] = 0;
    while (d >= 2) {
        if (next[d] == g.order()) {
            --d;
            continue;
        }
        assign[d - 1] = next[d]++;
        if (!extend(d)) continue;
        if (d == k) {
            leaf(&partial[k * r]);
        } else {
            ++d;
            next[d] = 0;
        }
    }
}

/// Runs `make_leaf()`-produced accumulators over the first generator's values split across workers.
template <class Acc, class MakeAcc, class Merge>
Acc parallel_enumerate(const FiniteGroup& g, const EvaluationPlan& plan, bool prune, unsigned threads,
                       MakeAcc make_acc, Merge merge) {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(g.order())));
    std::vector<Acc> accs;
    for (unsigned t = 0; t < workers; ++t) accs.push_back(make_acc());
    auto work = [&](unsigned t) {
        for (element_t x = t; x < g.order(); x += workers) enumerate_subtree(g, plan, x, prune, accs[t]);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    Acc total = make_acc();
    for (auto& a : accs) merge(total, a);
    return total;
}

struct CountLeaf {
    std::uint64_t n = 0;
    void operator()(const element_t*) { ++n; }
};

struct FiberLeaf {
    std::vector<std::uint64_t> fibers;
    void operator()(const element_t* values) { ++fibers[values[0]]; }
};

inline void check_budget(const EvaluationPlan& plan, double budget, const std::string& what) {
    if (plan.work > budget) throw BudgetExceeded(what + " exceeds the evaluation budget", plan.work, budget);
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Exact |Hom(P, G)|: assignments in G^k sending every relator to the identity.
inline HomCountReport hom_count_brute(const FiniteGroup& g, const Presentation& p, const EnumerationOptions& opt = {}) {
    p.validate();
    const auto t0 = std::chrono::steady_clock::now();
    HomCountReport rep;
    rep.method = Method::Brute;
    rep.group = g.name();
    rep.group_order = g.order();
    rep.presentation = format_presentation(p);
    if (p.num_generators() == 0) {
        rep.count = 1;
        return rep;
    }
    const auto plan = detail::make_plan(p, double(g.order()));
    detail::check_budget(plan, opt.budget, "homomorphism enumeration");
    const auto acc = detail::parallel_enumerate<detail::CountLeaf>(
        g, plan, true, opt.threads, [] { return detail::CountLeaf{}; },
        [](detail::CountLeaf& total, const detail::CountLeaf& a) { total.n += a.n; });
    rep.count = acc.n;
    rep.work = plan.work;
    rep.seconds = detail::seconds_since(t0);
    return rep;
}

/// |q^-1(w)| for every element w, where q is the single relator's word map.
inline std::vector<std::uint64_t> fiber_sizes(const FiniteGroup& g, const Presentation& p,
                                              const EnumerationOptions& opt = {}) {
    p.validate();
    if (p.num_relators() != 1) throw InvalidInput("volume distribution needs exactly one relator");
    const auto plan = detail::make_plan(p, double(g.order()));
    detail::check_budget(plan, opt.budget, "volume distribution");
    const auto n = g.order();
    const auto acc = detail::parallel_enumerate<detail::FiberLeaf>(
        g, plan, false, opt.threads, [n] { return detail::FiberLeaf{std::vector<std::uint64_t>(n, 0)}; },
        [](detail::FiberLeaf& total, const detail::FiberLeaf& a) {
            for (std::size_t i = 0; i < a.fibers.size(); ++i) total.fibers[i] += a.fibers[i];
        });
    return acc.fibers;
}

/// Fiber sizes of a single-relator presentation map as a class function.
inline ExactClassFunction volume_distribution(const FiniteGroup& g, const Presentation& p,
                                              const EnumerationOptions& opt = {}) {
    const auto fibers = fiber_sizes(g, p, opt);
    const auto& cd = g.classes();
    ExactClassFunction f(cd.size(), Rational(0));
    for (std::size_t c = 0; c < cd.size(); ++c) f[c] = fibers[cd.representatives[c]];
    for (element_t x = 0; x < g.order(); ++x)
        if (Rational(fibers[x]) != f[g.class_of(x)])
            throw NumericValidationError("fiber sizes are not constant on the class of " + g.label(x));
    return f;
}

namespace detail {

/// sum over irreps in `members` of chi(c), rounded to an integer for every class.
inline std::vector<Rational> integer_character_sum(const CharacterTable& t, const std::vector<std::size_t>& members) {
    std::vector<Rational> out(t.num_classes());
    for (std::size_t c = 0; c < t.num_classes(); ++c) {
        cdouble s = 0;
        for (auto l : members) s += t(l, c);
        const double r = std::round(s.real());
        if (std::abs(s - cdouble(r, 0)) > kRoundingTol)
            throw NumericValidationError("character sum over a Galois-stable set is not integral at class " +
                                         std::to_string(c));
        out[c] = static_cast<long long>(r);
    }
    return out;
}

/// Irreps grouped by (dim, fs); groups are unions of Galois orbits, so their character sums are integers.
inline std::map<std::pair<long long, int>, std::vector<std::size_t>> galois_groups(const CharacterTable& t,
                                                                                   bool split_by_fs) {
    std::map<std::pair<long long, int>, std::vector<std::size_t>> groups;
    for (std::size_t l = 0; l < t.num_irreps(); ++l) groups[{t.dims[l], split_by_fs ? t.fs[l] : 0}].push_back(l);
    return groups;
}

inline ExactClassFunction require_integral(std::vector<Rational> v) {
    for (const auto& x : v)
        if (denominator(x) != 1)
            throw NumericValidationError("character-sum distribution is not integral: " + x.str());
    return ExactClassFunction(std::move(v));
}

}  // namespace detail

/// Volume distribution of the closed surface's relator from the character table:
///   orientable:     f_g(w) = sum_l (|G|/d_l)^(2g-1) chi_l(w)
///   non-orientable: h_k(w) = sum_{fs=+1} (|G|/d)^(k-1) chi(w) - sum_{fs=-1} (-|G|/d)^(k-1) chi(w)
inline ExactClassFunction surface_distribution_character(const CharacterTable& t, const SurfaceKind& s) {
    if (s.orientable && s.genus < 1) throw InvalidInput("character distribution needs genus >= 1");
    const Rational order = Rational(static_cast<long long>(t.group_order));
    std::vector<Rational> acc(t.num_classes(), Rational(0));
    for (const auto& [key, members] : detail::galois_groups(t, !s.orientable)) {
        const auto [dim, fs] = key;
        Rational coeff;
        if (s.orientable) {
            coeff = rpow(order / dim, int(2 * s.genus - 1));
        } else if (fs == 1) {
            coeff = rpow(order / dim, int(s.genus - 1));
        } else if (fs == -1) {
            coeff = -rpow(-order / dim, int(s.genus - 1));
        } else {
            continue;
        }
        const auto sums = detail::integer_character_sum(t, members);
        for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += coeff * sums[c];
    }
    return detail::require_integral(std::move(acc));
}

/// Brute-force surface distribution (fibers of the standard surface relator).
inline ExactClassFunction surface_distribution_brute(const FiniteGroup& g, const SurfaceKind& s,
                                                     const EnumerationOptions& opt = {}) {
    if (s.orientable && s.genus == 0) return delta_class_function(g);
    return volume_distribution(g, s.presentation(), opt);
}

/// Character method: |Hom| = |G|^(1-chi) (sum_{fs=+1} d^chi + sum_{fs=-1} (-d)^chi); all irreps when orientable.
inline HomCountReport surface_hom_count_character(const FiniteGroup& g, const CharacterTable& t, const SurfaceKind& s) {
    const auto t0 = std::chrono::steady_clock::now();
    HomCountReport rep;
    rep.method = Method::Character;
    rep.group = g.name();
    rep.group_order = g.order();
    rep.presentation = format_presentation(s.presentation());
    const int chi = s.euler_characteristic();
    const Rational scale = rpow(Rational(static_cast<long long>(g.order())), 1 - chi);
    Rational total = 0;
    for (std::size_t l = 0; l < t.num_irreps(); ++l) {
        const long long d = t.dims[l];
        Rational term;
        if (s.orientable || t.fs[l] == 1)
            term = scale * rpow(Rational(d), chi);
        else if (t.fs[l] == -1)
            term = scale * rpow(Rational(-d), chi);
        else
            continue;
        total += term;
        rep.terms.push_back({l, d, t.fs[l], term});
    }
    if (denominator(total) != 1)
        throw NumericValidationError("character-method count is not an integer: " + total.str());
    rep.count = numerator(total);
    rep.work = double(t.num_irreps());
    rep.seconds = detail::seconds_since(t0);
    return rep;
}

inline HomCountReport surface_hom_count(const FiniteGroup& g, const CharacterTable& t, const SurfaceKind& s,
                                        Method method, const EnumerationOptions& opt = {}) {
    if (method == Method::Character) return surface_hom_count_character(g, t, s);
    return hom_count_brute(g, s.presentation(), opt);
}

// ---------------------------------------------------------------------------
// Identity checks

struct FactorizationReport {
    SurfaceKind left, right, sum;
    ExactClassFunction direct;     // brute-force distribution of the combined surface
    ExactClassFunction convolved;  // convolution of the two brute-force distributions
    bool equal = false;
};

/// f_{g+h} = f_g * f_h (orientable, genus 0 is the delta function) or h_{j+l} = h_j * h_l.
inline FactorizationReport convolution_factorization(const FiniteGroup& g, const SurfaceKind& a, const SurfaceKind& b,
                                                     const EnumerationOptions& opt = {}) {
    if (a.orientable != b.orientable) throw InvalidInput("factorization needs two surfaces of the same orientability");
    FactorizationReport rep;
    rep.left = a;
    rep.right = b;
    rep.sum = a.orientable ? SurfaceKind::orientable_genus(a.genus + b.genus)
                           : SurfaceKind::crosscaps(a.genus + b.genus);
    rep.direct = surface_distribution_brute(g, rep.sum, opt);
    rep.convolved = convolve(g, surface_distribution_brute(g, a, opt), surface_distribution_brute(g, b, opt));
    rep.equal = rep.direct == rep.convolved;
    return rep;
}

struct DeltaProductReport {
    std::size_t separate = 0;  // #{(x,y): x = e, y = e}
    std::size_t product = 0;   // #{(x,y): xy = e, y = e}
    bool equal = false;
};

/// The constraint sets {x = e, y = e} and {xy = e, y = e} in G^2 coincide.
inline DeltaProductReport delta_product_identity_check(const FiniteGroup& g) {
    DeltaProductReport rep;
    rep.equal = true;
    const element_t e = g.identity();
    for (element_t x = 0; x < g.order(); ++x)
        for (element_t y = 0; y < g.order(); ++y) {
            const bool a = x == e && y == e;
            const bool b = g.mul(x, y) == e && y == e;
            rep.separate += a;
            rep.product += b;
            rep.equal = rep.equal && a == b;
        }
    return rep;
}

struct AcInvarianceReport {
    std::vector<std::string> presentations;  // the orbit, starting with the input
    std::vector<BigInt> counts;
    bool invariant = true;
    bool budget_exceeded = false;
    std::string stopped_reason;
};

/// Counts along the orbit of `moves`; stops (with partial results) on a budget refusal.
inline AcInvarianceReport ac_invariance_check(const FiniteGroup& g, const Presentation& start,
                                              const std::vector<AcMove>& moves, const EnumerationOptions& opt = {}) {
    AcInvarianceReport rep;
    Presentation cur = start;
    for (std::size_t i = 0;; ++i) {
        rep.presentations.push_back(format_presentation(cur));
        try {
            rep.counts.push_back(hom_count_brute(g, cur, opt).count);
        } catch (const BudgetExceeded& e) {
            rep.budget_exceeded = true;
            rep.stopped_reason = e.what();
            break;
        }
        if (rep.counts.back() != rep.counts.front()) rep.invariant = false;
        if (i == moves.size()) break;
        cur = apply_ac_move(cur, moves[i]);
    }
    return rep;
}

struct IndependenceReport {
    BigInt count_first, count_second;
    bool same_deficiency = false;
    bool equal = false;
};

/// Two presentations of one group with equal generator-minus-relator counts give equal counts.
inline IndependenceReport presentation_independence_check(const FiniteGroup& g, const Presentation& p,
                                                          const Presentation& q, const EnumerationOptions& opt = {}) {
    IndependenceReport rep;
    rep.count_first = hom_count_brute(g, p, opt).count;
    rep.count_second = hom_count_brute(g, q, opt).count;
    rep.same_deficiency = p.deficiency() == q.deficiency();
    rep.equal = rep.count_first == rep.count_second;
    return rep;
}

// ---------------------------------------------------------------------------
// Random AC move sequences

struct AcFuzzLimits {
    std::size_t max_generators = 4;
    std::size_t max_conjugator_length = 3;
};

/// A uniformly chosen applicable move; conjugators are random reduced words.
inline AcMove random_ac_move(const Presentation& p, std::mt19937_64& rng, const AcFuzzLimits& lim = {}) {
    std::vector<AcMove::Type> options;
    const std::size_t r = p.num_relators(), k = p.num_generators();
    if (r >= 2) options.push_back(AcMove::Type::Swap);
    if (r >= 1 && k >= 1) options.push_back(AcMove::Type::Conjugate);
    if (r >= 1) options.push_back(AcMove::Type::Invert);
    if (r >= 2 && !(p.relators[0] * p.relators[1]).empty()) options.push_back(AcMove::Type::Multiply);
    if (k < lim.max_generators) options.push_back(AcMove::Type::AddGenerator);
    std::vector<std::size_t> deletable;
    for (std::size_t gen = 0; gen < k; ++gen) {
        try {
            apply_ac_move(p, AcMove::delete_generator(gen));
            deletable.push_back(gen);
        } catch (const InvalidInput&) {
        }
    }
    if (!deletable.empty()) options.push_back(AcMove::Type::DeleteGenerator);
    if (options.empty()) return AcMove::add_generator();
    const auto type = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    switch (type) {
    case AcMove::Type::Swap:
        return AcMove::swap(std::uniform_int_distribution<std::size_t>(1, r - 1)(rng));
    case AcMove::Type::Conjugate: {
        const auto len = std::uniform_int_distribution<std::size_t>(1, lim.max_conjugator_length)(rng);
        std::vector<Letter> raw;
        for (std::size_t i = 0; i < len; ++i)
            raw.push_back({static_cast<std::uint32_t>(std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)),
                           std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1});
        return AcMove::conjugate(Word(raw));
    }
    case AcMove::Type::Invert: return AcMove::invert();
    case AcMove::Type::Multiply: return AcMove::multiply();
    case AcMove::Type::AddGenerator: return AcMove::add_generator();
    case AcMove::Type::DeleteGenerator:
        return AcMove::delete_generator(deletable[std::uniform_int_distribution<std::size_t>(0, deletable.size() - 1)(rng)]);
    }
    return AcMove::invert();
}

struct AcFuzzReport {
    std::size_t sequences = 0;
    std::size_t moves_applied = 0;
    BigInt expected;
    std::size_t failures = 0;
    std::vector<std::string> failing_orbits;
};

/// `sequences` random move sequences of length 1..max_length from `start`; every orbit count must match.
inline AcFuzzReport ac_fuzz(const FiniteGroup& g, const Presentation& start, std::size_t sequences,
                            std::size_t max_length, std::uint64_t seed, const EnumerationOptions& opt = {},
                            const AcFuzzLimits& lim = {}) {
    std::mt19937_64 rng(seed);
    AcFuzzReport rep;
    rep.expected = hom_count_brute(g, start, opt).count;
    for (std::size_t s = 0; s < sequences; ++s) {
        const auto len = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, max_length))(rng);
        std::vector<AcMove> moves;
        Presentation cur = start;
        for (std::size_t i = 0; i < len; ++i) {
            moves.push_back(random_ac_move(cur, rng, lim));
            cur = apply_ac_move(cur, moves.back());
        }
        const auto orbit = ac_invariance_check(g, start, moves, opt);
        ++rep.sequences;
        rep.moves_applied += moves.size();
        if (!orbit.invariant || orbit.budget_exceeded || orbit.counts.front() != rep.expected) {
            ++rep.failures;
            std::string desc;
            for (const auto& pr : orbit.presentations) desc += pr + " ; ";
            rep.failing_orbits.push_back(desc);
        }
    }
    return rep;
}

}  // namespace repvar
