#pragma once

// Witten zeta series for compact Lie groups: sums of (dim lambda)^(-s) over
// irreducible representations, with certified truncation bounds.
//
// Single series sum_{d >= 1} f(d) with f decreasing: the tail past N lies in
// [int_{N+1}^inf f, int_N^inf f]; the reported value is the partial sum plus
// the midpoint of that interval and the tail bound is its half-width.
// SU(n) lattice sums use a box cutoff and a union bound over the coordinate
// that leaves the box.

#include "repvar/common.hpp"
#include "repvar/homcount.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace repvar {

class DivergentSeries : public Error {
public:
    using Error::Error;
};

struct LieFamily {
    enum class Kind { SU, Torus };
    Kind kind = Kind::SU;
    unsigned n = 2;

    static LieFamily su(unsigned n) {
        if (n < 2) throw InvalidInput("SU(n) needs n >= 2");
        return {Kind::SU, n};
    }
    static LieFamily torus(unsigned n) {
        if (n < 1) throw InvalidInput("torus dimension must be at least 1");
        return {Kind::Torus, n};
    }
    std::string name() const { return (kind == Kind::SU ? "SU(" : "T^(") + std::to_string(n) + ")"; }
};

struct SeriesResult {
    double value = 0;
    double partial_sum = 0;     // the truncated sum itself
    std::uint64_t cutoff = 0;   // last index (per coordinate for lattice sums)
    double tail_bound = 0;      // |value - limit| <= tail_bound for absolutely convergent series
    bool conditionally_convergent = false;
    std::string description;
};

/// Weyl dimension of the SU(n) irrep with shifted weight m (all m_i >= 1, n = m.size() + 1).
inline BigInt weyl_dimension_su(std::span<const unsigned> m) {
    BigInt num = 1, den = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 1) throw InvalidInput("shifted weights must be positive");
        unsigned long long partial = 0;
        for (std::size_t j = i; j < m.size(); ++j) {
            partial += m[j];
            num *= partial;
            den *= (j - i + 1);
        }
    }
    if (num % den != 0) throw std::logic_error("Weyl dimension is not an integer");
    return num / den;
}

namespace detail {

inline double weyl_dimension_double(const std::vector<unsigned>& m) {
    double d = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
        double partial = 0;
        for (std::size_t j = i; j < m.size(); ++j) {
            partial += m[j];
            d *= partial / double(j - i + 1);
        }
    }
    return d;
}

inline double ipow_neg(double base, unsigned s) {
    double r = 1;
    const double inv = 1.0 / base;
    for (unsigned i = 0; i < s; ++i) r *= inv;
    return r;
}

/// Kahan-compensated accumulator.
struct Accumulator {
    long double sum = 0, comp = 0;
    void add(long double x) {
        const long double y = x - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

/// sum_{n=from}^{to} term(n), added from the small end (largest n) first.
inline long double shell_sum(std::uint64_t from, std::uint64_t to, const std::function<double(std::uint64_t)>& term) {
    Accumulator acc;
    for (std::uint64_t n = to; n >= from && n > 0; --n) acc.add(term(n));
    return acc.sum;
}

/// Sum of a positive decreasing series with antiderivative-based tail enclosure; doubles the cutoff until the
/// half-width of the enclosure is below tol.
inline SeriesResult positive_series(const std::function<double(std::uint64_t)>& term,
                                    const std::function<double(double)>& tail_integral,  // int_x^inf term
                                    double tol, std::uint64_t start = 1024, std::uint64_t max_cutoff = 1ull << 34) {
    std::uint64_t n = start;
    long double partial = shell_sum(1, n, term);
    for (;;) {
        const double hi = tail_integral(double(n)), lo = tail_integral(double(n + 1));
        SeriesResult r;
        r.partial_sum = double(partial);
        r.cutoff = n;
        r.value = double(partial + (long double)(hi + lo) / 2);
        r.tail_bound = (hi - lo) / 2;
        if (r.tail_bound < tol || n >= max_cutoff) return r;
        partial += shell_sum(n + 1, 2 * n, term);
        n *= 2;
    }
}

}  // namespace detail

/// sum_{d >= 1} d^(-s) truncated at exactly `cutoff` terms (no doubling), s > 1.
inline SeriesResult power_series_at_cutoff(double s, std::uint64_t cutoff) {
    if (!(s > 1)) throw DivergentSeries("sum of d^-s diverges for s <= 1");
    const long double partial = detail::shell_sum(1, cutoff, [s](std::uint64_t d) { return std::pow(double(d), -s); });
    auto tail = [s](double x) { return std::pow(x, 1 - s) / (s - 1); };
    SeriesResult r;
    r.partial_sum = double(partial);
    r.cutoff = cutoff;
    const double hi = tail(double(cutoff)), lo = tail(double(cutoff + 1));
    r.value = double(partial + (long double)(hi + lo) / 2);
    r.tail_bound = (hi - lo) / 2;
    r.description = "sum d^-" + std::to_string(s);
    return r;
}

/// Riemann zeta(s) = sum_{d >= 1} d^-s for integer s >= 2, to within tol.
inline SeriesResult zeta_series(unsigned s, double tol) {
    if (s < 2) throw DivergentSeries("zeta(s) diverges for s <= 1");
    auto r = detail::positive_series([s](std::uint64_t d) { return detail::ipow_neg(double(d), s); },
                                     [s](double x) { return std::pow(x, 1.0 - s) / (s - 1.0); }, tol);
    r.description = "zeta(" + std::to_string(s) + ")";
    return r;
}

namespace detail {

/// SU(n) lattice sum of dim^(-s) over [1..N]^(n-1), doubling N until the complement bound is below 2 tol;
/// the value is the midpoint of [partial, partial + bound].
inline SeriesResult su_lattice_series(unsigned n, unsigned s, double tol, std::uint64_t max_cutoff = 1ull << 16) {
    const std::size_t r = n - 1;
    // On {m_l > N}: an interval I through l has sum >= m_l, any other has sum/|I| >= prod m_j^(1/|I|).
    // So dim >= m_l^c / K times prod_{j != l} m_j^(e_j); zeta(x) <= x / (x - 1) bounds the free coordinates.
    auto bound = [&](double cut) {
        double total = 0;
        for (std::size_t l = 0; l < r; ++l) {
            double c = 0, log_k = 0;
            std::vector<double> e(r, 0.0);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = i; j < r; ++j) {
                    const double len = double(j - i + 1);
                    if (i <= l && l <= j) {
                        c += 1;
                        log_k += std::log(len);
                    } else {
                        for (std::size_t q = i; q <= j; ++q) e[q] += 1 / len;
                    }
                }
            const double t = s * c;
            double term = std::exp(s * log_k) * std::pow(cut, 1 - t) / (t - 1);
            for (std::size_t q = 0; q < r; ++q)
                if (q != l) term *= s * e[q] / (s * e[q] - 1);
            total += term;
        }
        return total;
    };

    Accumulator acc;
    std::vector<unsigned> m(r, 1);
    // Adds every point of [1..hi]^r with at least one coordinate > lo.
    std::function<void(std::size_t, bool, std::uint64_t, std::uint64_t)> shell = [&](std::size_t level, bool exceeded,
                                                                                      std::uint64_t lo, std::uint64_t hi) {
        if (level + 1 == r) {
            long double row = 0;
            for (std::uint64_t v = exceeded ? 1 : lo + 1; v <= hi; ++v) {
                m[level] = static_cast<unsigned>(v);
                row += ipow_neg(weyl_dimension_double(m), s);
            }
            acc.add(row);
            return;
        }
        for (std::uint64_t v = 1; v <= hi; ++v) {
            m[level] = static_cast<unsigned>(v);
            shell(level + 1, exceeded || v > lo, lo, hi);
        }
    };

    std::uint64_t cut = 16;
    shell(0, false, 0, cut);
    for (;;) {
        const double b = bound(double(cut));
        if (b / 2 < tol || cut >= max_cutoff) {
            SeriesResult res;
            res.partial_sum = double(acc.sum);
            res.value = double(acc.sum + (long double)b / 2);
            res.cutoff = cut;
            res.tail_bound = b / 2;
            return res;
        }
        shell(0, false, cut, 2 * cut);
        cut *= 2;
    }
}

}  // namespace detail

/// Sum over a box [1..cutoff]^(n-1) with no doubling, plus its complement bound.
inline SeriesResult su_lattice_sum_at_cutoff(unsigned n, unsigned genus, std::uint64_t cutoff) {
    if (n < 2) throw InvalidInput("SU(n) needs n >= 2");
    if (genus < 2) throw DivergentSeries("the SU(n) series never converges for genus 0 and 1");
    auto r = detail::su_lattice_series(n, 2 * genus - 2, 0.0, cutoff);
    // su_lattice_series starts at 16; rebuild explicitly when a smaller box is requested.
    if (r.cutoff != cutoff) {
        detail::Accumulator acc;
        std::vector<unsigned> m(n - 1, 1);
        std::function<void(std::size_t)> rec = [&](std::size_t level) {
            if (level == m.size()) {
                acc.add(detail::ipow_neg(detail::weyl_dimension_double(m), 2 * genus - 2));
                return;
            }
            for (std::uint64_t v = 1; v <= cutoff; ++v) {
                m[level] = static_cast<unsigned>(v);
                rec(level + 1);
            }
        };
        rec(0);
        r.partial_sum = r.value = double(acc.sum);
        r.cutoff = cutoff;
    }
    return r;
}

/// sum_lambda (dim lambda)^(2-2g): the ratio |Hom(pi_1 S_g, G)| / |G|^(2g-1).
inline SeriesResult orientable_volume_ratio(const LieFamily& fam, unsigned genus, double tol) {
    if (fam.kind == LieFamily::Kind::Torus)
        throw DivergentSeries("every irreducible representation of a torus is one-dimensional; the series diverges");
    if (genus < 2) throw DivergentSeries("the " + fam.name() + " series never converges for genus 0 and 1");
    SeriesResult r;
    if (fam.n == 2) {
        r = zeta_series(2 * genus - 2, tol);
    } else {
        r = detail::su_lattice_series(fam.n, 2 * genus - 2, tol);
    }
    r.description = fam.name() + " genus " + std::to_string(genus) + ": sum (dim)^" + std::to_string(2 - 2 * int(genus));
    return r;
}

/// SU(2), k cross-caps: sum_{odd d} d^(2-k) + (-1)^(2-k) sum_{even d} d^(2-k), summed as two series.
/// k = 3 is the alternating harmonic series in natural order and is flagged conditional.
inline SeriesResult nonorientable_volume_ratio_su2(unsigned k, double tol) {
    if (k <= 2) throw DivergentSeries("the SU(2) series diverges for cross-cap genus k <= 2");
    const unsigned s = k - 2;
    SeriesResult r;
    if (k == 3) {
        // Limit lies between consecutive partial sums; report their midpoint.
        std::uint64_t n = 1;
        while (0.5 / double(n + 1) >= tol && n < (1ull << 33)) n *= 2;
        detail::Accumulator acc;
        for (std::uint64_t d = n; d >= 1; --d) acc.add((d % 2 ? 1.0L : -1.0L) / (long double)d);
        const long double next = acc.sum + ((n + 1) % 2 ? 1.0L : -1.0L) / (long double)(n + 1);
        r.partial_sum = double(acc.sum);
        r.value = double((acc.sum + next) / 2);
        r.cutoff = n;
        r.tail_bound = 0.5 / double(n + 1);
        r.conditionally_convergent = true;
        r.description = "SU(2) cross-cap genus 3: alternating series in natural dimension order";
        return r;
    }
    auto odd = detail::positive_series([s](std::uint64_t i) { return detail::ipow_neg(double(2 * i - 1), s); },
                                       [s](double x) { return std::pow(2 * x - 1, 1.0 - s) / (2.0 * (s - 1.0)); },
                                       tol / 2);
    auto even = detail::positive_series([s](std::uint64_t i) { return detail::ipow_neg(double(2 * i), s); },
                                        [s](double x) { return std::pow(2 * x, 1.0 - s) / (2.0 * (s - 1.0)); }, tol / 2);
    const double sign = k % 2 ? -1.0 : 1.0;
    r.value = odd.value + sign * even.value;
    r.partial_sum = odd.partial_sum + sign * even.partial_sum;
    r.cutoff = 2 * std::max(odd.cutoff, even.cutoff);
    r.tail_bound = odd.tail_bound + even.tail_bound;
    r.description = "SU(2) cross-cap genus " + std::to_string(k) + ": odd-dimension sum " +
                    (sign > 0 ? "+" : "-") + " even-dimension sum";
    return r;
}

/// Closed forms in terms of zeta: zeta(k-2) for even k, (1 - 2^(3-k)) zeta(k-2) for odd k >= 5, log 2 for k = 3.
inline SeriesResult su2_nonorientable_closed_form(unsigned k, double tol) {
    if (k <= 2) throw DivergentSeries("the SU(2) series diverges for cross-cap genus k <= 2");
    if (k == 3) {
        SeriesResult r;
        r.value = r.partial_sum = std::log(2.0);
        r.conditionally_convergent = true;
        r.description = "log 2";
        return r;
    }
    auto z = zeta_series(k - 2, tol / 2);
    if (k % 2) {
        const double factor = 1.0 - std::ldexp(1.0, 3 - int(k));
        z.value *= factor;
        z.partial_sum *= factor;
        z.tail_bound *= factor;
        z.description = "(1 - 2^" + std::to_string(3 - int(k)) + ") zeta(" + std::to_string(k - 2) + ")";
    }
    return z;
}

struct TorusVolume {
    unsigned n = 1;
    int exponent = 0;     // |T^n|^(1 - chi)
    int real_irreps = 1;  // only the trivial representation is real
    std::string expression;
};

/// |Hom(pi_1 S, T^n)| = |T^n|^(1 - chi(S)).
inline TorusVolume torus_volume(unsigned n, const SurfaceKind& s) {
    if (n < 1) throw InvalidInput("torus dimension must be at least 1");
    TorusVolume t;
    t.n = n;
    t.exponent = 1 - s.euler_characteristic();
    t.expression = "|T^" + std::to_string(n) + "|^" + std::to_string(t.exponent);
    return t;
}

}  // namespace repvar
