#pragma once

// Class functions on a finite group with counting-measure normalization:
// integration over G is the plain sum over elements.

#include "repvar/common.hpp"
#include "repvar/fingroup.hpp"

#include <complex>
#include <vector>

namespace repvar {

template <class T>
struct ClassFunction {
    std::vector<T> values;  // one entry per conjugacy class

    ClassFunction() = default;
    explicit ClassFunction(std::vector<T> v) : values(std::move(v)) {}
    ClassFunction(std::size_t classes, const T& fill) : values(classes, fill) {}

    std::size_t size() const noexcept { return values.size(); }
    const T& operator[](std::size_t c) const { return values[c]; }
    T& operator[](std::size_t c) { return values[c]; }
    const T& at(const FiniteGroup& g, element_t x) const { return values[g.class_of(x)]; }

    friend bool operator==(const ClassFunction&, const ClassFunction&) = default;
};

using ExactClassFunction = ClassFunction<Rational>;
using ComplexClassFunction = ClassFunction<std::complex<double>>;

/// (f1 * f2)(x) = sum over w of f1(x w^-1) f2(w).
template <class T>
ClassFunction<T> convolve(const FiniteGroup& g, const ClassFunction<T>& f1, const ClassFunction<T>& f2) {
    const auto& cd = g.classes();
    if (f1.size() != cd.size() || f2.size() != cd.size())
        throw InvalidInput("class function length does not match the number of classes");
    // Count, for each class rep x, the pairs (class of x w^-1, class of w).
    ClassFunction<T> out(cd.size(), T{});
    const std::size_t r = cd.size();
    std::vector<std::size_t> pair_count(r * r);
    for (std::size_t c = 0; c < r; ++c) {
        const element_t x = cd.representatives[c];
        std::fill(pair_count.begin(), pair_count.end(), 0);
        for (element_t w = 0; w < g.order(); ++w)
            ++pair_count[g.class_of(g.mul(x, g.inv(w))) * r + g.class_of(w)];
        T acc{};
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                if (const auto n = pair_count[a * r + b]) acc += T(static_cast<long long>(n)) * f1[a] * f2[b];
        out[c] = acc;
    }
    return out;
}

/// Indicator of the identity: the convolution unit.
inline ExactClassFunction delta_class_function(const FiniteGroup& g) {
    ExactClassFunction d(g.classes().size(), Rational(0));
    d[g.identity_class()] = 1;
    return d;
}

/// eta_x(w) = #{y : y x y^-1 = w}: the centralizer order on the class of x, zero elsewhere.
inline ExactClassFunction eta_class_function(const FiniteGroup& g, element_t x) {
    if (x >= g.order()) throw InvalidInput("element index out of range");
    ExactClassFunction f(g.classes().size(), Rational(0));
    for (element_t y = 0; y < g.order(); ++y) {
        const element_t w = g.conj(y, x);
        f[g.class_of(w)] += 1;
    }
    // Every w in the class of x is hit |C(x)| times; report the per-element value.
    f[g.class_of(x)] /= g.classes().class_sizes[g.class_of(x)];
    return f;
}

/// Exact (rational) class function of per-class counts.
inline ExactClassFunction to_exact(const std::vector<long long>& counts) {
    ExactClassFunction f(counts.size(), Rational(0));
    for (std::size_t i = 0; i < counts.size(); ++i) f[i] = counts[i];
    return f;
}

inline ComplexClassFunction to_complex(const ExactClassFunction& f) {
    ComplexClassFunction out(f.size(), {});
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].template convert_to<double>();
    return out;
}

}  // namespace repvar
