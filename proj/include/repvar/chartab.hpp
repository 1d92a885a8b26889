#pragma once

// Complex irreducible characters of a finite group (Burnside/Dixon: common
// eigenvectors of the class-multiplication matrices), Frobenius-Schur
// indicators, and character expansion of class functions.
//
// Irrep order: ascending dimension, then character values along the class
// order compared by (real, imaginary) part, larger first. The trivial
// character is therefore always irrep 0.

#include "repvar/classfn.hpp"
#include "repvar/common.hpp"
#include "repvar/fingroup.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace repvar {

using cdouble = std::complex<double>;

struct CharacterTable {
    std::size_t group_order = 0;
    std::size_t identity_class = 0;
    std::vector<std::size_t> class_sizes;
    std::vector<std::vector<cdouble>> characters;  // [irrep][class]
    std::vector<long long> dims;
    std::vector<int> fs;  // Frobenius-Schur indicator per irrep

    std::size_t num_irreps() const noexcept { return characters.size(); }
    std::size_t num_classes() const noexcept { return class_sizes.size(); }
    const cdouble& operator()(std::size_t irrep, std::size_t cls) const { return characters[irrep][cls]; }

    ComplexClassFunction character(std::size_t irrep) const {
        return ComplexClassFunction(characters.at(irrep));
    }
};

struct IrrepClasses {
    std::vector<std::size_t> real;          // indicator +1
    std::vector<std::size_t> complex;       // indicator 0
    std::vector<std::size_t> quaternionic;  // indicator -1
};

namespace detail {

inline double snap(double v) {
    if (std::abs(v) < 1e-11) return 0.0;
    const double r = std::round(v);
    return std::abs(v - r) < 1e-11 ? r : v;
}

/// Largest deviation of the row inner products from the identity matrix.
inline double orthogonality_residual(const CharacterTable& t) {
    double worst = 0;
    const double n = double(t.group_order);
    for (std::size_t a = 0; a < t.num_irreps(); ++a)
        for (std::size_t b = a; b < t.num_irreps(); ++b) {
            cdouble s = 0;
            for (std::size_t c = 0; c < t.num_classes(); ++c)
                s += double(t.class_sizes[c]) * t(a, c) * std::conj(t(b, c));
            s /= n;
            worst = std::max(worst, std::abs(s - cdouble(a == b ? 1.0 : 0.0)));
        }
    return worst;
}

/// #{x : x^2 in class c} for every class c.
inline std::vector<std::size_t> square_class_counts(const FiniteGroup& g) {
    std::vector<std::size_t> counts(g.classes().size(), 0);
    for (element_t x = 0; x < g.order(); ++x) ++counts[g.class_of(g.mul(x, x))];
    return counts;
}

inline int indicator_from(const FiniteGroup& g, const std::vector<cdouble>& chi,
                          const std::vector<std::size_t>& square_counts, double tol) {
    cdouble s = 0;
    for (std::size_t c = 0; c < chi.size(); ++c) s += double(square_counts[c]) * chi[c];
    s /= double(g.order());
    const double r = std::round(s.real());
    const double residual = std::abs(s - cdouble(r, 0));
    if (residual > tol || r < -1 || r > 1)
        throw NumericValidationError("Frobenius-Schur sum " + std::to_string(s.real()) + "+" +
                                     std::to_string(s.imag()) + "i is not within " + std::to_string(tol) +
                                     " of -1, 0 or 1");
    return static_cast<int>(r);
}

inline bool character_before(const std::vector<cdouble>& a, long long da, const std::vector<cdouble>& b,
                             long long db) {
    if (da != db) return da < db;
    for (std::size_t c = 0; c < a.size(); ++c) {
        if (std::abs(a[c].real() - b[c].real()) > 1e-9) return a[c].real() > b[c].real();
        if (std::abs(a[c].imag() - b[c].imag()) > 1e-9) return a[c].imag() > b[c].imag();
    }
    return false;
}

}  // namespace detail

/// phi = (1/|G|) sum_x chi(x^2), rounded to {-1, 0, 1} with a residual gate.
inline int frobenius_schur_indicator(const FiniteGroup& g, const CharacterTable& t, std::size_t irrep,
                                     double tol = kRoundingTol) {
    if (irrep >= t.num_irreps()) throw InvalidInput("irrep index out of range");
    return detail::indicator_from(g, t.characters[irrep], detail::square_class_counts(g), tol);
}

inline CharacterTable character_table(const FiniteGroup& g, double tol = kOrthogonalityTol) {
    const auto& cd = g.classes();
    const std::size_t r = cd.size();
    const std::size_t idc = g.identity_class();

    // Class multiplication constants: a[i][j][k] = #{x in C_i : x^-1 z_k in C_j}.
    std::vector<double> a(r * r * r, 0.0);
    for (std::size_t k = 0; k < r; ++k) {
        const element_t z = cd.representatives[k];
        for (element_t x = 0; x < g.order(); ++x)
            a[(g.class_of(x) * r + g.class_of(g.mul(g.inv(x), z))) * r + k] += 1.0;
    }

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::string last_failure = "no attempt made";
    for (int attempt = 0; attempt < 24; ++attempt) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(Eigen::Index(r), Eigen::Index(r));
        for (std::size_t i = 0; i < r; ++i) {
            const double t = coeff(rng);
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t k = 0; k < r; ++k) m(Eigen::Index(j), Eigen::Index(k)) += t * a[(i * r + j) * r + k];
        }
        Eigen::EigenSolver<Eigen::MatrixXd> es(m, true);
        if (es.info() != Eigen::Success) {
            last_failure = "eigen decomposition did not converge";
            continue;
        }
        const auto evals = es.eigenvalues();
        double scale = 1e-300;
        for (Eigen::Index i = 0; i < evals.size(); ++i) scale = std::max(scale, std::abs(evals(i)));
        double gap = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < evals.size(); ++i)
            for (Eigen::Index j = i + 1; j < evals.size(); ++j) gap = std::min(gap, std::abs(evals(i) - evals(j)));
        if (r > 1 && gap < 1e-6 * scale) {
            last_failure = "class-algebra eigenvalues not separated";
            continue;
        }

        CharacterTable t;
        t.group_order = g.order();
        t.identity_class = idc;
        t.class_sizes = cd.class_sizes;
        bool ok = true;
        const auto evecs = es.eigenvectors();
        for (std::size_t l = 0; l < r && ok; ++l) {
            std::vector<cdouble> w(r);
            for (std::size_t j = 0; j < r; ++j) w[j] = evecs(Eigen::Index(j), Eigen::Index(l));
            if (std::abs(w[idc]) < 1e-12) {
                ok = false;
                last_failure = "eigenvector vanishes on the identity class";
                break;
            }
            const cdouble w0 = w[idc];
            double norm = 0;
            for (std::size_t j = 0; j < r; ++j) {
                w[j] /= w0;
                norm += std::norm(w[j]) / double(cd.class_sizes[j]);
            }
            const double d2 = double(g.order()) / norm;
            const double d = std::sqrt(d2);
            const double dr = std::round(d);
            if (std::abs(d - dr) > 1e-6 || dr < 1) {
                ok = false;
                last_failure = "non-integral degree " + std::to_string(d);
                break;
            }
            std::vector<cdouble> chi(r);
            for (std::size_t j = 0; j < r; ++j) {
                chi[j] = dr * w[j] / double(cd.class_sizes[j]);
                chi[j] = {detail::snap(chi[j].real()), detail::snap(chi[j].imag())};
            }
            chi[idc] = dr;
            t.characters.push_back(std::move(chi));
            t.dims.push_back(static_cast<long long>(dr));
        }
        if (!ok) continue;

        long long sum_sq = 0;
        for (auto d : t.dims) sum_sq += d * d;
        if (sum_sq != static_cast<long long>(g.order())) {
            last_failure = "sum of squared degrees " + std::to_string(sum_sq) + " != order";
            continue;
        }
        const double residual = detail::orthogonality_residual(t);
        if (!(residual <= tol)) {
            last_failure = "orthogonality residual " + std::to_string(residual);
            continue;
        }

        std::vector<std::size_t> perm(r);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
            return detail::character_before(t.characters[x], t.dims[x], t.characters[y], t.dims[y]);
        });
        CharacterTable sorted = t;
        for (std::size_t i = 0; i < r; ++i) {
            sorted.characters[i] = t.characters[perm[i]];
            sorted.dims[i] = t.dims[perm[i]];
        }
        const auto squares = detail::square_class_counts(g);
        for (const auto& chi : sorted.characters) sorted.fs.push_back(detail::indicator_from(g, chi, squares, kRoundingTol));
        return sorted;
    }
    throw NumericValidationError("character table of " + g.name() + " failed validation: " + last_failure);
}

inline IrrepClasses classify_irreps(const CharacterTable& t) {
    IrrepClasses out;
    for (std::size_t l = 0; l < t.num_irreps(); ++l) {
        switch (t.fs.at(l)) {
        case 1: out.real.push_back(l); break;
        case 0: out.complex.push_back(l); break;
        default: out.quaternionic.push_back(l); break;
        }
    }
    return out;
}

/// a_lambda = (1/|G|) sum_x f(x) conj(chi_lambda(x)).
inline std::vector<cdouble> character_expand(const CharacterTable& t, const ComplexClassFunction& f) {
    if (f.size() != t.num_classes()) throw InvalidInput("class function length does not match the table");
    std::vector<cdouble> coeffs(t.num_irreps());
    for (std::size_t l = 0; l < t.num_irreps(); ++l) {
        cdouble s = 0;
        for (std::size_t c = 0; c < t.num_classes(); ++c) s += double(t.class_sizes[c]) * f[c] * std::conj(t(l, c));
        coeffs[l] = s / double(t.group_order);
    }
    return coeffs;
}

inline std::vector<cdouble> character_expand(const CharacterTable& t, const ExactClassFunction& f) {
    return character_expand(t, to_complex(f));
}

/// sum_lambda a_lambda chi_lambda.
inline ComplexClassFunction reconstruct(const CharacterTable& t, const std::vector<cdouble>& coeffs) {
    ComplexClassFunction f(t.num_classes(), {});
    for (std::size_t l = 0; l < t.num_irreps(); ++l)
        for (std::size_t c = 0; c < t.num_classes(); ++c) f[c] += coeffs.at(l) * t(l, c);
    return f;
}

/// Round every value to the nearest integer; throws if any residual exceeds `tol`.
inline ExactClassFunction round_to_integers(const ComplexClassFunction& f, double tol = kRoundingTol) {
    ExactClassFunction out(f.size(), Rational(0));
    for (std::size_t c = 0; c < f.size(); ++c) {
        const double r = std::round(f[c].real());
        const double residual = std::abs(f[c] - cdouble(r, 0));
        if (residual > tol)
            throw NumericValidationError("value at class " + std::to_string(c) + " is " + std::to_string(f[c].real()) +
                                         "+" + std::to_string(f[c].imag()) + "i, residual " +
                                         std::to_string(residual) + " above " + std::to_string(tol));
        out[c] = static_cast<long long>(r);
    }
    return out;
}

/// Column orthogonality residual: max |sum_l chi_l(c) conj chi_l(c') - delta |G|/|C_c||.
inline double column_orthogonality_residual(const CharacterTable& t) {
    double worst = 0;
    for (std::size_t c = 0; c < t.num_classes(); ++c)
        for (std::size_t d = 0; d < t.num_classes(); ++d) {
            cdouble s = 0;
            for (std::size_t l = 0; l < t.num_irreps(); ++l) s += t(l, c) * std::conj(t(l, d));
            const double expect = c == d ? double(t.group_order) / double(t.class_sizes[c]) : 0.0;
            worst = std::max(worst, std::abs(s - expect));
        }
    return worst;
}

inline double row_orthogonality_residual(const CharacterTable& t) { return detail::orthogonality_residual(t); }

// ---------------------------------------------------------------------------
// Export

/// 12-significant-digit `a+bi` rendering.
inline std::string format_complex(cdouble z) {
    auto clean = [](double v) { return std::abs(v) < 5e-13 ? 0.0 : v; };
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", clean(z.real()), clean(z.imag()));
    return buf;
}

/// Rows = irreps, columns = classes.
inline std::string table_tsv(const CharacterTable& t) {
    std::ostringstream os;
    for (std::size_t l = 0; l < t.num_irreps(); ++l) {
        for (std::size_t c = 0; c < t.num_classes(); ++c) os << (c ? "\t" : "") << format_complex(t(l, c));
        os << '\n';
    }
    return os.str();
}

/// Human/structured summary: class data, then per-irrep dimension, indicator and values.
inline std::string table_text(const FiniteGroup& g, const CharacterTable& t) {
    std::ostringstream os;
    os << "group " << g.name() << "\n";
    os << "order " << g.order() << "\n";
    os << "classes " << t.num_classes() << "\n";
    os << "class_sizes";
    for (auto s : t.class_sizes) os << ' ' << s;
    os << "\nclass_representatives";
    for (auto rep : g.classes().representatives) os << ' ' << g.label(rep);
    os << "\nirreps " << t.num_irreps() << "\n";
    for (std::size_t l = 0; l < t.num_irreps(); ++l) {
        os << "irrep " << l << " dim " << t.dims[l] << " fs " << t.fs[l] << " :";
        for (std::size_t c = 0; c < t.num_classes(); ++c) os << ' ' << format_complex(t(l, c));
        os << '\n';
    }
    return os.str();
}

}  // namespace repvar
