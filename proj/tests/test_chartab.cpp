#include "repvar/chartab.hpp"
#include "repvar/classfn.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace repvar;

namespace {

std::vector<long long> dims(const CharacterTable& t) { return t.dims; }

void expect_row(const CharacterTable& t, std::size_t l, std::vector<double> values) {
    ASSERT_EQ(values.size(), t.num_classes());
    for (std::size_t c = 0; c < values.size(); ++c) EXPECT_NEAR(std::abs(t(l, c) - cdouble(values[c], 0)), 0.0, 1e-9);
}

/// (1/|G|) sum_x chi(x^2), straight from the definition.
double indicator_by_definition(const FiniteGroup& g, const CharacterTable& t, std::size_t l) {
    cdouble s = 0;
    for (element_t x = 0; x < g.order(); ++x) s += t(l, g.class_of(g.mul(x, x)));
    return (s / double(g.order())).real();
}

}  // namespace

TEST(CharacterTable, Z2) {
    const auto g = build_group("Z2");
    const auto t = character_table(g);
    ASSERT_EQ(t.num_irreps(), 2u);
    expect_row(t, 0, {1, 1});
    expect_row(t, 1, {1, -1});
}

TEST(CharacterTable, S3StandardCharacter) {
    const auto g = build_group("S3");
    const auto t = character_table(g);
    EXPECT_EQ(dims(t), (std::vector<long long>{1, 1, 2}));
    expect_row(t, 0, {1, 1, 1});
    expect_row(t, 1, {1, -1, 1});
    expect_row(t, 2, {2, 0, -1});
}

TEST(CharacterTable, Q8Dimensions) {
    const auto t = character_table(build_group("Q8"));
    EXPECT_EQ(dims(t), (std::vector<long long>{1, 1, 1, 1, 2}));
}

TEST(CharacterTable, TrivialCharacterFirstAndIdentityColumnIsDimension) {
    for (const auto& name : catalog_names(24)) {
        SCOPED_TRACE(name);
        const auto g = build_group(name);
        const auto t = character_table(g);
        EXPECT_EQ(t.num_irreps(), t.num_classes());
        for (std::size_t c = 0; c < t.num_classes(); ++c) EXPECT_NEAR(std::abs(t(0, c) - 1.0), 0, 1e-12);
        long long sum = 0;
        for (std::size_t l = 0; l < t.num_irreps(); ++l) {
            EXPECT_EQ(t(l, t.identity_class), cdouble(double(t.dims[l]), 0));
            sum += t.dims[l] * t.dims[l];
            if (l) {
                EXPECT_LE(t.dims[l - 1], t.dims[l]);
            }
            for (std::size_t c = 0; c < t.num_classes(); ++c) EXPECT_LE(std::abs(t(l, c)), double(t.dims[l]) + 1e-9);
        }
        EXPECT_EQ(sum, (long long)g.order());
        EXPECT_LE(row_orthogonality_residual(t), kOrthogonalityTol);
        EXPECT_LE(column_orthogonality_residual(t), kOrthogonalityTol);
    }
}

TEST(CharacterTable, LargerGroups) {
    for (const char* name : {"S5", "A5", "D30", "Z60", "perm: (1 2 3 4 5 6 7), (2 3 5)(4 7 6)"}) {
        SCOPED_TRACE(name);
        const auto g = build_group(name);
        const auto t = character_table(g);
        long long sum = 0;
        for (auto d : t.dims) sum += d * d;
        EXPECT_EQ(sum, (long long)g.order());
        EXPECT_LE(row_orthogonality_residual(t), kOrthogonalityTol);
    }
}

TEST(CharacterTable, Deterministic) {
    const auto g = build_group("A4");
    EXPECT_EQ(table_tsv(character_table(g)), table_tsv(character_table(g)));
}

TEST(CharacterTable, NumberOfIrrepsMatchesOracleClassCount) {
    EXPECT_EQ(character_table(build_group("D4")).num_irreps(), oracle::num_classes(oracle::dihedral4()));
    EXPECT_EQ(character_table(build_group("A4")).num_irreps(), oracle::num_classes(oracle::alternating4()));
}

TEST(FrobeniusSchur, Examples) {
    const auto q8 = build_group("Q8");
    const auto tq = character_table(q8);
    EXPECT_EQ(frobenius_schur_indicator(q8, tq, 0), 1);
    EXPECT_EQ(frobenius_schur_indicator(q8, tq, 4), -1);
    EXPECT_EQ(tq.fs, (std::vector<int>{1, 1, 1, 1, -1}));
    const auto s3 = build_group("S3");
    EXPECT_EQ(character_table(s3).fs, (std::vector<int>{1, 1, 1}));
}

TEST(FrobeniusSchur, AgreesWithDefinitionAndIsNearInteger) {
    for (const auto& name : catalog_names(24)) {
        SCOPED_TRACE(name);
        const auto g = build_group(name);
        const auto t = character_table(g);
        for (std::size_t l = 0; l < t.num_irreps(); ++l) {
            const double raw = indicator_by_definition(g, t, l);
            EXPECT_NEAR(raw, double(t.fs[l]), 1e-6);
            EXPECT_TRUE(t.fs[l] == 1 || t.fs[l] == 0 || t.fs[l] == -1);
        }
    }
}

TEST(ClassifyIrreps, Examples) {
    const auto s3 = classify_irreps(character_table(build_group("S3")));
    EXPECT_EQ(s3.real.size(), 3u);
    EXPECT_TRUE(s3.complex.empty() && s3.quaternionic.empty());
    const auto q8 = classify_irreps(character_table(build_group("Q8")));
    EXPECT_EQ(q8.real.size(), 4u);
    EXPECT_EQ(q8.quaternionic.size(), 1u);
    const auto z3 = classify_irreps(character_table(build_group("Z3")));
    EXPECT_EQ(z3.real, (std::vector<std::size_t>{0}));
    EXPECT_EQ(z3.complex.size(), 2u);
}

TEST(ClassifyIrreps, PartitionsAllIrreps) {
    for (const auto& name : catalog_names(16)) {
        const auto t = character_table(build_group(name));
        const auto c = classify_irreps(t);
        EXPECT_EQ(c.real.size() + c.complex.size() + c.quaternionic.size(), t.num_classes()) << name;
    }
}

TEST(ClassFunctions, DeltaAndEtaExamples) {
    const auto s3 = build_group("S3");
    EXPECT_EQ(delta_class_function(s3), to_exact({1, 0, 0}));
    EXPECT_EQ(delta_class_function(build_group("Z2")), to_exact({1, 0}));
    EXPECT_EQ(eta_class_function(s3, s3.identity()), to_exact({6, 0, 0}));
    EXPECT_EQ(eta_class_function(s3, s3.classes().representatives[1]), to_exact({0, 2, 0}));
    const auto q8 = build_group("Q8");
    const auto eta = eta_class_function(q8, 1);
    EXPECT_EQ(eta[q8.class_of(1)], 8);
}

TEST(Convolution, DeltaIsTheUnit) {
    const auto g = build_group("D4");
    const auto d = delta_class_function(g);
    EXPECT_EQ(convolve(g, d, d), d);
    const ExactClassFunction f = to_exact({3, -1, 4, 1, 5});
    EXPECT_EQ(convolve(g, f, d), f);
    EXPECT_EQ(convolve(g, d, f), f);
}

TEST(Convolution, MatchesElementwiseDefinition) {
    const auto g = build_group("S3");
    const ExactClassFunction f = to_exact({2, -1, 3}), h = to_exact({0, 5, 7});
    const auto conv = convolve(g, f, h);
    for (element_t x = 0; x < g.order(); ++x) {
        Rational s = 0;
        for (element_t w = 0; w < g.order(); ++w) s += f.at(g, g.mul(x, g.inv(w))) * h.at(g, w);
        EXPECT_EQ(conv.at(g, x), s);
    }
}

TEST(Convolution, CommutativeAndAssociativeOnClassFunctions) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dist(-5, 5);
    for (const char* name : {"S3", "Q8", "A4", "D5"}) {
        const auto g = build_group(name);
        const std::size_t r = g.classes().size();
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<long long> a(r), b(r), c(r);
            for (std::size_t i = 0; i < r; ++i) a[i] = dist(rng), b[i] = dist(rng), c[i] = dist(rng);
            const auto fa = to_exact(a), fb = to_exact(b), fc = to_exact(c);
            EXPECT_EQ(convolve(g, fa, fb), convolve(g, fb, fa)) << name;
            EXPECT_EQ(convolve(g, convolve(g, fa, fb), fc), convolve(g, fa, convolve(g, fb, fc))) << name;
        }
    }
}

TEST(Convolution, CharacterOrthogonalityOnS3) {
    const auto g = build_group("S3");
    const auto t = character_table(g);
    for (std::size_t l = 0; l < 3; ++l)
        for (std::size_t m = 0; m < 3; ++m) {
            const auto p = convolve(g, ComplexClassFunction(t.characters[l]), ComplexClassFunction(t.characters[m]));
            for (std::size_t c = 0; c < 3; ++c) {
                const cdouble expect = l == m ? 6.0 / double(t.dims[l]) * t(l, c) : 0.0;
                EXPECT_NEAR(std::abs(p[c] - expect), 0, 1e-9);
            }
        }
}

TEST(CharacterExpansion, Examples) {
    const auto g = build_group("A4");
    const auto t = character_table(g);
    const auto a = character_expand(t, delta_class_function(g));
    for (std::size_t l = 0; l < t.num_irreps(); ++l) EXPECT_NEAR(std::abs(a[l] - double(t.dims[l]) / 12.0), 0, 1e-12);
    for (std::size_t m = 0; m < t.num_irreps(); ++m) {
        const auto b = character_expand(t, ComplexClassFunction(t.characters[m]));
        for (std::size_t l = 0; l < t.num_irreps(); ++l) EXPECT_NEAR(std::abs(b[l] - (l == m ? 1.0 : 0.0)), 0, 1e-9);
    }
    for (std::size_t k = 0; k < t.num_classes(); ++k) {
        const auto x = g.classes().representatives[k];
        const auto b = character_expand(t, eta_class_function(g, x));
        for (std::size_t l = 0; l < t.num_irreps(); ++l) EXPECT_NEAR(std::abs(b[l] - std::conj(t(l, k))), 0, 1e-9);
    }
}

TEST(CharacterExpansion, ReconstructionIsIdentity) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dist(-20, 20);
    for (const auto& name : catalog_names(24)) {
        const auto g = build_group(name);
        const auto t = character_table(g);
        std::vector<long long> v(t.num_classes());
        for (auto& x : v) x = dist(rng);
        const auto f = to_exact(v);
        EXPECT_EQ(round_to_integers(reconstruct(t, character_expand(t, f))), f) << name;
    }
}

TEST(CharacterExpansion, RoundingRejectsNonIntegers) {
    ComplexClassFunction f(std::vector<cdouble>{{1.5, 0}, {2, 0}});
    EXPECT_THROW(round_to_integers(f), NumericValidationError);
    ComplexClassFunction g(std::vector<cdouble>{{1, 1e-3}, {2, 0}});
    EXPECT_THROW(round_to_integers(g), NumericValidationError);
}

TEST(Export, TsvAndText) {
    const auto g = build_group("S3");
    const auto t = character_table(g);
    EXPECT_EQ(table_tsv(t), "1+0i\t1+0i\t1+0i\n1+0i\t-1+0i\t1+0i\n2+0i\t0+0i\t-1+0i\n");
    const auto text = table_text(g, t);
    EXPECT_NE(text.find("class_sizes 1 3 2"), std::string::npos);
    EXPECT_NE(text.find("irrep 2 dim 2 fs 1 : 2+0i 0+0i -1+0i"), std::string::npos);
    EXPECT_EQ(format_complex({0.5, -0.8660254037844386}), "0.5-0.866025403784i");
}
