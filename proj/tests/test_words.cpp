#include "repvar/words.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

using namespace repvar;

namespace {

const std::vector<std::string> kAbc = {"a", "b", "c"};

Word w(const std::string& text, const std::vector<std::string>& names = kAbc) { return parse_word(text, names); }

/// Oracle string form: lowercase letter per generator, uppercase for inverses.
std::string letters(const Word& word) {
    std::string s;
    for (const auto& l : word.letters()) s += l.exp > 0 ? char('a' + l.gen) : char('A' + l.gen);
    return s;
}

std::vector<Letter> raw_from(const std::string& s) {
    std::vector<Letter> out;
    for (char c : s) out.push_back({std::uint32_t(std::tolower(c) - 'a'), std::isupper(c) ? -1 : 1});
    return out;
}

}  // namespace

TEST(Parse, Examples) {
    const auto t = parse_presentation("<a, b | [a, b]>");
    EXPECT_EQ(t.generators, (std::vector<std::string>{"a", "b"}));
    ASSERT_EQ(t.num_relators(), 1u);
    EXPECT_EQ(letters(t.relators[0]), "abAB");
    const auto d = parse_presentation("<a, b | a b^-1>");
    EXPECT_EQ(letters(d.relators[0]), "aB");
    EXPECT_EQ(parse_presentation("<a, b | ab^-1>"), d);
    const auto k3 = parse_presentation("<a, b, c | a^2 b^2 c^2>");
    EXPECT_EQ(letters(k3.relators[0]), "aabbcc");
    EXPECT_EQ(parse_presentation("<a | >").num_relators(), 0u);
    EXPECT_EQ(parse_presentation("< | >").num_generators(), 0u);
}

TEST(Parse, Syntax) {
    EXPECT_EQ(letters(w("(a b)^-2")), "BABA");
    EXPECT_EQ(letters(w("ab^2")), "abb");
    EXPECT_EQ(letters(w("(ab)^2")), "abab");
    EXPECT_EQ(letters(w("a^{-3}")), "AAA");
    EXPECT_EQ(letters(w("a*b*c")), "abc");
    EXPECT_EQ(letters(w("[a b, c]")), "abcBAC");
    EXPECT_EQ(letters(w("1 a 1")), "a");
    EXPECT_EQ(letters(w("a^0 b")), "b");
    const auto p = parse_presentation("# torus\n<x, y | x y x^-1 y^-1>  # commutator\n");
    EXPECT_EQ(p.generators, (std::vector<std::string>{"x", "y"}));
    EXPECT_EQ(letters(p.relators[0]), "abAB");
    EXPECT_EQ(letters(parse_word("a1 b1 a1^-1", {"a1", "b1"})), "abA");
}

TEST(Parse, Errors) {
    try {
        parse_presentation("<a, b | a c>");
        FAIL() << "unknown generator accepted";
    } catch (const ParseError& e) {
        EXPECT_NE(e.position(), ParseError::npos);
    }
    EXPECT_THROW(parse_presentation("<a | a a^-1>"), ParseError);
    EXPECT_THROW(parse_presentation("<a, b | a b"), ParseError);
    EXPECT_THROW(parse_presentation("<a, a | a>"), ParseError);
    EXPECT_THROW(parse_presentation("a, b | a"), ParseError);
    EXPECT_THROW(parse_presentation("<a | a^>"), ParseError);
    EXPECT_THROW(parse_presentation("<a | [a]>"), ParseError);
    EXPECT_THROW(parse_presentation("<a | a> trailing"), ParseError);
}

TEST(Parse, FormatRoundTrip) {
    for (const char* text : {"<a, b | [a, b]>", "<a, b, c | a^2 b^2 c^2>", "<x, y | x^3, y^-2, x y x^-1 y>", "<a | >"}) {
        const auto p = parse_presentation(text);
        EXPECT_EQ(parse_presentation(format_presentation(p)), p) << text;
    }
    EXPECT_EQ(format_presentation(parse_presentation("<a, b | [a, b]>")), "<a, b | a b a^-1 b^-1>");
    EXPECT_EQ(format_word(Word{}, kAbc), "1");
}

TEST(Parse, LoadsFile) {
    const auto p = load_presentation(std::string(REPVAR_DATA_DIR) + "/presentations/klein_bottle.pres");
    EXPECT_EQ(p.num_generators(), 2u);
    EXPECT_EQ(letters(p.relators[0]), "aabb");
    EXPECT_THROW(load_presentation("/nonexistent/file.pres"), ParseError);
}

TEST(Reduce, Examples) {
    EXPECT_EQ(letters(reduce(raw_from("aAb"))), "b");
    EXPECT_TRUE(reduce(raw_from("abBA")).empty());
    EXPECT_EQ(letters(reduce(raw_from("abBAc"))), "c");
}

TEST(Reduce, MatchesOracleAndIsIdempotent) {
    std::mt19937_64 rng(3);
    const std::string alphabet = "abcABC";
    for (int trial = 0; trial < 500; ++trial) {
        std::string s;
        const auto len = std::uniform_int_distribution<int>(0, 20)(rng);
        for (int i = 0; i < len; ++i) s += alphabet[std::uniform_int_distribution<std::size_t>(0, 5)(rng)];
        const auto r = reduce(raw_from(s));
        EXPECT_EQ(letters(r), oracle::reduce(s)) << s;
        EXPECT_EQ(reduce(r.letters()), r);
    }
}

TEST(Evaluate, Examples) {
    const auto s3 = build_group("S3");
    const auto ab = w("a b^-1");
    for (element_t x = 0; x < 6; ++x) {
        const std::vector<element_t> assign = {x, x};
        EXPECT_EQ(evaluate_word(s3, ab, assign), s3.identity());
    }
    const auto comm = w("[a, b]");
    for (element_t x = 0; x < 6; ++x) {
        const std::vector<element_t> assign = {x, s3.mul(x, x)};
        EXPECT_EQ(evaluate_word(s3, comm, assign), s3.identity());
    }
    const auto q8 = build_group("Q8");
    const std::vector<element_t> i = {2};
    EXPECT_EQ(q8.label(evaluate_word(q8, w("a a"), i)), "-1");
    EXPECT_EQ(evaluate_word(q8, Word{}, i), q8.identity());
    EXPECT_THROW(evaluate_word(q8, w("b"), i), InvalidInput);
}

TEST(Evaluate, MatchesOracleOnQuaternions) {
    const auto oq = oracle::quaternion8();
    const auto g = build_group("Q8");
    std::mt19937_64 rng(5);
    const std::string alphabet = "abAB";
    for (int trial = 0; trial < 100; ++trial) {
        std::string s;
        for (int i = 0; i < 12; ++i) s += alphabet[std::uniform_int_distribution<std::size_t>(0, 3)(rng)];
        const Word red = reduce(raw_from(s));
        for (element_t x = 0; x < 8; ++x)
            for (element_t y = 0; y < 8; ++y) {
                const std::vector<element_t> assign = {x, y};
                EXPECT_EQ(evaluate_word(g, red, assign), oracle::eval(oq, s, {x, y}));
            }
    }
}

TEST(Evaluate, ExhaustiveAgainstRawProduct) {
    const auto g = build_group("Q8");
    std::mt19937_64 rng(9);
    const std::string alphabet = "abAB";
    for (int trial = 0; trial < 100; ++trial) {
        std::string s;
        for (int i = 0; i < 10; ++i) s += alphabet[std::uniform_int_distribution<std::size_t>(0, 3)(rng)];
        const Word red = reduce(raw_from(s));
        for (element_t x = 0; x < 8; ++x)
            for (element_t y = 0; y < 8; ++y) {
                element_t raw = g.identity();
                for (const auto& l : raw_from(s)) {
                    const element_t v = l.gen == 0 ? x : y;
                    raw = g.mul(raw, l.exp > 0 ? v : g.inv(v));
                }
                const std::vector<element_t> assign = {x, y};
                EXPECT_EQ(evaluate_word(g, red, assign), raw);
            }
    }
}

TEST(Substitute, IdentityAndCommutesWithEvaluation) {
    const std::vector<Word> id = {Word::generator(0), Word::generator(1), Word::generator(2)};
    const auto word = w("a b^-1 c [a, c]");
    EXPECT_EQ(substitute(word, id), word);

    const auto g = build_group("S3");
    const std::vector<Word> images = {w("a b"), w("c^-1 a c^2"), w("b a^-1")};
    for (element_t x = 0; x < 6; ++x)
        for (element_t y = 0; y < 6; ++y)
            for (element_t z = 0; z < 6; ++z) {
                const std::vector<element_t> xyz = {x, y, z};
                const std::vector<element_t> mapped = {evaluate_word(g, images[0], xyz), evaluate_word(g, images[1], xyz),
                                                       evaluate_word(g, images[2], xyz)};
                EXPECT_EQ(evaluate_word(g, substitute(word, images), xyz), evaluate_word(g, word, mapped));
            }
}

TEST(Substitute, SquaresIdentityAndInverse) {
    const std::vector<Word> forward = {w("a b c"), w("c^-1 b^-1 a^-1 c^-1 a^-1 c"), w("c^-1 a c^2")};
    const std::vector<Word> backward = {w("a b c b^-1 a^-1 c^-1 b^-1 a^-1"), w("a b c a b c^-1 b^-1 c^-1 b^-1 a^-1"),
                                        w("a b c")};
    // Oracle: substitute by string replacement and reduce by stack.
    auto subst = [](const std::string& word, const std::vector<std::string>& img) {
        std::string out;
        for (char c : word) {
            const std::string& base = img[std::size_t(std::tolower(c) - 'a')];
            if (std::islower(c)) {
                out += base;
            } else {
                for (auto it = base.rbegin(); it != base.rend(); ++it)
                    out += std::islower(*it) ? char(std::toupper(*it)) : char(std::tolower(*it));
            }
        }
        return oracle::reduce(out);
    };
    const std::vector<std::string> fwd = {letters(forward[0]), letters(forward[1]), letters(forward[2])};
    EXPECT_EQ(subst("aabbcc", fwd), "abABcc");
    EXPECT_EQ(letters(substitute(w("a^2 b^2 c^2"), forward)), "abABcc");
    EXPECT_EQ(substitute(w("a^2 b^2 c^2"), forward), w("[a, b] c^2"));
    for (std::uint32_t i = 0; i < 3; ++i) {
        EXPECT_EQ(substitute(backward[i], forward), Word::generator(i));
        EXPECT_EQ(substitute(forward[i], backward), Word::generator(i));
    }
}

TEST(ExponentMatrix, Examples) {
    const std::vector<Word> forward = {w("a b c"), w("c^-1 b^-1 a^-1 c^-1 a^-1 c"), w("c^-1 a c^2")};
    const auto n = exponent_matrix(forward, 3);
    EXPECT_EQ(n, (std::vector<std::vector<long long>>{{1, 1, 1}, {-2, -1, -1}, {1, 0, 1}}));
    EXPECT_EQ(integer_determinant(n), 1);
    const std::vector<Word> comm = {w("[a, b]")};
    EXPECT_EQ(exponent_matrix(comm, 2), (std::vector<std::vector<long long>>{{0, 0}}));
    const std::vector<Word> sq = {w("a^2")};
    EXPECT_EQ(exponent_matrix(sq, 1), (std::vector<std::vector<long long>>{{2}}));
}

TEST(ExponentMatrix, Determinant) {
    EXPECT_EQ(integer_determinant({{2, 0}, {0, 3}}), 6);
    EXPECT_EQ(integer_determinant({{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(integer_determinant({{1, 2}, {2, 4}}), 0);
    EXPECT_EQ(integer_determinant({{0, 2, 1}, {3, 0, 1}, {1, 1, 0}}), 5);
    EXPECT_THROW(integer_determinant({{1, 2}}), InvalidInput);
}

TEST(AcMoves, Examples) {
    const auto d = parse_presentation("<a, b | a b^-1>");
    EXPECT_EQ(apply_ac_move(d, AcMove::invert()), parse_presentation("<a, b | b a^-1>"));
    const auto c3 = parse_presentation("<a | a^3>");
    EXPECT_EQ(apply_ac_move(c3, AcMove::add_generator("b")), parse_presentation("<a, b | a^3, b>"));
    const auto two = parse_presentation("<a, b | a, b>");
    EXPECT_EQ(apply_ac_move(two, AcMove::multiply()), parse_presentation("<a, b | a b, b>"));
    EXPECT_EQ(apply_ac_move(two, AcMove::swap(1)), parse_presentation("<a, b | b, a>"));
    EXPECT_EQ(apply_ac_move(d, AcMove::conjugate(w("b"))), parse_presentation("<a, b | b a b^-2>"));
    EXPECT_EQ(apply_ac_move(parse_presentation("<a, b | a^3, b>"), AcMove::delete_generator(1)), c3);
}

TEST(AcMoves, PreserveOrChangeCounts) {
    const auto p = parse_presentation("<a, b | [a, b], a^2>");
    for (const auto& m : {AcMove::swap(1), AcMove::conjugate(w("a")), AcMove::invert(), AcMove::multiply()}) {
        const auto q = apply_ac_move(p, m);
        EXPECT_EQ(q.num_generators(), 2u);
        EXPECT_EQ(q.num_relators(), 2u);
    }
    const auto added = apply_ac_move(p, AcMove::add_generator());
    EXPECT_EQ(added.num_generators(), 3u);
    EXPECT_EQ(added.num_relators(), 3u);
    EXPECT_EQ(apply_ac_move(added, AcMove::delete_generator(2)), p);
}

TEST(AcMoves, Errors) {
    const auto one = parse_presentation("<a, b | a b>");
    EXPECT_THROW(apply_ac_move(one, AcMove::multiply()), InvalidInput);
    EXPECT_THROW(apply_ac_move(one, AcMove::swap(1)), InvalidInput);
    EXPECT_THROW(apply_ac_move(parse_presentation("<a, b | b, a b>"), AcMove::delete_generator(1)), InvalidInput);
    EXPECT_THROW(apply_ac_move(one, AcMove::delete_generator(0)), InvalidInput);
    EXPECT_THROW(apply_ac_move(parse_presentation("<a, b | a, a^-1>"), AcMove::multiply()), InvalidInput);
    EXPECT_THROW(apply_ac_move(one, AcMove::add_generator("a")), InvalidInput);
    EXPECT_THROW(apply_ac_move(parse_presentation("<a | >"), AcMove::invert()), InvalidInput);
}

TEST(AcMoves, InverseSequencesRoundTrip) {
    std::mt19937_64 rng(13);
    const std::vector<Presentation> starts = {parse_presentation("<a, b | [a, b], a^2 b>"),
                                              parse_presentation("<a, b, c | a b c, c^2 a^-1, b a>")};
    for (const auto& p : starts) {
        std::vector<AcMove> moves = {AcMove::swap(1), AcMove::invert(), AcMove::multiply(), AcMove::add_generator()};
        for (int i = 0; i < 20; ++i) {
            std::vector<Letter> raw;
            for (int j = 0; j < 3; ++j)
                raw.push_back({std::uint32_t(std::uniform_int_distribution<int>(0, int(p.num_generators()) - 1)(rng)),
                               std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1});
            moves.push_back(AcMove::conjugate(Word(raw)));
        }
        if (p.num_relators() >= 3) moves.push_back(AcMove::swap(2));
        for (const auto& m : moves) {
            const auto q = apply_ac_move(p, m);
            Presentation back = q;
            for (const auto& inv : inverse_moves(p, m)) {
                EXPECT_NE(inv.type, AcMove::Type::AddGenerator);
                back = apply_ac_move(back, inv);
            }
            EXPECT_EQ(back, p) << describe(m, p.generators);
        }
    }
}

TEST(SurfacePresentations, Shapes) {
    const auto g2 = orientable_surface_presentation(2);
    EXPECT_EQ(g2.generators, (std::vector<std::string>{"a1", "b1", "a2", "b2"}));
    EXPECT_EQ(letters(g2.relators[0]), oracle::orientable_relator(2));
    const auto k3 = nonorientable_surface_presentation(3);
    EXPECT_EQ(letters(k3.relators[0]), oracle::nonorientable_relator(3));
    EXPECT_EQ(orientable_surface_presentation(0).num_relators(), 0u);
}
