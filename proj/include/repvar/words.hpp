#pragma once

// Free-group words, finitely presented groups, Andrews-Curtis moves, and
// word substitution.
//
// Presentation grammar:
//   presentation := '<' [ident {',' ident}] '|' [word {',' word}] '>'
//   word         := atom { ('*' | whitespace) atom }
//   atom         := primary ['^' int]
//   primary      := ident | '1' | '[' word ',' word ']' | '(' word ')'
//   int          := ['+'|'-'] digits | '{' int '}'
// [x, y] expands to x y x^-1 y^-1. An exponent n expands to |n| copies of the
// base (inverted when n < 0). An identifier that is not a generator name is
// split into generator names when that split is unique, so `ab^-1` reads as
// `a b^-1` when a and b are generators.

#include "repvar/common.hpp"
#include "repvar/fingroup.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace repvar {

struct Letter {
    std::uint32_t gen = 0;
    int exp = 1;  // +1 or -1

    Letter inverse() const { return {gen, -exp}; }
    friend bool operator==(const Letter&, const Letter&) = default;
};

/// A freely reduced word; construction from raw letters performs the reduction.
class Word {
public:
    Word() = default;
    explicit Word(std::span<const Letter> raw) {
        letters_.reserve(raw.size());
        for (const auto& l : raw) push(l);
    }
    Word(std::initializer_list<Letter> raw) : Word(std::span<const Letter>(raw.begin(), raw.size())) {}

    static Word generator(std::uint32_t gen, int exp = 1) { return Word({Letter{gen, exp}}); }

    const std::vector<Letter>& letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    const Letter& operator[](std::size_t i) const { return letters_[i]; }

    Word inverse() const {
        Word w;
        w.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
        return w;
    }

    Word power(int n) const {
        const Word base = n < 0 ? inverse() : *this;
        Word w;
        for (int i = 0; i < (n < 0 ? -n : n); ++i) w *= base;
        return w;
    }

    Word& operator*=(const Word& rhs) {
        for (const auto& l : rhs.letters_) push(l);
        return *this;
    }
    friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }
    friend bool operator==(const Word&, const Word&) = default;

    /// Largest generator index + 1 (0 for the empty word).
    std::uint32_t generator_span() const {
        std::uint32_t m = 0;
        for (const auto& l : letters_) m = std::max(m, l.gen + 1);
        return m;
    }

private:
    void push(const Letter& l) {
        if (l.exp != 1 && l.exp != -1) throw InvalidInput("letter exponent must be +1 or -1");
        if (!letters_.empty() && letters_.back() == l.inverse())
            letters_.pop_back();
        else
            letters_.push_back(l);
    }

    std::vector<Letter> letters_;
};

/// Free reduction of a raw letter sequence.
inline Word reduce(std::span<const Letter> raw) { return Word(raw); }

inline Word commutator(const Word& x, const Word& y) { return x * y * x.inverse() * y.inverse(); }

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    std::size_t num_generators() const noexcept { return generators.size(); }
    std::size_t num_relators() const noexcept { return relators.size(); }
    long long deficiency() const noexcept { return (long long)generators.size() - (long long)relators.size(); }

    /// Throws InvalidInput unless every relator is nonempty and uses only declared generators.
    void validate() const {
        for (std::size_t i = 0; i < relators.size(); ++i) {
            if (relators[i].empty()) throw InvalidInput("relator " + std::to_string(i + 1) + " is the empty word");
            if (relators[i].generator_span() > generators.size())
                throw InvalidInput("relator " + std::to_string(i + 1) + " uses an undeclared generator");
        }
    }

    friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Runs of equal letters print as `x^n`; the empty word prints as `1`.
inline std::string format_word(const Word& w, const std::vector<std::string>& names) {
    if (w.empty()) return "1";
    std::string out;
    const auto& ls = w.letters();
    for (std::size_t i = 0; i < ls.size();) {
        std::size_t j = i;
        while (j < ls.size() && ls[j] == ls[i]) ++j;
        const long long n = (long long)(j - i) * ls[i].exp;
        if (!out.empty()) out += ' ';
        out += ls[i].gen < names.size() ? names[ls[i].gen] : "x" + std::to_string(ls[i].gen);
        if (n != 1) out += "^" + std::to_string(n);
        i = j;
    }
    return out;
}

inline std::string format_presentation(const Presentation& p) {
    std::string out = "<";
    for (std::size_t i = 0; i < p.generators.size(); ++i) out += (i ? ", " : "") + p.generators[i];
    out += " | ";
    for (std::size_t i = 0; i < p.relators.size(); ++i) out += (i ? ", " : "") + format_word(p.relators[i], p.generators);
    if (p.relators.empty()) out.pop_back();
    out += ">";
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class WordParser {
public:
    WordParser(std::string_view text, std::size_t pos, const std::vector<std::string>* names)
        : text_(text), pos_(pos), names_(names) {}

    std::size_t pos() const { return pos_; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    void expect(char c) {
        if (!at(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= text_.size();
    }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            throw ParseError("expected an identifier", pos_);
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    /// A word ends at ',', ']', ')', '>' or end of input.
    Word word() {
        Word w;
        bool any = false;
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size()) break;
            const char c = text_[pos_];
            if (c == ',' || c == ']' || c == ')' || c == '>' || c == '|') break;
            if (c == '*') {
                if (!any) throw ParseError("'*' without a left operand", pos_);
                ++pos_;
                skip_ws();
                if (pos_ >= text_.size() || std::string_view(",])>|*").find(text_[pos_]) != std::string_view::npos)
                    throw ParseError("'*' without a right operand", pos_);
                continue;
            }
            w *= atom();
            any = true;
        }
        if (!any) throw ParseError("expected a word", pos_);
        return w;
    }

private:
    Word atom() {
        skip_ws();
        Word base;
        const char c = text_[pos_];
        if (c == '[') {
            ++pos_;
            Word x = word();
            expect(',');
            Word y = word();
            expect(']');
            base = commutator(x, y);
        } else if (c == '(') {
            ++pos_;
            base = word();
            expect(')');
        } else if (c == '1') {
            ++pos_;
        } else {
            // In a run of juxtaposed names like "ab^-1" the exponent binds to the last one.
            const std::size_t start = pos_;
            const auto gens = resolve(identifier(), start);
            for (std::size_t i = 0; i + 1 < gens.size(); ++i) base *= Word::generator(gens[i]);
            Word last = Word::generator(gens.back());
            if (at('^')) {
                ++pos_;
                last = last.power(exponent());
            }
            return base * last;
        }
        if (at('^')) {
            ++pos_;
            base = base.power(exponent());
        }
        return base;
    }

    int exponent() {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '{') {
            ++pos_;
            const int e = exponent();
            expect('}');
            return e;
        }
        int sign = 1;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            sign = text_[pos_] == '-' ? -1 : 1;
            ++pos_;
        }
        const std::size_t start = pos_;
        long long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 100000) throw ParseError("exponent too large", start);
            ++pos_;
        }
        if (pos_ == start) throw ParseError("expected an integer exponent", pos_);
        return sign * static_cast<int>(v);
    }

    std::vector<std::uint32_t> resolve(const std::string& ident, std::size_t at_pos) {
        const auto& names = *names_;
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == ident) return {static_cast<std::uint32_t>(i)};
        // Unique segmentation into generator names.
        const std::size_t n = ident.size();
        std::vector<int> ways(n + 1, 0);
        std::vector<int> choice(n + 1, -1);
        ways[n] = 1;
        for (std::size_t s = n; s-- > 0;) {
            for (std::size_t g = 0; g < names.size(); ++g) {
                const auto& nm = names[g];
                if (!nm.empty() && ident.compare(s, nm.size(), nm) == 0 && s + nm.size() <= n && ways[s + nm.size()]) {
                    ways[s] = std::min(2, ways[s] + ways[s + nm.size()]);
                    choice[s] = static_cast<int>(g);
                }
            }
        }
        if (ways[0] == 0) throw ParseError("unknown generator '" + ident + "'", at_pos);
        if (ways[0] > 1) throw ParseError("ambiguous generator sequence '" + ident + "'", at_pos);
        std::vector<std::uint32_t> gens;
        for (std::size_t s = 0; s < n;) {
            const auto g = static_cast<std::uint32_t>(choice[s]);
            gens.push_back(g);
            s += names[g].size();
        }
        return gens;
    }

    std::string_view text_;
    std::size_t pos_;
    const std::vector<std::string>* names_;
};

inline std::string strip_comments(std::string_view text) {
    std::string out;
    bool comment = false;
    for (char c : text) {
        if (c == '#') comment = true;
        if (c == '\n') comment = false;
        out += comment ? ' ' : c;
    }
    return out;
}

}  // namespace detail

/// Parse a single word over the given generator names.
inline Word parse_word(std::string_view text, const std::vector<std::string>& names) {
    detail::WordParser p(text, 0, &names);
    if (p.done()) return Word{};
    Word w = p.word();
    if (!p.done()) throw ParseError("unexpected trailing input", p.pos());
    return w;
}

inline Presentation parse_presentation(std::string_view raw) {
    const std::string text = detail::strip_comments(raw);
    Presentation pres;
    detail::WordParser p(text, 0, &pres.generators);
    p.expect('<');
    if (!p.at('|')) {
        for (;;) {
            const std::size_t at = p.pos();
            std::string name = p.identifier();
            if (std::find(pres.generators.begin(), pres.generators.end(), name) != pres.generators.end())
                throw ParseError("duplicate generator '" + name + "'", at);
            pres.generators.push_back(std::move(name));
            if (p.at(',')) {
                p.expect(',');
                continue;
            }
            break;
        }
    }
    p.expect('|');
    if (!p.at('>')) {
        for (;;) {
            const std::size_t at = p.pos();
            Word w = p.word();
            if (w.empty()) throw ParseError("relator reduces to the empty word", at);
            pres.relators.push_back(std::move(w));
            if (p.at(',')) {
                p.expect(',');
                continue;
            }
            break;
        }
    }
    p.expect('>');
    if (!p.done()) throw ParseError("unexpected trailing input", p.pos());
    return pres;
}

/// One presentation per file; `#` starts a comment.
inline Presentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open presentation file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
}

// ---------------------------------------------------------------------------
// Evaluation and substitution

/// Product of the assigned elements along the word; the empty word gives the identity.
inline element_t evaluate_word(const FiniteGroup& g, const Word& w, std::span<const element_t> assignment) {
    element_t acc = g.identity();
    for (const auto& l : w.letters()) {
        if (l.gen >= assignment.size()) throw InvalidInput("assignment does not cover every generator of the word");
        const element_t x = assignment[l.gen];
        acc = g.mul(acc, l.exp > 0 ? x : g.inv(x));
    }
    return acc;
}

/// Replace each generator i by images[i] and reduce.
inline Word substitute(const Word& w, std::span<const Word> images) {
    Word out;
    for (const auto& l : w.letters()) {
        if (l.gen >= images.size()) throw InvalidInput("substitution does not cover every generator of the word");
        out *= l.exp > 0 ? images[l.gen] : images[l.gen].inverse();
    }
    return out;
}

/// Entry (i, j): occurrences of generator j in word i minus occurrences of its inverse.
inline std::vector<std::vector<long long>> exponent_matrix(std::span<const Word> words, std::size_t k) {
    std::vector<std::vector<long long>> n(words.size(), std::vector<long long>(k, 0));
    for (std::size_t i = 0; i < words.size(); ++i)
        for (const auto& l : words[i].letters()) {
            if (l.gen >= k) throw InvalidInput("word uses a generator outside the matrix width");
            n[i][l.gen] += l.exp;
        }
    return n;
}

/// Exact determinant of a square integer matrix (fraction-free elimination).
inline BigInt integer_determinant(const std::vector<std::vector<long long>>& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw InvalidInput("determinant needs a square matrix");
    if (n == 0) return 1;
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// Andrews-Curtis moves

struct AcMove {
    enum class Type { Swap = 1, Conjugate = 2, Invert = 3, Multiply = 4, AddGenerator = 5, DeleteGenerator = 6 };

    Type type = Type::Invert;
    std::size_t index = 0;   // relator j for Swap (0-based, j >= 1); generator for DeleteGenerator
    Word conjugator;         // Conjugate
    std::string new_name;    // AddGenerator; empty picks a fresh name

    static AcMove swap(std::size_t j) { return {Type::Swap, j, {}, {}}; }
    static AcMove conjugate(Word a) { return {Type::Conjugate, 0, std::move(a), {}}; }
    static AcMove invert() { return {Type::Invert, 0, {}, {}}; }
    static AcMove multiply() { return {Type::Multiply, 0, {}, {}}; }
    static AcMove add_generator(std::string name = {}) { return {Type::AddGenerator, 0, {}, std::move(name)}; }
    static AcMove delete_generator(std::size_t gen) { return {Type::DeleteGenerator, gen, {}, {}}; }

    friend bool operator==(const AcMove&, const AcMove&) = default;
};

inline std::string describe(const AcMove& m, const std::vector<std::string>& names) {
    switch (m.type) {
    case AcMove::Type::Swap: return "(1) swap q1 <-> q" + std::to_string(m.index + 1);
    case AcMove::Type::Conjugate: return "(2) q1 -> a q1 a^-1, a = " + format_word(m.conjugator, names);
    case AcMove::Type::Invert: return "(3) q1 -> q1^-1";
    case AcMove::Type::Multiply: return "(4) q1 -> q1 q2";
    case AcMove::Type::AddGenerator: return "(5) add generator" + (m.new_name.empty() ? "" : " " + m.new_name);
    case AcMove::Type::DeleteGenerator:
        return "(6) delete generator " + (m.index < names.size() ? names[m.index] : std::to_string(m.index));
    }
    return "?";
}

inline Presentation apply_ac_move(const Presentation& p, const AcMove& m) {
    Presentation out = p;
    auto need_relator = [&] {
        if (p.relators.empty()) throw InvalidInput("move needs at least one relator");
    };
    switch (m.type) {
    case AcMove::Type::Swap:
        need_relator();
        if (m.index < 1 || m.index >= p.relators.size())
            throw InvalidInput("swap index must name a relator q_j with j >= 2");
        std::swap(out.relators[0], out.relators[m.index]);
        break;
    case AcMove::Type::Conjugate:
        need_relator();
        if (m.conjugator.generator_span() > p.generators.size())
            throw InvalidInput("conjugator uses an undeclared generator");
        out.relators[0] = m.conjugator * p.relators[0] * m.conjugator.inverse();
        break;
    case AcMove::Type::Invert:
        need_relator();
        out.relators[0] = p.relators[0].inverse();
        break;
    case AcMove::Type::Multiply:
        if (p.relators.size() < 2) throw InvalidInput("move (4) needs at least two relators");
        out.relators[0] = p.relators[0] * p.relators[1];
        if (out.relators[0].empty()) throw InvalidInput("move (4) would produce an empty relator");
        break;
    case AcMove::Type::AddGenerator: {
        std::string name = m.new_name;
        if (name.empty()) {
            for (std::size_t i = p.generators.size();; ++i) {
                name = "x" + std::to_string(i);
                if (std::find(p.generators.begin(), p.generators.end(), name) == p.generators.end()) break;
            }
        } else if (std::find(p.generators.begin(), p.generators.end(), name) != p.generators.end()) {
            throw InvalidInput("generator '" + name + "' already exists");
        }
        out.generators.push_back(name);
        out.relators.push_back(Word::generator(static_cast<std::uint32_t>(p.generators.size())));
        break;
    }
    case AcMove::Type::DeleteGenerator: {
        const auto gen = static_cast<std::uint32_t>(m.index);
        if (gen >= p.generators.size()) throw InvalidInput("no such generator");
        std::size_t own = p.relators.size();
        for (std::size_t i = 0; i < p.relators.size(); ++i)
            if (p.relators[i].length() == 1 && p.relators[i][0].gen == gen) {
                own = i;
                break;
            }
        if (own == p.relators.size())
            throw InvalidInput("generator " + p.generators[gen] + " is not a single-letter relator");
        for (std::size_t i = 0; i < p.relators.size(); ++i) {
            if (i == own) continue;
            for (const auto& l : p.relators[i].letters())
                if (l.gen == gen)
                    throw InvalidInput("generator " + p.generators[gen] + " occurs in relator " + std::to_string(i + 1));
        }
        out.generators.erase(out.generators.begin() + gen);
        out.relators.clear();
        for (std::size_t i = 0; i < p.relators.size(); ++i) {
            if (i == own) continue;
            std::vector<Letter> ls = p.relators[i].letters();
            for (auto& l : ls)
                if (l.gen > gen) --l.gen;
            out.relators.emplace_back(ls);
        }
        break;
    }
    }
    return out;
}

/// A sequence of moves undoing `m` when applied to apply_ac_move(before, m).
/// Moves (1)-(4) are undone by moves (1)-(4); move (5) by move (6).
inline std::vector<AcMove> inverse_moves(const Presentation& before, const AcMove& m) {
    switch (m.type) {
    case AcMove::Type::Swap:
    case AcMove::Type::Invert:
        return {m};
    case AcMove::Type::Conjugate:
        return {AcMove::conjugate(m.conjugator.inverse())};
    case AcMove::Type::Multiply:
        // (q1 q2, q2) -> (q1 q2, q2^-1) -> (q1, q2^-1) -> (q1, q2)
        return {AcMove::swap(1), AcMove::invert(), AcMove::swap(1), AcMove::multiply(),
                AcMove::swap(1), AcMove::invert(), AcMove::swap(1)};
    case AcMove::Type::AddGenerator:
        return {AcMove::delete_generator(before.generators.size())};
    case AcMove::Type::DeleteGenerator:
        break;
    }
    throw InvalidInput("move (6) has no inverse that restores generator order");
}

// ---------------------------------------------------------------------------
// Surface presentations

/// <a1, b1, ..., ag, bg | [a1,b1]...[ag,bg]>; genus 0 gives the empty presentation.
inline Presentation orientable_surface_presentation(unsigned genus) {
    Presentation p;
    Word rel;
    for (unsigned i = 0; i < genus; ++i) {
        p.generators.push_back("a" + std::to_string(i + 1));
        p.generators.push_back("b" + std::to_string(i + 1));
        rel *= commutator(Word::generator(2 * i), Word::generator(2 * i + 1));
    }
    if (genus > 0) p.relators.push_back(rel);
    return p;
}

/// <a1, ..., ak | a1^2 ... ak^2>.
inline Presentation nonorientable_surface_presentation(unsigned crosscaps) {
    Presentation p;
    Word rel;
    for (unsigned i = 0; i < crosscaps; ++i) {
        p.generators.push_back("a" + std::to_string(i + 1));
        rel *= Word::generator(i).power(2);
    }
    if (crosscaps > 0) p.relators.push_back(rel);
    return p;
}

}  // namespace repvar
