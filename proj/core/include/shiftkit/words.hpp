#pragma once

#include "shiftkit/common.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shiftkit {

// Finite ordered set of symbol names.  Symbol values are indices into this
// order, so word comparison by symbol value is comparison in alphabet order.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    // One single-character symbol per character of `letters`.
    static Alphabet chars(std::string_view letters);
    static Alphabet binary() { return chars("01"); }

    size_t size() const { return names_.size(); }
    const std::string& name(Symbol s) const;
    std::optional<Symbol> index(std::string_view name) const;
    const std::vector<std::string>& names() const { return names_; }
    bool single_char() const;

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> names_;
};

// A finite word: sequence of symbols.  Comparison is plain lexicographic on
// symbol values; shortlex_less orders by length first.
struct Word {
    std::vector<Symbol> letters;

    Word() = default;
    explicit Word(std::vector<Symbol> ls) : letters(std::move(ls)) {}

    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    Symbol operator[](size_t i) const { return letters[i]; }

    Word subword(size_t pos, size_t len) const;
    Word drop_first() const { return subword(1, size() - 1); }
    Word drop_last() const { return subword(0, size() - 1); }
    Word appended(Symbol s) const;
    Word repeated(size_t times) const;
    Word rotated(size_t offset) const;  // w[offset..] + w[..offset]

    friend Word operator+(const Word& a, const Word& b);
    auto operator<=>(const Word&) const = default;
};

bool shortlex_less(const Word& a, const Word& b);

std::string format_word(const Alphabet& a, const Word& w);
Word parse_word(const Alphabet& a, std::string_view text);

// Number of (possibly overlapping) occurrences of pattern in text.
// Empty pattern occurs |text|+1 times.
size_t occurrences(const Word& pattern, const Word& text);

// Occurrences of pattern in the periodic extension of period_word, counted
// per period: offsets in [0, |period_word|).  The pattern may wrap over
// several copies.  Empty pattern counts |period_word|; empty period_word is
// an error.
size_t cyclic_occurrences(const Word& pattern, const Word& period_word);

// True iff no member of `forbidden` occurs in w.
bool avoids(const Word& w, const std::vector<Word>& forbidden);

// Keep only words that contain no other member as a subword; dedupes.
// Result is in shortlex order.  Letters must lie in the alphabet.
std::vector<Word> minimalize(const Alphabet& a, std::vector<Word> words);

// A minimal forbidden-word set over an alphabet.  Construction minimalizes,
// dedupes and sorts; empty words are rejected.
class ForbiddenSet {
public:
    ForbiddenSet() = default;
    ForbiddenSet(Alphabet a, std::vector<Word> words);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Word>& words() const { return words_; }
    size_t max_len() const { return max_len_; }
    bool empty() const { return words_.empty(); }

    bool operator==(const ForbiddenSet&) const = default;

private:
    Alphabet alphabet_;
    std::vector<Word> words_;  // shortlex order, minimal
    size_t max_len_ = 0;
};

bool avoids(const Word& w, const ForbiddenSet& forbidden);

// Text format:
//   alphabet: 01
//   # comment
//   11
//   1001
// Multi-character symbol names are space-separated on the alphabet line and
// in word lines.  serialize(parse(s)) == s for canonically ordered input.
ForbiddenSet parse_forbidden(std::string_view text);
std::string serialize_forbidden(const ForbiddenSet& f);

}  // namespace shiftkit
