#include "shiftkit/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace shiftkit {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw Error("alphabet must be nonempty");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw Error("alphabet symbol name must be nonempty");
        for (char c : n) {
            if (c == '#' || std::isspace(static_cast<unsigned char>(c)))
                throw Error("alphabet symbol name contains reserved character: " + n);
        }
        if (!seen.insert(n).second) throw Error("duplicate alphabet symbol: " + n);
    }
}

Alphabet Alphabet::chars(std::string_view letters) {
    std::vector<std::string> names;
    names.reserve(letters.size());
    for (char c : letters) names.emplace_back(1, c);
    return Alphabet(std::move(names));
}

const std::string& Alphabet::name(Symbol s) const {
    if (s >= names_.size()) throw Error("symbol out of alphabet range");
    return names_[s];
}

std::optional<Symbol> Alphabet::index(std::string_view name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<Symbol>(i);
    return std::nullopt;
}

bool Alphabet::single_char() const {
    return std::all_of(names_.begin(), names_.end(),
                       [](const std::string& n) { return n.size() == 1; });
}

Word Word::subword(size_t pos, size_t len) const {
    if (pos + len > letters.size()) throw Error("subword out of range");
    return Word(std::vector<Symbol>(letters.begin() + pos, letters.begin() + pos + len));
}

Word Word::appended(Symbol s) const {
    Word w = *this;
    w.letters.push_back(s);
    return w;
}

Word Word::repeated(size_t times) const {
    Word w;
    w.letters.reserve(letters.size() * times);
    for (size_t i = 0; i < times; ++i)
        w.letters.insert(w.letters.end(), letters.begin(), letters.end());
    return w;
}

Word Word::rotated(size_t offset) const {
    if (letters.empty()) return *this;
    offset %= letters.size();
    Word w;
    w.letters.reserve(letters.size());
    w.letters.insert(w.letters.end(), letters.begin() + offset, letters.end());
    w.letters.insert(w.letters.end(), letters.begin(), letters.begin() + offset);
    return w;
}

Word operator+(const Word& a, const Word& b) {
    Word w = a;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return w;
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.letters < b.letters;
}

std::string format_word(const Alphabet& a, const Word& w) {
    std::string out;
    const bool sep = !a.single_char();
    for (size_t i = 0; i < w.size(); ++i) {
        if (sep && i > 0) out += ' ';
        out += a.name(w[i]);
    }
    return out;
}

Word parse_word(const Alphabet& a, std::string_view text) {
    Word w;
    if (a.single_char()) {
        for (char c : text) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            auto s = a.index(std::string_view(&c, 1));
            if (!s) throw ParseError(std::string("unknown symbol '") + c + "' in word");
            w.letters.push_back(*s);
        }
    } else {
        std::istringstream in{std::string(text)};
        std::string tok;
        while (in >> tok) {
            auto s = a.index(tok);
            if (!s) throw ParseError("unknown symbol '" + tok + "' in word");
            w.letters.push_back(*s);
        }
    }
    return w;
}

size_t occurrences(const Word& pattern, const Word& text) {
    if (pattern.empty()) return text.size() + 1;
    if (pattern.size() > text.size()) return 0;
    size_t count = 0;
    for (size_t i = 0; i + pattern.size() <= text.size(); ++i) {
        bool hit = true;
        for (size_t j = 0; j < pattern.size(); ++j) {
            if (text[i + j] != pattern[j]) {
                hit = false;
                break;
            }
        }
        if (hit) ++count;
    }
    return count;
}

size_t cyclic_occurrences(const Word& pattern, const Word& period_word) {
    if (period_word.empty()) throw Error("cyclic_occurrences: empty period word");
    if (pattern.empty()) return period_word.size();
    const size_t p = period_word.size();
    size_t count = 0;
    for (size_t i = 0; i < p; ++i) {
        bool hit = true;
        for (size_t j = 0; j < pattern.size(); ++j) {
            if (period_word[(i + j) % p] != pattern[j]) {
                hit = false;
                break;
            }
        }
        if (hit) ++count;
    }
    return count;
}

bool avoids(const Word& w, const std::vector<Word>& forbidden) {
    for (const auto& f : forbidden)
        if (occurrences(f, w) > 0) return false;
    return true;
}

bool avoids(const Word& w, const ForbiddenSet& forbidden) {
    return avoids(w, forbidden.words());
}

std::vector<Word> minimalize(const Alphabet& a, std::vector<Word> words) {
    for (const auto& w : words) {
        if (w.empty()) throw Error("forbidden word must be nonempty");
        for (Symbol s : w.letters)
            if (s >= a.size()) throw Error("forbidden word letter outside alphabet");
    }
    std::sort(words.begin(), words.end(), shortlex_less);
    words.erase(std::unique(words.begin(), words.end()), words.end());
    std::vector<Word> kept;
    for (const auto& w : words) {
        bool contains_other = false;
        for (const auto& shorter : words) {
            if (shorter.size() >= w.size()) break;  // shortlex order
            if (occurrences(shorter, w) > 0) {
                contains_other = true;
                break;
            }
        }
        if (!contains_other) kept.push_back(w);
    }
    return kept;
}

ForbiddenSet::ForbiddenSet(Alphabet a, std::vector<Word> words)
    : alphabet_(std::move(a)), words_(minimalize(alphabet_, std::move(words))) {
    for (const auto& w : words_) max_len_ = std::max(max_len_, w.size());
}

namespace {

std::string_view strip(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

ForbiddenSet parse_forbidden(std::string_view text) {
    std::optional<Alphabet> alphabet;
    std::vector<Word> words;
    size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        if (!alphabet) {
            constexpr std::string_view kKey = "alphabet:";
            if (line.substr(0, kKey.size()) != kKey)
                throw ParseError("line " + std::to_string(lineno) + ": expected 'alphabet:' header");
            std::string_view rest = strip(line.substr(kKey.size()));
            if (rest.empty()) throw ParseError("empty alphabet");
            if (rest.find_first_of(" \t") != std::string_view::npos) {
                std::istringstream in{std::string(rest)};
                std::vector<std::string> names;
                std::string tok;
                while (in >> tok) names.push_back(tok);
                alphabet = Alphabet(std::move(names));
            } else {
                alphabet = Alphabet::chars(rest);
            }
            continue;
        }
        try {
            words.push_back(parse_word(*alphabet, line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!alphabet) throw ParseError("missing 'alphabet:' header");
    return ForbiddenSet(std::move(*alphabet), std::move(words));
}

std::string serialize_forbidden(const ForbiddenSet& f) {
    std::string out = "alphabet: ";
    const auto& names = f.alphabet().names();
    const bool sep = !f.alphabet().single_char();
    for (size_t i = 0; i < names.size(); ++i) {
        if (sep && i > 0) out += ' ';
        out += names[i];
    }
    out += '\n';
    for (const auto& w : f.words()) {
        out += format_word(f.alphabet(), w);
        out += '\n';
    }
    return out;
}

}  // namespace shiftkit
