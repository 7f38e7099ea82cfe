#include "shiftkit/blockcodes.hpp"

#include <algorithm>
#include <sstream>

namespace shiftkit {

BlockMap::BlockMap(int range, Alphabet domain, Alphabet codomain,
                   std::vector<std::pair<Word, Symbol>> entries)
    : range_(range), domain_(std::move(domain)), codomain_(std::move(codomain)) {
    if (range_ < 0) throw Error("block map range must be >= 0");
    for (auto& [w, s] : entries) {
        if (w.size() != window_len())
            throw Error("block map window " + format_word(domain_, w) +
                        " has length " + std::to_string(w.size()) + ", expected " +
                        std::to_string(window_len()));
        for (Symbol l : w.letters)
            if (l >= domain_.size()) throw Error("block map window letter outside alphabet");
        if (s >= codomain_.size()) throw Error("block map value outside codomain");
        auto [it, inserted] = table_.emplace(std::move(w), s);
        if (!inserted && it->second != s)
            throw Error("block map window " + format_word(domain_, it->first) +
                        " listed twice with different values");
    }
}

std::optional<Symbol> BlockMap::lookup(const Word& window) const {
    auto it = table_.find(window);
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

void BlockMap::check_total(const std::vector<Word>& windows) const {
    for (const auto& w : windows)
        if (!table_.count(w))
            throw Error("block map table missing window " + format_word(domain_, w));
}

Word apply_word(const BlockMap& m, const Word& w) {
    size_t win = m.window_len();
    if (w.size() < win)
        throw Error("word of length " + std::to_string(w.size()) +
                    " too short for block map of range " + std::to_string(m.range()));
    std::vector<Symbol> out;
    out.reserve(w.size() - win + 1);
    for (size_t j = 0; j + win <= w.size(); ++j) {
        auto v = m.lookup(w.subword(j, win));
        if (!v)
            throw Error("block map table missing window " +
                        format_word(m.domain(), w.subword(j, win)));
        out.push_back(*v);
    }
    return Word(std::move(out));
}

namespace {

std::pair<Word, Symbol> derive_composite(const BlockMap& outer, const BlockMap& inner,
                                         const Word& w) {
    Word mid = apply_word(inner, w);  // length 2*R_outer + 1
    auto v = outer.lookup(mid);
    if (!v)
        throw Error("composite underivable: outer table missing window " +
                    format_word(outer.domain(), mid));
    return {w, *v};
}

}  // namespace

BlockMap compose(const BlockMap& outer, const BlockMap& inner,
                 const std::vector<Word>& windows) {
    if (outer.domain() != inner.codomain())
        throw Error("compose: outer domain differs from inner codomain");
    std::vector<std::pair<Word, Symbol>> entries;
    entries.reserve(windows.size());
    for (const auto& w : windows) entries.push_back(derive_composite(outer, inner, w));
    return BlockMap(outer.range() + inner.range(), inner.domain(), outer.codomain(),
                    std::move(entries));
}

BlockMap compose(const BlockMap& outer, const BlockMap& inner) {
    if (outer.domain() != inner.codomain())
        throw Error("compose: outer domain differs from inner codomain");
    int range = outer.range() + inner.range();
    size_t len = 2 * static_cast<size_t>(range) + 1;
    double count = 1;
    for (size_t i = 0; i < len; ++i) count *= static_cast<double>(inner.domain().size());
    if (count > 1e7) throw CapExceeded("compose: window slice too large to enumerate");

    std::vector<std::pair<Word, Symbol>> entries;
    Word w(std::vector<Symbol>(len, 0));
    while (true) {
        // Keep windows whose derivation succeeds; others stay undefined.
        try {
            entries.push_back(derive_composite(outer, inner, w));
        } catch (const Error&) {
        }
        size_t i = len;
        while (i > 0 && w.letters[i - 1] + 1u == inner.domain().size())
            w.letters[--i] = 0;
        if (i == 0) break;
        ++w.letters[i - 1];
    }
    return BlockMap(range, inner.domain(), outer.codomain(), std::move(entries));
}

PeriodicOrbit apply_orbit(const BlockMap& m, const PeriodicOrbit& orbit) {
    const Word& x = orbit.period_word;
    size_t p = x.size();
    if (p == 0) throw Error("apply_orbit: empty orbit");
    int R = m.range();
    std::vector<Symbol> out(p);
    for (size_t j = 0; j < p; ++j) {
        std::vector<Symbol> win(m.window_len());
        for (size_t t = 0; t < m.window_len(); ++t) {
            size_t idx = (j + t + p * (static_cast<size_t>(R) / p + 1) - R) % p;
            win[t] = x[idx];
        }
        auto v = m.lookup(Word(std::move(win)));
        if (!v)
            throw Error("block map table missing a cyclic window of orbit " +
                        format_word(m.domain(), x));
        out[j] = *v;
    }
    return PeriodicOrbit(Word(std::move(out)));
}

std::vector<Word> image_slice(const BlockMap& m, const SftSpec& spec, int L, size_t cap) {
    if (L < 1) throw Error("image_slice: L must be >= 1");
    auto words = language_slice(spec, L + 2 * m.range(), cap);
    std::vector<Word> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(apply_word(m, w));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AutomorphismVerdict verify_automorphism_pair(const BlockMap& fwd, const BlockMap& inv,
                                             const SubshiftOracle& o, int depth,
                                             const ScanOptions& opts) {
    if (depth < 1) throw Error("verify_automorphism_pair: depth must be >= 1");
    AutomorphismVerdict verdict;
    if (fwd.domain() != o.alphabet() || inv.codomain() != o.alphabet() ||
        fwd.codomain() != inv.domain()) {
        verdict.pass = false;
        verdict.failure = "alphabet mismatch between maps and oracle";
        return verdict;
    }
    int rc = fwd.range() + inv.range();
    if (depth + 2 * rc > o.horizon())
        throw Error("verify_automorphism_pair: depth exceeds horizon minus 2(R+R')");

    for (int n = 1; n <= depth; ++n) {
        for (const auto& w : oracle_slice(o, n + 2 * fwd.range(), opts)) {
            if (!o.member(apply_word(fwd, w))) {
                verdict.pass = false;
                verdict.failure = "image of an admissible word leaves the language";
                verdict.witness = w;
                return verdict;
            }
        }
    }

    BlockMap comp = compose(inv, fwd, oracle_slice(o, 2 * rc + 1, opts));
    for (int n = 1; n <= depth; ++n) {
        for (const auto& w : oracle_slice(o, n + 2 * rc, opts)) {
            if (apply_word(comp, w) != w.subword(rc, n)) {
                verdict.pass = false;
                verdict.failure = "inverse composed with map is not the identity";
                verdict.witness = w;
                return verdict;
            }
        }
    }
    return verdict;
}

BlockMap parse_block_map(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<int> range;
    std::optional<Alphabet> domain, codomain;
    std::vector<std::pair<std::string, std::string>> raw;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        auto parse_alphabet = [](std::string_view names) {
            std::istringstream ss{std::string(names)};
            std::vector<std::string> parts;
            std::string part;
            while (ss >> part) parts.push_back(part);
            if (parts.size() == 1 && parts[0].size() > 1) {
                std::vector<std::string> chars;
                for (char c : parts[0]) chars.emplace_back(1, c);
                return Alphabet(std::move(chars));
            }
            return Alphabet(std::move(parts));
        };

        if (line.rfind("range:", 0) == 0) {
            range = std::stoi(line.substr(6));
        } else if (line.rfind("alphabet:", 0) == 0) {
            domain = parse_alphabet(line.substr(9));
        } else if (line.rfind("codomain:", 0) == 0) {
            codomain = parse_alphabet(line.substr(9));
        } else {
            auto arrow = line.find("->");
            if (arrow == std::string::npos)
                throw ParseError("block map line without '->': " + line);
            raw.emplace_back(line.substr(0, arrow), line.substr(arrow + 2));
        }
    }
    if (!range) throw ParseError("block map file missing 'range:' header");
    if (!domain) throw ParseError("block map file missing 'alphabet:' header");
    if (!codomain) codomain = *domain;
    std::vector<std::pair<Word, Symbol>> entries;
    for (auto& [lhs, rhs] : raw) {
        Word w = parse_word(*domain, lhs);
        Word v = parse_word(*codomain, rhs);
        if (v.size() != 1) throw ParseError("block map value must be one symbol: " + rhs);
        entries.emplace_back(std::move(w), v[0]);
    }
    return BlockMap(*range, std::move(*domain), std::move(*codomain), std::move(entries));
}

std::string serialize_block_map(const BlockMap& m) {
    std::ostringstream out;
    out << "range: " << m.range() << "\n";
    auto names = [](const Alphabet& a) {
        std::string s;
        for (size_t i = 0; i < a.size(); ++i) {
            if (i && !a.single_char()) s += ' ';
            s += a.name(static_cast<Symbol>(i));
        }
        return s;
    };
    out << "alphabet: " << names(m.domain()) << "\n";
    if (m.codomain() != m.domain()) out << "codomain: " << names(m.codomain()) << "\n";
    for (const auto& [w, s] : m.table())
        out << format_word(m.domain(), w) << " -> " << m.codomain().name(s) << "\n";
    return out.str();
}

}  // namespace shiftkit
