#pragma once

#include "shiftkit/exactint.hpp"
#include "shiftkit/words.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace shiftkit {

// A subshift of finite type given by its minimal forbidden words.
struct SftSpec {
    ForbiddenSet forbidden;

    SftSpec() = default;
    explicit SftSpec(ForbiddenSet f) : forbidden(std::move(f)) {}
    SftSpec(Alphabet a, std::vector<Word> words)
        : forbidden(std::move(a), std::move(words)) {}

    const Alphabet& alphabet() const { return forbidden.alphabet(); }
    // Recoding order that captures every forbidden word: max(1, maxlen - 1).
    int default_order() const {
        return static_cast<int>(forbidden.max_len() > 2 ? forbidden.max_len() - 1 : 1);
    }
    bool operator==(const SftSpec&) const = default;
};

using AdjList = std::vector<std::vector<uint32_t>>;

size_t edge_count(const AdjList& adj);
// Component id per vertex, ids in reverse topological order; .second = count.
std::pair<std::vector<int>, int> strongly_connected_components(const AdjList& adj);
bool is_strongly_connected(const AdjList& adj);

struct PrimitivityResult {
    bool primitive = false;
    int exponent = 0;  // least M with Q^M > 0 when primitive
    int cap = 0;       // Wielandt cap (s-1)^2 + 1 used for the search
};
// Least positive power of the 0/1 adjacency matrix; search stops at the
// Wielandt cap and reports non-primitive beyond it.
PrimitivityResult primitivity_exponent(const AdjList& adj);

// Vertex shift on admissible `order`-blocks: state a has an edge to state b
// when a and b overlap in order-1 letters and the glued block is admissible.
// States that do not extend bi-infinitely are pruned.  State list is sorted.
struct VertexShift {
    Alphabet alphabet;
    int order = 1;
    std::vector<Word> states;
    AdjList succ;

    size_t size() const { return states.size(); }
    size_t edges() const { return edge_count(succ); }
    std::optional<uint32_t> state_index(const Word& w) const;
};

struct RecodeOptions {
    size_t state_cap = 1'000'000;
};
// order = 0 picks the spec's default order.
VertexShift recode(const SftSpec& spec, int order = 0, const RecodeOptions& opts = {});

// Number of points with sigma^p x = x: trace of the p-th power of the
// adjacency matrix, computed exactly.
BigInt periodic_count(const VertexShift& v, int p);

// An orbit of minimal period |period_word|, named by the lexicographically
// least rotation of its primitive period word (over the spec alphabet).
struct PeriodicOrbit {
    Word period_word;

    PeriodicOrbit() = default;
    explicit PeriodicOrbit(const Word& any_rotation);  // canonicalizes
    int period() const { return static_cast<int>(period_word.size()); }
    auto operator<=>(const PeriodicOrbit&) const = default;
};

// Smallest d dividing |w| with w = (prefix of length d) repeated.
size_t minimal_period(const Word& w);

struct EnumOptions {
    uint64_t step_cap = 200'000'000;
};
// Orbits of minimal period exactly p, sorted.  Cross-checked against
// periodic_count via Mobius inversion.
std::vector<PeriodicOrbit> enumerate_min_periodic(const VertexShift& v, int p,
                                                  const EnumOptions& opts = {});

// Same orbit set computed by brute force over cyclic words, straight from the
// forbidden set (no graph).  Kept independent of enumerate_min_periodic.
std::vector<PeriodicOrbit> periodic_orbits_direct(const SftSpec& spec, int p,
                                                  uint64_t word_cap = 1u << 22);

// All admissible words of length n, sorted lexicographically.
std::vector<Word> language_slice(const VertexShift& v, int n, size_t cap = 10'000'000);
std::vector<Word> language_slice(const SftSpec& spec, int n, size_t cap = 10'000'000);

bool is_transitive(const VertexShift& v);
PrimitivityResult is_primitive(const VertexShift& v);

// Adjacency-list text export with a state-label header, and a JSON variant
// carrying identical content.
std::string serialize_vertex_shift(const VertexShift& v);
std::string vertex_shift_json(const VertexShift& v);

}  // namespace shiftkit
