#include "shiftkit/sft.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace shiftkit {

size_t edge_count(const AdjList& adj) {
    size_t n = 0;
    for (const auto& row : adj) n += row.size();
    return n;
}

// Iterative Tarjan.
std::pair<std::vector<int>, int> strongly_connected_components(const AdjList& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> comp(n, -1), low(n, 0), num(n, -1), stack;
    std::vector<std::pair<int, size_t>> call;
    std::vector<bool> on_stack(n, false);
    int counter = 0, comps = 0;
    for (int root = 0; root < n; ++root) {
        if (num[root] != -1) continue;
        call.emplace_back(root, 0);
        while (!call.empty()) {
            auto& [v, ei] = call.back();
            if (ei == 0) {
                num[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            bool descended = false;
            while (ei < adj[v].size()) {
                int w = static_cast<int>(adj[v][ei]);
                ++ei;
                if (num[w] == -1) {
                    call.emplace_back(w, 0);
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], num[w]);
            }
            if (descended) continue;
            if (low[v] == num[v]) {
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = comps;
                    if (w == v) break;
                }
                ++comps;
            }
            int done = v;
            call.pop_back();
            if (!call.empty()) {
                int parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return {comp, comps};
}

bool is_strongly_connected(const AdjList& adj) {
    if (adj.empty()) return false;
    return strongly_connected_components(adj).second == 1;
}

namespace {

// Row bitsets for boolean matrix products.
struct BitMatrix {
    size_t n = 0, words = 0;
    std::vector<uint64_t> bits;

    explicit BitMatrix(size_t n_) : n(n_), words((n_ + 63) / 64), bits(n_ * words, 0) {}
    void set(size_t i, size_t j) { bits[i * words + j / 64] |= uint64_t(1) << (j % 64); }
    bool all_ones() const {
        for (size_t i = 0; i < n; ++i) {
            for (size_t w = 0; w < words; ++w) {
                uint64_t expect = ~uint64_t(0);
                if (w == words - 1 && n % 64 != 0) expect = (uint64_t(1) << (n % 64)) - 1;
                if ((bits[i * words + w] & expect) != expect) return false;
            }
        }
        return true;
    }
};

BitMatrix bool_multiply(const BitMatrix& a, const AdjList& adj) {
    BitMatrix out(a.n);
    for (size_t i = 0; i < a.n; ++i) {
        for (size_t w = 0; w < a.words; ++w) {
            uint64_t chunk = a.bits[i * a.words + w];
            while (chunk) {
                size_t j = w * 64 + static_cast<size_t>(__builtin_ctzll(chunk));
                chunk &= chunk - 1;
                for (uint32_t k : adj[j])
                    out.bits[i * out.words + k / 64] |= uint64_t(1) << (k % 64);
            }
        }
    }
    return out;
}

}  // namespace

PrimitivityResult primitivity_exponent(const AdjList& adj) {
    const size_t s = adj.size();
    if (s == 0) throw Error("primitivity_exponent: empty graph");
    const int cap = static_cast<int>((s - 1) * (s - 1) + 1);
    BitMatrix power(s);
    for (size_t i = 0; i < s; ++i)
        for (uint32_t j : adj[i]) power.set(i, j);
    for (int m = 1; m <= cap; ++m) {
        if (power.all_ones()) return {true, m, cap};
        if (m < cap) power = bool_multiply(power, adj);
    }
    return {false, 0, cap};
}

std::optional<uint32_t> VertexShift::state_index(const Word& w) const {
    auto it = std::lower_bound(states.begin(), states.end(), w);
    if (it == states.end() || !(*it == w)) return std::nullopt;
    return static_cast<uint32_t>(it - states.begin());
}

VertexShift recode(const SftSpec& spec, int order, const RecodeOptions& opts) {
    if (order == 0) order = spec.default_order();
    if (order < 1) throw Error("recode: order must be >= 1");
    if (spec.forbidden.max_len() > static_cast<size_t>(order) + 1)
        throw Error("recode: order too small for forbidden words of length " +
                    std::to_string(spec.forbidden.max_len()));
    const Alphabet& a = spec.alphabet();

    // Admissible `order`-blocks, grown letter by letter.  Forbidden
    // occurrences in a grown word always end at the last letter, so only
    // suffixes need checking.
    std::vector<Word> level;
    for (Symbol s = 0; s < a.size(); ++s) {
        Word w(std::vector<Symbol>{s});
        if (avoids(w, spec.forbidden)) level.push_back(w);
    }
    auto suffix_ok = [&](const Word& w) {
        for (const auto& f : spec.forbidden.words()) {
            if (f.size() > w.size()) continue;
            bool hit = true;
            for (size_t j = 0; j < f.size(); ++j) {
                if (w[w.size() - f.size() + j] != f[j]) {
                    hit = false;
                    break;
                }
            }
            if (hit) return false;
        }
        return true;
    };
    for (int len = 1; len < order; ++len) {
        std::vector<Word> next;
        for (const auto& w : level) {
            for (Symbol s = 0; s < a.size(); ++s) {
                Word ws = w.appended(s);
                if (suffix_ok(ws)) next.push_back(std::move(ws));
            }
        }
        if (next.size() > opts.state_cap)
            throw CapExceeded("recode: state cap exceeded at block length " + std::to_string(len + 1));
        level = std::move(next);
    }

    VertexShift v;
    v.alphabet = a;
    v.order = order;
    v.states = std::move(level);
    std::sort(v.states.begin(), v.states.end());

    // Edges via glued (order+1)-blocks.
    v.succ.assign(v.states.size(), {});
    for (size_t i = 0; i < v.states.size(); ++i) {
        for (Symbol s = 0; s < a.size(); ++s) {
            Word glued = v.states[i].appended(s);
            if (!suffix_ok(glued)) continue;
            Word target = glued.drop_first();
            if (auto j = v.state_index(target)) v.succ[i].push_back(*j);
        }
    }

    // Prune states that cannot extend bi-infinitely.
    std::vector<bool> alive(v.states.size(), true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<size_t> indeg(v.states.size(), 0);
        for (size_t i = 0; i < v.states.size(); ++i) {
            if (!alive[i]) continue;
            for (uint32_t j : v.succ[i])
                if (alive[j]) ++indeg[j];
        }
        for (size_t i = 0; i < v.states.size(); ++i) {
            if (!alive[i]) continue;
            size_t outdeg = 0;
            for (uint32_t j : v.succ[i])
                if (alive[j]) ++outdeg;
            if (outdeg == 0 || indeg[i] == 0) {
                alive[i] = false;
                changed = true;
            }
        }
    }
    std::vector<uint32_t> remap(v.states.size(), UINT32_MAX);
    std::vector<Word> kept_states;
    for (size_t i = 0; i < v.states.size(); ++i) {
        if (alive[i]) {
            remap[i] = static_cast<uint32_t>(kept_states.size());
            kept_states.push_back(v.states[i]);
        }
    }
    AdjList kept_succ(kept_states.size());
    for (size_t i = 0; i < v.states.size(); ++i) {
        if (!alive[i]) continue;
        for (uint32_t j : v.succ[i])
            if (alive[j]) kept_succ[remap[i]].push_back(remap[j]);
    }
    v.states = std::move(kept_states);
    v.succ = std::move(kept_succ);
    return v;
}

BigInt periodic_count(const VertexShift& v, int p) {
    if (p < 1) throw Error("periodic_count: p must be >= 1");
    const size_t s = v.size();
    BigInt trace = 0;
    std::vector<BigInt> cur(s), next(s);
    for (size_t start = 0; start < s; ++start) {
        std::fill(cur.begin(), cur.end(), 0);
        cur[start] = 1;
        for (int t = 0; t < p; ++t) {
            std::fill(next.begin(), next.end(), 0);
            for (size_t i = 0; i < s; ++i) {
                if (cur[i] == 0) continue;
                for (uint32_t j : v.succ[i]) next[j] += cur[i];
            }
            std::swap(cur, next);
        }
        trace += cur[start];
    }
    return trace;
}

size_t minimal_period(const Word& w) {
    const size_t n = w.size();
    for (size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (size_t i = d; i < n && ok; ++i)
            if (w[i] != w[i - d]) ok = false;
        if (ok) return d;
    }
    return n;
}

PeriodicOrbit::PeriodicOrbit(const Word& any_rotation) {
    if (any_rotation.empty()) throw Error("PeriodicOrbit: empty word");
    size_t d = minimal_period(any_rotation);
    Word root = any_rotation.subword(0, d);
    // The primitive root of a rotation of w is a rotation of the primitive
    // root of w, so reducing first is safe.
    Word best = root;
    for (size_t r = 1; r < d; ++r) {
        Word rot = root.rotated(r);
        if (rot < best) best = rot;
    }
    period_word = std::move(best);
}

namespace {

void mobius_check(const VertexShift& v, int p,
                  const std::map<int, size_t>& orbit_counts) {
    // p * |orbits of minimal period p| == sum over d|p of mu(d) tr(Q^{p/d}).
    auto mobius = [](int n) {
        int result = 1;
        for (int q = 2; q * q <= n; ++q) {
            if (n % q == 0) {
                n /= q;
                if (n % q == 0) return 0;
                result = -result;
            }
        }
        if (n > 1) result = -result;
        return result;
    };
    BigInt rhs = 0;
    for (int d = 1; d <= p; ++d) {
        if (p % d != 0) continue;
        int mu = mobius(d);
        if (mu == 0) continue;
        rhs += BigInt(mu) * periodic_count(v, p / d);
    }
    auto it = orbit_counts.find(p);
    BigInt lhs = BigInt(p) * BigInt(static_cast<unsigned long>(it == orbit_counts.end() ? 0 : it->second));
    if (lhs != rhs)
        throw InternalCheckFailed("enumerate_min_periodic: Mobius count mismatch at p=" +
                                  std::to_string(p));
}

}  // namespace

std::vector<PeriodicOrbit> enumerate_min_periodic(const VertexShift& v, int p,
                                                  const EnumOptions& opts) {
    if (p < 1) throw Error("enumerate_min_periodic: p must be >= 1");
    const size_t s = v.size();
    std::set<Word> fixed_words;  // period words of all fixed points of sigma^p
    uint64_t steps = 0;

    std::vector<std::vector<uint32_t>> pred(s);
    for (size_t i = 0; i < s; ++i)
        for (uint32_t j : v.succ[i]) pred[j].push_back(static_cast<uint32_t>(i));

    for (uint32_t start = 0; start < s; ++start) {
        // reach[t][i]: state i reaches `start` in exactly t steps.
        std::vector<std::vector<bool>> reach(p + 1, std::vector<bool>(s, false));
        reach[0][start] = true;
        for (int t = 1; t <= p; ++t)
            for (size_t i = 0; i < s; ++i)
                if (reach[t - 1][i])
                    for (uint32_t q : pred[i]) reach[t][q] = true;
        if (!reach[p][start]) continue;

        // DFS over closed paths start -> start of length p, pruned by
        // reachability so every branch completes.
        std::vector<Symbol> label(p);
        struct Frame {
            uint32_t state;
            size_t edge;
        };
        std::vector<Frame> path;
        path.push_back({start, 0});
        while (!path.empty()) {
            auto& f = path.back();
            int depth = static_cast<int>(path.size()) - 1;
            if (depth == p) {
                if (f.state == start) fixed_words.insert(Word(label));
                path.pop_back();
                continue;
            }
            bool advanced = false;
            while (f.edge < v.succ[f.state].size()) {
                uint32_t nxt = v.succ[f.state][f.edge];
                ++f.edge;
                if (++steps > opts.step_cap)
                    throw CapExceeded("enumerate_min_periodic: step cap exceeded");
                if (!reach[p - depth - 1][nxt]) continue;
                label[depth] = v.states[f.state].letters[0];
                path.push_back({nxt, 0});
                advanced = true;
                break;
            }
            if (!advanced) path.pop_back();
        }
    }

    // Group the sigma^p-fixed points into orbits by canonical primitive word.
    std::map<int, std::set<Word>> orbits_by_period;
    for (const auto& w : fixed_words) {
        PeriodicOrbit orbit(w);
        orbits_by_period[orbit.period()].insert(orbit.period_word);
    }

    // Fixed-point count must equal the matrix trace.
    if (BigInt(static_cast<unsigned long>(fixed_words.size())) != periodic_count(v, p))
        throw InternalCheckFailed("enumerate_min_periodic: path count != trace at p=" +
                                  std::to_string(p));
    std::map<int, size_t> counts_by_period;
    for (const auto& [d, ws] : orbits_by_period) counts_by_period[d] = ws.size();
    mobius_check(v, p, counts_by_period);

    std::vector<PeriodicOrbit> result;
    for (const auto& w : orbits_by_period[p]) result.push_back(PeriodicOrbit(w));
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<PeriodicOrbit> periodic_orbits_direct(const SftSpec& spec, int p,
                                                  uint64_t word_cap) {
    if (p < 1) throw Error("periodic_orbits_direct: p must be >= 1");
    const size_t a = spec.alphabet().size();
    double total = 1;
    for (int i = 0; i < p; ++i) total *= static_cast<double>(a);
    if (total > static_cast<double>(word_cap))
        throw CapExceeded("periodic_orbits_direct: word cap exceeded");

    std::set<Word> orbits;
    std::vector<Symbol> letters(p, 0);
    while (true) {
        Word w{letters};
        if (minimal_period(w) == static_cast<size_t>(p)) {
            bool ok = true;
            for (const auto& f : spec.forbidden.words()) {
                if (cyclic_occurrences(f, w) > 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) orbits.insert(PeriodicOrbit(w).period_word);
        }
        int i = p - 1;
        while (i >= 0 && letters[i] == a - 1) letters[i--] = 0;
        if (i < 0) break;
        ++letters[i];
    }
    std::vector<PeriodicOrbit> result;
    for (const auto& w : orbits) result.push_back(PeriodicOrbit(w));
    return result;
}

std::vector<Word> language_slice(const VertexShift& v, int n, size_t cap) {
    if (n < 1) throw Error("language_slice: n must be >= 1");
    std::vector<Word> out;
    if (v.states.empty()) return out;
    const int order = v.order;
    if (n <= order) {
        std::set<Word> prefixes;
        for (const auto& s : v.states) prefixes.insert(s.subword(0, n));
        out.assign(prefixes.begin(), prefixes.end());
        return out;
    }
    // Words of length n correspond bijectively to paths of n - order edges.
    struct Frame {
        uint32_t state;
        size_t edge;
    };
    const int extra = n - order;
    for (uint32_t start = 0; start < v.size(); ++start) {
        std::vector<Frame> path{{start, 0}};
        std::vector<Symbol> tail;
        while (!path.empty()) {
            auto& f = path.back();
            if (static_cast<int>(path.size()) - 1 == extra) {
                Word w = v.states[start];
                w.letters.insert(w.letters.end(), tail.begin(), tail.end());
                out.push_back(std::move(w));
                if (out.size() > cap) throw CapExceeded("language_slice: result cap exceeded");
                path.pop_back();
                if (!tail.empty()) tail.pop_back();
                continue;
            }
            if (f.edge < v.succ[f.state].size()) {
                uint32_t nxt = v.succ[f.state][f.edge];
                ++f.edge;
                tail.push_back(v.states[nxt].letters.back());
                path.push_back({nxt, 0});
            } else {
                path.pop_back();
                if (!tail.empty()) tail.pop_back();
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Word> language_slice(const SftSpec& spec, int n, size_t cap) {
    return language_slice(recode(spec), n, cap);
}

bool is_transitive(const VertexShift& v) {
    return !v.states.empty() && is_strongly_connected(v.succ);
}

PrimitivityResult is_primitive(const VertexShift& v) {
    if (v.states.empty()) throw Error("is_primitive: empty shift");
    return primitivity_exponent(v.succ);
}

std::string serialize_vertex_shift(const VertexShift& v) {
    std::string out = "vertex-shift\n";
    out += "alphabet: ";
    const bool sep = !v.alphabet.single_char();
    const auto& names = v.alphabet.names();
    for (size_t i = 0; i < names.size(); ++i) {
        if (sep && i > 0) out += ' ';
        out += names[i];
    }
    out += "\norder: " + std::to_string(v.order);
    out += "\nstates: " + std::to_string(v.size()) + "\n";
    for (size_t i = 0; i < v.size(); ++i)
        out += std::to_string(i) + ": " + format_word(v.alphabet, v.states[i]) + "\n";
    out += "edges:\n";
    for (size_t i = 0; i < v.size(); ++i) {
        out += std::to_string(i) + ":";
        for (size_t e = 0; e < v.succ[i].size(); ++e)
            out += (e == 0 ? " " : ",") + std::to_string(v.succ[i][e]);
        out += "\n";
    }
    return out;
}

std::string vertex_shift_json(const VertexShift& v) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["type"] = "vertex-shift";
    j["alphabet"] = v.alphabet.names();
    j["order"] = v.order;
    auto states = nlohmann::ordered_json::array();
    for (const auto& s : v.states) states.push_back(format_word(v.alphabet, s));
    j["states"] = states;
    j["edges"] = v.succ;
    return j.dump(2) + "\n";
}

}  // namespace shiftkit
