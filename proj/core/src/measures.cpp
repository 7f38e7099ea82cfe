#include "shiftkit/measures.hpp"

#include "shiftkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace shiftkit {

AtomicPeriodicMeasure atomic_measure(std::vector<PeriodicOrbit> orbits) {
    if (orbits.empty()) throw Error("atomic_measure: empty orbit set");
    std::sort(orbits.begin(), orbits.end());
    orbits.erase(std::unique(orbits.begin(), orbits.end()), orbits.end());
    int p = orbits.front().period();
    for (const auto& o : orbits)
        if (o.period() != p) throw Error("atomic_measure: mixed minimal periods");
    AtomicPeriodicMeasure mu;
    mu.period = p;
    mu.total_points = static_cast<long long>(p) * static_cast<long long>(orbits.size());
    mu.orbits = std::move(orbits);
    return mu;
}

Rational atomic_cylinder(const AtomicPeriodicMeasure& mu, const Word& w) {
    long long hits = 0;
    for (const auto& o : mu.orbits)
        hits += static_cast<long long>(cyclic_occurrences(w, o.period_word));
    Rational r(static_cast<long>(hits), static_cast<long>(mu.total_points));
    r.canonicalize();
    return r;
}

namespace {

// Image of the period word under cyclic application, length preserved.
Word cyclic_image(const BlockMap& m, const Word& x) {
    size_t p = x.size();
    int R = m.range();
    std::vector<Symbol> out(p);
    for (size_t j = 0; j < p; ++j) {
        std::vector<Symbol> win(m.window_len());
        for (size_t t = 0; t < m.window_len(); ++t)
            win[t] = x[(j + t + p * (static_cast<size_t>(R) / p + 1) - R) % p];
        auto v = m.lookup(Word(std::move(win)));
        if (!v)
            throw Error("block map table missing a cyclic window of " +
                        format_word(m.domain(), x));
        out[j] = *v;
    }
    return Word(std::move(out));
}

// Every word over `a` of length 1..max_len, shortlex; cap on the total.
std::vector<Word> words_up_to(const Alphabet& a, int max_len, size_t cap) {
    std::vector<Word> out, level{Word{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const auto& w : level)
            for (Symbol s = 0; s < a.size(); ++s) next.push_back(w.appended(s));
        if (out.size() + next.size() > cap)
            throw CapExceeded("word enumeration cap exceeded at length " +
                              std::to_string(len));
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

}  // namespace

Pushforward pushforward(const BlockMap& m, const AtomicPeriodicMeasure& mu,
                        size_t word_cap) {
    Pushforward pf;
    pf.period = mu.period;
    pf.total_points = mu.total_points;
    for (const auto& o : mu.orbits) {
        Word y = cyclic_image(m, o.period_word);
        pf.image_orbits.push_back(PeriodicOrbit(y));
        pf.image_words.push_back(std::move(y));
    }
    std::vector<PeriodicOrbit> image_sorted = pf.image_orbits;
    std::sort(image_sorted.begin(), image_sorted.end());
    pf.permutation = image_sorted == mu.orbits;
    std::sort(pf.image_orbits.begin(), pf.image_orbits.end());
    pf.image_orbits.erase(std::unique(pf.image_orbits.begin(), pf.image_orbits.end()),
                          pf.image_orbits.end());

    // Invariance is only meaningful for a self-map of the alphabet.
    pf.invariant = m.domain() == m.codomain();
    if (pf.invariant) {
        for (const auto& w : words_up_to(m.domain(), 2 * mu.period, word_cap)) {
            if (atomic_cylinder(mu, w) != pushforward_cylinder(pf, w)) {
                pf.invariant = false;
                break;
            }
        }
    }
    return pf;
}

Rational pushforward_cylinder(const Pushforward& pf, const Word& w) {
    long long hits = 0;
    for (const auto& y : pf.image_words)
        hits += static_cast<long long>(cyclic_occurrences(w, y));
    Rational r(static_cast<long>(hits), static_cast<long>(pf.total_points));
    r.canonicalize();
    return r;
}

StageTable mme_stage_table(const SubshiftOracle& o, const std::vector<int>& stages,
                           const std::vector<Word>& words, const ScanOptions& opts) {
    StageTable t;
    t.words = words;
    t.stages = stages;
    for (int n : stages) {
        std::string reason;
        std::vector<double> vals;
        try {
            CoverStage stage = cover_stage(o, n, opts);
            VertexShift v = recode(stage.spec);
            if (v.states.empty()) {
                reason = "empty stage";
            } else if (!is_primitive(v).primitive) {
                reason = "stage not mixing";
            } else {
                ParryMeasure pm = parry_measure(v);
                for (const auto& w : words) vals.push_back(parry_cylinder(pm, w));
            }
        } catch (const Error& e) {
            reason = e.what();
            vals.clear();
        }
        t.skipped.push_back(!reason.empty());
        t.skip_reasons.push_back(std::move(reason));
        t.values.push_back(std::move(vals));
    }
    // Gap diagnostic between consecutive usable stages.
    int prev = -1;
    for (size_t i = 0; i < t.stages.size(); ++i) {
        if (t.skipped[i]) continue;
        if (prev >= 0) {
            double bound = 2.0 / std::min(t.stages[prev], t.stages[i]);
            for (size_t k = 0; k < words.size(); ++k) {
                double gap = std::fabs(t.values[i][k] - t.values[prev][k]);
                if (gap > bound)
                    t.flags.push_back({t.stages[prev], t.stages[i], words[k], gap, bound});
            }
        }
        prev = static_cast<int>(i);
    }
    return t;
}

namespace {

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

}  // namespace

std::string stage_table_csv(const StageTable& t, const Alphabet& a) {
    std::ostringstream out;
    out << "stage,word,probability,delta_prev\n";
    std::vector<int> prev_usable(t.stages.size(), -1);
    int prev = -1;
    for (size_t i = 0; i < t.stages.size(); ++i) {
        if (t.skipped[i]) continue;
        prev_usable[i] = prev;
        prev = static_cast<int>(i);
    }
    for (size_t i = 0; i < t.stages.size(); ++i) {
        if (t.skipped[i]) {
            out << t.stages[i] << ",,skipped: " << t.skip_reasons[i] << ",\n";
            continue;
        }
        for (size_t k = 0; k < t.words.size(); ++k) {
            out << t.stages[i] << ',' << format_word(a, t.words[k]) << ','
                << fmt(t.values[i][k]) << ',';
            if (prev_usable[i] >= 0)
                out << fmt(t.values[i][k] - t.values[prev_usable[i]][k]);
            out << '\n';
        }
    }
    return out.str();
}

CylinderTable parry_table(const ParryMeasure& m, int ell, size_t word_cap) {
    CylinderTable t;
    for (const auto& w : words_up_to(m.base.alphabet, ell, word_cap))
        t.rows.emplace_back(w, parry_cylinder(m, w));
    return t;
}

CylinderTable markov_table(const MarkovMeasure& m, int ell, size_t word_cap) {
    CylinderTable t;
    for (const auto& w : words_up_to(m.base.alphabet, ell, word_cap))
        t.rows.emplace_back(w, markov_cylinder(m, w));
    return t;
}

std::string cylinder_table_csv(const CylinderTable& t, const Alphabet& a) {
    std::ostringstream out;
    out << "stage,word,probability,delta_prev\n";
    for (const auto& [w, p] : t.rows)
        out << ',' << format_word(a, w) << ',' << fmt(p) << ",\n";
    return out.str();
}

EffectiveIeReport effective_ie_check(const VertexShift& v, const MarkovMeasure& mu_prime,
                                     int ell, const PerronOptions& opts) {
    if (ell < 1) throw Error("effective_ie_check: ell must be >= 1");
    if (mu_prime.base.states != v.states || mu_prime.base.succ != v.succ)
        throw Error("effective_ie_check: measure lives on a different graph");
    if (!is_primitive(v).primitive) throw Error("effective_ie_check: graph not mixing");

    EffectiveIeReport r;
    r.ell = ell;
    size_t edges = v.edges();
    bool full = edges == v.size() * v.size();
    r.s_is_edges = !full;
    r.s = full ? static_cast<long long>(v.size()) : static_cast<long long>(edges);
    if (r.s < 2) throw Error("effective_ie_check: fewer than 2 admissible words");

    ParryMeasure pm = parry_measure(v, opts);
    r.entropy_top = pm.data.entropy_nats;
    r.entropy_markov = markov_entropy(mu_prime);
    r.entropy_gap = r.entropy_top - r.entropy_markov;

    for (const auto& w : words_up_to(v.alphabet, ell, 1'000'000)) {
        double gap = std::fabs(markov_cylinder(mu_prime, w) - parry_cylinder(pm, w));
        if (gap > r.cylinder_gap) {
            r.cylinder_gap = gap;
            r.worst_word = w;
        }
    }

    // threshold(eps) in log form is 2 ln eps + ln C.
    r.log_constant = -2.0 * ell * std::log(4.0 / 3.0) - 2.0 * xi_log(static_cast<int>(r.s));
    constexpr double kZero = 1e-12;
    if (r.cylinder_gap < kZero) {
        r.verdict = true;
    } else if (r.entropy_gap <= 0) {
        r.verdict = false;
    } else {
        r.verdict =
            std::log(r.entropy_gap) >= 2.0 * std::log(r.cylinder_gap) + r.log_constant;
    }
    return r;
}

}  // namespace shiftkit
