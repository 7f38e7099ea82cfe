#include "shiftkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace shiftkit {

namespace {

void matvec(const AdjList& adj, const std::vector<double>& x, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (size_t i = 0; i < adj.size(); ++i)
        for (uint32_t j : adj[i]) out[i] += x[j];
}

void matvec_t(const AdjList& adj, const std::vector<double>& x, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (size_t i = 0; i < adj.size(); ++i)
        for (uint32_t j : adj[i]) out[j] += x[i];
}

// Power iteration on Q + I for the dominant eigenpair; `transpose` picks the
// left eigenvector.  Returns the vector normalized to sum 1.
std::pair<std::vector<double>, int> dominant_vector(const AdjList& adj, bool transpose,
                                                    double tol, int max_iter,
                                                    double& residual_out, double& lambda_out) {
    const size_t n = adj.size();
    std::vector<double> v(n, 1.0 / static_cast<double>(n)), w(n);
    double lambda = 0;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        if (transpose)
            matvec_t(adj, v, w);
        else
            matvec(adj, v, w);
        for (size_t i = 0; i < n; ++i) w[i] += v[i];  // (Q + I) v
        double sum = std::accumulate(w.begin(), w.end(), 0.0);
        for (size_t i = 0; i < n; ++i) w[i] /= sum;
        lambda = sum - 1.0;  // ||(Q+I)v||_1 / ||v||_1 - 1 with positive v
        double resid = 0, vmax = 0;
        for (size_t i = 0; i < n; ++i) {
            double qv = sum * w[i] - v[i];  // (Q v)_i before normalization
            resid = std::max(resid, std::abs(qv - lambda * v[i]));
            vmax = std::max(vmax, std::abs(v[i]));
        }
        std::swap(v, w);
        if (resid <= tol * std::max(vmax, 1e-300)) break;
    }
    residual_out = 0;
    lambda_out = lambda;
    return {v, iter + 1};
}

}  // namespace

PerronData perron(const AdjList& adj, const PerronOptions& opts) {
    if (adj.empty()) throw Error("perron: empty graph");
    if (!is_strongly_connected(adj))
        throw Error("perron: graph is reducible; use scc_entropy for component-wise entropy");

    PerronData d;
    double lr = 0, ll = 0;
    auto [right, it_r] = dominant_vector(adj, false, opts.tol, opts.max_iter, d.residual, lr);
    auto [left, it_l] = dominant_vector(adj, true, opts.tol, opts.max_iter, d.residual, ll);
    d.iterations = std::max(it_r, it_l);

    // Two-sided Rayleigh quotient for the final eigenvalue.
    const size_t n = adj.size();
    std::vector<double> qv(n);
    matvec(adj, right, qv);
    double num = 0, den = 0;
    for (size_t i = 0; i < n; ++i) {
        num += left[i] * qv[i];
        den += left[i] * right[i];
    }
    d.lambda = num / den;
    d.entropy_nats = std::log(d.lambda);

    double resid = 0, vmax = 0;
    for (size_t i = 0; i < n; ++i) {
        resid = std::max(resid, std::abs(qv[i] - d.lambda * right[i]));
        vmax = std::max(vmax, right[i]);
    }
    std::vector<double> qu(n);
    matvec_t(adj, left, qu);
    double uresid = 0, umax = 0;
    for (size_t i = 0; i < n; ++i) {
        uresid = std::max(uresid, std::abs(qu[i] - d.lambda * left[i]));
        umax = std::max(umax, left[i]);
    }
    d.residual = std::max(resid / vmax, uresid / umax);

    // sum(right) = 1 (already), then scale left so left . right = 1.
    double dot = 0;
    for (size_t i = 0; i < n; ++i) dot += left[i] * right[i];
    for (size_t i = 0; i < n; ++i) left[i] /= dot;
    d.right = std::move(right);
    d.left = std::move(left);
    return d;
}

PerronData perron(const VertexShift& v, const PerronOptions& opts) {
    return perron(v.succ, opts);
}

double scc_entropy(const VertexShift& v, const PerronOptions& opts) {
    if (v.states.empty()) throw Error("scc_entropy: empty shift");
    auto [comp, count] = strongly_connected_components(v.succ);
    double best = -1;
    bool found_cycle = false;
    for (int c = 0; c < count; ++c) {
        std::vector<uint32_t> members;
        for (size_t i = 0; i < v.size(); ++i)
            if (comp[i] == c) members.push_back(static_cast<uint32_t>(i));
        std::vector<uint32_t> remap(v.size(), UINT32_MAX);
        for (size_t k = 0; k < members.size(); ++k) remap[members[k]] = static_cast<uint32_t>(k);
        AdjList sub(members.size());
        size_t internal_edges = 0;
        for (uint32_t i : members)
            for (uint32_t j : v.succ[i])
                if (comp[j] == c) {
                    sub[remap[i]].push_back(remap[j]);
                    ++internal_edges;
                }
        if (internal_edges == 0) continue;  // transient singleton
        found_cycle = true;
        best = std::max(best, perron(sub, opts).entropy_nats);
    }
    if (!found_cycle) throw Error("scc_entropy: graph has no cycle (empty shift)");
    return best;
}

ParryMeasure parry_measure(const VertexShift& v, const PerronOptions& opts) {
    return ParryMeasure{v, perron(v, opts)};
}

namespace {

// Resolve a word over the original alphabet into a state path; returns false
// when the word is inadmissible.
bool state_path(const VertexShift& v, const Word& w, std::vector<uint32_t>& path) {
    const int order = v.order;
    const size_t k = w.size() - static_cast<size_t>(order);
    path.clear();
    auto first = v.state_index(w.subword(0, order));
    if (!first) return false;
    path.push_back(*first);
    for (size_t t = 1; t <= k; ++t) {
        auto next = v.state_index(w.subword(t, order));
        if (!next) return false;
        const auto& row = v.succ[path.back()];
        if (!std::binary_search(row.begin(), row.end(), *next)) return false;
        path.push_back(*next);
    }
    return true;
}

}  // namespace

double parry_cylinder(const ParryMeasure& m, const Word& w) {
    for (Symbol s : w.letters)
        if (s >= m.base.alphabet.size()) throw Error("parry_cylinder: letter outside alphabet");
    if (w.empty()) return 1.0;
    const int order = m.base.order;
    if (w.size() < static_cast<size_t>(order)) {
        double total = 0;
        for (size_t i = 0; i < m.base.size(); ++i) {
            if (m.base.states[i].subword(0, w.size()) == w)
                total += m.data.left[i] * m.data.right[i];
        }
        return total;
    }
    std::vector<uint32_t> path;
    if (!state_path(m.base, w, path)) return 0.0;
    const size_t k = path.size() - 1;
    double value = m.data.left[path.front()] * m.data.right[path.back()];
    for (size_t t = 0; t < k; ++t) value /= m.data.lambda;
    return value;
}

double MarkovMeasure::transition(uint32_t i, uint32_t j) const {
    const auto& row = base.succ[i];
    auto it = std::lower_bound(row.begin(), row.end(), j);
    if (it == row.end() || *it != j) return 0.0;
    return prob[i][static_cast<size_t>(it - row.begin())];
}

MarkovMeasure markov_measure(const VertexShift& v, std::vector<std::vector<double>> prob) {
    if (v.states.empty()) throw Error("markov_measure: empty shift");
    if (prob.size() != v.size()) throw Error("markov_measure: row count mismatch");
    for (size_t i = 0; i < v.size(); ++i) {
        if (prob[i].size() != v.succ[i].size())
            throw Error("markov_measure: row " + std::to_string(i) + " misaligned with edges");
        double sum = 0;
        for (double p : prob[i]) {
            if (p < 0) throw Error("markov_measure: negative transition probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw Error("markov_measure: row " + std::to_string(i) + " does not sum to 1");
    }
    // Stationary vector via power iteration on the lazy chain (P + I)/2,
    // which is aperiodic whenever the chain has a stationary distribution.
    const size_t n = v.size();
    std::vector<double> pi(n, 1.0 / static_cast<double>(n)), next(n);
    for (int iter = 0; iter < 200000; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (size_t i = 0; i < n; ++i) {
            next[i] += 0.5 * pi[i];
            for (size_t e = 0; e < v.succ[i].size(); ++e)
                next[v.succ[i][e]] += 0.5 * pi[i] * prob[i][e];
        }
        double diff = 0;
        for (size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(next[i] - pi[i]));
        std::swap(pi, next);
        if (diff < 1e-15) break;
    }
    double sum = std::accumulate(pi.begin(), pi.end(), 0.0);
    for (double& x : pi) x /= sum;
    return MarkovMeasure{v, std::move(prob), std::move(pi)};
}

MarkovMeasure parry_chain(const ParryMeasure& m) {
    std::vector<std::vector<double>> prob(m.base.size());
    for (size_t i = 0; i < m.base.size(); ++i) {
        prob[i].reserve(m.base.succ[i].size());
        for (uint32_t j : m.base.succ[i])
            prob[i].push_back(m.data.right[j] / (m.data.lambda * m.data.right[i]));
    }
    return markov_measure(m.base, std::move(prob));
}

double markov_entropy(const MarkovMeasure& m) {
    double h = 0;
    for (size_t i = 0; i < m.base.size(); ++i) {
        double row = 0;
        for (double p : m.prob[i])
            if (p > 0) row += p * std::log(p);
        h -= m.stationary[i] * row;
    }
    return h;
}

double markov_cylinder(const MarkovMeasure& m, const Word& w) {
    for (Symbol s : w.letters)
        if (s >= m.base.alphabet.size()) throw Error("markov_cylinder: letter outside alphabet");
    if (w.empty()) return 1.0;
    const int order = m.base.order;
    if (w.size() < static_cast<size_t>(order)) {
        double total = 0;
        for (size_t i = 0; i < m.base.size(); ++i)
            if (m.base.states[i].subword(0, w.size()) == w) total += m.stationary[i];
        return total;
    }
    std::vector<uint32_t> path;
    if (!state_path(m.base, w, path)) return 0.0;
    double value = m.stationary[path.front()];
    for (size_t t = 0; t + 1 < path.size(); ++t) value *= m.transition(path[t], path[t + 1]);
    return value;
}

TransferTrace normalized_transfer_iterate(const VertexShift& v, const PerronData& data,
                                          std::vector<double> start, int n_steps) {
    if (start.size() != v.size()) throw Error("normalized_transfer_iterate: size mismatch");
    if (n_steps < 0) throw Error("normalized_transfer_iterate: negative step count");
    // With sum(right) = 1 and left . right = 1, the eigenfunction h with
    // nu(h) = 1 is exactly the left eigenvector.
    const auto& h = data.left;
    const size_t n = v.size();
    TransferTrace trace;
    auto sup = [](const std::vector<double>& x) {
        double m = 0;
        for (double t : x) m = std::max(m, std::abs(t));
        return m;
    };
    trace.sup_norms.push_back(sup(start));
    std::vector<double> cur = std::move(start), weighted(n), applied(n);
    for (int t = 0; t < n_steps; ++t) {
        for (size_t i = 0; i < n; ++i) weighted[i] = h[i] * cur[i];
        // (Q^T g)_j = sum over edges i -> j of g_i.
        std::fill(applied.begin(), applied.end(), 0.0);
        for (size_t i = 0; i < n; ++i)
            for (uint32_t j : v.succ[i]) applied[j] += weighted[i];
        for (size_t i = 0; i < n; ++i) cur[i] = applied[i] / (data.lambda * h[i]);
        trace.sup_norms.push_back(sup(cur));
    }
    trace.final_values = std::move(cur);
    return trace;
}

}  // namespace shiftkit
