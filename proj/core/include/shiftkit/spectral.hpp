#pragma once

#include "shiftkit/sft.hpp"

#include <vector>

namespace shiftkit {

struct PerronOptions {
    double tol = 1e-12;        // residual tolerance on ||Qv - lambda v||_inf
    int max_iter = 1'000'000;
};

// Perron root and eigenvectors of a 0/1 adjacency matrix.
// Normalization: sum(right) = 1 and left . right = 1.
struct PerronData {
    double lambda = 0;
    double entropy_nats = 0;  // ln(lambda)
    double residual = 0;
    int iterations = 0;
    std::vector<double> left, right;
};

// Power iteration on Q + I; requires a strongly connected nonempty graph.
PerronData perron(const AdjList& adj, const PerronOptions& opts = {});
PerronData perron(const VertexShift& v, const PerronOptions& opts = {});

// Max over strongly connected components of the per-component Perron
// entropy.  Components without an internal edge carry no points and are
// skipped; a graph with no cycle at all presents an empty shift (error).
double scc_entropy(const VertexShift& v, const PerronOptions& opts = {});

// Measure of maximal entropy on an irreducible vertex shift.
struct ParryMeasure {
    VertexShift base;
    PerronData data;
};
ParryMeasure parry_measure(const VertexShift& v, const PerronOptions& opts = {});

// mu([w]) for a word over the base's original alphabet.  Words shorter than
// the block order sum the state weights of matching prefixes; inadmissible
// words get 0.
double parry_cylinder(const ParryMeasure& m, const Word& w);

// Stationary Markov chain on the edges of a vertex shift.
// prob rows are aligned with base.succ and sum to 1.
struct MarkovMeasure {
    VertexShift base;
    std::vector<std::vector<double>> prob;
    std::vector<double> stationary;

    double transition(uint32_t i, uint32_t j) const;
};
// Validates support and stochasticity, then solves for the stationary vector.
MarkovMeasure markov_measure(const VertexShift& v, std::vector<std::vector<double>> prob);
// The chain realizing the Parry measure: P_ij = Q_ij v_j / (lambda v_i).
MarkovMeasure parry_chain(const ParryMeasure& m);

double markov_entropy(const MarkovMeasure& m);
double markov_cylinder(const MarkovMeasure& m, const Word& w);

// Iterates of the normalized transfer operator on first-coordinate
// functions: L0 f = (1/lambda) (1/h) Q^T (h f), with h the left eigenvector
// scaled so that sum_i h_i v_i = 1 (then L0 1 = 1 and mu([i]) = h_i v_i).
struct TransferTrace {
    std::vector<double> sup_norms;  // ||L0^t f||_inf for t = 0..n
    std::vector<double> final_values;
};
TransferTrace normalized_transfer_iterate(const VertexShift& v, const PerronData& data,
                                          std::vector<double> start, int n_steps);

}  // namespace shiftkit
