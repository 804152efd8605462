#pragma once

#include "grv/encoder.hpp"
#include "grv/graph.hpp"
#include "grv/types.hpp"

#include <cstdint>
#include <vector>

namespace grv {

/// Noise-contrastive corruption: the attribute matrix with rows reordered by a
/// uniform random permutation, scored against the positive graph's summary.
struct NegativeSample {
    std::vector<Index> permutation;  // row i of the corrupted X is X[permutation[i]]

    Matrix apply(const Matrix& attributes) const;
};

NegativeSample negative_sample(Index n, std::uint64_t seed);

/// Forward intermediates cached for the backward pass. Single-use: the
/// gradients are only valid for the inputs the tape was built from.
struct Tape {
    Matrix adjacency;    // real-valued symmetric, zero diagonal (0/1 or relaxed)
    Matrix attributes;   // positive X
    std::vector<Index> permutation;
    Vector inv_sqrt_deg;        // (A + I) row sums ^ (-1/2)
    Matrix propagator;          // P = D^-1/2 (A+I) D^-1/2
    Matrix pos_pre, pos_z;      // P X Theta and its ReLU
    Matrix neg_pre, neg_z;
    Vector zg;                  // sigmoid of pos_z column mean
    Vector pos_scores, neg_scores;  // critic sigmoids, unclamped
    double value = 0.0;
};

/// Critic scores are clamped to this margin before the log.
inline constexpr double kScoreClamp = 1e-12;

/// l_enc = mean_i log D(z_i, zg) + mean_i log(1 - D(z~_i, zg)); always <= 0.
/// The adjacency may be relaxed (real entries in [0,1]); the summary zg always
/// comes from the positive pass. Throws std::runtime_error on non-finite
/// intermediates.
double mi_estimate(const Matrix& adjacency, const Matrix& attributes,
                   const EncoderParams& params, const NegativeSample& neg,
                   Tape* tape = nullptr);

double mi_estimate(const Graph& graph, const EncoderParams& params,
                   const NegativeSample& neg, Tape* tape = nullptr);

struct MiGradients {
    Matrix theta;
    Matrix phi;
    Matrix attributes;
    /// d l_enc / d A(u,v) with every matrix entry treated as independent;
    /// a symmetric slot (u,v)=(v,u) accumulates both entries.
    Matrix adjacency;
};

/// Exact analytic gradients of l_enc from a matching forward tape, including
/// the path through degree normalization.
MiGradients mi_gradients(const Tape& tape, const EncoderParams& params);

/// Chain rule through a' = a + (1-2a) .* p onto the upper-triangle slots.
Vector perturb_gradient(const RelaxedAdjacency& relaxed, const Matrix& adjacency_grad);

} // namespace grv
