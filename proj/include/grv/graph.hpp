#pragma once

#include "grv/types.hpp"

#include <stdexcept>

namespace grv {

/// Undirected, unweighted graph with dense real node attributes.
/// The adjacency is 0/1, symmetric and has a zero diagonal; self-loops
/// appear only inside normalize_adjacency.
struct Graph {
    Matrix adjacency;   // n x n, entries in {0,1}
    Matrix attributes;  // n x c

    Index num_nodes() const { return adjacency.rows(); }
    Index attribute_dim() const { return attributes.cols(); }

    /// Number of undirected edges (upper-triangle count).
    Index num_edges() const;
};

/// Throws std::invalid_argument unless adjacency is square, symmetric,
/// zero-diagonal and 0/1.
void validate_adjacency(const Matrix& adjacency);

/// Number of candidate flip slots for an n-node graph: n(n-1)/2.
inline Index num_slots(Index n) { return n * (n - 1) / 2; }

/// Maps an upper-triangle position (i < j) to its flat slot index.
Index slot_index(Index i, Index j, Index n);

/// Inverse of slot_index.
std::pair<Index, Index> slot_pair(Index k, Index n);

/// Convex relaxation of an edge-flip perturbation: a base adjacency plus a
/// [0,1]-valued vector over the n(n-1)/2 upper-triangle slots. Entry p_k = 1
/// means slot k is flipped (edge removed if present, added if absent).
struct RelaxedAdjacency {
    Matrix base;     // n x n 0/1 symmetric snapshot
    Vector perturb;  // length n(n-1)/2, entries in [0,1]

    Index num_nodes() const { return base.rows(); }

    /// Dense real-valued adjacency a + (1-2a) .* p, symmetric, zero diagonal.
    Matrix dense() const;
};

/// Symmetrically normalized propagation operator D^{-1/2} (A + I) D^{-1/2}.
/// Accepts any symmetric nonnegative adjacency (0/1 or relaxed real-valued).
Matrix normalize_adjacency(const Matrix& adjacency);

/// Applies a binary flip sample to the relaxation's base: a + (1-2a) .* s.
/// Throws std::invalid_argument if the sample spends more than `budget` flips.
Matrix materialize(const RelaxedAdjacency& relaxed, const Vector& sample, Index budget);

/// Number of upper-triangle positions where the two adjacencies differ.
Index flip_distance(const Matrix& a, const Matrix& a_prime);

} // namespace grv
