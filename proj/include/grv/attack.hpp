#pragma once

#include "grv/encoder.hpp"
#include "grv/graph.hpp"
#include "grv/mi.hpp"
#include "grv/types.hpp"

#include <cstdint>

namespace grv {

/// Perturbation ball and PGD schedule. Defaults suit the training phase;
/// evaluation runs typically raise the iteration counts and the feature
/// step.
struct AttackBudget {
    Index delta = 0;             // max edge flips
    double epsilon = 0.0;        // L-inf attribute radius
    Index topo_steps = 10;
    Index feat_steps = 10;
    double topo_step_size = 20.0;
    double feat_step_size = 1e-5;
    Index num_samples = 20;      // Bernoulli recovery draws
    /// Replaces sampling recovery by enumeration of all <= delta flip sets;
    /// only sensible for a handful of candidate slots.
    bool exhaustive = false;
};

struct AttackResult {
    Graph perturbed;
    double objective = 0.0;      // achieved l_enc on the perturbed graph
    Index flips_used = 0;
    double feat_linf_used = 0.0;
};

/// Euclidean projection onto {q : 0 <= q <= 1, sum(q) <= delta}. When
/// clipping alone violates the sum constraint the shift lambda is found by
/// bisection to absolute tolerance 1e-10 (throws std::runtime_error if 200
/// iterations do not converge).
Vector project_budget_box(const Vector& p, double delta);

/// L-inf feature PGD descending l_enc; returns the best (lowest-objective)
/// iterate encountered, including the unperturbed start.
Matrix attack_features(const Graph& graph, const EncoderParams& params,
                       const NegativeSample& neg, double epsilon, Index steps,
                       double step_size);

struct TopologyAttackResult {
    Matrix adjacency;     // best feasible materialization
    Vector relaxed;       // final relaxed perturbation vector
    double objective = 0.0;
};

/// Graph PGD on the [0,1]-relaxed flip vector followed by Bernoulli sampling
/// recovery. The zero vector is always a candidate, so the result never
/// exceeds the benign objective.
TopologyAttackResult attack_topology(const Graph& graph, const EncoderParams& params,
                                     const NegativeSample& neg, const AttackBudget& budget,
                                     std::uint64_t seed);

/// Topology attack first, then feature PGD on the perturbed graph.
AttackResult worst_case_attack(const Graph& graph, const EncoderParams& params,
                               const NegativeSample& neg, const AttackBudget& budget,
                               std::uint64_t seed);

/// l_enc(benign) - l_enc(attacked) under one shared negative sample; >= 0.
double empirical_grv(const Graph& graph, const EncoderParams& params,
                     const AttackBudget& budget, std::uint64_t seed);

} // namespace grv
