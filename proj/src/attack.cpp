#include "grv/attack.hpp"

#include "grv/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace grv {

Vector project_budget_box(const Vector& p, double delta) {
    if (delta < 0.0) throw std::invalid_argument("project_budget_box: delta must be >= 0");
    Vector clipped = p.cwiseMax(0.0).cwiseMin(1.0);
    if (clipped.sum() <= delta) return clipped;

    const auto shifted_sum = [&](double lambda) {
        return (p.array() - lambda).cwiseMax(0.0).cwiseMin(1.0).sum();
    };
    double lo = 0.0;
    double hi = p.maxCoeff();  // shift by the max empties the box
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double s = shifted_sum(mid);
        if (std::abs(s - delta) <= 1e-10)
            return (p.array() - mid).cwiseMax(0.0).cwiseMin(1.0);
        (s > delta ? lo : hi) = mid;
    }
    throw std::runtime_error("project_budget_box: bisection did not converge");
}

Matrix attack_features(const Graph& graph, const EncoderParams& params,
                       const NegativeSample& neg, double epsilon, Index steps,
                       double step_size) {
    if (epsilon < 0.0) throw std::invalid_argument("attack_features: epsilon must be >= 0");
    if (epsilon == 0.0 || steps == 0) return graph.attributes;

    const Matrix lower = graph.attributes.array() - epsilon;
    const Matrix upper = graph.attributes.array() + epsilon;

    Matrix current = graph.attributes;
    Matrix best = graph.attributes;
    double best_value = mi_estimate(graph.adjacency, graph.attributes, params, neg);

    for (Index step = 0; step < steps; ++step) {
        Tape tape;
        mi_estimate(graph.adjacency, current, params, neg, &tape);
        const MiGradients grads = mi_gradients(tape, params);
        current = (current - step_size * grads.attributes).cwiseMax(lower).cwiseMin(upper);
        const double value = mi_estimate(graph.adjacency, current, params, neg);
        if (value < best_value) {
            best_value = value;
            best = current;
        }
    }
    return best;
}

namespace {

double materialized_objective(const RelaxedAdjacency& relaxed, const Vector& sample,
                              Index delta, const Matrix& attributes,
                              const EncoderParams& params, const NegativeSample& neg) {
    return mi_estimate(materialize(relaxed, sample, delta), attributes, params, neg);
}

} // namespace

TopologyAttackResult attack_topology(const Graph& graph, const EncoderParams& params,
                                     const NegativeSample& neg, const AttackBudget& budget,
                                     std::uint64_t seed) {
    const Index n = graph.num_nodes();
    const Index m = num_slots(n);
    RelaxedAdjacency relaxed{graph.adjacency, Vector::Zero(m)};

    TopologyAttackResult result;
    if (budget.delta == 0) {
        result.adjacency = graph.adjacency;
        result.relaxed = relaxed.perturb;
        result.objective = mi_estimate(graph, params, neg);
        return result;
    }

    const double delta = static_cast<double>(budget.delta);
    for (Index step = 0; step < budget.topo_steps; ++step) {
        Tape tape;
        mi_estimate(relaxed.dense(), graph.attributes, params, neg, &tape);
        const Vector grad = perturb_gradient(relaxed, mi_gradients(tape, params).adjacency);
        relaxed.perturb = project_budget_box(relaxed.perturb - budget.topo_step_size * grad, delta);
    }

    // Recovery: the zero vector is always a candidate, so the attack never
    // does worse than no attack.
    Vector best_sample = Vector::Zero(m);
    double best_value = materialized_objective(relaxed, best_sample, budget.delta,
                                               graph.attributes, params, neg);
    if (budget.exhaustive) {
        if (m > 25)
            throw std::invalid_argument("attack_topology: exhaustive mode needs few slots");
        for (std::uint64_t mask = 1; mask < (1ull << m); ++mask) {
            if (static_cast<Index>(__builtin_popcountll(mask)) > budget.delta) continue;
            Vector sample = Vector::Zero(m);
            for (Index k = 0; k < m; ++k)
                if (mask & (1ull << k)) sample(k) = 1.0;
            const double value = materialized_objective(relaxed, sample, budget.delta,
                                                        graph.attributes, params, neg);
            if (value < best_value) {
                best_value = value;
                best_sample = sample;
            }
        }
    } else {
        auto rng = make_rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (Index draw = 0; draw < budget.num_samples; ++draw) {
            Vector sample(m);
            Index flips = 0;
            for (Index k = 0; k < m; ++k) {
                sample(k) = unit(rng) < relaxed.perturb(k) ? 1.0 : 0.0;
                if (sample(k) == 1.0) ++flips;
            }
            if (flips > budget.delta) continue;  // infeasible draw
            const double value = materialized_objective(relaxed, sample, budget.delta,
                                                        graph.attributes, params, neg);
            if (value < best_value) {
                best_value = value;
                best_sample = sample;
            }
        }
    }

    result.adjacency = materialize(relaxed, best_sample, budget.delta);
    result.relaxed = relaxed.perturb;
    result.objective = best_value;
    return result;
}

AttackResult worst_case_attack(const Graph& graph, const EncoderParams& params,
                               const NegativeSample& neg, const AttackBudget& budget,
                               std::uint64_t seed) {
    const TopologyAttackResult topo = attack_topology(graph, params, neg, budget, seed);

    Graph staged{topo.adjacency, graph.attributes};
    const Matrix attacked_attributes = attack_features(
        staged, params, neg, budget.epsilon, budget.feat_steps, budget.feat_step_size);

    AttackResult result;
    result.perturbed = Graph{topo.adjacency, attacked_attributes};
    result.objective = mi_estimate(result.perturbed, params, neg);
    result.flips_used = flip_distance(graph.adjacency, topo.adjacency);
    result.feat_linf_used =
        (attacked_attributes - graph.attributes).cwiseAbs().maxCoeff();
    return result;
}

double empirical_grv(const Graph& graph, const EncoderParams& params,
                     const AttackBudget& budget, std::uint64_t seed) {
    const NegativeSample neg = negative_sample(graph.num_nodes(), substream_seed(seed, "neg"));
    const double benign = mi_estimate(graph, params, neg);
    const AttackResult attacked =
        worst_case_attack(graph, params, neg, budget, substream_seed(seed, "attack"));
    return benign - attacked.objective;
}

} // namespace grv
