#include "grv/mi.hpp"

#include "grv/kernels.hpp"
#include "grv/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace grv {

Matrix NegativeSample::apply(const Matrix& attributes) const {
    if (static_cast<Index>(permutation.size()) != attributes.rows())
        throw std::invalid_argument("NegativeSample: permutation length mismatch");
    Matrix out(attributes.rows(), attributes.cols());
    for (Index i = 0; i < attributes.rows(); ++i)
        out.row(i) = attributes.row(permutation[i]);
    return out;
}

NegativeSample negative_sample(Index n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("negative_sample: need n >= 2");
    NegativeSample neg;
    neg.permutation.resize(n);
    std::iota(neg.permutation.begin(), neg.permutation.end(), Index{0});
    auto rng = make_rng(seed);
    // Fisher-Yates; std::shuffle is not pinned across standard libraries.
    for (Index i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<Index> pick(0, i);
        std::swap(neg.permutation[i], neg.permutation[pick(rng)]);
    }
    return neg;
}

namespace {

double clamped_score(double s) {
    return std::clamp(s, kScoreClamp, 1.0 - kScoreClamp);
}

} // namespace

double mi_estimate(const Matrix& adjacency, const Matrix& attributes,
                   const EncoderParams& params, const NegativeSample& neg,
                   Tape* tape) {
    const Index n = adjacency.rows();
    if (attributes.rows() != n)
        throw std::invalid_argument("mi_estimate: attribute row count mismatch");
    if (attributes.cols() != params.theta.rows())
        throw std::invalid_argument("mi_estimate: attribute dimension mismatch");

    const Matrix hat = adjacency + Matrix::Identity(n, n);
    const Vector inv_sqrt_deg = hat.rowwise().sum().array().sqrt().inverse();
    const Matrix propagator = inv_sqrt_deg.asDiagonal() * hat * inv_sqrt_deg.asDiagonal();

    const Matrix neg_attributes = neg.apply(attributes);
    const Matrix pos_pre = propagator * attributes * params.theta;
    const Matrix neg_pre = propagator * neg_attributes * params.theta;
    const Matrix pos_z = relu_forward(pos_pre);
    const Matrix neg_z = relu_forward(neg_pre);
    const Vector zg = sigmoid_forward(Vector(pos_z.colwise().mean().transpose()));

    const Vector phi_zg = params.phi * zg;
    const Vector pos_scores = sigmoid_forward(Vector(pos_z * phi_zg));
    const Vector neg_scores = sigmoid_forward(Vector(neg_z * phi_zg));

    double value = 0.0;
    for (Index i = 0; i < n; ++i) {
        value += std::log(clamped_score(pos_scores(i)));
        value += std::log(1.0 - clamped_score(neg_scores(i)));
    }
    value /= static_cast<double>(n);
    if (!std::isfinite(value))
        throw std::runtime_error("mi_estimate: non-finite objective");

    if (tape) {
        tape->adjacency = adjacency;
        tape->attributes = attributes;
        tape->permutation = neg.permutation;
        tape->inv_sqrt_deg = inv_sqrt_deg;
        tape->propagator = propagator;
        tape->pos_pre = pos_pre;
        tape->pos_z = pos_z;
        tape->neg_pre = neg_pre;
        tape->neg_z = neg_z;
        tape->zg = zg;
        tape->pos_scores = pos_scores;
        tape->neg_scores = neg_scores;
        tape->value = value;
    }
    return value;
}

double mi_estimate(const Graph& graph, const EncoderParams& params,
                   const NegativeSample& neg, Tape* tape) {
    return mi_estimate(graph.adjacency, graph.attributes, params, neg, tape);
}

MiGradients mi_gradients(const Tape& tape, const EncoderParams& params) {
    const Index n = tape.adjacency.rows();
    if (tape.pos_z.rows() != n || static_cast<Index>(tape.permutation.size()) != n)
        throw std::invalid_argument("mi_gradients: tape/shape mismatch");
    const double inv_n = 1.0 / static_cast<double>(n);

    // d l / d critic pre-activation; zero where the clamp is active.
    Vector alpha(n), beta(n);
    for (Index i = 0; i < n; ++i) {
        const double d_pos = tape.pos_scores(i);
        const double d_neg = tape.neg_scores(i);
        const bool pos_live = d_pos > kScoreClamp && d_pos < 1.0 - kScoreClamp;
        const bool neg_live = d_neg > kScoreClamp && d_neg < 1.0 - kScoreClamp;
        alpha(i) = pos_live ? inv_n * (1.0 - d_pos) : 0.0;
        beta(i) = neg_live ? -inv_n * d_neg : 0.0;
    }

    MiGradients grads;
    const Vector weighted = tape.pos_z.transpose() * alpha + tape.neg_z.transpose() * beta;
    grads.phi = weighted * tape.zg.transpose();

    const Vector phi_zg = params.phi * tape.zg;
    Matrix d_pos_z = alpha * phi_zg.transpose();
    Matrix d_neg_z = beta * phi_zg.transpose();

    // Summary path: zg = sigmoid(column mean of pos_z).
    const Vector d_zg = params.phi.transpose() * weighted;
    const Vector d_mean = sigmoid_backward(tape.zg, d_zg);
    d_pos_z.rowwise() += inv_n * d_mean.transpose();

    const Matrix d_pos_pre = relu_backward(tape.pos_pre, d_pos_z);
    const Matrix d_neg_pre = relu_backward(tape.neg_pre, d_neg_z);

    const Matrix neg_attributes = [&] {
        Matrix out(n, tape.attributes.cols());
        for (Index i = 0; i < n; ++i) out.row(i) = tape.attributes.row(tape.permutation[i]);
        return out;
    }();

    const Matrix pos_agg = tape.propagator * tape.attributes;   // P X
    const Matrix neg_agg = tape.propagator * neg_attributes;    // P X~

    grads.theta = pos_agg.transpose() * d_pos_pre + neg_agg.transpose() * d_neg_pre;

    const Matrix d_pos_agg = d_pos_pre * params.theta.transpose();
    const Matrix d_neg_agg = d_neg_pre * params.theta.transpose();

    grads.attributes = tape.propagator.transpose() * d_pos_agg;
    const Matrix d_neg_attr = tape.propagator.transpose() * d_neg_agg;
    for (Index i = 0; i < n; ++i)
        grads.attributes.row(tape.permutation[i]) += d_neg_attr.row(i);

    // Through the propagator: P_ij = (A+I)_ij / sqrt(d_i d_j).
    const Matrix d_prop = d_pos_agg * tape.attributes.transpose() +
                          d_neg_agg * neg_attributes.transpose();
    const Matrix weighted_prop = d_prop.cwiseProduct(tape.propagator);
    const Vector touched = weighted_prop.rowwise().sum() + weighted_prop.colwise().sum().transpose();
    // d l / d degree_u = -touched_u / (2 d_u); inv_sqrt_deg holds d^{-1/2}.
    const Vector d_degree =
        -0.5 * touched.cwiseProduct(tape.inv_sqrt_deg.cwiseProduct(tape.inv_sqrt_deg));

    grads.adjacency =
        tape.inv_sqrt_deg.asDiagonal() * d_prop * tape.inv_sqrt_deg.asDiagonal();
    grads.adjacency.colwise() += d_degree;
    return grads;
}

Vector perturb_gradient(const RelaxedAdjacency& relaxed, const Matrix& adjacency_grad) {
    const Index n = relaxed.base.rows();
    if (adjacency_grad.rows() != n || adjacency_grad.cols() != n)
        throw std::invalid_argument("perturb_gradient: shape mismatch");
    Vector grad(num_slots(n));
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            const double sign = 1.0 - 2.0 * relaxed.base(i, j);
            grad(slot_index(i, j, n)) = sign * (adjacency_grad(i, j) + adjacency_grad(j, i));
        }
    return grad;
}

} // namespace grv
