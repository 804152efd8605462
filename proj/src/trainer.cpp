#include "grv/trainer.hpp"

#include "grv/rng.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace grv {

namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

void adam_update(Matrix& param, const Matrix& grad, Matrix& m, Matrix& v,
                 double lr, double bias1, double bias2) {
    m = kAdamBeta1 * m + (1.0 - kAdamBeta1) * grad;
    v = kAdamBeta2 * v.array().matrix() + (1.0 - kAdamBeta2) * grad.cwiseProduct(grad);
    const Matrix m_hat = m / bias1;
    const Matrix v_hat = v / bias2;
    param += lr * m_hat.cwiseQuotient(v_hat.cwiseSqrt() + Matrix::Constant(v.rows(), v.cols(), kAdamEps));
}

} // namespace

void adam_step(EncoderParams& params, const Matrix& grad_theta, const Matrix& grad_phi,
               AdamState& state, double learning_rate) {
    if (grad_theta.rows() != params.theta.rows() || grad_theta.cols() != params.theta.cols() ||
        grad_phi.rows() != params.phi.rows() || grad_phi.cols() != params.phi.cols())
        throw std::invalid_argument("adam_step: gradient shape mismatch");
    if (state.timestep == 0) {
        state.m_theta = Matrix::Zero(params.theta.rows(), params.theta.cols());
        state.v_theta = state.m_theta;
        state.m_phi = Matrix::Zero(params.phi.rows(), params.phi.cols());
        state.v_phi = state.m_phi;
    }
    ++state.timestep;
    const double bias1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(state.timestep));
    const double bias2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(state.timestep));
    adam_update(params.theta, grad_theta, state.m_theta, state.v_theta, learning_rate, bias1, bias2);
    adam_update(params.phi, grad_phi, state.m_phi, state.v_phi, learning_rate, bias1, bias2);
}

TrainResult train(const Graph& graph, const TrainConfig& config) {
    if (config.beta != 1.0)
        throw std::invalid_argument("train: only beta = 1 is supported");
    if (config.gamma < 0.0 || config.learning_rate <= 0.0 || config.patience < 1)
        throw std::invalid_argument("train: invalid config");

    TrainResult result;
    result.params = init_params(graph.attribute_dim(), config.hidden_dim,
                                substream_seed(config.seed, "init"));
    AdamState adam;

    double best_benign = -std::numeric_limits<double>::infinity();
    Index stalled = 0;

    for (Index epoch = 0; epoch < config.max_epochs; ++epoch) {
        const std::uint64_t epoch_seed =
            substream_seed(config.seed, "epoch:" + std::to_string(epoch));
        const NegativeSample neg =
            negative_sample(graph.num_nodes(), substream_seed(epoch_seed, "neg"));

        const AttackResult attacked = worst_case_attack(
            graph, result.params, neg, config.budget, substream_seed(epoch_seed, "attack"));

        Tape benign_tape;
        const double l_benign = mi_estimate(graph, result.params, neg, &benign_tape);
        const double grv = l_benign - attacked.objective;
        if (!std::isfinite(l_benign) || !std::isfinite(attacked.objective))
            throw std::runtime_error("train: non-finite objective at epoch " +
                                     std::to_string(epoch));

        const bool adversarial = grv > config.gamma;
        MiGradients grads;
        if (adversarial) {
            Tape adv_tape;
            mi_estimate(attacked.perturbed, result.params, neg, &adv_tape);
            grads = mi_gradients(adv_tape, result.params);
        } else {
            grads = mi_gradients(benign_tape, result.params);
        }
        adam_step(result.params, grads.theta, grads.phi, adam, config.learning_rate);

        result.log.epochs.push_back(
            {epoch, l_benign, attacked.objective, grv, adversarial});

        if (l_benign > best_benign) {
            best_benign = l_benign;
            stalled = 0;
        } else if (++stalled >= config.patience) {
            break;
        }
    }
    return result;
}

void TrainLog::save_csv(const std::string& path, const std::string& comment) const {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("TrainLog::save_csv: cannot open " + path);
    if (!comment.empty()) std::fprintf(f, "# %s\n", comment.c_str());
    std::fprintf(f, "epoch,l_benign,l_adv,grv,branch\n");
    for (const auto& rec : epochs)
        std::fprintf(f, "%td,%.17g,%.17g,%.17g,%s\n", static_cast<ptrdiff_t>(rec.epoch),
                     rec.l_benign, rec.l_adv, rec.grv,
                     rec.adversarial_branch ? "adversarial" : "benign");
    std::fclose(f);
}

} // namespace grv
