#pragma once

#include "grv/attack.hpp"
#include "grv/encoder.hpp"
#include "grv/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace grv {

/// Soft-margin robust training configuration. beta is fixed to 1 (the
/// two-branch objective) and exposed read-only for documentation.
struct TrainConfig {
    double gamma = 5e-3;        // soft margin on GRV
    double beta = 1.0;          // only 1 is supported
    AttackBudget budget;
    double learning_rate = 1e-3;
    Index patience = 20;
    Index max_epochs = 200;
    Index hidden_dim = 512;
    std::uint64_t seed = 0;
};

struct AdamState {
    Matrix m_theta, v_theta;
    Matrix m_phi, v_phi;
    Index timestep = 0;
};

struct EpochRecord {
    Index epoch = 0;
    double l_benign = 0.0;
    double l_adv = 0.0;
    double grv = 0.0;
    bool adversarial_branch = false;
};

struct TrainLog {
    std::vector<EpochRecord> epochs;

    /// Optional comment becomes a leading "# ..." line.
    void save_csv(const std::string& path, const std::string& comment = "") const;
};

struct TrainResult {
    EncoderParams params;
    TrainLog log;
};

/// One Adam update (beta1=0.9, beta2=0.999, eps=1e-8, bias-corrected) moving
/// params in the +grads direction (we ascend l_enc).
void adam_step(EncoderParams& params, const Matrix& grad_theta, const Matrix& grad_phi,
               AdamState& state, double learning_rate);

/// Alternating robust training: per epoch, attack, compute GRV, then ascend
/// l_enc on the attacked graph when GRV exceeds the margin and on the benign
/// graph otherwise. Early-stops on stalled benign l_enc.
TrainResult train(const Graph& graph, const TrainConfig& config);

} // namespace grv
