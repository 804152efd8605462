#pragma once

#include "grv/graph.hpp"
#include "grv/types.hpp"

#include <cstdint>
#include <string>

namespace grv {

/// Weights of the one-layer GNN encoder and the bilinear critic.
struct EncoderParams {
    Matrix theta;  // c x h
    Matrix phi;    // h x h critic scoring matrix
};

/// Node embeddings plus the sigmoid mean-readout summary.
struct Representation {
    Matrix z;   // n x h, entries >= 0 (post-ReLU)
    Vector zg;  // length h, entries in (0,1)
};

/// z = ReLU(P X Theta) with P the normalized propagator; zg = sigmoid of the
/// column-mean of z.
Representation encode(const Graph& graph, const EncoderParams& params);

/// sigmoid(z_row' * phi * zg).
double critic_score(const Vector& z_row, const Vector& zg, const Matrix& phi);

/// Xavier-uniform init: entries of theta in +-sqrt(6/(c+h)), phi with fan (h,h).
EncoderParams init_params(Index c, Index h, std::uint64_t seed);

/// Text checkpoint with hexfloat values; round-trips bit-exactly.
void save_checkpoint(const std::string& path, const EncoderParams& params,
                     std::uint64_t seed, const std::string& config_hash);
EncoderParams load_checkpoint(const std::string& path, std::uint64_t* seed = nullptr,
                              std::string* config_hash = nullptr);

} // namespace grv
