#include "grv/encoder.hpp"

#include "grv/kernels.hpp"
#include "grv/rng.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace grv {

Representation encode(const Graph& graph, const EncoderParams& params) {
    if (graph.attributes.cols() != params.theta.rows())
        throw std::invalid_argument("encode: attribute dimension does not match theta");
    const Matrix propagator = normalize_adjacency(graph.adjacency);
    Representation rep;
    rep.z = relu_forward(propagator * graph.attributes * params.theta);
    rep.zg = sigmoid_forward(Vector(rep.z.colwise().mean().transpose()));
    return rep;
}

double critic_score(const Vector& z_row, const Vector& zg, const Matrix& phi) {
    if (z_row.size() != phi.rows() || zg.size() != phi.cols())
        throw std::invalid_argument("critic_score: shape mismatch");
    return sigmoid(z_row.dot(phi * zg));
}

namespace {

Matrix xavier_uniform(Index rows, Index cols, std::mt19937_64& rng) {
    const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::uniform_real_distribution<double> dist(-bound, bound);
    Matrix out(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            out(i, j) = dist(rng);
    return out;
}

void write_matrix(std::FILE* f, const char* name, const Matrix& m) {
    std::fprintf(f, "%s %td %td\n", name, static_cast<ptrdiff_t>(m.rows()),
                 static_cast<ptrdiff_t>(m.cols()));
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j)
            std::fprintf(f, "%s%a", j ? " " : "", m(i, j));
        std::fprintf(f, "\n");
    }
}

Matrix read_matrix(std::istream& in, const std::string& expect_name) {
    std::string name;
    Index rows = 0, cols = 0;
    if (!(in >> name >> rows >> cols) || name != expect_name)
        throw std::runtime_error("checkpoint: expected matrix " + expect_name);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) {
            std::string tok;
            if (!(in >> tok)) throw std::runtime_error("checkpoint: truncated matrix");
            m(i, j) = std::strtod(tok.c_str(), nullptr);
        }
    return m;
}

} // namespace

EncoderParams init_params(Index c, Index h, std::uint64_t seed) {
    if (c < 1 || h < 1) throw std::invalid_argument("init_params: dimensions must be >= 1");
    auto rng = make_rng(seed);
    EncoderParams params;
    params.theta = xavier_uniform(c, h, rng);
    params.phi = xavier_uniform(h, h, rng);
    return params;
}

void save_checkpoint(const std::string& path, const EncoderParams& params,
                     std::uint64_t seed, const std::string& config_hash) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("save_checkpoint: cannot open " + path);
    std::fprintf(f, "grv-checkpoint v1\n");
    std::fprintf(f, "seed %" PRIu64 "\n", seed);
    std::fprintf(f, "config_hash %s\n", config_hash.empty() ? "-" : config_hash.c_str());
    write_matrix(f, "theta", params.theta);
    write_matrix(f, "phi", params.phi);
    std::fclose(f);
}

EncoderParams load_checkpoint(const std::string& path, std::uint64_t* seed,
                              std::string* config_hash) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
    std::string magic, version;
    in >> magic >> version;
    if (magic != "grv-checkpoint" || version != "v1")
        throw std::runtime_error("load_checkpoint: bad header in " + path);
    std::string key;
    std::uint64_t s = 0;
    std::string hash;
    in >> key >> s;
    if (key != "seed") throw std::runtime_error("load_checkpoint: missing seed");
    in >> key >> hash;
    if (key != "config_hash") throw std::runtime_error("load_checkpoint: missing config_hash");
    EncoderParams params;
    params.theta = read_matrix(in, "theta");
    params.phi = read_matrix(in, "phi");
    if (params.phi.rows() != params.phi.cols() || params.phi.rows() != params.theta.cols())
        throw std::runtime_error("load_checkpoint: inconsistent shapes");
    if (seed) *seed = s;
    if (config_hash) *config_hash = (hash == "-") ? std::string() : hash;
    return params;
}

} // namespace grv
