#include "grv/dataio.hpp"

#include "grv/rng.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace grv {

namespace {

[[noreturn]] void malformed(const std::string& path, std::size_t line,
                            const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

} // namespace

Matrix load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_edge_list: cannot open " + path);
    std::string line;
    std::size_t lineno = 0;

    Index n = -1;
    Matrix adjacency;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        if (n < 0) {
            if (!(ss >> n) || n < 1) malformed(path, lineno, "expected node count header");
            std::string rest;
            if (ss >> rest) malformed(path, lineno, "unexpected token after node count");
            adjacency = Matrix::Zero(n, n);
            continue;
        }
        Index u, v;
        if (!(ss >> u >> v)) malformed(path, lineno, "expected 'u v' pair");
        std::string rest;
        if (ss >> rest) malformed(path, lineno, "unexpected trailing token");
        if (u < 0 || v < 0 || u >= n || v >= n)
            malformed(path, lineno, "node index out of range");
        if (u == v) malformed(path, lineno, "self-loop rejected");
        adjacency(u, v) = 1.0;
        adjacency(v, u) = 1.0;
    }
    if (n < 0) throw std::runtime_error("load_edge_list: missing node count in " + path);
    return adjacency;
}

void save_edge_list(const std::string& path, const Matrix& adjacency) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("save_edge_list: cannot open " + path);
    const Index n = adjacency.rows();
    std::fprintf(f, "%td\n", static_cast<ptrdiff_t>(n));
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (adjacency(i, j) != 0.0)
                std::fprintf(f, "%td %td\n", static_cast<ptrdiff_t>(i),
                             static_cast<ptrdiff_t>(j));
    std::fclose(f);
}

Matrix load_attributes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_attributes: cannot open " + path);
    std::string line;
    do {
        if (!std::getline(in, line))
            throw std::runtime_error("load_attributes: empty file " + path);
    } while (line.empty() || line[0] == '#');
    std::istringstream header(line);
    Index n = 0, c = 0;
    if (!(header >> n >> c) || n < 1 || c < 1)
        malformed(path, 1, "expected 'n c' header");

    Matrix out(n, c);
    for (Index i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            malformed(path, static_cast<std::size_t>(i) + 2, "missing attribute row");
        std::istringstream ss(line);
        std::string cell;
        for (Index j = 0; j < c; ++j) {
            if (!std::getline(ss, cell, ','))
                malformed(path, static_cast<std::size_t>(i) + 2, "missing attribute column");
            std::size_t used = 0;
            out(i, j) = std::stod(cell, &used);
        }
    }
    return out;
}

Matrix identity_attributes(Index n) {
    if (n < 1) throw std::invalid_argument("identity_attributes: need n >= 1");
    return Matrix::Identity(n, n);
}

void save_attributes(const std::string& path, const Matrix& attributes) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("save_attributes: cannot open " + path);
    std::fprintf(f, "%td %td\n", static_cast<ptrdiff_t>(attributes.rows()),
                 static_cast<ptrdiff_t>(attributes.cols()));
    for (Index i = 0; i < attributes.rows(); ++i) {
        for (Index j = 0; j < attributes.cols(); ++j)
            std::fprintf(f, "%s%.17g", j ? "," : "", attributes(i, j));
        std::fprintf(f, "\n");
    }
    std::fclose(f);
}

std::vector<int> load_labels(const std::string& path, Index expected_n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_labels: cannot open " + path);
    std::vector<int> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        int value;
        if (!(ss >> value)) malformed(path, lineno, "expected one integer");
        labels.push_back(value);
    }
    if (static_cast<Index>(labels.size()) != expected_n)
        throw std::runtime_error("load_labels: row count mismatch in " + path);
    return labels;
}

std::vector<Index> load_split(const std::string& path, Index n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_split: cannot open " + path);
    std::vector<Index> indices;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        Index value;
        if (!(ss >> value)) malformed(path, lineno, "expected one index");
        if (value < 0 || value >= n) malformed(path, lineno, "index out of range");
        indices.push_back(value);
    }
    return indices;
}

LinkSplit link_split(const Graph& graph, double fraction, std::uint64_t seed) {
    if (fraction <= 0.0 || fraction >= 1.0)
        throw std::invalid_argument("link_split: need 0 < fraction < 1");
    const Index n = graph.num_nodes();
    std::vector<std::pair<Index, Index>> edges;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (graph.adjacency(i, j) != 0.0) edges.emplace_back(i, j);

    const auto remove_count =
        static_cast<Index>(fraction * static_cast<double>(edges.size()));
    if (remove_count < 1)
        throw std::invalid_argument("link_split: graph too small to remove any edge");

    auto rng = make_rng(seed);
    for (std::size_t i = edges.size() - 1; i > 0; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i);
        std::swap(edges[i], edges[pick(rng)]);
    }

    LinkSplit split;
    split.training = graph;
    for (Index t = 0; t < remove_count; ++t) {
        const auto [i, j] = edges[t];
        split.positives.emplace_back(i, j);
        split.training.adjacency(i, j) = 0.0;
        split.training.adjacency(j, i) = 0.0;
    }

    std::uniform_int_distribution<Index> node(0, n - 1);
    while (static_cast<Index>(split.negatives.size()) < remove_count) {
        Index i = node(rng), j = node(rng);
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        if (graph.adjacency(i, j) != 0.0) continue;  // must be a true non-edge
        if (std::find(split.negatives.begin(), split.negatives.end(),
                      std::make_pair(i, j)) != split.negatives.end())
            continue;
        split.negatives.emplace_back(i, j);
    }
    return split;
}

SplitSpec random_split(Index n, double train_fraction, double test_fraction,
                       std::uint64_t seed) {
    if (train_fraction <= 0.0 || test_fraction <= 0.0 ||
        train_fraction + test_fraction > 1.0 + 1e-12)
        throw std::invalid_argument("random_split: invalid fractions");
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    auto rng = make_rng(seed);
    for (Index i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<Index> pick(0, i);
        std::swap(order[i], order[pick(rng)]);
    }
    SplitSpec split;
    const auto train_count = static_cast<Index>(train_fraction * static_cast<double>(n));
    const auto test_count = static_cast<Index>(test_fraction * static_cast<double>(n));
    split.train.assign(order.begin(), order.begin() + train_count);
    split.test.assign(order.begin() + train_count, order.begin() + train_count + test_count);
    return split;
}

} // namespace grv
