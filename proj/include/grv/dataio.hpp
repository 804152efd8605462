#pragma once

#include "grv/graph.hpp"
#include "grv/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace grv {

/// Node-classification split: disjoint train/test index sets.
/// Link prediction uses removed-edge positives plus sampled non-edge negatives.
struct SplitSpec {
    std::vector<Index> train;
    std::vector<Index> test;
};

struct LinkSplit {
    Graph training;  // edges removed
    std::vector<std::pair<Index, Index>> positives;  // removed true edges
    std::vector<std::pair<Index, Index>> negatives;  // true non-edges
};

struct DatasetBundle {
    Graph graph;
    std::optional<std::vector<int>> labels;
    std::optional<SplitSpec> split;
    std::string name;
};

/// Edge list: first line is the node count n, then whitespace-separated
/// 0-indexed "u v" pairs. Duplicates and reversed pairs are deduplicated;
/// self-loops and out-of-range indices are rejected with the line number.
Matrix load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Matrix& adjacency);

/// Attributes: header "n c", then one comma-separated row per node.
/// `featureless` synthesizes an n x n identity instead of reading a file.
Matrix load_attributes(const std::string& path);
Matrix identity_attributes(Index n);
void save_attributes(const std::string& path, const Matrix& attributes);

/// One integer per line.
std::vector<int> load_labels(const std::string& path, Index expected_n);
std::vector<Index> load_split(const std::string& path, Index n);

/// Removes floor(fraction * |E|) random edges (kept as test positives) and
/// samples as many non-edges as negatives. Deterministic per seed.
LinkSplit link_split(const Graph& graph, double fraction, std::uint64_t seed);

/// Seeded train/test node split by fractions of n.
SplitSpec random_split(Index n, double train_fraction, double test_fraction,
                       std::uint64_t seed);

} // namespace grv
