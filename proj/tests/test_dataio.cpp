#include "doctest.h"

#include "grv/dataio.hpp"
#include "grv/rng.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <string>

using namespace grv;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("/tmp/grv_dataio_" + name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("edge list parsing dedupes and symmetrizes") {
    TempFile file("edges.txt",
                  "4\n"
                  "0 1\n"
                  "1 0\n"      // reverse duplicate
                  "0 1\n"      // exact duplicate
                  "# comment\n"
                  "2 3\n");
    const Matrix adjacency = load_edge_list(file.path);
    REQUIRE(adjacency.rows() == 4);
    Matrix want = Matrix::Zero(4, 4);
    want(0, 1) = want(1, 0) = 1.0;
    want(2, 3) = want(3, 2) = 1.0;
    CHECK(adjacency == want);
}

TEST_CASE("edge list rejections carry the offending line number") {
    TempFile self_loop("self.txt", "3\n0 1\n2 2\n");
    CHECK_THROWS_WITH_AS(load_edge_list(self_loop.path),
                         doctest::Contains(":3"), std::runtime_error);

    TempFile out_of_range("range.txt", "3\n0 3\n");
    CHECK_THROWS_WITH_AS(load_edge_list(out_of_range.path),
                         doctest::Contains(":2"), std::runtime_error);

    TempFile trailing("trail.txt", "3\n0 1 9\n");
    CHECK_THROWS_AS(load_edge_list(trailing.path), std::runtime_error);

    CHECK_THROWS_AS(load_edge_list("/tmp/grv_dataio_does_not_exist"),
                    std::runtime_error);
}

TEST_CASE("edge list round trip preserves the edge set") {
    auto rng = make_rng(101);
    std::bernoulli_distribution edge(0.3);
    Matrix adjacency = Matrix::Zero(9, 9);
    std::set<std::pair<Index, Index>> edges;
    for (Index i = 0; i < 9; ++i)
        for (Index j = i + 1; j < 9; ++j)
            if (edge(rng)) {
                adjacency(i, j) = adjacency(j, i) = 1.0;
                edges.emplace(i, j);
            }
    const std::string path = "/tmp/grv_dataio_roundtrip.txt";
    save_edge_list(path, adjacency);
    const Matrix loaded = load_edge_list(path);
    std::remove(path.c_str());
    CHECK(loaded == adjacency);

    // Set-based oracle: re-read the file by hand.
    save_edge_list(path, adjacency);
    std::ifstream in(path);
    Index n;
    in >> n;
    CHECK(n == 9);
    std::set<std::pair<Index, Index>> seen;
    Index u, v;
    while (in >> u >> v) seen.emplace(std::min(u, v), std::max(u, v));
    std::remove(path.c_str());
    CHECK(seen == edges);
}

TEST_CASE("attribute files round trip bit-exactly") {
    auto rng = make_rng(103);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix attributes(5, 3);
    for (Index i = 0; i < 5; ++i)
        for (Index j = 0; j < 3; ++j) attributes(i, j) = gauss(rng);
    attributes(0, 0) = 0.1;  // not exactly representable; %.17g must survive it
    const std::string path = "/tmp/grv_dataio_attrs.csv";
    save_attributes(path, attributes);
    const Matrix loaded = load_attributes(path);
    std::remove(path.c_str());
    CHECK(loaded == attributes);
}

TEST_CASE("attribute parsing validates the header and row widths") {
    TempFile short_row("attr_short.csv", "2 3\n1,2,3\n1,2\n");
    CHECK_THROWS_AS(load_attributes(short_row.path), std::runtime_error);
    TempFile missing_row("attr_missing.csv", "3 2\n1,2\n3,4\n");
    CHECK_THROWS_AS(load_attributes(missing_row.path), std::runtime_error);
}

TEST_CASE("identity attributes") {
    const Matrix eye = identity_attributes(4);
    CHECK(eye == Matrix::Identity(4, 4));
    CHECK_THROWS_AS(identity_attributes(0), std::invalid_argument);
}

TEST_CASE("labels and node splits load and validate") {
    TempFile labels_file("labels.txt", "0\n1\n1\n2\n");
    const std::vector<int> labels = load_labels(labels_file.path, 4);
    CHECK(labels == std::vector<int>{0, 1, 1, 2});
    CHECK_THROWS_AS(load_labels(labels_file.path, 5), std::runtime_error);

    TempFile split_file("split.txt", "3\n0\n2\n");
    const std::vector<Index> split = load_split(split_file.path, 4);
    CHECK(split == std::vector<Index>{3, 0, 2});
    TempFile bad_split("split_bad.txt", "4\n");
    CHECK_THROWS_AS(load_split(bad_split.path, 4), std::runtime_error);
}

TEST_CASE("random node split is disjoint, sized, and seeded") {
    const SplitSpec split = random_split(100, 0.6, 0.3, 13);
    CHECK(split.train.size() == 60);
    CHECK(split.test.size() == 30);
    std::set<Index> train(split.train.begin(), split.train.end());
    std::set<Index> test(split.test.begin(), split.test.end());
    CHECK(train.size() == 60);
    CHECK(test.size() == 30);
    for (Index i : test) CHECK(train.count(i) == 0);

    const SplitSpec again = random_split(100, 0.6, 0.3, 13);
    CHECK(again.train == split.train);
    CHECK(again.test == split.test);
    const SplitSpec other = random_split(100, 0.6, 0.3, 14);
    CHECK(other.train != split.train);

    CHECK_THROWS_AS(random_split(10, 0.8, 0.4, 0), std::invalid_argument);
}

TEST_CASE("link split removes the right edges and samples true non-edges") {
    auto rng = make_rng(107);
    std::bernoulli_distribution edge(0.4);
    Graph graph;
    graph.adjacency = Matrix::Zero(20, 20);
    for (Index i = 0; i < 20; ++i)
        for (Index j = i + 1; j < 20; ++j)
            if (edge(rng)) graph.adjacency(i, j) = graph.adjacency(j, i) = 1.0;
    graph.attributes = identity_attributes(20);
    const Index num_edges = graph.num_edges();
    REQUIRE(num_edges > 10);

    const LinkSplit split = link_split(graph, 0.1, 19);
    const auto expected = static_cast<std::size_t>(0.1 * num_edges);
    CHECK(split.positives.size() == expected);
    CHECK(split.negatives.size() == expected);
    CHECK(split.training.num_edges() == num_edges - static_cast<Index>(expected));

    std::set<std::pair<Index, Index>> seen;
    for (const auto& [u, v] : split.positives) {
        CHECK(graph.adjacency(u, v) == 1.0);          // was a real edge
        CHECK(split.training.adjacency(u, v) == 0.0); // and was removed
        CHECK(seen.emplace(u, v).second);
    }
    for (const auto& [u, v] : split.negatives) {
        CHECK(u != v);
        CHECK(graph.adjacency(u, v) == 0.0);          // true non-edge
        CHECK(seen.emplace(u, v).second);             // and no duplicates
    }
    // Untouched edges stay put.
    for (Index i = 0; i < 20; ++i)
        for (Index j = i + 1; j < 20; ++j)
            if (split.training.adjacency(i, j) == 1.0)
                CHECK(graph.adjacency(i, j) == 1.0);

    const LinkSplit again = link_split(graph, 0.1, 19);
    CHECK(again.positives == split.positives);
    CHECK(again.negatives == split.negatives);
    CHECK(again.training.adjacency == split.training.adjacency);
}
