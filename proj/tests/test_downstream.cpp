#include "doctest.h"

#include "grv/downstream.hpp"
#include "grv/rng.hpp"

#include <cmath>

using namespace grv;

TEST_CASE("logistic regression separates two 1-D points") {
    Matrix features(2, 1);
    features << -1.0, 1.0;
    const std::vector<int> labels{0, 1};
    const LogisticModel model = logistic_regression_fit(features, labels, 0.5, 500);
    CHECK(accuracy(model, features, labels) == 1.0);
}

TEST_CASE("logistic regression on identical features hits chance") {
    Matrix features = Matrix::Ones(10, 2);
    std::vector<int> labels;
    for (int i = 0; i < 10; ++i) labels.push_back(i % 2);
    const LogisticModel model = logistic_regression_fit(features, labels);
    CHECK(accuracy(model, features, labels) == doctest::Approx(0.5));
}

TEST_CASE("logistic regression beats 95% on separated Gaussians") {
    auto rng = make_rng(31);
    std::normal_distribution<double> noise(0.0, 0.3);
    Matrix train(200, 2), test(200, 2);
    std::vector<int> train_labels, test_labels;
    for (int i = 0; i < 200; ++i) {
        const int y = i % 2;
        const double mean = y == 1 ? 1.0 : -1.0;
        train(i, 0) = mean + noise(rng);
        train(i, 1) = mean + noise(rng);
        test(i, 0) = mean + noise(rng);
        test(i, 1) = mean + noise(rng);
        train_labels.push_back(y);
        test_labels.push_back(y);
    }
    const LogisticModel model = logistic_regression_fit(train, train_labels);
    CHECK(accuracy(model, test, test_labels) > 0.95);
}

TEST_CASE("logistic regression rejects single-class training") {
    Matrix features = Matrix::Ones(3, 1);
    CHECK_THROWS_AS(logistic_regression_fit(features, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("multi-class one-vs-rest recovers three clusters") {
    auto rng = make_rng(41);
    std::normal_distribution<double> noise(0.0, 0.2);
    Matrix features(90, 2);
    std::vector<int> labels;
    const double means[3][2] = {{0, 2}, {2, -1}, {-2, -1}};
    for (int i = 0; i < 90; ++i) {
        const int y = i % 3;
        features(i, 0) = means[y][0] + noise(rng);
        features(i, 1) = means[y][1] + noise(rng);
        labels.push_back(y);
    }
    const LogisticModel model = logistic_regression_fit(features, labels, 0.1, 300);
    CHECK(accuracy(model, features, labels) > 0.95);
}

TEST_CASE("link_features is the Hadamard product") {
    Vector u(3), v(3);
    u << 0.0, 0.0, 0.0;
    v << 1.0, 2.0, 3.0;
    CHECK(link_features(u, v) == Vector::Zero(3));

    u << 1.0, 1.0, 1.0;
    CHECK(link_features(u, u) == Vector::Ones(3));

    auto rng = make_rng(51);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector a(4), b(4);
    for (Index i = 0; i < 4; ++i) {
        a(i) = gauss(rng);
        b(i) = gauss(rng);
    }
    const Vector got = link_features(a, b);
    for (Index i = 0; i < 4; ++i) CHECK(got(i) == a(i) * b(i));
    CHECK_THROWS_AS(link_features(Vector::Zero(2), Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("auc basics") {
    CHECK(auc({0.1, 0.2, 0.8, 0.9}, {0, 0, 1, 1}) == doctest::Approx(1.0));
    CHECK(auc({0.5, 0.5, 0.5, 0.5}, {0, 1, 0, 1}) == doctest::Approx(0.5));
    CHECK(auc({0.9, 0.8, 0.1}, {0, 0, 1}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(auc({0.1, 0.2}, {1, 1}), std::invalid_argument);
}

TEST_CASE("auc equals the brute-force pairwise count") {
    auto rng = make_rng(61);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::bernoulli_distribution coin(0.4);
    std::uniform_int_distribution<int> quantize(0, 9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> scores;
        std::vector<int> labels;
        const int n = 5 + trial % 40;
        int pos = 0;
        for (int i = 0; i < n; ++i) {
            // Quantized scores force plenty of ties.
            scores.push_back(quantize(rng) / 10.0);
            labels.push_back(coin(rng) ? 1 : 0);
            pos += labels.back();
        }
        if (pos == 0 || pos == n) continue;

        double numer = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (labels[i] == 1 && labels[j] == 0) {
                    if (scores[i] > scores[j]) numer += 1.0;
                    else if (scores[i] == scores[j]) numer += 0.5;
                }
        const double want = numer / (static_cast<double>(pos) * (n - pos));
        CHECK(auc(scores, labels) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("kmeans recovers far-separated clouds and handles degenerate k") {
    auto rng = make_rng(71);
    std::normal_distribution<double> noise(0.0, 0.1);
    Matrix points(40, 2);
    for (int i = 0; i < 40; ++i) {
        const double mean = i < 20 ? 10.0 : -10.0;
        points(i, 0) = mean + noise(rng);
        points(i, 1) = mean + noise(rng);
    }
    const KMeansResult result = kmeans(points, 2, 3);
    for (int i = 1; i < 20; ++i) CHECK(result.assignment[i] == result.assignment[0]);
    for (int i = 21; i < 40; ++i) CHECK(result.assignment[i] == result.assignment[20]);
    CHECK(result.assignment[0] != result.assignment[20]);

    const KMeansResult one = kmeans(points, 1, 0);
    for (int a : one.assignment) CHECK(a == 0);

    Matrix tiny(3, 1);
    tiny << 0.0, 5.0, 9.0;
    const KMeansResult each = kmeans(tiny, 3, 1);
    CHECK(each.inertia == doctest::Approx(0.0));
    CHECK_THROWS_AS(kmeans(tiny, 4, 0), std::invalid_argument);
}

TEST_CASE("kmeans is deterministic per seed") {
    auto rng = make_rng(81);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix points(30, 3);
    for (Index i = 0; i < 30; ++i)
        for (Index j = 0; j < 3; ++j) points(i, j) = gauss(rng);
    const KMeansResult a = kmeans(points, 4, 5);
    const KMeansResult b = kmeans(points, 4, 5);
    CHECK(a.assignment == b.assignment);
    CHECK(a.inertia == b.inertia);
}

TEST_CASE("nmi basics and symmetry") {
    const std::vector<int> a{0, 0, 1, 1, 2, 2};
    CHECK(nmi(a, a) == doctest::Approx(1.0));
    const std::vector<int> renamed{2, 2, 0, 0, 1, 1};
    CHECK(nmi(a, renamed) == doctest::Approx(1.0));

    const std::vector<int> b{0, 1, 0, 1, 0, 1};
    CHECK(nmi(a, b) == doctest::Approx(nmi(b, a)));

    const std::vector<int> single{0, 0, 0};
    CHECK(nmi(single, single) == 1.0);
    CHECK_THROWS_AS(nmi(a, single), std::invalid_argument);
}

TEST_CASE("nmi matches a hand-computed 4-point contingency") {
    // a = (0,0,1,1), b = (0,1,1,1): counts n00=1 n01=1 n10=0 n11=2.
    // H(a) = ln 2; H(b) = -(1/4)ln(1/4) - (3/4)ln(3/4);
    // I = 1/4 ln(2) + 1/4 ln(2/3) + 1/2 ln(4/3).
    const std::vector<int> a{0, 0, 1, 1};
    const std::vector<int> b{0, 1, 1, 1};
    const double ha = std::log(2.0);
    const double hb = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
    const double mi =
        0.25 * std::log(2.0) + 0.25 * std::log(2.0 / 3.0) + 0.5 * std::log(4.0 / 3.0);
    CHECK(nmi(a, b) == doctest::Approx(mi / std::sqrt(ha * hb)).epsilon(1e-12));
}

TEST_CASE("centrality attack on a star flips a hub slot first") {
    const Index n = 5;
    Graph star;
    star.adjacency = Matrix::Zero(n, n);
    for (Index i = 1; i < n; ++i) star.adjacency(0, i) = star.adjacency(i, 0) = 1.0;
    star.attributes = Matrix::Ones(n, 1);

    const Graph unchanged = centrality_attack(star, 0, CentralityKind::degree);
    CHECK(unchanged.adjacency == star.adjacency);

    const Graph attacked = centrality_attack(star, 1, CentralityKind::degree);
    const Index flips = flip_distance(star.adjacency, attacked.adjacency);
    CHECK(flips == 1);
    // The flipped slot must touch the hub (node 0 has max degree sum).
    bool hub_touched = false;
    for (Index j = 1; j < n; ++j)
        if (attacked.adjacency(0, j) != star.adjacency(0, j)) hub_touched = true;
    CHECK(hub_touched);
}

TEST_CASE("eigenvector centrality on a 4-cycle is uniform; tie-break by index") {
    Graph cycle;
    cycle.adjacency = Matrix::Zero(4, 4);
    const Index edges[4][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    for (auto& e : edges) cycle.adjacency(e[0], e[1]) = cycle.adjacency(e[1], e[0]) = 1.0;
    cycle.attributes = Matrix::Ones(4, 1);

    const Vector centrality = eigenvector_centrality(cycle.adjacency);
    // Dense eigensolve oracle: principal eigenvector of the 4-cycle is uniform.
    Eigen::SelfAdjointEigenSolver<Matrix> solver(cycle.adjacency);
    Vector principal = solver.eigenvectors().col(3).cwiseAbs();
    principal /= principal.norm();
    CHECK((centrality - principal).cwiseAbs().maxCoeff() < 1e-6);

    // Uniform scores: the attack must flip slot 0, i.e. pair (0,1).
    const Graph attacked = centrality_attack(cycle, 1, CentralityKind::eigenvector);
    CHECK(attacked.adjacency(0, 1) == 0.0);
    CHECK(flip_distance(cycle.adjacency, attacked.adjacency) == 1);
}

TEST_CASE("betweenness centrality on a path peaks in the middle") {
    // Path 0-1-2: node 1 lies on the single 0..2 geodesic.
    Matrix path = Matrix::Zero(3, 3);
    path(0, 1) = path(1, 0) = 1.0;
    path(1, 2) = path(2, 1) = 1.0;
    const Vector centrality = betweenness_centrality(path);
    CHECK(centrality(0) == doctest::Approx(0.0));
    CHECK(centrality(1) == doctest::Approx(1.0));
    CHECK(centrality(2) == doctest::Approx(0.0));
}

TEST_CASE("betweenness attack is deterministic") {
    auto rng = make_rng(91);
    std::bernoulli_distribution edge(0.4);
    Graph g;
    g.adjacency = Matrix::Zero(8, 8);
    for (Index i = 0; i < 8; ++i)
        for (Index j = i + 1; j < 8; ++j)
            if (edge(rng)) g.adjacency(i, j) = g.adjacency(j, i) = 1.0;
    g.attributes = Matrix::Ones(8, 1);
    const Graph a = centrality_attack(g, 3, CentralityKind::betweenness);
    const Graph b = centrality_attack(g, 3, CentralityKind::betweenness);
    CHECK(a.adjacency == b.adjacency);
    CHECK(flip_distance(g.adjacency, a.adjacency) == 3);
}
