#pragma once

#include "grv/graph.hpp"
#include "grv/types.hpp"

#include <cstdint>
#include <vector>

namespace grv {

/// One-vs-rest logistic regression trained by full-batch gradient descent.
struct LogisticModel {
    Matrix weights;  // num_classes x dim (binary problems use one row)
    Vector bias;     // length num_classes
    int num_classes = 0;

    /// Class scores for a single feature vector.
    Vector scores(const Vector& features) const;
    int predict(const Vector& features) const;
};

/// Cross-entropy gradient descent, 100 epochs at lr 1e-2 by default.
/// Throws std::invalid_argument when the training set holds a single class.
LogisticModel logistic_regression_fit(const Matrix& features,
                                      const std::vector<int>& labels,
                                      double learning_rate = 1e-2, Index epochs = 100,
                                      std::uint64_t seed = 0);

double accuracy(const LogisticModel& model, const Matrix& features,
                const std::vector<int>& labels);

/// Hadamard edge featurization.
Vector link_features(const Vector& z_u, const Vector& z_v);

/// Mann-Whitney AUC with ties counted half. Needs both classes present.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct KMeansResult {
    std::vector<int> assignment;
    Matrix centroids;   // k x dim
    double inertia = 0.0;
};

/// k-means++ seeding plus Lloyd iterations (at most 300); empty clusters are
/// re-seeded to the farthest point. Deterministic per seed.
KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed);

/// I(a;b) / sqrt(H(a) H(b)) from empirical counts; 1.0 when both partitions
/// are single-cluster.
double nmi(const std::vector<int>& labels_a, const std::vector<int>& labels_b);

enum class CentralityKind { degree, betweenness, eigenvector };

/// Flips the delta candidate slots whose endpoint-centrality sums are
/// largest; centralities are scored once on the clean graph, ties broken by
/// slot index.
Graph centrality_attack(const Graph& graph, Index delta, CentralityKind kind);

/// Brandes' algorithm on the unweighted graph.
Vector betweenness_centrality(const Matrix& adjacency);

/// Power iteration, tolerance 1e-9, at most 1000 iterations.
Vector eigenvector_centrality(const Matrix& adjacency);

} // namespace grv
