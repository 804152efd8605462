#include "grv/downstream.hpp"

#include "grv/kernels.hpp"
#include "grv/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace grv {

Vector LogisticModel::scores(const Vector& features) const {
    Vector out(num_classes);
    if (num_classes == 2 && weights.rows() == 1) {
        const double p = sigmoid(weights.row(0).dot(features) + bias(0));
        out << 1.0 - p, p;
    } else {
        for (int c = 0; c < num_classes; ++c)
            out(c) = sigmoid(weights.row(c).dot(features) + bias(c));
    }
    return out;
}

int LogisticModel::predict(const Vector& features) const {
    Index best = 0;
    scores(features).maxCoeff(&best);
    return static_cast<int>(best);
}

LogisticModel logistic_regression_fit(const Matrix& features,
                                      const std::vector<int>& labels,
                                      double learning_rate, Index epochs,
                                      std::uint64_t /*seed*/) {
    const Index n = features.rows();
    if (static_cast<Index>(labels.size()) != n)
        throw std::invalid_argument("logistic_regression_fit: label count mismatch");
    const int num_classes = 1 + *std::max_element(labels.begin(), labels.end());
    if (std::set<int>(labels.begin(), labels.end()).size() < 2)
        throw std::invalid_argument("logistic_regression_fit: single-class training set");

    const Index dim = features.cols();
    const Index rows = (num_classes == 2) ? 1 : num_classes;
    LogisticModel model;
    model.num_classes = num_classes;
    model.weights = Matrix::Zero(rows, dim);
    model.bias = Vector::Zero(rows);

    const double inv_n = 1.0 / static_cast<double>(n);
    for (Index epoch = 0; epoch < epochs; ++epoch) {
        for (Index c = 0; c < rows; ++c) {
            Vector grad_w = Vector::Zero(dim);
            double grad_b = 0.0;
            for (Index i = 0; i < n; ++i) {
                const double target =
                    (rows == 1) ? (labels[i] == 1 ? 1.0 : 0.0)
                                : (labels[i] == static_cast<int>(c) ? 1.0 : 0.0);
                const double p = sigmoid(model.weights.row(c).dot(features.row(i)) + model.bias(c));
                const double err = p - target;
                grad_w += err * features.row(i).transpose();
                grad_b += err;
            }
            model.weights.row(c) -= learning_rate * inv_n * grad_w.transpose();
            model.bias(c) -= learning_rate * inv_n * grad_b;
        }
    }
    return model;
}

double accuracy(const LogisticModel& model, const Matrix& features,
                const std::vector<int>& labels) {
    Index correct = 0;
    for (Index i = 0; i < features.rows(); ++i)
        if (model.predict(features.row(i)) == labels[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(features.rows());
}

Vector link_features(const Vector& z_u, const Vector& z_v) {
    if (z_u.size() != z_v.size())
        throw std::invalid_argument("link_features: dimension mismatch");
    return z_u.cwiseProduct(z_v);
}

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("auc: length mismatch");
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Midranks over tie groups, then the Mann-Whitney U from positive ranks.
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) rank[order[t]] = mid;
        i = j + 1;
    }

    double rank_sum = 0.0;
    std::size_t positives = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (labels[t] == 1) {
            rank_sum += rank[t];
            ++positives;
        }
    }
    const std::size_t negatives = n - positives;
    if (positives == 0 || negatives == 0)
        throw std::invalid_argument("auc: need both classes");
    const double u = rank_sum - 0.5 * static_cast<double>(positives) *
                                    static_cast<double>(positives + 1);
    return u / (static_cast<double>(positives) * static_cast<double>(negatives));
}

KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed) {
    const Index n = points.rows();
    if (k < 1 || k > n) throw std::invalid_argument("kmeans: need 1 <= k <= n");
    auto rng = make_rng(seed);

    // k-means++ seeding.
    Matrix centroids(k, points.cols());
    std::uniform_int_distribution<Index> first(0, n - 1);
    centroids.row(0) = points.row(first(rng));
    Vector dist2 = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
    for (int c = 1; c < k; ++c) {
        const double total = dist2.sum();
        Index chosen = 0;
        if (total > 0.0) {
            std::uniform_real_distribution<double> unit(0.0, total);
            double r = unit(rng);
            for (Index p = 0; p < n; ++p) {
                r -= dist2(p);
                if (r <= 0.0) {
                    chosen = p;
                    break;
                }
            }
        } else {
            chosen = first(rng);
        }
        centroids.row(c) = points.row(chosen);
        dist2 = dist2.cwiseMin(
            (points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
    }

    KMeansResult result;
    result.assignment.assign(n, 0);
    double prev_inertia = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 300; ++iter) {
        double inertia = 0.0;
        bool changed = false;
        for (Index p = 0; p < n; ++p) {
            Index best = 0;
            const double d =
                (centroids.rowwise() - points.row(p)).rowwise().squaredNorm().minCoeff(&best);
            inertia += d;
            if (result.assignment[p] != static_cast<int>(best)) {
                result.assignment[p] = static_cast<int>(best);
                changed = true;
            }
        }
        if (inertia > prev_inertia + 1e-9)
            throw std::logic_error("kmeans: inertia increased");
        prev_inertia = inertia;
        result.inertia = inertia;
        if (!changed && iter > 0) break;

        // Update step; empty clusters grab the globally farthest point.
        Matrix sums = Matrix::Zero(k, points.cols());
        std::vector<Index> counts(k, 0);
        for (Index p = 0; p < n; ++p) {
            sums.row(result.assignment[p]) += points.row(p);
            ++counts[result.assignment[p]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                centroids.row(c) = sums.row(c) / static_cast<double>(counts[c]);
            } else {
                Index farthest = 0;
                double worst = -1.0;
                for (Index p = 0; p < n; ++p) {
                    const double d = (points.row(p) -
                                      centroids.row(result.assignment[p])).squaredNorm();
                    if (d > worst) {
                        worst = d;
                        farthest = p;
                    }
                }
                centroids.row(c) = points.row(farthest);
            }
        }
    }
    result.centroids = centroids;
    return result;
}

double nmi(const std::vector<int>& labels_a, const std::vector<int>& labels_b) {
    if (labels_a.size() != labels_b.size() || labels_a.empty())
        throw std::invalid_argument("nmi: length mismatch or empty input");
    const double n = static_cast<double>(labels_a.size());
    const int ka = 1 + *std::max_element(labels_a.begin(), labels_a.end());
    const int kb = 1 + *std::max_element(labels_b.begin(), labels_b.end());

    Matrix counts = Matrix::Zero(ka, kb);
    for (std::size_t i = 0; i < labels_a.size(); ++i)
        counts(labels_a[i], labels_b[i]) += 1.0;
    const Vector row = counts.rowwise().sum();
    const Vector col = counts.colwise().sum().transpose();

    const auto entropy = [&](const Vector& marginal) {
        double h = 0.0;
        for (Index i = 0; i < marginal.size(); ++i)
            if (marginal(i) > 0.0) {
                const double p = marginal(i) / n;
                h -= p * std::log(p);
            }
        return h;
    };
    const double ha = entropy(row);
    const double hb = entropy(col);
    if (ha == 0.0 && hb == 0.0) return 1.0;  // both single-cluster
    if (ha == 0.0 || hb == 0.0) return 0.0;

    double mi = 0.0;
    for (Index a = 0; a < ka; ++a)
        for (Index b = 0; b < kb; ++b)
            if (counts(a, b) > 0.0) {
                const double p = counts(a, b) / n;
                mi += p * std::log(p * n * n / (row(a) * col(b)));
            }
    return mi / std::sqrt(ha * hb);
}

Vector betweenness_centrality(const Matrix& adjacency) {
    const Index n = adjacency.rows();
    Vector centrality = Vector::Zero(n);
    std::vector<std::vector<Index>> neighbors(n);
    for (Index u = 0; u < n; ++u)
        for (Index v = 0; v < n; ++v)
            if (adjacency(u, v) != 0.0) neighbors[u].push_back(v);

    for (Index source = 0; source < n; ++source) {
        std::vector<Index> order;
        std::vector<std::vector<Index>> predecessors(n);
        std::vector<double> sigma(n, 0.0);
        std::vector<Index> dist(n, -1);
        sigma[source] = 1.0;
        dist[source] = 0;
        std::deque<Index> queue{source};
        while (!queue.empty()) {
            const Index v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (Index w : neighbors[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    predecessors[w].push_back(v);
                }
            }
        }
        std::vector<double> delta(n, 0.0);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const Index w = *it;
            for (Index v : predecessors[w])
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != source) centrality(w) += delta[w];
        }
    }
    return centrality / 2.0;  // each undirected pair counted twice
}

Vector eigenvector_centrality(const Matrix& adjacency) {
    const Index n = adjacency.rows();
    Vector v = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int iter = 0; iter < 1000; ++iter) {
        Vector next = adjacency * v;
        const double norm = next.norm();
        if (norm == 0.0) return Vector::Zero(n);  // empty graph
        next /= norm;
        if ((next - v).cwiseAbs().maxCoeff() < 1e-9) return next;
        v = next;
    }
    return v;
}

Graph centrality_attack(const Graph& graph, Index delta, CentralityKind kind) {
    const Index n = graph.num_nodes();
    if (delta > num_slots(n))
        throw std::invalid_argument("centrality_attack: delta exceeds candidate slots");

    Vector centrality;
    switch (kind) {
        case CentralityKind::degree:
            centrality = graph.adjacency.rowwise().sum();
            break;
        case CentralityKind::betweenness:
            centrality = betweenness_centrality(graph.adjacency);
            break;
        case CentralityKind::eigenvector:
            centrality = eigenvector_centrality(graph.adjacency);
            break;
    }

    std::vector<Index> slots(num_slots(n));
    std::iota(slots.begin(), slots.end(), Index{0});
    std::stable_sort(slots.begin(), slots.end(), [&](Index a, Index b) {
        const auto [ai, aj] = slot_pair(a, n);
        const auto [bi, bj] = slot_pair(b, n);
        const double sa = centrality(ai) + centrality(aj);
        const double sb = centrality(bi) + centrality(bj);
        if (sa != sb) return sa > sb;
        return a < b;
    });

    Graph out = graph;
    for (Index t = 0; t < delta; ++t) {
        const auto [i, j] = slot_pair(slots[t], n);
        const double flipped = 1.0 - out.adjacency(i, j);
        out.adjacency(i, j) = flipped;
        out.adjacency(j, i) = flipped;
    }
    return out;
}

} // namespace grv
