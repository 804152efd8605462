#include "grv/graph.hpp"

#include <cmath>

namespace grv {

Index Graph::num_edges() const {
    Index count = 0;
    const Index n = adjacency.rows();
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (adjacency(i, j) != 0.0) ++count;
    return count;
}

void validate_adjacency(const Matrix& adjacency) {
    if (adjacency.rows() != adjacency.cols())
        throw std::invalid_argument("adjacency must be square");
    const Index n = adjacency.rows();
    for (Index i = 0; i < n; ++i) {
        if (adjacency(i, i) != 0.0)
            throw std::invalid_argument("adjacency must have zero diagonal");
        for (Index j = i + 1; j < n; ++j) {
            const double v = adjacency(i, j);
            if (v != adjacency(j, i))
                throw std::invalid_argument("adjacency must be symmetric");
            if (v != 0.0 && v != 1.0)
                throw std::invalid_argument("adjacency entries must be 0 or 1");
        }
    }
}

Index slot_index(Index i, Index j, Index n) {
    if (i > j) std::swap(i, j);
    if (i == j || j >= n || i < 0)
        throw std::invalid_argument("slot_index: need 0 <= i < j < n");
    // Slots of row i start after all rows above it.
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<Index, Index> slot_pair(Index k, Index n) {
    if (k < 0 || k >= num_slots(n))
        throw std::invalid_argument("slot_pair: index out of range");
    Index i = 0;
    while (k >= n - i - 1) {
        k -= n - i - 1;
        ++i;
    }
    return {i, i + 1 + k};
}

Matrix RelaxedAdjacency::dense() const {
    const Index n = base.rows();
    Matrix out = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double a = base(i, j);
            const double v = a + (1.0 - 2.0 * a) * perturb(slot_index(i, j, n));
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return out;
}

Matrix normalize_adjacency(const Matrix& adjacency) {
    if (adjacency.rows() != adjacency.cols())
        throw std::invalid_argument("normalize_adjacency: adjacency must be square");
    if (!adjacency.isApprox(adjacency.transpose()))
        throw std::invalid_argument("normalize_adjacency: adjacency must be symmetric");
    const Index n = adjacency.rows();
    Matrix hat = adjacency + Matrix::Identity(n, n);
    Vector inv_sqrt_deg = hat.rowwise().sum().array().sqrt().inverse();
    return inv_sqrt_deg.asDiagonal() * hat * inv_sqrt_deg.asDiagonal();
}

Matrix materialize(const RelaxedAdjacency& relaxed, const Vector& sample, Index budget) {
    const Index n = relaxed.base.rows();
    if (sample.size() != num_slots(n))
        throw std::invalid_argument("materialize: sample length mismatch");
    Index flips = 0;
    for (Index k = 0; k < sample.size(); ++k) {
        const double s = sample(k);
        if (s != 0.0 && s != 1.0)
            throw std::invalid_argument("materialize: sample entries must be 0 or 1");
        if (s == 1.0) ++flips;
    }
    if (flips > budget)
        throw std::invalid_argument("materialize: sample exceeds flip budget");
    Matrix out = relaxed.base;
    for (Index k = 0; k < sample.size(); ++k) {
        if (sample(k) == 1.0) {
            auto [i, j] = slot_pair(k, n);
            const double a = relaxed.base(i, j);
            out(i, j) = 1.0 - a;
            out(j, i) = 1.0 - a;
        }
    }
    return out;
}

Index flip_distance(const Matrix& a, const Matrix& a_prime) {
    if (a.rows() != a_prime.rows() || a.cols() != a_prime.cols())
        throw std::invalid_argument("flip_distance: shape mismatch");
    Index count = 0;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = i + 1; j < a.cols(); ++j)
            if (a(i, j) != a_prime(i, j)) ++count;
    return count;
}

} // namespace grv
