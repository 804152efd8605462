#include "doctest.h"

#include "grv/kernels.hpp"
#include "grv/rng.hpp"

#include <cmath>

using namespace grv;

namespace {

// Random matrix with entries displaced from the ReLU kink.
Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng, double min_abs = 0.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) {
            double v = gauss(rng);
            if (min_abs > 0.0 && std::abs(v) < min_abs) v = v < 0.0 ? -min_abs : min_abs;
            m(i, j) = v;
        }
    return m;
}

Vector flatten(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

} // namespace

TEST_CASE("sigmoid basics") {
    CHECK(sigmoid(0.0) == doctest::Approx(0.5));
    CHECK(sigmoid(100.0) == doctest::Approx(1.0));
    CHECK(sigmoid(-100.0) == doctest::Approx(0.0));
    CHECK(std::isfinite(sigmoid(-1000.0)));
}

TEST_CASE("relu backward is zero at negative pre-activations") {
    Matrix pre(1, 3);
    pre << -1.0, 0.0, 2.0;
    Matrix upstream = Matrix::Ones(1, 3);
    const Matrix grad = relu_backward(pre, upstream);
    CHECK(grad(0, 0) == 0.0);
    CHECK(grad(0, 1) == 0.0);  // subgradient at the kink is 0 by convention
    CHECK(grad(0, 2) == 1.0);
}

TEST_CASE("each kernel matches central differences at random points") {
    auto rng = make_rng(5);
    const double step = 1e-4;
    for (int trial = 0; trial < 10; ++trial) {
        // relu: scalar loss = sum(relu(X) .* W) for a fixed weight W.
        {
            const Matrix x = random_matrix(3, 4, rng, 1e-2);
            const Matrix w = random_matrix(3, 4, rng);
            const auto f = [&](const Vector& v) {
                Eigen::Map<const Matrix> m(v.data(), 3, 4);
                return relu_forward(m).cwiseProduct(w).sum();
            };
            const Matrix analytic = relu_backward(x, w);
            CHECK(grad_check(f, flatten(x), flatten(analytic), step) < 1e-5);
        }
        // sigmoid
        {
            const Matrix x = random_matrix(2, 3, rng);
            const Matrix w = random_matrix(2, 3, rng);
            const auto f = [&](const Vector& v) {
                Eigen::Map<const Matrix> m(v.data(), 2, 3);
                return sigmoid_forward(Matrix(m)).cwiseProduct(w).sum();
            };
            const Matrix analytic = sigmoid_backward(sigmoid_forward(x), w);
            CHECK(grad_check(f, flatten(x), flatten(analytic), step) < 1e-5);
        }
        // matmul, both operands, 4x3 * 3x2
        {
            const Matrix a = random_matrix(4, 3, rng);
            const Matrix b = random_matrix(3, 2, rng);
            const Matrix w = random_matrix(4, 2, rng);
            const auto [da, db] = matmul_backward(a, b, w);
            const auto fa = [&](const Vector& v) {
                Eigen::Map<const Matrix> m(v.data(), 4, 3);
                return (m * b).cwiseProduct(w).sum();
            };
            const auto fb = [&](const Vector& v) {
                Eigen::Map<const Matrix> m(v.data(), 3, 2);
                return (a * m).cwiseProduct(w).sum();
            };
            CHECK(grad_check(fa, flatten(a), flatten(da), step) < 1e-5);
            CHECK(grad_check(fb, flatten(b), flatten(db), step) < 1e-5);
        }
    }
}

TEST_CASE("grad_check on an exact quadratic") {
    const auto f = [](const Vector& v) { return v.squaredNorm(); };
    Vector point(2);
    point << 1.0, 2.0;
    Vector analytic(2);
    analytic << 2.0, 4.0;
    CHECK(grad_check(f, point, analytic, 1e-4) < 1e-9);
}

TEST_CASE("grad_check flags wrong gradients and non-finite values") {
    const auto f = [](const Vector& v) { return v.squaredNorm(); };
    Vector point(1);
    point << 1.0;
    Vector wrong(1);
    wrong << 3.0;
    CHECK(grad_check(f, point, wrong, 1e-4) > 0.1);

    const auto bad = [](const Vector& v) { return std::log(v(0)); };
    Vector origin(1);
    origin << 0.0;
    Vector any(1);
    any << 1.0;
    CHECK_THROWS_AS(grad_check(bad, origin, any, 1e-4), std::runtime_error);
}

TEST_CASE("backward passes are deterministic") {
    auto rng = make_rng(9);
    const Matrix x = random_matrix(3, 3, rng, 1e-2);
    const Matrix w = random_matrix(3, 3, rng);
    const Matrix first = relu_backward(x, w);
    const Matrix second = relu_backward(x, w);
    CHECK(first == second);
}

TEST_CASE("shape mismatches throw") {
    CHECK_THROWS_AS(matmul_forward(Matrix::Zero(2, 3), Matrix::Zero(2, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(relu_backward(Matrix::Zero(2, 2), Matrix::Zero(3, 3)),
                    std::invalid_argument);
}
