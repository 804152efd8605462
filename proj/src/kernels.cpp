#include "grv/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace grv {

Matrix relu_forward(const Matrix& pre) { return pre.cwiseMax(0.0); }

Matrix relu_backward(const Matrix& pre, const Matrix& upstream) {
    if (pre.rows() != upstream.rows() || pre.cols() != upstream.cols())
        throw std::invalid_argument("relu_backward: shape mismatch");
    return (pre.array() > 0.0).select(upstream, Matrix::Zero(pre.rows(), pre.cols()));
}

double sigmoid(double x) {
    // Branch keeps exp() argument nonpositive to avoid overflow.
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

Matrix sigmoid_forward(const Matrix& pre) {
    return pre.unaryExpr([](double x) { return sigmoid(x); });
}

Vector sigmoid_forward(const Vector& pre) {
    return pre.unaryExpr([](double x) { return sigmoid(x); });
}

Matrix sigmoid_backward(const Matrix& output, const Matrix& upstream) {
    return upstream.cwiseProduct(output.cwiseProduct(Matrix::Ones(output.rows(), output.cols()) - output));
}

Vector sigmoid_backward(const Vector& output, const Vector& upstream) {
    return upstream.cwiseProduct(output.cwiseProduct(Vector::Ones(output.size()) - output));
}

Matrix matmul_forward(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols() != rhs.rows())
        throw std::invalid_argument("matmul_forward: inner dimensions differ");
    return lhs * rhs;
}

std::pair<Matrix, Matrix> matmul_backward(const Matrix& lhs, const Matrix& rhs,
                                          const Matrix& upstream) {
    if (upstream.rows() != lhs.rows() || upstream.cols() != rhs.cols())
        throw std::invalid_argument("matmul_backward: upstream shape mismatch");
    return {upstream * rhs.transpose(), lhs.transpose() * upstream};
}

double grad_check(const std::function<double(const Vector&)>& f, const Vector& point,
                  const Vector& analytic, double step) {
    if (step <= 0.0) throw std::invalid_argument("grad_check: step must be positive");
    if (analytic.size() != point.size())
        throw std::invalid_argument("grad_check: gradient length mismatch");
    double worst = 0.0;
    Vector probe = point;
    for (Index i = 0; i < point.size(); ++i) {
        probe(i) = point(i) + step;
        const double up = f(probe);
        probe(i) = point(i) - step;
        const double down = f(probe);
        probe(i) = point(i);
        if (!std::isfinite(up) || !std::isfinite(down))
            throw std::runtime_error("grad_check: non-finite function value");
        const double central = (up - down) / (2.0 * step);
        const double rel = std::abs(analytic(i) - central) / (std::abs(central) + 1e-8);
        worst = std::max(worst, rel);
    }
    return worst;
}

} // namespace grv
