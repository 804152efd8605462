#pragma once

#include "grv/types.hpp"

#include <functional>

namespace grv {

// Elementwise and matrix kernels with hand-derived backward passes. The
// pipeline is a fixed shallow composition, so there is no autodiff graph;
// every backward takes the cached forward operand it needs.

Matrix relu_forward(const Matrix& pre);
/// Gradient w.r.t. the pre-activation. Subgradient at exactly 0 is 0.
Matrix relu_backward(const Matrix& pre, const Matrix& upstream);

double sigmoid(double x);
Matrix sigmoid_forward(const Matrix& pre);
Vector sigmoid_forward(const Vector& pre);
/// Takes the forward *output* (sigmoid'(x) = s(1-s)).
Matrix sigmoid_backward(const Matrix& output, const Matrix& upstream);
Vector sigmoid_backward(const Vector& output, const Vector& upstream);

Matrix matmul_forward(const Matrix& lhs, const Matrix& rhs);
/// Gradients of a scalar loss w.r.t. both operands of lhs * rhs.
std::pair<Matrix, Matrix> matmul_backward(const Matrix& lhs, const Matrix& rhs,
                                          const Matrix& upstream);

/// Central-difference gradient checker: the universal numerical oracle.
/// Returns max_i |analytic_i - central_i| / (|central_i| + 1e-8).
/// Throws std::runtime_error on non-finite function values.
double grad_check(const std::function<double(const Vector&)>& f, const Vector& point,
                  const Vector& analytic, double step);

} // namespace grv
