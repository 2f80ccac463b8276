#pragma once

#include "kinfluid/field.hpp"

namespace kinfluid {

/// Second-order centered first difference along one axis, periodic wrap.
ScalarField diff_centered(const ScalarField& g, int axis);

/// Centered divergence of a vector field.
ScalarField divergence_centered(const VectorField& g);

/// Centered gradient of a scalar field.
VectorField gradient_centered(const ScalarField& g);

/// Standard (2N+1)-point Laplacian, periodic wrap.
ScalarField laplacian_centered(const ScalarField& g);

/// Discrete integral of the squared Jacobian, sum_{a,b} |d_b u_a|^2 h^N,
/// with centered differences.
double grad_sq_integral(const VectorField& u);

/// Discrete integral of |div u|^2 h^N with centered differences.
double div_sq_integral(const VectorField& u);

}  // namespace kinfluid
