#pragma once

#include <Eigen/Dense>

#include <functional>

namespace fourwell {

/// Integral of f over the cube [center - h, center + h]^3 by a tensor-product
/// composite Gauss-Legendre rule (8 nodes per panel). Panels are doubled per
/// axis until two consecutive refinements agree to rel_tol; throws
/// std::runtime_error when refinement fails to converge.
double integrate_box(const std::function<double(double, double, double)>& f,
                     const Eigen::Vector3d& center, double half_width,
                     double rel_tol = 1e-8, int max_refinements = 6);

}  // namespace fourwell
