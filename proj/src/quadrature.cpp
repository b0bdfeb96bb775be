#include "fourwell/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fourwell {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1]
constexpr double kNodes[8] = {
    -0.9602898564975362316836, -0.7966664774136267395916, -0.5255324099163289858177,
    -0.1834346424956498049395, 0.1834346424956498049395,  0.5255324099163289858177,
    0.7966664774136267395916,  0.9602898564975362316836};
constexpr double kWeights[8] = {
    0.1012285362903762591525, 0.2223810344533744705444, 0.3137066458778872873380,
    0.3626837833783619829652, 0.3626837833783619829652, 0.3137066458778872873380,
    0.2223810344533744705444, 0.1012285362903762591525};

void axis_nodes(double lo, double hi, int panels, std::vector<double>& xs,
                std::vector<double>& ws) {
    xs.clear();
    ws.clear();
    const double step = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * step;
        for (int k = 0; k < 8; ++k) {
            xs.push_back(a + 0.5 * step * (kNodes[k] + 1.0));
            ws.push_back(0.5 * step * kWeights[k]);
        }
    }
}

}  // namespace

double integrate_box(const std::function<double(double, double, double)>& f,
                     const Eigen::Vector3d& center, double half_width, double rel_tol,
                     int max_refinements) {
    double previous = 0.0;
    bool have_previous = false;
    std::vector<double> xs, ws;
    for (int level = 0; level <= max_refinements; ++level) {
        axis_nodes(-half_width, half_width, 1 << level, xs, ws);
        const int n = static_cast<int>(xs.size());
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double plane = 0.0;
            for (int j = 0; j < n; ++j) {
                double line = 0.0;
                for (int k = 0; k < n; ++k)
                    line += ws[k] * f(center.x() + xs[i], center.y() + xs[j], center.z() + xs[k]);
                plane += ws[j] * line;
            }
            total += ws[i] * plane;
        }
        if (have_previous &&
            std::abs(total - previous) <= rel_tol * std::max(std::abs(total), 1e-300))
            return total;
        previous = total;
        have_previous = true;
    }
    throw std::runtime_error("integrate_box: refinement failed to converge");
}

}  // namespace fourwell
