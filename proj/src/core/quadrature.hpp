#pragma once

#include <functional>

namespace aw {

// Adaptive Simpson integration for smooth integrands.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, int max_depth = 60);

// Tanh-sinh (double-exponential) rule on [a, b]; converges for integrable
// endpoint singularities, which adaptive Simpson handles poorly.
double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-12);

}  // namespace aw
