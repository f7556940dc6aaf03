#pragma once

#include <Eigen/Dense>
#include <functional>

namespace mtn {

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Nelder-Mead downhill simplex.
MinimizeResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, double step = 0.1, int max_eval = 2000,
                           double ftol = 1e-10, double xtol = 1e-8);

// Golden-section minimization of a unimodal 1-d function on [a, b].
MinimizeResult golden_section(const std::function<double(double)>& f, double a, double b,
                              double xtol = 1e-6, int max_eval = 200);

// Polak-Ribiere conjugate gradient ascent with backtracking line search.
// grad(x) must return the ascent direction's gradient of f.
MinimizeResult gradient_ascent(const std::function<double(const Eigen::VectorXd&)>& f,
                               const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
                               const Eigen::VectorXd& x0, int max_iter = 500, double gtol = 1e-10);

}  // namespace mtn
