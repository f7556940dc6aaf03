#include "mtn/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace mtn {

MinimizeResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, double step, int max_eval, double ftol,
                           double xtol) {
  const int n = static_cast<int>(x0.size());
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  std::vector<Eigen::VectorXd> x(n + 1, x0);
  for (int i = 0; i < n; ++i) x[i + 1](i) += step;
  std::vector<double> fx(n + 1);
  int evals = 0;
  for (int i = 0; i <= n; ++i) fx[i] = f(x[i]), ++evals;

  std::vector<int> idx(n + 1);
  std::iota(idx.begin(), idx.end(), 0);
  MinimizeResult res;
  while (evals < max_eval) {
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    const double fbest = fx[idx[0]], fworst = fx[idx[n]];
    double spread = 0.0;
    for (int i = 1; i <= n; ++i) spread = std::max(spread, (x[idx[i]] - x[idx[0]]).cwiseAbs().maxCoeff());
    if (std::abs(fworst - fbest) <= ftol && spread <= xtol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd xc = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) xc += x[idx[i]];
    xc /= n;
    Eigen::VectorXd xr = xc + alpha * (xc - x[idx[n]]);
    double fr = f(xr);
    ++evals;
    if (fr < fbest) {
      Eigen::VectorXd xe = xc + gamma * (xr - xc);
      double fe = f(xe);
      ++evals;
      if (fe < fr) {
        x[idx[n]] = xe;
        fx[idx[n]] = fe;
      } else {
        x[idx[n]] = xr;
        fx[idx[n]] = fr;
      }
      continue;
    }
    if (fr < fx[idx[n - 1]]) {
      x[idx[n]] = xr;
      fx[idx[n]] = fr;
      continue;
    }
    Eigen::VectorXd xk = (fr < fworst) ? (xc + rho * (xr - xc)).eval() : (xc + rho * (x[idx[n]] - xc)).eval();
    double fk = f(xk);
    ++evals;
    if (fk < std::min(fr, fworst)) {
      x[idx[n]] = xk;
      fx[idx[n]] = fk;
      continue;
    }
    for (int i = 1; i <= n; ++i) {
      x[idx[i]] = x[idx[0]] + sigma * (x[idx[i]] - x[idx[0]]);
      fx[idx[i]] = f(x[idx[i]]);
      ++evals;
    }
  }
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
  res.x = x[idx[0]];
  res.value = fx[idx[0]];
  res.evaluations = evals;
  return res;
}

MinimizeResult golden_section(const std::function<double(double)>& f, double a, double b,
                              double xtol, int max_eval) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  int evals = 2;
  while (b - a > xtol && evals < max_eval) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  MinimizeResult res;
  double xm = 0.5 * (a + b);
  res.x = Eigen::VectorXd::Constant(1, xm);
  res.value = f(xm);
  res.evaluations = evals + 1;
  res.converged = (b - a) <= xtol;
  return res;
}

MinimizeResult gradient_ascent(const std::function<double(const Eigen::VectorXd&)>& f,
                               const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
                               const Eigen::VectorXd& x0, int max_iter, double gtol) {
  Eigen::VectorXd x = x0;
  double fx = f(x);
  Eigen::VectorXd g = grad(x);
  Eigen::VectorXd dir = g;
  int evals = 2;
  MinimizeResult res;
  for (int it = 0; it < max_iter; ++it) {
    if (g.norm() < gtol) {
      res.converged = true;
      break;
    }
    double t = 1.0;
    double slope = g.dot(dir);
    if (slope <= 0) {
      dir = g;
      slope = g.squaredNorm();
    }
    double fn = fx;
    Eigen::VectorXd xn = x;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + t * dir;
      fn = f(xn);
      ++evals;
      if (fn >= fx + 1e-4 * t * slope) break;
      t *= 0.5;
    }
    if (fn <= fx) {
      res.converged = g.norm() < 1e-6;
      break;
    }
    Eigen::VectorXd gn = grad(xn);
    ++evals;
    double beta = std::max(0.0, gn.dot(gn - g) / std::max(g.squaredNorm(), 1e-300));
    dir = gn + beta * dir;
    x = xn;
    fx = fn;
    g = gn;
  }
  res.x = x;
  res.value = fx;
  res.evaluations = evals;
  return res;
}

}  // namespace mtn
