#include "mtn/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mtn {

DecayProfile correlation_decay(const Eigen::MatrixXd& gamma, int fit_min, int fit_max) {
  const int n2 = static_cast<int>(gamma.rows());
  if (n2 < 4) throw std::invalid_argument("correlation_decay: matrix too small");
  DecayProfile prof;
  prof.c = Eigen::VectorXd::Zero(n2);
  for (int d = 1; d < n2; ++d) {
    double s = 0.0;
    for (int j = 0; j < n2; ++j) s += std::abs(gamma(j, (j + d) % n2));
    prof.c(d) = s / n2;
  }
  if (fit_max < 0) fit_max = n2 / 3;  // 2N/3 Majorana separations
  prof.fit_min = fit_min;
  prof.fit_max = fit_max;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int d = fit_min; d <= fit_max; ++d) {
    if (d % 2 == 0 || prof.c(d) <= 0) continue;
    double x = std::log(static_cast<double>(d)), y = std::log(prof.c(d));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) throw std::runtime_error("correlation_decay: no nonzero entries in the fit window");
  prof.exponent = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
  return prof;
}

Eigen::MatrixXd decay_adjust(const Eigen::MatrixXd& gamma, const DecayProfile& profile,
                             Eigen::MatrixXi* mask) {
  const int n2 = static_cast<int>(gamma.rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n2, n2);
  if (mask) *mask = Eigen::MatrixXi::Zero(n2, n2);
  for (int j = 0; j < n2; ++j)
    for (int k = 0; k < n2; ++k) {
      if (j == k) continue;
      const int d = ((k - j) % n2 + n2) % n2;
      if (profile.c(d) <= 1e-300) {
        if (mask && gamma(j, k) != 0.0) (*mask)(j, k) = 1;
        continue;
      }
      out(j, k) = gamma(j, k) / profile.c(d);
    }
  return out;
}

Eigen::VectorXd extract_disorder(const Eigen::MatrixXd& gamma_adjusted, double symmetry_fraction) {
  const int n2 = static_cast<int>(gamma_adjusted.rows());
  int offset, window;
  if (std::abs(symmetry_fraction - 1.0 / 3.0) < 1e-9) {
    if (n2 % 3) throw std::invalid_argument("extract_disorder: 2N not divisible by 3");
    offset = n2 / 3;
    window = n2 / 3;
  } else if (std::abs(symmetry_fraction - 0.5) < 1e-9) {
    if (n2 % 4) throw std::invalid_argument("extract_disorder: 2N not divisible by 4");
    offset = n2 / 4;
    window = n2 / 2;
  } else {
    throw std::invalid_argument("extract_disorder: symmetry fraction must be 1/3 or 1/2");
  }
  Eigen::VectorXd num = Eigen::VectorXd::Zero(n2);
  for (int j = 0; j < n2; ++j) {
    double s = 0.0;
    for (int k = 1; k <= window; ++k) {
      const int raw = j + offset + k;
      double e = gamma_adjusted(j, raw % n2);
      if (raw >= n2) e = -e;  // antiperiodic wrap sign
      s += e;
    }
    num(j) = s;
  }
  double ng = num.head(offset).mean();  // one symmetry cell
  if (std::abs(ng) < 1e-300) throw std::runtime_error("extract_disorder: vanishing normalization");
  Eigen::VectorXd g = num / ng;
  g /= g.mean();
  if (g.minCoeff() <= 0) throw std::runtime_error("extract_disorder: nonpositive disorder value");
  return g;
}

HProfile h_profile(const Eigen::VectorXd& g, int min_scale) {
  const int n = static_cast<int>(g.size());
  HProfile out;
  out.h = Eigen::VectorXd::Zero(n);
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    acc += g(k) * g(k);
    out.h(k) = acc;
  }
  const double total = out.h(n - 1);
  double worst = 0.0;
  for (int k = std::max(0, min_scale); k < n; ++k)
    worst = std::max(worst, std::abs(out.h(k) - (k + 1) * total / n) / total);
  out.score = worst;
  return out;
}

double sequence_fidelity(const Eigen::VectorXd& g, const Eigen::VectorXd& gp) {
  if (g.size() != gp.size()) throw std::invalid_argument("sequence_fidelity: length mismatch");
  const double na = g.norm(), nb = gp.norm();
  if (na <= 0 || nb <= 0) throw std::invalid_argument("sequence_fidelity: zero norm");
  return g.dot(gp) / (na * nb);
}

TranslationScan translation_scan(const Eigen::VectorXd& g, int subsystem, int max_offset,
                                 double peak_threshold) {
  const int n = static_cast<int>(g.size());
  if (subsystem <= 0 || subsystem >= n) throw std::invalid_argument("translation_scan: bad subsystem");
  if (max_offset < 0) max_offset = 2 * n / 3;
  TranslationScan scan;
  scan.offsets.resize(max_offset);
  scan.fidelity.resize(max_offset);
  Eigen::VectorXd base = g.head(subsystem);
  for (int d = 1; d <= max_offset; ++d) {
    Eigen::VectorXd win(subsystem);
    for (int i = 0; i < subsystem; ++i) win(i) = g((d + i) % n);
    scan.offsets(d - 1) = d;
    scan.fidelity(d - 1) = sequence_fidelity(base, win);
    if (scan.fidelity(d - 1) > peak_threshold) scan.peaks.push_back(d);
  }
  std::vector<double> sorted(scan.fidelity.data(), scan.fidelity.data() + max_offset);
  std::nth_element(sorted.begin(), sorted.begin() + max_offset / 2, sorted.end());
  scan.baseline = sorted[max_offset / 2];
  return scan;
}

double disorder_autocorrelation(const Eigen::VectorXd& g, int block, int d) {
  const int n2 = static_cast<int>(g.size());
  const int n = n2 / 2;
  double s = 0.0;
  if (block == 1) {
    for (int k = 0; k < n; ++k) s += g((2 * k + 1) % n2) * g((2 * k + 1 + d) % n2);
  } else if (block == 2) {
    if (d % 2) throw std::invalid_argument("disorder_autocorrelation: 2-site block needs even d");
    for (int k = 0; k < n; ++k)
      s += g(2 * k) * g(2 * k + 1) * g((2 * k + d) % n2) * g((2 * k + 1 + d) % n2);
  } else {
    throw std::invalid_argument("disorder_autocorrelation: block must be 1 or 2");
  }
  return s;
}

AveragedTwoPoint averaged_two_point(const Eigen::MatrixXd& gamma, const Eigen::VectorXd& g,
                                    int d_min, int d_max) {
  const int n2 = static_cast<int>(gamma.rows());
  const int n = n2 / 2;
  if (g.size() != n2) throw std::invalid_argument("averaged_two_point: g length mismatch");
  if (d_max < 0) d_max = n / 3;
  DecayProfile prof = correlation_decay(gamma);
  auto gamma_prime = [&](int delta) {
    // translation-invariant reference: Gamma'(delta) = -c(delta) for odd delta > 0
    return -prof.c(((delta) % n2 + n2) % n2);
  };
  auto entry = [&](int j, int k) {  // antiperiodic-smooth reading of Gamma_{j, j+dd}
    int raw = k;
    double sgn = 1.0;
    while (raw >= n2) raw -= n2, sgn = -sgn;
    return sgn * gamma(j, raw);
  };
  AveragedTwoPoint out;
  const int rows = d_max - d_min + 1;
  out.d.resize(rows);
  out.psi_direct.resize(rows);
  out.psi_factored.resize(rows);
  out.eps_direct.resize(rows);
  out.eps_factored.resize(rows);
  for (int r = 0; r < rows; ++r) {
    const int d = d_min + r;
    double psi = 0.0, eps = 0.0;
    for (int k = 0; k < n; ++k) {
      // sites k and k+d: majoranas (2k, 2k+1) and (2k+2d, 2k+2d+1), 0-based
      const int j1 = 2 * k + 1, j2 = 2 * k;
      psi += 0.25 * (entry(j1, 2 * k + 2 * d) + entry(j2, 2 * k + 2 * d + 1));
      eps += 0.25 * entry(j2, 2 * k + 2 * d + 1) * entry(j1, 2 * k + 2 * d);
    }
    psi /= n;
    eps /= n;
    const double g1a = disorder_autocorrelation(g, 1, 2 * d - 1);
    const double g1b = disorder_autocorrelation(g, 1, 2 * d + 1);
    double psi_f = (gamma_prime(2 * d - 1) * g1a + gamma_prime(2 * d + 1) * g1b) / (4.0 * n);
    double eps_f = gamma_prime(2 * d - 1) * gamma_prime(2 * d + 1) *
                   disorder_autocorrelation(g, 2, 2 * d) / (4.0 * n);
    out.d(r) = d;
    out.psi_direct(r) = psi;
    out.psi_factored(r) = psi_f;
    out.eps_direct(r) = eps;
    out.eps_factored(r) = eps_f;
    out.psi_max_rel_dev = std::max(out.psi_max_rel_dev, std::abs(psi - psi_f) / std::abs(psi));
    out.eps_max_rel_dev = std::max(out.eps_max_rel_dev, std::abs(eps - eps_f) / std::abs(eps));
  }
  return out;
}

Eigen::VectorXd resample_mean(const Eigen::VectorXd& x, int bins, int start, int span) {
  const int n = static_cast<int>(x.size());
  if (span < 0) span = n;
  Eigen::VectorXd out(bins);
  const double r = static_cast<double>(span) / bins;
  for (int i = 0; i < bins; ++i) {
    const double a = i * r, b = (i + 1) * r;
    double s = 0.0;
    for (int j = static_cast<int>(std::floor(a)); j < static_cast<int>(std::ceil(b)); ++j) {
      const double lo = std::max(a, static_cast<double>(j));
      const double hi = std::min(b, static_cast<double>(j + 1));
      if (hi > lo) s += x((start + (j % n) + n) % n) * (hi - lo);
    }
    out(i) = s / r;
  }
  return out;
}

double subsystem_self_similarity(const Eigen::VectorXd& g_small, const Eigen::VectorXd& g_large,
                                 double lambda, int steps, int* best_offset) {
  const int n2s = static_cast<int>(g_small.size());
  const int n2l = static_cast<int>(g_large.size());
  const int sites = n2s / 2;
  // per-site values, then windows covering sites*lambda^steps large-system sites
  Eigen::VectorXd small_sites(sites);
  for (int i = 0; i < sites; ++i) small_sites(i) = 0.5 * (g_small(2 * i) + g_small(2 * i + 1));
  const int lsites = n2l / 2;
  Eigen::VectorXd large_sites(lsites);
  for (int i = 0; i < lsites; ++i) large_sites(i) = 0.5 * (g_large(2 * i) + g_large(2 * i + 1));
  const int span = std::min(lsites, static_cast<int>(std::lround(sites * std::pow(lambda, steps))));
  double best = -1.0;
  for (int d = 0; d < lsites; ++d) {
    Eigen::VectorXd win = resample_mean(large_sites, sites, d, span);
    double f = sequence_fidelity(small_sites, win);
    if (f > best) {
      best = f;
      if (best_offset) *best_offset = d;
    }
  }
  return best;
}

}  // namespace mtn
