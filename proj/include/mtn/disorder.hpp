#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mtn {

struct DecayProfile {
  Eigen::VectorXd c;      // c(d), d = 0..2N-1 (c(0) unused)
  double exponent = 0.0;  // fitted power p of c(d) ~ d^-p
  int fit_min = 0;
  int fit_max = 0;
};

// c(d) = (1/2N) sum_j |Gamma_{j,(j+d) mod 2N}|, least-squares log-log fit over
// odd d in [fit_min, fit_max]; fit_max defaults to 2N/3.
DecayProfile correlation_decay(const Eigen::MatrixXd& gamma, int fit_min = 5, int fit_max = -1);

// Gamma_jk / c(j-k); entries with c = 0 (even separations) stay zero and are
// reported through the mask.
Eigen::MatrixXd decay_adjust(const Eigen::MatrixXd& gamma, const DecayProfile& profile,
                             Eigen::MatrixXi* mask = nullptr);

// Row-averaged estimator at the tiling's symmetry offset. symmetry_fraction
// 1./3 averages a third of the system at offset 2N/3 ({3,7}); 1./2 averages
// half at offset N/2 ({4,5}). Normalized to mean 1; wrapped entries enter with
// the antiperiodic sign removed.
Eigen::VectorXd extract_disorder(const Eigen::MatrixXd& gamma_adjusted, double symmetry_fraction);

struct HProfile {
  Eigen::VectorXd h;   // h_k = sum_{j<=k} g_j^2
  double score = 0.0;  // max_k |h_k - k h_n / n| / h_n over k >= min_scale
};

HProfile h_profile(const Eigen::VectorXd& g, int min_scale = 0);

// F = <g, g'> / (|g| |g'|)
double sequence_fidelity(const Eigen::VectorXd& g, const Eigen::VectorXd& gp);

struct TranslationScan {
  Eigen::VectorXd offsets;   // delta values
  Eigen::VectorXd fidelity;  // F(delta)
  double baseline = 0.0;     // median of F
  std::vector<int> peaks;    // offsets with F > peak_threshold
};

TranslationScan translation_scan(const Eigen::VectorXd& g, int subsystem, int max_offset = -1,
                                 double peak_threshold = 0.99);

// G^2_1site(d) = sum_k g_{2k} g_{2k+d};
// G^2_2site(2d) = sum_k g_{2k-1} g_{2k} g_{2k+2d-1} g_{2k+2d} (cyclic)
double disorder_autocorrelation(const Eigen::VectorXd& g, int block, int d);

struct AveragedTwoPoint {
  Eigen::VectorXd d;            // site distances
  Eigen::VectorXd psi_direct;   // (1/N) sum <psi_k psi_{k+d}>
  Eigen::VectorXd psi_factored; // via Gamma'(2d-1) G^2(2d-1) + Gamma'(2d+1) G^2(2d+1)
  Eigen::VectorXd eps_direct;   // connected <eps eps>
  Eigen::VectorXd eps_factored;
  double psi_max_rel_dev = 0.0;
  double eps_max_rel_dev = 0.0;
};

AveragedTwoPoint averaged_two_point(const Eigen::MatrixXd& gamma, const Eigen::VectorXd& g,
                                    int d_min = 3, int d_max = -1);

// mean-preserving piecewise-constant resampling (cyclic source)
Eigen::VectorXd resample_mean(const Eigen::VectorXd& x, int bins, int start = 0, int span = -1);

// Self-similarity between a small system's disorder and the large one: the
// large vector's windows of length small*lambda^steps are resampled to the
// small length at site resolution and compared over all offsets; returns the
// best fidelity. This is the subsystem-vs-rescaled-total diagnostic.
double subsystem_self_similarity(const Eigen::VectorXd& g_small, const Eigen::VectorXd& g_large,
                                 double lambda, int steps, int* best_offset = nullptr);

}  // namespace mtn
