#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "mtn/gaussian.hpp"
#include "mtn/matchgate.hpp"
#include "mtn/tiling.hpp"

namespace mtn {

// Uniform bulk input with chi_bulk = 2^k: every tile carries the same
// cyclically symmetric p*k x p*k generating matrix; for k > 1 a cap tensor
// with k+1 single-fermion legs sits on every boundary edge.
struct BulkInput {
  int fermions_per_edge = 1;                // k
  Eigen::VectorXd bulk_params;              // one entry per cyclic orbit
  Eigen::VectorXd cap_params;               // (k+1 choose 2) entries, unused for k = 1
  std::map<int, Eigen::VectorXd> overrides; // tile id -> full orbit parameter set

  static BulkInput uniform(int p, double a);           // chi = 2, single parameter
  static BulkInput uniform45(double a, double b);      // {4,5} chi = 2 two-parameter form
};

// Index pairs of the p*k x p*k matrix grouped by simultaneous leg rotation;
// the shared entry is read at the sorted representative (no sign flips), which
// is what leg-cyclic symmetry of the tensor amounts to.
std::vector<std::vector<std::pair<int, int>>> cyclic_orbits(int p, int k);
int cyclic_orbit_count(int p, int k);

Eigen::MatrixXd cyclic_bulk_matrix(int p, int k, const Eigen::VectorXd& params);
Eigen::MatrixXd cap_matrix(int k, const Eigen::VectorXd& params);

struct BoundaryState {
  Eigen::MatrixXd gamma;     // canonical chain gauge, ccw boundary order
  double log_weight = 0.0;
  int gauge_flips = 0;
  bool antiperiodic = false; // sign of the wrap entry Gamma(0, 2N-1)
};

// Contract the whole network. schedule_offset rotates the per-layer absorption
// start; the result is schedule-independent.
BoundaryState contract_network(const Tiling& t, const BulkInput& input, bool reversed_schedule = false);

struct CriticalPoint {
  double a = 0.0;          // or the common value along a search line
  Eigen::VectorXd params;  // full parameter vector at the optimum
  double energy = 0.0;
  double fidelity_to_ising = 0.0;
  int evaluations = 0;
};

// Minimize <H_Ising> over the uniform chi=2 parameter(s). For p = 4 the search
// can be restricted to the a = b line where one of the degenerate minima lies.
CriticalPoint find_critical_point(const Tiling& t, double lo = 0.05, double hi = 0.95);
CriticalPoint find_critical_point45(const Tiling& t, bool equal_line = true);

// a where the fitted decay exponent of c(d) is smallest (the p = 1 point of
// the site-averaged correlation falloff).
CriticalPoint find_decay_critical(const Tiling& t, double lo = 0.4, double hi = 0.8);

struct HighChiResult {
  BulkInput input;
  BoundaryState state;
  double energy = 0.0;
  double fidelity_to_ising = 0.0;
  int evaluations = 0;
};

// Optimize bulk + cap parameters at fixed k against <H_Ising>; restarts > 1
// perturbs the initial point. `init` seeds from a lower-chi solution.
HighChiResult optimize_high_chi(const Tiling& t, int k, const Eigen::VectorXd& init,
                                int max_eval = 2000, int restarts = 1, unsigned seed = 1);

// chi=2 critical solution embedded into the k-fermion parameter space
Eigen::VectorXd embed_chi2(int p, int k, double a);

}  // namespace mtn
