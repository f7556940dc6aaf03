#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mtn {

// H = i sum_{j,k} M_jk gamma_j gamma_k with real antisymmetric M.
struct QuadraticHamiltonian {
  Eigen::MatrixXd m;

  explicit QuadraticHamiltonian(Eigen::MatrixXd coupling);
  int majoranas() const { return static_cast<int>(m.rows()); }

  // cyclic nearest-neighbor chain: M_{k,k+1} = J_k/2 and M_{1,2N} = J_{2N}/2,
  // the positive-corner convention that makes the closed chain antiperiodic
  static QuadraticHamiltonian nearest_neighbor(const Eigen::VectorXd& couplings);
  static QuadraticHamiltonian ising(int sites);
};

// O M O^T = blocks [[0, lambda_k], [-lambda_k, 0]], lambda sorted ascending.
struct ModeBasis {
  Eigen::MatrixXd o;
  Eigen::VectorXd lambda;
  int modes() const { return static_cast<int>(lambda.size()); }
};

// Via the Hermitian matrix iM; eigenvector phases fixed so the first sizable
// component is positive real (deterministic in degenerate subspaces up to the
// solver's basis choice).
ModeBasis block_diagonalize(const Eigen::MatrixXd& m);

double block_reconstruction_error(const ModeBasis& basis, const Eigen::MatrixXd& m);

// ground state: every mode-basis block is [[0,-1],[1,0]]
Eigen::MatrixXd ground_covariance(const ModeBasis& basis, double degeneracy_tol = 1e-12);

// occupation pattern a_k = +1 (unoccupied) or -1 (occupied)
Eigen::MatrixXd excited_covariance(const ModeBasis& basis, const std::vector<int>& occupation);

// exact closed form of the critical Ising chain ground state:
// Gamma_{j,k} = -1 / (N sin(pi (k-j) / 2N)) for odd k-j, 0 for even
Eigen::MatrixXd ising_covariance(int sites);

// <H> as a linear functional of the covariance: sum_jk M_jk Gamma_jk.
// Ground value is -2 sum_k lambda_k.
double energy(const QuadraticHamiltonian& h, const Eigen::MatrixXd& gamma);

// f = det((G1+G2)/2)^(1/2); equals tr(rho1 rho2) for pure Gaussian states
double state_fidelity(const Eigen::MatrixXd& g1, const Eigen::MatrixXd& g2);

}  // namespace mtn
