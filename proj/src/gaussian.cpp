#include "mtn/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "mtn/matchgate.hpp"

namespace mtn {

QuadraticHamiltonian::QuadraticHamiltonian(Eigen::MatrixXd coupling) : m(std::move(coupling)) {
  if (m.rows() != m.cols() || m.rows() % 2)
    throw std::invalid_argument("hamiltonian: need even-dimensional square M");
  if (!is_antisymmetric(m, 1e-9)) throw std::invalid_argument("hamiltonian: M not antisymmetric");
}

QuadraticHamiltonian QuadraticHamiltonian::nearest_neighbor(const Eigen::VectorXd& couplings) {
  const int n2 = static_cast<int>(couplings.size());
  if (n2 < 4 || n2 % 2) throw std::invalid_argument("nearest_neighbor: need 2N >= 4 couplings");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n2, n2);
  for (int k = 0; k + 1 < n2; ++k) {
    m(k, k + 1) = 0.5 * couplings(k);
    m(k + 1, k) = -0.5 * couplings(k);
  }
  m(0, n2 - 1) = 0.5 * couplings(n2 - 1);
  m(n2 - 1, 0) = -0.5 * couplings(n2 - 1);
  return QuadraticHamiltonian(std::move(m));
}

QuadraticHamiltonian QuadraticHamiltonian::ising(int sites) {
  return nearest_neighbor(Eigen::VectorXd::Ones(2 * sites));
}

ModeBasis block_diagonalize(const Eigen::MatrixXd& m) {
  if (!is_antisymmetric(m, 1e-9)) throw std::invalid_argument("block_diagonalize: M not antisymmetric");
  const int n2 = static_cast<int>(m.rows());
  const int n = n2 / 2;
  Eigen::MatrixXcd h = std::complex<double>(0, 1) * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("block_diagonalize: eigensolver failed");

  // eigenvalues ascending; the top half are the +lambda_k, ascending
  ModeBasis basis;
  basis.lambda.resize(n);
  basis.o.resize(n2, n2);
  for (int k = 0; k < n; ++k) {
    const int i = n + k;
    basis.lambda(k) = es.eigenvalues()(i);
    Eigen::VectorXcd v = es.eigenvectors().col(i);
    int j0 = 0;
    while (j0 < n2 - 1 && std::abs(v(j0)) < 1e-8) ++j0;
    v *= std::conj(v(j0)) / std::abs(v(j0));
    basis.o.row(2 * k) = std::sqrt(2.0) * v.imag().transpose();
    basis.o.row(2 * k + 1) = std::sqrt(2.0) * v.real().transpose();
  }
  return basis;
}

double block_reconstruction_error(const ModeBasis& basis, const Eigen::MatrixXd& m) {
  const int n = basis.modes();
  Eigen::MatrixXd mt = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    mt(2 * k, 2 * k + 1) = basis.lambda(k);
    mt(2 * k + 1, 2 * k) = -basis.lambda(k);
  }
  return (basis.o.transpose() * mt * basis.o - m).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd ground_covariance(const ModeBasis& basis, double degeneracy_tol) {
  const int n = basis.modes();
  if (basis.lambda.minCoeff() <= degeneracy_tol)
    throw std::runtime_error("ground_covariance: (near-)zero mode, ground state degenerate");
  std::vector<int> occ(n, 1);
  return excited_covariance(basis, occ);
}

Eigen::MatrixXd excited_covariance(const ModeBasis& basis, const std::vector<int>& occupation) {
  const int n = basis.modes();
  if (static_cast<int>(occupation.size()) != n)
    throw std::invalid_argument("excited_covariance: pattern length must equal mode count");
  Eigen::MatrixXd gt = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    if (occupation[k] != 1 && occupation[k] != -1)
      throw std::invalid_argument("excited_covariance: occupation entries must be +-1");
    gt(2 * k, 2 * k + 1) = -occupation[k];
    gt(2 * k + 1, 2 * k) = occupation[k];
  }
  return basis.o.transpose() * gt * basis.o;
}

Eigen::MatrixXd ising_covariance(int sites) {
  if (sites < 2) throw std::invalid_argument("ising_covariance: need N >= 2");
  const int n2 = 2 * sites;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n2, n2);
  for (int j = 0; j < n2; ++j)
    for (int k = 0; k < n2; ++k)
      if ((k - j) % 2 != 0) g(j, k) = -1.0 / (sites * std::sin(M_PI * (k - j) / n2));
  return g;
}

double energy(const QuadraticHamiltonian& h, const Eigen::MatrixXd& gamma) {
  if (gamma.rows() != h.m.rows() || gamma.cols() != h.m.cols())
    throw std::invalid_argument("energy: dimension mismatch");
  return (h.m.array() * gamma.array()).sum();
}

double state_fidelity(const Eigen::MatrixXd& g1, const Eigen::MatrixXd& g2) {
  if (g1.rows() != g2.rows() || g1.cols() != g2.cols())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(0.5 * (g1 + g2));
  double logdet = 0.0;
  double sign = lu.permutationP().determinant() > 0 ? 1.0 : -1.0;
  const auto& u = lu.matrixLU();
  for (int i = 0; i < u.rows(); ++i) {
    double d = u(i, i);
    if (d < 0) sign = -sign;
    logdet += std::log(std::abs(d));
  }
  double det = sign * std::exp(logdet);
  if (det < -1e-10) throw std::runtime_error("state_fidelity: negative determinant");
  if (det <= 0) return 0.0;
  return std::exp(0.5 * logdet);
}

}  // namespace mtn
