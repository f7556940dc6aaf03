#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace mtn {

// Antisymmetric matrix generating a matchgate tensor, with the reference
// amplitude carried as a log-magnitude (covariances are scale-invariant).
struct GeneratingMatrix {
  Eigen::MatrixXd a;
  double log_weight = 0.0;

  explicit GeneratingMatrix(Eigen::MatrixXd m, double logw = 0.0);
  int modes() const { return static_cast<int>(a.rows()); }
};

void antisymmetrize(Eigen::MatrixXd& m);
bool is_antisymmetric(const Eigen::MatrixXd& m, double tol = 1e-12);

// Matchgate tensor over its open legs; contracted legs are dropped from both
// the matrix and the label list. Labels are caller-chosen mode ids.
struct MatchgateTensor {
  GeneratingMatrix gen;
  std::vector<std::int64_t> legs;

  MatchgateTensor(GeneratingMatrix g, std::vector<std::int64_t> labels);
  int find_leg(std::int64_t label) const;
};

// Dense amplitude table T[z] for occupation bitmask z (bit i = leg i), small
// tensors only. Amplitudes are Pfaffians of principal submatrices.
Eigen::VectorXd tensor_from_generating(const GeneratingMatrix& g);

double pfaffian(const Eigen::MatrixXd& a);

// <0|(1 + eps f_y f_x) applied to modes x < y; the remaining modes keep their
// order. Weight picks up a factor (1 + eps A_xy); near-zero factors are the
// a = 1 topological point and are rejected.
MatchgateTensor contract_self(const MatchgateTensor& t, std::int64_t leg_a, std::int64_t leg_b,
                              double eps = 1.0);
MatchgateTensor contract_pair(const MatchgateTensor& t1, const MatchgateTensor& t2,
                              std::int64_t leg1, std::int64_t leg2, double eps = 1.0);

// Majorana covariance of the state generated by a real A: checkerboard matrix
// with Gamma_{2j-1,2k} = [(-1 - 2A + A^T A)(1 + A^T A)^{-1}]_{jk}.
Eigen::MatrixXd covariance_from_generating(const Eigen::MatrixXd& a);

// Fix the Majorana sign gauge so Gamma_{j,j+1} < 0 along the open chain
// j = 1..2N-1. The wrap entry's sign is the gauge-invariant sector bit
// (negative = antiperiodic). Returns the number of flipped Majoranas.
int canonical_chain_gauge(Eigen::MatrixXd& gamma);

double purity_error(const Eigen::MatrixXd& gamma);

// Incremental contraction of a whole network. Tensors are absorbed one at a
// time; legs whose key is already open are contracted immediately. A linear
// list of the open modes in boundary-walk order decides each kernel's
// orientation: a tensor's legs are spliced in right after the partner of its
// first contracted leg, and a contraction uses eps = +1 exactly when the old
// copy precedes the new one in that list.
class ContractionState {
 public:
  explicit ContractionState(int max_modes);

  // legs: (key, modes-per-leg) in the tensor's ccw cycle order
  void absorb(const Eigen::MatrixXd& a, const std::vector<std::pair<std::int64_t, int>>& legs);

  int open_modes() const;
  double log_weight() const { return log_weight_; }

  // generating matrix over open modes, columns ordered by the given keys
  Eigen::MatrixXd generating(const std::vector<std::int64_t>& key_order) const;
  // open-mode matrix in the maintained boundary-walk order
  Eigen::MatrixXd generating_walk_order() const;

 private:
  Eigen::MatrixXd buf_;
  std::vector<char> alive_;
  std::vector<int> order_;                       // maintained walk order (buffer cols)
  std::vector<std::pair<std::int64_t, std::vector<int>>> open_;  // key -> buffer cols
  int top_ = 0;
  double log_weight_ = 0.0;

  int find_open(std::int64_t key) const;
  void contract_cols(int c_old, int c_new);
  void compact();
};

}  // namespace mtn
