#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "mtn/inflation.hpp"

namespace mtn {

// Stacked inflation layers with the ancestor of every final-layer column
// recorded per layer.
struct MQAStack {
  std::vector<LetterSequence> rows;           // rows[r] = inflate(seed, r)
  std::vector<std::vector<int>> ancestors;    // ancestors[r][col] -> index into rows[r]
  int columns() const { return static_cast<int>(rows.back().size()); }
  Letter letter_at(int row, int col) const { return rows[row].letters[ancestors[row][col]]; }
};

MQAStack build_stack(const InflationRule& rule, const LetterSequence& seed, int steps);

struct MQAWeights {
  std::map<Letter, double> j;
  double at(Letter l) const;
};

// column products J-bar_i = prod_r j(letter at layer r above column i),
// normalized to mean 1 when normalize is set
Eigen::VectorXd column_products(const MQAStack& stack, const MQAWeights& w, bool normalize = true);

// odd couplings by the midpoint rule: J_{2i-1} = (J_{2i-2} + J_{2i}) / 2
Eigen::VectorXd complete_couplings(const Eigen::VectorXd& even);

// M' = M with column l scaled by j_l, and its Perron eigenvalue
Eigen::MatrixXd modified_substitution(const InflationRule& rule, const MQAWeights& w,
                                      double* lambda_prime = nullptr);

// average coupling <j>^(n) = sum(v'^(n)) / sum(v^(n)) from seed letter `seed`
double average_coupling(const InflationRule& rule, const MQAWeights& w, Letter seed, int steps);

// Solve lambda' = lambda for the dependent weight of the 2-letter recurrent
// alphabet; free letter is the first recurrent one ({3,7}: j_g free, j_r
// dependent; {4,5}: j_b free, j_g dependent). Throws outside the interval
// where the dependent weight stays positive.
MQAWeights constrain_weights(const InflationRule& rule, double free_weight);

// largest admissible free weight (dependent weight positive below it)
double constraint_upper_bound(const InflationRule& rule);

struct MQAFit {
  MQAWeights weights;
  double residual = 0.0;   // L2 after symmetrization and cyclic alignment
  int shift = 0;           // chosen alignment shift
  int axis = 0;            // symmetrization axis
  double free_weight = 0.0;
};

// One-parameter fit along the constraint curve against target even couplings
// (normalized to mean 1). The MQA sequence is symmetrized about its best
// reflection axis before alignment.
MQAFit fit_weights(const InflationRule& rule, const LetterSequence& seed, int steps,
                   const Eigen::VectorXd& target_even);

}  // namespace mtn
