#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace mtn {

// Boundary vertex types. 'b', 'g', 'r' mark 0, 1, 2 edges into the previous
// inflation layer; further letters extend the alphabet for other tilings.
using Letter = char;

struct LetterSequence {
  std::vector<Letter> letters;
  bool cyclic = true;
  int layer = 0;

  std::size_t size() const { return letters.size(); }
  std::string str() const { return std::string(letters.begin(), letters.end()); }
  static LetterSequence from(const std::string& s, bool cyclic = true, int layer = 0);
};

class InflationRule {
 public:
  // rules: letter -> replacement word, e.g. {{'b',"gggr"},{'g',"ggr"},{'r',"gr"}}
  explicit InflationRule(std::vector<std::pair<Letter, std::string>> rules);

  static InflationRule triangle_heptagon();  // {3,7}: b->gggr, g->ggr, r->gr
  static InflationRule square_pentagon();    // {4,5}: b->gbgbg, g->gbg
  static InflationRule fibonacci();          // a->ab, b->a

  const std::string& word(Letter l) const;
  bool has(Letter l) const;
  const std::vector<Letter>& alphabet() const { return alphabet_; }

  // M(i,j) counts letter alphabet[j] in the replacement of alphabet[i].
  Eigen::MatrixXd substitution_matrix() const;
  // Restriction of M to the letters that survive one step (recurrent block).
  Eigen::MatrixXd recurrent_matrix(std::vector<Letter>* letters = nullptr) const;

 private:
  std::vector<Letter> alphabet_;
  std::vector<std::string> words_;
  int index(Letter l) const;
};

LetterSequence inflate(const LetterSequence& seq, const InflationRule& rule, int steps);

// Perron eigenvalue of the substitution matrix restricted to recurrent letters.
double scaling_factor(const InflationRule& rule);

// Largest real eigenvalue of a nonnegative matrix; throws if complex-dominant.
double perron_eigenvalue(const Eigen::MatrixXd& m);

// Start positions (cyclic if seq.cyclic) of `word` inside `seq`.
std::vector<std::size_t> find_subword(const LetterSequence& seq, const std::string& word);

// Letter counts of seq as a row vector in the rule's alphabet order.
Eigen::RowVectorXd letter_counts(const LetterSequence& seq, const InflationRule& rule);

}  // namespace mtn
