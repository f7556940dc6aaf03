#include "mtn/inflation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>

namespace mtn {

LetterSequence LetterSequence::from(const std::string& s, bool cyclic, int layer) {
  LetterSequence seq;
  seq.letters.assign(s.begin(), s.end());
  seq.cyclic = cyclic;
  seq.layer = layer;
  return seq;
}

InflationRule::InflationRule(std::vector<std::pair<Letter, std::string>> rules) {
  if (rules.empty()) throw std::invalid_argument("inflation rule: empty rule set");
  for (auto& [l, w] : rules) {
    if (w.empty()) throw std::invalid_argument("inflation rule: empty replacement word");
    alphabet_.push_back(l);
    words_.push_back(w);
  }
  for (const auto& w : words_)
    for (char c : w)
      if (!has(c)) throw std::invalid_argument(std::string("inflation rule: replacement uses unknown letter '") + c + "'");
}

InflationRule InflationRule::triangle_heptagon() {
  return InflationRule({{'b', "gggr"}, {'g', "ggr"}, {'r', "gr"}});
}

InflationRule InflationRule::square_pentagon() {
  return InflationRule({{'b', "gbgbg"}, {'g', "gbg"}});
}

InflationRule InflationRule::fibonacci() {
  return InflationRule({{'a', "ab"}, {'b', "a"}});
}

int InflationRule::index(Letter l) const {
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    if (alphabet_[i] == l) return static_cast<int>(i);
  return -1;
}

bool InflationRule::has(Letter l) const { return index(l) >= 0; }

const std::string& InflationRule::word(Letter l) const {
  int i = index(l);
  if (i < 0) throw std::invalid_argument(std::string("inflation rule: unknown letter '") + l + "'");
  return words_[i];
}

Eigen::MatrixXd InflationRule::substitution_matrix() const {
  const int n = static_cast<int>(alphabet_.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (char c : words_[i]) m(i, index(c)) += 1.0;
  return m;
}

Eigen::MatrixXd InflationRule::recurrent_matrix(std::vector<Letter>* letters) const {
  // letters reachable from every letter after one step keep reproducing;
  // drop letters that never reappear in any replacement word (e.g. 'b' in {3,7}).
  const int n = static_cast<int>(alphabet_.size());
  Eigen::MatrixXd m = substitution_matrix();
  std::vector<int> keep;
  for (int j = 0; j < n; ++j)
    if (m.col(j).sum() > 0) keep.push_back(j);
  Eigen::MatrixXd r(keep.size(), keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b) r(a, b) = m(keep[a], keep[b]);
  if (letters) {
    letters->clear();
    for (int j : keep) letters->push_back(alphabet_[j]);
  }
  return r;
}

LetterSequence inflate(const LetterSequence& seq, const InflationRule& rule, int steps) {
  if (steps < 0) throw std::invalid_argument("inflate: steps must be >= 0");
  for (Letter l : seq.letters)
    if (!rule.has(l)) throw std::invalid_argument(std::string("inflate: letter '") + l + "' not in rule alphabet");
  LetterSequence out = seq;
  for (int s = 0; s < steps; ++s) {
    std::vector<Letter> next;
    next.reserve(out.letters.size() * 3);
    for (Letter l : out.letters) {
      const std::string& w = rule.word(l);
      next.insert(next.end(), w.begin(), w.end());
    }
    out.letters = std::move(next);
    ++out.layer;
  }
  return out;
}

double perron_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) throw std::invalid_argument("perron: empty matrix");
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  double best = 0.0;
  double best_mag = -1.0;
  for (int i = 0; i < m.rows(); ++i) {
    std::complex<double> ev = es.eigenvalues()(i);
    if (std::abs(ev) > best_mag + 1e-12) {
      best_mag = std::abs(ev);
      best = ev.real();
      if (std::abs(ev.imag()) > 1e-9 * std::max(1.0, best_mag))
        throw std::runtime_error("perron: dominant eigenvalue is not real");
    }
  }
  return best;
}

double scaling_factor(const InflationRule& rule) {
  Eigen::MatrixXd r = rule.recurrent_matrix();
  if (r.rows() == 0) throw std::runtime_error("scaling_factor: no recurrent letters");
  double lambda = perron_eigenvalue(r);
  if (lambda <= 1.0) throw std::runtime_error("scaling_factor: Perron eigenvalue not > 1");
  return lambda;
}

std::vector<std::size_t> find_subword(const LetterSequence& seq, const std::string& word) {
  std::vector<std::size_t> hits;
  const std::size_t n = seq.size();
  if (word.empty() || n == 0 || (!seq.cyclic && word.size() > n)) return hits;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seq.cyclic && i + word.size() > n) break;
    bool ok = true;
    for (std::size_t j = 0; j < word.size(); ++j)
      if (seq.letters[(i + j) % n] != word[j]) { ok = false; break; }
    if (ok) hits.push_back(i);
  }
  return hits;
}

Eigen::RowVectorXd letter_counts(const LetterSequence& seq, const InflationRule& rule) {
  const auto& alpha = rule.alphabet();
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(alpha.size());
  for (Letter l : seq.letters) {
    auto it = std::find(alpha.begin(), alpha.end(), l);
    if (it == alpha.end()) throw std::invalid_argument("letter_counts: letter not in alphabet");
    v(it - alpha.begin()) += 1.0;
  }
  return v;
}

}  // namespace mtn
