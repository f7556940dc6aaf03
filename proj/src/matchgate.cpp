#include "mtn/matchgate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mtn {

void antisymmetrize(Eigen::MatrixXd& m) { m = 0.5 * (m - m.transpose()).eval(); }

bool is_antisymmetric(const Eigen::MatrixXd& m, double tol) {
  return m.rows() == m.cols() && (m + m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

GeneratingMatrix::GeneratingMatrix(Eigen::MatrixXd m, double logw) : a(std::move(m)), log_weight(logw) {
  if (a.rows() != a.cols()) throw std::invalid_argument("generating matrix must be square");
  if (!is_antisymmetric(a, 1e-12)) {
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument("generating matrix is not antisymmetric");
    antisymmetrize(a);
  }
}

MatchgateTensor::MatchgateTensor(GeneratingMatrix g, std::vector<std::int64_t> labels)
    : gen(std::move(g)), legs(std::move(labels)) {
  if (static_cast<int>(legs.size()) != gen.modes())
    throw std::invalid_argument("matchgate tensor: label count must match mode count");
}

int MatchgateTensor::find_leg(std::int64_t label) const {
  for (std::size_t i = 0; i < legs.size(); ++i)
    if (legs[i] == label) return static_cast<int>(i);
  return -1;
}

namespace {
double pf_rec(const Eigen::MatrixXd& a, std::vector<int>& idx) {
  const int n = static_cast<int>(idx.size());
  if (n == 0) return 1.0;
  double s = 0.0, sign = 1.0;
  for (int j = 1; j < n; ++j) {
    std::vector<int> rest;
    rest.reserve(n - 2);
    for (int k = 1; k < n; ++k)
      if (k != j) rest.push_back(idx[k]);
    s += sign * a(idx[0], idx[j]) * pf_rec(a, rest);
    sign = -sign;
  }
  return s;
}
}  // namespace

double pfaffian(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (n % 2) return 0.0;
  if (n == 0) return 1.0;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return pf_rec(a, idx);
}

Eigen::VectorXd tensor_from_generating(const GeneratingMatrix& g) {
  const int L = g.modes();
  if (L > 12) throw std::invalid_argument("tensor_from_generating: more than 12 modes");
  const double c = std::exp(g.log_weight);
  const std::size_t dim = std::size_t(1) << L;
  Eigen::VectorXd t = Eigen::VectorXd::Zero(dim);
  // Pf over subsets via mask DP: Pf(S) expands along the lowest set bit
  std::vector<double> pf(dim, 0.0);
  pf[0] = 1.0;
  for (std::size_t z = 1; z < dim; ++z) {
    if (__builtin_popcountll(z) % 2) continue;
    int first = __builtin_ctzll(z);
    double s = 0.0, sign = 1.0;
    std::size_t rest0 = z & ~(std::size_t(1) << first);
    for (std::size_t m = rest0; m;) {
      int j = __builtin_ctzll(m);
      m &= m - 1;
      s += sign * g.a(first, j) * pf[rest0 & ~(std::size_t(1) << j)];
      sign = -sign;
    }
    pf[z] = s;
  }
  for (std::size_t z = 0; z < dim; ++z)
    if (__builtin_popcountll(z) % 2 == 0) t(z) = c * pf[z];
  return t;
}

namespace {

MatchgateTensor contract_at(const MatchgateTensor& t, int x, int y, double eps) {
  const int L = t.gen.modes();
  const double d = 1.0 + eps * t.gen.a(x, y);
  if (std::abs(d) < 1e-10)
    throw std::runtime_error("contract: singular kernel factor (1 + eps*A_xy ~ 0)");
  std::vector<int> keep;
  keep.reserve(L - 2);
  for (int i = 0; i < L; ++i)
    if (i != x && i != y) keep.push_back(i);
  Eigen::VectorXd cx(L - 2), cy(L - 2);
  for (int i = 0; i < L - 2; ++i) {
    cx(i) = t.gen.a(keep[i], x);
    cy(i) = t.gen.a(keep[i], y);
  }
  Eigen::MatrixXd b(L - 2, L - 2);
  for (int i = 0; i < L - 2; ++i)
    for (int j = 0; j < L - 2; ++j) b(i, j) = t.gen.a(keep[i], keep[j]);
  b += (eps / d) * (cy * cx.transpose() - cx * cy.transpose());
  std::vector<std::int64_t> labels;
  for (int i : keep) labels.push_back(t.legs[i]);
  return MatchgateTensor(GeneratingMatrix(std::move(b), t.gen.log_weight + std::log(std::abs(d))),
                         std::move(labels));
}

}  // namespace

MatchgateTensor contract_self(const MatchgateTensor& t, std::int64_t leg_a, std::int64_t leg_b, double eps) {
  int x = t.find_leg(leg_a), y = t.find_leg(leg_b);
  if (x < 0 || y < 0) throw std::invalid_argument("contract_self: leg not open");
  if (x == y) throw std::invalid_argument("contract_self: legs must differ");
  if (x > y) {
    std::swap(x, y);  // kernel is written for position order; eps refers to it
  }
  return contract_at(t, x, y, eps);
}

MatchgateTensor contract_pair(const MatchgateTensor& t1, const MatchgateTensor& t2,
                              std::int64_t leg1, std::int64_t leg2, double eps) {
  int x = t1.find_leg(leg1);
  int y = t2.find_leg(leg2);
  if (x < 0 || y < 0) throw std::invalid_argument("contract_pair: leg not open");
  const int n1 = t1.gen.modes(), n2 = t2.gen.modes();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  a.topLeftCorner(n1, n1) = t1.gen.a;
  a.bottomRightCorner(n2, n2) = t2.gen.a;
  std::vector<std::int64_t> labels = t1.legs;
  labels.insert(labels.end(), t2.legs.begin(), t2.legs.end());
  // disambiguate duplicate labels other than the contracted pair is caller's job
  MatchgateTensor joint(GeneratingMatrix(std::move(a), t1.gen.log_weight + t2.gen.log_weight),
                        std::move(labels));
  return contract_at(joint, x, n1 + y, eps);
}

Eigen::MatrixXd covariance_from_generating(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (!is_antisymmetric(a, 1e-9)) throw std::invalid_argument("covariance: A not antisymmetric");
  Eigen::MatrixXd gram = Eigen::MatrixXd::Identity(n, n) + a.transpose() * a;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("covariance: (1 + A^T A) not positive definite");
  // Gamma^2 = (-1 - 2A + A^T A) (1 + A^T A)^{-1}; Gamma^3 = -(Gamma^2)^T
  Eigen::MatrixXd num = -Eigen::MatrixXd::Identity(n, n) - 2.0 * a + a.transpose() * a;
  Eigen::MatrixXd g2 = llt.solve(num.transpose()).transpose();
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      gamma(2 * j, 2 * k + 1) = g2(j, k);
      gamma(2 * j + 1, 2 * k) = -g2(k, j);
    }
  return gamma;
}

int canonical_chain_gauge(Eigen::MatrixXd& gamma) {
  const int n = static_cast<int>(gamma.rows());
  int flips = 0;
  for (int j = 0; j + 1 < n; ++j) {
    if (gamma(j, j + 1) > 0) {
      gamma.row(j + 1) *= -1.0;
      gamma.col(j + 1) *= -1.0;
      ++flips;
    }
  }
  return flips;
}

double purity_error(const Eigen::MatrixXd& gamma) {
  Eigen::MatrixXd p = gamma.transpose() * gamma;
  p.diagonal().array() -= 1.0;
  return p.cwiseAbs().maxCoeff();
}

ContractionState::ContractionState(int max_modes) {
  buf_ = Eigen::MatrixXd::Zero(max_modes, max_modes);
  alive_.assign(max_modes, 0);
}

int ContractionState::open_modes() const { return static_cast<int>(order_.size()); }

int ContractionState::find_open(std::int64_t key) const {
  for (std::size_t i = 0; i < open_.size(); ++i)
    if (open_[i].first == key) return static_cast<int>(i);
  return -1;
}

void ContractionState::contract_cols(int c_old, int c_new) {
  auto po = std::find(order_.begin(), order_.end(), c_old);
  auto pn = std::find(order_.begin(), order_.end(), c_new);
  const double eps = (po < pn) ? 1.0 : -1.0;
  int x = c_old, y = c_new;
  if (x > y) std::swap(x, y);
  const double d = 1.0 + eps * buf_(x, y);
  if (std::abs(d) < 1e-10)
    throw std::runtime_error("contract: singular kernel factor (1 + eps*A_xy ~ 0)");
  log_weight_ += std::log(std::abs(d));
  alive_[x] = 0;
  alive_[y] = 0;
  Eigen::VectorXd cx = buf_.col(x).head(top_);
  Eigen::VectorXd cy = buf_.col(y).head(top_);
  for (int i = 0; i < top_; ++i)
    if (!alive_[i]) { cx(i) = 0.0; cy(i) = 0.0; }
  buf_.topLeftCorner(top_, top_).noalias() += (eps / d) * (cy * cx.transpose());
  buf_.topLeftCorner(top_, top_).noalias() -= (eps / d) * (cx * cy.transpose());
  buf_.col(x).head(top_).setZero();
  buf_.row(x).head(top_).setZero();
  buf_.col(y).head(top_).setZero();
  buf_.row(y).head(top_).setZero();
  order_.erase(std::remove(order_.begin(), order_.end(), c_old), order_.end());
  order_.erase(std::remove(order_.begin(), order_.end(), c_new), order_.end());
}

void ContractionState::compact() {
  const int na = static_cast<int>(order_.size());
  if (top_ < 2 * (na + 64)) return;
  std::vector<int> live;
  live.reserve(na);
  for (int i = 0; i < top_; ++i)
    if (alive_[i]) live.push_back(i);
  std::vector<int> remap(top_, -1);
  for (std::size_t i = 0; i < live.size(); ++i) remap[live[i]] = static_cast<int>(i);
  Eigen::MatrixXd small(live.size(), live.size());
  for (std::size_t i = 0; i < live.size(); ++i)
    for (std::size_t j = 0; j < live.size(); ++j) small(i, j) = buf_(live[i], live[j]);
  buf_.topLeftCorner(live.size(), live.size()) = small;
  for (int i = static_cast<int>(live.size()); i < top_; ++i) {
    buf_.col(i).head(top_).setZero();
    buf_.row(i).head(top_).setZero();
  }
  std::fill(alive_.begin(), alive_.end(), 0);
  for (std::size_t i = 0; i < live.size(); ++i) alive_[i] = 1;
  top_ = static_cast<int>(live.size());
  for (int& o : order_) o = remap[o];
  for (auto& [k, cols] : open_)
    for (int& c : cols) c = remap[c];
}

void ContractionState::absorb(const Eigen::MatrixXd& a,
                              const std::vector<std::pair<std::int64_t, int>>& legs) {
  int total = 0;
  for (const auto& [k, nm] : legs) total += nm;
  if (total != a.rows()) throw std::invalid_argument("absorb: leg modes do not match matrix size");
  if (top_ + total > buf_.rows()) compact();
  if (top_ + total > buf_.rows()) throw std::runtime_error("absorb: contraction buffer exhausted");

  const int base = top_;
  buf_.block(base, base, total, total) = a;
  for (int i = 0; i < total; ++i) alive_[base + i] = 1;
  top_ += total;

  std::vector<std::pair<std::int64_t, std::vector<int>>> tlegs;
  int off = 0;
  for (const auto& [k, nm] : legs) {
    std::vector<int> cols(nm);
    for (int i = 0; i < nm; ++i) cols[i] = base + off + i;
    tlegs.push_back({k, std::move(cols)});
    off += nm;
  }

  std::vector<int> shared;
  for (std::size_t i = 0; i < tlegs.size(); ++i)
    if (find_open(tlegs[i].first) >= 0) shared.push_back(static_cast<int>(i));

  if (order_.empty()) {
    for (auto& [k, cols] : tlegs) {
      order_.insert(order_.end(), cols.begin(), cols.end());
      open_.push_back({k, cols});
    }
    return;
  }
  if (shared.empty()) throw std::invalid_argument("absorb: tensor does not touch the open patch");

  // lead = the shared leg whose partner starts the contracted arc in walk order
  std::vector<int> ppos(shared.size());
  for (std::size_t i = 0; i < shared.size(); ++i) {
    int oi = find_open(tlegs[shared[i]].first);
    int col0 = open_[oi].second.front();
    ppos[i] = static_cast<int>(std::find(order_.begin(), order_.end(), col0) - order_.begin());
  }
  int lead = shared[0];
  {
    std::vector<int> sorted = ppos;
    std::sort(sorted.begin(), sorted.end());
    int pick = sorted.front();
    // if the arc wraps the seam, start it after the gap
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i] - sorted[i - 1] > static_cast<int>(order_.size()) / 2) {
        pick = sorted[i];
        break;
      }
    }
    for (std::size_t i = 0; i < shared.size(); ++i)
      if (ppos[i] == pick) lead = shared[i];
  }

  const int nl = static_cast<int>(tlegs.size());
  std::vector<int> block;
  std::vector<std::pair<std::int64_t, std::vector<int>>> rot;
  for (int i = 0; i < nl; ++i) {
    auto& lg = tlegs[(lead + i) % nl];
    block.insert(block.end(), lg.second.begin(), lg.second.end());
    rot.push_back(lg);
  }
  int lead_oi = find_open(rot[0].first);
  int anchor = open_[lead_oi].second.back();
  auto ip = std::find(order_.begin(), order_.end(), anchor);
  order_.insert(ip + 1, block.begin(), block.end());

  std::vector<std::pair<int, int>> pairs;  // (old col, new col)
  for (auto& [k, cols] : rot) {
    int oi = find_open(k);
    if (oi >= 0 && open_[oi].second != cols) {
      const auto& old = open_[oi].second;
      for (std::size_t s = 0; s < cols.size(); ++s) pairs.push_back({old[s], cols[s]});
      open_.erase(open_.begin() + oi);
    } else {
      open_.push_back({k, cols});
    }
  }
  for (auto& [c_old, c_new] : pairs) contract_cols(c_old, c_new);
  compact();
}

Eigen::MatrixXd ContractionState::generating(const std::vector<std::int64_t>& key_order) const {
  std::vector<int> perm;
  for (std::int64_t k : key_order) {
    int oi = find_open(k);
    if (oi < 0) throw std::invalid_argument("generating: key not open");
    for (int c : open_[oi].second) perm.push_back(c);
  }
  const int n = static_cast<int>(perm.size());
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = buf_(perm[i], perm[j]);
  return a;
}

Eigen::MatrixXd ContractionState::generating_walk_order() const {
  const int n = static_cast<int>(order_.size());
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = buf_(order_[i], order_[j]);
  return a;
}

}  // namespace mtn
