#include "mtn/network.hpp"

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "mtn/disorder.hpp"
#include "mtn/optimize.hpp"

namespace mtn {

BulkInput BulkInput::uniform(int p, double a) {
  BulkInput in;
  in.fermions_per_edge = 1;
  in.bulk_params = Eigen::VectorXd::Zero(cyclic_orbit_count(p, 1));
  // k = 1: the orbits of a p x p matrix; for p = 3 a single orbit (all equal a),
  // for p = 4 two orbits (adjacent, opposite) -- fill the adjacent one
  in.bulk_params(0) = a;
  return in;
}

BulkInput BulkInput::uniform45(double a, double b) {
  BulkInput in;
  in.fermions_per_edge = 1;
  in.bulk_params = Eigen::VectorXd::Zero(cyclic_orbit_count(4, 1));
  // orbit 0 = nearest pairs (entry (0,1)), orbit 1 = diagonal pairs (entry (0,2))
  in.bulk_params(0) = a;
  in.bulk_params(1) = b;
  return in;
}

std::vector<std::vector<std::pair<int, int>>> cyclic_orbits(int p, int k) {
  const int n = p * k;
  auto rot = [&](int i) { return (i + k) % n; };
  std::set<std::pair<int, int>> seen;
  std::vector<std::vector<std::pair<int, int>>> orbits;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (seen.count({i, j})) continue;
      std::vector<std::pair<int, int>> orbit;
      int a = i, b = j;
      for (int s = 0; s < p; ++s) {
        int lo = std::min(a, b), hi = std::max(a, b);
        if (!seen.count({lo, hi})) {
          seen.insert({lo, hi});
          orbit.push_back({lo, hi});
        }
        a = rot(a);
        b = rot(b);
      }
      orbits.push_back(std::move(orbit));
    }
  return orbits;
}

int cyclic_orbit_count(int p, int k) { return static_cast<int>(cyclic_orbits(p, k).size()); }

Eigen::MatrixXd cyclic_bulk_matrix(int p, int k, const Eigen::VectorXd& params) {
  auto orbits = cyclic_orbits(p, k);
  if (params.size() != static_cast<int>(orbits.size()))
    throw std::invalid_argument("cyclic_bulk_matrix: wrong parameter count");
  const int n = p * k;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (auto [i, j] : orbits[o]) {
      a(i, j) = params(o);
      a(j, i) = -params(o);
    }
  return a;
}

Eigen::MatrixXd cap_matrix(int k, const Eigen::VectorXd& params) {
  const int n = k + 1;
  if (params.size() != n * (n - 1) / 2)
    throw std::invalid_argument("cap_matrix: wrong parameter count");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  int c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++c) {
      a(i, j) = params(c);
      a(j, i) = -params(c);
    }
  return a;
}

BoundaryState contract_network(const Tiling& t, const BulkInput& input, bool reversed_schedule) {
  const int k = input.fermions_per_edge;
  const int p = t.p();
  if (k < 1) throw std::invalid_argument("contract_network: fermions_per_edge must be >= 1");
  const auto& tiles = t.tiles();
  const int nt = static_cast<int>(tiles.size());
  const int nb = static_cast<int>(t.boundary_size());

  Eigen::MatrixXd bulk = cyclic_bulk_matrix(p, k, input.bulk_params);
  std::map<int, Eigen::MatrixXd> special;
  for (const auto& [tile, params] : input.overrides) {
    if (tile < 0 || tile >= nt) throw std::invalid_argument("contract_network: override for unknown tile");
    special[tile] = cyclic_bulk_matrix(p, k, params);
  }

  const int total = p * k * nt + (k > 1 ? (k + 1) * nb : 0);
  ContractionState st(total);

  // absorb tiles layer by layer: edge tiles first, then the vertex fans. The
  // reversed variant runs each half backwards; every tile still glues onto a
  // contiguous arc of the patch, and the result must not depend on the choice.
  std::vector<std::vector<int>> by_layer(t.layers() + 1);
  for (int i = 0; i < nt; ++i) by_layer[tiles[i].layer].push_back(i);
  for (int l = 0; l <= t.layers(); ++l) {
    std::vector<int> sched = by_layer[l];
    if (reversed_schedule && l > 0) {
      const int m = static_cast<int>(t.boundary_vertices(l - 1).size());
      std::reverse(sched.begin(), sched.begin() + m);  // edge tiles
      std::reverse(sched.begin() + m, sched.end());    // fans, per-vertex chains stay glued
    }
    for (int id : sched) {
      const auto& tile = tiles[id];
      std::vector<std::pair<std::int64_t, int>> legs;
      for (int e : tile.edges) legs.push_back({e, k});
      auto it = special.find(id);
      st.absorb(it == special.end() ? bulk : it->second, legs);
    }
  }

  std::vector<std::int64_t> want;
  if (k > 1) {
    Eigen::MatrixXd cap = cap_matrix(k, input.cap_params);
    const std::int64_t cap_base = 1 << 28;
    for (int i = 0; i < nb; ++i) {
      st.absorb(cap, {{t.boundary_edges()[i], k}, {cap_base + i, 1}});
      want.push_back(cap_base + i);
    }
  } else {
    for (int e : t.boundary_edges()) want.push_back(e);
  }

  BoundaryState out;
  Eigen::MatrixXd a = st.generating(want);
  out.log_weight = st.log_weight();
  out.gamma = covariance_from_generating(a);
  out.gauge_flips = canonical_chain_gauge(out.gamma);
  out.antiperiodic = out.gamma(0, 2 * nb - 1) < 0;
  return out;
}

namespace {

BulkInput chi2_input(const Tiling& t, const Eigen::VectorXd& params) {
  BulkInput in;
  in.fermions_per_edge = 1;
  in.bulk_params = params;
  return in;
}

}  // namespace

CriticalPoint find_critical_point(const Tiling& t, double lo, double hi) {
  const int nb = static_cast<int>(t.boundary_size());
  QuadraticHamiltonian ising = QuadraticHamiltonian::ising(nb);
  const int np = cyclic_orbit_count(t.p(), 1);
  int evals = 0;
  auto e_of = [&](double a) {
    Eigen::VectorXd params = Eigen::VectorXd::Zero(np);
    params(0) = a;
    ++evals;
    return energy(ising, contract_network(t, chi2_input(t, params)).gamma);
  };
  auto res = golden_section(e_of, lo, hi, 1e-6);
  CriticalPoint cp;
  cp.a = res.x(0);
  cp.params = Eigen::VectorXd::Zero(np);
  cp.params(0) = cp.a;
  cp.energy = res.value;
  cp.evaluations = evals;
  cp.fidelity_to_ising =
      state_fidelity(ising_covariance(nb), contract_network(t, chi2_input(t, cp.params)).gamma);
  return cp;
}

CriticalPoint find_critical_point45(const Tiling& t, bool equal_line) {
  if (t.p() != 4) throw std::invalid_argument("find_critical_point45: p must be 4");
  const int nb = static_cast<int>(t.boundary_size());
  QuadraticHamiltonian ising = QuadraticHamiltonian::ising(nb);
  int evals = 0;
  CriticalPoint cp;
  if (equal_line) {
    auto e_of = [&](double a) {
      ++evals;
      return energy(ising, contract_network(t, BulkInput::uniform45(a, a)).gamma);
    };
    auto res = golden_section(e_of, 0.1, 0.9, 1e-6);
    cp.a = res.x(0);
    cp.params = Eigen::Vector2d(cp.a, cp.a);
    cp.energy = res.value;
  } else {
    auto e_of = [&](const Eigen::VectorXd& x) {
      ++evals;
      return energy(ising, contract_network(t, BulkInput::uniform45(x(0), x(1))).gamma);
    };
    auto res = nelder_mead(e_of, Eigen::Vector2d(0.5, 0.5), 0.05, 400, 1e-10, 1e-6);
    cp.a = res.x(0);
    cp.params = res.x;
    cp.energy = res.value;
  }
  cp.evaluations = evals;
  cp.fidelity_to_ising = state_fidelity(
      ising_covariance(nb), contract_network(t, BulkInput::uniform45(cp.params(0), cp.params(1))).gamma);
  return cp;
}

CriticalPoint find_decay_critical(const Tiling& t, double lo, double hi) {
  const int nb = static_cast<int>(t.boundary_size());
  const int np = cyclic_orbit_count(t.p(), 1);
  int evals = 0;
  auto p_of = [&](double a) {
    Eigen::VectorXd params = Eigen::VectorXd::Zero(np);
    params(0) = a;
    ++evals;
    DecayProfile prof = correlation_decay(contract_network(t, chi2_input(t, params)).gamma);
    return prof.exponent;
  };
  auto res = golden_section(p_of, lo, hi, 1e-4);
  CriticalPoint cp;
  cp.a = res.x(0);
  cp.params = Eigen::VectorXd::Zero(np);
  cp.params(0) = cp.a;
  cp.energy = res.value;  // the fitted exponent, not an energy
  cp.evaluations = evals;
  cp.fidelity_to_ising =
      state_fidelity(ising_covariance(nb), contract_network(t, chi2_input(t, cp.params)).gamma);
  return cp;
}

Eigen::VectorXd embed_chi2(int p, int k, double a) {
  auto orbits = cyclic_orbits(p, k);
  Eigen::VectorXd params = Eigen::VectorXd::Zero(orbits.size() + (k + 1) * k / 2);
  // bulk: couple slot-0 fermions of each leg exactly as at chi = 2
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    auto [i, j] = orbits[o][0];
    bool slot0 = (i % k == 0) && (j % k == 0);
    bool intra = (i / k) == (j / k);
    if (slot0 && !intra) params(o) = a;
  }
  // cap: pass slot 0 through to the boundary leg
  const int nc = (k + 1) * k / 2;
  Eigen::VectorXd cap = Eigen::VectorXd::Zero(nc);
  int c = 0;
  for (int i = 0; i < k + 1; ++i)
    for (int j = i + 1; j < k + 1; ++j, ++c)
      if (i == 0 && j == k) cap(c) = 1.0;
  params.tail(nc) = cap;
  return params;
}

HighChiResult optimize_high_chi(const Tiling& t, int k, const Eigen::VectorXd& init, int max_eval,
                                int restarts, unsigned seed) {
  const int nb = static_cast<int>(t.boundary_size());
  const int nbulk = cyclic_orbit_count(t.p(), k);
  const int ncap = (k + 1) * k / 2;
  if (init.size() != nbulk + (k > 1 ? ncap : 0))
    throw std::invalid_argument("optimize_high_chi: wrong init size");
  QuadraticHamiltonian ising = QuadraticHamiltonian::ising(nb);
  int evals = 0;
  auto pack = [&](const Eigen::VectorXd& x) {
    BulkInput in;
    in.fermions_per_edge = k;
    in.bulk_params = x.head(nbulk);
    if (k > 1) in.cap_params = x.tail(ncap);
    return in;
  };
  auto e_of = [&](const Eigen::VectorXd& x) {
    ++evals;
    try {
      return energy(ising, contract_network(t, pack(x)).gamma);
    } catch (const std::runtime_error&) {
      return 1e6;  // singular kernel: reject the point
    }
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> jitter(0.0, 0.05);
  MinimizeResult best;
  best.value = 1e300;
  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd x0 = init;
    if (r > 0)
      for (int i = 0; i < x0.size(); ++i) x0(i) += jitter(rng);
    auto res = nelder_mead(e_of, x0, 0.08, max_eval, 1e-11, 1e-8);
    if (res.value < best.value) best = res;
  }
  HighChiResult out;
  out.input = pack(best.x);
  out.state = contract_network(t, out.input);
  out.energy = best.value;
  out.fidelity_to_ising = state_fidelity(ising_covariance(nb), out.state.gamma);
  out.evaluations = evals;
  return out;
}

}  // namespace mtn
