#include "mtn/tiling.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mtn {

Tiling::Tiling(int p, int q, int layers) : p_(p), q_(q), n_(layers) {
  if (p < 3 || q < 3) throw std::invalid_argument("tiling: need p,q >= 3");
  if (p * q <= 2 * (p + q))
    throw std::invalid_argument("tiling: {p,q} is not hyperbolic (need pq > 2(p+q))");
  if (layers < 0) throw std::invalid_argument("tiling: layers must be >= 0");

  std::vector<int> seed(p);
  for (int i = 0; i < p; ++i) seed[i] = fresh_vertex();
  add_tile(0, seed);
  layer_boundaries_.push_back(seed);
  for (int l = 1; l <= layers; ++l)
    layer_boundaries_.push_back(inflate_layer(l, layer_boundaries_.back()));

  const auto& b = layer_boundaries_.back();
  const int nb = static_cast<int>(b.size());
  boundary_edges_.resize(nb);
  for (int i = 0; i < nb; ++i) {
    int e = find_edge(b[i], b[(i + 1) % nb]);
    if (e < 0 || edges_[e].tile_out != -1)
      throw std::runtime_error("tiling: boundary loop edge missing or already interior");
    edges_[e].boundary_pos = i;
    boundary_edges_[i] = e;
  }
}

int Tiling::fresh_vertex() {
  tiles_at_.push_back(0);
  edge_lookup_.emplace_back();
  return nv_++;
}

int Tiling::find_edge(int a, int b) const {
  for (int e : edge_lookup_[a]) {
    if ((edges_[e].a == a && edges_[e].b == b) || (edges_[e].a == b && edges_[e].b == a)) return e;
  }
  return -1;
}

int Tiling::add_edge(int a, int b) {
  int e = find_edge(a, b);
  if (e >= 0) return e;
  e = static_cast<int>(edges_.size());
  edges_.push_back({a, b, -1, -1, -1});
  edge_lookup_[a].push_back(e);
  edge_lookup_[b].push_back(e);
  return e;
}

int Tiling::add_tile(int layer, const std::vector<int>& verts) {
  Tile t;
  t.layer = layer;
  t.vertices = verts;
  const int id = static_cast<int>(tiles_.size());
  const int m = static_cast<int>(verts.size());
  for (int i = 0; i < m; ++i) {
    int e = add_edge(verts[i], verts[(i + 1) % m]);
    if (edges_[e].tile_in < 0)
      edges_[e].tile_in = id;
    else if (edges_[e].tile_out < 0)
      edges_[e].tile_out = id;
    else
      throw std::runtime_error("tiling: edge incident to three tiles");
    t.edges.push_back(e);
    tiles_at_[verts[i]]++;
  }
  tiles_.push_back(std::move(t));
  return id;
}

std::vector<int> Tiling::inflate_layer(int layer, const std::vector<int>& boundary) {
  const int m = static_cast<int>(boundary.size());
  // phase 1: glue one tile onto each boundary edge. Its fresh path runs from
  // the u-adjacent to the v-adjacent vertex in new-boundary walk order.
  std::vector<std::vector<int>> edge_fresh(m);
  for (int i = 0; i < m; ++i) {
    int u = boundary[i], v = boundary[(i + 1) % m];
    std::vector<int> path(p_ - 2);
    for (int& x : path) x = fresh_vertex();
    std::vector<int> cyc = {v, u};
    cyc.insert(cyc.end(), path.begin(), path.end());
    add_tile(layer, cyc);
    edge_fresh[i] = std::move(path);
  }
  // phase 2: close each old vertex with a fan between its two edge tiles
  std::vector<int> next;
  for (int i = 0; i < m; ++i) {
    int v = boundary[i];
    const auto& inc = edge_fresh[(i + m - 1) % m];
    const auto& out = edge_fresh[i];
    int k = q_ - tiles_at_[v];
    if (k < 1) throw std::runtime_error("tiling: vertex fan collapsed (unsupported {p,q})");
    std::vector<int> word;
    if (p_ >= 4) word.push_back(inc.back());
    int prev = inc.back();
    for (int t = 0; t < k; ++t) {
      const bool last = (t == k - 1);
      std::vector<int> chain;
      for (int x = 0; x < (last ? p_ - 3 : p_ - 2); ++x) chain.push_back(fresh_vertex());
      word.insert(word.end(), chain.begin(), chain.end());
      if (last) chain.push_back(out.front());
      std::vector<int> cyc = {v, prev};
      cyc.insert(cyc.end(), chain.begin(), chain.end());
      add_tile(layer, cyc);
      prev = chain.back();
    }
    // hand the outgoing edge tile's path to the walk; its last vertex opens
    // the next old vertex's word
    word.insert(word.end(), out.begin(), out.end());
    if (p_ >= 4) word.pop_back();
    next.insert(next.end(), word.begin(), word.end());
  }
  return next;
}

const std::vector<int>& Tiling::boundary_vertices(int layer) const {
  return layer_boundaries_.at(layer);
}

LetterSequence Tiling::classify_boundary(int layer) const {
  const auto& b = layer_boundaries_.at(layer);
  std::set<int> on_boundary(b.begin(), b.end());
  std::vector<std::set<int>> nbr(nv_);
  for (const auto& t : tiles_) {
    if (t.layer > layer) continue;
    const int m = static_cast<int>(t.vertices.size());
    for (int i = 0; i < m; ++i) {
      int x = t.vertices[i], y = t.vertices[(i + 1) % m];
      nbr[x].insert(y);
      nbr[y].insert(x);
    }
  }
  LetterSequence seq;
  seq.cyclic = true;
  seq.layer = layer;
  for (int v : b) {
    int interior = 0;
    for (int w : nbr[v])
      if (!on_boundary.count(w)) ++interior;
    if (interior > 2) throw std::runtime_error("tiling: boundary vertex with >2 interior links");
    seq.letters.push_back("bgr"[interior]);
  }
  return seq;
}

InflationRule Tiling::rule() const {
  if (p_ == 3 && q_ == 7) return InflationRule::triangle_heptagon();
  if (p_ == 4 && q_ == 5) return InflationRule::square_pentagon();
  // derive the rule from one constructed layer; seed letter 'b' plus whatever
  // letters a generic layer produces
  Tiling probe(p_, q_, 2);
  std::vector<std::pair<Letter, std::string>> rules;
  LetterSequence l1 = probe.classify_boundary(1);
  rules.push_back({'b', std::string(l1.letters.begin(), l1.letters.end()).substr(0, l1.size() / p_)});
  LetterSequence l2 = probe.classify_boundary(2);
  // walk layer-1 letters and carve layer-2 into per-letter words by fan sizes
  std::size_t pos = 0;
  std::vector<Letter> seen;
  for (Letter c : l1.letters) {
    int tiles_of = 1 + (c - 'b');
    int fan = q_ - tiles_of - 2;
    std::size_t w = static_cast<std::size_t>(fan * (p_ - 2) - 1 + (p_ - 2));
    if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
      std::string word;
      for (std::size_t i = 0; i < w; ++i) word.push_back(l2.letters[(pos + i) % l2.size()]);
      rules.push_back({c, word});
      seen.push_back(c);
    }
    pos += w;
  }
  return InflationRule(rules);
}

LetterSequence Tiling::seed() const {
  LetterSequence s;
  s.cyclic = true;
  s.layer = 0;
  s.letters.assign(p_, 'b');
  return s;
}

std::string Tiling::to_json() const {
  std::ostringstream os;
  os << "{\"schema\":\"tiling-v1\",\"p\":" << p_ << ",\"q\":" << q_ << ",\"layers\":" << n_;
  os << ",\"tiles\":[";
  for (std::size_t i = 0; i < tiles_.size(); ++i) {
    if (i) os << ",";
    os << "{\"layer\":" << tiles_[i].layer << ",\"edges\":[";
    for (std::size_t j = 0; j < tiles_[i].edges.size(); ++j)
      os << (j ? "," : "") << tiles_[i].edges[j];
    os << "]}";
  }
  os << "],\"edges\":[";
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i) os << ",";
    os << "{\"tiles\":[" << edges_[i].tile_in << "," << edges_[i].tile_out
       << "],\"boundary_pos\":" << edges_[i].boundary_pos << "}";
  }
  os << "],\"boundary_edges\":[";
  for (std::size_t i = 0; i < boundary_edges_.size(); ++i)
    os << (i ? "," : "") << boundary_edges_[i];
  os << "]}";
  return os.str();
}

namespace {

// slot of edge e in tile t's cycle
int slot_of(const Tile& t, int e) {
  for (std::size_t i = 0; i < t.edges.size(); ++i)
    if (t.edges[i] == e) return static_cast<int>(i);
  return -1;
}

}  // namespace

std::vector<TilingAutomorphism> tiling_automorphisms(const Tiling& til) {
  const auto& tiles = til.tiles();
  const auto& edges = til.edges();
  const int p = til.p();
  const int nt = static_cast<int>(tiles.size());
  std::vector<TilingAutomorphism> out;

  for (int refl = 0; refl <= 1; ++refl) {
    for (int r0 = 0; r0 < p; ++r0) {
      // tile 0 -> tile 0, slot i -> (r0 + i) or (r0 - i) mod p
      std::vector<int> tmap(nt, -1), rot(nt, 0);
      std::vector<char> done(nt, 0);
      tmap[0] = 0;
      rot[0] = r0;
      std::deque<int> queue = {0};
      bool ok = true;
      auto phi = [&](int t, int i) {
        int m = static_cast<int>(tiles[t].edges.size());
        return refl ? ((rot[t] - i) % m + m) % m : (rot[t] + i) % m;
      };
      while (ok && !queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        if (done[t]) continue;
        done[t] = 1;
        int t2 = tmap[t];
        const int m = static_cast<int>(tiles[t].edges.size());
        for (int i = 0; i < m; ++i) {
          int e = tiles[t].edges[i];
          int e2 = tiles[t2].edges[phi(t, i)];
          int u = edges[e].tile_in == t ? edges[e].tile_out : edges[e].tile_in;
          int u2 = edges[e2].tile_in == t2 ? edges[e2].tile_out : edges[e2].tile_in;
          if ((u < 0) != (u2 < 0)) { ok = false; break; }
          if (u < 0) continue;
          if (tiles[u].layer != tiles[u2].layer) { ok = false; break; }
          int j = slot_of(tiles[u], e);
          int j2 = slot_of(tiles[u2], e2);
          int mu = static_cast<int>(tiles[u].edges.size());
          int ru = refl ? (j2 + j) % mu : ((j2 - j) % mu + mu) % mu;
          if (tmap[u] < 0) {
            tmap[u] = u2;
            rot[u] = ru;
            queue.push_back(u);
          } else if (tmap[u] != u2 || rot[u] != ru) {
            ok = false;
            break;
          }
        }
      }
      if (!ok || std::find(tmap.begin(), tmap.end(), -1) != tmap.end()) continue;
      TilingAutomorphism a;
      a.tile_map = tmap;
      a.reflect = refl;
      const auto& be = til.boundary_edges();
      a.boundary_map.resize(be.size());
      bool bok = true;
      for (std::size_t i = 0; i < be.size(); ++i) {
        int e = be[i];
        int t = edges[e].tile_in;
        int s = slot_of(tiles[t], e);
        int e2 = tiles[tmap[t]].edges[phi(t, s)];
        if (edges[e2].boundary_pos < 0) { bok = false; break; }
        a.boundary_map[i] = edges[e2].boundary_pos;
      }
      if (bok) out.push_back(std::move(a));
    }
  }
  return out;
}

std::vector<std::vector<int>> tile_orbits(const Tiling& til) {
  auto autos = tiling_automorphisms(til);
  const int nt = static_cast<int>(til.tiles().size());
  std::vector<int> rep(nt, -1);
  std::vector<std::vector<int>> orbits;
  for (int t = 0; t < nt; ++t) {
    if (rep[t] >= 0) continue;
    std::vector<int> orbit;
    for (const auto& a : autos) {
      int img = a.tile_map[t];
      if (rep[img] < 0) {
        rep[img] = static_cast<int>(orbits.size());
        orbit.push_back(img);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

}  // namespace mtn
