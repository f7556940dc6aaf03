#pragma once

#include <array>
#include <string>
#include <vector>

#include "mtn/inflation.hpp"

namespace mtn {

struct Tile {
  int layer = 0;
  std::vector<int> edges;     // edge ids in ccw cycle order
  std::vector<int> vertices;  // vertex ids, vertices[i]-vertices[i+1] spans edges[i]
};

struct Edge {
  int a = -1, b = -1;         // vertex ids
  int tile_in = -1;           // tile created first (inner)
  int tile_out = -1;          // second tile, -1 while on the boundary
  int boundary_pos = -1;      // position in the final boundary loop, -1 if interior
};

// Combinatorial {p,q} tiling grown by vertex inflation. One closed annulus of
// tiles is added per layer; each boundary vertex of the previous layer ends up
// with exactly q incident tiles.
class Tiling {
 public:
  Tiling(int p, int q, int layers);

  int p() const { return p_; }
  int q() const { return q_; }
  int layers() const { return n_; }

  const std::vector<Tile>& tiles() const { return tiles_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int vertex_count() const { return nv_; }

  // ccw boundary loop after the last layer; edge i joins boundary vertex i to i+1
  const std::vector<int>& boundary_edges() const { return boundary_edges_; }
  const std::vector<int>& boundary_vertices(int layer) const;
  const std::vector<int>& boundary_vertices() const { return layer_boundaries_.back(); }
  std::size_t boundary_size() const { return boundary_edges_.size(); }

  // Vertex types of a layer's boundary read from the graph: a vertex counts its
  // neighbors that are interior at that layer (b=0, g=1, r=2, ...).
  LetterSequence classify_boundary(int layer) const;

  InflationRule rule() const;
  LetterSequence seed() const;

  std::string to_json() const;  // schema "tiling-v1"

 private:
  int p_, q_, n_, nv_ = 0;
  std::vector<Tile> tiles_;
  std::vector<Edge> edges_;
  std::vector<int> tiles_at_;  // per-vertex incident tile count
  std::vector<std::vector<int>> layer_boundaries_;
  std::vector<int> boundary_edges_;

  int fresh_vertex();
  int add_edge(int a, int b);
  int add_tile(int layer, const std::vector<int>& verts);
  std::vector<int> inflate_layer(int layer, const std::vector<int>& boundary);
  int find_edge(int a, int b) const;
  mutable std::vector<std::vector<int>> edge_lookup_;
};

// An automorphism maps tile t to tile_map[t] with its edge cycle rotated by
// `rot[t]` and reversed when `reflect` is set; boundary_map gives the induced
// permutation of boundary edge positions.
struct TilingAutomorphism {
  std::vector<int> tile_map;
  std::vector<int> boundary_map;
  bool reflect = false;
};

// All automorphisms of the tile adjacency structure fixing the seed tile
// setwise (the dihedral group of the seed; D3 for {3,7}).
std::vector<TilingAutomorphism> tiling_automorphisms(const Tiling& t);

// Orbits of tiles under the full automorphism group, each sorted ascending.
std::vector<std::vector<int>> tile_orbits(const Tiling& t);

}  // namespace mtn
