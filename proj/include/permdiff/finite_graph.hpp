#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permdiff {

// Simple undirected graph on vertices {0..r-1}. Doubles as the residue
// quotient graph M (vertex = residue class mod r) and as a generic small
// graph for products and coloring bounds.
//
// Named specs: edge | cycle:r | complete:r | edgeless:r | edges:r:a-b,c-d,...
struct QuotientGraph {
  int r = 0;
  std::vector<std::uint8_t> adj;  // r*r, symmetric, zero diagonal

  bool adjacent(int a, int b) const {
    return adj[static_cast<size_t>(a) * r + b] != 0;
  }
  void set_edge(int a, int b);
  std::size_t edge_count() const;

  static QuotientGraph edgeless(int r);
  static QuotientGraph single_edge();  // K2
  static QuotientGraph complete(int r);
  static QuotientGraph cycle(int r);  // r >= 3
  static QuotientGraph from_edges(int r, const std::vector<std::pair<int, int>>& edges);

  static QuotientGraph parse(std::string_view spec);
  std::string spec() const;

  bool is_cycle(int len) const;  // structural match up to rotation/reflection? exact labels
};

// Vertices adjacent iff adjacent in some coordinate (inclusive "or").
// Vertex (v_1..v_k) maps to the mixed-radix index with the first factor
// most significant.
QuotientGraph co_normal_product(std::span<const QuotientGraph> factors,
                                std::size_t vertex_cap = 1 << 20);

// Replace vertex i by sizes[i] independent copies; copies of i and j are
// adjacent iff i ~ j (copies of the same vertex stay non-adjacent).
QuotientGraph blow_up(const QuotientGraph& g, std::span<const int> sizes);

int greedy_coloring_bound(const QuotientGraph& g);  // descending-degree greedy
int exact_clique_number(const QuotientGraph& g);    // exhaustive, small graphs
int exact_chromatic_number(const QuotientGraph& g, int vertex_cap = 16);

}  // namespace permdiff
