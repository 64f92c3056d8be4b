#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "permdiff/constructions.hpp"
#include "permdiff/distance_set.hpp"
#include "permdiff/finite_graph.hpp"
#include "permdiff/perm.hpp"

namespace permdiff {

inline constexpr std::size_t kDefaultVertexCap = 40320;  // 8!

// Conflict graph: vertices are sequences (permutations of [n] in lex order,
// or typed residue sequences), adjacency = G-different per the label.
// Adjacency is stored as bitset rows.
struct ConflictGraph {
  int seq_len = 0;
  std::size_t num_vertices = 0;
  std::vector<std::int32_t> verts;
  std::size_t words = 0;
  std::vector<std::uint64_t> adj;
  std::string label;

  std::span<const std::int32_t> vertex(std::size_t u) const {
    return {verts.data() + u * seq_len, static_cast<std::size_t>(seq_len)};
  }
  const std::uint64_t* row(std::size_t u) const { return adj.data() + u * words; }
  bool adjacent(std::size_t u, std::size_t v) const {
    return (row(u)[v >> 6] >> (v & 63)) & 1;
  }
  std::size_t degree(std::size_t u) const;
};

struct SolveBudget {
  std::uint64_t max_nodes = 100'000'000;
  double max_seconds = 300.0;
  int workers = 1;
};

enum class BoundSource { ExhaustedSearch, ColoringBound, BudgetExpired };

struct SolveResult {
  int clique_size = 0;
  std::vector<std::size_t> clique_witness;  // vertex indices, sorted
  long proof_bound = 0;
  BoundSource bound_source = BoundSource::ExhaustedSearch;
  bool exact = false;
  std::uint64_t nodes = 0;
};

// Graph on all n! permutations of [n], vertex index = lexicographic rank.
ConflictGraph build_conflict_graph(int n, const DistanceSet& D,
                                   std::size_t vertex_cap = kDefaultVertexCap,
                                   int workers = 1);
ConflictGraph build_conflict_graph_serial(int n, const DistanceSet& D,
                                          std::size_t vertex_cap = kDefaultVertexCap);

// Graph on caller-supplied sequences with quotient adjacency:
// u ~ v iff some position i has {u_i mod r, v_i mod r} in E(M).
ConflictGraph build_sequence_conflict_graph(std::vector<std::vector<int>> seqs,
                                            const QuotientGraph& M, std::string label,
                                            int workers = 1);

// Branch and bound with greedy-coloring upper bounds (serial when
// budget.workers <= 1, root-split parallel otherwise). Always returns a valid
// clique witness; exact=false only on budget exhaustion.
SolveResult max_clique(const ConflictGraph& g, SolveBudget budget = {});

// As max_clique, but seeds the upper bound with the partition's block count
// after validating that every block is an independent set of g; the search
// stops as soon as a clique meets the bound.
SolveResult max_clique_with_coloring_bound(const ConflictGraph& g,
                                           const CosetPartition& coloring,
                                           SolveBudget budget = {});

SolveResult independence_number(const ConflictGraph& g, SolveBudget budget = {});

// Witness indices -> permutation family (permutation-vertex graphs only).
PermFamily witness_family(const ConflictGraph& g, const std::vector<std::size_t>& witness,
                          DistanceSet claimed_D, std::string provenance);

}  // namespace permdiff
