#pragma once

#include <optional>
#include <span>
#include <vector>

#include "permdiff/distance_set.hpp"
#include "permdiff/finite_graph.hpp"
#include "permdiff/perm.hpp"
#include "permdiff/solver.hpp"

namespace permdiff {

// Empirical symbol distribution of a residue sequence.
struct TypeVector {
  int r = 0;
  int n = 0;
  std::vector<int> counts;  // size r, sums to n

  bool operator==(const TypeVector&) const = default;
};

TypeVector type_of(std::span<const int> x, int r);

// The type realized by the residues of 1..n (uniform exactly when r | n).
TypeVector residue_type(int r, int n);

// All sequences over {0..r-1} of length n with type residue_type(r, n),
// in lexicographic order.
std::vector<std::vector<int>> typed_vertex_set(const QuotientGraph& M, int n,
                                               std::size_t cap = kDefaultVertexCap);

// Some position holds an M-edge.
bool is_m_different(std::span<const int> x, std::span<const int> y, const QuotientGraph& M);

ConflictGraph build_typed_conflict_graph(const QuotientGraph& M, int n,
                                         std::size_t cap = kDefaultVertexCap,
                                         int workers = 1);

// Unrestricted co-normal power: all r^n sequences, lexicographic.
ConflictGraph build_power_conflict_graph(const QuotientGraph& M, int n,
                                         std::size_t cap = kDefaultVertexCap,
                                         int workers = 1);

SolveResult typed_max_clique(const QuotientGraph& M, int n, SolveBudget budget = {},
                             std::size_t cap = kDefaultVertexCap);

// {d in 1..r-1 : 0 ~ d}, valid only when adjacency in M depends on the
// difference mod r alone; throws invalid_argument otherwise (or when M has
// no edges at all).
DistanceSet residue_distance_set(const QuotientGraph& M);

// Replace the occurrences of residue a by the values of 1..n congruent to a
// mod r, in increasing order. Every member must have type residue_type(r, n).
PermFamily lift_to_permutations(const std::vector<std::vector<int>>& clique,
                                const QuotientGraph& M, int n);

std::vector<std::vector<int>> project_to_residues(const PermFamily& F, const QuotientGraph& M);

struct CapacityRow {
  int n = 0;
  int omega = 0;
  double rate = 0.0;  // log2(omega) / n
  bool exact = true;
  std::optional<double> reference;  // pentagon literature line when M = C5
};

std::vector<CapacityRow> capacity_profile(const QuotientGraph& M, std::span<const int> n_list,
                                          SolveBudget budget = {},
                                          std::size_t cap = kDefaultVertexCap);

}  // namespace permdiff
