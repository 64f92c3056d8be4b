#include "permdiff/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "permdiff/bounds.hpp"
#include "permdiff/common.hpp"

namespace permdiff {

namespace {

void require_modulus(int r) {
  if (r < 2) throw std::invalid_argument("quotient modulus must be >= 2");
}

// Union of edge differences: a true enclosing distance claim for any lift,
// and exactly the edge set when M is difference-closed. Empty for edgeless M.
std::vector<long> edge_differences(const QuotientGraph& M) {
  std::vector<long> ds;
  for (int d = 1; d < M.r; ++d) {
    for (int a = 0; a < M.r; ++a) {
      if (M.adjacent(a, (a + d) % M.r)) {
        ds.push_back(d);
        break;
      }
    }
  }
  return ds;
}

DistanceSet lift_claim(const QuotientGraph& M) {
  std::vector<long> ds = edge_differences(M);
  if (ds.empty()) return DistanceSet::finite({1});  // vacuous: clique size <= 1
  return DistanceSet::residue(M.r, ds);
}

std::string power_label(const QuotientGraph& M, int n, const char* flavor) {
  std::ostringstream os;
  os << M.spec() << "^" << n << ":" << flavor;
  return os.str();
}

}  // namespace

TypeVector type_of(std::span<const int> x, int r) {
  require_modulus(r);
  TypeVector t;
  t.r = r;
  t.n = static_cast<int>(x.size());
  t.counts.assign(r, 0);
  for (int v : x) {
    if (v < 0 || v >= r) throw std::invalid_argument("type_of: entry out of residue range");
    ++t.counts[v];
  }
  return t;
}

TypeVector residue_type(int r, int n) {
  require_modulus(r);
  if (n < 1) throw std::invalid_argument("residue_type: n must be >= 1");
  TypeVector t;
  t.r = r;
  t.n = n;
  t.counts.assign(r, 0);
  for (int v = 1; v <= n; ++v) ++t.counts[v % r];
  return t;
}

std::vector<std::vector<int>> typed_vertex_set(const QuotientGraph& M, int n,
                                               std::size_t cap) {
  TypeVector q = residue_type(M.r, n);

  BigInt total = factorial_big(static_cast<unsigned long>(n));
  for (int c : q.counts) {
    BigInt f = factorial_big(static_cast<unsigned long>(c));
    mpz_divexact(total.get_mpz_t(), total.get_mpz_t(), f.get_mpz_t());
  }
  if (total > cap)
    throw cap_exceeded("typed_vertex_set: " + total.get_str() + " sequences over cap", cap);

  std::vector<int> seq;
  seq.reserve(n);
  for (int a = 0; a < M.r; ++a) seq.insert(seq.end(), q.counts[a], a);

  std::vector<std::vector<int>> out;
  out.reserve(total.get_ui());
  do {
    out.push_back(seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

bool is_m_different(std::span<const int> x, std::span<const int> y, const QuotientGraph& M) {
  if (x.size() != y.size())
    throw std::invalid_argument("is_m_different: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (M.adjacent(x[i] % M.r, y[i] % M.r)) return true;
  }
  return false;
}

ConflictGraph build_typed_conflict_graph(const QuotientGraph& M, int n,
                                         std::size_t cap, int workers) {
  return build_sequence_conflict_graph(typed_vertex_set(M, n, cap), M,
                                       power_label(M, n, "typed"), workers);
}

ConflictGraph build_power_conflict_graph(const QuotientGraph& M, int n,
                                         std::size_t cap, int workers) {
  require_modulus(M.r);
  if (n < 1) throw std::invalid_argument("build_power_conflict_graph: n must be >= 1");

  BigInt total;
  mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(M.r),
                static_cast<unsigned long>(n));
  if (total > cap)
    throw cap_exceeded("build_power_conflict_graph: " + total.get_str() + " sequences over cap",
                       cap);

  std::vector<std::vector<int>> seqs;
  seqs.reserve(total.get_ui());
  std::vector<int> seq(n, 0);
  for (;;) {
    seqs.push_back(seq);
    int i = n - 1;
    while (i >= 0 && seq[i] == M.r - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return build_sequence_conflict_graph(std::move(seqs), M, power_label(M, n, "full"), workers);
}

SolveResult typed_max_clique(const QuotientGraph& M, int n, SolveBudget budget,
                             std::size_t cap) {
  ConflictGraph g = build_typed_conflict_graph(M, n, cap, budget.workers);
  return max_clique(g, budget);
}

DistanceSet residue_distance_set(const QuotientGraph& M) {
  require_modulus(M.r);
  std::vector<long> allowed;
  for (int d = 1; d < M.r; ++d) {
    if (M.adjacent(0, d)) allowed.push_back(d);
  }
  for (int a = 0; a < M.r; ++a) {
    for (int b = 0; b < M.r; ++b) {
      if (a == b) continue;
      bool in = std::binary_search(allowed.begin(), allowed.end(), ((b - a) % M.r + M.r) % M.r);
      if (M.adjacent(a, b) != in)
        throw std::invalid_argument("residue_distance_set: adjacency is not difference-closed");
    }
  }
  if (allowed.empty())
    throw std::invalid_argument("residue_distance_set: quotient has no edges");
  return DistanceSet::residue(M.r, allowed);
}

PermFamily lift_to_permutations(const std::vector<std::vector<int>>& clique,
                                const QuotientGraph& M, int n) {
  TypeVector q = residue_type(M.r, n);

  std::vector<std::vector<int>> slots(M.r);
  for (int v = 1; v <= n; ++v) slots[v % M.r].push_back(v);

  PermFamily F(n, lift_claim(M), "lift(" + M.spec() + ")");
  std::vector<int> next(M.r);
  Perm out(n);
  for (std::size_t m = 0; m < clique.size(); ++m) {
    const auto& x = clique[m];
    if (type_of(x, M.r) != q)
      throw std::invalid_argument("lift_to_permutations: member " + std::to_string(m) +
                                  " does not have the residue type of 1.." + std::to_string(n));
    std::fill(next.begin(), next.end(), 0);
    for (int i = 0; i < n; ++i) out[i] = slots[x[i]][next[x[i]]++];
    F.add(out);
  }
  F.seal();
  if (F.size() != clique.size())
    throw std::logic_error("lift_to_permutations: duplicate members in input");
  return F;
}

std::vector<std::vector<int>> project_to_residues(const PermFamily& F, const QuotientGraph& M) {
  require_modulus(M.r);
  if (!F.materialized())
    throw std::invalid_argument("project_to_residues: family is counting-only");
  std::vector<std::vector<int>> out;
  out.reserve(F.size());
  for (std::size_t m = 0; m < F.size(); ++m) {
    auto row = F.member(m);
    std::vector<int> seq(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) seq[i] = row[i] % M.r;
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<CapacityRow> capacity_profile(const QuotientGraph& M, std::span<const int> n_list,
                                          SolveBudget budget, std::size_t cap) {
  std::vector<CapacityRow> rows;
  rows.reserve(n_list.size());
  const bool pentagon = M.is_cycle(5);
  for (int n : n_list) {
    SolveResult res = typed_max_clique(M, n, budget, cap);
    CapacityRow row;
    row.n = n;
    row.omega = res.clique_size;
    row.rate = std::log2(static_cast<double>(res.clique_size)) / n;
    row.exact = res.exact;
    if (pentagon) row.reference = 0.5 * std::log2(5.0);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace permdiff
