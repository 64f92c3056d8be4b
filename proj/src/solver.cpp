#include "permdiff/solver.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstring>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "permdiff/bounds.hpp"
#include "permdiff/common.hpp"

namespace permdiff {

namespace {

inline void set_bit(std::uint64_t* row, std::size_t v) { row[v >> 6] |= 1ull << (v & 63); }
inline void clear_bit(std::uint64_t* row, std::size_t v) { row[v >> 6] &= ~(1ull << (v & 63)); }
inline bool test_bit(const std::uint64_t* row, std::size_t v) {
  return (row[v >> 6] >> (v & 63)) & 1;
}

std::size_t popcount_row(const std::uint64_t* row, std::size_t words) {
  std::size_t c = 0;
  for (std::size_t w = 0; w < words; ++w) c += std::popcount(row[w]);
  return c;
}

std::vector<std::vector<int>> all_permutations(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// shared adjacency fill over an explicit vertex list and a value-level table
ConflictGraph build_graph_from_table(std::vector<std::vector<int>> seqs,
                                     const std::vector<std::uint8_t>& tab, int tab_dim,
                                     int value_base, std::string label, int workers) {
  ConflictGraph g;
  g.num_vertices = seqs.size();
  g.seq_len = seqs.empty() ? 0 : static_cast<int>(seqs[0].size());
  g.label = std::move(label);
  g.verts.reserve(g.num_vertices * g.seq_len);
  for (const auto& s : seqs) {
    if (static_cast<int>(s.size()) != g.seq_len)
      throw std::invalid_argument("conflict graph: ragged sequence list");
    for (int v : s) g.verts.push_back(v - value_base);
  }
  g.words = (g.num_vertices + 63) / 64;
  g.adj.assign(g.num_vertices * g.words, 0);

  const int n = g.seq_len;
  const std::size_t m = g.num_vertices;
  auto different = [&](std::size_t u, std::size_t v) {
    const std::int32_t* a = g.verts.data() + u * n;
    const std::int32_t* b = g.verts.data() + v * n;
    for (int i = 0; i < n; ++i)
      if (tab[static_cast<std::size_t>(a[i]) * tab_dim + b[i]]) return true;
    return false;
  };
  // pass 1: upper triangle, each thread owns whole rows
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(1, workers))
  for (long long u = 0; u < static_cast<long long>(m); ++u)
    for (std::size_t v = u + 1; v < m; ++v)
      if (different(u, v)) set_bit(g.adj.data() + u * g.words, v);
  // pass 2: mirror (reads other rows only)
#pragma omp parallel for schedule(static) num_threads(std::max(1, workers))
  for (long long v = 0; v < static_cast<long long>(m); ++v)
    for (std::size_t u = 0; u < static_cast<std::size_t>(v); ++u)
      if (test_bit(g.adj.data() + u * g.words, v))
        set_bit(g.adj.data() + v * g.words, u);

  // restore original values in verts
  if (value_base != 0)
    for (auto& x : g.verts) x += value_base;
  return g;
}

std::vector<std::uint8_t> distance_table(const DistanceSet& D, int n) {
  std::vector<std::uint8_t> tab(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) tab[static_cast<std::size_t>(a) * n + b] = D.contains(std::abs(a - b));
  return tab;
}

void check_vertex_cap(int n, std::size_t cap) {
  if (n < 1) throw std::invalid_argument("build_conflict_graph: n must be >= 1");
  mpz_class total = factorial_big(static_cast<unsigned long>(n));
  if (total > static_cast<unsigned long>(cap))
    throw cap_exceeded("build_conflict_graph: n! = " + total.get_str() +
                           " vertices exceeds cap of " + std::to_string(cap),
                       cap);
}

}  // namespace

std::size_t ConflictGraph::degree(std::size_t u) const {
  return popcount_row(row(u), words);
}

ConflictGraph build_conflict_graph(int n, const DistanceSet& D, std::size_t vertex_cap,
                                   int workers) {
  check_vertex_cap(n, vertex_cap);
  return build_graph_from_table(all_permutations(n), distance_table(D, n), n, 1,
                                "H(" + std::to_string(n) + "," + D.spec() + ")", workers);
}

ConflictGraph build_conflict_graph_serial(int n, const DistanceSet& D,
                                          std::size_t vertex_cap) {
  return build_conflict_graph(n, D, vertex_cap, 1);
}

ConflictGraph build_sequence_conflict_graph(std::vector<std::vector<int>> seqs,
                                            const QuotientGraph& M, std::string label,
                                            int workers) {
  if (seqs.empty())
    throw std::invalid_argument("build_sequence_conflict_graph: empty vertex list");
  int maxv = 0;
  for (const auto& s : seqs)
    for (int v : s) {
      if (v < 0) throw std::invalid_argument("sequence entries must be >= 0");
      maxv = std::max(maxv, v);
    }
  std::vector<std::uint8_t> tab(static_cast<std::size_t>(maxv + 1) * (maxv + 1), 0);
  for (int a = 0; a <= maxv; ++a)
    for (int b = 0; b <= maxv; ++b)
      tab[static_cast<std::size_t>(a) * (maxv + 1) + b] = M.adjacent(a % M.r, b % M.r);
  return build_graph_from_table(std::move(seqs), tab, maxv + 1, 0, std::move(label),
                                workers);
}

namespace {

// Branch and bound maximum clique (greedy-coloring bounds, candidate bitsets).
// Works in "order space": vertices renamed by descending degree so the
// coloring heuristic sees hard vertices first. Above kPermuteCap vertices the
// rename is skipped to avoid copying the adjacency.
class CliqueSearch {
  static constexpr std::size_t kPermuteCap = 16384;

 public:
  CliqueSearch(const ConflictGraph& g, SolveBudget budget, long stop_bound)
      : g_(g), budget_(budget), stop_bound_(stop_bound), nv_(g.num_vertices),
        words_(g.words) {
    order_.resize(nv_);
    std::iota(order_.begin(), order_.end(), 0);
    if (nv_ <= kPermuteCap) {
      std::vector<std::size_t> deg(nv_);
      for (std::size_t u = 0; u < nv_; ++u) deg[u] = g.degree(u);
      std::stable_sort(order_.begin(), order_.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return deg[a] > deg[b]; });
      rows_.assign(nv_ * words_, 0);
      std::vector<std::uint32_t> pos(nv_);
      for (std::size_t i = 0; i < nv_; ++i) pos[order_[i]] = static_cast<std::uint32_t>(i);
      for (std::size_t i = 0; i < nv_; ++i) {
        const std::uint64_t* src = g.row(order_[i]);
        std::uint64_t* dst = rows_.data() + i * words_;
        for (std::size_t v = 0; v < nv_; ++v)
          if (test_bit(src, v)) set_bit(dst, pos[v]);
      }
      row_base_ = rows_.data();
    } else {
      row_base_ = g_.adj.data();
    }
  }

  SolveResult run() {
    deadline_ = omp_get_wtime() + budget_.max_seconds;
    greedy_seed();
    // root coloring once: its color count is a valid upper bound even if the
    // search is later cut short
    std::vector<std::uint64_t> full(words_, 0);
    for (std::size_t v = 0; v < nv_; ++v) set_bit(full.data(), v);
    std::vector<std::uint32_t> rseq;
    std::vector<int> rcolors;
    color_sort(full.data(), rseq, rcolors);
    root_colors_ = rseq.empty() ? 0 : rcolors.back();

    const int workers = std::max(1, budget_.workers);
    if (workers == 1) {
      Scratch s(words_);
      std::vector<std::uint32_t> R;
      expand_root(rseq, rcolors, 0, rseq.size(), s, R);
    } else {
#pragma omp parallel num_threads(workers)
      {
        Scratch s(words_);
#pragma omp for schedule(dynamic, 1)
        for (long long k = 0; k < static_cast<long long>(rseq.size()); ++k) {
          std::size_t i = rseq.size() - 1 - static_cast<std::size_t>(k);
          std::vector<std::uint32_t> R;
          expand_root(rseq, rcolors, i, i + 1, s, R);
        }
      }
    }

    SolveResult res;
    res.nodes = nodes_.load();
    res.clique_size = best_.load();
    res.clique_witness = best_witness_;
    std::sort(res.clique_witness.begin(), res.clique_witness.end());
    if (aborted_.load()) {
      res.exact = false;
      res.bound_source = BoundSource::BudgetExpired;
      res.proof_bound = root_colors_;
      if (stop_bound_ > 0) res.proof_bound = std::min(res.proof_bound, stop_bound_);
    } else if (stop_bound_ > 0 && best_.load() >= stop_bound_) {
      res.exact = true;
      res.bound_source = BoundSource::ColoringBound;
      res.proof_bound = stop_bound_;
    } else {
      res.exact = true;
      res.bound_source = BoundSource::ExhaustedSearch;
      res.proof_bound = res.clique_size;
    }
    return res;
  }

 private:
  struct Scratch {
    explicit Scratch(std::size_t words) : words(words) {}
    std::size_t words;
    // deque: growing deeper levels must not invalidate shallower references
    std::deque<std::vector<std::uint64_t>> cand;
    std::vector<std::uint64_t>& level(std::size_t d) {
      while (cand.size() <= d) cand.emplace_back(words, 0);
      return cand[d];
    }
  };

  const std::uint64_t* row_os(std::size_t v) const { return row_base_ + v * words_; }

  // cheap greedy clique so a budget abort still carries a genuine witness
  void greedy_seed() {
    if (nv_ == 0) return;
    std::vector<std::uint64_t> cand(words_, 0);
    for (std::size_t u = 0; u < nv_; ++u) set_bit(cand.data(), u);
    std::vector<std::uint32_t> R;
    std::size_t v = 0;  // order space puts the highest degree first
    while (true) {
      R.push_back(static_cast<std::uint32_t>(v));
      const std::uint64_t* rv = row_os(v);
      bool any = false;
      for (std::size_t w = 0; w < words_; ++w) {
        cand[w] &= rv[w];
        any = any || cand[w] != 0;
      }
      if (!any) break;
      for (std::size_t w = 0; w < words_; ++w)
        if (cand[w]) {
          v = w * 64 + static_cast<std::size_t>(std::countr_zero(cand[w]));
          break;
        }
    }
    record(R);
  }

  bool stopped() {
    return aborted_.load(std::memory_order_relaxed) ||
           (stop_bound_ > 0 && best_.load(std::memory_order_relaxed) >= stop_bound_);
  }

  void count_node() {
    std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > budget_.max_nodes) aborted_.store(true, std::memory_order_relaxed);
    if ((n & 1023) == 0 && omp_get_wtime() > deadline_)
      aborted_.store(true, std::memory_order_relaxed);
  }

  void color_sort(const std::uint64_t* cand, std::vector<std::uint32_t>& seq,
                  std::vector<int>& colors) {
    thread_local std::vector<std::uint64_t> P, Q;
    P.assign(cand, cand + words_);
    Q.resize(words_);
    seq.clear();
    colors.clear();
    int color = 0;
    while (true) {
      std::size_t w = 0;
      while (w < words_ && P[w] == 0) ++w;
      if (w == words_) break;
      ++color;
      std::copy(P.begin(), P.end(), Q.begin());
      while (true) {
        std::size_t qw = 0;
        while (qw < words_ && Q[qw] == 0) ++qw;
        if (qw == words_) break;
        std::size_t v = qw * 64 + std::countr_zero(Q[qw]);
        clear_bit(Q.data(), v);
        clear_bit(P.data(), v);
        const std::uint64_t* rv = row_os(v);
        for (std::size_t k = qw; k < words_; ++k) Q[k] &= ~rv[k];
        seq.push_back(static_cast<std::uint32_t>(v));
        colors.push_back(color);
      }
    }
  }

  void record(const std::vector<std::uint32_t>& R) {
#pragma omp critical(permdiff_clique_best)
    {
      if (static_cast<int>(R.size()) > best_.load()) {
        best_.store(static_cast<int>(R.size()));
        best_witness_.clear();
        for (std::uint32_t v : R) best_witness_.push_back(order_[v]);
      }
    }
  }

  // expand candidates seq[lo..hi) from back to front against the shared bound
  void expand_root(const std::vector<std::uint32_t>& seq, const std::vector<int>& colors,
                   std::size_t lo, std::size_t hi, Scratch& s, std::vector<std::uint32_t>& R) {
    for (std::size_t i = hi; i-- > lo;) {
      if (stopped()) return;
      if (static_cast<int>(R.size()) + colors[i] <= best_.load(std::memory_order_relaxed))
        return;
      std::uint32_t v = seq[i];
      auto& next = s.level(0);
      std::fill(next.begin(), next.end(), 0);
      const std::uint64_t* rv = row_os(v);
      for (std::size_t j = 0; j < i; ++j)
        if (test_bit(rv, seq[j])) set_bit(next.data(), seq[j]);
      R.push_back(v);
      bool empty = std::all_of(next.begin(), next.end(),
                               [](std::uint64_t w) { return w == 0; });
      if (empty)
        record(R);
      else
        expand(1, s, R);
      R.pop_back();
    }
  }

  void expand(std::size_t depth, Scratch& s, std::vector<std::uint32_t>& R) {
    count_node();
    if (stopped()) return;
    auto& cand = s.level(depth - 1);
    thread_local std::vector<std::vector<std::uint32_t>> seq_pool;
    thread_local std::vector<std::vector<int>> color_pool;
    if (seq_pool.size() <= depth) {
      seq_pool.resize(depth + 1);
      color_pool.resize(depth + 1);
    }
    auto& seq = seq_pool[depth];
    auto& colors = color_pool[depth];
    color_sort(cand.data(), seq, colors);
    for (std::size_t i = seq.size(); i-- > 0;) {
      if (stopped()) return;
      if (static_cast<int>(R.size()) + colors[i] <= best_.load(std::memory_order_relaxed))
        return;
      std::uint32_t v = seq[i];
      auto& next = s.level(depth);
      const std::uint64_t* rv = row_os(v);
      bool empty = true;
      for (std::size_t w = 0; w < words_; ++w) {
        next[w] = cand[w] & rv[w];
        empty = empty && next[w] == 0;
      }
      R.push_back(v);
      if (empty)
        record(R);
      else
        expand(depth + 1, s, R);
      R.pop_back();
      clear_bit(cand.data(), v);
    }
  }

  const ConflictGraph& g_;
  SolveBudget budget_;
  long stop_bound_;
  std::size_t nv_, words_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint64_t> rows_;
  const std::uint64_t* row_base_ = nullptr;
  double deadline_ = 0;
  long root_colors_ = 0;
  std::atomic<int> best_{0};
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> aborted_{false};
  std::vector<std::size_t> best_witness_;
};

}  // namespace

SolveResult max_clique(const ConflictGraph& g, SolveBudget budget) {
  if (g.num_vertices == 0)
    throw std::invalid_argument("max_clique: empty graph");
  CliqueSearch search(g, budget, -1);
  return search.run();
}

SolveResult max_clique_with_coloring_bound(const ConflictGraph& g,
                                           const CosetPartition& coloring,
                                           SolveBudget budget) {
  if (coloring.n != g.seq_len)
    throw std::invalid_argument("coloring bound: partition n does not match graph");
  std::vector<char> covered(g.num_vertices, 0);
  std::size_t covered_count = 0;
  for (std::size_t b = 0; b < coloring.classes.size(); ++b) {
    const auto& block = coloring.classes[b];
    std::vector<std::size_t> ids;
    for (const Perm& p : block) {
      std::uint64_t rank = lex_rank(p);
      auto vx = g.vertex(rank);
      if (!std::equal(vx.begin(), vx.end(), p.begin(), p.end()))
        throw std::invalid_argument(
            "coloring bound: graph vertices are not lex-ranked permutations");
      if (covered[rank])
        throw std::invalid_argument("coloring bound: block " + std::to_string(b) +
                                    " overlaps another block");
      covered[rank] = 1;
      ++covered_count;
      ids.push_back(rank);
    }
    for (std::size_t x = 0; x < ids.size(); ++x)
      for (std::size_t y = x + 1; y < ids.size(); ++y)
        if (g.adjacent(ids[x], ids[y]))
          throw std::invalid_argument("coloring bound: block " + std::to_string(b) +
                                      " is not an independent set");
  }
  if (covered_count != g.num_vertices)
    throw std::invalid_argument("coloring bound: blocks do not cover all vertices");
  CliqueSearch search(g, budget, static_cast<long>(coloring.classes.size()));
  return search.run();
}

SolveResult independence_number(const ConflictGraph& g, SolveBudget budget) {
  ConflictGraph comp;
  comp.seq_len = g.seq_len;
  comp.num_vertices = g.num_vertices;
  comp.verts = g.verts;
  comp.words = g.words;
  comp.label = g.label + "/complement";
  comp.adj.assign(g.adj.size(), 0);
  for (std::size_t u = 0; u < g.num_vertices; ++u) {
    const std::uint64_t* src = g.row(u);
    std::uint64_t* dst = comp.adj.data() + u * comp.words;
    for (std::size_t w = 0; w < g.words; ++w) dst[w] = ~src[w];
    // trim diagonal and tail bits past num_vertices
    clear_bit(dst, u);
    for (std::size_t v = g.num_vertices; v < g.words * 64; ++v) clear_bit(dst, v);
  }
  return max_clique(comp, budget);
}

PermFamily witness_family(const ConflictGraph& g, const std::vector<std::size_t>& witness,
                          DistanceSet claimed_D, std::string provenance) {
  if (g.num_vertices == 0 || witness.empty())
    throw std::invalid_argument("witness_family: empty witness");
  PermFamily F(g.seq_len, std::move(claimed_D), std::move(provenance));
  for (std::size_t u : witness) {
    auto seq = g.vertex(u);
    std::vector<int> perm(seq.begin(), seq.end());
    F.add(perm);
  }
  F.seal();
  return F;
}

}  // namespace permdiff
